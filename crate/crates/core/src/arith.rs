//! Small integer helpers shared by the field, planarity and search code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Distinct prime factors in ascending order (trial division; inputs here are at most 2^32).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `m` when `n == 2^m`.
pub fn log2_exact(n: u64) -> Option<u32> {
    n.is_power_of_two().then(|| n.trailing_zeros())
}

/// Splits `t` as `2^i + 2^j` with `i < j` when it has exactly two set bits.
pub fn two_power_split(t: u64) -> Option<(u32, u32)> {
    if t.count_ones() != 2 {
        return None;
    }
    let i = t.trailing_zeros();
    let j = 63 - t.leading_zeros();
    Some((i, j))
}

/// Integer square root (floor).
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_of_mersenne_numbers() {
        assert_eq!(prime_factors(63), vec![3, 7]);
        assert_eq!(prime_factors(4095), vec![3, 5, 7, 13]);
        assert_eq!(prime_factors((1 << 32) - 1), vec![3, 5, 17, 257, 65537]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(127), vec![127]);
    }

    #[test]
    fn splits() {
        assert_eq!(two_power_split(20), Some((2, 4)));
        assert_eq!(two_power_split(5), Some((0, 2)));
        assert_eq!(two_power_split(8), None);
        assert_eq!(two_power_split(7), None);
        assert_eq!(log2_exact(64), Some(6));
        assert_eq!(log2_exact(6), None);
    }

    #[test]
    fn isqrt_small() {
        for n in 0u128..2000 {
            let s = isqrt(n);
            assert!(s * s <= n && (s + 1) * (s + 1) > n);
        }
    }
}
