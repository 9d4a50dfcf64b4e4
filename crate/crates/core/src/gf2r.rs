//! Arithmetic in GF(2^r) over the polynomial basis.
//!
//! A field is realized deterministically: the modulus is the irreducible
//! polynomial of degree `r` with the smallest integer encoding, and the
//! generator is the primitive element with the smallest encoding. Elements
//! are `r`-bit integers where bit `i` holds the coefficient of `x^i`.
//!
//! [`Elem`] carries no reference to its field; every operation that needs the
//! modulus goes through a [`FieldCtx`].

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, prime_factors};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 32;

/// Default cap on `q - 1` below which discrete-log tables are built.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 26;

/// A field element as its canonical `r`-bit encoding.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({:#x})", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Characteristic 2: addition is XOR and needs no modulus.
impl Add for Elem {
    type Output = Elem;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

/// Construction limits for [`FieldCtx`].
#[derive(Clone, Debug)]
pub struct FieldConfig {
    pub max_degree: u32,
    /// Log/antilog tables are built iff `q - 1 <= table_cap`.
    pub table_cap: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { max_degree: MAX_DEGREE, table_cap: DEFAULT_TABLE_CAP }
    }
}

/// `{r, modulus, generator}`, enough to rebuild the exact same field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub r: u32,
    pub modulus_enc: u64,
    pub generator_enc: u32,
}

struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// An immutable description of GF(2^r).
pub struct FieldCtx {
    r: u32,
    modulus: u64,
    q: u64,
    gen: Elem,
    order_primes: Vec<u64>,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("r", &self.r)
            .field("modulus", &format_args!("{:#b}", self.modulus))
            .field("gen", &self.gen)
            .field("log_table", &self.tables.is_some())
            .finish()
    }
}

impl FieldCtx {
    /// Builds GF(2^r) with the default limits.
    pub fn build(r: u32) -> Result<FieldCtx> {
        Self::build_with(r, &FieldConfig::default())
    }

    pub fn build_with(r: u32, config: &FieldConfig) -> Result<FieldCtx> {
        if r == 0 || r > config.max_degree.min(MAX_DEGREE) {
            return Err(Error::usage(format!(
                "field degree r = {r} outside 1..={}",
                config.max_degree.min(MAX_DEGREE)
            )));
        }
        let modulus = smallest_irreducible(r);
        let q = 1u64 << r;
        let mut ctx = FieldCtx {
            r,
            modulus,
            q,
            gen: Elem::ONE,
            order_primes: prime_factors(q - 1),
            tables: None,
        };
        ctx.gen = (1..q)
            .map(|e| Elem(e as u32))
            .find(|&g| ctx.is_primitive(g))
            .expect("multiplicative group of a finite field is cyclic");
        if q - 1 <= config.table_cap {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// Same field, different primitive element. Used to check that results do
    /// not depend on the generator choice.
    pub fn with_generator(&self, gen: Elem) -> Result<FieldCtx> {
        self.check(gen)?;
        if !self.is_primitive(gen) {
            return Err(Error::usage(format!("{gen} is not a primitive element")));
        }
        let mut ctx = FieldCtx {
            r: self.r,
            modulus: self.modulus,
            q: self.q,
            gen,
            order_primes: self.order_primes.clone(),
            tables: None,
        };
        if self.tables.is_some() {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.q - 1) as usize;
        let mut log = vec![0u32; self.q as usize];
        let mut exp = vec![0u32; n];
        let mut x = Elem::ONE;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x.0;
            log[x.0 as usize] = k as u32;
            x = self.mul_slow(x, self.gen);
        }
        LogTables { log, exp }
    }

    fn is_primitive(&self, g: Elem) -> bool {
        if g.is_zero() {
            return false;
        }
        let n = self.q - 1;
        self.order_primes.iter().all(|&p| self.pow_slow(g, n / p) != Elem::ONE)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.r
    }

    /// Field order `q = 2^r`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    #[inline]
    pub fn group_order(&self) -> u64 {
        self.q - 1
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.gen
    }

    pub fn has_log_table(&self) -> bool {
        self.tables.is_some()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { r: self.r, modulus_enc: self.modulus, generator_enc: self.gen.0 }
    }

    /// Validates an encoding.
    pub fn elem(&self, enc: u64) -> Result<Elem> {
        if enc >= self.q {
            return Err(Error::usage(format!("encoding {enc} out of range for GF(2^{})", self.r)));
        }
        Ok(Elem(enc as u32))
    }

    pub(crate) fn check(&self, x: Elem) -> Result<()> {
        if u64::from(x.0) >= self.q {
            return Err(Error::usage(format!(
                "element {} does not belong to GF(2^{})",
                x.0, self.r
            )));
        }
        Ok(())
    }

    /// All `q` elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(|e| Elem(e as u32))
    }

    /// The `q - 1` nonzero elements in ascending encoding order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(|e| Elem(e as u32))
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        x + y
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.tables {
            Some(t) => {
                if x.is_zero() || y.is_zero() {
                    return Elem::ZERO;
                }
                let n = self.q as usize - 1;
                let mut s = t.log[x.0 as usize] as usize + t.log[y.0 as usize] as usize;
                if s >= n {
                    s -= n;
                }
                Elem(t.exp[s])
            }
            None => self.mul_slow(x, y),
        }
    }

    /// Carry-less product followed by reduction modulo the field polynomial.
    fn mul_slow(&self, x: Elem, y: Elem) -> Elem {
        let mut a = u64::from(x.0);
        let mut b = y.0;
        let mut prod = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        let r = self.r;
        if r > 1 {
            for bit in (r..=2 * r - 2).rev() {
                if (prod >> bit) & 1 == 1 {
                    prod ^= self.modulus << (bit - r);
                }
            }
        } else {
            prod &= 1;
        }
        Elem(prod as u32)
    }

    #[inline]
    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    /// `x^(2^k)`.
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        (0..k % self.r).fold(x, |acc, _| self.square(acc))
    }

    /// `x^n` for a non-negative exponent. `0^0 = 1` and `0^n = 0` for `n > 0`.
    pub fn pow(&self, x: Elem, n: u64) -> Elem {
        if x.is_zero() {
            return if n == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let ord = self.q - 1;
        let e = n % ord;
        match &self.tables {
            Some(t) => {
                let l = u64::from(t.log[x.0 as usize]);
                Elem(t.exp[((u128::from(l) * u128::from(e)) % u128::from(ord)) as usize])
            }
            None => self.pow_slow(x, e),
        }
    }

    fn pow_slow(&self, x: Elem, mut n: u64) -> Elem {
        let mut base = x;
        let mut acc = Elem::ONE;
        while n != 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        acc
    }

    /// `x^n` for any integer `n`; a negative exponent inverts first.
    pub fn pow_signed(&self, x: Elem, n: i64) -> Result<Elem> {
        if n >= 0 {
            return Ok(self.pow(x, n as u64));
        }
        let inv = self.inv(x)?;
        Ok(self.pow(inv, n.unsigned_abs()))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[x.0 as usize] as usize;
                let n = self.q as usize - 1;
                Elem(t.exp[(n - l) % n])
            }
            None => self.pow_slow(x, self.q - 2),
        })
    }

    /// Absolute trace `sum_{i<r} x^(2^i)`; always 0 or 1.
    pub fn trace(&self, x: Elem) -> Elem {
        self.trace_prefix(x, self.r)
    }

    /// `x + x^2 + ... + x^(2^(j-1))`.
    pub fn partial_trace(&self, x: Elem, j: u32) -> Result<Elem> {
        if j == 0 || j > self.r {
            return Err(Error::usage(format!("partial trace length {j} outside 1..={}", self.r)));
        }
        Ok(self.trace_prefix(x, j))
    }

    fn trace_prefix(&self, x: Elem, j: u32) -> Elem {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..j {
            acc += y;
            y = self.square(y);
        }
        acc
    }

    /// Whether `x` lies in `(F_q^*)^k`, decided by `x^((q-1)/gcd(k, q-1)) == 1`.
    pub fn is_kth_power(&self, x: Elem, k: u64) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::domain("power-residue test on zero"));
        }
        if k == 0 {
            return Err(Error::usage("power-residue exponent must be positive"));
        }
        let n = self.q - 1;
        Ok(self.pow(x, n / gcd(k, n)) == Elem::ONE)
    }

    /// Discrete logarithm base the generator, via table lookup.
    pub fn dlog(&self, x: Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::domain("discrete log of zero"));
        }
        let t = self
            .tables
            .as_ref()
            .ok_or_else(|| Error::capability(format!("no log table for GF(2^{})", self.r)))?;
        Ok(u64::from(t.log[x.0 as usize]))
    }

    /// `gen^n`.
    pub fn gen_pow(&self, n: u64) -> Elem {
        self.pow(self.gen, n)
    }

    /// Membership in the subfield of order `2^m`.
    pub fn in_subfield(&self, x: Elem, m: u32) -> Result<bool> {
        if m == 0 || !self.r.is_multiple_of(m) {
            return Err(Error::usage(format!("{m} does not divide r = {}", self.r)));
        }
        Ok(self.frobenius(x, m) == x)
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, x: Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::domain("order of zero"));
        }
        let mut n = self.q - 1;
        for &p in &self.order_primes {
            while n.is_multiple_of(p) && self.pow(x, n / p) == Elem::ONE {
                n /= p;
            }
        }
        Ok(n)
    }

    /// The primitive cube roots of unity in ascending encoding order (empty when r is odd).
    pub fn primitive_cube_roots(&self) -> Vec<Elem> {
        if !(self.q - 1).is_multiple_of(3) {
            return Vec::new();
        }
        let w = self.gen_pow((self.q - 1) / 3);
        let mut v = vec![w, self.square(w)];
        v.sort();
        v
    }
}

/// Smallest-encoding monic irreducible polynomial of degree `r` over GF(2).
/// Degree one uses `x + 1` by convention.
pub fn smallest_irreducible(r: u32) -> u64 {
    if r == 1 {
        return 0b11;
    }
    ((1u64 << r) + 1..1u64 << (r + 1))
        .step_by(2)
        .find(|&f| gf2x::is_irreducible(f, r))
        .expect("irreducible polynomials exist in every degree")
}

/// Polynomials over GF(2) packed in a `u64`, degree at most 32.
pub mod gf2x {
    use crate::arith::prime_factors;

    pub fn degree(f: u64) -> Option<u32> {
        (f != 0).then(|| 63 - f.leading_zeros())
    }

    pub fn rem(mut a: u64, b: u64) -> u64 {
        let db = degree(b).expect("division by zero polynomial");
        while let Some(da) = degree(a) {
            if da < db {
                break;
            }
            a ^= b << (da - db);
        }
        a
    }

    fn mulmod(a: u64, b: u64, f: u64) -> u64 {
        let mut a = rem(a, f);
        let mut b = b;
        let df = degree(f).unwrap();
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> df) & 1 == 1 {
                a ^= f;
            }
        }
        acc
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = rem(a, b);
            a = b;
            b = t;
        }
        a
    }

    /// `x^(2^k) mod f`.
    fn x_pow_2k(k: u32, f: u64) -> u64 {
        let mut y = rem(0b10, f);
        for _ in 0..k {
            y = mulmod(y, y, f);
        }
        y
    }

    /// Rabin's test: `x^(2^r) = x mod f` and `gcd(x^(2^(r/p)) - x, f) = 1` for primes `p | r`.
    pub fn is_irreducible(f: u64, r: u32) -> bool {
        if degree(f) != Some(r) {
            return false;
        }
        if r == 1 {
            return true;
        }
        if x_pow_2k(r, f) != 0b10 {
            return false;
        }
        prime_factors(u64::from(r))
            .into_iter()
            .all(|p| gcd(f, x_pow_2k(r / p as u32, f) ^ 0b10) == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Irreducibility by trial division over every polynomial of degree 1..=r/2.
    fn irreducible_by_trial_division(f: u64, r: u32) -> bool {
        (2u64..1 << (r / 2 + 1)).all(|d| {
            let dd = gf2x::degree(d).unwrap();
            dd == 0 || dd > r / 2 || gf2x::rem(f, d) != 0
        })
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for r in 2..=12 {
            for f in (1u64 << r)..(1u64 << (r + 1)) {
                assert_eq!(
                    gf2x::is_irreducible(f, r),
                    irreducible_by_trial_division(f, r),
                    "f = {f:#b}"
                );
            }
        }
    }

    #[test]
    fn smallest_moduli() {
        // oracle: ascending scan with trial division
        for r in 2..=16 {
            let expect = ((1u64 << r)..(1u64 << (r + 1)))
                .find(|&f| irreducible_by_trial_division(f, r))
                .unwrap();
            assert_eq!(smallest_irreducible(r), expect);
        }
        assert_eq!(FieldCtx::build(2).unwrap().modulus(), 0b111);
        assert_eq!(FieldCtx::build(4).unwrap().modulus(), 0b10011);
    }

    #[test]
    fn prime_field() {
        let f = FieldCtx::build(1).unwrap();
        assert_eq!(f.modulus(), 0b11);
        assert_eq!(f.generator(), Elem::ONE);
        assert_eq!(f.mul(Elem::ONE, Elem::ONE), Elem::ONE);
        assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
        assert_eq!(f.trace(Elem::ONE), Elem::ONE);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(FieldCtx::build(0), Err(Error::Usage(_))));
        assert!(matches!(FieldCtx::build(33), Err(Error::Usage(_))));
        let cfg = FieldConfig { max_degree: 8, ..Default::default() };
        assert!(matches!(FieldCtx::build_with(9, &cfg), Err(Error::Usage(_))));
    }

    #[test]
    fn gf4_basics() {
        let f = FieldCtx::build(2).unwrap();
        let w = f.elem(2).unwrap();
        assert_eq!(f.mul(w, w), f.elem(3).unwrap());
        assert_eq!(f.trace(w), Elem::ONE);
        assert_eq!(f.primitive_cube_roots(), vec![f.elem(2).unwrap(), f.elem(3).unwrap()]);
    }

    #[test]
    fn lagrange_in_gf8() {
        let f = FieldCtx::build(3).unwrap();
        for x in f.nonzero() {
            assert_eq!(f.pow(x, 7), Elem::ONE);
            assert!(f.is_kth_power(x, 3).unwrap());
        }
    }

    #[test]
    fn pow_conventions() {
        let f = FieldCtx::build(5).unwrap();
        assert_eq!(f.pow(Elem::ZERO, 0), Elem::ONE);
        assert_eq!(f.pow(Elem::ZERO, 9), Elem::ZERO);
        let x = f.elem(13).unwrap();
        assert_eq!(f.pow_signed(x, -1).unwrap(), f.inv(x).unwrap());
        assert_eq!(f.pow_signed(x, -3).unwrap(), f.inv(f.pow(x, 3)).unwrap());
        assert!(matches!(f.pow_signed(Elem::ZERO, -1), Err(Error::Domain(_))));
        assert!(matches!(f.inv(Elem::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let cfg = FieldConfig { table_cap: 0, ..Default::default() };
        for r in [3, 6, 9] {
            let fast = FieldCtx::build(r).unwrap();
            let slow = FieldCtx::build_with(r, &cfg).unwrap();
            assert!(fast.has_log_table() && !slow.has_log_table());
            assert_eq!(fast.generator(), slow.generator());
            for x in fast.elements() {
                for y in fast.elements() {
                    assert_eq!(fast.mul(x, y), slow.mul(x, y));
                }
                assert_eq!(fast.pow(x, 12345), slow.pow(x, 12345));
            }
            assert!(matches!(slow.dlog(Elem::ONE), Err(Error::Capability(_))));
        }
    }

    #[test]
    fn trace_examples() {
        let f = FieldCtx::build(4).unwrap();
        for x in f.elements() {
            assert_eq!(f.partial_trace(x, 1).unwrap(), x);
        }
        assert_eq!(f.partial_trace(Elem::ONE, 2).unwrap(), Elem::ZERO);
        assert!(f.partial_trace(Elem::ONE, 0).is_err());
        assert!(f.partial_trace(Elem::ONE, 5).is_err());
        let zeros = f.elements().filter(|&x| f.trace(x).is_zero()).count();
        assert_eq!(zeros, 8);
    }

    #[test]
    fn power_residues() {
        let f = FieldCtx::build(6).unwrap();
        // gen has order 63 and gen^21 != 1
        assert_ne!(f.pow(f.generator(), 21), Elem::ONE);
        assert!(!f.is_kth_power(f.generator(), 3).unwrap());
        assert!(f.is_kth_power(Elem::ONE, 7).unwrap());
        assert!(matches!(f.is_kth_power(Elem::ZERO, 3), Err(Error::Domain(_))));
        for x in f.nonzero() {
            let l = f.dlog(x).unwrap();
            for k in 1..=63 {
                assert_eq!(f.is_kth_power(x, k).unwrap(), l.is_multiple_of(gcd(k, 63)));
            }
        }
    }

    #[test]
    fn dlog_and_subfields() {
        let f = FieldCtx::build(4).unwrap();
        assert_eq!(f.dlog(Elem::ONE).unwrap(), 0);
        assert_eq!(f.dlog(f.generator()).unwrap(), 1);
        let g5 = f.gen_pow(5);
        assert_eq!(f.elem_order(g5).unwrap(), 3);
        assert!(f.in_subfield(g5, 2).unwrap());
        assert!(!f.in_subfield(f.generator(), 2).unwrap());
        assert!(matches!(f.in_subfield(g5, 3), Err(Error::Usage(_))));
        for x in f.nonzero() {
            assert_eq!(f.gen_pow(f.dlog(x).unwrap()), x);
        }
    }

    #[test]
    fn norm_lands_in_half_subfield() {
        for j in 1..=5u32 {
            let f = FieldCtx::build(2 * j).unwrap();
            for a in f.nonzero() {
                let n = f.pow(a, (1 << j) + 1);
                assert!(f.in_subfield(n, j).unwrap());
            }
        }
    }

    #[test]
    fn alternative_generator() {
        let f = FieldCtx::build(6).unwrap();
        let g2 = f.gen_pow(5);
        let h = f.with_generator(g2).unwrap();
        assert_eq!(h.generator(), g2);
        assert_eq!(h.dlog(g2).unwrap(), 1);
        assert!(f.with_generator(f.gen_pow(3)).is_err());
    }

    #[test]
    fn element_validation() {
        let f = FieldCtx::build(3).unwrap();
        assert!(f.elem(7).is_ok());
        assert!(matches!(f.elem(8), Err(Error::Usage(_))));
        let big = FieldCtx::build(8).unwrap().elem(200).unwrap();
        assert!(f.check(big).is_err());
    }
}
