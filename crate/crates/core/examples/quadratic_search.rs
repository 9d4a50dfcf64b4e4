//! Every planar a c^(2^i + 2^j) for r up to 14.

use planar2::search::search_quadratic;
use planar2::Result;

fn main() -> Result<()> {
    let max_r = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(14);
    for r in 2..=max_r {
        let result = search_quadratic(r)?;
        let found: Vec<String> = result
            .findings
            .iter()
            .map(|f| format!("(i={}, j={}): {} coefficients", f.i.unwrap(), f.j.unwrap(), f.count))
            .collect();
        println!("r = {r:2}: {}", if found.is_empty() { "none".to_owned() } else { found.join(", ") });
    }
    Ok(())
}
