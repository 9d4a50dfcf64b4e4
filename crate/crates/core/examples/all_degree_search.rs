//! Every planar a c^t, 2 <= t <= q - 1, for small r.

use planar2::search::search_all_degrees;
use planar2::Result;

fn main() -> Result<()> {
    let max_r = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    for r in 2..=max_r {
        let result = search_all_degrees(r)?;
        let summary: Vec<String> = result
            .findings
            .iter()
            .map(|f| match (f.i, f.j) {
                (Some(i), Some(j)) => format!("{}=2^{i}+2^{j} ({})", f.t, f.count),
                _ => format!("{} (all)", f.t),
            })
            .collect();
        println!("r = {r:2}: {}", summary.join(", "));
    }
    Ok(())
}
