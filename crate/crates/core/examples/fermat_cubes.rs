//! u^(Q-1) + v^(Q-1) = 1 forces uv to be a cube in GF(Q^3).

use planar2::theorems::verify_fermat_cubes;
use planar2::Result;

fn main() -> Result<()> {
    for q in [2, 4, 8, 16] {
        let report = verify_fermat_cubes(q)?;
        println!(
            "Q = {q:2}: pass = {}, pairs = {}, {:?}",
            report.pass, report.cases_checked, report.elapsed
        );
    }
    Ok(())
}
