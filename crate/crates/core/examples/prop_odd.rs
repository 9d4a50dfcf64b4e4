//! a c^(1+2^j) is planar exactly when j = r/2 and the half trace of a^(2^j+1) vanishes.

use planar2::theorems::verify_prop_odd;
use planar2::Result;

fn main() -> Result<()> {
    for r in 2..=10 {
        let report = verify_prop_odd(r)?;
        let half = report.details.get("planar_at_half").map_or("-".to_owned(), |n| n.to_string());
        println!("r = {r:2}: pass = {}, planar at j = r/2: {half}", report.pass);
    }
    Ok(())
}
