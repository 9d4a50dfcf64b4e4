//! Point counts on z^n + x^n = a^-1 y^n, n = 2^J - 1, against the Weil bound.

use planar2::theorems::{verify_curve, weil_gap_check, FermatCurve};
use planar2::{FieldCtx, Result};

fn main() -> Result<()> {
    let ctx = FieldCtx::build(8)?;
    let curve = FermatCurve::new(&ctx, 4)?;
    println!("r = 8, J = 4, genus {}", curve.genus());
    for a in ctx.nonzero().take(6) {
        let c = curve.count(a)?;
        println!("  a = {a:3}: {} points, {} with xyz != 0, Weil ok: {}", c.total, c.all_nonzero, c.weil_holds);
    }
    for (r, j) in [(4, 2), (6, 2), (6, 3), (8, 4), (8, 2)] {
        let report = verify_curve(r, j, None)?;
        println!("r = {r}, J = {j}: pass = {} {:?}", report.pass, report.details);
    }
    println!("bound chain holds for J = 2, r = 8: {}", weil_gap_check(2, 8)?);
    Ok(())
}
