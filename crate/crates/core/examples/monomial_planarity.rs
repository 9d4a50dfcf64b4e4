//! Decide planarity of a c^t several ways and check the witnesses.

use planar2::planarity::{is_planar_monomial_with, QuadraticImage, Strategy};
use planar2::{is_planar_table, FieldCtx, MonomialSpec, Result};

fn main() -> Result<()> {
    let ctx = FieldCtx::build(6)?;

    // a c^20 with a = gen^3: a cube but not a 9th power
    let spec = MonomialSpec::new(&ctx, 20, ctx.gen_pow(3))?;
    for strategy in [Strategy::Auto, Strategy::Occupancy, Strategy::Definition] {
        let v = is_planar_monomial_with(&spec, &ctx, strategy)?;
        println!("t=20 a=gen^3 {strategy:?}: planar={} via {:?}", v.planar, v.method);
    }

    // a = gen^9 is a 9th power, so the same exponent fails
    let bad = MonomialSpec::new(&ctx, 20, ctx.gen_pow(9))?;
    let v = is_planar_table(&bad.table(&ctx), &ctx)?;
    let w = v.witness.expect("not planar");
    println!("t=20 a=gen^9: {w:?}, re-verifies: {}", w.verify_monomial(&bad, &ctx));

    // every coefficient at once for (i, j) = (2, 4)
    let image = QuadraticImage::new(&ctx, 2, 4)?;
    let planar = ctx.nonzero().filter(|&a| image.verdict(a).unwrap().planar).count();
    println!("a c^20 planar for {planar} of {} coefficients", ctx.group_order());
    println!("planar cosets of (F^*)^{}: {:?}", image.subgroup_index(), image.planar_coset_indices()?);
    Ok(())
}
