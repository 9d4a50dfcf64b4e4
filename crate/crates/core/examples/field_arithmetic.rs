//! Arithmetic in GF(2^8): modulus, generator, inverses, traces and discrete logs.

use planar2::{FieldCtx, Result};

fn main() -> Result<()> {
    let ctx = FieldCtx::build(8)?;
    println!("{ctx:?}");
    println!("q = {}, modulus = {:#x}, generator = {}", ctx.order(), ctx.modulus(), ctx.generator());

    let x = ctx.elem(0x53)?;
    let y = ctx.elem(0xca)?;
    println!("{x} * {y} = {}", ctx.mul(x, y));
    println!("{x}^-1 = {}", ctx.inv(x)?);
    println!("{x}^254 = {}", ctx.pow(x, 254));
    println!("Tr({x}) = {}, dlog({x}) = {}", ctx.trace(x), ctx.dlog(x)?);

    let cube_roots = ctx.primitive_cube_roots();
    println!("primitive cube roots of unity: {cube_roots:?}");

    let in_gf16: Vec<_> = ctx.elements().filter(|&e| ctx.in_subfield(e, 4).unwrap()).collect();
    println!("GF(16) inside GF(256) has {} elements", in_gf16.len());
    Ok(())
}
