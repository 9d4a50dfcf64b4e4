//! The cube statement for `u^(Q-1) + v^(Q-1) = 1` over GF(Q^3) and the
//! polynomial machinery of its proof.

use crate::arith::log2_exact;
use crate::error::{Error, Result};
use crate::gf2r::{Elem, FieldCtx};
use crate::poly::{cubic_g, Poly};

use super::{build_field, expect_degree, sweep, Counterexample, ReportBuilder, Tally, VerifierReport};

fn fermat_degree(q_small: u64) -> Result<u32> {
    match log2_exact(q_small) {
        Some(m) if m >= 1 => Ok(m),
        _ => Err(Error::usage(format!("Q = {q_small} is not a power of 2 greater than 1"))),
    }
}

/// For every `u, v != 0` in GF(Q^3) with `u^(Q-1) + v^(Q-1) = 1`, checks that
/// `uv` is a cube.
pub fn verify_fermat_cubes(q_small: u64) -> Result<VerifierReport> {
    let m = fermat_degree(q_small)?;
    verify_fermat_cubes_in(&build_field(3 * m)?, q_small)
}

pub fn verify_fermat_cubes_in(ctx: &FieldCtx, q_small: u64) -> Result<VerifierReport> {
    let m = fermat_degree(q_small)?;
    expect_degree(ctx, 3 * m)?;
    let mut report = ReportBuilder::new("fermat_cubes", ctx).param("Q", q_small);
    let e = q_small - 1;

    // v grouped by v^(Q-1) in CSR form
    let q = ctx.order() as usize;
    let key: Vec<u32> = ctx.elements().map(|v| if v.is_zero() { 0 } else { ctx.pow(v, e).enc() }).collect();
    let mut offsets = vec![0u32; q + 1];
    for v in 1..q {
        offsets[key[v] as usize + 1] += 1;
    }
    for k in 0..q {
        offsets[k + 1] += offsets[k];
    }
    let mut fill = offsets.clone();
    let mut members = vec![Elem::ZERO; q - 1];
    for (v, &k) in key.iter().enumerate().skip(1) {
        members[fill[k as usize] as usize] = ctx.elem(v as u64)?;
        fill[k as usize] += 1;
    }

    let us: Vec<Elem> = ctx.nonzero().collect();
    let mut tally = sweep(&us, |&u| {
        let mut t = Tally::default();
        let target = ctx.pow(u, e) + Elem::ONE;
        let (lo, hi) = (offsets[target.enc() as usize], offsets[target.enc() as usize + 1]);
        if target.is_zero() {
            return t;
        }
        for &v in &members[lo as usize..hi as usize] {
            t.cases += 1;
            if !ctx.is_kth_power(ctx.mul(u, v), 3).expect("nonzero product") {
                t.fail(Counterexample::FermatPair { u, v });
            }
        }
        t
    });
    report.detail("pairs", tally.cases);

    // with Q a power of 4, each element of GF(Q)^* must already be a cube in GF(Q^3)
    if m % 2 == 0 {
        let mut sub = 0;
        for x in ctx.nonzero() {
            if ctx.in_subfield(x, m)? {
                sub += 1;
                if !ctx.is_kth_power(x, 3)? {
                    tally.fail(Counterexample::ProofStep { step: "subfield_cube".into(), x });
                }
            }
        }
        report.detail("subfield_elements_checked", sub);
    }
    Ok(report.finish(tally.cases, tally.counterexample))
}

fn omega_field(m: u32) -> Result<FieldCtx> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::usage(format!("m = {m} must be even so GF(2^m) contains cube roots of unity")));
    }
    build_field(m)
}

fn omegas(ctx: &FieldCtx) -> Result<Vec<Elem>> {
    let w = ctx.primitive_cube_roots();
    if w.is_empty() {
        return Err(Error::usage("field has no primitive cube root of unity"));
    }
    Ok(w)
}

fn pairs(ctx: &FieldCtx) -> Vec<(Elem, Elem)> {
    ctx.elements().flat_map(|b| ctx.elements().map(move |e| (b, e))).collect()
}

/// The two product identities for `G(x^3)`, `G(x) = x^3 + (b^2+b)x^2 + x + 1`,
/// compared coefficientwise for every `(b, e)` and both choices of `omega`.
pub fn verify_factorization_identities(m: u32) -> Result<VerifierReport> {
    verify_factorization_identities_in(&omega_field(m)?)
}

pub fn verify_factorization_identities_in(ctx: &FieldCtx) -> Result<VerifierReport> {
    let report = ReportBuilder::new("factorization_identities", ctx).param("m", u64::from(ctx.degree()));
    let ws = omegas(ctx)?;
    let all = pairs(ctx);
    let mut total = Tally::default();
    for &w in &ws {
        let w2 = ctx.square(w);
        let orbit = [Elem::ONE, w, w2];
        let t = sweep(&all, |&(b, e)| {
            let mut t = Tally::default();
            let g3 = cubic_g(b, ctx).compose_xcube();
            let x6 = |c: Elem| Poly::monomial(c, 6);
            let e3 = ctx.pow(e, 3);

            let first: Vec<Poly> = orbit
                .iter()
                .map(|&z| Poly::from_coeffs(vec![Elem::ONE, Elem::ZERO, ctx.mul(e, z), Elem::ONE]))
                .collect();
            let lhs = g3.add(&Poly::product(&first, ctx).expect("same field"));
            let rhs = x6(e3 + ctx.square(b) + b + Elem::ONE);
            t.cases += 1;
            if lhs != rhs {
                t.fail(Counterexample::Identity { identity: 1, omega: w, b, e });
            }

            let second: Vec<Poly> = orbit
                .iter()
                .map(|&z| {
                    let ez = ctx.mul(e, z);
                    Poly::from_coeffs(vec![Elem::ONE, ez, ctx.square(ez), Elem::ONE])
                })
                .collect();
            let lhs = g3.add(&Poly::product(&second, ctx).expect("same field"));
            let rhs = x6(ctx.mul(e3 + b + w, e3 + b + w2));
            t.cases += 1;
            if lhs != rhs {
                t.fail(Counterexample::Identity { identity: 2, omega: w, b, e });
            }
            t
        });
        total.absorb(t);
    }
    let mut report = report;
    report.detail("omega_choices", ws.len() as u64);
    report.detail("pairs", all.len() as u64);
    Ok(report.finish(total.cases, total.counterexample))
}

/// `d = (b^2+b+1)e^2 + (b+omega)^2 e + b^2 + b` is a root of `G` whenever
/// `(b + omega^2) + e^3 (b + omega) = 0`.
pub fn verify_root_d(m: u32) -> Result<VerifierReport> {
    verify_root_d_in(&omega_field(m)?)
}

pub fn verify_root_d_in(ctx: &FieldCtx) -> Result<VerifierReport> {
    let mut report = ReportBuilder::new("root_d", ctx).param("m", u64::from(ctx.degree()));
    let ws = omegas(ctx)?;
    let all = pairs(ctx);
    let mut total = Tally::default();
    for &w in &ws {
        let w2 = ctx.square(w);
        let t = sweep(&all, |&(b, e)| {
            let mut t = Tally::default();
            let constraint = (b + w2) + ctx.mul(ctx.pow(e, 3), b + w);
            if !constraint.is_zero() {
                return t;
            }
            t.cases += 1;
            let b2b = ctx.square(b) + b;
            let d = ctx.mul(b2b + Elem::ONE, ctx.square(e)) + ctx.mul(ctx.square(b + w), e) + b2b;
            if !cubic_g(b, ctx).eval(d, ctx).expect("same field").is_zero() {
                t.fail(Counterexample::RootD { omega: w, b, e, d });
            }
            t
        });
        total.absorb(t);
    }
    report.detail("omega_choices", ws.len() as u64);
    Ok(report.finish(total.cases, total.counterexample))
}

/// For every `U` of order dividing `Q^2+Q+1` with `V = U + 1` of the same kind:
/// the minimal polynomial `F` of `U` over GF(Q) has `F + 1 = x(x+1)(x+b)`,
/// and `G(x) = x^3 + (b^2+b)x^2 + x + 1` is the minimal polynomial of `UV`.
pub fn verify_minpoly_structure(q_small: u64) -> Result<VerifierReport> {
    let m = fermat_degree(q_small)?;
    verify_minpoly_structure_in(&build_field(3 * m)?, q_small)
}

pub fn verify_minpoly_structure_in(ctx: &FieldCtx, q_small: u64) -> Result<VerifierReport> {
    let m = fermat_degree(q_small)?;
    if m % 2 != 0 {
        return Err(Error::usage(format!("Q = {q_small} must be a power of 4")));
    }
    expect_degree(ctx, 3 * m)?;
    let mut report = ReportBuilder::new("minpoly_structure", ctx).param("Q", q_small);
    let norm = q_small * q_small + q_small + 1;
    let subfield: Vec<Elem> = ctx.elements().filter(|&x| ctx.in_subfield(x, m).unwrap()).collect();
    let ws: Vec<Elem> = ctx.primitive_cube_roots();

    let us: Vec<Elem> = ctx
        .nonzero()
        .filter(|&u| {
            let v = u + Elem::ONE;
            !v.is_zero() && ctx.pow(u, norm) == Elem::ONE && ctx.pow(v, norm) == Elem::ONE
        })
        .collect();
    let tally = sweep(&us, |&u| {
        let mut t = Tally { cases: 1, ..Default::default() };
        let v = u + Elem::ONE;
        let uv = ctx.mul(u, v);
        let step = |t: &mut Tally, name: &str| {
            t.fail(Counterexample::ProofStep { step: name.to_owned(), x: u });
        };
        if ctx.in_subfield(u, m).unwrap() {
            t.bump("subfield_branch");
            if ctx.pow(u, 3) != Elem::ONE || u == Elem::ONE || uv != Elem::ONE {
                step(&mut t, "subfield_branch");
            }
            return t;
        }
        t.bump("cubic_branch");
        let f = Poly::min_poly_over_subfield(u, m, ctx).expect("m | r");
        if f.degree() != Some(3) {
            step(&mut t, "minpoly_degree");
            return t;
        }
        let at = |p: &Poly, x: Elem| p.eval(x, ctx).expect("same field");
        if at(&f, Elem::ZERO) != Elem::ONE || at(&f, Elem::ONE) != Elem::ONE {
            step(&mut t, "minpoly_constant_terms");
        }
        // F + 1 = x^3 + (b+1)x^2 + bx
        let b = f.coeff(1);
        if f.coeff(2) != b + Elem::ONE || !ctx.in_subfield(b, m).unwrap() {
            step(&mut t, "f_plus_one_factorization");
        }
        let g = cubic_g(b, ctx);
        if !at(&g, ctx.square(u) + u).is_zero() {
            step(&mut t, "g_vanishes_at_uv");
        }
        if subfield.iter().any(|&x| at(&g, x).is_zero()) {
            step(&mut t, "g_irreducible");
        }
        if ws.contains(&b) {
            step(&mut t, "b_not_cube_root_of_unity");
        }
        if Poly::min_poly_over_subfield(uv, m, ctx).expect("m | r") != g {
            step(&mut t, "g_is_minpoly_of_uv");
        }
        if !ctx.is_kth_power(uv, 3 * (q_small - 1)).unwrap() {
            step(&mut t, "uv_is_3(Q-1)_power");
        }
        t
    });
    for (k, v) in &tally.counts {
        report.detail(k, *v);
    }
    Ok(report.finish(tally.cases, tally.counterexample))
}
