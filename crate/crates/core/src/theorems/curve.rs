//! Rational points on `z^n + x^n = a^-1 y^n`, `n = 2^J - 1`, and the Weil
//! bound argument that rules out planarity for small `gcd(j, r)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2r::{Elem, FieldCtx};

use super::{build_field, expect_degree, sweep, Counterexample, ReportBuilder, Tally, VerifierReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCount {
    /// Projective GF(q)-points.
    pub total: u64,
    /// Points with `xyz != 0`.
    pub all_nonzero: u64,
    /// `|total - (q+1)| <= 2 g sqrt(q)`, compared exactly.
    pub weil_holds: bool,
}

/// Point counter for a fixed `J`, sharing the fibres of `y -> y^n` across coefficients.
pub struct FermatCurve<'a> {
    ctx: &'a FieldCtx,
    j: u32,
    fibre: Vec<u32>,
}

impl<'a> FermatCurve<'a> {
    pub fn new(ctx: &'a FieldCtx, j: u32) -> Result<Self> {
        if j == 0 || !ctx.degree().is_multiple_of(j) {
            return Err(Error::usage(format!("J = {j} does not divide r = {}", ctx.degree())));
        }
        let n = (1u64 << j) - 1;
        let mut fibre = vec![0u32; ctx.order() as usize];
        for y in ctx.elements() {
            fibre[ctx.pow(y, n).enc() as usize] += 1;
        }
        Ok(FermatCurve { ctx, j, fibre })
    }

    /// `(2^J - 2)(2^J - 3) / 2`.
    pub fn genus(&self) -> u64 {
        let p = 1i128 << self.j;
        ((p - 2) * (p - 3) / 2) as u64
    }

    pub fn count(&self, a: Elem) -> Result<CurveCount> {
        let ctx = self.ctx;
        ctx.check(a)?;
        let a_inv = ctx.inv(a)?;
        let n = (1u64 << self.j) - 1;
        let mut total = 0u64;
        let mut all_nonzero = 0u64;
        // chart z = 1: y^n = a (1 + x^n)
        for x in ctx.elements() {
            let w = ctx.mul(a, Elem::ONE + ctx.pow(x, n));
            let ys = u64::from(self.fibre[w.enc() as usize]);
            total += ys;
            if !x.is_zero() && !w.is_zero() {
                all_nonzero += ys;
            }
        }
        // chart z = 0, y = 1: x^n = a^-1
        total += u64::from(self.fibre[a_inv.enc() as usize]);
        // chart z = y = 0, x = 1 would need 1 = 0

        let q = i128::from(ctx.order());
        let dev = i128::from(total) - (q + 1);
        let g = i128::from(self.genus());
        let weil_holds = dev * dev <= 4 * g * g * q;
        Ok(CurveCount { total, all_nonzero, weil_holds })
    }
}

pub fn count_fermat_curve_points(j: u32, a: Elem, ctx: &FieldCtx) -> Result<CurveCount> {
    FermatCurve::new(ctx, j)?.count(a)
}

/// The chain `1 + (5 q^(1/4) - 6) sqrt(q) > 3 sqrt(q) > 3(2^J - 1)`, exactly.
///
/// With `f = q^(1/4)` the first link is `1 + f^2 (5f - 9) > 0`, which holds once
/// `5f >= 9`, i.e. `625 q >= 6561`. The second is `q > (2^J - 1)^2`.
pub fn weil_gap_check(j: u32, r: u32) -> Result<bool> {
    if j == 0 || 4 * j > r || r > 64 {
        return Err(Error::usage(format!("need 1 <= J <= r/4, got J = {j}, r = {r}")));
    }
    let q = 1u128 << r;
    let first = 625 * q >= 6561;
    let side = (1u128 << j) - 1;
    let second = q > side * side;
    Ok(first && second)
}

/// Direct form of the conclusion: `q + 1 - 2 g sqrt(q) > 3(2^J - 1)`, so some
/// point has all coordinates nonzero.
pub fn weil_lower_bound_clears_axes(j: u32, r: u32) -> Result<bool> {
    if j == 0 || j > r || r > 60 {
        return Err(Error::usage(format!("need 1 <= J <= r <= 60, got J = {j}, r = {r}")));
    }
    let q = 1i128 << r;
    let p = 1i128 << j;
    let g = (p - 2) * (p - 3) / 2;
    let slack = q + 1 - 3 * (p - 1);
    if slack <= 0 {
        return Ok(false);
    }
    // slack > 2 g sqrt(q)  <=>  slack^2 > 4 g^2 q
    let rhs = (4 * g).checked_mul(g).and_then(|v| v.checked_mul(q));
    Ok(match rhs {
        Some(rhs) => slack * slack > rhs,
        None => false,
    })
}

pub fn verify_curve(r: u32, j: u32, a: Option<u64>) -> Result<VerifierReport> {
    let ctx = build_field(r)?;
    let a = a.map(|enc| ctx.elem(enc)).transpose()?;
    verify_curve_in(&ctx, r, j, a)
}

/// For each coefficient (or the given one): the Weil inequality, and the
/// criterion for points with nonzero coordinates that applies to `J`
/// (`J = r/2`: trace of `a^(2^J+1)` is 1; `J = r/3`: always; `J <= r/4`: always,
/// with the bound chain checked).
pub fn verify_curve_in(ctx: &FieldCtx, r: u32, j: u32, a: Option<Elem>) -> Result<VerifierReport> {
    expect_degree(ctx, r)?;
    let curve = FermatCurve::new(ctx, j)?;
    let mut report = ReportBuilder::new("curve", ctx).param("r", u64::from(r)).param("J", u64::from(j));
    report.detail("genus", curve.genus());
    let coeffs: Vec<Elem> = match a {
        Some(a) => {
            if a.is_zero() {
                return Err(Error::usage("coefficient must be nonzero"));
            }
            report = report.param("a", u64::from(a.enc()));
            vec![a]
        }
        None => ctx.nonzero().collect(),
    };
    let small_j = 4 * j <= r;
    let mut pre = Tally::default();
    if small_j && !(weil_gap_check(j, r)? && weil_lower_bound_clears_axes(j, r)?) {
        pre.fail(Counterexample::ProofStep { step: "weil_gap_chain".into(), x: Elem::ZERO });
    }
    let tally = sweep(&coeffs, |&a| {
        let mut t = Tally { cases: 1, ..Default::default() };
        let c = curve.count(a).expect("nonzero coefficient");
        let fail = |t: &mut Tally, step: &str| {
            t.fail(Counterexample::Curve { a, step: step.to_owned(), total: c.total, all_nonzero: c.all_nonzero });
        };
        if !c.weil_holds {
            fail(&mut t, "weil_bound");
        }
        if c.all_nonzero > 0 {
            t.bump("with_nonzero_point");
        }
        if 2 * j == r {
            let norm = ctx.pow(a, (1u64 << j) + 1);
            let trace_one = ctx.partial_trace(norm, j).expect("j <= r") == Elem::ONE;
            if (c.all_nonzero > 0) != trace_one {
                fail(&mut t, "half_degree_trace_criterion");
            }
        }
        if (3 * j == r || small_j) && c.all_nonzero == 0 {
            fail(&mut t, "nonzero_point_exists");
        }
        t
    });
    pre.absorb(tally);
    report.detail(
        "with_nonzero_point",
        pre.counts.get("with_nonzero_point").copied().unwrap_or(0),
    );
    Ok(report.finish(pre.cases, pre.counterexample))
}
