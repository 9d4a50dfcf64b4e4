//! Classification of planar `a x^(1+2^j)`: planar iff `j = r/2` and
//! `T(a^(2^j+1)) = 0`, where `T` is the trace from GF(2^j) to GF(2).

use crate::error::{Error, Result};
use crate::gf2r::{Elem, FieldCtx};
use crate::planarity::QuadraticImage;

use super::{build_field, expect_degree, sweep, Counterexample, ReportBuilder, Tally, VerifierReport};

/// Largest degree accepted by [`verify_prop_odd`].
pub const PROP_ODD_MAX_DEGREE: u32 = 20;

pub fn verify_prop_odd(r: u32) -> Result<VerifierReport> {
    if !(2..=PROP_ODD_MAX_DEGREE).contains(&r) {
        return Err(Error::usage(format!("r = {r} outside 2..={PROP_ODD_MAX_DEGREE}")));
    }
    verify_prop_odd_in(&build_field(r)?, r)
}

pub fn verify_prop_odd_in(ctx: &FieldCtx, r: u32) -> Result<VerifierReport> {
    expect_degree(ctx, r)?;
    let mut report = ReportBuilder::new("prop_odd", ctx).param("r", u64::from(r));
    let js: Vec<u32> = (1..r).collect();
    let coeffs: Vec<Elem> = ctx.nonzero().collect();
    let mut half_count = 0;
    let mut tally = Tally::default();
    for &j in &js {
        let image = QuadraticImage::new(ctx, 0, j)?;
        let t = sweep(&coeffs, |&a| {
            let mut t = Tally { cases: 1, ..Default::default() };
            let verdict = image.verdict(a).expect("nonzero coefficient");
            let predicted = 2 * j == r && {
                let norm = ctx.pow(a, (1u64 << j) + 1);
                ctx.partial_trace(norm, j).expect("1 <= j <= r").is_zero()
            };
            if verdict.planar {
                t.bump("planar");
            }
            if verdict.planar != predicted {
                t.fail(Counterexample::PropOdd { j, a, planar: verdict.planar, predicted });
            }
            t
        });
        if 2 * j == r {
            half_count = t.counts.get("planar").copied().unwrap_or(0);
        }
        tally.absorb(t);
    }
    report.detail("planar_total", tally.counts.get("planar").copied().unwrap_or(0));

    if r.is_multiple_of(2) {
        let j = r / 2;
        let expected = ((1u64 << (j - 1)) - 1) * ((1u64 << j) + 1);
        report.detail("planar_at_half", half_count);
        report.detail("expected_at_half", expected);
        if half_count != expected {
            tally.fail(Counterexample::CountMismatch { quantity: "planar_at_half".into(), expected, found: half_count });
        }
        check_subfield_coefficients(ctx, j, &mut report, &mut tally)?;
    }
    Ok(report.finish(tally.cases, tally.counterexample))
}

/// Inside GF(2^j): trace zero means `b^2 + b` for some `b` in GF(2^j), and the
/// planar coefficients lying in GF(2^j)^* are exactly the `b^2 + b` with `b` not in GF(2),
/// `2^(j-1) - 1` of them.
fn check_subfield_coefficients(
    ctx: &FieldCtx,
    j: u32,
    report: &mut ReportBuilder,
    tally: &mut Tally,
) -> Result<()> {
    let r = ctx.degree();
    let image = QuadraticImage::new(ctx, 0, j)?;
    let sub: Vec<Elem> = ctx.elements().filter(|&x| ctx.in_subfield(x, j).unwrap()).collect();
    let mut is_b2b = vec![false; ctx.order() as usize];
    for &b in &sub {
        is_b2b[(ctx.square(b) + b).enc() as usize] = true;
    }
    for a in ctx.nonzero() {
        let norm = ctx.pow(a, (1u64 << j) + 1);
        if ctx.partial_trace(norm, j)?.is_zero() != is_b2b[norm.enc() as usize] {
            tally.fail(Counterexample::ProofStep { step: "trace_zero_iff_artin_schreier".into(), x: a });
        }
    }
    let mut planar_in_sub = 0;
    for &a in sub.iter().filter(|a| !a.is_zero()) {
        let planar = image.verdict(a)?.planar;
        let form = sub.iter().any(|&b| b.enc() > 1 && ctx.square(b) + b == a);
        if planar != form {
            tally.fail(Counterexample::ProofStep { step: "subfield_coefficients".into(), x: a });
        }
        planar_in_sub += u64::from(planar);
    }
    let expected = (1u64 << (j - 1)) - 1;
    if planar_in_sub != expected {
        tally.fail(Counterexample::CountMismatch {
            quantity: format!("planar_in_subfield_r{r}"),
            expected,
            found: planar_in_sub,
        });
    }
    report.detail("planar_in_subfield", planar_in_sub);
    Ok(())
}
