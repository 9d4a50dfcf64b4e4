//! Exhaustive verifiers, one per structural claim about planar monomials and
//! the Fermat-curve argument behind them.
//!
//! Every verifier enumerates its whole parameter space at the requested size
//! and returns a [`VerifierReport`]. Outer loops run on the current rayon
//! pool; results are merged in enumeration order so reports do not depend on
//! the worker count.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2r::{Elem, FieldCtx, FieldDescriptor};
use crate::planarity::Witness;

mod curve;
mod fermat;
mod main_theorem;
mod prop_odd;

pub use curve::{count_fermat_curve_points, verify_curve, verify_curve_in, weil_gap_check, weil_lower_bound_clears_axes, CurveCount, FermatCurve};
pub use fermat::{
    verify_factorization_identities, verify_factorization_identities_in, verify_fermat_cubes,
    verify_fermat_cubes_in, verify_minpoly_structure, verify_minpoly_structure_in, verify_root_d,
    verify_root_d_in,
};
pub use main_theorem::{
    theorem1_hypothesis, verify_no_de_all, verify_no_de_solutions, verify_no_de_solutions_in,
    verify_theorem1, verify_theorem1_in,
};
pub use prop_odd::{verify_prop_odd, verify_prop_odd_in};

/// Largest field degree the verifiers will build.
pub const VERIFIER_MAX_DEGREE: u32 = 24;

/// A concrete failure, re-checkable by direct arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `u^(Q-1) + v^(Q-1) = 1` but `uv` is not a cube.
    FermatPair { u: Elem, v: Elem },
    /// A proof step failed at the given element.
    ProofStep { step: String, x: Elem },
    /// A coefficient satisfying the hypothesis whose monomial is not planar.
    NotPlanar { a: Elem, witness: Witness },
    CountMismatch { quantity: String, expected: u64, found: u64 },
    /// `d^(Q^2-1) + d^(Q-1) = a^-1 e^(3Q-3)`.
    DeSolution { a: Elem, d: Elem, e: Elem },
    PropOdd { j: u32, a: Elem, planar: bool, predicted: bool },
    Identity { identity: u8, omega: Elem, b: Elem, e: Elem },
    RootD { omega: Elem, b: Elem, e: Elem, d: Elem },
    Curve { a: Elem, step: String, total: u64, all_nonzero: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifierReport {
    pub name: String,
    pub field: FieldDescriptor,
    pub parameters: BTreeMap<String, u64>,
    pub pass: bool,
    pub cases_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(default)]
    pub details: BTreeMap<String, u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub(crate) struct ReportBuilder {
    name: &'static str,
    field: FieldDescriptor,
    parameters: BTreeMap<String, u64>,
    details: BTreeMap<String, u64>,
    start: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(name: &'static str, ctx: &FieldCtx) -> Self {
        ReportBuilder {
            name,
            field: ctx.descriptor(),
            parameters: BTreeMap::new(),
            details: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    pub(crate) fn param(mut self, key: &str, value: u64) -> Self {
        self.parameters.insert(key.to_owned(), value);
        self
    }

    pub(crate) fn detail(&mut self, key: &str, value: u64) {
        self.details.insert(key.to_owned(), value);
    }

    pub(crate) fn finish(self, cases_checked: u64, counterexample: Option<Counterexample>) -> VerifierReport {
        VerifierReport {
            name: self.name.to_owned(),
            field: self.field,
            parameters: self.parameters,
            pass: counterexample.is_none(),
            cases_checked,
            counterexample,
            details: self.details,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Per-item outcome of an exhaustive sweep.
#[derive(Default)]
pub(crate) struct Tally {
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
    pub counts: BTreeMap<&'static str, u64>,
}

impl Tally {
    pub(crate) fn fail(&mut self, cex: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(cex);
        }
    }

    pub(crate) fn bump(&mut self, key: &'static str) {
        *self.counts.entry(key).or_default() += 1;
    }

    pub(crate) fn absorb(&mut self, other: Tally) {
        self.cases += other.cases;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
    }
}

/// Runs `f` over `items` in parallel and merges in item order, so the first
/// counterexample reported is the first in enumeration order.
pub(crate) fn sweep<I: Sync>(items: &[I], f: impl Fn(&I) -> Tally + Sync + Send) -> Tally {
    let parts: Vec<Tally> = items.par_iter().map(f).collect();
    parts.into_iter().fold(Tally::default(), |mut acc, t| {
        acc.absorb(t);
        acc
    })
}

pub(crate) fn build_field(r: u32) -> Result<FieldCtx> {
    if r > VERIFIER_MAX_DEGREE {
        return Err(Error::capability(format!(
            "GF(2^{r}) exceeds the verifier cap of 2^{VERIFIER_MAX_DEGREE}"
        )));
    }
    FieldCtx::build(r)
}

pub(crate) fn expect_degree(ctx: &FieldCtx, r: u32) -> Result<()> {
    if ctx.degree() != r {
        return Err(Error::usage(format!(
            "verifier needs GF(2^{r}), got GF(2^{})",
            ctx.degree()
        )));
    }
    Ok(())
}
