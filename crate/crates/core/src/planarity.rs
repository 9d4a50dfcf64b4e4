//! Planarity of functions on GF(2^r).
//!
//! `F` is planar when `c -> F(c + d) + F(c) + d*c` is a bijection for every
//! nonzero `d`. Four deciders are provided and cross-checked in the tests:
//!
//! * [`is_planar_table`]: the definition, on a full function table.
//! * [`is_planar_monomial`]: for `a c^t`, reduce to the maps
//!   `c -> (c+1)^t + c^t + c*s` with `s` ranging over the coset
//!   `a^-1 (F_q^*)^g`, `g = gcd(t - 2, q - 1)`.
//! * [`is_planar_quadratic`]: for `t = 2^i + 2^j`, planar iff the image of
//!   `x^(2^i-1) + x^(2^j-1)` on `F_q^*` misses that coset.
//! * [`linearized_bijective`]: rank of the GF(2)-linear map
//!   `c -> c^(2^i) + c^(2^j) + s*c`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, two_power_split};
use crate::error::{Error, Result};
use crate::gf2r::{Elem, FieldCtx};
use crate::poly::gap_g;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Definition,
    LemmaMono,
    LemmaMono2,
    MatrixRank,
}

/// Evidence of non-planarity. Every variant re-verifies by direct arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `F(c1+d)+F(c1)+d*c1 = F(c2+d)+F(c2)+d*c2` with `c1 != c2`.
    Collision { d: Elem, c1: Elem, c2: Elem },
    /// `(c+1)^t + c^t + c*s` takes the same value at `c1` and `c2`.
    Difference { s: Elem, c1: Elem, c2: Elem },
    /// `s = x^(2^i-1) + x^(2^j-1)` lies in the coset of `a^-1`.
    Intersection { s: Elem, x: Elem },
    /// `v != 0` with `v^(2^i) + v^(2^j) + s*v = 0`.
    Kernel { s: Elem, v: Elem },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl PlanarityVerdict {
    fn planar(method: Method) -> Self {
        PlanarityVerdict { planar: true, method, witness: None }
    }

    fn refuted(method: Method, witness: Witness) -> Self {
        PlanarityVerdict { planar: false, method, witness: Some(witness) }
    }
}

/// q-bit occupancy set, reused across difference maps.
pub(crate) struct Occupancy {
    words: Vec<u64>,
}

impl Occupancy {
    pub(crate) fn new(q: u64) -> Self {
        Occupancy { words: vec![0; q.div_ceil(64) as usize] }
    }

    pub(crate) fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Returns false when `x` was already present.
    #[inline]
    pub(crate) fn insert(&mut self, x: u32) -> bool {
        let (w, b) = ((x >> 6) as usize, x & 63);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }
}

/// Finds the first collision of `map` on `F_q` in ascending order of `c`.
/// Returns `(c1, c2)` with `c1 < c2`.
fn first_collision(
    ctx: &FieldCtx,
    occ: &mut Occupancy,
    map: impl Fn(Elem) -> Elem,
) -> Option<(Elem, Elem)> {
    occ.clear();
    for c in ctx.elements() {
        let v = map(c);
        if !occ.insert(v.enc()) {
            let c1 = ctx.elements().find(|&e| map(e) == v).expect("value seen earlier");
            return Some((c1, c));
        }
    }
    None
}

/// Decides planarity of an arbitrary function given as a table indexed by encoding.
pub fn is_planar_table(table: &[Elem], ctx: &FieldCtx) -> Result<PlanarityVerdict> {
    if table.len() as u64 != ctx.order() {
        return Err(Error::usage(format!(
            "function table has {} entries, expected {}",
            table.len(),
            ctx.order()
        )));
    }
    table.iter().try_for_each(|&v| ctx.check(v))?;
    let mut occ = Occupancy::new(ctx.order());
    for d in ctx.nonzero() {
        let diff = |c: Elem| table[(c + d).enc() as usize] + table[c.enc() as usize] + ctx.mul(d, c);
        if let Some((c1, c2)) = first_collision(ctx, &mut occ, diff) {
            return Ok(PlanarityVerdict::refuted(Method::Definition, Witness::Collision { d, c1, c2 }));
        }
    }
    Ok(PlanarityVerdict::planar(Method::Definition))
}

/// A candidate planar monomial `c -> a c^t` on GF(2^r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSpec {
    pub r: u32,
    /// Exponent reduced into `[1, q-1]`.
    pub t: u64,
    pub a: Elem,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub split: Option<(u32, u32)>,
}

impl MonomialSpec {
    /// `t` may be any positive integer; it is reduced mod `q - 1` into `[1, q - 1]`.
    pub fn new(ctx: &FieldCtx, t: u64, a: Elem) -> Result<MonomialSpec> {
        ctx.check(a)?;
        if a.is_zero() {
            return Err(Error::usage("monomial coefficient must be nonzero"));
        }
        let t = normalize_exponent(t, ctx)?;
        Ok(MonomialSpec { r: ctx.degree(), t, a, split: two_power_split(t) })
    }

    /// `a c^(2^i + 2^j)` with `0 <= i < j < r`.
    pub fn quadratic(ctx: &FieldCtx, i: u32, j: u32, a: Elem) -> Result<MonomialSpec> {
        check_split(ctx, i, j)?;
        MonomialSpec::new(ctx, (1u64 << i) + (1u64 << j), a)
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        if self.r != ctx.degree() {
            return Err(Error::usage(format!(
                "monomial over GF(2^{}) used with GF(2^{})",
                self.r,
                ctx.degree()
            )));
        }
        ctx.check(self.a)?;
        if self.a.is_zero() || self.t == 0 || self.t >= ctx.order() {
            return Err(Error::usage("invalid monomial spec"));
        }
        if let Some((i, j)) = self.split {
            if (1u64 << i) + (1u64 << j) != self.t {
                return Err(Error::usage("split does not match exponent"));
            }
        }
        Ok(())
    }

    /// `a c^t` at `c`.
    pub fn eval(&self, c: Elem, ctx: &FieldCtx) -> Elem {
        ctx.mul(self.a, ctx.pow(c, self.t))
    }

    /// Full function table, indexed by encoding.
    pub fn table(&self, ctx: &FieldCtx) -> Vec<Elem> {
        ctx.elements().map(|c| self.eval(c, ctx)).collect()
    }

    /// Index `g` of the subgroup whose `a^-1`-coset feeds the reduced criterion.
    pub fn coset_index(&self, ctx: &FieldCtx) -> u64 {
        coset_exponent(self.t, ctx.group_order())
    }
}

/// Reduces `t >= 1` into `[1, q - 1]` without changing `c -> c^t` on `F_q`.
pub fn normalize_exponent(t: u64, ctx: &FieldCtx) -> Result<u64> {
    if t == 0 {
        return Err(Error::usage("exponent must be positive"));
    }
    Ok((t - 1) % ctx.group_order() + 1)
}

/// `gcd(t - 2 mod (q-1), q-1)` with the residue taken in `[1, q-1]`.
///
/// For `t = 2` this is `q - 1`, collapsing the coset `a^-1 (F_q^*)^g` to `{a^-1}`.
pub fn coset_exponent(t: u64, group_order: u64) -> u64 {
    let n = group_order;
    let e = ((t % n) + 2 * n - 2) % n;
    gcd(if e == 0 { n } else { e }, n)
}

/// The coset `a^-1 (F_q^*)^g` in ascending encoding order.
pub fn inverse_coset(a: Elem, g: u64, ctx: &FieldCtx) -> Result<Vec<Elem>> {
    let a_inv = ctx.inv(a)?;
    let n = ctx.group_order();
    let step = ctx.gen_pow(g);
    let mut s = a_inv;
    let mut out = Vec::with_capacity((n / g) as usize);
    for _ in 0..n / g {
        out.push(s);
        s = ctx.mul(s, step);
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Rank test when the difference map is linearized, occupancy otherwise.
    #[default]
    Auto,
    /// Full table against the definition.
    Definition,
    /// Coset reduction with an occupancy bijectivity test for every `s`.
    Occupancy,
}

/// Planarity of `a c^t` using the coset reduction, with the linearized fast path.
pub fn is_planar_monomial(spec: &MonomialSpec, ctx: &FieldCtx) -> Result<PlanarityVerdict> {
    is_planar_monomial_with(spec, ctx, Strategy::Auto)
}

pub fn is_planar_monomial_with(
    spec: &MonomialSpec,
    ctx: &FieldCtx,
    strategy: Strategy,
) -> Result<PlanarityVerdict> {
    spec.check_ctx(ctx)?;
    if strategy == Strategy::Definition {
        return is_planar_table(&spec.table(ctx), ctx);
    }
    let t = spec.t;
    let g = spec.coset_index(ctx);
    if strategy == Strategy::Auto {
        if t.is_power_of_two() {
            // (c+1)^t + c^t + c*s = 1 + c*s, bijective for every s != 0
            return Ok(PlanarityVerdict::planar(Method::MatrixRank));
        }
        if let Some((i, j)) = two_power_split(t) {
            return linearized_verdict(i, j, spec.a, g, ctx);
        }
    }
    let h = difference_table(t, ctx);
    let mut occ = Occupancy::new(ctx.order());
    occupancy_verdict(&h, spec.a, g, ctx, &mut occ)
}

/// `(c+1)^t + c^t` for every `c`, indexed by encoding.
pub(crate) fn difference_table(t: u64, ctx: &FieldCtx) -> Vec<Elem> {
    ctx.elements().map(|c| ctx.pow(c + Elem::ONE, t) + ctx.pow(c, t)).collect()
}

/// Reduced criterion with an occupancy test per `s` in `a^-1 (F_q^*)^g`.
pub(crate) fn occupancy_verdict(
    h: &[Elem],
    a: Elem,
    g: u64,
    ctx: &FieldCtx,
    occ: &mut Occupancy,
) -> Result<PlanarityVerdict> {
    for s in inverse_coset(a, g, ctx)? {
        let map = |c: Elem| h[c.enc() as usize] + ctx.mul(c, s);
        if let Some((c1, c2)) = first_collision(ctx, occ, map) {
            return Ok(PlanarityVerdict::refuted(Method::LemmaMono, Witness::Difference { s, c1, c2 }));
        }
    }
    Ok(PlanarityVerdict::planar(Method::LemmaMono))
}

/// Reduced criterion for `t = 2^i + 2^j` with a rank test per `s`.
pub(crate) fn linearized_verdict(i: u32, j: u32, a: Elem, g: u64, ctx: &FieldCtx) -> Result<PlanarityVerdict> {
    for s in inverse_coset(a, g, ctx)? {
        if let Some(v) = linearized_bijective(i, j, s, ctx)?.kernel {
            return Ok(PlanarityVerdict::refuted(Method::MatrixRank, Witness::Kernel { s, v }));
        }
    }
    Ok(PlanarityVerdict::planar(Method::MatrixRank))
}

/// Whether `c -> (c+1)^t + c^t + c*s` is a bijection, by occupancy.
pub fn difference_map_bijective(t: u64, s: Elem, ctx: &FieldCtx) -> Option<(Elem, Elem)> {
    let mut occ = Occupancy::new(ctx.order());
    first_collision(ctx, &mut occ, |c| ctx.pow(c + Elem::ONE, t) + ctx.pow(c, t) + ctx.mul(c, s))
}

fn check_split(ctx: &FieldCtx, i: u32, j: u32) -> Result<()> {
    if i >= j || j >= ctx.degree() {
        return Err(Error::usage(format!(
            "need 0 <= i < j < r, got i = {i}, j = {j}, r = {}",
            ctx.degree()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearCheck {
    pub bijective: bool,
    /// Smallest-encoding nonzero kernel element when not bijective.
    pub kernel: Option<Elem>,
}

/// `c^(2^i) + c^(2^j) + s*c`.
pub fn linearized_map(c: Elem, i: u32, j: u32, s: Elem, ctx: &FieldCtx) -> Elem {
    ctx.frobenius(c, i) + ctx.frobenius(c, j) + ctx.mul(s, c)
}

/// Rank test for the GF(2)-linear map `c -> c^(2^i) + c^(2^j) + s*c`.
pub fn linearized_bijective(i: u32, j: u32, s: Elem, ctx: &FieldCtx) -> Result<LinearCheck> {
    check_split(ctx, i, j)?;
    ctx.check(s)?;
    let r = ctx.degree() as usize;
    let columns: Vec<u32> =
        (0..r).map(|k| linearized_map(basis_vector(k, ctx), i, j, s, ctx).enc()).collect();
    let kernel = kernel_basis(&columns, r);
    // distinct leading bits, so the smallest basis vector is the smallest nonzero element
    let kernel = kernel.into_iter().min().map(|v| ctx.elem(u64::from(v)).expect("r-bit vector"));
    Ok(LinearCheck { bijective: kernel.is_none(), kernel })
}

/// Kernel basis of the r x r GF(2) matrix with the given columns. Each returned
/// vector has a distinct highest set bit.
fn kernel_basis(columns: &[u32], r: usize) -> Vec<u32> {
    let mut pivots: Vec<Option<(u32, u32)>> = vec![None; r];
    let mut kernel = Vec::new();
    for (k, &col) in columns.iter().enumerate() {
        let (mut v, mut combo) = (col, 1u32 << k);
        while v != 0 {
            let lead = 31 - v.leading_zeros() as usize;
            match pivots[lead] {
                Some((pv, pc)) => {
                    v ^= pv;
                    combo ^= pc;
                }
                None => {
                    pivots[lead] = Some((v, combo));
                    break;
                }
            }
        }
        if v == 0 {
            kernel.push(combo);
        }
    }
    kernel
}

/// `x^k` in the polynomial basis.
fn basis_vector(k: usize, ctx: &FieldCtx) -> Elem {
    ctx.elem(1u64 << k).expect("k < r")
}

/// Image of `x -> x^(2^i-1) + x^(2^j-1)` on `F_q^*`, bucketed by coset of `(F_q^*)^g`.
///
/// Built once per `(i, j)` and shared across coefficients.
pub struct QuadraticImage<'a> {
    ctx: &'a FieldCtx,
    i: u32,
    j: u32,
    g: u64,
    repr: ImageRepr,
}

enum ImageRepr {
    /// Per coset index `dlog(s) mod g`: the smallest `s` hit and the smallest preimage of it.
    ByCoset(Vec<Option<(Elem, Elem)>>),
    /// No log table: distinct nonzero image values with their smallest preimage, ascending in `s`.
    Sorted(Vec<(Elem, Elem)>),
}

impl<'a> QuadraticImage<'a> {
    pub fn new(ctx: &'a FieldCtx, i: u32, j: u32) -> Result<Self> {
        check_split(ctx, i, j)?;
        let t = (1u64 << i) + (1u64 << j);
        let g = gcd(t - 2, ctx.group_order());
        let repr = if ctx.has_log_table() {
            let mut best: Vec<Option<(Elem, Elem)>> = vec![None; g as usize];
            for x in ctx.nonzero() {
                let s = gap_g(x, i, j, ctx);
                if s.is_zero() {
                    continue;
                }
                let slot = &mut best[(ctx.dlog(s)? % g) as usize];
                match slot {
                    Some((bs, _)) if *bs <= s => {}
                    _ => *slot = Some((s, x)),
                }
            }
            ImageRepr::ByCoset(best)
        } else {
            let mut seen: Vec<Option<Elem>> = vec![None; ctx.order() as usize];
            for x in ctx.nonzero() {
                let s = gap_g(x, i, j, ctx);
                let slot = &mut seen[s.enc() as usize];
                if !s.is_zero() && slot.is_none() {
                    *slot = Some(x);
                }
            }
            ImageRepr::Sorted(
                ctx.elements().zip(seen).filter_map(|(s, x)| x.map(|x| (s, x))).collect(),
            )
        };
        Ok(QuadraticImage { ctx, i, j, g, repr })
    }

    pub fn exponent(&self) -> u64 {
        (1u64 << self.i) + (1u64 << self.j)
    }

    /// `gcd(2^i + 2^j - 2, q - 1)`.
    pub fn subgroup_index(&self) -> u64 {
        self.g
    }

    pub fn verdict(&self, a: Elem) -> Result<PlanarityVerdict> {
        let ctx = self.ctx;
        ctx.check(a)?;
        if a.is_zero() {
            return Err(Error::usage("monomial coefficient must be nonzero"));
        }
        let hit = match &self.repr {
            ImageRepr::ByCoset(best) => {
                let idx = (self.g - ctx.dlog(a)? % self.g) % self.g;
                best[idx as usize]
            }
            ImageRepr::Sorted(values) => {
                let mut found = None;
                for &(s, x) in values {
                    if ctx.is_kth_power(ctx.mul(a, s), self.g)? {
                        found = Some((s, x));
                        break;
                    }
                }
                found
            }
        };
        Ok(match hit {
            Some((s, x)) => PlanarityVerdict::refuted(Method::LemmaMono2, Witness::Intersection { s, x }),
            None => PlanarityVerdict::planar(Method::LemmaMono2),
        })
    }

    /// Residues `c in [0, g)` such that every `a` with `dlog(a) = c mod g` is planar.
    pub fn planar_coset_indices(&self) -> Result<Vec<u64>> {
        match &self.repr {
            ImageRepr::ByCoset(best) => Ok((0..self.g)
                .filter(|&c| best[((self.g - c) % self.g) as usize].is_none())
                .collect()),
            ImageRepr::Sorted(_) => Err(Error::capability("coset classification needs a log table")),
        }
    }
}

/// Planarity of `a x^(2^i + 2^j)` by the image/coset disjointness criterion.
pub fn is_planar_quadratic(i: u32, j: u32, a: Elem, ctx: &FieldCtx) -> Result<PlanarityVerdict> {
    QuadraticImage::new(ctx, i, j)?.verdict(a)
}

impl Witness {
    /// Re-checks a definitional collision against a function table.
    pub fn verify_table(&self, table: &[Elem], ctx: &FieldCtx) -> bool {
        match *self {
            Witness::Collision { d, c1, c2 } => {
                let f = |c: Elem| table[c.enc() as usize];
                !d.is_zero()
                    && c1 != c2
                    && f(c1 + d) + f(c1) + ctx.mul(d, c1) == f(c2 + d) + f(c2) + ctx.mul(d, c2)
            }
            _ => false,
        }
    }

    /// Re-checks the witness against `a c^t` by direct field arithmetic.
    pub fn verify_monomial(&self, spec: &MonomialSpec, ctx: &FieldCtx) -> bool {
        let t = spec.t;
        let in_coset = |s: Elem| {
            !s.is_zero()
                && ctx
                    .is_kth_power(ctx.mul(spec.a, s), coset_exponent(t, ctx.group_order()))
                    .unwrap_or(false)
        };
        let diff = |c: Elem, s: Elem| ctx.pow(c + Elem::ONE, t) + ctx.pow(c, t) + ctx.mul(c, s);
        match *self {
            Witness::Collision { .. } => self.verify_table(&spec.table(ctx), ctx),
            Witness::Difference { s, c1, c2 } => in_coset(s) && c1 != c2 && diff(c1, s) == diff(c2, s),
            Witness::Intersection { s, x } => {
                let Some((i, j)) = spec.split else { return false };
                !x.is_zero()
                    && gap_g(x, i, j, ctx) == s
                    && in_coset(s)
                    // x is then a nonzero root of the linearized difference map
                    && linearized_map(x, i, j, s, ctx).is_zero()
            }
            Witness::Kernel { s, v } => {
                let Some((i, j)) = spec.split else { return false };
                !v.is_zero()
                    && in_coset(s)
                    && linearized_map(v, i, j, s, ctx).is_zero()
                    && diff(Elem::ZERO, s) == diff(v, s)
            }
        }
    }
}
