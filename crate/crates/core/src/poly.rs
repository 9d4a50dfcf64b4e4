//! Dense univariate polynomials over a [`FieldCtx`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2r::{Elem, FieldCtx};

/// Coefficients in ascending degree order, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `X`.
    pub fn x() -> Poly {
        Poly::from_coeffs(vec![Elem::ZERO, Elem::ONE])
    }

    /// `c * X^n`.
    pub fn monomial(c: Elem, n: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        self.coeffs.iter().try_for_each(|&c| ctx.check(c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Result<Poly> {
        self.check_ctx(ctx)?;
        other.check_ctx(ctx)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += ctx.mul(a, b);
            }
        }
        Ok(Poly::from_coeffs(out))
    }

    pub fn scale(&self, c: Elem, ctx: &FieldCtx) -> Result<Poly> {
        self.check_ctx(ctx)?;
        ctx.check(c)?;
        Ok(Poly::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem, ctx: &FieldCtx) -> Result<Elem> {
        self.check_ctx(ctx)?;
        ctx.check(x)?;
        Ok(self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| ctx.mul(acc, x) + c))
    }

    /// `f(X^3)`.
    pub fn compose_xcube(&self) -> Poly {
        let mut coeffs = vec![Elem::ZERO; self.coeffs.len().saturating_sub(1) * 3 + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[3 * i] = c;
        }
        Poly::from_coeffs(coeffs)
    }

    /// `prod (X + root)`.
    pub fn from_roots(roots: &[Elem], ctx: &FieldCtx) -> Result<Poly> {
        roots.iter().try_fold(Poly::one(), |acc, &root| {
            acc.mul(&Poly::from_coeffs(vec![root, Elem::ONE]), ctx)
        })
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>, ctx: &FieldCtx) -> Result<Poly> {
        factors.into_iter().try_fold(Poly::one(), |acc, f| acc.mul(f, ctx))
    }

    /// Minimal polynomial of `x` over the subfield of order `2^m`, as the
    /// product over the distinct conjugates `x^(2^(m*i))`.
    pub fn min_poly_over_subfield(x: Elem, m: u32, ctx: &FieldCtx) -> Result<Poly> {
        ctx.check(x)?;
        if m == 0 || !ctx.degree().is_multiple_of(m) {
            return Err(Error::usage(format!("{m} does not divide r = {}", ctx.degree())));
        }
        let mut conjugates = vec![x];
        let mut y = ctx.frobenius(x, m);
        while y != x {
            conjugates.push(y);
            y = ctx.frobenius(y, m);
        }
        Poly::from_roots(&conjugates, ctx)
    }
}

/// `X^3 + (b^2+b) X^2 + X + 1`, the cubic minimal polynomial of `UV` in the
/// Fermat-curve argument.
pub fn cubic_g(b: Elem, ctx: &FieldCtx) -> Poly {
    let b2b = ctx.square(b) + b;
    Poly::from_coeffs(vec![Elem::ONE, Elem::ONE, b2b, Elem::ONE])
}

/// `x^(2^i - 1) + x^(2^j - 1)`, whose image on `F_q^*` decides planarity of
/// `a x^(2^i + 2^j)`.
pub fn gap_g(x: Elem, i: u32, j: u32, ctx: &FieldCtx) -> Elem {
    ctx.pow(x, (1u64 << i) - 1) + ctx.pow(x, (1u64 << j) - 1)
}
