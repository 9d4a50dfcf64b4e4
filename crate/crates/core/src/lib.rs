//! Planar monomials over GF(2^r).
//!
//! Field arithmetic ([`gf2r`]), dense polynomials ([`poly`]), planarity
//! deciders ([`planarity`]), exhaustive verifiers for the structural results
//! about planar monomials ([`theorems`]), and resumable searches ([`search`]).
//! The `planar2` binary is a thin front end over [`cli`].

pub mod arith;
pub mod cli;
pub mod error;
pub mod gf2r;
pub mod planarity;
pub mod poly;
pub mod report;
pub mod search;
pub mod theorems;

pub use error::{Error, Result};
pub use gf2r::{Elem, FieldConfig, FieldCtx, FieldDescriptor};
pub use planarity::{
    is_planar_monomial, is_planar_quadratic, is_planar_table, linearized_bijective, MonomialSpec,
    PlanarityVerdict, Witness,
};
pub use poly::Poly;

/// Runs `f` on a rayon pool with `jobs` workers (0 = available parallelism).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(f)
}
