//! Poisson homology and cohomology of polynomial Poisson algebras over the
//! rationals, with coefficients in free Poisson modules.
//!
//! The pieces build on each other: [`poly`] (exact polynomials),
//! [`exterior`] (forms, multivectors, contractions), [`structure`]
//! (brackets and the modular derivation), [`module`] (Poisson modules and
//! twists), [`complexes`] (boundary and coboundary), [`duality`] (the
//! maps between cochains and chains), and [`homology`] (exact ranks and
//! Betti tables).

#![allow(clippy::needless_range_loop, clippy::result_large_err)]

pub mod cli;
pub mod complexes;
pub mod duality;
pub mod exterior;
pub mod homology;
pub mod input;
pub mod module;
pub mod poly;
pub mod report;
pub mod structure;

pub use complexes::{chain_boundary, cochain_differential, ChainElement};
pub use duality::{dag, dag_inverse, ddag, verify_duality_square};
pub use exterior::{DiffForm, Multiderivation, Multivector, Wedge};
pub use homology::{BettiTable, Mode};
pub use module::{ModuleElement, PoissonModule};
pub use poly::{Monomial, Polynomial, Rational, Ring};
pub use structure::{Derivation, PoissonStructure};
