//! Exact symbolic engine for finitely presented graded noncommutative
//! algebras.
//!
//! The crate is organised around five layers:
//!
//! - [`coeff`]: the coefficient field — multivariate rational functions over
//!   the rationals in a declared set of parameter symbols, with canonical
//!   forms and decidable zero testing.
//! - [`ncpoly`]: free noncommutative polynomials over that field, graded by
//!   ghost number, together with finitely generated presentations.
//! - [`rewrite`]: normal ordering — oriented rewrite rules, normal forms,
//!   and local confluence via exhaustive critical-pair analysis.
//! - [`ybtensor`]: exact tensor checks on `V ⊗ V` — Yang–Baxter and twist
//!   equations, structure-constant axioms, and the ghost-vacuum tensors.
//! - [`brst`]: charge constructions, nilpotency verification, ghost and
//!   generator basis changes, Fock-space state conditions, and an
//!   independent operator-representation oracle.
//!
//! Everything is exact: coefficients are rational functions, comparisons are
//! decidable, and every check either passes bit-exactly or returns the
//! offending residual.
//!
//! The crate is `no_std` (with `alloc`); IO, parsing and the command line
//! live in the companion `brst-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod brst;
pub mod coeff;
pub mod instances;
pub mod matrix;
pub mod ncpoly;
pub mod rewrite;
pub mod ybtensor;
