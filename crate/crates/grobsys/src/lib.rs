//! Exact discussion of parametric polynomial systems over the rationals.
//!
//! Given an ideal in `k[ā][x̄]` (unknowns `x̄`, parameters `ā`) the crate
//! builds the binary discussion tree that classifies every rational
//! specialization of the parameters by the shape of the reduced Gröbner
//! basis it induces, extracts the discriminant ideal separating the generic
//! case from the special ones, rewrites and compacts the tree, and checks
//! or constructs comprehensive Gröbner bases.
//!
//! Everything runs over arbitrary-precision rationals; there is no floating
//! point anywhere.
//!
//! The `examples/` directory walks through each capability; the `grobsys`
//! binary exposes the same operations on `.sys` system files.

pub mod order;
pub mod poly;
pub mod parse;
pub mod gcd;
pub mod ratfun;
pub mod ideal;

pub use order::OrderKind;
pub use poly::{Context, Monomial, Poly, Rat};
pub mod spec;
pub mod tree;
pub mod cgb;
