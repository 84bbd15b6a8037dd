//! Exact algebra for trigonal plane curve germs `y³ − P(x)·y + Q(x)`.
//!
//! The crate is `no_std` (with `alloc`) and covers:
//!
//! * [`poly`]: exact rationals, sparse polynomials in `x` and `(x, t)`,
//!   orders, resultants and a small text grammar for polynomial input.
//! * [`invariants`]: the Milnor number and the σ-invariant of a germ,
//!   plus Arnol'd normal forms brought to depressed-cubic shape.
//! * [`newton`]: Newton polygons, face polynomials and Puiseux branches
//!   whose conjugate leading coefficients live in `ℚ[c]/(φ)`.
//! * [`pipeline`]: discriminant curves of one-parameter unfoldings, their
//!   critical-value branches and the reducedness certificate.
//! * [`presenter`]: the Brieskorn–Pham Dynkin diagram, the associated
//!   group presentation and finite-quotient oracles.

#![no_std]
#![warn(rust_2018_idioms, unused_qualifications)]

extern crate alloc;

pub mod invariants;
pub mod newton;
pub mod pipeline;
pub mod poly;
pub mod presenter;

pub use poly::{BiPoly, Order, Rat, UniPoly, Var};
