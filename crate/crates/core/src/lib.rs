//! Exact division of exterior forms over polynomial rings.
//!
//! Given 1-forms `ω₁, …, ω_k` over `R = ℚ[x₁, …, x_n]` (or a quotient `R/J`) and a
//! `p`-form `η` with `ω₁∧…∧ω_k∧η = 0`, the crate decides whether
//! `η = Σ ω_j∧γ_j` for some `(p−1)`-forms `γ_j`, and produces either the `γ_j`
//! or an obstruction certificate. When `p` is below the depth of the ideal
//! generated by the coefficients of `Ω = ω₁∧…∧ω_k`, a solution always exists;
//! [`saito::divide_inductive`] builds it by the classical double induction
//! over `(p, k)`, while [`saito::divide`] decides membership directly with a
//! module Gröbner lift.
//!
//! Layers, bottom-up:
//!
//! * [`polyring`]: sparse exact polynomials, monomial orders, parser/printer.
//! * [`groebner`]: Buchberger for ideals and submodules, normal forms, lifts,
//!   syzygies, ideal quotients, Krull dimension.
//! * [`exterior`]: exterior forms, wedge products, the operators `A`/`B`.
//! * [`depth`]: regular sequences, depth via dimension, grade via Koszul homology.
//! * [`saito`]: the division solvers and the exactness certifier.

pub mod depth;
pub mod error;
pub mod exterior;
pub mod groebner;
pub mod parallel;
pub mod polyring;
pub mod saito;

pub use error::{Error, Result};
pub use parallel::Parallelism;
