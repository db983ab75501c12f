//! Terminal densities of hard-core test pair-correlation functions.
//!
//! A test radial distribution function `g2(r)` is admissible at number density
//! `rho` when both `g2` and its structure factor `S(k)` are nonnegative. The
//! largest such density is the *terminal density*. This crate evaluates the
//! structure factors of three hard-core test functions (a unit step, a step
//! plus a contact delta shell, and the same with a gap between the two),
//! maximizes their terminal densities, checks the number-variance condition
//! of Yamada, implements the large-dimension asymptotics of the optimum, and
//! simulates the exactly solvable ghost random sequential addition process.

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod matern;
pub mod models;
pub mod optimizer;
pub mod output;
pub mod quad;
pub mod specialfn;
pub mod variance;

pub use error::{Error, Result};
