//! Finite-field arithmetic, linearized polynomials and rank-metric codes
//! built from twisted Gabidulin constructions, with tools for computing
//! their nuclei and automorphism groups.

pub mod autgroup;
pub mod cli;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod linpoly;
pub mod nuclei;
pub mod rankcode;

pub use error::{Error, Result};
