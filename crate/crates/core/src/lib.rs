//! Numerical laboratory for Gauss-Lucas type containment results.
//!
//! The crate provides a sparse multivariate polynomial engine and expression
//! parser, a simultaneous-iteration root finder, planar convex hulls and exact
//! rectilinear (separately convex) hulls, θ-stability tests including a seeded
//! Monte Carlo falsifier, and verification harnesses that replay the section
//! argument behind the multivariate Gauss-Lucas theorem on concrete instances.

mod error;

pub mod exec;
pub mod geometry;
pub mod harness;
pub mod matching;
pub mod parser;
pub mod poly;
pub mod roots;
pub mod stability;

pub use error::{GeometryError, HarnessError, PolyError, RootError};
pub use exec::Exec;
pub use num_complex::Complex64;
pub use parser::{format_poly, parse_poly, ParseError};
pub use poly::{MultiPoly, UniPoly};
