//! AAA-least squares: rational approximation with poles chosen by AAA and
//! coefficients by linear least squares, applied to Laplace problems,
//! conformal maps, Hilbert transforms and approximation on an interval.

pub mod aaa;
pub mod cli;
pub mod arnoldi;
pub mod barycentric;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod laplace;
pub mod linalg;
pub mod report;
pub mod scenarios;
pub mod special;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
