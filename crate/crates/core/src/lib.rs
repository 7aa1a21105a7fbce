//! Weighted projective lines, graded quivers with potential and
//! 3-preprojective algebras.

pub mod canon;
pub mod cli;
pub mod error;
pub mod lgroup;
pub mod linalg;
pub mod pathalg;
pub mod qp;
pub mod rational;
pub mod survey;
pub mod threeprep;
pub mod wpl;

pub use error::{Error, Result};
