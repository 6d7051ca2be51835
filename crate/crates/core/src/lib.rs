//! Exact computations for Weyl modules `Ind(M)_κ` over untwisted affine
//! Kac–Moody algebras at non-critical level.

pub mod affine_numerics;
pub mod error;
pub mod explicit_module;
pub mod finite_rep;
pub mod graded_sym;
pub mod lie_realization;
pub mod linalg;
pub mod rational;
pub mod root_system;

pub use error::{Error, Result};
pub use rational::{ComplexRational, Rational};
