//! Numerics for q-series and the asymptotics of q-Laguerre polynomials
//! under exponential scaling of the argument.

pub mod asymptotics;
pub mod diophantine;
pub mod error;
pub mod numerics;
pub mod qlaguerre;
pub mod qseries;

pub use error::{Error, Result};
pub use numerics::LogPolarComplex;
