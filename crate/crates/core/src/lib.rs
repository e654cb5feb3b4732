pub mod cli;
pub mod energetics;
pub mod error;
pub mod london;
pub mod quadrature;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
