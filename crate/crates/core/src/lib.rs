pub mod arith;
pub mod cli;
pub mod curves;
pub mod error;
pub mod jacobian;
pub mod json;
pub mod local;
pub mod period;
pub mod sieve;

pub use error::{Error, Place, Result};
