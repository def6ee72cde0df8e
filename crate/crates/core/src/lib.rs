pub mod certify;
pub mod cli;
pub mod error;
pub mod ideals;
pub mod indexcalc;
pub mod matgroup;
mod numtheory;
pub mod quadring;
pub mod resring;
pub mod sweep;

pub use error::{Error, Result};
