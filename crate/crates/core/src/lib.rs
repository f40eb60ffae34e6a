pub mod analysis;
pub mod cli;
pub mod error;
pub mod generators;
pub mod graphflow;
pub mod multivector;
pub mod polyring;
pub mod sampling;

pub use error::{Error, Result};
