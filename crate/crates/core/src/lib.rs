pub mod error;
pub mod classifier;
pub mod counting;
pub mod exact;
pub mod ff;
pub mod group;
pub mod padic;

pub use error::{Error, InputError, Result};
