pub mod arith;
pub mod bounds;
pub mod error;
pub mod field;
pub mod input;
pub mod pipeline;
pub mod report;
pub(crate) mod ser;
pub mod tower;

pub use error::{Error, Result};
