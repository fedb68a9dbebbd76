pub mod arith;
pub mod cli;
pub mod covers;
pub mod descriptors;
pub mod error;
pub mod groups;
pub mod lattices;
pub mod matrix;
pub mod schema;
pub mod witnesses;

pub use error::{Error, Result};
