pub mod algebra;
pub mod brauer;
pub mod commuting;
pub mod error;
pub mod field;
pub mod fusion;
pub mod perm;
pub mod topo;

pub use error::{Error, Result};
