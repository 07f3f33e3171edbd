pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod flags;
pub mod liealg;
pub mod limits;
pub mod orbits;
pub mod realforms;
pub mod recovery;

pub use error::{Error, Result};
