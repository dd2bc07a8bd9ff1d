pub mod algebra;
pub mod carlitz;
pub mod error;
pub mod exec;
pub mod expseries;
pub mod format;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
