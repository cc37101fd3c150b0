pub mod catalog;
pub mod cli;
pub mod document;
pub mod enumerable;
pub mod error;
pub mod lambda;
pub mod properties;
pub mod relation;
pub mod testkit;
pub mod theorems;
pub mod wellfounded;

pub use error::{Error, Precondition, Result};
