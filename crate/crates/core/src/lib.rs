pub mod arith;
pub mod cli;
pub mod error;
pub mod herm;
pub mod linkclass;
pub mod seifert;
pub mod surgery;
pub mod matrix;

pub use error::{Error, Result};
