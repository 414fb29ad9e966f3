//! Symbolic computation for C*-algebras of finite labelled spaces.

pub mod cli;
pub mod diagonal;
pub mod error;
pub mod filters;
pub mod fixtures;
pub mod labelled;
pub mod random;
pub mod repr;
pub mod semigroup;
pub mod surgery;

pub use error::Error;
