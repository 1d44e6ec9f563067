//! Exact constants and finite-group verification tools for exponential
//! character bounds of finite reductive groups.

#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod chartab;
pub mod cli;
pub mod coset;
pub mod error;
pub mod ff;
pub mod gl2;
pub mod group;
pub mod gset;
pub mod perm;
pub mod radical;
pub mod roots;
pub mod semidirect;
pub mod unipotent;

pub use error::{Error, Result};
