#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bloch;
pub mod cli;
pub mod error;
pub mod expr;
pub mod optimize;
pub mod propagation;
pub mod quadrature;
pub mod report;
pub mod rotations;

pub use error::{Error, Result};
