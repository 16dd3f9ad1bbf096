// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geom;
pub mod integrate;
pub mod particle;
pub mod pmp;
pub mod shoot;

pub use error::{Error, Result};
