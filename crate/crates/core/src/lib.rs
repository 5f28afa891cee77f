//! Slice-regular quaternionic power series and radius-certified Bohr-type
//! inequalities.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bohr;
pub mod cli;
pub mod error;
pub mod extremals;
pub mod harness;
pub mod numeric;
pub mod quaternion;
pub mod radii;
pub mod series;
pub mod theorem;

pub use error::{Error, Result};
pub use quaternion::Quaternion;
pub use series::QSeries;
