#![no_std]
#![allow(clippy::needless_range_loop)]
extern crate alloc;

pub mod arith;
pub mod classify;
pub mod error;
pub mod intmat;
pub mod mcg;
pub mod metric;
pub mod scalar;
pub mod spin;
pub mod surgery;

pub use error::{Error, Result};
pub use scalar::{Cyclotomic, QmodZ, Rational};
