//! Exact scalars: rationals, Q/Z and cyclotomic fields.

mod cyclotomic;
mod poly;
mod qmodz;

pub use cyclotomic::{Cyclotomic, DEFAULT_ORDER_CAP};
pub use qmodz::{format_rational, int, is_integral, parse_rational, rational, signum, QmodZ, Rational};
