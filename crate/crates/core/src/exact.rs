//! Exact comparisons mixing integer counts with real-valued parameters.
//!
//! Parameters arrive as `f64`, i.e. as exact dyadic rationals. Converting
//! them with `BigRational::from_float` is lossless, so every comparison in
//! this module is a statement about the true rational values — no epsilon.

use num::bigint::BigInt;
use num::rational::BigRational;

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("parameter must be finite")
}

pub fn rat_u64(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `count ≤ (1 - eps) * m`, exactly.
pub fn le_one_minus_eps_times(count: u64, eps: f64, m: u64) -> bool {
    rat_u64(count) <= (rat(1.0) - rat(eps)) * rat_u64(m)
}

/// `count > (1 + eps) * n`, exactly.
pub fn gt_one_plus_eps_times(count: u64, eps: f64, n: f64) -> bool {
    rat_u64(count) > (rat(1.0) + rat(eps)) * rat(n)
}
