//! Upward recurrence `2 J_m = (m - 1) J_{m-2} + z J_{m-3}` for orders above 2.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evaluator::{standard, Evaluator};
use crate::region::{conjugate_reduce, validate_argument};
use crate::transform::nu_unchecked;

/// Largest order the recurrence is documented to support.
pub const MAX_ORDER: i32 = 200;

/// Above this `Re nu` the unscaled seeds may lose precision to gradual
/// underflow, so the recurrence is run on scaled seeds instead.
const RAW_LIMIT: f64 = 600.0;

/// `J_n(z)` for `n >= 3`, seeded with the direct `n = 0, 1, 2` evaluators.
pub fn eval_forward(n: i32, z: Complex64) -> Result<Complex64> {
    eval_forward_with(standard(), n, z, false)
}

/// `e^nu J_n(z)` for `n >= 3`.
pub fn eval_forward_scaled(n: i32, z: Complex64) -> Result<Complex64> {
    eval_forward_with(standard(), n, z, true)
}

/// Runs the recurrence from three consecutive seeds `J_{m-3}, J_{m-2}, J_{m-1}`
/// (any common scale factor) up to order `n`.
pub fn forward_from(seeds: [Complex64; 3], first: i32, n: i32, z: Complex64) -> Complex64 {
    let [mut a, mut b, mut c] = seeds;
    // a = J_{m-3}, b = J_{m-2}, c = J_{m-1}
    for m in first..=n {
        let next = (b * f64::from(m - 1) + z * a) * 0.5;
        a = b;
        b = c;
        c = next;
    }
    c
}

pub(crate) fn eval_forward_with(
    evaluator: &Evaluator,
    n: i32,
    z: Complex64,
    scaled: bool,
) -> Result<Complex64> {
    if n < 3 {
        return Err(Error::UnsupportedOrder(n));
    }
    validate_argument(z)?;
    let (w, flip) = conjugate_reduce(z);
    let zero = Complex64::new(0.0, 0.0);
    let nu = if w == zero { zero } else { nu_unchecked(w) };
    let run_scaled = scaled || nu.re > RAW_LIMIT;

    let seed = |k: i32| {
        if run_scaled {
            evaluator.eval_scaled(k, w)
        } else {
            evaluator.eval(k, w)
        }
    };
    let seeds = [seed(0)?, seed(1)?, seed(2)?];
    let mut v = forward_from(seeds, 3, n, w);
    if run_scaled && !scaled {
        v *= (-nu).exp();
    }
    Ok(if flip { v.conj() } else { v })
}
