//! The change of variable `nu = 3 (z/2)^(2/3)` and the factor
//! `sqrt(pi/3) (nu/3)^(n/2) e^(-nu)` that separates `J_n` from `U_n(nu)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::region::validate_argument;

/// `sqrt(pi / 3)`.
pub const SQRT_PI_OVER_3: f64 = 1.023_326_707_946_488_5;

/// `nu = 3 exp((2/3) Log(z/2))` on the principal branch, so that
/// `|arg nu| <= pi/3` and `Re nu > 0` throughout the right half plane.
pub fn nu_transform(z: Complex64) -> Result<Complex64> {
    validate_argument(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroArgument);
    }
    Ok(nu_unchecked(z))
}

#[inline]
pub(crate) fn nu_unchecked(z: Complex64) -> Complex64 {
    // principal branch: Im(Log) in (-pi, pi]
    ((z * 0.5).ln() * (2.0 / 3.0)).exp() * 3.0
}

/// `(nu/3)^(n/2)` on the principal branch.
#[inline]
pub(crate) fn order_factor(n: i32, nu: Complex64) -> Complex64 {
    let ratio = nu / 3.0;
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => ratio.sqrt(),
        2 => ratio,
        -1 => ratio.sqrt().inv(),
        _ => (ratio.ln() * (f64::from(n) * 0.5)).exp(),
    }
}

/// `e^(nu) J_n`: the leading factor without the exponential.
#[inline]
pub fn assemble_scaled(n: i32, nu: Complex64, u: Complex64) -> Complex64 {
    order_factor(n, nu) * u * SQRT_PI_OVER_3
}

/// `J_n = sqrt(pi/3) (nu/3)^(n/2) e^(-nu) u`.
#[inline]
pub fn assemble(n: i32, nu: Complex64, u: Complex64) -> Complex64 {
    assemble_scaled(n, nu, u) * (-nu).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sqrt_pi_over_3_constant() {
        assert_relative_eq!(SQRT_PI_OVER_3, (PI / 3.0).sqrt(), max_relative = 1e-16);
    }

    #[test]
    fn nu_examples() {
        let nu = nu_transform(c(2.0, 0.0)).unwrap();
        assert_relative_eq!(nu.re, 3.0, max_relative = 1e-15);
        assert!(nu.im.abs() < 1e-15);

        let nu = nu_transform(c(0.0, 2.0)).unwrap();
        assert_relative_eq!(nu.re, 1.5, max_relative = 1e-15);
        assert_relative_eq!(nu.im, 1.5 * 3f64.sqrt(), max_relative = 1e-15);

        let nu = nu_transform(c(16.0, 0.0)).unwrap();
        assert_relative_eq!(nu.re, 12.0, max_relative = 1e-15);
    }

    #[test]
    fn nu_rejects_origin() {
        assert_eq!(nu_transform(c(0.0, 0.0)), Err(Error::ZeroArgument));
        assert_eq!(nu_transform(c(-1.0, 1.0)), Err(Error::LeftHalfPlane));
    }

    #[test]
    fn assemble_examples() {
        let base = SQRT_PI_OVER_3 * (-3.0f64).exp();
        let one = c(1.0, 0.0);
        assert_relative_eq!(assemble(0, c(3.0, 0.0), one).re, base, max_relative = 1e-15);
        assert_relative_eq!(assemble(2, c(3.0, 0.0), one).re, base, max_relative = 1e-15);
        let v = assemble(-1, c(12.0, 0.0), one);
        assert_relative_eq!(
            v.re,
            SQRT_PI_OVER_3 * 0.5 * (-12.0f64).exp(),
            max_relative = 1e-15
        );
        // general path agrees with the special-cased orders
        let nu = c(4.0, 2.5);
        for n in -1..=2 {
            let general = (((nu / 3.0).ln()) * (f64::from(n) * 0.5)).exp();
            let fast = order_factor(n, nu);
            assert_relative_eq!((general - fast).norm() / fast.norm(), 0.0, epsilon = 4e-16);
        }
    }

    proptest! {
        #[test]
        fn nu_stays_in_sector(r in 1e-12f64..1e6, theta in -PI / 2.0..=PI / 2.0) {
            let z = Complex64::from_polar(r, theta);
            prop_assume!(z.re >= 0.0);
            let nu = nu_transform(z).unwrap();
            prop_assert!(nu.re > 0.0);
            prop_assert!(nu.arg().abs() <= PI / 3.0 + 1e-15);
        }

        #[test]
        fn raw_is_scaled_times_exponential(
            n in -1i32..6, re in 0.01f64..300.0, im in -300.0f64..300.0,
            ure in -2.0f64..2.0, uim in -2.0f64..2.0,
        ) {
            let nu = c(re, im);
            let u = c(ure, uim);
            let scaled = assemble_scaled(n, nu, u);
            prop_assert_eq!(assemble(n, nu, u), scaled * (-nu).exp());
            let back = assemble(n, nu, u) * nu.exp();
            if back.norm() > 1e-290 && back.is_finite() {
                prop_assert!((back - scaled).norm() <= 1e-13 * scaled.norm());
            }
        }
    }
}
