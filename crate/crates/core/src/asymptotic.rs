//! Large-|z| expansion `U_n(nu) ~ sum_k c_k nu^(-k)`.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::region::{self, ASYMPTOTIC_RADIUS};
use crate::transform::{assemble, assemble_scaled, nu_unchecked};

/// Number of asymptotic terms kept.
pub const ASYMPTOTIC_TERMS: usize = 18;

#[derive(Debug, Clone, PartialEq)]
pub struct AsymCoeffs {
    order: i32,
    c: Vec<f64>,
}

impl AsymCoeffs {
    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn standard(n: i32) -> Result<&'static AsymCoeffs> {
        static TABLES: OnceLock<Vec<AsymCoeffs>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            (-1..=2)
                .map(|n| gen_asym_coeffs(n, ASYMPTOTIC_TERMS).expect("valid order"))
                .collect()
        });
        match n {
            -1..=2 => Ok(&tables[(n + 1) as usize]),
            _ => Err(Error::UnsupportedOrder(n)),
        }
    }
}

/// `c_0 = 1`, `c_1 = (3n^2 + 3n - 1)/12`, then
/// `12(k+2) c_{k+2} = -(12k^2 + 36k - 3n^2 - 3n + 25) c_{k+1}
///                    + (n - 2k)(2k + 3 - n)(2k + 3 + 2n) c_k / 2`.
pub fn gen_asym_coeffs(n: i32, terms: usize) -> Result<AsymCoeffs> {
    if n < -1 {
        return Err(Error::UnsupportedOrder(n));
    }
    if terms < 2 {
        return Err(Error::InvalidParameter(format!(
            "asymptotic expansion needs at least 2 terms, got {terms}"
        )));
    }
    let nf = f64::from(n);
    let mut c = Vec::with_capacity(terms);
    c.push(1.0);
    c.push((3.0 * nf * nf + 3.0 * nf - 1.0) / 12.0);
    for k in 0..terms - 2 {
        let kf = k as f64;
        let lin = 12.0 * kf * kf + 36.0 * kf - 3.0 * nf * nf - 3.0 * nf + 25.0;
        let cubic = 0.5 * (nf - 2.0 * kf) * (2.0 * kf + 3.0 - nf) * (2.0 * kf + 3.0 + 2.0 * nf);
        let next = (-lin * c[k + 1] + cubic * c[k]) / (12.0 * (kf + 2.0));
        c.push(next);
    }
    Ok(AsymCoeffs { order: n, c })
}

/// `U_n(nu)` by Horner's rule in `1/nu`.
#[inline]
pub fn asymptotic_u(nu: Complex64, coeffs: &AsymCoeffs) -> Complex64 {
    let w = nu.inv();
    coeffs
        .c
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
}

fn check(z: Complex64) -> Result<(Complex64, bool)> {
    region::validate_argument(z)?;
    let modulus = z.norm();
    if modulus < ASYMPTOTIC_RADIUS {
        return Err(Error::RegionMismatch {
            region: region::Region::Asymptotic,
            modulus,
        });
    }
    Ok(region::conjugate_reduce(z))
}

/// `J_n(z)` for `|z| >= 120`. Underflows to zero, never to NaN, for very large |z|.
pub fn eval_asymptotic(z: Complex64, coeffs: &AsymCoeffs) -> Result<Complex64> {
    let (w, flip) = check(z)?;
    let nu = nu_unchecked(w);
    let v = assemble(coeffs.order, nu, asymptotic_u(nu, coeffs));
    Ok(if flip { v.conj() } else { v })
}

/// `e^nu J_n(z)` for `|z| >= 120`.
pub fn eval_asymptotic_scaled(z: Complex64, coeffs: &AsymCoeffs) -> Result<Complex64> {
    let (w, flip) = check(z)?;
    let nu = nu_unchecked(w);
    let v = assemble_scaled(coeffs.order, nu, asymptotic_u(nu, coeffs));
    Ok(if flip { v.conj() } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::SQRT_PI_OVER_3;
    use approx::assert_relative_eq;

    #[test]
    fn leading_coefficients() {
        assert_relative_eq!(gen_asym_coeffs(0, 4).unwrap().c()[1], -1.0 / 12.0);
        assert_relative_eq!(gen_asym_coeffs(1, 4).unwrap().c()[1], 5.0 / 12.0);
        assert_relative_eq!(
            gen_asym_coeffs(2, 4).unwrap().c()[2],
            -35.0 / 288.0,
            max_relative = 1e-15
        );
        for n in -1..=5 {
            let c = gen_asym_coeffs(n, 2).unwrap();
            assert_eq!(c.c()[0], 1.0);
            let nf = f64::from(n);
            assert_eq!(c.c()[1], (3.0 * nf * nf + 3.0 * nf - 1.0) / 12.0);
        }
    }

    #[test]
    fn coefficients_diverge() {
        for n in -1..=2 {
            let c = gen_asym_coeffs(n, 60).unwrap();
            // magnitudes oscillate, so compare block maxima
            let maxima: Vec<f64> = c
                .c()
                .chunks(8)
                .map(|b| b.iter().fold(0.0f64, |m, x| m.max(x.abs())))
                .collect();
            assert!(
                maxima[1..].windows(2).all(|w| w[1] > 100.0 * w[0]),
                "order {n}: {maxima:?}"
            );
            assert!(maxima.last().unwrap() > &1e30);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(gen_asym_coeffs(-2, 18).is_err());
        assert!(gen_asym_coeffs(0, 1).is_err());
        let c = AsymCoeffs::standard(0).unwrap();
        assert!(matches!(
            eval_asymptotic(Complex64::new(100.0, 0.0), c),
            Err(Error::RegionMismatch { .. })
        ));
    }

    #[test]
    fn leading_term_dominates_far_out() {
        let c = AsymCoeffs::standard(0).unwrap();
        let mut prev = f64::INFINITY;
        for r in [1e3, 1e5, 1e8, 1e12] {
            let s = eval_asymptotic_scaled(Complex64::new(r, 0.0), c).unwrap();
            let dev = (s.re / SQRT_PI_OVER_3 - 1.0).abs();
            assert!(dev < prev);
            prev = dev;
        }
        assert!(prev < 1e-7);
    }

    #[test]
    fn raw_form_underflows_gracefully() {
        let c = AsymCoeffs::standard(2).unwrap();
        let v = eval_asymptotic(Complex64::new(1e7, 1e6), c).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
        assert!(eval_asymptotic_scaled(Complex64::new(1e7, 1e6), c)
            .unwrap()
            .is_finite());
    }
}
