//! Small-|z| expansion `2 J_n(z) = sum_k (a_k ln z + b_k) z^k` for `n = -1..=2`.
//!
//! The order 1 coefficients come from a closed three-step recurrence; orders
//! 0 and -1 follow by term-by-term differentiation (`J_n' = -J_{n-1}`) and
//! order 2 by term-by-term integration from `J_2(0) = sqrt(pi)/4`.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Number of `b_k` terms kept in double precision.
pub const SERIES_TERMS: usize = 20;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512;
const SQRT_PI: f64 = 1.772_453_850_905_516_027_298_167;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoeffs {
    order: i32,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl SeriesCoeffs {
    pub fn order(&self) -> i32 {
        self.order
    }

    /// Coefficients of `z^k ln z`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Coefficients of `z^k`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Shared table with [`SERIES_TERMS`] terms for `n = -1..=2`.
    pub fn standard(n: i32) -> Result<&'static SeriesCoeffs> {
        static TABLES: OnceLock<Vec<SeriesCoeffs>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            (-1..=2)
                .map(|n| gen_series_coeffs(n, SERIES_TERMS).expect("supported order"))
                .collect()
        });
        match n {
            -1..=2 => Ok(&tables[(n + 1) as usize]),
            _ => Err(Error::UnsupportedOrder(n)),
        }
    }
}

fn order_one(len: usize) -> (Vec<f64>, Vec<f64>) {
    let len = len.max(3);
    let mut a = vec![0.0; len];
    let mut b = vec![0.0; len];
    a[2] = -1.0;
    b[0] = 1.0;
    b[1] = -SQRT_PI;
    b[2] = 1.5 * (1.0 - EULER_GAMMA);
    for k in 3..len {
        let kf = k as f64;
        let denom = kf * (kf - 1.0) * (kf - 2.0);
        a[k] = -2.0 * a[k - 2] / denom;
        b[k] = -(2.0 * b[k - 2] + (3.0 * kf * kf - 6.0 * kf + 2.0) * a[k]) / denom;
    }
    (a, b)
}

/// One differentiation step: coefficients of order `n` from order `n + 1`.
fn differentiate(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let len = a.len() - 1;
    let mut da = Vec::with_capacity(len);
    let mut db = Vec::with_capacity(len);
    for k in 0..len {
        let kp = (k + 1) as f64;
        da.push(-kp * a[k + 1]);
        db.push(-kp * b[k + 1] - a[k + 1]);
    }
    (da, db)
}

pub fn gen_series_coeffs(n: i32, terms: usize) -> Result<SeriesCoeffs> {
    if terms < 3 {
        return Err(Error::InvalidParameter(format!(
            "series needs at least 3 terms, got {terms}"
        )));
    }
    let (a, b) = match n {
        1 => order_one(terms),
        0 => {
            let (a1, b1) = order_one(terms + 1);
            differentiate(&a1, &b1)
        }
        -1 => {
            let (a1, b1) = order_one(terms + 2);
            let (a0, b0) = differentiate(&a1, &b1);
            differentiate(&a0, &b0)
        }
        2 => {
            let (a1, b1) = order_one(terms);
            let mut a = vec![0.0; terms];
            let mut b = vec![0.0; terms];
            b[0] = 0.5 * SQRT_PI;
            for k in 1..terms {
                let kf = k as f64;
                a[k] = -a1[k - 1] / kf;
                b[k] = -b1[k - 1] / kf + a1[k - 1] / (kf * kf);
            }
            (a, b)
        }
        _ => return Err(Error::UnsupportedOrder(n)),
    };
    Ok(SeriesCoeffs { order: n, a, b })
}

#[inline]
fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `J_n(z)` from the truncated expansion; `z = 0` is allowed for `n >= 0`.
pub fn eval_series(z: Complex64, coeffs: &SeriesCoeffs) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        if coeffs.order < 0 {
            return Err(Error::SingularAtOrigin(coeffs.order));
        }
        return Ok(Complex64::new(coeffs.b[0] * 0.5, 0.0));
    }
    let pa = horner(&coeffs.a, z);
    let pb = horner(&coeffs.b, z);
    Ok((pa * z.ln() + pb) * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn factorial(k: u32) -> f64 {
        (1..=k).map(f64::from).product()
    }

    #[test]
    fn order_one_seeds() {
        let s = gen_series_coeffs(1, 20).unwrap();
        assert_eq!(s.a()[0], 0.0);
        assert_eq!(s.a()[1], 0.0);
        assert_eq!(s.a()[2], -1.0);
        assert_eq!(s.b()[0], 1.0);
        assert_relative_eq!(s.b()[1], -1.772_453_850_905_516, max_relative = 1e-16);
        assert_relative_eq!(s.a()[4], 1.0 / 12.0, max_relative = 1e-15);
    }

    #[test]
    fn order_one_log_coefficients_match_closed_form() {
        let s = gen_series_coeffs(1, 40).unwrap();
        for k in 1..20u32 {
            assert_eq!(s.a()[(2 * k - 1) as usize], 0.0);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let closed = sign * 2.0 / (factorial(2 * k) * factorial(k - 1));
            assert_relative_eq!(s.a()[(2 * k) as usize], closed, max_relative = 1e-14);
        }
    }

    #[test]
    fn odd_b_coefficients_match_closed_form() {
        // b_{2k+1} = (-2)^k b_1 / ((2k+1)! (2k-1)!!)
        let s = gen_series_coeffs(1, 40).unwrap();
        let mut double_fact = 1.0;
        for k in 1..19u32 {
            double_fact *= f64::from(2 * k - 1);
            let closed = (-2.0f64).powi(k as i32) * s.b()[1] / (factorial(2 * k + 1) * double_fact);
            assert_relative_eq!(s.b()[(2 * k + 1) as usize], closed, max_relative = 1e-13);
        }
    }

    #[test]
    fn values_at_origin() {
        let j2 = eval_series(Complex64::new(0.0, 0.0), SeriesCoeffs::standard(2).unwrap()).unwrap();
        assert_relative_eq!(j2.re, 0.443_113_462_726_379_006_82, max_relative = 1e-16);
        let j0 = eval_series(Complex64::new(0.0, 0.0), SeriesCoeffs::standard(0).unwrap()).unwrap();
        assert_relative_eq!(j0.re, 0.886_226_925_452_758_013_65, max_relative = 1e-16);
        let j1 = eval_series(Complex64::new(0.0, 0.0), SeriesCoeffs::standard(1).unwrap()).unwrap();
        assert_eq!(j1.re, 0.5);
        let err = eval_series(
            Complex64::new(0.0, 0.0),
            SeriesCoeffs::standard(-1).unwrap(),
        );
        assert_eq!(err, Err(Error::SingularAtOrigin(-1)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(gen_series_coeffs(3, 20), Err(Error::UnsupportedOrder(3)));
        assert!(gen_series_coeffs(1, 2).is_err());
        assert!(SeriesCoeffs::standard(-2).is_err());
    }

    #[test]
    fn coefficients_decay() {
        for n in -1..=2 {
            let s = gen_series_coeffs(n, 40).unwrap();
            let tail: Vec<f64> = s.b()[12..].iter().map(|b| b.abs()).collect();
            assert!(tail.windows(2).all(|w| w[1] < w[0]), "order {n}: {tail:?}");
        }
    }

    #[test]
    fn truncation_is_sufficient() {
        for n in -1..=2 {
            let short = SeriesCoeffs::standard(n).unwrap();
            let long = gen_series_coeffs(n, SERIES_TERMS + 10).unwrap();
            for i in 0..64 {
                let theta = -PI / 2.0 + PI * f64::from(i) / 63.0;
                for r in [0.25, 0.7, 0.999_999] {
                    let z = Complex64::from_polar(r, theta);
                    let a = eval_series(z, short).unwrap();
                    let b = eval_series(z, &long).unwrap();
                    let ulp = f64::EPSILON * b.norm();
                    assert!((a - b).norm() <= 2.0 * ulp, "n={n} z={z}: {a} vs {b}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn derivative_relation(r in 0.1f64..0.9, theta in -1.5f64..1.5, n in 0i32..=2) {
            let z = Complex64::from_polar(r, theta);
            let h = 1e-6;
            let f = SeriesCoeffs::standard(n).unwrap();
            let g = SeriesCoeffs::standard(n - 1).unwrap();
            let d = (eval_series(z + h, f).unwrap() - eval_series(z - h, f).unwrap()) / (2.0 * h);
            let expected = -eval_series(z, g).unwrap();
            prop_assert!((d - expected).norm() <= 1e-8 * expected.norm());
        }

        #[test]
        fn conjugate_symmetry(r in 1e-6f64..1.0, theta in 0.0f64..std::f64::consts::FRAC_PI_2, n in -1i32..=2) {
            let z = Complex64::from_polar(r, theta);
            let f = SeriesCoeffs::standard(n).unwrap();
            let up = eval_series(z, f).unwrap();
            let down = eval_series(z.conj(), f).unwrap();
            prop_assert!((up.conj() - down).norm() <= 2.0 * f64::EPSILON * up.norm());
        }
    }
}
