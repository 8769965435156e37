//! Complex numbers on MPFR floats with an explicit decimal precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use abramowitz::Complex64;
use rug::float::Constant;
use rug::ops::PowAssign;
use rug::{Assign, Float};

/// Bits needed to carry `digits` decimal digits, plus a few guard bits.
pub fn bits_for(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

/// `10^(-digits)` at precision `prec`.
pub fn ten_pow_neg(digits: i32, prec: u32) -> Float {
    let mut t = Float::with_val(prec, 10);
    t.pow_assign(-digits);
    t
}

/// `(sin x, cos x)` at precision `prec`.
pub fn sin_cos(x: &Float, prec: u32) -> (Float, Float) {
    let (mut s, mut c) = (Float::new(prec), Float::new(prec));
    (&mut s, &mut c).assign(x.sin_cos_ref());
    (s, c)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
    digits: u32,
}

impl BigComplex {
    pub fn zero(digits: u32) -> Self {
        let p = bits_for(digits);
        BigComplex {
            re: Float::new(p),
            im: Float::new(p),
            digits,
        }
    }

    pub fn from_c64(z: Complex64, digits: u32) -> Self {
        let p = bits_for(digits);
        BigComplex {
            re: Float::with_val(p, z.re),
            im: Float::with_val(p, z.im),
            digits,
        }
    }

    /// Rounds both parts to `digits`.
    pub fn from_floats(re: Float, im: Float, digits: u32) -> Self {
        let mut v = BigComplex { re, im, digits };
        v.set_digits(digits);
        v
    }

    pub fn real(x: Float, digits: u32) -> Self {
        let im = Float::new(x.prec());
        Self::from_floats(x, im, digits)
    }

    /// Parses decimal strings for both parts.
    pub fn parse(re: &str, im: &str, digits: u32) -> Option<Self> {
        let p = bits_for(digits);
        let re = Float::with_val(p, Float::parse(re.trim()).ok()?);
        let im = Float::with_val(p, Float::parse(im.trim()).ok()?);
        Some(BigComplex { re, im, digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn set_digits(&mut self, digits: u32) {
        let p = bits_for(digits);
        self.re.set_prec(p);
        self.im.set_prec(p);
        self.digits = digits;
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.set_digits(digits);
        self
    }

    fn like(&self, re: Float, im: Float) -> Self {
        BigComplex {
            re,
            im,
            digits: self.digits,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        self.like(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        self.like(
            Float::with_val(p, &self.re * s),
            Float::with_val(p, &self.im * s),
        )
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        let p = self.prec();
        self.like(
            Float::with_val(p, &self.re * s),
            Float::with_val(p, &self.im * s),
        )
    }

    pub fn add_real(&self, s: &Float) -> Self {
        self.like(Float::with_val(self.prec(), &self.re + s), self.im.clone())
    }

    pub fn inv(&self) -> Self {
        let p = self.prec();
        let d = Float::with_val(
            p,
            self.re
                .mul_add_ref(&self.re, &Float::with_val(p, &self.im * &self.im)),
        );
        self.like(
            Float::with_val(p, &self.re / &d),
            Float::with_val(p, -Float::with_val(p, &self.im / &d)),
        )
    }

    pub fn div(&self, other: &BigComplex) -> Self {
        self * &other.inv()
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = sin_cos(&self.im, p);
        self.like(Float::with_val(p, &m * &c), Float::with_val(p, &m * &s))
    }

    /// Principal logarithm, `Im` in `(-pi, pi]`.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        self.like(Float::with_val(p, self.abs().ln_ref()), self.arg())
    }

    /// Principal power `exp(e Log z)` for a real exponent.
    pub fn powf(&self, e: &Float) -> Self {
        self.ln().scale(e).exp()
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, k: i32) -> Self {
        if k < 0 {
            return self.powi(-k).inv();
        }
        let p = self.prec();
        let mut result = self.like(Float::with_val(p, 1), Float::new(p));
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Relative distance `|self - other| / |other|` as an `f64`.
    pub fn rel_diff(&self, other: &BigComplex) -> f64 {
        let d = (self - other).abs();
        Float::with_val(self.prec(), &d / &other.abs()).to_f64()
    }

    /// Decimal strings of both parts with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            self.re.to_string_radix(10, Some(digits)),
            self.im.to_string_radix(10, Some(digits)),
        )
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal(self.digits as usize);
        write!(f, "({re}, {im})")
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
            digits: self.digits.max(o.digits),
        }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
            digits: self.digits.max(o.digits),
        }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        BigComplex {
            re: ac - bd,
            im: ad + bc,
            digits: self.digits.max(o.digits),
        }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        let p = self.prec();
        self.like(Float::with_val(p, -&self.re), Float::with_val(p, -&self.im))
    }
}
