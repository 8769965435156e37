//! Partition of the closed right half plane by |z|.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Radius below which the small-|z| expansion is used.
pub const SERIES_RADIUS: f64 = 1.0;
/// Radius from which the large-|z| expansion is used.
pub const ASYMPTOTIC_RADIUS: f64 = 120.0;

/// Evaluation region of an argument, chosen by |z| alone.
///
/// The intervals are half open and closed on the left:
/// `[0,1)`, `[1,3)`, `[3,15)`, `[15,120)`, `[120,inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Series,
    Q1,
    Q2,
    Q3,
    Asymptotic,
}

impl Region {
    pub const ALL: [Region; 5] = [
        Region::Series,
        Region::Q1,
        Region::Q2,
        Region::Q3,
        Region::Asymptotic,
    ];

    /// The three quarter annuli covered by fitted tables.
    pub const INTERMEDIATE: [Region; 3] = [Region::Q1, Region::Q2, Region::Q3];

    /// `[lo, hi)` bounds on |z|; `hi` is infinite for `Asymptotic`.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            Region::Series => (0.0, SERIES_RADIUS),
            Region::Q1 => (SERIES_RADIUS, 3.0),
            Region::Q2 => (3.0, 15.0),
            Region::Q3 => (15.0, ASYMPTOTIC_RADIUS),
            Region::Asymptotic => (ASYMPTOTIC_RADIUS, f64::INFINITY),
        }
    }

    pub fn contains_modulus(self, modulus: f64) -> bool {
        let (lo, hi) = self.bounds();
        modulus >= lo && modulus < hi
    }

    pub fn is_intermediate(self) -> bool {
        matches!(self, Region::Q1 | Region::Q2 | Region::Q3)
    }

    /// Intermediate region whose closed interval is exactly `[r_lo, r_hi]`.
    pub fn from_radii(r_lo: f64, r_hi: f64) -> Option<Region> {
        Region::INTERMEDIATE
            .into_iter()
            .find(|r| r.bounds() == (r_lo, r_hi))
    }

    pub fn label(self) -> &'static str {
        match self {
            Region::Series => "S",
            Region::Q1 => "Q1",
            Region::Q2 => "Q2",
            Region::Q3 => "Q3",
            Region::Asymptotic => "A",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "series" => Ok(Region::Series),
            "q1" => Ok(Region::Q1),
            "q2" => Ok(Region::Q2),
            "q3" => Ok(Region::Q3),
            "a" | "asymptotic" => Ok(Region::Asymptotic),
            _ => Err(Error::InvalidParameter(format!("unknown region '{s}'"))),
        }
    }
}

/// Rejects non-finite arguments and arguments in the open left half plane.
pub fn validate_argument(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite);
    }
    if z.re < 0.0 {
        return Err(Error::LeftHalfPlane);
    }
    Ok(())
}

pub fn classify_region(z: Complex64) -> Result<Region> {
    validate_argument(z)?;
    let r = z.norm();
    let region = if r < SERIES_RADIUS {
        Region::Series
    } else if r < 3.0 {
        Region::Q1
    } else if r < 15.0 {
        Region::Q2
    } else if r < ASYMPTOTIC_RADIUS {
        Region::Q3
    } else {
        Region::Asymptotic
    };
    Ok(region)
}

/// Maps the lower quadrant onto the upper one. When the flag is set the
/// caller must conjugate its final result.
pub fn conjugate_reduce(z: Complex64) -> (Complex64, bool) {
    if z.im < 0.0 {
        (z.conj(), true)
    } else {
        (z, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_region(c(0.5, 0.0)).unwrap(), Region::Series);
        assert_eq!(classify_region(c(3.0, 0.0)).unwrap(), Region::Q2);
        assert_eq!(classify_region(c(120.0, 0.0)).unwrap(), Region::Asymptotic);
        assert_eq!(classify_region(c(0.0, 1.0)).unwrap(), Region::Q1);
        assert_eq!(classify_region(c(0.0, 0.0)).unwrap(), Region::Series);
    }

    #[test]
    fn classify_rejects_bad_input() {
        assert_eq!(classify_region(c(-1.0, 0.0)), Err(Error::LeftHalfPlane));
        assert_eq!(classify_region(c(f64::NAN, 0.0)), Err(Error::NonFinite));
        assert_eq!(
            classify_region(c(1.0, f64::INFINITY)),
            Err(Error::NonFinite)
        );
        // negative zero real part is still on the imaginary axis
        assert!(classify_region(c(-0.0, 2.0)).is_ok());
    }

    #[test]
    fn conjugate_reduce_examples() {
        assert_eq!(conjugate_reduce(c(1.0, -2.0)), (c(1.0, 2.0), true));
        assert_eq!(conjugate_reduce(c(1.0, 2.0)), (c(1.0, 2.0), false));
        assert_eq!(conjugate_reduce(c(5.0, 0.0)), (c(5.0, 0.0), false));
    }

    #[test]
    fn region_round_trips_through_labels() {
        for r in Region::ALL {
            assert_eq!(r.label().parse::<Region>().unwrap(), r);
        }
        assert_eq!(Region::from_radii(3.0, 15.0), Some(Region::Q2));
        assert_eq!(Region::from_radii(3.0, 14.0), None);
    }
}
