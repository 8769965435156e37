//! Fitted modified Laurent tables for the intermediate quarter annuli.
//!
//! On each annulus `U_n(nu) ~ nu^N2 * sum_{j<NT} c_j nu^(-j)`; the
//! coefficients are kept as 20-digit decimal strings and converted to `f64`
//! when a [`TableSet`] is built.

mod data;

use std::sync::OnceLock;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::region::{self, Region};
use crate::transform::{assemble, assemble_scaled, nu_unchecked};

pub(crate) struct RawTable {
    order: i32,
    region: Region,
    n2: i32,
    coeffs: &'static [(&'static str, &'static str)],
}

/// Relative slack allowed on the closed region interval in [`eval_laurent`].
const REGION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentTable {
    pub order: i32,
    pub region: Region,
    /// Leading power of `nu`.
    pub n2: i32,
    pub coeffs: Vec<Complex64>,
    /// Decimal text of each coefficient, `(re, im)`.
    pub source: Vec<(String, String)>,
}

impl LaurentTable {
    /// Builds a table from decimal strings; `D` exponents are accepted.
    pub fn from_decimal(
        order: i32,
        region: Region,
        n2: i32,
        entries: Vec<(String, String)>,
    ) -> Result<Self> {
        if !region.is_intermediate() {
            return Err(Error::InvalidParameter(format!(
                "Laurent tables cover Q1..Q3 only, got {region}"
            )));
        }
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty coefficient list".into()));
        }
        let coeffs = entries
            .iter()
            .map(|(re, im)| Ok(Complex64::new(parse_decimal(re)?, parse_decimal(im)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentTable {
            order,
            region,
            n2,
            coeffs,
            source: entries,
        })
    }

    pub fn nt(&self) -> usize {
        self.coeffs.len()
    }

    /// Significant digits of the longest mantissa in [`LaurentTable::source`].
    pub fn source_digits(&self) -> u32 {
        self.source
            .iter()
            .flat_map(|(a, b)| [a, b])
            .map(|s| {
                let mantissa = s.split(['e', 'E', 'd', 'D']).next().unwrap_or("");
                let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
                digits.trim_start_matches('0').len() as u32
            })
            .max()
            .unwrap_or(0)
    }

    /// Number of negative powers, `NT - 1 - N2`.
    pub fn n1(&self) -> i32 {
        self.nt() as i32 - 1 - self.n2
    }

    /// `U_n(nu)`: one Horner pass in `1/nu`, then `nu^N2` by repeated squaring.
    #[inline]
    pub fn u(&self, nu: Complex64) -> Complex64 {
        let w = nu.inv();
        let poly = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c);
        if self.n2 == 0 {
            poly
        } else {
            poly * nu.powi(self.n2)
        }
    }
}

/// Parses a decimal literal, accepting Fortran-style `D` exponents.
pub fn parse_decimal(s: &str) -> Result<f64> {
    let normalized = s.trim().replace(['D', 'd'], "e");
    let v: f64 = normalized
        .parse()
        .map_err(|_| Error::Format(format!("not a decimal number: '{s}'")))?;
    if !v.is_finite() {
        return Err(Error::Format(format!("non-finite coefficient '{s}'")));
    }
    Ok(v)
}

fn raw_digest() -> String {
    let mut hasher = Sha256::new();
    for t in &data::RAW_TABLES {
        for (re, im) in t.coeffs {
            hasher.update(re.as_bytes());
            hasher.update(b" ");
            hasher.update(im.as_bytes());
            hasher.update(b"\n");
        }
    }
    hex::encode(hasher.finalize())
}

/// The twelve embedded tables (orders -1..=2 on Q1, Q2, Q3), after
/// verifying the digest of the embedded decimal text.
pub fn load_tables() -> Result<Vec<LaurentTable>> {
    let digest = raw_digest();
    if digest != data::RAW_TABLES_SHA256 {
        return Err(Error::CorruptTable(format!(
            "digest {digest} does not match {}",
            data::RAW_TABLES_SHA256
        )));
    }
    data::RAW_TABLES
        .iter()
        .map(|t| {
            let entries = t
                .coeffs
                .iter()
                .map(|(re, im)| (re.to_string(), im.to_string()))
                .collect();
            LaurentTable::from_decimal(t.order, t.region, t.n2, entries)
        })
        .collect()
}

/// Tables indexed by order `-1..=2` and intermediate region.
#[derive(Debug, Clone, PartialEq)]
pub struct TableSet {
    tables: Vec<LaurentTable>,
}

impl TableSet {
    /// Embedded tables; panics only if the embedded data is corrupt.
    pub fn embedded() -> &'static TableSet {
        static SET: OnceLock<TableSet> = OnceLock::new();
        SET.get_or_init(|| {
            let tables = load_tables().expect("embedded Laurent tables failed verification");
            TableSet::from_tables(tables).expect("embedded tables are complete")
        })
    }

    pub fn from_tables(tables: Vec<LaurentTable>) -> Result<Self> {
        let mut set = TableSet { tables: Vec::new() };
        for t in tables {
            set.replace(t)?;
        }
        for n in -1..=2 {
            for r in Region::INTERMEDIATE {
                if set.get(n, r).is_none() {
                    return Err(Error::InvalidParameter(format!(
                        "missing table for n = {n} on {r}"
                    )));
                }
            }
        }
        Ok(set)
    }

    /// Inserts or overrides the table for `(table.order, table.region)`.
    pub fn replace(&mut self, table: LaurentTable) -> Result<()> {
        if !(-1..=2).contains(&table.order) {
            return Err(Error::UnsupportedOrder(table.order));
        }
        match self
            .tables
            .iter_mut()
            .find(|t| t.order == table.order && t.region == table.region)
        {
            Some(slot) => *slot = table,
            None => self.tables.push(table),
        }
        Ok(())
    }

    pub fn get(&self, order: i32, region: Region) -> Option<&LaurentTable> {
        self.tables
            .iter()
            .find(|t| t.order == order && t.region == region)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LaurentTable> {
        self.tables.iter()
    }
}

fn check(z: Complex64, table: &LaurentTable) -> Result<(Complex64, bool)> {
    region::validate_argument(z)?;
    let modulus = z.norm();
    let (lo, hi) = table.region.bounds();
    if modulus < lo * (1.0 - REGION_SLACK) || modulus > hi * (1.0 + REGION_SLACK) {
        return Err(Error::RegionMismatch {
            region: table.region,
            modulus,
        });
    }
    Ok(region::conjugate_reduce(z))
}

/// `J_n(z)` from a table; `|z|` must lie in the table's closed interval.
pub fn eval_laurent(z: Complex64, table: &LaurentTable) -> Result<Complex64> {
    let (w, flip) = check(z, table)?;
    let nu = nu_unchecked(w);
    let v = assemble(table.order, nu, table.u(nu));
    Ok(if flip { v.conj() } else { v })
}

/// `e^nu J_n(z)` from a table.
pub fn eval_laurent_scaled(z: Complex64, table: &LaurentTable) -> Result<Complex64> {
    let (w, flip) = check(z, table)?;
    let nu = nu_unchecked(w);
    let v = assemble_scaled(table.order, nu, table.u(nu));
    Ok(if flip { v.conj() } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn table(n: i32, r: Region) -> &'static LaurentTable {
        TableSet::embedded().get(n, r).unwrap()
    }

    #[test]
    fn embedded_configuration() {
        let expected = [
            (-1, Region::Q1, 10, 32),
            (0, Region::Q1, 11, 30),
            (1, Region::Q1, 11, 30),
            (2, Region::Q1, 11, 32),
        ];
        for (n, r, n2, nt) in expected {
            assert_eq!((table(n, r).n2, table(n, r).nt()), (n2, nt), "n={n}");
        }
        for n in -1..=2 {
            assert_eq!(
                (table(n, Region::Q2).n2, table(n, Region::Q2).nt()),
                (0, 30)
            );
            assert_eq!(
                (table(n, Region::Q3).n2, table(n, Region::Q3).nt()),
                (0, 20)
            );
        }
        assert_eq!(table(-1, Region::Q1).n1(), 21);
    }

    #[test]
    fn spot_check_entries() {
        let c = table(-1, Region::Q1).coeffs[10];
        assert_eq!(
            c,
            Complex64::new(
                0.999_777_374_590_696_606_94,
                -0.576_030_836_245_300_251_51e-4
            )
        );
        let c = table(-1, Region::Q2).coeffs[0];
        assert_eq!(
            c,
            Complex64::new(
                0.999_999_999_999_961_653_01,
                0.141_806_832_347_584_925_36e-12
            )
        );
        let c = table(1, Region::Q3).coeffs[1];
        assert_eq!(
            c,
            Complex64::new(
                0.416_666_666_666_656_932_68,
                0.106_331_057_865_606_799_43e-13
            )
        );
    }

    #[test]
    fn leading_coefficient_is_one_far_out() {
        for n in -1..=2 {
            for r in [Region::Q2, Region::Q3] {
                let c0 = table(n, r).coeffs[0];
                assert!((c0 - 1.0).norm() <= 1e-12, "n={n} {r}: {c0}");
            }
        }
    }

    #[test]
    fn digest_matches() {
        assert_eq!(raw_digest(), data::RAW_TABLES_SHA256);
        assert_eq!(load_tables().unwrap().len(), 12);
    }

    #[test]
    fn region_mismatch_is_reported() {
        let t = table(0, Region::Q2);
        assert!(matches!(
            eval_laurent(Complex64::new(2.0, 0.0), t),
            Err(Error::RegionMismatch {
                region: Region::Q2,
                ..
            })
        ));
        // closed interval endpoints are accepted
        assert!(eval_laurent(Complex64::new(3.0, 0.0), t).is_ok());
        assert!(eval_laurent(Complex64::new(0.0, 15.0), t).is_ok());
    }

    #[test]
    fn terms_decay_on_each_region() {
        for t in TableSet::embedded().iter() {
            let (lo, _) = t.region.bounds();
            let w = 1.0 / (3.0 * (lo / 2.0f64).powf(2.0 / 3.0));
            // |c_j nu_min^(N2 - j)| at the inner radius, where terms are largest
            let mags: Vec<f64> = t
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c.norm() * w.powi(j as i32 - t.n2))
                .collect();
            let tail = &mags[mags.len() - 8..];
            assert!(
                tail.windows(2).all(|p| p[1] < p[0]),
                "n={} {}: {tail:?}",
                t.order,
                t.region
            );
            assert!(*tail.last().unwrap() < 1e-8);
        }
    }

    #[test]
    fn reflection_conjugates() {
        let t = table(1, Region::Q2);
        let z = Complex64::from_polar(7.0, PI / 5.0);
        let up = eval_laurent_scaled(z, t).unwrap();
        let down = eval_laurent_scaled(z.conj(), t).unwrap();
        assert_eq!(up.conj(), down);
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_decimal("0.5D+01").unwrap(), 5.0);
        assert_eq!(parse_decimal("-0.25e-1").unwrap(), -0.025);
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("1e999").is_err());
    }
}
