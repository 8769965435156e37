//! Plain-text interchange format for modified Laurent coefficient tables.
//!
//! ```text
//! # abramowitz-coefficients version=1 n=0 r_lo=15 r_hi=120 N1=19 N2=0 NT=20 residual=3.1e-21 digits=50
//! 1.0000000000000000000000000000000001 -2.3e-40
//! ...
//! ```
//!
//! Header lines start with `#` and carry `key=value` tokens; the first one
//! must name the format. The body has exactly `NT` lines of `re im`
//! decimal strings, the coefficient of the highest power `nu^N2` first.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::laurent::{parse_decimal, LaurentTable};
use crate::region::Region;

pub const FORMAT_NAME: &str = "abramowitz-coefficients";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFile {
    pub order: i32,
    pub r_lo: f64,
    pub r_hi: f64,
    pub n1: i32,
    pub n2: i32,
    /// Max-abs fit residual over the boundary nodes, when known.
    pub residual: Option<f64>,
    /// Decimal digits carried by the coefficients.
    pub digits: u32,
    pub coeffs: Vec<(String, String)>,
}

impl CoefficientFile {
    pub fn nt(&self) -> usize {
        self.coeffs.len()
    }

    pub fn from_table(table: &LaurentTable, residual: Option<f64>, digits: u32) -> Self {
        let (r_lo, r_hi) = table.region.bounds();
        CoefficientFile {
            order: table.order,
            r_lo,
            r_hi,
            n1: table.n1(),
            n2: table.n2,
            residual,
            digits,
            coeffs: table
                .source
                .iter()
                .map(|(re, im)| (re.replace('D', "E"), im.replace('D', "E")))
                .collect(),
        }
    }

    /// The table this file describes; its radii must match one of Q1..Q3.
    pub fn to_table(&self) -> Result<LaurentTable> {
        let region = Region::from_radii(self.r_lo, self.r_hi).ok_or_else(|| {
            Error::Format(format!(
                "radii [{}, {}] do not match an intermediate region",
                self.r_lo, self.r_hi
            ))
        })?;
        LaurentTable::from_decimal(self.order, region, self.n2, self.coeffs.clone())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let residual = self
            .residual
            .map_or_else(|| "-".to_string(), |r| format!("{r:e}"));
        let _ = writeln!(
            out,
            "# {FORMAT_NAME} version={FORMAT_VERSION} n={} r_lo={} r_hi={} N1={} N2={} NT={} residual={} digits={}",
            self.order,
            self.r_lo,
            self.r_hi,
            self.n1,
            self.n2,
            self.nt(),
            residual,
            self.digits
        );
        for (re, im) in &self.coeffs {
            let _ = writeln!(out, "{re} {im}");
        }
        out
    }
}

fn field<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Format(format!("bad value '{value}' for {key}")))
}

impl FromStr for CoefficientFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::Format("empty file".into()))?;
        if !first.starts_with('#') || !first.contains(FORMAT_NAME) {
            return Err(Error::Format(format!("missing '{FORMAT_NAME}' header")));
        }

        let mut order = None;
        let mut r_lo = None;
        let mut r_hi = None;
        let mut n1 = None;
        let mut n2 = None;
        let mut nt: Option<usize> = None;
        let mut residual = None;
        let mut digits = None;
        let mut coeffs = Vec::new();

        for line in std::iter::once(first).chain(lines) {
            if let Some(header) = line.strip_prefix('#') {
                if !coeffs.is_empty() {
                    return Err(Error::Format("header line after coefficient body".into()));
                }
                for token in header.split_whitespace() {
                    let Some((key, value)) = token.split_once('=') else {
                        continue;
                    };
                    match key {
                        "version" => {
                            let v: u32 = field(key, value)?;
                            if v != FORMAT_VERSION {
                                return Err(Error::Format(format!("unsupported version {v}")));
                            }
                        }
                        "n" => order = Some(field(key, value)?),
                        "r_lo" => r_lo = Some(field(key, value)?),
                        "r_hi" => r_hi = Some(field(key, value)?),
                        "N1" => n1 = Some(field(key, value)?),
                        "N2" => n2 = Some(field(key, value)?),
                        "NT" => nt = Some(field(key, value)?),
                        "residual" if value == "-" => residual = None,
                        "residual" => residual = Some(field(key, value)?),
                        "digits" => digits = Some(field(key, value)?),
                        _ => {}
                    }
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(re), Some(im), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Format(format!("expected 're im', got '{line}'")));
            };
            parse_decimal(re)?;
            parse_decimal(im)?;
            coeffs.push((re.to_string(), im.to_string()));
        }

        let missing = |k: &str| Error::Format(format!("header is missing {k}"));
        let file = CoefficientFile {
            order: order.ok_or_else(|| missing("n"))?,
            r_lo: r_lo.ok_or_else(|| missing("r_lo"))?,
            r_hi: r_hi.ok_or_else(|| missing("r_hi"))?,
            n1: n1.ok_or_else(|| missing("N1"))?,
            n2: n2.ok_or_else(|| missing("N2"))?,
            residual,
            digits: digits.ok_or_else(|| missing("digits"))?,
            coeffs,
        };
        let nt = nt.ok_or_else(|| missing("NT"))?;
        if file.nt() != nt {
            return Err(Error::Format(format!(
                "header says NT={nt} but body has {} lines",
                file.nt()
            )));
        }
        if file.n1 + file.n2 + 1 != nt as i32 {
            return Err(Error::Format(format!(
                "N1={} and N2={} are inconsistent with NT={nt}",
                file.n1, file.n2
            )));
        }
        if file.r_lo.partial_cmp(&file.r_hi) != Some(std::cmp::Ordering::Less) {
            return Err(Error::Format("r_lo must be below r_hi".into()));
        }
        Ok(file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{eval_laurent_scaled, TableSet};
    use num_complex::Complex64;

    #[test]
    fn header_line_carries_structure() {
        let table = TableSet::embedded().get(-1, Region::Q1).unwrap();
        let text = CoefficientFile::from_table(table, None, 20).to_text();
        let first = text.lines().next().unwrap();
        assert!(first.contains("N2=10"), "{first}");
        assert!(first.contains("NT=32"), "{first}");
        assert!(first.contains("N1=21"), "{first}");
        assert_eq!(text.lines().count(), 33);
    }

    #[test]
    fn round_trip_evaluates_identically() {
        for table in TableSet::embedded().iter() {
            let text = CoefficientFile::from_table(table, Some(1e-21), 20).to_text();
            let back: CoefficientFile = text.parse().unwrap();
            assert_eq!(back.residual, Some(1e-21));
            let reloaded = back.to_table().unwrap();
            assert_eq!(reloaded.coeffs, table.coeffs);
            let (lo, hi) = table.region.bounds();
            let z = Complex64::from_polar(0.5 * (lo + hi), 0.7);
            assert_eq!(
                eval_laurent_scaled(z, &reloaded).unwrap(),
                eval_laurent_scaled(z, table).unwrap()
            );
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        let table = TableSet::embedded().get(0, Region::Q3).unwrap();
        let good = CoefficientFile::from_table(table, None, 20).to_text();

        assert!("".parse::<CoefficientFile>().is_err());
        assert!("1 2\n".parse::<CoefficientFile>().is_err());

        let truncated: String = good.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(truncated.parse::<CoefficientFile>().is_err());

        let bad_entry = good.replacen("E+00", "E+00x", 1);
        assert!(bad_entry.parse::<CoefficientFile>().is_err());

        let bad_n1 = good.replace("N1=19", "N1=18");
        assert!(bad_n1.parse::<CoefficientFile>().is_err());

        let odd_region = good.replace("r_hi=120", "r_hi=100");
        let parsed: CoefficientFile = odd_region.parse().unwrap();
        assert!(parsed.to_table().is_err());
    }
}
