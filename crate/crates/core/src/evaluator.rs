//! Region dispatch for `J_n(z)`, `n >= -1`, on the closed right half plane.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::asymptotic::{asymptotic_u, AsymCoeffs};
use crate::error::{Error, Result};
use crate::laurent::TableSet;
use crate::recurrence;
use crate::region::{classify_region, conjugate_reduce, validate_argument, Region};
use crate::series::{eval_series, SeriesCoeffs};
use crate::transform::{assemble, assemble_scaled, nu_unchecked};

/// Evaluator over a fixed set of Laurent tables.
#[derive(Debug, Clone)]
pub struct Evaluator {
    tables: TableSet,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new()
    }
}

impl Evaluator {
    /// Evaluator backed by the embedded tables.
    pub fn new() -> Self {
        Evaluator {
            tables: TableSet::embedded().clone(),
        }
    }

    pub fn with_tables(tables: TableSet) -> Self {
        Evaluator { tables }
    }

    pub fn tables(&self) -> &TableSet {
        &self.tables
    }

    /// `J_n(z)`.
    pub fn eval(&self, n: i32, z: Complex64) -> Result<Complex64> {
        self.eval_with(n, z, false)
    }

    /// `e^nu J_n(z)` with `nu = 3 (z/2)^(2/3)`.
    pub fn eval_scaled(&self, n: i32, z: Complex64) -> Result<Complex64> {
        self.eval_with(n, z, true)
    }

    fn eval_with(&self, n: i32, z: Complex64, scaled: bool) -> Result<Complex64> {
        match n {
            -1..=2 => {
                let region = classify_region(z)?;
                self.eval_direct(n, z, region, scaled)
            }
            n if n >= 3 => recurrence::eval_forward_with(self, n, z, scaled),
            _ => Err(Error::UnsupportedOrder(n)),
        }
    }

    /// Evaluates `n = -1..=2` with the representation of `region`, whatever
    /// region `z` itself falls in. Used to compare neighbouring
    /// representations along the seams.
    pub fn eval_in_region(
        &self,
        n: i32,
        z: Complex64,
        region: Region,
        scaled: bool,
    ) -> Result<Complex64> {
        if !(-1..=2).contains(&n) {
            return Err(Error::UnsupportedOrder(n));
        }
        validate_argument(z)?;
        self.eval_direct(n, z, region, scaled)
    }

    fn eval_direct(&self, n: i32, z: Complex64, region: Region, scaled: bool) -> Result<Complex64> {
        let (w, flip) = conjugate_reduce(z);
        let v = match region {
            Region::Series => {
                let j = eval_series(w, SeriesCoeffs::standard(n)?)?;
                if scaled && w != Complex64::new(0.0, 0.0) {
                    j * nu_unchecked(w).exp()
                } else {
                    j
                }
            }
            Region::Asymptotic => {
                if w == Complex64::new(0.0, 0.0) {
                    return Err(Error::ZeroArgument);
                }
                let nu = nu_unchecked(w);
                let u = asymptotic_u(nu, AsymCoeffs::standard(n)?);
                finish(n, nu, u, scaled)
            }
            r => {
                if w == Complex64::new(0.0, 0.0) {
                    return Err(Error::ZeroArgument);
                }
                let table = self.tables.get(n, r).ok_or(Error::UnsupportedOrder(n))?;
                let nu = nu_unchecked(w);
                finish(n, nu, table.u(nu), scaled)
            }
        };
        Ok(if flip {
            v.conj()
        } else if w.im == 0.0 {
            // fitted tables carry ~1e-19 imaginary noise on the real axis
            Complex64::new(v.re, 0.0)
        } else {
            v
        })
    }
}

#[inline]
fn finish(n: i32, nu: Complex64, u: Complex64, scaled: bool) -> Complex64 {
    if scaled {
        assemble_scaled(n, nu, u)
    } else {
        assemble(n, nu, u)
    }
}

pub(crate) fn standard() -> &'static Evaluator {
    static EVAL: OnceLock<Evaluator> = OnceLock::new();
    EVAL.get_or_init(Evaluator::new)
}

/// `J_n(z)` for `n >= -1` and `Re z >= 0`.
pub fn abramowitz_j(n: i32, z: Complex64) -> Result<Complex64> {
    standard().eval(n, z)
}

/// `e^nu J_n(z)`, finite where `J_n` itself underflows.
pub fn abramowitz_j_scaled(n: i32, z: Complex64) -> Result<Complex64> {
    standard().eval_scaled(n, z)
}
