//! Python module `abramowitz_py`.
//!
//! ```python
//! import abramowitz_py as ab
//! ab.j(1, 2 + 3j)
//! ab.Evaluator(["q3.txt"]).eval_scaled(0, 40j)
//! ```

use std::str::FromStr;

use abramowitz::{CoefficientFile, Complex64, Region, TableSet};
use abramowitz_precision::fitter::{self, RegionSpec};
use abramowitz_precision::{oracle, verify, BigComplex};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn core_err(e: abramowitz::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn precision_err(e: abramowitz_precision::Error) -> PyErr {
    use abramowitz_precision::Error as E;
    match e {
        E::Core(e) => core_err(e),
        E::InvalidParameter(m) => PyValueError::new_err(m),
        e => PyRuntimeError::new_err(e.to_string()),
    }
}

fn region(name: &str) -> PyResult<Region> {
    Region::from_str(name).map_err(core_err)
}

/// `J_n(z)`.
#[pyfunction]
fn j(n: i32, z: Complex64) -> PyResult<Complex64> {
    abramowitz::abramowitz_j(n, z).map_err(core_err)
}

/// `e^nu J_n(z)`.
#[pyfunction]
fn j_scaled(n: i32, z: Complex64) -> PyResult<Complex64> {
    abramowitz::abramowitz_j_scaled(n, z).map_err(core_err)
}

/// `nu = 3 (z/2)^(2/3)`.
#[pyfunction]
fn nu(z: Complex64) -> PyResult<Complex64> {
    abramowitz::nu_transform(z).map_err(core_err)
}

/// Region label of `z`: "S", "Q1", "Q2", "Q3" or "A".
#[pyfunction]
fn classify(z: Complex64) -> PyResult<&'static str> {
    abramowitz::classify_region(z)
        .map(Region::label)
        .map_err(core_err)
}

/// Embedded table as coefficient-file text.
#[pyfunction]
fn table(n: i32, region_name: &str) -> PyResult<String> {
    let r = region(region_name)?;
    let t = TableSet::embedded()
        .get(n, r)
        .ok_or_else(|| PyValueError::new_err(format!("no table for n = {n} on {r}")))?;
    Ok(CoefficientFile::from_table(t, None, t.source_digits()).to_text())
}

#[pyclass(frozen)]
struct Evaluator {
    inner: abramowitz::Evaluator,
}

#[pymethods]
impl Evaluator {
    /// Embedded tables, each overridden by the coefficient files given.
    #[new]
    #[pyo3(signature = (tables = Vec::new()))]
    fn new(tables: Vec<String>) -> PyResult<Self> {
        let mut set = TableSet::embedded().clone();
        for path in tables {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
            let file: CoefficientFile = text.parse().map_err(core_err)?;
            set.replace(file.to_table().map_err(core_err)?)
                .map_err(core_err)?;
        }
        Ok(Evaluator {
            inner: abramowitz::Evaluator::with_tables(set),
        })
    }

    fn eval(&self, n: i32, z: Complex64) -> PyResult<Complex64> {
        self.inner.eval(n, z).map_err(core_err)
    }

    fn eval_scaled(&self, n: i32, z: Complex64) -> PyResult<Complex64> {
        self.inner.eval_scaled(n, z).map_err(core_err)
    }

    /// Forces the representation of region `region_name`.
    #[pyo3(signature = (n, z, region_name, scaled = true))]
    fn eval_in_region(
        &self,
        n: i32,
        z: Complex64,
        region_name: &str,
        scaled: bool,
    ) -> PyResult<Complex64> {
        self.inner
            .eval_in_region(n, z, region(region_name)?, scaled)
            .map_err(core_err)
    }
}

/// Arbitrary-precision `J_n(z)` (or `e^nu J_n`) as decimal `(re, im)` strings.
#[pyfunction]
#[pyo3(signature = (n, z, digits = oracle::TEST_DIGITS, scaled = false))]
fn oracle_j(n: i32, z: Complex64, digits: u32, scaled: bool) -> PyResult<(String, String)> {
    let zb = BigComplex::from_c64(z, digits);
    let v = if scaled {
        oracle::oracle_j_scaled(n, &zb, digits)
    } else {
        oracle::oracle_j(n, &zb, digits)
    }
    .map_err(precision_err)?;
    Ok(v.to_decimal(digits as usize))
}

#[pyclass(frozen, get_all)]
struct FitReport {
    order: i32,
    r_lo: f64,
    r_hi: f64,
    n1: i32,
    n2: i32,
    nt: usize,
    residual: f64,
    midpoint_error: f64,
    rank: usize,
    nodes_per_segment: usize,
    /// `(re, im)` strings, highest power first.
    coefficients: Vec<(String, String)>,
    digits: u32,
}

#[pymethods]
impl FitReport {
    /// Coefficient-file text.
    fn to_text(&self) -> String {
        CoefficientFile {
            order: self.order,
            r_lo: self.r_lo,
            r_hi: self.r_hi,
            n1: self.n1,
            n2: self.n2,
            residual: Some(self.residual),
            digits: self.digits,
            coeffs: self.coefficients.clone(),
        }
        .to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "FitReport(n={}, [{}, {}], N2={}, NT={}, residual={:.3e})",
            self.order, self.r_lo, self.r_hi, self.n2, self.nt, self.residual
        )
    }
}

/// Least-squares fit of `U_n` on the quarter annulus `[r_lo, r_hi]`.
#[pyfunction]
#[pyo3(signature = (n, r_lo, r_hi, epsilon = 1e-20, digits = oracle::FIT_DIGITS))]
fn fit(
    py: Python<'_>,
    n: i32,
    r_lo: f64,
    r_hi: f64,
    epsilon: f64,
    digits: u32,
) -> PyResult<FitReport> {
    let spec = RegionSpec::new(r_lo, r_hi).map_err(precision_err)?;
    let r = py
        .detach(|| fitter::fit_region_with(n, &spec, epsilon, digits))
        .map_err(precision_err)?;
    Ok(FitReport {
        order: r.order,
        r_lo,
        r_hi,
        n1: r.n1,
        n2: r.n2,
        nt: r.nt,
        residual: r.residual,
        midpoint_error: r.midpoint_error,
        rank: r.rank,
        nodes_per_segment: r.nodes_per_segment,
        coefficients: r.decimal_coeffs(),
        digits: r.digits,
    })
}

#[pyclass(frozen, get_all)]
struct SweepStats {
    order: i32,
    region: Option<String>,
    count: usize,
    max_rel_err: f64,
    mean_rel_err: f64,
}

impl From<verify::SweepStats> for SweepStats {
    fn from(s: verify::SweepStats) -> Self {
        SweepStats {
            order: s.order,
            region: s.region.map(|r| r.label().to_string()),
            count: s.count,
            max_rel_err: s.max_rel_err,
            mean_rel_err: s.mean_rel_err,
        }
    }
}

/// Scaled relative error against the 30-digit oracle.
#[pyfunction]
#[pyo3(signature = (n, region_name, count = 1000, seed = 1))]
fn error_sweep(
    py: Python<'_>,
    n: i32,
    region_name: &str,
    count: usize,
    seed: u64,
) -> PyResult<SweepStats> {
    let r = region(region_name)?;
    py.detach(|| verify::error_sweep(n, r, count, seed))
        .map(Into::into)
        .map_err(precision_err)
}

#[pyclass(frozen, get_all)]
struct ZeroCount {
    order: i32,
    zeros: i64,
    integral: Complex64,
    residual: f64,
    nodes_per_segment: usize,
}

/// Zeros of `J_n` inside the quarter annulus, by the argument principle.
#[pyfunction]
#[pyo3(signature = (n, r_lo = 1.0, r_hi = 120.0, nodes = 64))]
fn zero_count(n: i32, r_lo: f64, r_hi: f64, nodes: usize) -> PyResult<ZeroCount> {
    let r = verify::zero_count(n, r_lo, r_hi, nodes).map_err(precision_err)?;
    Ok(ZeroCount {
        order: r.order,
        zeros: r.zeros,
        integral: r.integral,
        residual: r.residual,
        nodes_per_segment: r.nodes_per_segment,
    })
}

#[pymodule]
pub fn abramowitz_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(j, m)?)?;
    m.add_function(wrap_pyfunction!(j_scaled, m)?)?;
    m.add_function(wrap_pyfunction!(nu, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_j, m)?)?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    m.add_function(wrap_pyfunction!(error_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(zero_count, m)?)?;
    m.add_class::<Evaluator>()?;
    m.add_class::<FitReport>()?;
    m.add_class::<SweepStats>()?;
    m.add_class::<ZeroCount>()?;
    Ok(())
}
