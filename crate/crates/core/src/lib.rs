//! Abramowitz functions
//!
//! ```text
//! J_n(z) = int_0^inf t^n exp(-t^2 - z/t) dt,   n >= -1,  Re z >= 0
//! ```
//!
//! evaluated in double precision. The right half plane is split by |z|:
//!
//! | region | |z|          | representation                                  |
//! |--------|--------------|-------------------------------------------------|
//! | S      | `[0, 1)`     | logarithmic power series                        |
//! | Q1     | `[1, 3)`     | fitted modified Laurent series in `nu`          |
//! | Q2     | `[3, 15)`    | fitted modified Laurent series in `1/nu`        |
//! | Q3     | `[15, 120)`  | fitted modified Laurent series in `1/nu`        |
//! | A      | `[120, inf)` | asymptotic expansion in `1/nu`                  |
//!
//! with `nu = 3 (z/2)^(2/3)` and `J_n = sqrt(pi/3) (nu/3)^(n/2) e^(-nu) U_n(nu)`.
//! Arguments below the real axis are reflected, `J_n(conj z) = conj J_n(z)`.
//! Orders above 2 use the recurrence `2 J_n = (n-1) J_{n-2} + z J_{n-3}`.
//!
//! ```
//! use abramowitz::{abramowitz_j, abramowitz_j_scaled};
//! use num_complex::Complex64;
//!
//! let z = Complex64::new(2.0, 3.0);
//! let j = abramowitz_j(1, z).unwrap();
//! let scaled = abramowitz_j_scaled(1, z).unwrap(); // e^nu J_1(z)
//! assert!(j.norm() < scaled.norm());
//! ```

// reference constants carry more digits than f64 holds
#![allow(clippy::excessive_precision)]

pub mod asymptotic;
pub mod coeff_file;
mod error;
mod evaluator;
pub mod laurent;
pub mod quadrature;
pub mod recurrence;
pub mod region;
pub mod series;
pub mod transform;

pub use num_complex::Complex64;

pub use asymptotic::{eval_asymptotic, eval_asymptotic_scaled, gen_asym_coeffs, AsymCoeffs};
pub use coeff_file::CoefficientFile;
pub use error::{Error, Result};
pub use evaluator::{abramowitz_j, abramowitz_j_scaled, Evaluator};
pub use laurent::{eval_laurent, eval_laurent_scaled, load_tables, LaurentTable, TableSet};
pub use quadrature::{gauss_legendre, GaussLegendre};
pub use recurrence::{eval_forward, eval_forward_scaled};
pub use region::{classify_region, conjugate_reduce, Region};
pub use series::{eval_series, gen_series_coeffs, SeriesCoeffs};
pub use transform::{assemble, assemble_scaled, nu_transform};
