//! Regenerates modified Laurent tables `U_n(nu) ~ sum_{k=-N1}^{N2} d_k nu^k`
//! by least squares on the boundary of a quarter annulus.

use std::f64::consts::FRAC_PI_2;

use abramowitz::{gauss_legendre, Complex64, LaurentTable, Region};
use rayon::prelude::*;

use crate::big::BigComplex;
use crate::error::{Error, Result};
use crate::linalg::{solve_lsq_rank, BigMatrix, LsqSolution};
use crate::oracle::{nu_big, oracle_u, FIT_DIGITS};

/// Relative rank tolerance of the least-squares solve.
pub const RANK_TOL: f64 = 1e-24;
/// Starting nodes per boundary segment.
pub const NB_START: usize = 24;
/// Upper limit of the node doubling.
pub const NB_MAX: usize = 192;
/// Largest leading power tried.
pub const N2_MAX: i32 = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    pub r_lo: f64,
    pub r_hi: f64,
}

impl RegionSpec {
    pub fn new(r_lo: f64, r_hi: f64) -> Result<Self> {
        if !(r_lo >= 1.0 && r_lo < r_hi && r_hi <= 120.0) {
            return Err(Error::InvalidParameter(format!(
                "quarter annulus needs 1 <= r_lo < r_hi <= 120, got [{r_lo}, {r_hi}]"
            )));
        }
        Ok(RegionSpec { r_lo, r_hi })
    }

    pub fn from_region(region: Region) -> Result<Self> {
        if !region.is_intermediate() {
            return Err(Error::InvalidParameter(format!("{region} is not fitted")));
        }
        let (lo, hi) = region.bounds();
        RegionSpec::new(lo, hi)
    }

    /// The matching embedded region, if the radii are exactly one of them.
    pub fn region(&self) -> Option<Region> {
        Region::from_radii(self.r_lo, self.r_hi)
    }

    /// Maps `x in [-1, 1]` onto boundary segment `seg`, counterclockwise:
    /// real axis outwards, outer arc, imaginary axis inwards, inner arc.
    pub fn segment_point(&self, seg: usize, x: f64) -> Complex64 {
        let t = 0.5 * (x + 1.0);
        let radial = |u: f64| self.r_lo + (self.r_hi - self.r_lo) * u;
        match seg {
            0 => Complex64::new(radial(t), 0.0),
            1 => Complex64::from_polar(self.r_hi, FRAC_PI_2 * t),
            2 => Complex64::new(0.0, radial(1.0 - t)),
            3 => Complex64::from_polar(self.r_lo, FRAC_PI_2 * (1.0 - t)),
            _ => panic!("segment index {seg} out of range"),
        }
    }
}

/// The fourteen annuli `[sqrt(2)^(i-1), sqrt(2)^i]` covering `[1, 128]`,
/// the last one clipped to 120.
pub fn sqrt2_partition() -> Vec<RegionSpec> {
    (1..=14)
        .map(|i| {
            let lo = 2f64.sqrt().powi(i - 1);
            let hi = 2f64.sqrt().powi(i).min(120.0);
            RegionSpec { r_lo: lo, r_hi: hi }
        })
        .collect()
}

/// Images of the `nb`-point Gauss-Legendre rule on the four boundary
/// segments, `4 nb` points in counterclockwise order.
pub fn boundary_nodes(region: &RegionSpec, nb: usize) -> Result<Vec<Complex64>> {
    let rule = gauss_legendre(nb)?;
    Ok((0..4)
        .flat_map(|seg| {
            rule.nodes
                .iter()
                .map(move |&x| region.segment_point(seg, x))
        })
        .collect())
}

/// Points halfway between consecutive Gauss-Legendre nodes on each segment.
pub fn midpoints(region: &RegionSpec, nb: usize) -> Result<Vec<Complex64>> {
    let rule = gauss_legendre(nb)?;
    Ok((0..4)
        .flat_map(|seg| {
            rule.nodes
                .windows(2)
                .map(move |w| region.segment_point(seg, 0.5 * (w[0] + w[1])))
        })
        .collect())
}

/// One right-hand side value `U_n(nu_j)` per node.
pub fn rhs(n: i32, nodes: &[Complex64], digits: u32) -> Result<Vec<BigComplex>> {
    nodes
        .par_iter()
        .map(|&z| oracle_u(n, &BigComplex::from_c64(z, digits), digits))
        .collect()
}

/// `A_jk = nu_j^k` for `k = -N1..=N2`, columns in increasing power.
pub fn design_matrix(nodes: &[Complex64], n1: i32, n2: i32, digits: u32) -> Result<BigMatrix> {
    if n1 < 0 || n2 < -n1 {
        return Err(Error::InvalidParameter(format!(
            "empty exponent window N1={n1}, N2={n2}"
        )));
    }
    let rows = nodes
        .iter()
        .map(|&z| {
            let nu = nu_big(&BigComplex::from_c64(z, digits));
            let inv = nu.inv();
            let mut row = Vec::with_capacity((n1 + n2 + 1) as usize);
            let mut v = inv.powi(n1);
            for k in -n1..=n2 {
                row.push(v.clone());
                if k < n2 {
                    v = &v * &nu;
                }
            }
            row
        })
        .collect();
    BigMatrix::from_rows(rows)
}

/// The system `A d = f` with `f_j = U_n(nu_j)` computed at `digits`.
pub fn build_lsq(
    n: i32,
    nodes: &[Complex64],
    n1: i32,
    n2: i32,
    digits: u32,
) -> Result<(BigMatrix, Vec<BigComplex>)> {
    Ok((
        design_matrix(nodes, n1, n2, digits)?,
        rhs(n, nodes, digits)?,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub order: i32,
    pub region: RegionSpec,
    pub n1: i32,
    pub n2: i32,
    pub nt: usize,
    /// `d_{-N1}, ..., d_{N2}` in increasing power.
    pub coeffs: Vec<BigComplex>,
    /// Max-abs residual on the boundary nodes.
    pub residual: f64,
    /// Max-abs error at the midpoints between nodes.
    pub midpoint_error: f64,
    pub rank: usize,
    pub nodes_per_segment: usize,
    pub digits: u32,
    pub epsilon: f64,
}

impl FitReport {
    pub fn meets_target(&self) -> bool {
        self.residual <= self.epsilon
    }

    /// `c_j = d_{N2-j}`: highest power first, as stored in a [`LaurentTable`].
    pub fn table_coeffs(&self) -> Vec<&BigComplex> {
        self.coeffs.iter().rev().collect()
    }

    /// Decimal `(re, im)` strings, highest power first.
    pub fn decimal_coeffs(&self) -> Vec<(String, String)> {
        self.table_coeffs()
            .into_iter()
            .map(|c| c.to_decimal(self.digits as usize))
            .collect()
    }

    /// As a double-precision table; needs radii exactly matching a region.
    pub fn to_table(&self) -> Result<LaurentTable> {
        let region = self.region.region().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "[{}, {}] is not one of the embedded regions",
                self.region.r_lo, self.region.r_hi
            ))
        })?;
        Ok(LaurentTable::from_decimal(
            self.order,
            region,
            self.n2,
            self.decimal_coeffs(),
        )?)
    }

    /// `U_n(nu)` from the fitted coefficients, in big floats.
    pub fn eval_u(&self, z: &BigComplex) -> BigComplex {
        let nu = nu_big(&z.clone().with_digits(self.digits));
        let inv = nu.inv();
        let mut acc = BigComplex::zero(self.digits);
        for c in &self.coeffs {
            acc = &(&acc * &inv) + c;
        }
        // acc = sum d_k nu^(k - N2)
        &acc * &nu.powi(self.n2)
    }
}

/// Prepared boundary data for one order and node count.
pub struct BoundaryData {
    pub nodes: Vec<Complex64>,
    pub f: Vec<BigComplex>,
    pub digits: u32,
}

impl BoundaryData {
    pub fn new(n: i32, region: &RegionSpec, nb: usize, digits: u32) -> Result<Self> {
        let nodes = boundary_nodes(region, nb)?;
        let f = rhs(n, &nodes, digits)?;
        Ok(BoundaryData { nodes, f, digits })
    }

    pub fn solve(&self, n1: i32, n2: i32, tol: f64) -> Result<LsqSolution> {
        let a = design_matrix(&self.nodes, n1, n2, self.digits)?;
        solve_lsq_rank(&a, &self.f, tol)
    }

    /// Best `(N2, solution)` for a fixed term count over `N2 in 0..=n2_max`.
    pub fn best_for_nt(&self, nt: usize, n2_max: i32, tol: f64) -> Result<(i32, LsqSolution)> {
        let mut best: Option<(i32, LsqSolution)> = None;
        for n2 in 0..=n2_max.min(nt as i32 - 1) {
            let sol = self.solve(nt as i32 - 1 - n2, n2, tol)?;
            if best.as_ref().is_none_or(|b| sol.residual < b.1.residual) {
                best = Some((n2, sol));
            }
        }
        best.ok_or_else(|| Error::InvalidParameter(format!("no window for NT = {nt}")))
    }

    /// Whether some window with `nt` terms reaches `epsilon`.
    fn feasible(&self, nt: usize, epsilon: f64) -> Result<bool> {
        for n2 in 0..=N2_MAX.min(nt as i32 - 1) {
            if self.solve(nt as i32 - 1 - n2, n2, RANK_TOL)?.residual <= epsilon {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Window for a fixed term count: the pure inverse-power window `N2 = 0`
    /// when it reaches `epsilon`, else the smallest residual.
    pub fn select_window(&self, nt: usize, epsilon: f64) -> Result<(i32, LsqSolution)> {
        let pure = self.solve(nt as i32 - 1, 0, RANK_TOL)?;
        if pure.residual <= epsilon {
            return Ok((0, pure));
        }
        self.best_for_nt(nt, N2_MAX, RANK_TOL)
    }
}

/// Smallest term count in `1..=nt_max` with a window reaching `epsilon`,
/// by bisection; `nt_max` itself if none does.
fn minimal_nt(data: &BoundaryData, epsilon: f64, nt_max: usize) -> Result<usize> {
    if !data.feasible(nt_max, epsilon)? {
        return Ok(nt_max);
    }
    let (mut lo, mut hi) = (0, nt_max);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if data.feasible(mid, epsilon)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Term count from the numerical rank of a wide window `k = -64..=N2_MAX`.
pub fn revealed_nt(data: &BoundaryData, tol: f64) -> Result<usize> {
    Ok(data.solve(64, N2_MAX, tol)?.rank)
}

/// Fits `U_n` on `region` to boundary accuracy `epsilon`.
pub fn fit_region(n: i32, region: &RegionSpec, epsilon: f64) -> Result<FitReport> {
    fit_region_with(n, region, epsilon, FIT_DIGITS)
}

pub fn fit_region_with(
    n: i32,
    region: &RegionSpec,
    epsilon: f64,
    digits: u32,
) -> Result<FitReport> {
    if !(-1..=2).contains(&n) {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    if !(1e-22..=1e-10).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "epsilon {epsilon} outside [1e-22, 1e-10]"
        )));
    }
    let mut nb = NB_START;
    loop {
        let data = BoundaryData::new(n, region, nb, digits)?;
        let nt_max = revealed_nt(&data, RANK_TOL)?.min(4 * nb - 1);
        let nt = minimal_nt(&data, epsilon, nt_max)?;
        let (n2, sol) = data.select_window(nt, epsilon)?;
        let mut report = FitReport {
            order: n,
            region: *region,
            n1: nt as i32 - 1 - n2,
            n2,
            nt,
            coeffs: sol.d,
            residual: sol.residual,
            midpoint_error: 0.0,
            rank: sol.rank,
            nodes_per_segment: nb,
            digits,
            epsilon,
        };
        let mids = midpoints(region, nb)?;
        let truth = rhs(n, &mids, digits)?;
        report.midpoint_error = mids
            .iter()
            .zip(&truth)
            .map(|(&z, t)| {
                (&report.eval_u(&BigComplex::from_c64(z, digits)) - t)
                    .abs()
                    .to_f64()
            })
            .fold(0.0, f64::max);
        if report.midpoint_error <= 10.0 * epsilon || nb >= NB_MAX {
            return Ok(report);
        }
        nb *= 2;
    }
}
