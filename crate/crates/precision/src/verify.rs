//! Accuracy sweeps, recurrence stability, timing and the zero count.
//!
//! Errors are measured on scaled values `e^nu J_n`, which removes the
//! condition number `|nu|` of the exponential itself.

use std::f64::consts::{FRAC_PI_2, PI};
use std::hint::black_box;
use std::time::Instant;

use abramowitz::{gauss_legendre, Complex64, Evaluator, Region};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::big::BigComplex;
use crate::error::{Error, Result};
use crate::fitter::RegionSpec;
use crate::oracle::{oracle_recurrence_scaled, oracle_scaled_all, TEST_DIGITS};

/// Outer radius used to sample the unbounded asymptotic region.
pub const ASYMPTOTIC_SWEEP_MAX: f64 = 1000.0;
/// Smallest accepted sweep size.
pub const MIN_SWEEP: usize = 100;
/// Smallest accepted benchmark size.
pub const MIN_BENCH: usize = 100_000;

const BENCH_REPEATS: usize = 5;
const ZERO_COUNT_TOL: f64 = 1e-8;
const ZERO_COUNT_MAX_NODES: usize = 8192;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepStats {
    pub order: i32,
    /// `None` for a sweep over the whole sampled domain.
    pub region: Option<Region>,
    pub count: usize,
    pub max_rel_err: f64,
    pub mean_rel_err: f64,
}

impl SweepStats {
    fn from_errors(order: i32, region: Option<Region>, errs: &[f64]) -> Self {
        let max_rel_err = errs.iter().copied().fold(0.0, f64::max);
        let mean_rel_err = if errs.is_empty() {
            0.0
        } else {
            errs.iter().sum::<f64>() / errs.len() as f64
        };
        SweepStats {
            order,
            region,
            count: errs.len(),
            max_rel_err,
            mean_rel_err,
        }
    }
}

/// Radial sampling range of a region; the asymptotic region is cut at
/// [`ASYMPTOTIC_SWEEP_MAX`].
pub fn sweep_bounds(region: Region) -> (f64, f64) {
    let (lo, hi) = region.bounds();
    (lo, hi.min(ASYMPTOTIC_SWEEP_MAX))
}

/// `count` points uniform in modulus on `[r_lo, r_hi)` and in angle on
/// `[-pi/2, pi/2]`.
pub fn sample_points(count: usize, r_lo: f64, r_hi: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.random_range(r_lo..r_hi);
            let theta = rng.random_range(-FRAC_PI_2..=FRAC_PI_2);
            let z = Complex64::from_polar(r, theta);
            // cos(pi/2) is 6e-17, not 0
            Complex64::new(z.re.max(0.0), z.im)
        })
        .collect()
}

fn rel_err(got: Complex64, want: &BigComplex) -> f64 {
    let w = want.to_c64();
    (got - w).norm() / w.norm()
}

fn check_count(count: usize) -> Result<()> {
    if count < MIN_SWEEP {
        return Err(Error::InvalidParameter(format!(
            "sweep needs at least {MIN_SWEEP} points, got {count}"
        )));
    }
    Ok(())
}

/// Scaled relative error of the evaluator against the 30-digit oracle.
pub fn error_sweep(n: i32, region: Region, count: usize, seed: u64) -> Result<SweepStats> {
    Ok(error_sweep_all(region, count, seed)?
        .into_iter()
        .find(|s| s.order == n)
        .ok_or(abramowitz::Error::UnsupportedOrder(n))?)
}

/// [`error_sweep`] for the four orders `-1..=2` at once, sharing oracle calls.
pub fn error_sweep_all(region: Region, count: usize, seed: u64) -> Result<Vec<SweepStats>> {
    check_count(count)?;
    let (lo, hi) = sweep_bounds(region);
    let lo = if region == Region::Series {
        f64::MIN_POSITIVE
    } else {
        lo
    };
    let pts = sample_points(count, lo, hi, seed);
    let eval = Evaluator::new();
    let errs: Vec<[f64; 4]> = pts
        .par_iter()
        .map(|&z| {
            let want = oracle_scaled_all(&BigComplex::from_c64(z, TEST_DIGITS), TEST_DIGITS)?;
            let mut e = [0.0; 4];
            for (k, w) in want.iter().enumerate() {
                e[k] = rel_err(eval.eval_scaled(k as i32 - 1, z)?, w);
            }
            Ok(e)
        })
        .collect::<Result<_>>()?;
    Ok((0..4)
        .map(|k| {
            let col: Vec<f64> = errs.iter().map(|e| e[k]).collect();
            SweepStats::from_errors(k as i32 - 1, Some(region), &col)
        })
        .collect())
}

/// Forward recurrence against the big-float recurrence, over
/// `{Re z >= 0, 0 < |z| < rmax}`. The first entry covers the whole domain,
/// followed by one entry per region that received points.
pub fn recurrence_sweep(n: i32, count: usize, rmax: f64, seed: u64) -> Result<Vec<SweepStats>> {
    check_count(count)?;
    if n < 3 {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    if !(rmax > 0.0 && rmax.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "rmax must be positive, got {rmax}"
        )));
    }
    let pts = sample_points(count, f64::MIN_POSITIVE, rmax, seed);
    let errs: Vec<(Region, f64)> = pts
        .par_iter()
        .map(|&z| {
            let want =
                oracle_recurrence_scaled(n, &BigComplex::from_c64(z, TEST_DIGITS), TEST_DIGITS)?;
            let got = abramowitz::eval_forward_scaled(n, z)?;
            Ok((abramowitz::classify_region(z)?, rel_err(got, &want)))
        })
        .collect::<Result<_>>()?;
    let all: Vec<f64> = errs.iter().map(|e| e.1).collect();
    let mut out = vec![SweepStats::from_errors(n, None, &all)];
    for region in Region::ALL {
        let sub: Vec<f64> = errs.iter().filter(|e| e.0 == region).map(|e| e.1).collect();
        if !sub.is_empty() {
            out.push(SweepStats::from_errors(n, Some(region), &sub));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub count: usize,
    /// Scaled evaluation time over complex exponential time.
    pub ratio: f64,
    pub ns_per_eval: f64,
    pub ns_per_exp: f64,
    /// Nanoseconds per scaled evaluation with all points in one region.
    pub per_region: Vec<(Region, f64)>,
}

impl BenchReport {
    /// Slowest over fastest region.
    pub fn region_spread(&self) -> f64 {
        let ns = self.per_region.iter().map(|r| r.1);
        let hi = ns.clone().fold(0.0, f64::max);
        let lo = ns.fold(f64::INFINITY, f64::min);
        hi / lo
    }
}

fn median_ns<F: FnMut() -> Complex64>(count: usize, mut run: F) -> f64 {
    let mut times: Vec<f64> = (0..BENCH_REPEATS)
        .map(|_| {
            let t = Instant::now();
            black_box(run());
            t.elapsed().as_secs_f64() * 1e9 / count as f64
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[BENCH_REPEATS / 2]
}

fn time_eval(eval: &Evaluator, inputs: &[(i32, Complex64)]) -> f64 {
    median_ns(inputs.len(), || {
        let mut sum = Complex64::new(0.0, 0.0);
        for &(n, z) in inputs {
            sum += eval
                .eval_scaled(black_box(n), black_box(z))
                .unwrap_or_default();
        }
        sum
    })
}

/// Timing of `count` scaled evaluations against `count` complex exponentials
/// of the same arguments, median of five runs on the calling thread.
pub fn bench_ratio(count: usize, seed: u64) -> Result<BenchReport> {
    if count < MIN_BENCH {
        return Err(Error::InvalidParameter(format!(
            "bench needs at least {MIN_BENCH} points, got {count}"
        )));
    }
    let eval = Evaluator::new();
    let with_orders = |pts: Vec<Complex64>| -> Vec<(i32, Complex64)> {
        pts.into_iter()
            .enumerate()
            .map(|(i, z)| ((i % 4) as i32 - 1, z))
            .collect()
    };
    let inputs = with_orders(sample_points(
        count,
        f64::MIN_POSITIVE,
        ASYMPTOTIC_SWEEP_MAX,
        seed,
    ));
    let ns_per_eval = time_eval(&eval, &inputs);
    let ns_per_exp = median_ns(count, || {
        let mut sum = Complex64::new(0.0, 0.0);
        for &(_, z) in &inputs {
            sum += black_box(z).exp();
        }
        sum
    });
    let per_region = Region::ALL
        .iter()
        .map(|&region| {
            let (lo, hi) = sweep_bounds(region);
            let lo = lo.max(f64::MIN_POSITIVE);
            let pts = with_orders(sample_points(count / 5, lo, hi, seed));
            (region, time_eval(&eval, &pts))
        })
        .collect();
    Ok(BenchReport {
        count,
        ratio: ns_per_eval / ns_per_exp,
        ns_per_eval,
        ns_per_exp,
        per_region,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCountResult {
    pub order: i32,
    pub region: RegionSpec,
    /// `int -J_{n-1}/J_n dz` around the positively oriented boundary.
    pub integral: Complex64,
    /// Nearest integer to `integral / (2 pi i)`.
    pub zeros: i64,
    /// `|integral / (2 pi i) - zeros|`.
    pub residual: f64,
    /// Gauss-Legendre nodes per segment at convergence.
    pub nodes_per_segment: usize,
}

/// `dz/dx` along boundary segment `seg` for `x in [-1, 1]`.
fn segment_derivative(region: &RegionSpec, seg: usize, z: Complex64) -> Complex64 {
    let half = 0.5 * (region.r_hi - region.r_lo);
    let i = Complex64::i();
    match seg {
        0 => Complex64::new(half, 0.0),
        1 => i * z * (FRAC_PI_2 / 2.0),
        2 => Complex64::new(0.0, -half),
        3 => -i * z * (FRAC_PI_2 / 2.0),
        _ => unreachable!(),
    }
}

/// `J_{n-1}/J_n` from scaled values; `J_{-2} = 2 J_1 / z`.
fn log_derivative_ratio(eval: &Evaluator, n: i32, z: Complex64) -> Result<Complex64> {
    let jn = eval.eval_scaled(n, z)?;
    let jm = if n == -1 {
        eval.eval_scaled(1, z)? * 2.0 / z
    } else {
        eval.eval_scaled(n - 1, z)?
    };
    Ok(jm / jn)
}

fn contour_integral(eval: &Evaluator, n: i32, region: &RegionSpec, nb: usize) -> Result<Complex64> {
    let rule = gauss_legendre(nb)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for seg in 0..4 {
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let z = region.segment_point(seg, x);
            sum -= w * log_derivative_ratio(eval, n, z)? * segment_derivative(region, seg, z);
        }
    }
    Ok(sum)
}

/// Zeros of `J_n` inside the quarter annulus by the argument principle,
/// doubling the nodes per segment until the integral changes by < 1e-8.
pub fn zero_count(
    n: i32,
    r_lo: f64,
    r_hi: f64,
    nodes_per_segment: usize,
) -> Result<ZeroCountResult> {
    if !(-1..=2).contains(&n) {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    let region = RegionSpec::new(r_lo, r_hi)?;
    if nodes_per_segment == 0 {
        return Err(Error::InvalidParameter(
            "need at least one node per segment".into(),
        ));
    }
    let eval = Evaluator::new();
    let mut nb = nodes_per_segment;
    let mut prev = contour_integral(&eval, n, &region, nb)?;
    loop {
        if 2 * nb > ZERO_COUNT_MAX_NODES {
            return Err(Error::NoConvergence(format!(
                "contour integral for n = {n} still changing at {nb} nodes per segment"
            )));
        }
        nb *= 2;
        let next = contour_integral(&eval, n, &region, nb)?;
        let change = (next - prev).norm();
        prev = next;
        if change < ZERO_COUNT_TOL {
            break;
        }
    }
    let winding = prev / Complex64::new(0.0, 2.0 * PI);
    let zeros = winding.re.round();
    Ok(ZeroCountResult {
        order: n,
        region,
        integral: prev,
        zeros: zeros as i64,
        residual: (winding - zeros).norm(),
        nodes_per_segment: nb,
    })
}
