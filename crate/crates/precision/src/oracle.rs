//! Arbitrary-precision reference values of `J_n`, `e^nu J_n` and `U_n`.
//!
//! Two independent constructions:
//!
//! * the logarithmic power series about the origin, summed at a working
//!   precision that grows with `|z|` to absorb cancellation;
//! * the defining integral after the substitution `t = t0 s`,
//!   `t0 = (z/2)^(1/3)`, which moves the saddle to `s = 1`:
//!   `e^nu J_n(z) = t0^(n+1) int_0^inf s^n exp(-(nu/3) phi(s)) ds`,
//!   `phi(s) = (s-1)^2 (s+2)/s >= 0`. The rotated ray stays inside the
//!   sector where the integrand decays, so the integral is absolutely
//!   convergent for every `Re z >= 0`, including the imaginary axis.
//!   `[0,1]` is handled by tanh-sinh and `[1,inf)` by exp-sinh.

use rug::ops::Pow;
use rug::Float;

use crate::big::{bits_for, euler_gamma, pi, sin_cos, ten_pow_neg, BigComplex};
use crate::error::{Error, Result};

/// Default precision of test oracles.
pub const TEST_DIGITS: u32 = 30;
/// Default precision of fitting right-hand sides.
pub const FIT_DIGITS: u32 = 50;
/// Smallest accepted target precision.
pub const MIN_DIGITS: u32 = 30;
/// The series is used up to this modulus, the quadrature beyond.
pub const SERIES_CUTOFF: f64 = 700.0;

const MAX_LEVEL: u32 = 13;

fn check_target(target: u32) -> Result<()> {
    if target < MIN_DIGITS {
        return Err(Error::InvalidParameter(format!(
            "target precision must be at least {MIN_DIGITS} digits, got {target}"
        )));
    }
    Ok(())
}

fn check_argument(z: &BigComplex) -> Result<()> {
    if !z.is_finite() {
        return Err(abramowitz::Error::NonFinite.into());
    }
    if z.re.is_sign_negative() && !z.re.is_zero() {
        return Err(abramowitz::Error::LeftHalfPlane.into());
    }
    Ok(())
}

/// `digits of cancellation` allowance of the series at modulus `r`.
pub fn cancellation_guard(r: f64) -> u32 {
    (0.30 * r).ceil() as u32 + 20
}

/// Working precision of the series oracle.
pub fn series_working_digits(target: u32, r: f64) -> u32 {
    target + cancellation_guard(r) + 10
}

/// `nu = 3 (z/2)^(2/3)` on the principal branch.
pub fn nu_big(z: &BigComplex) -> BigComplex {
    let p = z.prec();
    let two_thirds = Float::with_val(p, 2) / 3u32;
    z.scale_f64(0.5).powf(&two_thirds).scale_f64(3.0)
}

/// `J_n(0) = Gamma((n+1)/2) / 2` for `n >= 0`.
fn value_at_origin(n: i32, digits: u32) -> Result<BigComplex> {
    if n < 0 {
        return Err(abramowitz::Error::SingularAtOrigin(n).into());
    }
    let p = bits_for(digits + 5);
    let g = Float::with_val(p, f64::from(n + 1) / 2.0).gamma() / 2u32;
    Ok(BigComplex::real(g, digits))
}

/// `J_{-1..=2}(z)` from the series, summed at working precision `w` digits.
fn series_raw_all(z: &BigComplex, w: u32) -> [BigComplex; 4] {
    let p = bits_for(w);
    let z = z.clone().with_digits(w);
    let lnz = z.ln();
    let gamma = euler_gamma(p);
    let sqrt_pi = pi(p).sqrt();

    // Coefficients of 2 J_1; the other orders are read off them.
    let mut a: Vec<Float> = vec![Float::new(p), Float::new(p), Float::with_val(p, -1)];
    let mut b: Vec<Float> = vec![
        Float::with_val(p, 1),
        Float::with_val(p, -&sqrt_pi),
        Float::with_val(p, 1.5 * (Float::with_val(p, 1) - &gamma)),
    ];
    let grow = |a: &mut Vec<Float>, b: &mut Vec<Float>| {
        let k = a.len() as u32;
        let denom = u64::from(k) * u64::from(k - 1) * u64::from(k - 2);
        let ak = Float::with_val(p, &a[k as usize - 2] * -2i32) / denom;
        let poly = 3 * u64::from(k) * u64::from(k) - 6 * u64::from(k) + 2;
        let bk = -(Float::with_val(p, &b[k as usize - 2] * 2u32) + Float::with_val(p, &ak * poly))
            / denom;
        a.push(ak);
        b.push(bk);
    };

    let mut sums: [(BigComplex, BigComplex); 4] =
        std::array::from_fn(|_| (BigComplex::zero(w), BigComplex::zero(w)));
    let mut zk = BigComplex::from_c64(abramowitz::Complex64::new(1.0, 0.0), w);
    let tol = ten_pow_neg(w as i32 - 5, p);
    let mut small_run = 0;
    let mut k: u32 = 0;
    loop {
        while a.len() < k as usize + 3 {
            grow(&mut a, &mut b);
        }
        let kk = k as usize;
        let kf = Float::with_val(p, k);
        // (a_k, b_k) for n = -1, 0, 1, 2
        let a1 = &a[kk + 1];
        let b1 = &b[kk + 1];
        let a2 = &a[kk + 2];
        let b2 = &b[kk + 2];
        let c_m1 = u64::from(k + 1) * u64::from(k + 2);
        let coeffs: [(Float, Float); 4] = [
            (
                Float::with_val(p, a2 * c_m1),
                Float::with_val(p, b2 * c_m1)
                    + Float::with_val(p, a2 * u64::from(k + 1))
                    + Float::with_val(p, a2 * u64::from(k + 2)),
            ),
            (
                Float::with_val(p, a1 * -(i64::from(k) + 1)),
                Float::with_val(p, b1 * -(i64::from(k) + 1)) - a1,
            ),
            (a[kk].clone(), b[kk].clone()),
            if k == 0 {
                (Float::new(p), Float::with_val(p, &sqrt_pi / 2u32))
            } else {
                let am = &a[kk - 1];
                let bm = &b[kk - 1];
                (
                    -Float::with_val(p, am / &kf),
                    Float::with_val(p, am / &kf) / &kf - Float::with_val(p, bm / &kf),
                )
            },
        ];
        let mut all_small = k >= 3;
        for (j, (ca, cb)) in coeffs.iter().enumerate() {
            let ta = zk.scale(ca);
            let tb = zk.scale(cb);
            let term_mag = Float::with_val(p, ta.abs() * lnz.abs()) + tb.abs();
            sums[j].0 = &sums[j].0 + &ta;
            sums[j].1 = &sums[j].1 + &tb;
            if all_small {
                let total = &(&sums[j].0 * &lnz) + &sums[j].1;
                if term_mag > Float::with_val(p, &tol * &total.abs()) {
                    all_small = false;
                }
            }
        }
        small_run = if all_small { small_run + 1 } else { 0 };
        if small_run >= 2 {
            break;
        }
        zk = &zk * &z;
        k += 1;
    }
    sums.map(|(pa, pb)| (&(&pa * &lnz) + &pb).scale_f64(0.5))
}

/// `J_n(z)` for `n` in `-1..=2` from the logarithmic power series.
pub fn oracle_series(n: i32, z: &BigComplex, target: u32) -> Result<BigComplex> {
    check_target(target)?;
    check_argument(z)?;
    if !(-1..=2).contains(&n) {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    if z.is_zero() {
        return value_at_origin(n, target);
    }
    let w = series_working_digits(target, z.abs().to_f64());
    oracle_series_at(n, z, target, w)
}

/// [`oracle_series`] with an explicit working precision of `working` digits.
pub fn oracle_series_at(n: i32, z: &BigComplex, target: u32, working: u32) -> Result<BigComplex> {
    check_target(target)?;
    check_argument(z)?;
    if !(-1..=2).contains(&n) {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    if z.is_zero() {
        return value_at_origin(n, target);
    }
    let v = series_raw_all(z, working.max(target));
    Ok(v[(n + 1) as usize].clone().with_digits(target))
}

/// `e^nu J_n(z)` for `n = -1, 0, 1, 2` from the series; `z != 0`.
pub fn oracle_series_scaled_all(z: &BigComplex, target: u32) -> Result<[BigComplex; 4]> {
    check_target(target)?;
    check_argument(z)?;
    if z.is_zero() {
        return Err(abramowitz::Error::ZeroArgument.into());
    }
    let w = series_working_digits(target, z.abs().to_f64());
    let e = nu_big(&z.clone().with_digits(w)).exp();
    Ok(series_raw_all(z, w).map(|v| (&v * &e).with_digits(target)))
}

struct QuadNode {
    weight: Float,
    s: Float,
    phi: Float,
}

/// Nodes with `t = j h` over `[lo, hi]`; only odd `j` when `odd_only`.
fn nodes_in(lo: f64, hi: f64, h: f64, odd_only: bool) -> impl Iterator<Item = f64> {
    let j_lo = (lo / h).ceil() as i64;
    let j_hi = (hi / h).floor() as i64;
    (j_lo..=j_hi)
        .filter(move |j| !odd_only || j.rem_euclid(2) == 1)
        .map(move |j| j as f64 * h)
}

fn tanh_sinh_node(t: f64, p: u32, half_pi: &Float) -> QuadNode {
    let t = Float::with_val(p, t);
    let u = Float::with_val(p, half_pi * Float::with_val(p, t.sinh_ref()));
    let e = Float::with_val(p, Float::with_val(p, -2 * u.clone().abs()).exp_ref());
    let one_plus = Float::with_val(p, 1 + &e);
    // near s = 1 keep delta = 1 - s exact; near s = 0 keep s exact
    let (s, delta) = if u.is_sign_positive() {
        (
            Float::with_val(p, 1 / &one_plus),
            Float::with_val(p, &e / &one_plus),
        )
    } else {
        (
            Float::with_val(p, &e / &one_plus),
            Float::with_val(p, 1 / &one_plus),
        )
    };
    let weight =
        Float::with_val(p, half_pi * Float::with_val(p, t.cosh_ref())) * 2u32 * &s * &delta;
    let phi = Float::with_val(p, &delta * &delta) * (3 - delta.clone()) / &s;
    QuadNode { weight, s, phi }
}

fn exp_sinh_node(t: f64, p: u32, half_pi: &Float) -> QuadNode {
    let t = Float::with_val(p, t);
    let v = Float::with_val(p, half_pi * Float::with_val(p, t.sinh_ref())).exp();
    let weight = Float::with_val(p, half_pi * Float::with_val(p, t.cosh_ref())) * &v;
    let s = Float::with_val(p, 1 + &v);
    let phi = Float::with_val(p, &v * &v) * Float::with_val(p, 3 + &v) / &s;
    QuadNode { weight, s, phi }
}

/// `e^nu J_n(z)` for each order in `orders` by quadrature. Orders down to
/// `-2` are accepted for `z != 0`, to check `J_{-2} = 2 J_1 / z`.
pub fn oracle_quadrature_scaled(
    orders: &[i32],
    z: &BigComplex,
    target: u32,
) -> Result<Vec<BigComplex>> {
    check_target(target)?;
    check_argument(z)?;
    if let Some(&n) = orders.iter().find(|&&n| n < -2) {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    if z.is_zero() {
        return orders.iter().map(|&n| value_at_origin(n, target)).collect();
    }
    let wd = target + 15;
    let p = bits_for(wd);
    let z = z.clone().with_digits(wd);
    let third = Float::with_val(p, 1) / 3u32;
    let t0 = z.scale_f64(0.5).powf(&third);
    let kappa = &t0 * &t0;
    let half_pi = pi(p) / 2u32;
    let ln10 = std::f64::consts::LN_10;

    let budget = f64::from(wd + 10) * ln10;
    let ts_span = (budget / std::f64::consts::PI).asinh();
    let es_lo = -(2.0 * budget / std::f64::consts::PI).asinh();
    let kre = kappa.re.to_f64();
    let nmax = f64::from(orders.iter().copied().max().unwrap_or(0).max(0));
    let mut v_max: f64 = 3.0;
    while kre * v_max * v_max - nmax * (1.0 + v_max).ln() < budget + 10.0 {
        v_max *= 1.5;
    }
    let es_hi = (v_max.ln() / std::f64::consts::FRAC_PI_2).asinh();

    let mut acc: Vec<BigComplex> = orders.iter().map(|_| BigComplex::zero(wd)).collect();
    let mut prev: Option<Vec<BigComplex>> = None;
    let tol = ten_pow_neg(target as i32 + 2, p);
    let add_node = |acc: &mut Vec<BigComplex>, node: QuadNode| {
        let m = Float::with_val(p, -Float::with_val(p, &kappa.re * &node.phi)).exp();
        let ang = Float::with_val(p, -Float::with_val(p, &kappa.im * &node.phi));
        let (sin, cos) = sin_cos(&ang, p);
        let base = Float::with_val(p, &m * &node.weight);
        for (slot, &n) in acc.iter_mut().zip(orders) {
            let f = match n {
                0 => base.clone(),
                1 => Float::with_val(p, &base * &node.s),
                -1 => Float::with_val(p, &base / &node.s),
                _ => Float::with_val(p, &base * Float::with_val(p, (&node.s).pow(n))),
            };
            slot.re += Float::with_val(p, &f * &cos);
            slot.im += Float::with_val(p, &f * &sin);
        }
    };

    for level in 0..=MAX_LEVEL {
        let h = 0.5f64.powi(level as i32);
        let odd = level > 0;
        for t in nodes_in(-ts_span, ts_span, h, odd) {
            add_node(&mut acc, tanh_sinh_node(t, p, &half_pi));
        }
        for t in nodes_in(es_lo, es_hi, h, odd) {
            add_node(&mut acc, exp_sinh_node(t, p, &half_pi));
        }
        let current: Vec<BigComplex> = acc.iter().map(|s| s.scale_f64(h)).collect();
        if let Some(prev) = &prev {
            let done = level >= 3
                && current
                    .iter()
                    .zip(prev)
                    .all(|(c, q)| (c - q).abs() <= Float::with_val(p, &tol * &c.abs()));
            if done {
                return Ok(orders
                    .iter()
                    .zip(current)
                    .map(|(&n, s)| (&s * &t0.powi(n + 1)).with_digits(target))
                    .collect());
            }
        }
        prev = Some(current);
    }
    Err(Error::NoConvergence(format!(
        "tanh-sinh/exp-sinh levels exhausted at z = {z}"
    )))
}

/// `J_n(z)` by quadrature.
pub fn oracle_quadrature(n: i32, z: &BigComplex, target: u32) -> Result<BigComplex> {
    let s = oracle_quadrature_scaled(&[n], z, target)?.remove(0);
    if z.is_zero() {
        return Ok(s);
    }
    let zw = z.clone().with_digits(target + 10);
    let e = (-&nu_big(&zw)).exp();
    Ok((&s * &e).with_digits(target))
}

/// `e^nu J_n(z)` for `n = -1, 0, 1, 2`, series below [`SERIES_CUTOFF`] and
/// quadrature beyond.
pub fn oracle_scaled_all(z: &BigComplex, target: u32) -> Result<[BigComplex; 4]> {
    check_argument(z)?;
    if z.is_zero() {
        return Err(abramowitz::Error::ZeroArgument.into());
    }
    if z.abs().to_f64() <= SERIES_CUTOFF {
        oracle_series_scaled_all(z, target)
    } else {
        let v = oracle_quadrature_scaled(&[-1, 0, 1, 2], z, target)?;
        Ok(v.try_into().expect("four orders"))
    }
}

/// Seed precision of the big-float recurrence.
pub fn recurrence_seed_digits(target: u32) -> u32 {
    target + 20
}

/// Working precision of the big-float recurrence at order `n`.
pub fn recurrence_working_digits(n: i32) -> u32 {
    if n >= 100 {
        240
    } else {
        120
    }
}

/// `e^nu J_n(z)` for `n >= 3` by the recurrence `2 J_m = (m-1) J_{m-2} + z J_{m-3}`
/// run in big floats from oracle seeds.
pub fn oracle_recurrence_scaled(n: i32, z: &BigComplex, target: u32) -> Result<BigComplex> {
    check_target(target)?;
    if n < 3 {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    let seed_digits = recurrence_seed_digits(target);
    let work = recurrence_working_digits(n).max(seed_digits);
    let seeds = if z.is_zero() {
        [0, 1, 2].map(|k| value_at_origin(k, seed_digits))
    } else if z.abs().to_f64() <= SERIES_CUTOFF {
        let v = oracle_series_scaled_all(z, seed_digits)?;
        [0, 1, 2].map(|k| Ok(v[k + 1].clone()))
    } else {
        let mut v = oracle_quadrature_scaled(&[0, 1, 2], z, seed_digits)?.into_iter();
        [0, 1, 2].map(|_| Ok(v.next().expect("three seeds")))
    };
    let [s0, s1, s2] = seeds;
    let zw = z.clone().with_digits(work);
    let mut a = s0?.with_digits(work);
    let mut b = s1?.with_digits(work);
    let mut c = s2?.with_digits(work);
    for m in 3..=n {
        let next = (&b.scale_f64(f64::from(m - 1)) + &(&zw * &a)).scale_f64(0.5);
        a = b;
        b = c;
        c = next;
    }
    Ok(c.with_digits(target))
}

/// `e^nu J_n(z)` for any `n >= -1`.
pub fn oracle_j_scaled(n: i32, z: &BigComplex, target: u32) -> Result<BigComplex> {
    match n {
        -1..=2 if z.is_zero() => value_at_origin(n, target),
        -1..=2 => Ok(oracle_scaled_all(z, target)?[(n + 1) as usize].clone()),
        n if n >= 3 => oracle_recurrence_scaled(n, z, target),
        _ => Err(abramowitz::Error::UnsupportedOrder(n).into()),
    }
}

/// `J_n(z)` for any `n >= -1`.
pub fn oracle_j(n: i32, z: &BigComplex, target: u32) -> Result<BigComplex> {
    let s = oracle_j_scaled(n, z, target)?;
    if z.is_zero() {
        return Ok(s);
    }
    let e = (-&nu_big(&z.clone().with_digits(target + 10))).exp();
    Ok((&s * &e).with_digits(target))
}

/// `U_n(nu) = e^nu J_n(z) (nu/3)^(-n/2) / sqrt(pi/3)` for `n = -1..=2`, `z != 0`.
pub fn oracle_u(n: i32, z: &BigComplex, target: u32) -> Result<BigComplex> {
    if !(-1..=2).contains(&n) {
        return Err(abramowitz::Error::UnsupportedOrder(n).into());
    }
    if z.is_zero() {
        return Err(abramowitz::Error::ZeroArgument.into());
    }
    let s = oracle_j_scaled(n, z, target)?;
    Ok(u_from_scaled(n, z, &s, target))
}

/// `U_n` for all four orders from one oracle call.
pub fn oracle_u_all(z: &BigComplex, target: u32) -> Result<[BigComplex; 4]> {
    let s = oracle_scaled_all(z, target)?;
    Ok(std::array::from_fn(|i| {
        u_from_scaled(i as i32 - 1, z, &s[i], target)
    }))
}

fn u_from_scaled(n: i32, z: &BigComplex, scaled: &BigComplex, target: u32) -> BigComplex {
    let w = target + 10;
    let p = bits_for(w);
    let two_thirds = Float::with_val(p, 2) / 3u32;
    let nu3 = z.clone().with_digits(w).scale_f64(0.5).powf(&two_thirds);
    let e = Float::with_val(p, -n) / 2u32;
    let sqrt_pi_3 = Float::with_val(p, pi(p) / 3u32).sqrt();
    let f = nu3.powf(&e);
    let s = scaled.clone().with_digits(w);
    (&s * &f)
        .scale(&Float::with_val(p, 1 / sqrt_pi_3))
        .with_digits(target)
}
