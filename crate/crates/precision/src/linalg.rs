//! Rank-revealing least squares in big floats.
//!
//! Column-normalized Householder QR with column pivoting, truncated where
//! `|R_kk| < tol |R_11|`, followed by a complete orthogonal decomposition
//! so the returned solution has minimum norm in the retained space.

use rug::Float;

use crate::big::BigComplex;
use crate::error::{Error, Result};

/// Dense matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigComplex>,
}

impl BigMatrix {
    pub fn zeros(rows: usize, cols: usize, digits: u32) -> Self {
        BigMatrix {
            rows,
            cols,
            data: vec![BigComplex::zero(digits); rows * cols],
        }
    }

    /// From row vectors of equal length.
    pub fn from_rows(rows: Vec<Vec<BigComplex>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("ragged or empty matrix".into()));
        }
        let mut data = Vec::with_capacity(m * n);
        for j in 0..n {
            for row in &rows {
                data.push(row[j].clone());
            }
        }
        Ok(BigMatrix {
            rows: m,
            cols: n,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigComplex {
        &self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigComplex) {
        self.data[j * self.rows + i] = v;
    }

    pub fn column(&self, j: usize) -> &[BigComplex] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    fn column_mut(&mut self, j: usize) -> &mut [BigComplex] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Multiplies column `j` by the real `s`.
    pub fn scale_column(&mut self, j: usize, s: &Float) {
        for v in self.column_mut(j) {
            *v = v.scale(s);
        }
    }

    pub fn mul_vec(&self, x: &[BigComplex]) -> Vec<BigComplex> {
        let digits = self.data[0].digits();
        let mut out = vec![BigComplex::zero(digits); self.rows];
        for (j, xj) in x.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.column(j)) {
                *o = &*o + &(a * xj);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LsqSolution {
    pub d: Vec<BigComplex>,
    pub rank: usize,
    /// `max_j |(A d - f)_j|`.
    pub residual: f64,
}

fn norm2(xs: &[BigComplex]) -> Float {
    let p = xs[0].prec();
    let mut s = Float::new(p);
    for x in xs {
        s += Float::with_val(p, &x.re * &x.re);
        s += Float::with_val(p, &x.im * &x.im);
    }
    s.sqrt()
}

/// `sum conj(u_i) y_i`.
fn dot_conj(u: &[BigComplex], y: &[BigComplex]) -> BigComplex {
    let mut acc = BigComplex::zero(u[0].digits());
    for (a, b) in u.iter().zip(y) {
        acc = &acc + &(&a.conj() * b);
    }
    acc
}

/// Reflector `H = I - beta v v^H` with `H x = alpha e_1`; `None` if `x = 0`.
struct Reflector {
    v: Vec<BigComplex>,
    beta: Float,
    alpha: BigComplex,
}

fn reflector(x: &[BigComplex]) -> Option<Reflector> {
    let sigma = norm2(x);
    if sigma.is_zero() {
        return None;
    }
    let p = sigma.prec();
    let a0 = x[0].abs();
    // alpha = -e^{i arg x0} sigma keeps v_0 free of cancellation
    let alpha = if a0.is_zero() {
        BigComplex::real(Float::with_val(p, -&sigma), x[0].digits())
    } else {
        x[0].scale(&Float::with_val(p, -Float::with_val(p, &sigma / &a0)))
    };
    let mut v = x.to_vec();
    v[0] = &v[0] - &alpha;
    let vhv = Float::with_val(
        p,
        2 * Float::with_val(p, &sigma * Float::with_val(p, &sigma + &a0)),
    );
    let beta = Float::with_val(p, 2 / vhv);
    Some(Reflector { v, beta, alpha })
}

impl Reflector {
    /// `y <- H y`.
    fn apply(&self, y: &mut [BigComplex]) {
        let c = dot_conj(&self.v, y).scale(&self.beta);
        for (yi, vi) in y.iter_mut().zip(&self.v) {
            *yi = &*yi - &(vi * &c);
        }
    }
}

/// Least squares `A d ~ f` with numerical rank truncation at `tol`.
pub fn solve_lsq_rank(a: &BigMatrix, f: &[BigComplex], tol: f64) -> Result<LsqSolution> {
    let (m, n) = (a.rows, a.cols);
    if m < n {
        return Err(Error::InvalidParameter(format!("{m} rows < {n} columns")));
    }
    if f.len() != m {
        return Err(Error::InvalidParameter(
            "right-hand side length mismatch".into(),
        ));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance {tol} outside (0, 1)"
        )));
    }
    let p = a.data[0].prec();
    let digits = a.data[0].digits();

    let mut w = a.clone();
    let mut scale = Vec::with_capacity(n);
    for j in 0..n {
        let s = norm2(w.column(j));
        if !s.is_zero() {
            w.scale_column(j, &Float::with_val(p, 1 / &s));
        }
        scale.push(s);
    }
    if scale.iter().all(Float::is_zero) {
        return Err(Error::Degenerate("zero matrix".into()));
    }
    let mut b = f.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    let mut r11 = Float::new(p);
    let tol_f = Float::with_val(p, tol);

    for k in 0..n {
        // pivot on the largest trailing column norm
        let (best, best_norm) = (k..n)
            .map(|j| (j, norm2(&w.column(j)[k..])))
            .max_by(|x, y| x.1.partial_cmp(&y.1).expect("finite norms"))
            .expect("non-empty range");
        if k == 0 {
            r11 = best_norm.clone();
        }
        if best_norm <= Float::with_val(p, &tol_f * &r11) || best_norm.is_zero() {
            break;
        }
        if best != k {
            for i in 0..m {
                w.data.swap(k * m + i, best * m + i);
            }
            perm.swap(k, best);
        }
        let h = reflector(&w.column(k)[k..]).expect("nonzero pivot column");
        for j in k + 1..n {
            h.apply(&mut w.column_mut(j)[k..]);
        }
        h.apply(&mut b[k..]);
        let col = w.column_mut(k);
        col[k] = h.alpha.clone();
        for v in &mut col[k + 1..] {
            *v = BigComplex::zero(digits);
        }
        rank += 1;
    }

    // R = [R11 R12] (rank x n); fold R12 into R11 from the right.
    let mut r: Vec<Vec<BigComplex>> = (0..rank)
        .map(|i| (0..n).map(|j| w.get(i, j).clone()).collect())
        .collect();
    let mut right: Vec<(usize, Reflector)> = Vec::new();
    if rank < n {
        for i in (0..rank).rev() {
            let idx: Vec<usize> = std::iter::once(i).chain(rank..n).collect();
            let x: Vec<BigComplex> = idx.iter().map(|&j| r[i][j].conj()).collect();
            if let Some(h) = reflector(&x) {
                for row in r.iter_mut().take(i + 1) {
                    // row <- row H, i.e. conj(H conj(row))
                    let mut y: Vec<BigComplex> = idx.iter().map(|&j| row[j].conj()).collect();
                    h.apply(&mut y);
                    for (&j, yj) in idx.iter().zip(y) {
                        row[j] = yj.conj();
                    }
                }
                right.push((i, h));
            }
        }
    }

    // T y = (Q^H f)[..rank]
    let mut y = vec![BigComplex::zero(digits); n];
    for i in (0..rank).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..rank {
            acc = &acc - &(&r[i][j] * &y[j]);
        }
        y[i] = acc.div(&r[i][i]);
    }
    for (i, h) in right.iter().rev() {
        let idx: Vec<usize> = std::iter::once(*i).chain(rank..n).collect();
        let mut x: Vec<BigComplex> = idx.iter().map(|&j| y[j].clone()).collect();
        h.apply(&mut x);
        for (&j, xj) in idx.iter().zip(x) {
            y[j] = xj;
        }
    }

    let mut d = vec![BigComplex::zero(digits); n];
    for (k, &j) in perm.iter().enumerate() {
        d[j] = if scale[j].is_zero() {
            BigComplex::zero(digits)
        } else {
            y[k].scale(&Float::with_val(p, 1 / &scale[j]))
        };
    }
    let ad = a.mul_vec(&d);
    let residual = ad
        .iter()
        .zip(f)
        .map(|(x, y)| (x - y).abs().to_f64())
        .fold(0.0, f64::max);
    Ok(LsqSolution { d, rank, residual })
}
