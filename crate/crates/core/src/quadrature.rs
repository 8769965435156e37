//! Gauss-Legendre rules on `[-1, 1]`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// N-point rule: increasing symmetric nodes, positive weights summing to 2.
pub fn gauss_legendre(n: usize) -> Result<GaussLegendre> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "Gauss-Legendre rule needs N >= 1".into(),
        ));
    }
    if n == 1 {
        return Ok(GaussLegendre {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // legendre() roots come out in decreasing order
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(GaussLegendre { nodes, weights })
}

impl GaussLegendre {
    /// `int_a^b f(x) dx` for a real integrand.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_rules() {
        let g = gauss_legendre(1).unwrap();
        assert_eq!((g.nodes, g.weights), (vec![0.0], vec![2.0]));
        let g = gauss_legendre(2).unwrap();
        assert_relative_eq!(g.nodes[0], -1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(g.nodes[1], 1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(g.weights[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(g.weights[1], 1.0, max_relative = 1e-15);
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn exact_to_degree_2n_minus_1() {
        let g = gauss_legendre(16).unwrap();
        let v = g.integrate(-1.0, 1.0, |x| x.powi(30));
        assert_relative_eq!(v, 2.0 / 31.0, max_relative = 1e-14);
    }

    #[test]
    fn structure_of_large_rules() {
        for n in [3, 7, 48, 96, 255, 512] {
            let g = gauss_legendre(n).unwrap();
            assert!(g.nodes.windows(2).all(|w| w[0] < w[1]));
            for i in 0..n {
                assert_eq!(g.nodes[i], -g.nodes[n - 1 - i]);
                assert!(g.weights[i] > 0.0);
            }
            assert_relative_eq!(g.weights.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
            if n >= 7 {
                let v = g.integrate(0.0, 1.0, |x| x.exp());
                assert_relative_eq!(v, std::f64::consts::E - 1.0, max_relative = 1e-14);
            }
        }
    }
}
