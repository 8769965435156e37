use std::f64::consts::FRAC_PI_2;

use abramowitz::{eval_laurent_scaled, Complex64, Region, TableSet};
use abramowitz_precision::fitter::*;
use abramowitz_precision::oracle::oracle_u;
use abramowitz_precision::BigComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn boundary_nodes_trace_the_quarter_annulus() {
    let q1 = RegionSpec::new(1.0, 3.0).unwrap();
    let nodes = boundary_nodes(&q1, 2).unwrap();
    assert_eq!(nodes.len(), 8);
    let h = 1.0 / 3f64.sqrt();
    assert!((nodes[0] - Complex64::new(2.0 - h, 0.0)).norm() < 1e-15);
    assert!((nodes[1] - Complex64::new(2.0 + h, 0.0)).norm() < 1e-15);
    // imaginary axis runs inwards
    assert!(nodes[4].re.abs() < 1e-15 && nodes[4].im > nodes[5].im);
    let nodes = boundary_nodes(&q1, 24).unwrap();
    assert_eq!(nodes.len(), 96);
    for z in &nodes {
        let r = z.norm();
        assert!((1.0 - 1e-14..=3.0 + 1e-14).contains(&r));
        assert!(z.re >= -1e-15 && z.im >= -1e-15);
    }
    assert_eq!(midpoints(&q1, 24).unwrap().len(), 92);
}

#[test]
fn region_specs() {
    assert!(RegionSpec::new(0.5, 2.0).is_err());
    assert!(RegionSpec::new(3.0, 3.0).is_err());
    assert!(RegionSpec::new(15.0, 130.0).is_err());
    assert!(RegionSpec::from_region(Region::Series).is_err());
    let q2 = RegionSpec::from_region(Region::Q2).unwrap();
    assert_eq!((q2.r_lo, q2.r_hi), (3.0, 15.0));
    assert_eq!(q2.region(), Some(Region::Q2));
    let parts = sqrt2_partition();
    assert_eq!(parts.len(), 14);
    assert_eq!(parts[0].r_lo, 1.0);
    assert_eq!(parts[13].r_hi, 120.0);
    for w in parts.windows(2) {
        assert_eq!(w[0].r_hi, w[1].r_lo);
    }
}

#[test]
fn design_matrix_powers() {
    // nu(2) = 3
    let a = design_matrix(&[Complex64::new(2.0, 0.0)], 1, 1, 30).unwrap();
    assert_eq!((a.rows(), a.cols()), (1, 3));
    let want = [1.0 / 3.0, 1.0, 3.0];
    for (j, w) in want.iter().enumerate() {
        assert!((a.get(0, j).to_c64() - w).norm() < 1e-15);
    }
    let nodes = boundary_nodes(&RegionSpec::new(3.0, 15.0).unwrap(), 4).unwrap();
    let a = design_matrix(&nodes, 5, 2, 30).unwrap();
    for i in 0..a.rows() {
        assert!((a.get(i, 5).to_c64() - 1.0).norm() < 1e-15);
    }
    assert!(design_matrix(&nodes, -1, 0, 30).is_err());
}

#[test]
fn q3_fit_meets_target_on_boundary_and_inside() {
    let q3 = RegionSpec::from_region(Region::Q3).unwrap();
    // fixed window first
    let data = BoundaryData::new(0, &q3, NB_START, 50).unwrap();
    let sol = data.solve(19, 0, RANK_TOL).unwrap();
    assert!(sol.residual <= 1e-20, "residual {:e}", sol.residual);

    let report = fit_region(0, &q3, 1e-20).unwrap();
    assert_eq!((report.nt, report.n2, report.n1), (20, 0, 19));
    assert!(report.meets_target());
    assert!(report.midpoint_error <= 1e-19);
    assert_eq!(report.coeffs.len(), report.nt);

    // maximum principle: boundary accuracy carries to the interior
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let z = Complex64::from_polar(
            rng.random_range(15.0..120.0),
            rng.random_range(0.0..FRAC_PI_2),
        );
        let zb = BigComplex::from_c64(z, 50);
        let d = (&report.eval_u(&zb) - &oracle_u(0, &zb, 50).unwrap())
            .abs()
            .to_f64();
        worst = worst.max(d);
    }
    assert!(worst <= 1e-19, "interior error {worst:e}");

    let table = report.to_table().unwrap();
    assert_eq!(table.n2, 0);
    let emb = TableSet::embedded().get(0, Region::Q3).unwrap();
    for _ in 0..200 {
        let z = Complex64::from_polar(
            rng.random_range(15.0..120.0),
            rng.random_range(-FRAC_PI_2..FRAC_PI_2),
        );
        let a = eval_laurent_scaled(z, &table).unwrap();
        let b = eval_laurent_scaled(z, emb).unwrap();
        assert!((a - b).norm() <= 1e-14 * b.norm());
    }
    let text = report.decimal_coeffs();
    assert_eq!(text.len(), 20);
}

#[test]
fn fit_rejects_bad_input() {
    let q3 = RegionSpec::from_region(Region::Q3).unwrap();
    assert!(fit_region(3, &q3, 1e-20).is_err());
    assert!(fit_region(0, &q3, 1e-5).is_err());
    let odd = RegionSpec::new(2.0, 5.0).unwrap();
    let r = FitReport {
        order: 0,
        region: odd,
        n1: 0,
        n2: 0,
        nt: 1,
        coeffs: vec![BigComplex::zero(30)],
        residual: 1.0,
        midpoint_error: 1.0,
        rank: 1,
        nodes_per_segment: 2,
        digits: 30,
        epsilon: 1e-20,
    };
    assert!(!r.meets_target());
    assert!(r.to_table().is_err());
}
