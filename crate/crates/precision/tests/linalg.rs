use abramowitz::Complex64;
use abramowitz_precision::linalg::{solve_lsq_rank, BigMatrix};
use abramowitz_precision::{BigComplex, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const D: u32 = 40;

fn c(re: f64, im: f64) -> BigComplex {
    BigComplex::from_c64(Complex64::new(re, im), D)
}

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Vec<BigComplex>> {
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect()
        })
        .collect()
}

fn random_vec(rng: &mut ChaCha8Rng, m: usize) -> Vec<BigComplex> {
    (0..m)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

#[test]
fn identity_system() {
    let n = 6;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let a = BigMatrix::from_rows(rows).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_vec(&mut rng, n);
    let sol = solve_lsq_rank(&a, &f, 1e-24).unwrap();
    assert_eq!(sol.rank, n);
    assert_eq!(sol.residual, 0.0);
    for (d, fi) in sol.d.iter().zip(&f) {
        assert!(d.rel_diff(fi) < 1e-38);
    }
}

#[test]
fn duplicated_column_is_rank_deficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let base = random_matrix(&mut rng, 12, 4);
    let f = random_vec(&mut rng, 12);
    let full = solve_lsq_rank(&BigMatrix::from_rows(base.clone()).unwrap(), &f, 1e-24).unwrap();
    let dup: Vec<Vec<BigComplex>> = base
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.push(r[1].clone());
            r
        })
        .collect();
    let sol = solve_lsq_rank(&BigMatrix::from_rows(dup).unwrap(), &f, 1e-24).unwrap();
    assert_eq!(sol.rank, 4);
    assert!((sol.residual - full.residual).abs() < 1e-30 * full.residual.max(1.0));
    // minimum norm splits the weight of the repeated column evenly
    assert!(sol.d[1].rel_diff(&sol.d[4]) < 1e-30);
    let sum = &sol.d[1] + &sol.d[4];
    assert!(sum.rel_diff(&full.d[1]) < 1e-30);
}

#[test]
fn exact_system_is_reproduced() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = BigMatrix::from_rows(random_matrix(&mut rng, 20, 7)).unwrap();
    let d = random_vec(&mut rng, 7);
    let f = a.mul_vec(&d);
    let sol = solve_lsq_rank(&a, &f, 1e-24).unwrap();
    assert_eq!(sol.rank, 7);
    assert!(sol.residual < 1e-36);
    for (x, y) in sol.d.iter().zip(&d) {
        assert!(x.rel_diff(y) < 1e-34);
    }
}

#[test]
fn residual_is_orthogonal_to_columns() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = BigMatrix::from_rows(random_matrix(&mut rng, 15, 5)).unwrap();
    let f = random_vec(&mut rng, 15);
    let sol = solve_lsq_rank(&a, &f, 1e-24).unwrap();
    let ad = a.mul_vec(&sol.d);
    let r: Vec<BigComplex> = ad.iter().zip(&f).map(|(x, y)| x - y).collect();
    for j in 0..5 {
        let mut dot = BigComplex::zero(D);
        for (aij, ri) in a.column(j).iter().zip(&r) {
            dot = &dot + &(&aij.conj() * ri);
        }
        assert!(dot.abs().to_f64() < 1e-35);
    }
}

#[test]
fn rejects_bad_shapes() {
    let a = BigMatrix::from_rows(vec![vec![c(1.0, 0.0), c(2.0, 0.0)]]).unwrap();
    assert!(solve_lsq_rank(&a, &[c(1.0, 0.0)], 1e-24).is_err());
    let a = BigMatrix::zeros(3, 2, D);
    let f = vec![c(1.0, 0.0); 3];
    assert!(matches!(
        solve_lsq_rank(&a, &f, 1e-24),
        Err(Error::Degenerate(_))
    ));
    let a = BigMatrix::from_rows(vec![vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]]).unwrap();
    assert!(solve_lsq_rank(&a, &f[..2], 0.0).is_err());
    assert!(solve_lsq_rank(&a, &f, 1e-24).is_err());
    assert!(BigMatrix::from_rows(vec![vec![c(1.0, 0.0)], vec![]]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn column_scaling_is_absorbed(seed in any::<u64>(), e in -12i32..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = random_matrix(&mut rng, 10, 4);
        let f = random_vec(&mut rng, 10);
        let a = BigMatrix::from_rows(rows).unwrap();
        let mut b = a.clone();
        let s = rug::Float::with_val(a.get(0, 0).prec(), 10f64.powi(e));
        b.scale_column(2, &s);
        let x = solve_lsq_rank(&a, &f, 1e-24).unwrap();
        let y = solve_lsq_rank(&b, &f, 1e-24).unwrap();
        prop_assert!((x.residual - y.residual).abs() <= 1e-30);
        let back = y.d[2].scale(&s);
        prop_assert!(back.rel_diff(&x.d[2]) < 1e-30);
    }
}
