use flo_matlin::rng::stream;
use flo_matlin::*;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn random_skew(d: usize, seed: u64) -> RealMatrix {
    let mut r = stream(seed, 0);
    let m = DMatrix::from_fn(d, d, |_, _| r.gen_range(-1.0..1.0));
    &m - m.transpose()
}

/// Hermitian matrix with entries of size about `scale`.
fn random_hermitian(n: usize, scale: f64, seed: u64) -> ComplexMatrix {
    let mut r = stream(seed, 1);
    let m = DMatrix::from_fn(n, n, |_, _| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    (&m + m.adjoint()) * c(0.5 * scale)
}

/// `U = exp(iH)` with `‖H‖ ≤ radius`, via the eigendecomposition of `H`.
fn near_identity(n: usize, radius: f64, seed: u64) -> ComplexMatrix {
    let h = random_hermitian(n, 1.0, seed);
    let eig = nalgebra::SymmetricEigen::new(h);
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        n,
        eig.eigenvalues.iter().map(|&x| Complex64::from_polar(1.0, radius * x / top)),
    ));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

#[test]
fn skew_reconstruction_500_cases() {
    for case in 0..500u64 {
        let d = 2 * (1 + (case as usize % 20));
        let a = random_skew(d, case);
        let f = skew_normal_form(&a).unwrap();
        let tol = 1e-9 * op_norm(&a).max(1.0);
        assert!(op_norm(&(f.reconstruct() - &a)) <= tol, "case {case}");
        assert!(is_orthogonal(&f.w, 1e-9));
        assert!(f.lambda.as_slice().windows(2).all(|p| p[0] >= p[1]));
        let n = d / 2;
        let core = f.w.transpose() * &a * &f.w;
        for k in 0..n {
            assert!(core[(k, k + n)] >= -1e-12);
        }
    }
}

#[test]
fn rounding_contract_500_pairs() {
    let mut s = stream(11, 0);
    for case in 0..500u64 {
        let n = 2 + (case as usize % 6);
        match case % 3 {
            0 => {
                let b = haar_unitary(n, &mut s).unwrap();
                let e = DMatrix::from_fn(n, n, |_, _| Complex64::new(s.gen_range(-0.3..0.3), s.gen_range(-0.3..0.3)));
                let a = &b + e;
                let r = svd_round(&a, RoundTarget::Unitary).unwrap();
                assert!(op_norm_c(&(r - &b)) <= 2.0 * op_norm_c(&(&a - &b)) + 1e-12);
            }
            1 => {
                let b = haar_special_orthogonal(2 * n, &mut s).unwrap();
                let e = DMatrix::from_fn(2 * n, 2 * n, |_, _| s.gen_range(-0.3..0.3));
                let a = &b + e;
                let r = svd_round_real(&a, RoundTarget::Orthogonal).unwrap();
                assert!(op_norm(&(r - &b)) <= 2.0 * op_norm(&(&a - &b)) + 1e-12);
            }
            _ => {
                let k = 1 + (case as usize % (n - 1));
                let u = haar_unitary(n, &mut s).unwrap();
                let v = u.columns(0, k).into_owned();
                let p = &v * v.adjoint();
                let mut e = random_hermitian(n, 1.0, case);
                let en = op_norm_c(&e);
                e *= c(s.gen_range(0.01..0.45) / en);
                let a = &p + e;
                let r = svd_round(&a, RoundTarget::Projector(k)).unwrap();
                assert!(op_norm_c(&(r - &p)) <= 2.0 * op_norm_c(&(&a - &p)) + 1e-12);
            }
        }
    }
}

#[test]
fn root_contract_500_cases() {
    for case in 0..500u64 {
        let n = 1 + (case as usize % 6);
        let w = near_identity(n, 0.3, case);
        let p = [2u32, 3, 4, 8][case as usize % 4];
        let r = principal_root(&w, p).unwrap();
        let back = (1..p).fold(r.clone(), |acc, _| &acc * &r);
        assert!(op_norm_c(&(back - &w)) <= 1e-9);
    }
}

#[test]
fn root_contraction_near_identity() {
    for case in 0..300u64 {
        let n = 2 + (case as usize % 4);
        let u = near_identity(n, 0.1, 2 * case);
        let v = near_identity(n, 0.1, 2 * case + 1);
        for p in [2u32, 4, 8] {
            let lhs = op_norm_c(&(principal_root(&u, p).unwrap() - principal_root(&v, p).unwrap()));
            let rhs = std::f64::consts::PI / p as f64 * op_norm_c(&(&u - &v));
            assert!(lhs <= rhs + 1e-12);
        }
    }
}

#[test]
fn real_root_stays_real() {
    let mut s = stream(12, 0);
    let q = haar_special_orthogonal(6, &mut s).unwrap();
    let r = principal_root_real(&q, 3).unwrap();
    assert!(is_orthogonal(&r, 1e-10));
    assert!(op_norm(&(&r * &r * &r - &q)) < 1e-9);
}

#[test]
fn haar_unitary_first_moment() {
    let draws = 100_000u64;
    for n in [2usize, 5] {
        let xs: Vec<f64> = (0..draws)
            .map(|i| haar_unitary(n, &mut stream(21, i)).unwrap()[(0, 0)].norm_sqr())
            .collect();
        let mean = xs.iter().sum::<f64>() / draws as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
        let se = (var / draws as f64).sqrt();
        assert!((mean - 1.0 / n as f64).abs() <= 4.0 * se, "n={n} mean={mean}");
    }
}

#[test]
fn haar_orthogonal_first_moment() {
    let draws = 100_000u64;
    let d = 4;
    let xs: Vec<f64> = (0..draws)
        .map(|i| haar_special_orthogonal(d, &mut stream(22, i)).unwrap()[(0, 0)].powi(2))
        .collect();
    let mean = xs.iter().sum::<f64>() / draws as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    assert!((mean - 1.0 / d as f64).abs() <= 4.0 * (var / draws as f64).sqrt());
}

#[test]
fn phase_distance_brute_force_oracle() {
    let mut s = stream(23, 0);
    for _ in 0..20 {
        let u = haar_unitary(3, &mut s).unwrap();
        let v = haar_unitary(3, &mut s).unwrap();
        let brute = (0..20_000)
            .map(|i| {
                let t = -std::f64::consts::PI + i as f64 * std::f64::consts::TAU / 20_000.0;
                op_norm_c(&(&u - &v * Complex64::from_polar(1.0, t)))
            })
            .fold(f64::INFINITY, f64::min);
        let d = phase_distance(&u, &v).unwrap();
        assert!(d <= brute + 1e-7 && brute - d < 1e-3);
    }
}

#[test]
fn haar_is_reproducible_bit_for_bit() {
    let a = haar_unitary(4, &mut stream(5, 17)).unwrap();
    let b = haar_unitary(4, &mut stream(5, 17)).unwrap();
    assert_eq!(a, b);
    let a = haar_special_orthogonal(6, &mut stream(5, 18)).unwrap();
    let b = haar_special_orthogonal(6, &mut stream(5, 18)).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phase_distance_symmetric_and_projective(seed in 0u64..10_000, alpha in -3.0f64..3.0) {
        let mut s = stream(seed, 0);
        let u = haar_unitary(3, &mut s).unwrap();
        let v = haar_unitary(3, &mut s).unwrap();
        let d = phase_distance(&u, &v).unwrap();
        prop_assert!((d - phase_distance(&v, &u).unwrap()).abs() < 1e-7);
        let ua = &u * Complex64::from_polar(1.0, alpha);
        prop_assert!((d - phase_distance(&ua, &v).unwrap()).abs() < 1e-7);
        prop_assert!(d <= op_norm_c(&(&u - &v)) + 1e-12);
    }

    #[test]
    fn skew_form_round_trip(seed in 0u64..10_000, half in 1usize..12) {
        let a = random_skew(2 * half, seed);
        let f = skew_normal_form(&a).unwrap();
        prop_assert!(op_norm(&(f.reconstruct() - &a)) <= 1e-9 * op_norm(&a).max(1.0));
        prop_assert!(f.lambda.iter().all(|&l| l >= 0.0));
    }

    #[test]
    fn unitary_rounding_is_idempotent(seed in 0u64..10_000, n in 1usize..7) {
        let u = haar_unitary(n, &mut stream(seed, 3)).unwrap();
        let r = svd_round(&u, RoundTarget::Unitary).unwrap();
        prop_assert!(op_norm_c(&(r - &u)) < 1e-12);
    }
}

#[test]
fn clustered_spectra_terminate() {
    // Orthogonal matrices a few 1e-3 from the identity used to stall the
    // unbounded Schur iteration.
    let mut r = stream(91, 0);
    for trial in 0..200 {
        let d = 2 * (2 + trial % 4);
        let g = DMatrix::from_fn(d, d, |_, _| r.gen_range(-1.0..1.0));
        let a: RealMatrix = (&g - g.transpose()) * (10f64.powi(-(trial as i32 % 8)) / d as f64);
        let q = a.exp();
        for p in [2, 4, 64] {
            let root = principal_root_real(&q, p).unwrap();
            let back = (1..p).fold(root.clone(), |acc, _| &acc * &root);
            assert!(op_norm(&(back - &q)) < 1e-9);
        }
        let u = to_complex(&q);
        assert!(phase_distance(&u, &u).unwrap() < 1e-9);
        let (eigs, v) = normal_eigen(&u).unwrap();
        assert!(unitarity_residual(&v) < 1e-10);
        assert!(eigs.iter().all(|z| (z.norm() - 1.0).abs() < 1e-10));
    }
}
