use flo_florep::{embed_passive, extend_modes, ActiveFlo, Gate, GateList, PassiveFlo};
use flo_gsim::*;
use flo_matlin::{c, haar_special_orthogonal, haar_unitary, op_norm, symplectic_form};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

fn random_active<R: Rng>(n: usize, rng: &mut R) -> ActiveFlo {
    let mut q = haar_special_orthogonal(2 * n, rng).unwrap();
    if rng.gen_bool(0.5) {
        for k in 0..2 * n {
            q[(0, k)] = -q[(0, k)];
        }
    }
    ActiveFlo::new(q).unwrap()
}

fn random_passive<R: Rng>(n: usize, rng: &mut R) -> ActiveFlo {
    embed_passive(&PassiveFlo::new(haar_unitary(n, rng).unwrap()).unwrap())
}

fn diag_rdm(b: &[u8]) -> DMatrix<Complex64> {
    DMatrix::from_diagonal(&DVector::from_iterator(b.len(), b.iter().map(|&x| c(f64::from(x)))))
}

#[test]
fn vacuum_examples() {
    let v = vacuum_state(1);
    assert_eq!(v.gamma(), &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
    for n in 1..=6 {
        let v = vacuum_state(n);
        assert_eq!(v.purity_residual(), 0.0);
        assert_eq!(rdm_from_covariance(&v).d, DMatrix::zeros(n, n));
    }
}

#[test]
fn basis_state_examples() {
    let mut rng = StdRng::seed_from_u64(1);
    for n in 1..=6 {
        assert_eq!(fock_basis_state(&vec![0; n]).unwrap(), vacuum_state(n));
        for eta in 0..=n {
            let b: Vec<u8> = (0..n).map(|j| u8::from(j < eta)).collect();
            assert_eq!(rdm_from_covariance(&fock_basis_state(&b).unwrap()).d, diag_rdm(&b));
        }
        for _ in 0..10 {
            let b: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let s = fock_basis_state(&b).unwrap();
            assert_eq!(rdm_from_covariance(&s).d, diag_rdm(&b));
            for _ in 0..20 {
                assert_eq!(measure_fock(&s, &mut rng).unwrap(), b);
            }
            assert_eq!(outcome_probability(&s, &b).unwrap(), 1.0);
        }
    }
    assert!(fock_basis_state(&[0, 2]).is_err());
}

#[test]
fn apply_flo_examples() {
    let mut rng = StdRng::seed_from_u64(2);
    for n in 1..=5 {
        let s = apply_flo(&vacuum_state(n), &random_active(n, &mut rng)).unwrap();
        assert_eq!(apply_flo(&s, &ActiveFlo::identity(n)).unwrap(), s);
        let moved = apply_flo(&vacuum_state(n), &random_passive(n, &mut rng)).unwrap();
        assert!((moved.gamma() - symplectic_form(n)).amax() < 1e-12);
    }
    assert!(apply_flo(&vacuum_state(2), &ActiveFlo::identity(3)).is_err());
}

#[test]
fn append_vacuum_examples() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 1..=4 {
        for k in 1..=3 {
            assert_eq!(append_vacuum_modes(&vacuum_state(n), k).unwrap(), vacuum_state(n + k));
            let s = apply_flo(&vacuum_state(n), &random_active(n, &mut rng)).unwrap();
            let t = append_vacuum_modes(&s, k).unwrap();
            assert!(t.purity_residual() < 1e-10);
            let d = rdm_from_covariance(&s).d;
            let dt = rdm_from_covariance(&t).d;
            let mut expect = DMatrix::zeros(n + k, n + k);
            expect.view_mut((0, 0), (n, n)).copy_from(&d);
            assert!((dt - expect).camax() < 1e-12);
            // Extending the FLO to the larger register commutes with appending.
            let q = random_active(n, &mut rng);
            let lhs = append_vacuum_modes(&apply_flo(&s, &q).unwrap(), k).unwrap();
            let rhs = apply_flo(&t, &extend_modes(&q, n + k)).unwrap();
            assert!((lhs.gamma() - rhs.gamma()).amax() < 1e-12);
        }
    }
    assert!(append_vacuum_modes(&vacuum_state(1), 0).is_err());
}

#[test]
fn rdm_inverts_number_symmetric_covariance() {
    let mut rng = StdRng::seed_from_u64(4);
    for trial in 0..100 {
        let n = 1 + trial % 6;
        let eta = trial % (n + 1);
        let b: Vec<u8> = (0..n).map(|j| u8::from(j < eta)).collect();
        let s = apply_flo(&fock_basis_state(&b).unwrap(), &random_passive(n, &mut rng)).unwrap();
        let d = rdm_from_covariance(&s).d;
        let (re, im) = (d.map(|z| z.re), d.map(|z| z.im));
        let mut expect = symplectic_form(n);
        let mut blocks = DMatrix::zeros(2 * n, 2 * n);
        blocks.view_mut((0, 0), (n, n)).copy_from(&im);
        blocks.view_mut((0, n), (n, n)).copy_from(&(-&re));
        blocks.view_mut((n, 0), (n, n)).copy_from(&re);
        blocks.view_mut((n, n), (n, n)).copy_from(&im);
        expect += blocks * 2.0;
        assert!((s.gamma() - expect).amax() < 1e-10, "trial {trial}");
        assert!((rdm_from_covariance(&s).trace() - eta as f64).abs() < 1e-10);
    }
}

#[test]
fn t_map_contracts_operator_norm() {
    let mut rng = StdRng::seed_from_u64(5);
    for trial in 0..500 {
        let n = 1 + trial % 6;
        let x = DMatrix::from_fn(2 * n, 2 * n, |_, _| rng.gen_range(-1.0..1.0));
        let t = t_map(&x);
        assert!(flo_matlin::op_norm_c(&t) <= op_norm(&x) + 1e-10, "trial {trial}");
    }
    let n = 3;
    let t = t_map(&DMatrix::identity(2 * n, 2 * n));
    assert!((t - DMatrix::identity(n, n) * Complex64::new(0.0, 1.0)).camax() < 1e-15);
}

#[test]
fn quadratic_expectation_examples() {
    for n in 1..=4 {
        for j in 0..n {
            let v = quadratic_expectation(&vacuum_state(n), &QuadraticObservable::number(j, n)).unwrap();
            assert_eq!(v, 0.0);
        }
    }
    let bad = QuadraticObservable { constant: 0.0, terms: vec![(1, 1, 1.0)] };
    assert!(quadratic_expectation(&vacuum_state(2), &bad).is_err());
    let bad = QuadraticObservable { constant: 0.0, terms: vec![(0, 4, 1.0)] };
    assert!(quadratic_expectation(&vacuum_state(2), &bad).is_err());
}

/// `e^{(π/4)(a₁† a_a† − a_a a₁)}` with `a` the last mode, as a gate pair.
fn pair_preparation(nt: usize) -> ActiveFlo {
    let a = nt - 1;
    let g = GateList {
        n: nt,
        gates: vec![
            Gate::MajoranaRotation { p: 0, q: a, angle: -FRAC_PI_4 },
            Gate::MajoranaRotation { p: nt, q: a + nt, angle: FRAC_PI_4 },
        ],
    };
    ActiveFlo::new(g.one_body()).unwrap()
}

#[test]
fn quadratures_of_paired_state() {
    for n in 1..=3 {
        let nt = n + 1;
        let s = apply_flo(&vacuum_state(nt), &pair_preparation(nt)).unwrap();
        let x = QuadraticObservable::quadrature_x(0, n, nt);
        let y = QuadraticObservable::quadrature_y(0, n, nt);
        assert!((quadratic_expectation(&s, &x).unwrap() - 1.0).abs() < 1e-12);
        assert!(quadratic_expectation(&s, &y).unwrap().abs() < 1e-12);
        for theta in [FRAC_PI_3, -FRAC_PI_3] {
            let u = DMatrix::identity(n, n) * Complex64::from_polar(1.0, theta);
            let q = extend_modes(&embed_passive(&PassiveFlo::new(u).unwrap()), nt);
            let t = apply_flo(&s, &q).unwrap();
            assert!((quadratic_expectation(&t, &x).unwrap() - theta.cos()).abs() < 1e-12);
            assert!((quadratic_expectation(&t, &y).unwrap() - theta.sin()).abs() < 1e-12);
        }
    }
}

#[test]
fn quadrature_rotation_outcomes_estimate_quadratures() {
    let mut rng = StdRng::seed_from_u64(6);
    for trial in 0..50 {
        let n = 2 + trial % 4;
        let s = apply_flo(&vacuum_state(n), &random_active(n, &mut rng)).unwrap();
        let (u, v) = (trial % n, (trial + 1) % n);
        for (phi, obs) in [
            (0.0, QuadraticObservable::quadrature_x(u, v, n)),
            (std::f64::consts::FRAC_PI_2, QuadraticObservable::quadrature_y(u, v, n)),
        ] {
            let t = apply_flo(&s, &quadrature_rotation(u, v, n, phi)).unwrap();
            let d = rdm_from_covariance(&t).d;
            let est = d[(u, u)].re + d[(v, v)].re - 1.0;
            assert!((est - quadratic_expectation(&s, &obs).unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn fepr_examples() {
    let s = fepr_state(1);
    assert_eq!(choi_block(s.gamma()), DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, 1.0]));
    for n in 1..=8 {
        assert_eq!(fepr_preparation(n).det_sign(), 1);
        let sm = sign_matrix(n);
        for j in 0..2 * n {
            assert_eq!(sm[(j, j)], if j % 2 == 0 { -1.0 } else { 1.0 });
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    for n in 1..=5 {
        for _ in 0..10 {
            let q = random_active(n, &mut rng);
            let direct = fepr_covariance_of(&q);
            let via = apply_flo(&fepr_state(n), &extend_modes(&q, 2 * n)).unwrap();
            assert!((direct.gamma() - via.gamma()).amax() < 1e-10);
            let blk = choi_block(direct.gamma());
            assert!((blk - q.matrix() * sign_matrix(n)).amax() < 1e-12);
            let g = block_layout(direct.gamma());
            assert!(g.view((0, 0), (2 * n, 2 * n)).amax() < 1e-12);
            assert!(g.view((2 * n, 2 * n), (2 * n, 2 * n)).amax() < 1e-12);
        }
    }
}

#[test]
fn slater_measurements_conserve_particle_number() {
    let mut rng = StdRng::seed_from_u64(8);
    for trial in 0..60 {
        let n = 1 + trial % 6;
        let eta = trial % (n + 1);
        let b: Vec<u8> = (0..n).map(|j| u8::from(j < eta)).collect();
        let s = apply_flo(&fock_basis_state(&b).unwrap(), &random_passive(n, &mut rng)).unwrap();
        for _ in 0..50 {
            let out = measure_fock(&s, &mut rng).unwrap();
            assert_eq!(out.iter().map(|&x| x as usize).sum::<usize>(), eta);
        }
    }
}

#[test]
fn measurement_probabilities_sum_to_one() {
    let mut rng = StdRng::seed_from_u64(9);
    for n in 1..=6 {
        let s = apply_flo(&vacuum_state(n), &random_active(n, &mut rng)).unwrap();
        let total: f64 = (0..1usize << n)
            .map(|x| {
                let b: Vec<u8> = (0..n).map(|j| ((x >> (n - 1 - j)) & 1) as u8).collect();
                outcome_probability(&s, &b).unwrap()
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-10);
        let sub = measure_modes(&s, &[n - 1], &mut rng).unwrap();
        assert_eq!(sub.len(), 1);
    }
}

#[test]
fn purity_survives_operation_chains() {
    let mut rng = StdRng::seed_from_u64(10);
    let mut s = vacuum_state(2);
    for step in 0..1000 {
        s = match step % 5 {
            0 | 1 => apply_flo(&s, &random_active(s.n(), &mut rng)).unwrap(),
            2 if s.n() < 7 => append_vacuum_modes(&s, 1).unwrap(),
            3 => apply_flo(&s, &random_passive(s.n(), &mut rng)).unwrap(),
            _ => {
                if s.n() >= 7 {
                    vacuum_state(2)
                } else {
                    apply_flo(&s, &random_active(s.n(), &mut rng)).unwrap()
                }
            }
        };
        assert!(s.purity_residual() < 1e-8, "step {step}");
        assert!(s.skew_residual() < 1e-9);
        assert!(GaussianState::new(s.gamma().clone()).is_ok());
    }
}

#[test]
fn json_round_trip() {
    let mut rng = StdRng::seed_from_u64(11);
    let s = apply_flo(&vacuum_state(3), &random_active(3, &mut rng)).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    let back: GaussianState = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s);
    let r = rdm_from_covariance(&s);
    let back: Rdm = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
    let bad = r#"{"n":1,"gamma":{"rows":2,"cols":2,"real":[0.0,2.0,-2.0,0.0]}}"#;
    assert!(serde_json::from_str::<GaussianState>(bad).is_err());
}

proptest! {
    #[test]
    fn rdm_is_a_contraction(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = apply_flo(&vacuum_state(n), &random_active(n, &mut rng)).unwrap();
        let d = rdm_from_covariance(&s).d;
        let eig = d.symmetric_eigenvalues();
        prop_assert!(eig.iter().all(|&x| (-1e-8..=1.0 + 1e-8).contains(&x)));
        prop_assert!((&d - d.adjoint()).camax() == 0.0);
    }

    #[test]
    fn marginals_sum_consistently(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = apply_flo(&vacuum_state(n), &random_active(n, &mut rng)).unwrap();
        let d = rdm_from_covariance(&s).d;
        let mut occ = vec![0.0; n];
        for x in 0..1usize << n {
            let b: Vec<u8> = (0..n).map(|j| ((x >> (n - 1 - j)) & 1) as u8).collect();
            let p = outcome_probability(&s, &b).unwrap();
            for j in 0..n {
                occ[j] += p * f64::from(b[j]);
            }
        }
        for j in 0..n {
            prop_assert!((occ[j] - d[(j, j)].re).abs() < 1e-10);
        }
    }
}
