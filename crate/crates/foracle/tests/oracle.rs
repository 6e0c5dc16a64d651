mod common;

use common::*;
use flo_florep::{compile_active, compile_passive, ActiveFlo, Gate, GateList, PassiveFlo};
use flo_foracle::{
    dense_apply, diamond_distance, exact_quantities, fock_unitary, hull_distance_from_origin,
    moment_bounds_check, trace_distance, wick_four_point, wick_two_point, DenseState, Oracle,
    OracleError,
};
use flo_matlin::{haar_unitary, op_norm, phase_distance, symplectic_form};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn c0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

#[test]
fn empty_gate_list_is_identity() {
    let mut rng = StdRng::seed_from_u64(1);
    let q = random_active(3, 1, &mut rng);
    let s = Oracle::default().prepare(&q, &[1, 0, 1]).unwrap();
    let out = dense_apply(&GateList { n: 3, gates: vec![] }, &s).unwrap();
    assert_eq!(out, s);
}

#[test]
fn reflection_swaps_vacuum_and_first_mode() {
    for n in 1..=4 {
        let g = GateList { n, gates: vec![Gate::Reflection] };
        let mut first = vec![0u8; n];
        first[0] = 1;
        let out = dense_apply(&g, &DenseState::vacuum(n)).unwrap();
        assert!((out.inner(&DenseState::basis(&first)).norm() - 1.0).abs() < 1e-12);
        let back = dense_apply(&g, &DenseState::basis(&first)).unwrap();
        assert!((back.inner(&DenseState::vacuum(n)).norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn cap_is_enforced() {
    let oracle = Oracle { cap: 3 };
    let err = oracle.apply(&GateList { n: 4, gates: vec![] }, &DenseState::vacuum(4));
    assert!(matches!(err, Err(OracleError::CapExceeded { n: 4, cap: 3 })));
}

#[test]
fn one_body_fidelity() {
    let mut rng = StdRng::seed_from_u64(2);
    for n in 1..=5 {
        let gam: Vec<_> = (0..2 * n).map(|p| majorana_matrix(p, n)).collect();
        for det in [1i8, -1] {
            for _ in 0..50 {
                let q = random_active(n, det, &mut rng);
                let u = fock_unitary(&q).unwrap();
                assert!(flo_matlin::unitarity_residual(&u) < 1e-10);
                for p in 0..2 * n {
                    let lhs = u.adjoint() * &gam[p] * &u;
                    let mut rhs = DMatrix::<Complex64>::zeros(1 << n, 1 << n);
                    for (k, g) in gam.iter().enumerate() {
                        rhs += g * Complex64::new(q.matrix()[(p, k)], 0.0);
                    }
                    assert!((lhs - rhs).camax() < 1e-8, "n={n} det={det} p={p}");
                }
            }
        }
    }
}

#[test]
fn norm_preserved() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 1..=6 {
        let q = random_active(n, if n % 2 == 0 { 1 } else { -1 }, &mut rng);
        let s = Oracle::default().prepare(&q, &random_bits(n, &mut rng)).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn exact_quantities_of_basis_states() {
    for n in 1..=5 {
        let e = exact_quantities(&DenseState::vacuum(n));
        assert!(e.rdm.camax() < 1e-14);
        assert!((e.covariance - symplectic_form(n)).amax() < 1e-14);
        assert_eq!(e.num1, 0.0);
        for eta in 0..=n {
            let b: Vec<u8> = (0..n).map(|j| u8::from(j < eta)).collect();
            let e = exact_quantities(&DenseState::basis(&b));
            assert!((e.num1 - eta as f64).abs() < 1e-12);
            assert!((e.num2 - (eta * eta) as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn gsim_agreement() {
    let mut rng = StdRng::seed_from_u64(4);
    for trial in 0..200 {
        let n = 1 + trial % 6;
        let q = random_active(n, if trial % 3 == 0 { -1 } else { 1 }, &mut rng);
        let b = random_bits(n, &mut rng);
        let dense = Oracle::default().prepare(&q, &b).unwrap();
        let e = exact_quantities(&dense);
        let g = flo_gsim::apply_flo(&flo_gsim::fock_basis_state(&b).unwrap(), &q).unwrap();
        assert!((g.gamma() - &e.covariance).amax() < 1e-9, "covariance, trial {trial}");
        let d = flo_gsim::rdm_from_covariance(&g).d;
        assert!((d - &e.rdm).camax() < 1e-9, "rdm, trial {trial}");
        for x in 0..1usize << n {
            let bits: Vec<u8> = (0..n).map(|j| ((x >> (n - 1 - j)) & 1) as u8).collect();
            let p = flo_gsim::outcome_probability(&g, &bits).unwrap();
            assert!((p - e.probs[x]).abs() < 1e-9, "prob, trial {trial}");
        }
    }
}

#[test]
fn gsim_sampling_matches_dense_distribution() {
    let mut rng = StdRng::seed_from_u64(5);
    for n in [2, 4, 6] {
        let q = random_active(n, 1, &mut rng);
        let b = random_bits(n, &mut rng);
        let e = exact_quantities(&Oracle::default().prepare(&q, &b).unwrap());
        let g = flo_gsim::apply_flo(&flo_gsim::fock_basis_state(&b).unwrap(), &q).unwrap();
        let shots = 100_000;
        let mut counts = vec![0usize; 1 << n];
        for _ in 0..shots {
            let out = flo_gsim::measure_fock(&g, &mut rng).unwrap();
            counts[out.iter().fold(0, |a, &x| (a << 1) | x as usize)] += 1;
        }
        let tv: f64 = counts
            .iter()
            .zip(&e.probs)
            .map(|(&k, &p)| (k as f64 / shots as f64 - p).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv <= 0.02, "n={n}: total variation {tv}");
    }
}

#[test]
fn pair_preparation_gate() {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
    for nt in 2..=4 {
        let a = nt - 1;
        let g = GateList {
            n: nt,
            gates: vec![
                Gate::MajoranaRotation { p: 0, q: a, angle: -FRAC_PI_4 },
                Gate::MajoranaRotation { p: nt, q: a + nt, angle: FRAC_PI_4 },
            ],
        };
        let out = dense_apply(&g, &DenseState::vacuum(nt)).unwrap();
        let mut pair = vec![0u8; nt];
        pair[0] = 1;
        pair[a] = 1;
        let mut expect = DenseState::vacuum(nt);
        expect.amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        expect.amps = expect
            .amps
            .iter()
            .zip(&DenseState::basis(&pair).amps)
            .map(|(x, y)| x + y * FRAC_1_SQRT_2)
            .collect();
        assert!((out.inner(&expect) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn quadratures_match_dense_operators() {
    let mut rng = StdRng::seed_from_u64(6);
    for trial in 0..40 {
        let n = 2 + trial % 3;
        let q = random_active(n, 1, &mut rng);
        let b = random_bits(n, &mut rng);
        let psi = Oracle::default().prepare(&q, &b).unwrap();
        let g = flo_gsim::apply_flo(&flo_gsim::fock_basis_state(&b).unwrap(), &q).unwrap();
        let (u, v) = (0, n - 1);
        // ⟨a_u† a_v†⟩ = (a_u ψ)†(a_v† ψ); ⟨a_v a_u⟩ is its conjugate.
        let pair = lower(u, &psi).inner(&raise(v, &psi));
        let x_dense = 2.0 * pair.re;
        let y_dense = -2.0 * pair.im;
        let x = flo_gsim::quadratic_expectation(&g, &flo_gsim::QuadraticObservable::quadrature_x(u, v, n))
            .unwrap();
        let y = flo_gsim::quadratic_expectation(&g, &flo_gsim::QuadraticObservable::quadrature_y(u, v, n))
            .unwrap();
        assert!((x - x_dense).abs() < 1e-9, "X trial {trial}: {x} vs {x_dense}");
        assert!((y - y_dense).abs() < 1e-9, "Y trial {trial}: {y} vs {y_dense}");
        for (phi, target) in [(0.0, x_dense), (std::f64::consts::FRAC_PI_2, y_dense)] {
            let z = flo_gsim::quadrature_rotation(u, v, n, phi);
            let rotated = dense_apply(&compile_active(&z), &psi).unwrap();
            let occ = exact_quantities(&rotated).rdm;
            let val = occ[(u, u)].re + occ[(v, v)].re - 1.0;
            assert!((val - target).abs() < 1e-9, "rotation phi={phi} trial {trial}");
        }
    }
}

#[test]
fn wick_tables_trivial_cases() {
    let n = 4;
    let mut c = DMatrix::<Complex64>::zeros(n, n);
    c[(0, 0)] = Complex64::new(1.0, 0.0);
    let t = wick_two_point(&ActiveFlo::identity(n), &c);
    assert!((&t.bd_b - &c).camax() < 1e-14);
    assert!(t.bd_bd.camax() < 1e-14);
    assert!((wick_four_point(&t, 0, 0).re - 1.0).abs() < 1e-14);
    assert!(wick_four_point(&t, 0, 1).norm() < 1e-14);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let z = random_active(n, 1, &mut rng);
        let t = wick_two_point(&z, &c);
        assert!(t.car_residual() < 1e-9);
        for j in 0..n {
            for k in 0..n {
                let d = wick_four_point(&t, j, k) - wick_four_point(&t, k, j).conj();
                assert!(d.norm() < 1e-10);
            }
        }
    }
}

fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> DVector<Complex64> {
    let v = DVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

#[test]
fn wick_tables_match_dense() {
    let mut rng = StdRng::seed_from_u64(8);
    for trial in 0..60 {
        let n = 1 + trial % 5;
        let z = random_active(n, if trial % 2 == 0 { 1 } else { -1 }, &mut rng);
        let psi = random_unit_vector(n, &mut rng);
        let phi = DenseState::single_particle(psi.as_slice());
        let c = DMatrix::from_fn(n, n, |p, q| psi[p].conj() * psi[q]);
        assert!((exact_quantities(&phi).rdm - &c).camax() < 1e-12);
        let t = wick_two_point(&z, &c);
        // b_j = Φ(Z)† a_j Φ(Z), so ⟨φ| b… |φ⟩ = ⟨Φ(Z)φ| a… |Φ(Z)φ⟩.
        let s = dense_apply(&compile_active(&z), &phi).unwrap();
        let lo: Vec<_> = (0..n).map(|k| lower(k, &s)).collect();
        let hi: Vec<_> = (0..n).map(|k| raise(k, &s)).collect();
        for j in 0..n {
            for k in 0..n {
                let bd_b = lo[j].inner(&lo[k]);
                let bd_bd = lo[j].inner(&hi[k]);
                let b_bd = hi[j].inner(&hi[k]);
                let b_b = hi[j].inner(&lo[k]);
                assert!((t.bd_b[(j, k)] - bd_b).norm() < 1e-8, "b†b trial {trial}");
                assert!((t.bd_bd[(j, k)] - bd_bd).norm() < 1e-8, "b†b† trial {trial}");
                assert!((t.b_bd[(j, k)] - b_bd).norm() < 1e-8, "bb† trial {trial}");
                assert!((t.b_b[(j, k)] - b_b).norm() < 1e-8, "bb trial {trial}");
            }
        }
        let e = exact_quantities(&s);
        let sum: f64 = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| wick_four_point(&t, j, k).re).sum();
        assert!((sum - e.num2).abs() < 1e-8, "Num² trial {trial}");
    }
}

#[test]
fn moment_bounds() {
    let mut rng = StdRng::seed_from_u64(9);
    let psi = DVector::from_fn(3, |i, _| Complex64::new(f64::from(u8::from(i == 0)), 0.0));
    let m = moment_bounds_check(&ActiveFlo::identity(3), &psi);
    assert!((m.num1 - 1.0).abs() < 1e-14 && (m.num2 - 1.0).abs() < 1e-14);
    assert!((m.bound1 - 1.0).abs() < 1e-14 && (m.bound2 - 2.0).abs() < 1e-14);
    for trial in 0..200 {
        let n = 1 + trial % 5;
        let z = near_identity(n, 0.3, &mut rng);
        assert!(op_norm(&(z.matrix() - DMatrix::identity(2 * n, 2 * n))) <= 0.3 + 1e-12);
        let psi = random_unit_vector(n, &mut rng);
        let m = moment_bounds_check(&z, &psi);
        assert!(m.holds(1e-12), "trial {trial}: {m:?}");
        let s = dense_apply(&compile_active(&z), &DenseState::single_particle(psi.as_slice())).unwrap();
        let e = exact_quantities(&s);
        assert!((m.num1 - e.num1).abs() < 1e-8 && (m.num2 - e.num2).abs() < 1e-8);
    }
}

#[test]
fn trace_distance_basics() {
    let a = DenseState::basis(&[1, 0]);
    let b = DenseState::basis(&[0, 1]);
    assert!(trace_distance(&a, &a).unwrap() < 1e-14);
    assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn diamond_trivial_cases() {
    let mut rng = StdRng::seed_from_u64(10);
    let q = random_active(3, -1, &mut rng);
    assert!(diamond_distance(&q, &q).unwrap() < 1e-6);
    let mut refl = DMatrix::identity(6, 6) * -1.0;
    refl[(0, 0)] = 1.0;
    let refl = ActiveFlo::new(refl).unwrap();
    assert!((diamond_distance(&ActiveFlo::identity(3), &refl).unwrap() - 1.0).abs() < 1e-12);
    let eigs = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
    assert_eq!(hull_distance_from_origin(&eigs), 0.0);
    let base: Vec<Complex64> = (0..4).map(|k| Complex64::from_polar(1.0, 0.2 * k as f64)).collect();
    let d0 = hull_distance_from_origin(&base);
    for theta in [0.5, 2.0, 3.1, -2.9] {
        let rot: Vec<Complex64> = base.iter().map(|z| z * Complex64::from_polar(1.0, theta)).collect();
        assert!((hull_distance_from_origin(&rot) - d0).abs() < 1e-12);
    }
}

#[test]
fn diamond_bounded_by_operator_norm() {
    let mut rng = StdRng::seed_from_u64(11);
    for trial in 0..100 {
        let n = 1 + trial % 5;
        let q1 = random_active(n, if trial % 2 == 0 { 1 } else { -1 }, &mut rng);
        let scale = [0.02, 0.1, 0.3, 1.0][trial % 4];
        let q2 = q1.compose(&near_identity(n, scale, &mut rng));
        let d = diamond_distance(&q1, &q2).unwrap();
        let bound = n as f64 * op_norm(&(q1.matrix() - q2.matrix()));
        assert!(d <= bound + 1e-9, "trial {trial}: {d} > {bound}");
        assert!((0.0..=1.0).contains(&d));
    }
}

#[test]
fn diamond_upper_bounds_sampled_states() {
    let mut rng = StdRng::seed_from_u64(12);
    let n = 3;
    let dim = 1 << n;
    for _ in 0..4 {
        let q1 = random_active(n, 1, &mut rng);
        let q2 = q1.compose(&near_identity(n, 0.4, &mut rng));
        let d = diamond_distance(&q1, &q2).unwrap();
        let u1 = fock_unitary(&q1).unwrap();
        let u2 = fock_unitary(&q2).unwrap();
        let mut best: f64 = 0.0;
        for _ in 0..2500 {
            let v = random_unit_vector(dim, &mut rng);
            let f = (&u1 * &v).dotc(&(&u2 * &v)).norm_sqr().min(1.0);
            let t = (1.0 - f).sqrt();
            assert!(t <= d + 1e-9, "sample {t} exceeds diamond {d}");
            best = best.max(t);
        }
        assert!(best > 0.5 * d, "sampling should get close: {best} vs {d}");
    }
}

#[test]
fn passive_stability() {
    let mut rng = StdRng::seed_from_u64(13);
    for trial in 0..60 {
        let n = 1 + trial % 6;
        let eta = 1 + trial % n;
        let u = PassiveFlo::new(haar_unitary(n, &mut rng).unwrap()).unwrap();
        let w = flo_florep::extract_passive(&near_identity_passive(n, 0.3, &mut rng)).unwrap();
        let v = u.compose(&w);
        let b: Vec<u8> = (0..n).map(|j| u8::from(j < eta)).collect();
        let su = dense_apply(&compile_passive(&u), &DenseState::basis(&b)).unwrap();
        let sv = dense_apply(&compile_passive(&v), &DenseState::basis(&b)).unwrap();
        let td = trace_distance(&su, &sv).unwrap();
        let pd = phase_distance(u.matrix(), v.matrix()).unwrap();
        // √(1 − f) turns rounding in f into ~1e-8 for near-identical states.
        assert!(td <= eta as f64 * pd + 1e-7, "trial {trial}: {td} > {eta}·{pd}");
    }
}

fn near_identity_passive<R: Rng>(n: usize, eps: f64, rng: &mut R) -> ActiveFlo {
    let h = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h = (&h + h.adjoint()) * Complex64::new(0.5 * eps * rng.gen_range(0.0..1.0), 0.0);
    let u = (h * Complex64::new(0.0, 1.0)).exp();
    flo_florep::embed_passive(&PassiveFlo::new(u).unwrap())
}

#[test]
fn single_particle_layout() {
    let psi = [c0(), Complex64::new(1.0, 0.0), c0()];
    assert_eq!(DenseState::single_particle(&psi), DenseState::basis(&[0, 1, 0]));
}
