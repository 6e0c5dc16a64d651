#![allow(dead_code)]

use flo_florep::{embed_passive, ActiveFlo, PassiveFlo};
use flo_matlin::{haar_special_orthogonal, haar_unitary, ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub fn random_passive<R: Rng>(n: usize, rng: &mut R) -> PassiveFlo {
    PassiveFlo::new(haar_unitary(n, rng).unwrap()).unwrap()
}

pub fn random_active<R: Rng>(n: usize, rng: &mut R) -> ActiveFlo {
    ActiveFlo::new(haar_special_orthogonal(2 * n, rng).unwrap()).unwrap()
}

/// `e^A`, `A` random skew with `‖e^A − I‖ ≤ eps`.
pub fn near_identity<R: Rng>(n: usize, eps: f64, rng: &mut R) -> ActiveFlo {
    let d = 2 * n;
    let g = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    let a: RealMatrix = &g - g.transpose();
    let norm = flo_matlin::op_norm(&a).max(1e-12);
    let h = 2.0 * (eps / 2.0).asin();
    let a = a * (h / norm * rng.gen_range(0.0..1.0));
    ActiveFlo::new(a.exp()).unwrap()
}

/// `e^{iH}`, `H` random Hermitian with `‖e^{iH} − I‖ ≤ eps`.
pub fn near_identity_unitary<R: Rng>(n: usize, eps: f64, rng: &mut R) -> ComplexMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h: ComplexMatrix = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    let norm = flo_matlin::op_norm_c(&h).max(1e-12);
    let t = 2.0 * (eps / 2.0).asin() / norm * rng.gen_range(0.0..1.0);
    (h * Complex64::new(0.0, t)).exp()
}

pub fn diag_phases(phases: &[f64]) -> ComplexMatrix {
    let n = phases.len();
    DMatrix::from_fn(n, n, |i, j| if i == j { Complex64::from_polar(1.0, phases[i]) } else { Complex64::new(0.0, 0.0) })
}

pub fn embed(u: &ComplexMatrix) -> ActiveFlo {
    embed_passive(&PassiveFlo::from_unchecked(u.clone()))
}
