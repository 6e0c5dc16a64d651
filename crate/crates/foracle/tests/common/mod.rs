#![allow(dead_code)]

use flo_florep::ActiveFlo;
use flo_foracle::{apply_majorana, DenseState};
use flo_matlin::{haar_special_orthogonal, ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub fn random_active<R: Rng>(n: usize, det: i8, rng: &mut R) -> ActiveFlo {
    let mut q = haar_special_orthogonal(2 * n, rng).unwrap();
    if det < 0 {
        for k in 0..2 * n {
            q[(0, k)] = -q[(0, k)];
        }
    }
    ActiveFlo::new(q).unwrap()
}

/// `e^{A}` for a random skew `A` scaled so that `‖e^A − I‖ ≤ eps`.
pub fn near_identity<R: Rng>(n: usize, eps: f64, rng: &mut R) -> ActiveFlo {
    let d = 2 * n;
    let g = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    let a: RealMatrix = &g - g.transpose();
    let norm = flo_matlin::op_norm(&a).max(1e-12);
    let a = a * (eps / norm * rng.gen_range(0.0..1.0));
    ActiveFlo::new(a.exp()).unwrap()
}

pub fn random_bits<R: Rng>(n: usize, rng: &mut R) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..2u8)).collect()
}

pub fn majorana_matrix(p: usize, n: usize) -> ComplexMatrix {
    let dim = 1 << n;
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut e = DenseState { n, amps: vec![Complex64::new(0.0, 0.0); dim] };
        e.amps[col] = Complex64::new(1.0, 0.0);
        let out = apply_majorana(p, &e);
        for (row, a) in out.amps.into_iter().enumerate() {
            m[(row, col)] = a;
        }
    }
    m
}

fn combine(a: &DenseState, b: &DenseState, wa: Complex64, wb: Complex64) -> DenseState {
    let amps = a.amps.iter().zip(&b.amps).map(|(x, y)| wa * x + wb * y).collect();
    DenseState { n: a.n, amps }
}

/// `a_k ψ`.
pub fn lower(k: usize, s: &DenseState) -> DenseState {
    let n = s.n;
    combine(
        &apply_majorana(k, s),
        &apply_majorana(k + n, s),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.5),
    )
}

/// `a_k† ψ`.
pub fn raise(k: usize, s: &DenseState) -> DenseState {
    let n = s.n;
    combine(
        &apply_majorana(k, s),
        &apply_majorana(k + n, s),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, -0.5),
    )
}
