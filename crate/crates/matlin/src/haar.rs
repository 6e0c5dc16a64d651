use crate::{ComplexMatrix, MatError, RealMatrix, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Haar-random `n×n` unitary: Ginibre matrix, QR, then the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(MatError::InvalidArgument("haar_unitary needs n ≥ 1".into()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * s, im * s)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    Ok(q)
}

/// Haar-random element of `SO(d)` for even `d`: real Ginibre, QR with sign
/// correction, and the last column negated when the determinant is −1.
pub fn haar_special_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<RealMatrix> {
    if d == 0 || d % 2 == 1 {
        return Err(MatError::InvalidArgument(format!(
            "haar_special_orthogonal needs an even dimension ≥ 2, got {d}"
        )));
    }
    let g = DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(d - 1).neg_mut();
    }
    Ok(q)
}
