use crate::{check_finite_c, ComplexMatrix, MatError, Result};
use nalgebra::SymmetricEigen;
use num_complex::Complex64;

/// Mixing weight of the anti-Hermitian part. Irrational so that distinct
/// eigenvalues of a normal matrix stay distinct after mixing.
const MIX: f64 = std::f64::consts::SQRT_2 - 0.3;

/// Eigendecomposition `W = V diag(λ) V†` of a normal matrix.
///
/// `V` diagonalizes the Hermitian matrix `(W + W†)/2 + c(W − W†)/(2i)`,
/// which commutes with `W`; `λ_k = v_k† W v_k`. Unlike the complex Schur
/// iteration this always converges, including for clustered spectra near
/// the identity.
pub fn normal_eigen(w: &ComplexMatrix) -> Result<(Vec<Complex64>, ComplexMatrix)> {
    if !w.is_square() {
        return Err(MatError::DimensionMismatch("eigendecomposition needs a square matrix".into()));
    }
    check_finite_c(w)?;
    let wd = w.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let h = (w + &wd) * half + (w - &wd) * Complex64::new(0.0, -0.5 * MIX);
    let h = (&h + h.adjoint()) * half;
    let v = SymmetricEigen::new(h).eigenvectors;
    let t = v.adjoint() * w * &v;
    Ok((t.diagonal().iter().copied().collect(), v))
}
