use crate::{check_finite_c, to_complex, ComplexMatrix, MatError, RealMatrix, Result, TOL};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Principal `p`-th root of a unitary (normal) matrix: every eigenvalue `e^{iφ}` with
/// `φ ∈ (−π, π)` is replaced by `e^{iφ/p}`.
///
/// Fails when an eigenvalue argument lies within the configured margin of
/// ±π, where the principal branch is discontinuous.
pub fn principal_root(w: &ComplexMatrix, p: u32) -> Result<ComplexMatrix> {
    if p == 0 {
        return Err(MatError::InvalidArgument("root order must be positive".into()));
    }
    if !w.is_square() {
        return Err(MatError::DimensionMismatch("principal root needs a square matrix".into()));
    }
    check_finite_c(w)?;
    if p == 1 {
        return Ok(w.clone());
    }
    let n = w.nrows();
    let (eigs, z) = crate::normal_eigen(w)?;
    let mut d = DMatrix::<Complex64>::zeros(n, n);
    for (k, &e) in eigs.iter().enumerate() {
        let phi = e.arg();
        if PI - phi.abs() < TOL.root_margin {
            return Err(MatError::RootPrecondition(phi));
        }
        d[(k, k)] = Complex64::from_polar(e.norm().powf(1.0 / p as f64), phi / p as f64);
    }
    Ok(&z * d * z.adjoint())
}

/// Principal root of a real orthogonal matrix; the result is real up to a
/// truncated imaginary residue.
pub fn principal_root_real(w: &RealMatrix, p: u32) -> Result<RealMatrix> {
    let r = principal_root(&to_complex(w), p)?;
    let residue = r.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue > TOL.imag_residue {
        return Err(MatError::ComplexResidue(residue));
    }
    Ok(r.map(|z| z.re))
}
