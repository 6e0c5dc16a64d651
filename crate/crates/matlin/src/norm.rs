use crate::{ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Operator (spectral) norm of a real matrix.
pub fn op_norm(m: &RealMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Operator (spectral) norm of a complex matrix.
pub fn op_norm_c(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Frobenius norm of a complex matrix.
pub fn frobenius(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Promote a real matrix to a complex one.
pub fn to_complex(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// `‖U†U − I‖` in operator norm.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let n = u.ncols();
    op_norm_c(&(u.adjoint() * u - DMatrix::identity(n, n)))
}

pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    u.is_square() && unitarity_residual(u) <= tol
}

pub fn is_orthogonal(q: &RealMatrix, tol: f64) -> bool {
    let n = q.ncols();
    q.is_square() && op_norm(&(q.transpose() * q - DMatrix::identity(n, n))) <= tol
}
