use crate::{check_finite_c, check_finite_r, to_complex, ComplexMatrix, MatError, RealMatrix, Result};
use nalgebra::{DMatrix, SymmetricEigen, SVD};
use serde::{Deserialize, Serialize};

/// Structure to round a matrix onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoundTarget {
    Unitary,
    Orthogonal,
    /// Rank-`k` orthogonal projector (input must be Hermitian).
    Projector(usize),
}

/// Round a complex matrix: `XY†` from `A = XΣY†`, or the top-`k`
/// eigenprojector of a Hermitian `A`.
pub fn svd_round(a: &ComplexMatrix, target: RoundTarget) -> Result<ComplexMatrix> {
    check_finite_c(a)?;
    match target {
        RoundTarget::Unitary => polar_factor(a),
        RoundTarget::Orthogonal => {
            if a.iter().any(|z| z.im != 0.0) {
                return Err(MatError::InvalidArgument(
                    "orthogonal rounding needs a real matrix".into(),
                ));
            }
            polar_factor(a)
        }
        RoundTarget::Projector(k) => {
            let (_, v) = top_eigenvectors(a, k)?;
            Ok(&v * v.adjoint())
        }
    }
}

/// Real counterpart of [`svd_round`].
pub fn svd_round_real(a: &RealMatrix, target: RoundTarget) -> Result<RealMatrix> {
    check_finite_r(a)?;
    match target {
        RoundTarget::Unitary | RoundTarget::Orthogonal => {
            check_rank(a.nrows(), a.ncols(), 0)?;
            let svd = SVD::new(a.clone(), true, true);
            let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
            Ok(u * vt)
        }
        RoundTarget::Projector(k) => {
            let p = svd_round(&to_complex(a), RoundTarget::Projector(k))?;
            Ok(p.map(|z| z.re))
        }
    }
}

/// The `k` largest eigenvalues (descending) of a Hermitian matrix and the
/// matching orthonormal eigenvectors as columns.
pub fn top_eigenvectors(a: &ComplexMatrix, k: usize) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !a.is_square() {
        return Err(MatError::DimensionMismatch("eigenprojector needs a square matrix".into()));
    }
    check_rank(a.nrows(), a.ncols(), k)?;
    let h = (a + a.adjoint()) * crate::c(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..a.nrows()).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let vals = order[..k].iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut v = DMatrix::zeros(a.nrows(), k);
    for (c, &i) in order[..k].iter().enumerate() {
        v.set_column(c, &eig.eigenvectors.column(i));
    }
    Ok((vals, v))
}

fn polar_factor(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_rank(a.nrows(), a.ncols(), 0)?;
    let svd = SVD::new(a.clone(), true, true);
    let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    Ok(u * vt)
}

fn check_rank(rows: usize, cols: usize, k: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(MatError::InvalidArgument("empty matrix".into()));
    }
    if k > rows.min(cols) {
        return Err(MatError::InvalidArgument(format!(
            "rank target {k} exceeds min({rows}, {cols})"
        )));
    }
    Ok(())
}
