//! Ground-truth FLOs: random draws and matrix-file import/export.

use anyhow::{bail, Context, Result};
use flo_florep::{embed_passive, ActiveFlo, PassiveFlo};
use flo_learn::FloBlackBox;
use flo_matlin::json::MatrixJson;
use flo_matlin::{
    haar_special_orthogonal, haar_unitary, is_orthogonal, is_unitary, op_norm, op_norm_c, svd_round,
    svd_round_real, ComplexMatrix, RealMatrix, RoundTarget,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use std::path::Path;

/// Tolerance below which imported matrices are taken as given.
pub const IMPORT_TOL: f64 = 1e-8;

pub fn random_passive<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PassiveFlo> {
    Ok(PassiveFlo::new(haar_unitary(n, rng)?)?)
}

/// Haar `SO(2n)`, with the determinant flipped to `−1` half of the time.
pub fn random_active<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ActiveFlo> {
    let mut q = haar_special_orthogonal(2 * n, rng)?;
    if rng.gen::<bool>() {
        let mut row = q.row_mut(0);
        row *= -1.0;
    }
    Ok(ActiveFlo::new(q)?)
}

/// `e^A` for a random skew `A`, scaled so that `‖e^A − I‖ = eps·u`, `u ∈ [0, 1)`.
pub fn near_identity_active<R: Rng + ?Sized>(n: usize, eps: f64, rng: &mut R) -> Result<ActiveFlo> {
    let d = 2 * n;
    let g = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    let a: RealMatrix = &g - g.transpose();
    let norm = op_norm(&a).max(1e-12);
    let h = 2.0 * (eps / 2.0).asin() * rng.gen_range(0.0..1.0);
    Ok(ActiveFlo::new((a * (h / norm)).exp())?)
}

/// `e^{iH}` for a random Hermitian `H`, scaled so that `‖e^{iH} − I‖ ≤ eps`.
pub fn near_identity_unitary<R: Rng + ?Sized>(n: usize, eps: f64, rng: &mut R) -> ComplexMatrix {
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h: ComplexMatrix = (&g + g.adjoint()) * Complex64::new(0.5, 0.0);
    let norm = op_norm_c(&h).max(1e-12);
    let t = 2.0 * (eps / 2.0).asin() / norm * rng.gen_range(0.0..1.0);
    (h * Complex64::new(0.0, t)).exp()
}

/// A ground truth read from disk, with any repairs applied on import.
#[derive(Debug, Clone)]
pub struct ImportedTruth {
    pub q: ActiveFlo,
    pub warnings: Vec<String>,
}

impl ImportedTruth {
    pub fn into_black_box(self) -> FloBlackBox {
        FloBlackBox::new(self.q)
    }
}

/// Read a matrix file holding either `Q ∈ O(2n)` (`2n × 2n`, real) or a
/// passive `U ∈ U(n)` (`n × n`). Inputs off the group by more than
/// [`IMPORT_TOL`] are rounded to the nearest group element with a warning.
pub fn import_ground_truth(path: &Path, n: usize) -> Result<ImportedTruth> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = MatrixJson::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut warnings = Vec::new();
    let q = if m.rows == 2 * n && m.cols == 2 * n {
        if m.imag.is_some() {
            bail!("{}: a {}×{} ground truth must be real", path.display(), m.rows, m.cols);
        }
        let mut q = m.to_real()?;
        if !is_orthogonal(&q, IMPORT_TOL) {
            warnings.push(format!("{}: input is not orthogonal within {IMPORT_TOL:e}; rounded", path.display()));
            q = svd_round_real(&q, RoundTarget::Orthogonal)?;
        }
        ActiveFlo::from_unchecked(q)
    } else if m.rows == n && m.cols == n {
        let mut u = m.to_complex()?;
        if !is_unitary(&u, IMPORT_TOL) {
            warnings.push(format!("{}: input is not unitary within {IMPORT_TOL:e}; rounded", path.display()));
            u = svd_round(&u, RoundTarget::Unitary)?;
        }
        embed_passive(&PassiveFlo::from_unchecked(u))
    } else {
        bail!("{}: expected a {}×{} or {}×{} matrix, found {}×{}", path.display(), 2 * n, 2 * n, n, n, m.rows, m.cols);
    };
    Ok(ImportedTruth { q, warnings })
}

/// Write `Q` in the matrix JSON format.
pub fn export_ground_truth(path: &Path, q: &ActiveFlo) -> Result<()> {
    std::fs::write(path, MatrixJson::from_real(q.matrix()).to_string())
        .with_context(|| format!("writing {}", path.display()))
}
