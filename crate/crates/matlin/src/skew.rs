use crate::{check_finite_r, op_norm, MatError, RealMatrix, Result, TOL};
use nalgebra::{DMatrix, DVector};

/// `A = W Λ(λ) Wᵀ` with `W` orthogonal and `Λ(λ) = [[0, diag λ], [−diag λ, 0]]`.
///
/// Convention: `λ` is non-negative and non-increasing, so the top-right
/// entry of every 2×2 block of `Λ` is non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewNormalForm {
    pub w: RealMatrix,
    pub lambda: DVector<f64>,
}

impl SkewNormalForm {
    pub fn reconstruct(&self) -> RealMatrix {
        &self.w * lambda_block(&self.lambda) * self.w.transpose()
    }

    /// `W J Wᵀ`: the form with every `λ` replaced by one.
    pub fn rounded(&self) -> RealMatrix {
        let n = self.lambda.len();
        &self.w * symplectic_form(n) * self.w.transpose()
    }
}

/// `J = [[0, I], [−I, 0]]` of size `2n`.
pub fn symplectic_form(n: usize) -> RealMatrix {
    lambda_block(&DVector::from_element(n, 1.0))
}

/// `Λ(λ) = [[0, diag λ], [−diag λ, 0]]`.
pub fn lambda_block(lambda: &DVector<f64>) -> RealMatrix {
    let n = lambda.len();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        m[(k, k + n)] = lambda[k];
        m[(k + n, k)] = -lambda[k];
    }
    m
}

/// Normal form of a real skew-symmetric matrix via the real Schur
/// decomposition. Schur blocks are reoriented so that each top-right entry is
/// non-negative, zero eigenvalues are paired, and pairs are sorted by
/// decreasing `λ`.
pub fn skew_normal_form(a: &RealMatrix) -> Result<SkewNormalForm> {
    let d = a.nrows();
    if !a.is_square() || d == 0 || d % 2 == 1 {
        return Err(MatError::InvalidArgument(format!(
            "skew normal form needs an even square matrix, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    check_finite_r(a)?;
    let asym = op_norm(&(a + a.transpose()));
    if asym > TOL.structural {
        return Err(MatError::NotSkew(asym));
    }
    let n = d / 2;
    let a = (a - a.transpose()) * 0.5;
    let scale = a.amax();
    if scale == 0.0 {
        return Ok(SkewNormalForm { w: DMatrix::identity(d, d), lambda: DVector::zeros(n) });
    }

    // Bounded iterations; the deflation threshold is relaxed if the strict
    // one stalls.
    let (q, t) = [1.0, 1e2, 1e4]
        .iter()
        .find_map(|k| a.clone().try_schur(k * f64::EPSILON, 200 * d))
        .ok_or_else(|| MatError::Decomposition("real Schur did not converge".into()))?
        .unpack();

    let split = 64.0 * f64::EPSILON * scale;
    let mut pairs: Vec<(usize, usize, f64)> = Vec::with_capacity(n);
    let mut singles = Vec::new();
    let mut i = 0;
    while i < d {
        if i + 1 < d && t[(i + 1, i)].abs() > split {
            let v = 0.5 * (t[(i, i + 1)] - t[(i + 1, i)]);
            if v >= 0.0 {
                pairs.push((i, i + 1, v));
            } else {
                pairs.push((i + 1, i, -v));
            }
            i += 2;
        } else {
            singles.push(i);
            i += 1;
        }
    }
    if singles.len() % 2 == 1 {
        return Err(MatError::Decomposition("unpaired real Schur block".into()));
    }
    for s in singles.chunks(2) {
        pairs.push((s[0], s[1], 0.0));
    }
    pairs.sort_by(|x, y| y.2.total_cmp(&x.2));

    let mut w = DMatrix::zeros(d, d);
    for (k, &(p, r, _)) in pairs.iter().enumerate() {
        w.set_column(k, &q.column(p));
        w.set_column(k + n, &q.column(r));
    }
    let core = w.transpose() * &a * &w;
    let mut lambda = DVector::zeros(n);
    for k in 0..n {
        let mut l = core[(k, k + n)];
        if l < 0.0 {
            w.column_mut(k + n).neg_mut();
            l = -l;
        }
        lambda[k] = l;
    }
    // Re-sort after refinement: ties broken by the refined values.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| lambda[y].total_cmp(&lambda[x]));
    if order.iter().enumerate().any(|(k, &o)| k != o) {
        let w0 = w.clone();
        let l0 = lambda.clone();
        for (k, &o) in order.iter().enumerate() {
            w.set_column(k, &w0.column(o));
            w.set_column(k + n, &w0.column(o + n));
            lambda[k] = l0[o];
        }
    }
    Ok(SkewNormalForm { w, lambda })
}
