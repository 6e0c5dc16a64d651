use crate::{omega, FloError, Result};
use flo_matlin::{
    c, op_norm, symplectic_form, unitarity_residual, ComplexMatrix, RealMatrix, TOL,
};
use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Passive FLO `Φ_pas(U)`, `U ∈ U(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveFlo {
    u: ComplexMatrix,
}

impl PassiveFlo {
    /// Validates unitarity to `1e-9`.
    pub fn new(u: ComplexMatrix) -> Result<Self> {
        if !u.is_square() || u.nrows() == 0 {
            return Err(FloError::Dimension(format!("passive FLO of shape {:?}", u.shape())));
        }
        let r = unitarity_residual(&u);
        if !(r <= TOL.unitarity) {
            return Err(FloError::NotUnitary(r));
        }
        Ok(Self { u })
    }

    /// Caller guarantees unitarity.
    pub fn from_unchecked(u: ComplexMatrix) -> Self {
        Self { u }
    }

    pub fn identity(n: usize) -> Self {
        Self { u: DMatrix::identity(n, n) }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.u
    }

    pub fn n(&self) -> usize {
        self.u.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self { u: self.u.adjoint() }
    }

    /// `Φ_pas(U)Φ_pas(V) = Φ_pas(UV)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { u: &self.u * &other.u }
    }

    /// `e^{iθ}U`.
    pub fn with_phase(&self, theta: f64) -> Self {
        Self { u: &self.u * Complex64::from_polar(1.0, theta) }
    }
}

/// Active FLO `Φ(Q)`, `Q ∈ O(2n)`, with its determinant sign cached.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveFlo {
    q: RealMatrix,
    det_sign: i8,
}

impl ActiveFlo {
    /// Validates orthogonality to `1e-9`.
    pub fn new(q: RealMatrix) -> Result<Self> {
        let d = q.nrows();
        if !q.is_square() || d == 0 || d % 2 == 1 {
            return Err(FloError::Dimension(format!("active FLO of shape {:?}", q.shape())));
        }
        let r = op_norm(&(q.transpose() * &q - DMatrix::identity(d, d)));
        if !(r <= TOL.unitarity) {
            return Err(FloError::NotOrthogonal(r));
        }
        Ok(Self::from_unchecked(q))
    }

    /// Caller guarantees orthogonality.
    pub fn from_unchecked(q: RealMatrix) -> Self {
        let det_sign = if q.determinant() < 0.0 { -1 } else { 1 };
        Self { q, det_sign }
    }

    pub fn identity(n: usize) -> Self {
        Self { q: DMatrix::identity(2 * n, 2 * n), det_sign: 1 }
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.q
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.q
    }

    /// Number of modes `n` (the matrix is `2n×2n`).
    pub fn n(&self) -> usize {
        self.q.nrows() / 2
    }

    pub fn det_sign(&self) -> i8 {
        self.det_sign
    }

    /// `Φ(Q)† = Φ(Qᵀ)`.
    pub fn transpose(&self) -> Self {
        Self { q: self.q.transpose(), det_sign: self.det_sign }
    }

    /// `Φ(A)Φ(B) = Φ(AB)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { q: &self.q * &other.q, det_sign: self.det_sign * other.det_sign }
    }

    /// `‖QJ − JQ‖`; zero exactly for passive FLOs.
    pub fn symplectic_residual(&self) -> f64 {
        let j = symplectic_form(self.n());
        op_norm(&(&self.q * &j - &j * &self.q))
    }
}

/// `Q = [[Re U, −Im U], [Im U, Re U]]`.
pub fn embed_passive(p: &PassiveFlo) -> ActiveFlo {
    let u = p.matrix();
    let n = u.nrows();
    let mut q = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = u[(i, j)];
            q[(i, j)] = z.re;
            q[(i + n, j + n)] = z.re;
            q[(i, j + n)] = -z.im;
            q[(i + n, j)] = z.im;
        }
    }
    ActiveFlo { q, det_sign: 1 }
}

/// Inverse of [`embed_passive`] on `USp(2n)`.
pub fn extract_passive(q: &ActiveFlo) -> Result<PassiveFlo> {
    let res = q.symplectic_residual();
    if res > 1e-8 {
        return Err(FloError::NotPassive(res));
    }
    let n = q.n();
    let m = q.matrix();
    let u = DMatrix::from_fn(n, n, |i, j| {
        let re = 0.5 * (m[(i, j)] + m[(i + n, j + n)]);
        let im = 0.5 * (m[(i + n, j)] - m[(i, j + n)]);
        Complex64::new(re, im)
    });
    Ok(PassiveFlo::from_unchecked(u))
}

/// Passive alignment of two FLOs.
///
/// With `W = Ω*(Q₁ᵀQ₂)Ωᵀ` and the left polar decomposition `W₁₁ = HZ`, returns
/// `R = embed_passive(Zᵀ)` and `gap = ‖Q₁ − Q₂R‖`, which never exceeds
/// `‖Q₁JQ₁ᵀ − Q₂JQ₂ᵀ‖`.
pub fn passive_alignment(q1: &ActiveFlo, q2: &ActiveFlo) -> Result<(ActiveFlo, f64)> {
    if q1.n() != q2.n() {
        return Err(FloError::Dimension(format!("aligning {} and {} modes", q1.n(), q2.n())));
    }
    let n = q1.n();
    let m = (q1.matrix().transpose() * q2.matrix()).map(c);
    let om = omega(n);
    let w = om.conjugate() * m * om.transpose();
    let w11 = w.view((0, 0), (n, n)).into_owned();
    let svd = SVD::new(w11, true, true);
    let smin = svd.singular_values.min();
    if smin < 1e-10 {
        return Err(FloError::DegenerateAlignment(smin));
    }
    let z = svd.u.unwrap() * svd.v_t.unwrap();
    let r = embed_passive(&PassiveFlo::from_unchecked(z.transpose()));
    let gap = op_norm(&(q1.matrix() - q2.matrix() * r.matrix()));
    Ok((r, gap))
}

/// `F_jk = exp(2πi jk/n)/√n` (zero-based `j`, `k`).
pub fn dft_matrix(n: usize) -> PassiveFlo {
    let s = 1.0 / (n as f64).sqrt();
    PassiveFlo::from_unchecked(DMatrix::from_fn(n, n, |j, k| {
        let t = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
        Complex64::from_polar(s, t)
    }))
}

/// Majorana index of `γ_i` of an `n`-mode register inside an `n_total`-mode
/// register whose first `n` modes are that register.
#[inline]
pub fn extend_index(i: usize, n: usize, n_total: usize) -> usize {
    (i % n) + (i / n) * n_total
}

/// `Q ⊕ I` acting on the first `n` of `n_total` modes.
pub fn extend_q(q: &RealMatrix, n_total: usize) -> RealMatrix {
    let n = q.nrows() / 2;
    let mut out = DMatrix::identity(2 * n_total, 2 * n_total);
    for i in 0..2 * n {
        for j in 0..2 * n {
            out[(extend_index(i, n, n_total), extend_index(j, n, n_total))] = q[(i, j)];
        }
    }
    out
}

/// [`extend_q`] for an [`ActiveFlo`].
pub fn extend_modes(q: &ActiveFlo, n_total: usize) -> ActiveFlo {
    ActiveFlo { q: extend_q(q.matrix(), n_total), det_sign: q.det_sign }
}
