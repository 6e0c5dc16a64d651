use flo_florep::{to_bogoliubov, ActiveFlo};
use flo_matlin::ComplexMatrix;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Two-point functions of `b_j = Φ(Z)† a_j Φ(Z)` in a reference Slater state.
#[derive(Debug, Clone)]
pub struct TwoPointTable {
    /// `⟨b_j† b_k⟩`
    pub bd_b: ComplexMatrix,
    /// `⟨b_j† b_k†⟩`
    pub bd_bd: ComplexMatrix,
    /// `⟨b_j b_k†⟩`
    pub b_bd: ComplexMatrix,
    /// `⟨b_j b_k⟩`
    pub b_b: ComplexMatrix,
}

impl TwoPointTable {
    pub fn n(&self) -> usize {
        self.bd_b.nrows()
    }

    /// `‖⟨bb†⟩ + ⟨b†b⟩ᵀ − I‖_max`.
    pub fn car_residual(&self) -> f64 {
        let n = self.n();
        (&self.b_bd + self.bd_b.transpose() - DMatrix::<Complex64>::identity(n, n)).camax()
    }
}

/// Closed forms from `(α, β)`; `c` is the 1-RDM of the reference state.
pub fn wick_two_point(z: &ActiveFlo, c: &ComplexMatrix) -> TwoPointTable {
    let form = to_bogoliubov(z);
    let (a, b) = (&form.alpha, &form.beta);
    let n = a.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let ic_t = &id - c.transpose();
    let ac = a.conjugate();
    let bc = b.conjugate();
    TwoPointTable {
        bd_b: &ac * c * a.transpose() + b * &ic_t * b.adjoint(),
        bd_bd: &ac * c * b.transpose() + b * &ic_t * a.adjoint(),
        b_bd: &id - a * c.transpose() * a.adjoint() - &bc * (&id - c) * b.transpose(),
        b_b: &bc * c * a.transpose() + a * &ic_t * b.adjoint(),
    }
}

/// `⟨b_j† b_j b_k† b_k⟩`.
pub fn wick_four_point(t: &TwoPointTable, j: usize, k: usize) -> Complex64 {
    t.bd_b[(j, j)] * t.bd_b[(k, k)] - t.bd_bd[(j, k)] * t.b_b[(j, k)]
        + t.bd_b[(j, k)] * t.b_bd[(j, k)]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentBounds {
    pub num1: f64,
    pub num2: f64,
    pub bound1: f64,
    pub bound2: f64,
    pub beta_frob2: f64,
}

impl MomentBounds {
    pub fn holds(&self, tol: f64) -> bool {
        self.num1 <= self.bound1 + tol && self.num2 <= self.bound2 + tol
    }
}

/// `⟨Num⟩` and `⟨Num²⟩` of `Φ(Z)|φ⟩` for `|φ⟩ = Σ_k ψ_k a_k†|0⟩`, with the
/// bounds `1 + ‖β‖_F²` and `2 + 7‖β‖_F² + ‖β‖_F⁴`.
pub fn moment_bounds_check(z: &ActiveFlo, psi: &DVector<Complex64>) -> MomentBounds {
    let n = psi.len();
    let c = DMatrix::from_fn(n, n, |p, q| psi[p].conj() * psi[q]);
    let t = wick_two_point(z, &c);
    let num1 = (0..n).map(|j| t.bd_b[(j, j)].re).sum();
    let mut num2 = 0.0;
    for j in 0..n {
        for k in 0..n {
            num2 += wick_four_point(&t, j, k).re;
        }
    }
    let beta_frob2 = to_bogoliubov(z).beta.norm_squared();
    MomentBounds {
        num1,
        num2,
        bound1: 1.0 + beta_frob2,
        bound2: 2.0 + 7.0 * beta_frob2 + beta_frob2 * beta_frob2,
        beta_frob2,
    }
}
