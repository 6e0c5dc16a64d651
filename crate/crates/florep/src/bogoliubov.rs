use crate::ActiveFlo;
use flo_matlin::{c, ComplexMatrix, I};
use nalgebra::DMatrix;

/// `Ω = (1/√2)[[I, iI], [I, −iI]]`, the Majorana-to-ladder basis change.
pub fn omega(n: usize) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        m[(j, j)] = c(s);
        m[(j, j + n)] = I * s;
        m[(j + n, j)] = c(s);
        m[(j + n, j + n)] = -I * s;
    }
    m
}

/// Bogoliubov form `(α, β)` of an active FLO:
/// `Φ(Z)† a_j Φ(Z) = Σ_k α_jk a_k + β*_jk a_k†`.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovForm {
    pub alpha: ComplexMatrix,
    pub beta: ComplexMatrix,
}

impl BogoliubovForm {
    pub fn n(&self) -> usize {
        self.alpha.nrows()
    }

    /// `[[α, β*], [β, α*]] = Ω Z Ω†`.
    pub fn block(&self) -> ComplexMatrix {
        let n = self.n();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(&self.alpha);
        m.view_mut((0, n), (n, n)).copy_from(&self.beta.conjugate());
        m.view_mut((n, 0), (n, n)).copy_from(&self.beta);
        m.view_mut((n, n), (n, n)).copy_from(&self.alpha.conjugate());
        m
    }

    /// `‖αα† + β*βᵀ − I‖ + ‖αβ† + β*αᵀ‖`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.n();
        let a = &self.alpha;
        let b = &self.beta;
        let r1 = a * a.adjoint() + b.conjugate() * b.transpose() - DMatrix::identity(n, n);
        let r2 = a * b.adjoint() + b.conjugate() * a.transpose();
        flo_matlin::op_norm_c(&r1) + flo_matlin::op_norm_c(&r2)
    }
}

/// `α = ½[Z₁₁ + Z₂₂ − i(Z₁₂ − Z₂₁)]`, `β = ½[Z₁₁ − Z₂₂ − i(Z₁₂ + Z₂₁)]`.
pub fn to_bogoliubov(z: &ActiveFlo) -> BogoliubovForm {
    let n = z.n();
    let m = z.matrix();
    let blk = |r: usize, s: usize| m.view((r * n, s * n), (n, n)).map(c);
    let (z11, z12, z21, z22) = (blk(0, 0), blk(0, 1), blk(1, 0), blk(1, 1));
    let h = c(0.5);
    BogoliubovForm {
        alpha: (&z11 + &z22 - (&z12 - &z21) * I) * h,
        beta: (&z11 - &z22 - (&z12 + &z21) * I) * h,
    }
}

/// Inverse of [`to_bogoliubov`]: `Z = Ω† [[α, β*], [β, α*]] Ω`.
pub fn from_bogoliubov(form: &BogoliubovForm) -> ActiveFlo {
    let om = omega(form.n());
    let z = om.adjoint() * form.block() * om;
    ActiveFlo::from_unchecked(z.map(|x| x.re))
}
