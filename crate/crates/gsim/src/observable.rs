use crate::{GaussianState, GsimError, Result};
use flo_florep::{from_bogoliubov, ActiveFlo, BogoliubovForm};
use flo_matlin::c;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// `O = constant·I + Σ coeff · iγ_p γ_q` over distinct Majorana pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticObservable {
    pub constant: f64,
    pub terms: Vec<(usize, usize, f64)>,
}

impl QuadraticObservable {
    /// `n_j = ½ + ½ iγ_j γ_{j+n}` on an `n`-mode register.
    pub fn number(j: usize, n: usize) -> Self {
        Self { constant: 0.5, terms: vec![(j, j + n, 0.5)] }
    }

    /// `X = a_u† a_v† + a_v a_u = −½ iγ_u γ_{v+n} − ½ iγ_{u+n} γ_v`.
    pub fn quadrature_x(u: usize, v: usize, n: usize) -> Self {
        Self { constant: 0.0, terms: vec![(u, v + n, -0.5), (u + n, v, -0.5)] }
    }

    /// `Y = i(a_u† a_v† − a_v a_u) = ½ iγ_u γ_v − ½ iγ_{u+n} γ_{v+n}`.
    pub fn quadrature_y(u: usize, v: usize, n: usize) -> Self {
        Self { constant: 0.0, terms: vec![(u, v, 0.5), (u + n, v + n, -0.5)] }
    }
}

/// `⟨O⟩ = constant − Σ coeff · Γ_pq`, using `⟨iγ_p γ_q⟩ = −Γ_pq` for `p ≠ q`.
pub fn quadratic_expectation(s: &GaussianState, o: &QuadraticObservable) -> Result<f64> {
    let d = 2 * s.n();
    let mut v = o.constant;
    for &(p, q, w) in &o.terms {
        if p == q || p >= d || q >= d {
            return Err(GsimError::Observable(format!("term ({p}, {q}) on {d} Majoranas")));
        }
        v -= w * s.gamma()[(p, q)];
    }
    Ok(v)
}

/// FLO `Φ(Z)` with `Φ(Z)† a_u Φ(Z) = b_u(φ) = (a_u + e^{iφ} a_v†)/√2` and
/// `Φ(Z)† a_v Φ(Z) = b_v(φ) = (a_v − e^{iφ} a_u†)/√2`, identity elsewhere.
///
/// Occupations of modes `u`, `v` after `Φ(Z)` are distributed as
/// `(d_u(φ), d_v(φ))`, and `d_u + d_v − 1` equals `X` at `φ = 0` and `Y` at
/// `φ = π/2`.
pub fn quadrature_rotation(u: usize, v: usize, n: usize, phi: f64) -> ActiveFlo {
    let mut alpha = DMatrix::<Complex64>::identity(n, n);
    let mut beta = DMatrix::<Complex64>::zeros(n, n);
    alpha[(u, u)] = c(FRAC_1_SQRT_2);
    alpha[(v, v)] = c(FRAC_1_SQRT_2);
    // β*_uv = e^{iφ}/√2 and β*_vu = −e^{iφ}/√2.
    beta[(u, v)] = Complex64::from_polar(FRAC_1_SQRT_2, -phi);
    beta[(v, u)] = -Complex64::from_polar(FRAC_1_SQRT_2, -phi);
    from_bogoliubov(&BogoliubovForm { alpha, beta })
}
