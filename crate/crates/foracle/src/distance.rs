use crate::{DenseState, Oracle, OracleError, Result};
use flo_florep::{compile_active, ActiveFlo};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `√(1 − |⟨ψ|φ⟩|²)`.
pub fn trace_distance(s1: &DenseState, s2: &DenseState) -> Result<f64> {
    if s1.n != s2.n {
        return Err(OracleError::Dimension(format!("{} vs {} modes", s1.n, s2.n)));
    }
    let f = s1.inner(s2).norm_sqr().min(1.0);
    Ok((1.0 - f).max(0.0).sqrt())
}

/// Distance from the origin to the convex hull of points on the unit circle.
///
/// The hull misses the origin exactly when all points fit in an open arc of
/// length `L < π`; the nearest hull point then lies on the chord joining the
/// arc's endpoints, at distance `cos(L/2)`.
pub fn hull_distance_from_origin(eigs: &[Complex64]) -> f64 {
    if eigs.is_empty() {
        return 0.0;
    }
    let mut angles: Vec<f64> = eigs.iter().map(|z| z.arg()).collect();
    angles.sort_by(f64::total_cmp);
    let mut gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    for w in angles.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    let span = 2.0 * PI - gap;
    if span >= PI {
        0.0
    } else {
        (0.5 * span).cos()
    }
}

/// `max_ψ trdist(Φ(Q₁)ψ, Φ(Q₂)ψ)` from the spectrum of `Φ(Q₁)†Φ(Q₂)`.
pub fn diamond_distance(q1: &ActiveFlo, q2: &ActiveFlo) -> Result<f64> {
    diamond_distance_with(&Oracle::default(), q1, q2)
}

pub fn diamond_distance_with(oracle: &Oracle, q1: &ActiveFlo, q2: &ActiveFlo) -> Result<f64> {
    if q1.n() != q2.n() {
        return Err(OracleError::Dimension(format!("{} vs {} modes", q1.n(), q2.n())));
    }
    let u1 = oracle.unitary(&compile_active(q1))?;
    let u2 = oracle.unitary(&compile_active(q2))?;
    let rel = u1.adjoint() * u2;
    let eigs = flo_matlin::normal_eigen(&rel)?.0;
    let d = hull_distance_from_origin(&eigs).clamp(0.0, 1.0);
    Ok((1.0 - d * d).max(0.0).sqrt())
}
