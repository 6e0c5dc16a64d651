use crate::{ComplexMatrix, MatError, Result, TOL};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `min_θ ‖U − e^{iθ}V‖` for unitaries `U`, `V`.
pub fn phase_distance(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    Ok(phase_argmin(u, v)?.0)
}

/// The minimum of `θ ↦ ‖U − e^{iθ}V‖` and a minimizing `θ ∈ [−π, π)`.
///
/// For unitaries the objective equals `max_k |1 − e^{i(θ + φ_k)}|` with
/// `e^{iφ_k}` the eigenvalues of `U†V`. The optimum rotates the midpoint of
/// the shortest arc containing every `φ_k` onto 0; with `L` the arc length the
/// minimum is `2 sin(L/4)`.
pub fn phase_argmin(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<(f64, f64)> {
    if u.shape() != v.shape() || !u.is_square() {
        return Err(MatError::DimensionMismatch(format!(
            "phase distance of {:?} and {:?}",
            u.shape(),
            v.shape()
        )));
    }
    for m in [u, v] {
        if crate::unitarity_residual(m) > TOL.unitarity {
            return Err(MatError::InvalidArgument("phase distance needs unitary inputs".into()));
        }
    }
    let rel = u.adjoint() * v;
    let mut phases: Vec<f64> = crate::normal_eigen(&rel)?.0.iter().map(|z| z.arg()).collect();
    if phases.is_empty() {
        return Ok((0.0, 0.0));
    }
    phases.sort_by(f64::total_cmp);
    let m = phases.len();
    // The arc starts after the largest gap (index `k − 1 → k`, circularly).
    let (mut start, mut gap) = (0, phases[0] + 2.0 * PI - phases[m - 1]);
    for k in 1..m {
        let g = phases[k] - phases[k - 1];
        if g > gap {
            start = k;
            gap = g;
        }
    }
    let len = 2.0 * PI - gap;
    let mid = phases[start] + len / 2.0;
    let theta = (-mid + PI).rem_euclid(2.0 * PI) - PI;
    let val = phases
        .iter()
        .map(|&p| (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta + p)).norm())
        .fold(0.0, f64::max);
    Ok((val, theta))
}
