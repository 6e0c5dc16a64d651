use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by the structural checks of every crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Skewness, orthogonality and similar structural tests.
    pub structural: f64,
    /// Reconstruction residuals, relative to `max(1, ‖A‖)`.
    pub reconstruction: f64,
    /// Unitarity of inputs claimed to be unitary.
    pub unitarity: f64,
    /// Minimal distance of an eigenvalue argument from ±π for principal roots.
    pub root_margin: f64,
    /// Largest imaginary residue truncated when a root must be real.
    pub imag_residue: f64,
    /// Pivots or denominators below this are treated as zero.
    pub degenerate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        TOL
    }
}

pub const TOL: Tolerances = Tolerances {
    structural: 1e-10,
    reconstruction: 1e-9,
    unitarity: 1e-9,
    root_margin: 1e-6,
    imag_residue: 1e-7,
    degenerate: 1e-12,
};
