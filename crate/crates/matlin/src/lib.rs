//! Dense matrix kernels: Haar sampling, the skew-symmetric normal form,
//! SVD rounding, principal roots and the projective phase distance.
//!
//! All matrices are `nalgebra` dynamic matrices over `f64` or `Complex64`.
//! Every public operation is a pure function of its inputs; randomness is
//! passed in explicitly as a seeded stream (see [`rng`]).

mod error;
mod haar;
pub mod json;
mod norm;
mod normal;
pub mod par;
mod phase;
pub mod rng;
mod root;
mod round;
mod skew;
mod tol;

pub use error::MatError;
pub use haar::{haar_special_orthogonal, haar_unitary};
pub use norm::{
    frobenius, is_orthogonal, is_unitary, op_norm, op_norm_c, to_complex, unitarity_residual,
};
pub use normal::normal_eigen;
pub use phase::{phase_argmin, phase_distance};
pub use root::{principal_root, principal_root_real};
pub use round::{svd_round, svd_round_real, top_eigenvectors, RoundTarget};
pub use skew::{lambda_block, skew_normal_form, symplectic_form, SkewNormalForm};
pub use tol::{Tolerances, TOL};

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

/// Real dense matrix.
pub type RealMatrix = DMatrix<f64>;
/// Complex dense matrix.
pub type ComplexMatrix = DMatrix<Complex64>;

pub type Result<T> = std::result::Result<T, MatError>;

/// Imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex number from a real value.
#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn check_finite_r(m: &RealMatrix) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(MatError::NonFinite)
    }
}

pub(crate) fn check_finite_c(m: &ComplexMatrix) -> Result<()> {
    if m.iter().all(|x| x.re.is_finite() && x.im.is_finite()) {
        Ok(())
    } else {
        Err(MatError::NonFinite)
    }
}
