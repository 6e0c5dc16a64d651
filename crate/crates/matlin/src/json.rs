//! Matrix interchange format: `{rows, cols, real: [...], imag: [...]}` with
//! entries in row-major order and `imag` omitted for real matrices.

use crate::{ComplexMatrix, MatError, RealMatrix, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub real: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_real(m: &RealMatrix) -> Self {
        let real = (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)])).collect();
        Self { rows: m.nrows(), cols: m.ncols(), real, imag: None }
    }

    pub fn from_complex(m: &ComplexMatrix) -> Self {
        let idx: Vec<(usize, usize)> =
            (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| (i, j))).collect();
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            real: idx.iter().map(|&p| m[p].re).collect(),
            imag: Some(idx.iter().map(|&p| m[p].im).collect()),
        }
    }

    fn check(&self) -> Result<()> {
        let len = self.rows * self.cols;
        let bad = self.real.len() != len || self.imag.as_ref().is_some_and(|v| v.len() != len);
        if self.rows == 0 || self.cols == 0 || bad {
            return Err(MatError::DimensionMismatch(format!(
                "matrix json declares {}×{} but carries {} entries",
                self.rows,
                self.cols,
                self.real.len()
            )));
        }
        if self.real.iter().chain(self.imag.iter().flatten()).any(|x| !x.is_finite()) {
            return Err(MatError::NonFinite);
        }
        Ok(())
    }

    /// Real matrix; fails if a nonzero imaginary part is present.
    pub fn to_real(&self) -> Result<RealMatrix> {
        self.check()?;
        if self.imag.as_ref().is_some_and(|v| v.iter().any(|&x| x != 0.0)) {
            return Err(MatError::InvalidArgument("expected a real matrix".into()));
        }
        Ok(DMatrix::from_row_slice(self.rows, self.cols, &self.real))
    }

    pub fn to_complex(&self) -> Result<ComplexMatrix> {
        self.check()?;
        let zero = vec![0.0; self.real.len()];
        let im = self.imag.as_ref().unwrap_or(&zero);
        let data: Vec<Complex64> =
            self.real.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect();
        Ok(DMatrix::from_row_slice(self.rows, self.cols, &data))
    }

    pub fn to_string(&self) -> String {
        serde_json::to_string(self).expect("matrix json serializes")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| MatError::InvalidArgument(e.to_string()))
    }
}
