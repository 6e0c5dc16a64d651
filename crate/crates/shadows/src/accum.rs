use crate::{Result, ShadowError};
use flo_matlin::{ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Fixed-point scale: entries are summed as integers in units of `2⁻⁶⁴`.
const SCALE: f64 = 18_446_744_073_709_551_616.0;

/// Streaming matrix mean with exact (integer) summation.
///
/// Each added entry is rounded to a multiple of `2⁻⁶⁴` and summed in `i128`,
/// so merging is associative and commutative bit for bit. Entries must stay
/// below `2⁴⁰` in magnitude and the count below `2²²` times that headroom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeanAccumulator {
    rows: usize,
    cols: usize,
    re: Vec<i128>,
    im: Option<Vec<i128>>,
    count: u64,
}

fn fix(x: f64) -> i128 {
    (x * SCALE).round() as i128
}

impl MeanAccumulator {
    pub fn real(rows: usize, cols: usize) -> Self {
        Self { rows, cols, re: vec![0; rows * cols], im: None, count: 0 }
    }

    pub fn complex(rows: usize, cols: usize) -> Self {
        Self { rows, cols, re: vec![0; rows * cols], im: Some(vec![0; rows * cols]), count: 0 }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_complex(&self) -> bool {
        self.im.is_some()
    }

    fn check(&self, rows: usize, cols: usize) -> Result<()> {
        if (rows, cols) != (self.rows, self.cols) {
            return Err(ShadowError::Shape(format!(
                "{rows}×{cols} into {}×{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn add_real(&mut self, m: &RealMatrix) -> Result<()> {
        self.check(m.nrows(), m.ncols())?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                self.re[i * self.cols + j] += fix(m[(i, j)]);
            }
        }
        self.count += 1;
        Ok(())
    }

    pub fn add_complex(&mut self, m: &ComplexMatrix) -> Result<()> {
        self.check(m.nrows(), m.ncols())?;
        let im = self
            .im
            .as_mut()
            .ok_or_else(|| ShadowError::Shape("complex sample into real accumulator".into()))?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = m[(i, j)];
                self.re[i * self.cols + j] += fix(z.re);
                im[i * self.cols + j] += fix(z.im);
            }
        }
        self.count += 1;
        Ok(())
    }

    pub fn merge(mut self, other: &Self) -> Result<Self> {
        self.check(other.rows, other.cols)?;
        if self.is_complex() != other.is_complex() {
            return Err(ShadowError::Shape("real/complex accumulator mix".into()));
        }
        for (a, b) in self.re.iter_mut().zip(&other.re) {
            *a += b;
        }
        if let (Some(a), Some(b)) = (self.im.as_mut(), other.im.as_ref()) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.count += other.count;
        Ok(self)
    }

    fn mean_of(&self, v: &[i128]) -> Vec<f64> {
        let denom = self.count.max(1) as f64 * SCALE;
        v.iter().map(|&s| s as f64 / denom).collect()
    }

    /// Real part of the mean (zero matrix when empty).
    pub fn mean_real(&self) -> RealMatrix {
        DMatrix::from_row_slice(self.rows, self.cols, &self.mean_of(&self.re))
    }

    pub fn mean_complex(&self) -> ComplexMatrix {
        let re = self.mean_of(&self.re);
        let im = self.im.as_ref().map(|v| self.mean_of(v)).unwrap_or_else(|| vec![0.0; re.len()]);
        let data: Vec<Complex64> = re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect();
        DMatrix::from_row_slice(self.rows, self.cols, &data)
    }
}
