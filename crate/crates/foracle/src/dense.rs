use crate::{OracleError, Result};
use flo_florep::{compile_active, ActiveFlo, Gate, GateList};
use flo_matlin::{ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub const DEFAULT_CAP: usize = 10;

/// Normalized state vector on `n` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    pub n: usize,
    pub amps: Vec<Complex64>,
}

impl DenseState {
    pub fn vacuum(n: usize) -> Self {
        Self::basis(&vec![0; n])
    }

    /// `|b⟩ = Π_j (a_j†)^{b_j} |0⟩` with the creators ordered `j = 1, 2, …`
    /// from the left, which under Jordan–Wigner is the plain basis vector.
    pub fn basis(b: &[u8]) -> Self {
        let n = b.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index_of(b)] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }

    /// `Σ_k ψ_k a_k† |0⟩`.
    pub fn single_particle(psi: &[Complex64]) -> Self {
        let n = psi.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (k, &z) in psi.iter().enumerate() {
            amps[1 << (n - 1 - k)] = z;
        }
        Self { n, amps }
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Occupation of mode `j` in basis index `x`.
    #[inline]
    pub fn bit(&self, x: usize, j: usize) -> u8 {
        ((x >> (self.n - 1 - j)) & 1) as u8
    }
}

fn index_of(b: &[u8]) -> usize {
    b.iter().fold(0, |acc, &bit| (acc << 1) | bit as usize)
}

/// `γ_p ψ`.
pub fn apply_majorana(p: usize, s: &DenseState) -> DenseState {
    let n = s.n;
    let j = p % n;
    let is_y = p >= n;
    let shift = n - 1 - j;
    let below_mask = if j == 0 { 0 } else { ((1usize << j) - 1) << (n - j) };
    let mut out = vec![Complex64::new(0.0, 0.0); s.amps.len()];
    for (x, &a) in s.amps.iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let sign = if (x & below_mask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let occupied = (x >> shift) & 1 == 1;
        let phase = if !is_y {
            Complex64::new(sign, 0.0)
        } else if occupied {
            Complex64::new(0.0, -sign)
        } else {
            Complex64::new(0.0, sign)
        };
        out[x ^ (1 << shift)] += phase * a;
    }
    DenseState { n, amps: out }
}

fn apply_gate(g: &Gate, s: &DenseState) -> DenseState {
    let n = s.n;
    match *g {
        Gate::MajoranaRotation { p, q, angle } => majorana_rotation(p, q, angle, s),
        Gate::Givens { p, q, angle } => {
            let t = majorana_rotation(p, q, angle, s);
            majorana_rotation(p + n, q + n, angle, &t)
        }
        Gate::ModePhase { mode, angle } => {
            let f = Complex64::from_polar(1.0, -angle);
            let mut out = s.clone();
            for (x, a) in out.amps.iter_mut().enumerate() {
                if (x >> (n - 1 - mode)) & 1 == 1 {
                    *a *= f;
                }
            }
            out
        }
        Gate::Reflection => apply_majorana(0, s),
    }
}

/// `e^{−(θ/2)γ_p γ_q} = cos(θ/2) − sin(θ/2) γ_p γ_q`.
fn majorana_rotation(p: usize, q: usize, angle: f64, s: &DenseState) -> DenseState {
    let (sn, cs) = (0.5 * angle).sin_cos();
    let pq = apply_majorana(p, &apply_majorana(q, s));
    let amps = s.amps.iter().zip(&pq.amps).map(|(a, b)| a * cs - b * sn).collect();
    DenseState { n: s.n, amps }
}

/// Dense oracle with a configurable mode cap.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(OracleError::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Apply a gate list (first gate first).
    pub fn apply(&self, gates: &GateList, s: &DenseState) -> Result<DenseState> {
        self.check(s.n)?;
        if gates.n != s.n {
            return Err(OracleError::Dimension(format!("{} gate modes vs {}", gates.n, s.n)));
        }
        Ok(gates.gates.iter().fold(s.clone(), |acc, g| apply_gate(g, &acc)))
    }

    /// `Φ(Q)|b⟩` for the canonical compiled representative of `Φ(Q)`.
    pub fn prepare(&self, q: &ActiveFlo, b: &[u8]) -> Result<DenseState> {
        self.apply(&compile_active(q), &DenseState::basis(b))
    }

    /// Full `2ⁿ×2ⁿ` matrix of a gate list.
    pub fn unitary(&self, gates: &GateList) -> Result<ComplexMatrix> {
        self.check(gates.n)?;
        let dim = 1usize << gates.n;
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut e = DenseState { n: gates.n, amps: vec![Complex64::new(0.0, 0.0); dim] };
            e.amps[col] = Complex64::new(1.0, 0.0);
            let out = self.apply(gates, &e)?;
            for (row, a) in out.amps.into_iter().enumerate() {
                m[(row, col)] = a;
            }
        }
        Ok(m)
    }
}

/// Gate list applied with the default cap.
pub fn dense_apply(gates: &GateList, s: &DenseState) -> Result<DenseState> {
    Oracle::default().apply(gates, s)
}

/// `Φ(Q)` as a dense matrix, default cap.
pub fn fock_unitary(q: &ActiveFlo) -> Result<ComplexMatrix> {
    Oracle::default().unitary(&compile_active(q))
}

/// Quantities computed by direct operator application.
#[derive(Debug, Clone)]
pub struct ExactQuantities {
    /// `|⟨b|ψ⟩|²` indexed by basis index (mode 1 most significant).
    pub probs: Vec<f64>,
    /// `D_jk = ⟨a_j† a_k⟩`.
    pub rdm: ComplexMatrix,
    /// `Γ_pq = −(i/2)⟨[γ_p, γ_q]⟩`.
    pub covariance: RealMatrix,
    pub num1: f64,
    pub num2: f64,
}

pub fn exact_quantities(s: &DenseState) -> ExactQuantities {
    let n = s.n;
    let probs: Vec<f64> = s.amps.iter().map(|z| z.norm_sqr()).collect();
    let gam: Vec<DenseState> = (0..2 * n).map(|p| apply_majorana(p, s)).collect();
    let half = Complex64::new(0.5, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let lowered: Vec<Vec<Complex64>> = (0..n)
        .map(|k| gam[k].amps.iter().zip(&gam[k + n].amps).map(|(x, y)| (x + i * y) * half).collect())
        .collect();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let rdm = DMatrix::from_fn(n, n, |j, k| dot(&lowered[j], &lowered[k]));
    let rdm = (&rdm + rdm.adjoint()) * half;
    let cov = DMatrix::from_fn(2 * n, 2 * n, |p, q| {
        if p == q {
            0.0
        } else {
            (-i * dot(&gam[p].amps, &gam[q].amps)).re
        }
    });
    let covariance = (&cov - cov.transpose()) * 0.5;
    let (mut num1, mut num2) = (0.0, 0.0);
    for (x, p) in probs.iter().enumerate() {
        let k = x.count_ones() as f64;
        num1 += p * k;
        num2 += p * k * k;
    }
    ExactQuantities { probs, rdm, covariance, num1, num2 }
}

