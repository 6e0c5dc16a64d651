use crate::{GaussianState, GsimError, Result};
use rand::Rng;

/// Marginals this close to 0 or 1 are treated as deterministic.
const DETERMINISTIC: f64 = 1e-12;
/// Marginals may leave [0, 1] by this much before the state is rejected.
const SLACK: f64 = 1e-6;

/// Sample all occupations `b ∈ {0,1}ⁿ` from `|⟨b|ψ⟩|²`.
pub fn measure_fock<R: Rng + ?Sized>(s: &GaussianState, rng: &mut R) -> Result<Vec<u8>> {
    let modes: Vec<usize> = (0..s.n()).collect();
    measure_modes(s, &modes, rng)
}

/// Sample the joint occupations of `modes` (in the given order) by sequential
/// conditioning: `p(b_j = 1 | history) = (1 − Γ_{j,j+n})/2` on the
/// conditioned covariance, followed by a rank-two update.
pub fn measure_modes<R: Rng + ?Sized>(
    s: &GaussianState,
    modes: &[usize],
    rng: &mut R,
) -> Result<Vec<u8>> {
    let mut w = Work::new(s, modes)?;
    let mut out = Vec::with_capacity(modes.len());
    for step in 0..modes.len() {
        let p1 = w.marginal(step)?;
        let bit = if p1 <= DETERMINISTIC {
            0
        } else if p1 >= 1.0 - DETERMINISTIC {
            1
        } else {
            u8::from(rng.gen::<f64>() < p1)
        };
        w.condition(step, bit, p1);
        out.push(bit);
    }
    Ok(out)
}

/// Exact probability `|⟨b|ψ⟩|²` of a full occupation pattern.
pub fn outcome_probability(s: &GaussianState, b: &[u8]) -> Result<f64> {
    if b.len() != s.n() {
        return Err(GsimError::Dimension(format!("{} bits for {} modes", b.len(), s.n())));
    }
    let modes: Vec<usize> = (0..s.n()).collect();
    let mut w = Work::new(s, &modes)?;
    let mut prob = 1.0;
    for (step, &bit) in b.iter().enumerate() {
        let p1 = w.marginal(step)?;
        let p = if bit == 1 { p1 } else { 1.0 - p1 };
        if p <= DETERMINISTIC {
            return Ok(0.0);
        }
        prob *= p;
        w.condition(step, bit, p1);
    }
    Ok(prob)
}

/// Row-major working copy of `Γ` restricted to the indices still relevant.
struct Work {
    n: usize,
    d: usize,
    g: Vec<f64>,
    modes: Vec<usize>,
}

impl Work {
    fn new(s: &GaussianState, modes: &[usize]) -> Result<Self> {
        let n = s.n();
        if modes.iter().any(|&m| m >= n) {
            return Err(GsimError::Dimension(format!("mode out of range in {modes:?}")));
        }
        let d = 2 * n;
        let gm = s.gamma();
        let mut g = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                g[i * d + j] = gm[(i, j)];
            }
        }
        Ok(Self { n, d, g, modes: modes.to_vec() })
    }

    fn marginal(&self, step: usize) -> Result<f64> {
        let j = self.modes[step];
        let p1 = 0.5 * (1.0 - self.g[j * self.d + j + self.n]);
        if !(-SLACK..=1.0 + SLACK).contains(&p1) {
            return Err(GsimError::Degenerate(p1));
        }
        Ok(p1.clamp(0.0, 1.0))
    }

    /// Project mode `modes[step]` onto occupation `bit`. With
    /// `t = ±1` for outcome 1/0 and `(j, k) = (j, j+n)`:
    /// `Γ'_pq = Γ_pq + t(Γ_pj Γ_qk − Γ_pk Γ_qj)/(1 − tΓ_jk)`.
    fn condition(&mut self, step: usize, bit: u8, p1: f64) {
        if p1 <= DETERMINISTIC || p1 >= 1.0 - DETERMINISTIC {
            return;
        }
        let (n, d) = (self.n, self.d);
        let j = self.modes[step];
        let k = j + n;
        let t = if bit == 1 { 1.0 } else { -1.0 };
        let denom = 1.0 - t * self.g[j * d + k];
        let rest: Vec<usize> =
            self.modes[step + 1..].iter().flat_map(|&m| [m, m + n]).collect();
        let colj: Vec<f64> = rest.iter().map(|&p| self.g[p * d + j]).collect();
        let colk: Vec<f64> = rest.iter().map(|&p| self.g[p * d + k]).collect();
        let f = t / denom;
        for (a, &p) in rest.iter().enumerate() {
            for (b, &q) in rest.iter().enumerate() {
                self.g[p * d + q] += f * (colj[a] * colk[b] - colk[a] * colj[b]);
            }
        }
        for &p in &rest {
            self.g[p * d + j] = 0.0;
            self.g[j * d + p] = 0.0;
            self.g[p * d + k] = 0.0;
            self.g[k * d + p] = 0.0;
        }
        self.g[j * d + k] = -t;
        self.g[k * d + j] = t;
    }
}
