use crate::{Result, ShadowError};
use serde::{Deserialize, Serialize};

/// Default constant of the single-particle (phaseless) sample size.
pub const SINGLE_PARTICLE_CONSTANT: f64 = 5.6e6;

/// One entry per sample-size formula. `eps`/`delta` are target error and
/// failure probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleKind {
    /// `12 nη log(2n/δ)/ε²`
    SlaterRdm { n: usize, eta: usize, eps: f64, delta: f64 },
    /// `48 nη² log(2n/δ)/ε²`
    SlaterTomo { n: usize, eta: usize, eps: f64, delta: f64 },
    /// `C(11n + 5 log(4n/δ))/ε²`
    SingleParticle { n: usize, eps: f64, delta: f64, constant: f64 },
    /// `8n² log(4n/δ)/ε²`
    Covariance { n: usize, eps: f64, delta: f64 },
    /// `9n³ log(4n/δ)/ε²`
    GaussianTomo { n: usize, eps: f64, delta: f64 },
    /// `32n² log(4n/η)/δ²`
    VacuumStage { n: usize, delta: f64, eta: f64 },
    /// `(C₁′n + C₂′) log(2n/η)/δ²` with `C′ᵢ = 2(Cᵢ + 1/3)`,
    /// `C₁ = 2(√(2 + 7c² + c⁴) + 1) + c²`, `C₂ = 5 + 8c² + c⁴`.
    PerturbedRdm { n: usize, c: f64, delta: f64, eta: f64 },
    /// `(6 + 4√2) log(2/p)/ε²`
    Phase { eps: f64, p_fail: f64 },
    /// `572 log(8/δ)/ε²`
    PhaseAlg { eps: f64, delta: f64 },
    /// `128n² log(8n/δ)/ε²`
    Choi { n: usize, eps: f64, delta: f64 },
    /// `⌈C₁n³ log(Kn/δ)/ε²⌉ + 2n⌈C₂n² log(Kn²/δ)/ε²⌉ + 2⌈C₃ log(K/δ)/ε²⌉`
    /// with `C₁ = 2.2·10⁸`, `C₂ = 3.3·10⁸`, `C₃ = 1000`, `K = 12`.
    ActiveBase { n: usize, eps: f64, delta: f64 },
}

fn unit(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(ShadowError::InvalidParameter(format!("{name} = {x} must lie in (0, 1)")))
    }
}

fn modes(n: usize) -> Result<f64> {
    if n == 0 {
        Err(ShadowError::InvalidParameter("n must be at least 1".into()))
    } else {
        Ok(n as f64)
    }
}

fn particles(n: usize, eta: usize) -> Result<f64> {
    if eta == 0 || eta > n {
        Err(ShadowError::InvalidParameter(format!("η = {eta} must lie in 1..={n}")))
    } else {
        Ok(eta as f64)
    }
}

/// The formula's value before rounding.
fn raw(kind: &SampleKind) -> Result<f64> {
    use SampleKind::*;
    Ok(match *kind {
        SlaterRdm { n, eta, eps, delta } => {
            let (nf, e) = (modes(n)?, particles(n, eta)?);
            12.0 * nf * e * (2.0 * nf / unit("δ", delta)?).ln() / unit("ε", eps)?.powi(2)
        }
        SlaterTomo { n, eta, eps, delta } => {
            let (nf, e) = (modes(n)?, particles(n, eta)?);
            48.0 * nf * e * e * (2.0 * nf / unit("δ", delta)?).ln() / unit("ε", eps)?.powi(2)
        }
        SingleParticle { n, eps, delta, constant } => {
            if !(constant > 0.0 && constant.is_finite()) {
                return Err(ShadowError::InvalidParameter(format!("constant {constant}")));
            }
            let nf = modes(n)?;
            constant * (11.0 * nf + 5.0 * (4.0 * nf / unit("δ", delta)?).ln())
                / unit("ε", eps)?.powi(2)
        }
        Covariance { n, eps, delta } => {
            let nf = modes(n)?;
            8.0 * nf * nf * (4.0 * nf / unit("δ", delta)?).ln() / unit("ε", eps)?.powi(2)
        }
        GaussianTomo { n, eps, delta } => {
            let nf = modes(n)?;
            9.0 * nf.powi(3) * (4.0 * nf / unit("δ", delta)?).ln() / unit("ε", eps)?.powi(2)
        }
        VacuumStage { n, delta, eta } => {
            let nf = modes(n)?;
            32.0 * nf * nf * (4.0 * nf / unit("η", eta)?).ln() / unit("δ", delta)?.powi(2)
        }
        PerturbedRdm { n, c, delta, eta } => {
            let nf = modes(n)?;
            let c = unit("c", c)?;
            let c2 = c * c;
            let c1 = 2.0 * ((2.0 + 7.0 * c2 + c2 * c2).sqrt() + 1.0) + c2;
            let c2_ = 5.0 + 8.0 * c2 + c2 * c2;
            let (p1, p2) = (2.0 * (c1 + 1.0 / 3.0), 2.0 * (c2_ + 1.0 / 3.0));
            (p1 * nf + p2) * (2.0 * nf / unit("η", eta)?).ln() / unit("δ", delta)?.powi(2)
        }
        Phase { eps, p_fail } => {
            (6.0 + 4.0 * 2f64.sqrt()) * (2.0 / unit("p′", p_fail)?).ln() / unit("ε", eps)?.powi(2)
        }
        PhaseAlg { eps, delta } => 572.0 * (8.0 / unit("δ", delta)?).ln() / unit("ε", eps)?.powi(2),
        Choi { n, eps, delta } => {
            let nf = modes(n)?;
            128.0 * nf * nf * (8.0 * nf / unit("δ", delta)?).ln() / unit("ε", eps)?.powi(2)
        }
        ActiveBase { n, eps, delta } => {
            let nf = modes(n)?;
            let (e2, d) = (unit("ε", eps)?.powi(2), unit("δ", delta)?);
            let k = 12.0;
            (2.2e8 * nf.powi(3) * (k * nf / d).ln() / e2).ceil()
                + 2.0 * nf * (3.3e8 * nf * nf * (k * nf * nf / d).ln() / e2).ceil()
                + 2.0 * (1000.0 * (k / d).ln() / e2).ceil()
        }
    })
}

/// `⌈scale · formula⌉`, at least 1.
pub fn sample_size(kind: &SampleKind, scale: f64) -> Result<u64> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(ShadowError::InvalidParameter(format!("scale {scale} must be positive")));
    }
    let v = (raw(kind)? * scale).ceil();
    if v >= u64::MAX as f64 {
        return Err(ShadowError::InvalidParameter(format!("sample size {v:e} overflows")));
    }
    Ok((v as u64).max(1))
}
