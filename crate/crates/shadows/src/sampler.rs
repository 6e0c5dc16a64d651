use crate::{
    so_estimate, so_rotation, un_estimate, un_rotation, MeanAccumulator, Result, SoShadowSample,
    UnShadowSample,
};
use flo_gsim::{apply_flo, measure_fock, GaussianState};
use flo_matlin::par::{map_blocks, Exec};
use flo_matlin::rng::stream;
use flo_matlin::{haar_special_orthogonal, haar_unitary};
use rand::Rng;

/// Seeding and execution options for a batch of shadow samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShadowRun {
    pub seed: u64,
    pub exec: Exec,
    /// Retain every raw sample (debugging and exact-enumeration tests).
    pub keep_samples: bool,
}

impl ShadowRun {
    pub fn new(seed: u64) -> Self {
        Self { seed, exec: Exec::default(), keep_samples: false }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn keeping_samples(mut self) -> Self {
        self.keep_samples = true;
        self
    }
}

#[derive(Debug, Clone)]
pub struct ShadowOutcome<S> {
    pub mean: MeanAccumulator,
    pub samples: Vec<S>,
}

/// Haar `V`, apply `Φ_pas(V̄)`, measure.
pub fn draw_un_sample<R: Rng + ?Sized>(s: &GaussianState, rng: &mut R) -> Result<UnShadowSample> {
    let v = haar_unitary(s.n(), rng)?;
    let rotated = apply_flo(s, &un_rotation(&v))?;
    let b = measure_fock(&rotated, rng)?;
    Ok(UnShadowSample { v, b })
}

/// Haar `R ∈ SO(2n)`, apply `Φ(R)`, measure.
pub fn draw_so_sample<R: Rng + ?Sized>(s: &GaussianState, rng: &mut R) -> Result<SoShadowSample> {
    let r = haar_special_orthogonal(2 * s.n(), rng)?;
    let rotated = apply_flo(s, &so_rotation(&r))?;
    let b = measure_fock(&rotated, rng)?;
    Ok(SoShadowSample { r, b })
}

fn run<S, D, A>(
    count: u64,
    opts: ShadowRun,
    empty: MeanAccumulator,
    draw: D,
    add: A,
) -> Result<ShadowOutcome<S>>
where
    S: Send,
    D: Fn(&mut flo_matlin::rng::Stream) -> Result<S> + Sync + Send,
    A: Fn(&mut MeanAccumulator, &S) -> Result<()> + Sync + Send,
{
    let parts = map_blocks(opts.exec, count, |range| -> Result<ShadowOutcome<S>> {
        let mut acc = empty.clone();
        let mut kept = Vec::new();
        for i in range {
            let sample = draw(&mut stream(opts.seed, i))?;
            add(&mut acc, &sample)?;
            if opts.keep_samples {
                kept.push(sample);
            }
        }
        Ok(ShadowOutcome { mean: acc, samples: kept })
    });
    let mut out = ShadowOutcome { mean: empty, samples: Vec::new() };
    for p in parts {
        let p = p?;
        out.mean = out.mean.merge(&p.mean)?;
        out.samples.extend(p.samples);
    }
    Ok(out)
}

/// `count` U(n)-shadow samples of `s`; the mean estimates the 1-RDM.
pub fn un_shadows(s: &GaussianState, count: u64, opts: ShadowRun) -> Result<ShadowOutcome<UnShadowSample>> {
    let n = s.n();
    run(
        count,
        opts,
        MeanAccumulator::complex(n, n),
        |rng| draw_un_sample(s, rng),
        |acc, x| acc.add_complex(&un_estimate(x)),
    )
}

/// `count` SO(2n)-shadow samples of `s`; the mean estimates `Γ`.
pub fn so_shadows(s: &GaussianState, count: u64, opts: ShadowRun) -> Result<ShadowOutcome<SoShadowSample>> {
    let d = 2 * s.n();
    run(
        count,
        opts,
        MeanAccumulator::real(d, d),
        |rng| draw_so_sample(s, rng),
        |acc, x| acc.add_real(&so_estimate(x)),
    )
}
