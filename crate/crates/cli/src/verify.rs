//! Invariant suites: exact identities, oracle equivalence, inequality
//! families and estimator unbiasedness.
//!
//! Each suite counts its cases and records the worst slack `lhs − rhs`
//! (positive slack is a failure).

use crate::truth::{near_identity_active, near_identity_unitary, random_active, random_passive};
use anyhow::Result;
use flo_florep::{
    compile_active, compile_passive, embed_passive, extend_modes, extract_passive, from_bogoliubov,
    passive_alignment, to_bogoliubov, ActiveFlo, Gate,
};
use flo_foracle::{
    apply_majorana, dense_apply, diamond_distance_with, exact_quantities, fock_unitary, moment_bounds_check,
    trace_distance, wick_four_point, wick_two_point, DenseState, Oracle,
};
use flo_gsim::{
    apply_flo, choi_block, fepr_covariance_of, fepr_state, fock_basis_state, outcome_probability,
    rdm_from_covariance, sign_matrix, vacuum_state,
};
use flo_matlin::rng::{stream, Stream};
use flo_matlin::{
    c, haar_special_orthogonal, haar_unitary, op_norm, op_norm_c, phase_distance, principal_root, svd_round,
    svd_round_real, symplectic_form, ComplexMatrix, RealMatrix, RoundTarget,
};
use flo_shadows::{
    e_matrix, so_estimate, so_shadows, un_estimate, un_rotation, so_rotation, un_shadows, ShadowRun,
    SoShadowSample, UnShadowSample,
};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::time::Instant;

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub group: u8,
    pub cases: usize,
    pub failures: usize,
    /// Largest `lhs − rhs` seen; `≤ 0` when every case holds.
    pub worst_slack: f64,
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.error.is_none() && self.cases > 0
    }
}

/// Case counter for one suite.
#[derive(Debug, Default)]
pub struct Tally {
    cases: usize,
    failures: usize,
    worst: f64,
}

impl Tally {
    /// Record one case with slack `lhs − rhs`.
    pub fn check(&mut self, slack: f64) {
        if self.cases == 0 || slack > self.worst || slack.is_nan() {
            self.worst = slack;
        }
        self.cases += 1;
        if !(slack <= 0.0) {
            self.failures += 1;
        }
    }

    /// Record `lhs ≤ rhs`.
    pub fn le(&mut self, lhs: f64, rhs: f64) {
        self.check(lhs - rhs);
    }
}

type SuiteFn = fn(&mut Tally, &mut Stream) -> Result<()>;

/// A named suite in one of the four groups (identities, oracle equivalence,
/// inequalities, unbiasedness).
pub struct Suite {
    pub name: &'static str,
    pub group: u8,
    run: SuiteFn,
}

impl Suite {
    pub fn run(&self, seed: u64) -> SuiteReport {
        let mut tally = Tally::default();
        let mut rng = stream(seed, u64::from(self.group) << 32 | self.name.len() as u64);
        let start = Instant::now();
        let res = (self.run)(&mut tally, &mut rng);
        SuiteReport {
            suite: self.name.to_string(),
            group: self.group,
            cases: tally.cases,
            failures: tally.failures,
            worst_slack: tally.worst,
            error: res.err().map(|e| format!("{e:#}")),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "e_matrix_square", group: 1, run: e_matrix_square },
        Suite { name: "t_map_rdm", group: 1, run: t_map_rdm },
        Suite { name: "fepr_choi_block", group: 1, run: fepr_choi_block },
        Suite { name: "bogoliubov_unitarity", group: 1, run: bogoliubov_unitarity },
        Suite { name: "wick_num_squared", group: 1, run: wick_num_squared },
        Suite { name: "oracle_gsim_agreement", group: 2, run: oracle_gsim_agreement },
        Suite { name: "compiled_one_body", group: 2, run: compiled_one_body },
        Suite { name: "alignment_lemma", group: 3, run: alignment_lemma },
        Suite { name: "rounding_contract", group: 3, run: rounding_contract },
        Suite { name: "diamond_vs_operator_norm", group: 3, run: diamond_vs_operator_norm },
        Suite { name: "sector_vs_phase_distance", group: 3, run: sector_vs_phase_distance },
        Suite { name: "number_moments", group: 3, run: number_moments },
        Suite { name: "root_contraction", group: 3, run: root_contraction },
        Suite { name: "perturbed_columns", group: 3, run: perturbed_columns },
        Suite { name: "un_shadow_mean", group: 4, run: un_shadow_mean },
        Suite { name: "so_shadow_mean", group: 4, run: so_shadow_mean },
        Suite { name: "shadow_enumeration", group: 4, run: shadow_enumeration },
    ]
}

/// Run the suites of the given groups (all when empty) in order.
pub fn run_suites(groups: &[u8], seed: u64) -> Vec<SuiteReport> {
    suites()
        .iter()
        .filter(|s| groups.is_empty() || groups.contains(&s.group))
        .map(|s| s.run(seed))
        .collect()
}

fn random_bits(n: usize, rng: &mut Stream) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..2u8)).collect()
}

fn bits_of(x: usize, n: usize) -> Vec<u8> {
    (0..n).map(|j| ((x >> (n - 1 - j)) & 1) as u8).collect()
}

fn random_unit_vector(n: usize, rng: &mut Stream) -> DVector<Complex64> {
    let v = DVector::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let norm = v.norm();
    v / c(norm)
}

/// Largest entry modulus.
fn cmax(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn cov(q: &ActiveFlo) -> RealMatrix {
    let j = symplectic_form(q.n());
    q.matrix() * j * q.matrix().transpose()
}

fn e_matrix_square(t: &mut Tally, _: &mut Stream) -> Result<()> {
    for n in 1..=12usize {
        for x in 0..1usize << n {
            let b = bits_of(x, n);
            let w = b.iter().map(|&y| f64::from(y)).sum::<f64>();
            let nf = n as f64;
            let e = e_matrix(&b);
            let rhs = &e * (nf + 1.0 - 2.0 * w) + RealMatrix::identity(n, n) * (w * (nf + 1.0 - w));
            t.check((&e * &e - rhs).amax());
        }
    }
    Ok(())
}

/// `(I + T(Γ))/2` against the dense `⟨a_j†a_k⟩`, and the inverse identity
/// `Γ = J + 2[[Im D, −Re D], [Re D, Im D]]` on number-conserving states.
fn t_map_rdm(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let oracle = Oracle::default();
    for case in 0..200 {
        let n = 1 + case % 6;
        let b = random_bits(n, rng);
        let q = if case % 2 == 0 { random_active(n, rng)? } else { embed_passive(&random_passive(n, rng)?) };
        let g = apply_flo(&fock_basis_state(&b)?, &q)?;
        let d = rdm_from_covariance(&g).d;
        let dense = exact_quantities(&oracle.prepare(&q, &b)?).rdm;
        t.check(cmax(&(&d - dense)) - 1e-9);
        if case % 2 == 1 {
            let (re, im) = (d.map(|z| z.re), d.map(|z| z.im));
            let mut blk = RealMatrix::zeros(2 * n, 2 * n);
            blk.view_mut((0, 0), (n, n)).copy_from(&im);
            blk.view_mut((0, n), (n, n)).copy_from(&(-&re));
            blk.view_mut((n, 0), (n, n)).copy_from(&re);
            blk.view_mut((n, n), (n, n)).copy_from(&im);
            let rebuilt = symplectic_form(n) + blk * 2.0;
            t.check((rebuilt - g.gamma()).amax() - 1e-10);
        }
    }
    Ok(())
}

fn fepr_choi_block(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for n in 1..=6 {
        for _ in 0..10 {
            let q = random_active(n, rng)?;
            let direct = fepr_covariance_of(&q);
            t.check((choi_block(direct.gamma()) - q.matrix() * sign_matrix(n)).amax() - 1e-12);
            let via = apply_flo(&fepr_state(n), &extend_modes(&q, 2 * n))?;
            t.check((via.gamma() - direct.gamma()).amax() - 1e-10);
        }
    }
    Ok(())
}

fn bogoliubov_unitarity(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for case in 0..200 {
        let n = 1 + case % 6;
        let q = random_active(n, rng)?;
        let form = to_bogoliubov(&q);
        t.check(form.unitarity_residual() - 1e-12);
        t.check((from_bogoliubov(&form).matrix() - q.matrix()).amax() - 1e-12);
    }
    Ok(())
}

fn wick_num_squared(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for case in 0..100 {
        let n = 1 + case % 5;
        let z = random_active(n, rng)?;
        let psi = random_unit_vector(n, rng);
        let corr = DMatrix::from_fn(n, n, |p, q| psi[p].conj() * psi[q]);
        let table = wick_two_point(&z, &corr);
        let sum: f64 = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| wick_four_point(&table, j, k).re).sum();
        let s = dense_apply(&compile_active(&z), &DenseState::single_particle(psi.as_slice()))?;
        t.check((sum - exact_quantities(&s).num2).abs() - 1e-8);
    }
    Ok(())
}

fn oracle_gsim_agreement(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let oracle = Oracle::default();
    for case in 0..200 {
        let n = 1 + case % 6;
        let q = random_active(n, rng)?;
        let b = random_bits(n, rng);
        let e = exact_quantities(&oracle.prepare(&q, &b)?);
        let g = apply_flo(&fock_basis_state(&b)?, &q)?;
        let mut worst = (g.gamma() - &e.covariance).amax();
        worst = worst.max(cmax(&(rdm_from_covariance(&g).d - &e.rdm)));
        for x in 0..1usize << n {
            worst = worst.max((outcome_probability(&g, &bits_of(x, n))? - e.probs[x]).abs());
        }
        t.check(worst - 1e-9);
    }
    Ok(())
}

fn majorana_matrix(p: usize, n: usize) -> ComplexMatrix {
    let dim = 1 << n;
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut e = DenseState { n, amps: vec![Complex64::new(0.0, 0.0); dim] };
        e.amps[col] = Complex64::new(1.0, 0.0);
        for (row, a) in apply_majorana(p, &e).amps.into_iter().enumerate() {
            m[(row, col)] = a;
        }
    }
    m
}

/// Compiled gate lists recompose to `Q`, and the dense unitary acts on
/// Majoranas as `U†γ_pU = Σ_k Q_pk γ_k`.
fn compiled_one_body(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let gammas: Vec<Vec<ComplexMatrix>> = (1..=6).map(|n| (0..2 * n).map(|p| majorana_matrix(p, n)).collect()).collect();
    for case in 0..200 {
        let n = 1 + case % 6;
        let q = if case % 4 == 3 { embed_passive(&random_passive(n, rng)?) } else { random_active(n, rng)? };
        let list = if case % 4 == 3 { compile_passive(&extract_passive(&q)?) } else { compile_active(&q) };
        let mut worst = (list.one_body() - q.matrix()).amax();
        let u = fock_unitary(&q)?;
        let gam = &gammas[n - 1];
        for p in 0..2 * n {
            let lhs = u.adjoint() * &gam[p] * &u;
            let mut rhs = ComplexMatrix::zeros(1 << n, 1 << n);
            for (k, g) in gam.iter().enumerate() {
                rhs += g * c(q.matrix()[(p, k)]);
            }
            worst = worst.max(cmax(&(lhs - rhs)));
        }
        t.check(worst - 1e-8);
    }
    Ok(())
}

/// `‖Γ₁ − Γ₂R⋆‖`-type alignment gap never exceeds `‖Γ₁ − Γ₂‖`.
fn alignment_lemma(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for case in 0..500 {
        let n = 2 + case % 12;
        let q1 = random_active(n, rng)?;
        let spread = 0.02 + 0.3 * ((case % 7) as f64) / 7.0;
        let mut m = q1.matrix().clone();
        for _ in 0..4 {
            let p = rng.gen_range(0..2 * n);
            let q = (p + 1 + rng.gen_range(0..2 * n - 1)) % (2 * n);
            Gate::MajoranaRotation { p, q, angle: spread * rng.gen_range(-1.0..1.0) }.apply_left(&mut m);
        }
        let q2 = ActiveFlo::new(m)?;
        let (_, gap) = passive_alignment(&q1, &q2)?;
        t.le(gap, op_norm(&(cov(&q1) - cov(&q2))) + 1e-9);
    }
    Ok(())
}

/// `‖round(A) − B‖ ≤ 2‖A − B‖` for unitary, orthogonal and projector targets.
fn rounding_contract(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for case in 0..500 {
        let n = 2 + case % 6;
        match case % 3 {
            0 => {
                let b = haar_unitary(n, rng)?;
                let e = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)));
                let a = &b + e;
                let r = svd_round(&a, RoundTarget::Unitary)?;
                t.le(op_norm_c(&(r - &b)), 2.0 * op_norm_c(&(&a - &b)) + 1e-12);
            }
            1 => {
                let b = haar_special_orthogonal(2 * n, rng)?;
                let e = DMatrix::from_fn(2 * n, 2 * n, |_, _| rng.gen_range(-0.3..0.3));
                let a = &b + e;
                let r = svd_round_real(&a, RoundTarget::Orthogonal)?;
                t.le(op_norm(&(r - &b)), 2.0 * op_norm(&(&a - &b)) + 1e-12);
            }
            _ => {
                let k = 1 + case % (n - 1);
                let v = haar_unitary(n, rng)?.columns(0, k).into_owned();
                let p = &v * v.adjoint();
                let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                let h: ComplexMatrix = (&g + g.adjoint()) * c(0.5);
                let h = &h * c(rng.gen_range(0.01..0.45) / op_norm_c(&h));
                let a = &p + h;
                let r = svd_round(&a, RoundTarget::Projector(k))?;
                t.le(op_norm_c(&(r - &p)), 2.0 * op_norm_c(&(&a - &p)) + 1e-12);
            }
        }
    }
    Ok(())
}

fn diamond_vs_operator_norm(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let oracle = Oracle::default();
    for case in 0..500 {
        let n = 1 + case % 5;
        let q1 = random_active(n, rng)?;
        let scale = [0.02, 0.1, 0.3, 1.0][case % 4];
        let q2 = q1.compose(&near_identity_active(n, scale, rng)?);
        let d = diamond_distance_with(&oracle, &q1, &q2)?;
        t.le(d, n as f64 * op_norm(&(q1.matrix() - q2.matrix())) + 1e-9);
    }
    Ok(())
}

/// Trace distance of `η`-particle outputs is at most `η·phdist(U, V)`.
fn sector_vs_phase_distance(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let oracle = Oracle::default();
    for case in 0..500 {
        let n = 1 + case % 5;
        let eta = 1 + (case / 5) % n;
        let u = random_passive(n, rng)?;
        let w = near_identity_unitary(n, [0.05, 0.2, 0.5][case % 3], rng);
        let v = flo_florep::PassiveFlo::from_unchecked(u.matrix() * w);
        let b: Vec<u8> = (0..n).map(|j| u8::from(j < eta)).collect();
        let su = oracle.prepare(&embed_passive(&u), &b)?;
        let sv = oracle.prepare(&embed_passive(&v), &b)?;
        // √(1 − f) turns rounding in f into ~1e-8 for near-identical states.
        t.le(trace_distance(&su, &sv)?, eta as f64 * phase_distance(u.matrix(), v.matrix())? + 1e-7);
    }
    Ok(())
}

/// `⟨Num⟩ ≤ 1 + ‖β‖_F²` and `⟨Num²⟩ ≤ 2 + 7‖β‖_F² + ‖β‖_F⁴` on `Φ(Z)`-rotated
/// single-particle states.
fn number_moments(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for case in 0..500 {
        let n = 1 + case % 5;
        let z = near_identity_active(n, [0.1, 0.3, 0.6][case % 3], rng)?;
        let psi = random_unit_vector(n, rng);
        let m = moment_bounds_check(&z, &psi);
        t.le(m.num1, m.bound1 + 1e-12);
        t.le(m.num2, m.bound2 + 1e-12);
    }
    Ok(())
}

/// `‖U^{1/p} − V^{1/p}‖ ≤ (π/p)‖U − V‖` for `U, V` within 0.1 of `I`.
fn root_contraction(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for case in 0..500 {
        let n = 2 + case % 4;
        let u = near_identity_unitary(n, 0.1, rng);
        let v = near_identity_unitary(n, 0.1, rng);
        let p = [2u32, 4, 8][case % 3];
        let lhs = op_norm_c(&(principal_root(&u, p)? - principal_root(&v, p)?));
        t.le(lhs, PI / p as f64 * op_norm_c(&(&u - &v)) + 1e-12);
    }
    Ok(())
}

/// RDM of `Φ(Z)Φ_pas(U)|1_j⟩` stays within `‖Z − I‖` of `|ū_j⟩⟨ū_j|`.
fn perturbed_columns(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    for case in 0..500 {
        let n = 2 + case % 5;
        let u = random_passive(n, rng)?;
        let z = near_identity_active(n, 0.5, rng)?;
        let dz = op_norm(&(z.matrix() - RealMatrix::identity(2 * n, 2 * n)));
        let q = z.compose(&embed_passive(&u));
        let j = case % n;
        let mut b = vec![0u8; n];
        b[j] = 1;
        let d = rdm_from_covariance(&apply_flo(&fock_basis_state(&b)?, &q)?).d;
        let col = u.matrix().column(j).map(|x| x.conj());
        t.le(op_norm_c(&(d - &col * col.adjoint())), dz + 1e-10);
    }
    Ok(())
}

fn un_shadow_mean(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let n = 4;
    let q = embed_passive(&random_passive(n, rng)?);
    let s = apply_flo(&fock_basis_state(&[1, 1, 0, 0])?, &q)?;
    let d = rdm_from_covariance(&s).d;
    let out = un_shadows(&s, 200_000, ShadowRun::new(rng.gen()))?;
    t.le(op_norm_c(&(out.mean.mean_complex() - d)), 0.06);
    Ok(())
}

fn so_shadow_mean(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let n = 4;
    let s = apply_flo(&vacuum_state(n), &random_active(n, rng)?)?;
    let out = so_shadows(&s, 200_000, ShadowRun::new(rng.gen()))?;
    t.le(op_norm(&(out.mean.mean_real() - s.gamma())), 0.15);
    Ok(())
}

/// For each fixed basis, the exact outcome average of the estimator (all
/// outcomes enumerated with dense probabilities) equals the dephased
/// channel in closed form to 1e-9; the Haar average of those means is
/// within a CLT band of the true RDM / covariance.
fn shadow_enumeration(t: &mut Tally, rng: &mut Stream) -> Result<()> {
    let oracle = Oracle::default();
    let draws = 200;
    for n in 2..=5usize {
        let eta = 1 + n / 3;
        let b0: Vec<u8> = (0..n).map(|j| u8::from(j < eta)).collect();
        let q = embed_passive(&random_passive(n, rng)?);
        let d = rdm_from_covariance(&apply_flo(&fock_basis_state(&b0)?, &q)?).d;
        let mut avg = ComplexMatrix::zeros(n, n);
        for _ in 0..draws {
            let v = haar_unitary(n, rng)?;
            let probs = exact_quantities(&oracle.prepare(&un_rotation(&v).compose(&q), &b0)?).probs;
            let mut mean = ComplexMatrix::zeros(n, n);
            for (x, p) in probs.iter().enumerate() {
                mean += un_estimate(&UnShadowSample { v: v.clone(), b: bits_of(x, n) }) * c(*p);
            }
            let rotated = &v * &d * v.adjoint();
            let diag = ComplexMatrix::from_diagonal(&rotated.diagonal());
            let closed = v.adjoint() * diag * &v * c(n as f64 + 1.0) - ComplexMatrix::identity(n, n) * c(eta as f64);
            t.check(cmax(&(&mean - closed)) - 1e-9);
            avg += mean;
        }
        avg /= c(draws as f64);
        t.le(op_norm_c(&(avg - &d)), 5.0 * (n as f64 + 1.0) / (draws as f64).sqrt());

        let q = random_active(n, rng)?;
        let gamma = apply_flo(&vacuum_state(n), &q)?.into_gamma();
        let mut avg = RealMatrix::zeros(2 * n, 2 * n);
        for _ in 0..draws {
            let r = haar_special_orthogonal(2 * n, rng)?;
            let probs = exact_quantities(&oracle.prepare(&so_rotation(&r).compose(&q), &vec![0; n])?).probs;
            let mut mean = RealMatrix::zeros(2 * n, 2 * n);
            for (x, p) in probs.iter().enumerate() {
                mean += so_estimate(&SoShadowSample { r: r.clone(), b: bits_of(x, n) }) * *p;
            }
            let rotated = &r * &gamma * r.transpose();
            let mut kept = RealMatrix::zeros(2 * n, 2 * n);
            for j in 0..n {
                kept[(j, j + n)] = rotated[(j, j + n)];
                kept[(j + n, j)] = rotated[(j + n, j)];
            }
            let closed = r.transpose() * kept * &r * (2.0 * n as f64 - 1.0);
            t.check((&mean - closed).amax() - 1e-9);
            avg += mean;
        }
        avg /= draws as f64;
        t.le(op_norm(&(avg - &gamma)), 5.0 * (2.0 * n as f64 - 1.0) / (draws as f64).sqrt());
    }
    Ok(())
}
