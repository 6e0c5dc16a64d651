use crate::{ActiveFlo, FloError, PassiveFlo, Result};
use flo_matlin::{ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Angles and entries below this are treated as zero during elimination.
const SKIP: f64 = 1e-15;

/// Elementary FLO gate. Angles are in radians, indices zero-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    /// `e^{−θ(a_p† a_q − a_q† a_p)}`; one-body rows `p: (cos θ, −sin θ)`, `q: (sin θ, cos θ)`.
    Givens { p: usize, q: usize, angle: f64 },
    /// `e^{−(θ/2) γ_p γ_q}`; same one-body rotation acting on Majorana indices.
    MajoranaRotation { p: usize, q: usize, angle: f64 },
    /// `e^{−iα a_q† a_q}`; multiplies `a_q` by `e^{−iα}`.
    ModePhase { mode: usize, angle: f64 },
    /// `γ_1`; one-body action `diag(1, −1, …, −1)`.
    Reflection,
}

impl Gate {
    /// Apply the one-body action from the left: `M ← G·M` (rows of a `2n×k` matrix).
    pub fn apply_left(&self, m: &mut RealMatrix) {
        let n = m.nrows() / 2;
        match *self {
            Gate::MajoranaRotation { p, q, angle } => rotate_rows(m, p, q, angle),
            Gate::Givens { p, q, angle } => {
                rotate_rows(m, p, q, angle);
                rotate_rows(m, p + n, q + n, angle);
            }
            Gate::ModePhase { mode, angle } => rotate_rows(m, mode, mode + n, -angle),
            Gate::Reflection => {
                for r in 1..m.nrows() {
                    m.row_mut(r).neg_mut();
                }
            }
        }
    }

    pub fn is_passive(&self) -> bool {
        matches!(self, Gate::Givens { .. } | Gate::ModePhase { .. })
    }

    fn inverse(&self) -> Gate {
        match *self {
            Gate::Givens { p, q, angle } => Gate::Givens { p, q, angle: -angle },
            Gate::MajoranaRotation { p, q, angle } => Gate::MajoranaRotation { p, q, angle: -angle },
            Gate::ModePhase { mode, angle } => Gate::ModePhase { mode, angle: -angle },
            Gate::Reflection => Gate::Reflection,
        }
    }

    pub fn to_record(&self) -> GateRecord {
        let (kind, indices, angle) = match *self {
            Gate::Givens { p, q, angle } => ("givens", vec![p, q], angle),
            Gate::MajoranaRotation { p, q, angle } => ("majorana_rotation", vec![p, q], angle),
            Gate::ModePhase { mode, angle } => ("mode_phase", vec![mode], angle),
            Gate::Reflection => ("reflection", vec![0], 0.0),
        };
        GateRecord { kind: kind.to_string(), indices, angle }
    }

    pub fn from_record(r: &GateRecord) -> Result<Gate> {
        let bad = || FloError::Gate(format!("{r:?}"));
        match (r.kind.as_str(), r.indices.as_slice()) {
            ("givens", &[p, q]) => Ok(Gate::Givens { p, q, angle: r.angle }),
            ("majorana_rotation", &[p, q]) => Ok(Gate::MajoranaRotation { p, q, angle: r.angle }),
            ("mode_phase", &[mode]) => Ok(Gate::ModePhase { mode, angle: r.angle }),
            ("reflection", _) => Ok(Gate::Reflection),
            _ => Err(bad()),
        }
    }
}

fn rotate_rows(m: &mut RealMatrix, p: usize, q: usize, angle: f64) {
    let (s, c) = angle.sin_cos();
    for k in 0..m.ncols() {
        let (x, y) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = c * x - s * y;
        m[(q, k)] = s * x + c * y;
    }
}

/// Serialized gate: one JSON line `{kind, indices, angle}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub indices: Vec<usize>,
    pub angle: f64,
}

/// Gates in application order: the first gate acts first, so the circuit
/// unitary is `G_L ⋯ G_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GateList {
    pub n: usize,
    pub gates: Vec<Gate>,
}

impl GateList {
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn reflections(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Reflection)).count()
    }

    /// `(2n choose 2) + n + 1`.
    pub fn cap(n: usize) -> usize {
        n * (2 * n - 1) + n + 1
    }

    /// One-body matrix of the whole circuit.
    pub fn one_body(&self) -> RealMatrix {
        let mut m = DMatrix::identity(2 * self.n, 2 * self.n);
        for g in &self.gates {
            g.apply_left(&mut m);
        }
        m
    }

    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for g in &self.gates {
            s.push_str(&serde_json::to_string(&g.to_record()).expect("gate serializes"));
            s.push('\n');
        }
        s
    }

    pub fn from_json_lines(n: usize, text: &str) -> Result<Self> {
        let mut gates = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let rec: GateRecord =
                serde_json::from_str(line).map_err(|e| FloError::Gate(e.to_string()))?;
            gates.push(Gate::from_record(&rec)?);
        }
        Ok(Self { n, gates })
    }
}

/// Either representation of an FLO.
#[derive(Debug, Clone, PartialEq)]
pub enum Flo {
    Active(ActiveFlo),
    Passive(PassiveFlo),
}

pub fn compile_to_gates(f: &Flo) -> GateList {
    match f {
        Flo::Active(q) => compile_active(q),
        Flo::Passive(u) => compile_passive(u),
    }
}

/// Givens QR of `Q` into adjacent Majorana rotations, column by column from
/// the bottom row up. A determinant −1 input is split as `γ₁ · (XQ)` with
/// `X = diag(1, −1, …, −1)`, and the reflection is appended last.
pub fn compile_active(q: &ActiveFlo) -> GateList {
    let n = q.n();
    let d = 2 * n;
    let mut m = q.matrix().clone();
    let reflect = q.det_sign() < 0;
    if reflect {
        Gate::Reflection.apply_left(&mut m);
    }
    let mut applied = Vec::new();
    for col in 0..d.saturating_sub(1) {
        for r in (col + 1..d).rev() {
            let (x, y) = (m[(r - 1, col)], m[(r, col)]);
            if y.abs() <= SKIP && x >= 0.0 {
                continue;
            }
            let g = Gate::MajoranaRotation { p: r - 1, q: r, angle: f64::atan2(-y, x) };
            g.apply_left(&mut m);
            applied.push(g);
        }
    }
    let mut gates: Vec<Gate> = applied.iter().rev().map(Gate::inverse).collect();
    if reflect {
        gates.push(Gate::Reflection);
    }
    GateList { n, gates }
}

/// Passive compilation into mode phases and real Givens rotations on
/// adjacent modes.
pub fn compile_passive(p: &PassiveFlo) -> GateList {
    let n = p.n();
    let mut m: ComplexMatrix = p.matrix().clone();
    let mut applied = Vec::new();
    let phase_row = |m: &mut ComplexMatrix, r: usize, alpha: f64| {
        let f = Complex64::from_polar(1.0, -alpha);
        for k in 0..m.ncols() {
            m[(r, k)] *= f;
        }
    };
    for col in 0..n.saturating_sub(1) {
        for r in (col + 1..n).rev() {
            let (x, y) = (m[(r - 1, col)], m[(r, col)]);
            if y.norm() <= SKIP {
                continue;
            }
            let alpha = if x.norm() > SKIP { y.arg() - x.arg() } else { y.arg() };
            if alpha.abs() > SKIP {
                phase_row(&mut m, r, alpha);
                applied.push(Gate::ModePhase { mode: r, angle: alpha });
            }
            let theta = f64::atan2(-m[(r, col)].norm(), x.norm());
            let (s, c) = theta.sin_cos();
            for k in 0..n {
                let (a, b) = (m[(r - 1, k)], m[(r, k)]);
                m[(r - 1, k)] = a * c - b * s;
                m[(r, k)] = a * s + b * c;
            }
            applied.push(Gate::Givens { p: r - 1, q: r, angle: theta });
        }
    }
    for q in 0..n {
        let alpha = m[(q, q)].arg();
        if alpha.abs() > SKIP {
            phase_row(&mut m, q, alpha);
            applied.push(Gate::ModePhase { mode: q, angle: alpha });
        }
    }
    GateList { n, gates: applied.iter().rev().map(Gate::inverse).collect() }
}

/// One-body action of a passive gate list as a unitary `U`.
pub fn passive_one_body(list: &GateList) -> Option<PassiveFlo> {
    if !list.gates.iter().all(Gate::is_passive) {
        return None;
    }
    let q = ActiveFlo::from_unchecked(list.one_body());
    crate::extract_passive(&q).ok()
}
