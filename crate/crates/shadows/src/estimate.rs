use flo_florep::{embed_passive, ActiveFlo, PassiveFlo};
use flo_matlin::json::MatrixJson;
use flo_matlin::{c, ComplexMatrix, RealMatrix};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// `(V, b)`: basis rotation `V` and the Fock outcome `b`.
///
/// The rotation applied to the state is `Φ_pas(V̄)`, which maps the 1-RDM to
/// `V D V†`; the estimate `V† E(b) V` is then unbiased for `D` over Haar `V`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnShadowSample {
    #[serde(with = "complex_json")]
    pub v: ComplexMatrix,
    pub b: Vec<u8>,
}

/// `(R, b)` with `R ∈ SO(2n)` applied as `Φ(R)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoShadowSample {
    #[serde(with = "real_json")]
    pub r: RealMatrix,
    pub b: Vec<u8>,
}

/// `E(b) = (n + 1) diag(b) − |b| I`.
pub fn e_matrix(b: &[u8]) -> RealMatrix {
    let n = b.len();
    let w = b.iter().map(|&x| f64::from(x)).sum::<f64>();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            (n as f64 + 1.0) * f64::from(b[i]) - w
        } else {
            0.0
        }
    })
}

/// `J(b) = [[0, S], [−S, 0]]` with `S = diag((−1)^{b_j})`.
pub fn j_matrix(b: &[u8]) -> RealMatrix {
    let n = b.len();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for (j, &x) in b.iter().enumerate() {
        let s = if x == 1 { -1.0 } else { 1.0 };
        m[(j, j + n)] = s;
        m[(j + n, j)] = -s;
    }
    m
}

/// `V† E(b) V`.
pub fn un_estimate(s: &UnShadowSample) -> ComplexMatrix {
    let e = e_matrix(&s.b).map(c);
    let d = s.v.adjoint() * e * &s.v;
    (&d + d.adjoint()) * c(0.5)
}

/// `(2n − 1) Rᵀ J(b) R`.
pub fn so_estimate(s: &SoShadowSample) -> RealMatrix {
    let n = s.b.len();
    let g = s.r.transpose() * j_matrix(&s.b) * &s.r * (2.0 * n as f64 - 1.0);
    (&g - g.transpose()) * 0.5
}

/// The FLO applied before measuring a U(n)-shadow sample.
pub fn un_rotation(v: &ComplexMatrix) -> ActiveFlo {
    embed_passive(&PassiveFlo::from_unchecked(v.conjugate()))
}

/// The FLO applied before measuring an SO(2n)-shadow sample.
pub fn so_rotation(r: &RealMatrix) -> ActiveFlo {
    ActiveFlo::from_unchecked(r.clone())
}

mod complex_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &ComplexMatrix, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::from_complex(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexMatrix, D::Error> {
        MatrixJson::deserialize(d)?.to_complex().map_err(serde::de::Error::custom)
    }
}

mod real_json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &RealMatrix, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::from_real(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RealMatrix, D::Error> {
        MatrixJson::deserialize(d)?.to_real().map_err(serde::de::Error::custom)
    }
}
