//! Real four-component embedding of the rest-limit Majorana dynamics.
//!
//! Complex conjugation cannot be implemented as a physical operation, so the
//! spinor `(ψ1, ψ2)` is stored as the real vector
//! `ψ4 = (Re ψ1, Re ψ2, Im ψ1, Im ψ2)`. On that space the Majorana rest
//! equation becomes the Hamiltonian evolution
//!
//! ```text
//! iħ ∂t ψ4 = -mc² (σx ⊗ σy) ψ4
//! ```
//!
//! The state is read back through `M = (I  iI)`, so `Mψ4 = ψ` and an
//! observable `A` on spinors corresponds to `M†AM` on the doubled space.
//! Readout is emulated by sampling the four populations `ψ4_k²`.

use std::ops::Mul;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::spinor::{Observable2, HERMITIAN_TOL};
use crate::{Error, PhysParams, Result, Spinor2, C64, DEFAULT_TOLERANCE};

/// Population labels in storage order.
pub const BASIS: [&str; 4] = ["1r", "2r", "1i", "2i"];

/// `(ψ1r, ψ2r, ψ1i, ψ2i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSpinor4(pub [f64; 4]);

impl RealSpinor4 {
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, other: &RealSpinor4) -> f64 {
        self.0
            .iter()
            .zip(other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn encode(psi: &Spinor2) -> RealSpinor4 {
    RealSpinor4([psi.upper.re, psi.lower.re, psi.upper.im, psi.lower.im])
}

/// Applies `M = (I  iI)`.
pub fn decode(psi4: &RealSpinor4) -> Spinor2 {
    let [r1, r2, i1, i2] = psi4.0;
    Spinor2::from_parts(r1, i1, r2, i2)
}

/// A dense row-major real 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMat4(pub [[f64; 4]; 4]);

impl RealMat4 {
    pub const IDENTITY: RealMat4 = RealMat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    /// `i σx ⊗ σy`, which is real: `[[0, iσy], [iσy, 0]]` with
    /// `iσy = [[0, 1], [-1, 0]]`. It squares to `-I`.
    pub const DOUBLED_GENERATOR: RealMat4 = RealMat4([
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]);

    pub fn transpose(&self) -> RealMat4 {
        let mut out = [[0.0; 4]; 4];
        for (r, row) in self.0.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                out[c][r] = *v;
            }
        }
        RealMat4(out)
    }

    pub fn apply(&self, v: &RealSpinor4) -> RealSpinor4 {
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.0) {
            *o = row.iter().zip(v.0).map(|(a, b)| a * b).sum();
        }
        RealSpinor4(out)
    }

    pub fn max_abs_diff(&self, other: &RealMat4) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|RᵀR - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&RealMat4::IDENTITY)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = &self.0;
        let minor = |skip: usize| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let a = |r: usize, c: usize| m[r][cols[c]];
            a(1, 0) * (a(2, 1) * a(3, 2) - a(2, 2) * a(3, 1))
                - a(1, 1) * (a(2, 0) * a(3, 2) - a(2, 2) * a(3, 0))
                + a(1, 2) * (a(2, 0) * a(3, 1) - a(2, 1) * a(3, 0))
        };
        (0..4)
            .map(|c| {
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * minor(c)
            })
            .sum()
    }
}

impl Mul for RealMat4 {
    type Output = RealMat4;

    fn mul(self, rhs: RealMat4) -> RealMat4 {
        let mut out = [[0.0; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        RealMat4(out)
    }
}

/// `U(t) = cos(ωt) I + sin(ωt) (iσx⊗σy)`, built entry by entry from real
/// numbers. Orthogonal with unit determinant.
pub fn doubled_propagator(params: &PhysParams, t: f64) -> RealMat4 {
    let (s, c) = (params.omega() * t).sin_cos();
    let g = &RealMat4::DOUBLED_GENERATOR.0;
    let mut out = [[0.0; 4]; 4];
    for (r, row) in out.iter_mut().enumerate() {
        for (col, v) in row.iter_mut().enumerate() {
            let id = if r == col { c } else { 0.0 };
            *v = id + s * g[r][col];
        }
    }
    RealMat4(out)
}

pub fn evolve_doubled(psi4: &RealSpinor4, params: &PhysParams, t: f64) -> RealSpinor4 {
    doubled_propagator(params, t).apply(psi4)
}

/// A dense row-major complex 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub fn hermitian_defect(&self) -> f64 {
        let m = &self.0;
        let mut worst = 0.0_f64;
        for r in 0..4 {
            for c in 0..4 {
                worst = worst.max((m[r][c] - m[c][r].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// A Hermitian observable on the doubled space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable4(Mat4);

impl Observable4 {
    pub fn new(m: Mat4) -> Result<Self> {
        if !m.0.iter().flatten().all(|z| z.is_finite()) {
            return Err(Error::NonFinite("observable"));
        }
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Observable4(m))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// `ψ4ᵀ O ψ4` for a real state. Only the real symmetric part of `O`
    /// contributes.
    pub fn expectation(&self, psi4: &RealSpinor4) -> f64 {
        let v = &psi4.0;
        let mut acc = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                acc += v[r] * self.0 .0[r][c].re * v[c];
            }
        }
        acc
    }

    /// Diagonal entries, the only part a population readout can estimate.
    pub fn population_weights(&self) -> [f64; 4] {
        std::array::from_fn(|k| self.0 .0[k][k].re)
    }

    /// Frobenius norm of the real off-diagonal part, which contributes to
    /// expectation values on real states but is invisible to populations.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    acc += self.0 .0[r][c].re.powi(2);
                }
            }
        }
        acc.sqrt()
    }
}

/// The doubled-space Hamiltonian `-mc² σx⊗σy`.
pub fn doubled_hamiltonian(params: &PhysParams) -> Observable4 {
    // σx⊗σy = -i · (iσx⊗σy)
    let e = params.rest_energy();
    let g = &RealMat4::DOUBLED_GENERATOR.0;
    Observable4(Mat4(std::array::from_fn(|r| {
        std::array::from_fn(|c| C64::new(0.0, e * g[r][c]))
    })))
}

/// `M†AM = [[A, iA], [-iA, A]]`.
pub fn lift_observable(a: &Observable2) -> Observable4 {
    let m = &a.matrix().0;
    let i = C64::new(0.0, 1.0);
    let block = |r: usize, c: usize| -> C64 {
        let entry = m[r % 2][c % 2];
        match (r / 2, c / 2) {
            (0, 0) | (1, 1) => entry,
            (0, 1) => i * entry,
            _ => -i * entry,
        }
    };
    Observable4(Mat4(std::array::from_fn(|r| {
        std::array::from_fn(|c| block(r, c))
    })))
}

/// Outcome of a population readout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotRecord {
    pub shots: u64,
    pub seed: u64,
    /// Counts in [`BASIS`] order.
    pub counts: [u64; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShotRecordJson {
    shots: u64,
    seed: u64,
    counts: [u64; 4],
    basis: [String; 4],
}

impl ShotRecord {
    pub fn frequencies(&self) -> [f64; 4] {
        self.counts.map(|c| c as f64 / self.shots as f64)
    }

    fn as_json(&self) -> ShotRecordJson {
        ShotRecordJson {
            shots: self.shots,
            seed: self.seed,
            counts: self.counts,
            basis: BASIS.map(String::from),
        }
    }

    /// `{"shots":…,"seed":…,"counts":[…],"basis":["1r","2r","1i","2i"]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.as_json()).expect("shot record serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.as_json()).expect("shot record serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        let raw: ShotRecordJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if raw.basis.iter().map(String::as_str).ne(BASIS) {
            return Err(format!("unexpected basis {:?}", raw.basis));
        }
        if raw.counts.iter().sum::<u64>() != raw.shots {
            return Err("counts do not sum to shots".into());
        }
        Ok(ShotRecord {
            shots: raw.shots,
            seed: raw.seed,
            counts: raw.counts,
        })
    }
}

/// Draws `shots` independent outcomes from the populations `ψ4_k²`.
///
/// Randomness comes from ChaCha8 (`rand_chacha`) seeded with
/// `seed_from_u64(seed)`; each shot draws one `WeightedIndex` sample. The
/// record is therefore identical across platforms for the same inputs.
pub fn sample_populations(psi4: &RealSpinor4, shots: u64, seed: u64) -> Result<ShotRecord> {
    if !psi4.is_finite() {
        return Err(Error::NonFinite("doubled state"));
    }
    let norm = psi4.norm_sqr();
    if (norm - 1.0).abs() > DEFAULT_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    if shots == 0 {
        return Err(Error::NoShots);
    }
    let weights = psi4.0.map(|x| x * x);
    let dist = WeightedIndex::new(weights).map_err(|_| Error::NotNormalized(norm))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        counts[dist.sample(&mut rng)] += 1;
    }
    Ok(ShotRecord {
        shots,
        seed,
        counts,
    })
}

/// Applies an orthogonal basis change before readout. This is the hook for
/// estimating off-diagonal parts of lifted observables; no particular
/// rotation is prescribed.
pub fn sample_populations_rotated(
    psi4: &RealSpinor4,
    rotation: &RealMat4,
    shots: u64,
    seed: u64,
) -> Result<ShotRecord> {
    let defect = rotation.orthogonality_defect();
    if defect > 1e-12 {
        return Err(Error::InvalidConfig(format!(
            "readout rotation is not orthogonal (defect {defect:e})"
        )));
    }
    sample_populations(&rotation.apply(psi4), shots, seed)
}

/// Estimate of a lifted observable from a population record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationEstimate {
    /// `Σ_k O_kk · n_k/N`.
    pub value: f64,
    /// Standard error of `value` from the sample variance.
    pub std_error: f64,
    /// Frobenius norm of the part of `O` populations cannot see. When this
    /// is non-zero, `value` estimates only the diagonal contribution.
    pub unestimable_norm: f64,
}

impl PopulationEstimate {
    pub fn is_complete(&self) -> bool {
        self.unestimable_norm == 0.0
    }
}

pub fn estimate_from_counts(obs: &Observable4, record: &ShotRecord) -> PopulationEstimate {
    let w = obs.population_weights();
    let f = record.frequencies();
    let mean: f64 = w.iter().zip(f).map(|(w, f)| w * f).sum();
    let second: f64 = w.iter().zip(f).map(|(w, f)| w * w * f).sum();
    let var = (second - mean * mean).max(0.0);
    PopulationEstimate {
        value: mean,
        std_error: (var / record.shots as f64).sqrt(),
        unestimable_norm: obs.off_diagonal_norm(),
    }
}

/// The population-visible part `Σ_k O_kk ψ4_k²` of an expectation value.
pub fn diagonal_expectation(obs: &Observable4, psi4: &RealSpinor4) -> f64 {
    obs.population_weights()
        .iter()
        .zip(psi4.0)
        .map(|(w, x)| w * x * x)
        .sum()
}
