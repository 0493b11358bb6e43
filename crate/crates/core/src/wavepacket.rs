//! Position-space dynamics built from exactly evolved momentum modes.
//!
//! The continuum transform `ψ(x,t) = ∫ dp/√(2πħ) ψ_p(t) e^{ipx/ħ}` is
//! discretised on a periodic box of length `L` with `N` points:
//!
//! * momenta `p_k = 2πħk/L` for `k ∈ [-N/2, N/2)`, stored at index
//!   `k + N/2`;
//! * positions `x_j = (j - N/2)·L/N`;
//! * synthesis `ψ(x_j) = Δp/√(2πħ) Σ_k ψ_k e^{i p_k x_j/ħ}` and analysis
//!   `ψ_k = Δx/√(2πħ) Σ_j ψ(x_j) e^{-i p_k x_j/ħ}`.
//!
//! Since `LΔp = 2πħ` these are exact inverses and `Σ|ψ_k|²Δp = Σ|ψ(x_j)|²Δx`.
//!
//! The Nyquist row `k = -N/2` has no `+p` partner on the grid. It is evolved
//! as its own partner (`ψ_{-p} ≡ ψ_p`); packets must keep its amplitude below
//! [`NYQUIST_LIMIT`] relative to the peak mode, so the choice never shows.

use std::f64::consts::TAU;
use std::io::Write;

use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::momentum::{
    dirac_mode_evolve, majorana_mode_evolve, ultrarelativistic_approx, MomentumModePair,
};
use crate::spinor::{expectation, Observable2};
use crate::{Error, PhysParams, Result, Spinor2, C64};

/// Largest allowed Nyquist amplitude relative to the peak mode, and largest
/// allowed edge envelope relative to the peak for Gaussian packets.
pub const NYQUIST_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PacketEquation {
    Majorana,
    Dirac,
    /// Massless propagator on every `p ≠ 0` mode.
    Ultra,
}

impl PacketEquation {
    pub fn name(self) -> &'static str {
        match self {
            PacketEquation::Majorana => "majorana",
            PacketEquation::Dirac => "dirac",
            PacketEquation::Ultra => "ultra",
        }
    }
}

/// What happened during one call to [`Wavepacket::evolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionRecord {
    pub equation: PacketEquation,
    pub t: f64,
    /// Grid indices `k` that were propagated exactly instead of with the
    /// requested approximation (the `p = 0` row under `Ultra`).
    pub exact_fallback: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    pub x0: f64,
    pub p0: f64,
    /// Standard deviation of the position density.
    pub sigma_x: f64,
    pub spinor: Spinor2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wavepacket {
    box_length: f64,
    params: PhysParams,
    modes: Vec<Spinor2>,
    history: Vec<EvolutionRecord>,
}

/// Position-space view of a packet.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionProfile {
    pub x: Vec<f64>,
    pub amplitudes: Vec<Spinor2>,
    pub density: Vec<f64>,
    pub norm: f64,
    pub mean_x: f64,
    pub sigma_z: f64,
}

fn check_grid(n: usize, box_length: f64) -> Result<()> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidGrid(format!(
            "N must be a power of two >= 2, got {n}"
        )));
    }
    if !(box_length.is_finite() && box_length > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "L must be > 0, got {box_length}"
        )));
    }
    Ok(())
}

impl Wavepacket {
    /// Wraps mode amplitudes ordered by `k = -N/2 .. N/2-1`.
    pub fn from_modes(box_length: f64, params: PhysParams, modes: Vec<Spinor2>) -> Result<Self> {
        check_grid(modes.len(), box_length)?;
        let params = params.validated()?;
        if !modes.iter().all(Spinor2::is_finite) {
            return Err(Error::NonFinite("mode amplitudes"));
        }
        let peak = modes
            .iter()
            .map(|m| m.norm_sqr().sqrt())
            .fold(0.0, f64::max);
        let nyquist = modes[0].norm_sqr().sqrt();
        if nyquist > NYQUIST_LIMIT * peak {
            return Err(Error::Aliasing(format!(
                "Nyquist amplitude {nyquist:e} exceeds {NYQUIST_LIMIT:e} of peak {peak:e}"
            )));
        }
        Ok(Wavepacket {
            box_length,
            params,
            modes,
            history: Vec::new(),
        })
    }

    /// Builds a packet from position samples at `x_j = (j - N/2)·L/N`.
    pub fn from_position(
        box_length: f64,
        params: PhysParams,
        amplitudes: &[Spinor2],
    ) -> Result<Self> {
        check_grid(amplitudes.len(), box_length)?;
        let modes = analyze(amplitudes, box_length, params.hbar);
        Self::from_modes(box_length, params, modes)
    }

    /// A normalized Gaussian packet with density centred at `x0`, standard
    /// deviation `sigma_x`, mean momentum `p0` and a constant spinor
    /// direction.
    ///
    /// The momentum amplitude is `exp(-(p-p0)²σx²/ħ²)·e^{-ipx0/ħ}·χ`.
    pub fn gaussian(
        spec: &GaussianSpec,
        n: usize,
        box_length: f64,
        params: PhysParams,
    ) -> Result<Self> {
        check_grid(n, box_length)?;
        let params = params.validated()?;
        let GaussianSpec {
            x0,
            p0,
            sigma_x,
            spinor,
        } = *spec;
        if !(x0.is_finite() && p0.is_finite() && sigma_x.is_finite()) {
            return Err(Error::NonFinite("gaussian parameters"));
        }
        if sigma_x <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "sigma_x must be > 0, got {sigma_x}"
            )));
        }
        if !spinor.is_normalized(1e-12) {
            return Err(Error::NotNormalized(spinor.norm_sqr()));
        }
        let min_width = 4.0 * box_length / n as f64;
        if sigma_x <= min_width {
            return Err(Error::Aliasing(format!(
                "sigma_x = {sigma_x} must exceed 4·L/N = {min_width}"
            )));
        }
        let hbar = params.hbar;
        let envelope = |p: f64| (-((p - p0) * sigma_x / hbar).powi(2)).exp();
        let dp = TAU * hbar / box_length;
        let half = (n / 2) as f64;
        let p_lo = -half * dp;
        let p_hi = (half - 1.0) * dp;
        let edge = envelope(p_lo).max(envelope(p_hi));
        if edge >= NYQUIST_LIMIT {
            return Err(Error::Aliasing(format!(
                "momentum envelope at the grid edge is {edge:e} of peak"
            )));
        }
        let gap = 0.5 * box_length - x0.abs();
        let x_edge = if gap > 0.0 {
            (-(gap * gap) / (4.0 * sigma_x * sigma_x)).exp()
        } else {
            1.0
        };
        if x_edge >= NYQUIST_LIMIT {
            return Err(Error::Aliasing(format!(
                "position envelope at the box edge is {x_edge:e} of peak"
            )));
        }

        let mut modes: Vec<Spinor2> = (0..n)
            .map(|i| {
                let p = (i as f64 - half) * dp;
                let phase = C64::from_polar(envelope(p), -p * x0 / hbar);
                spinor.scale(phase)
            })
            .collect();
        let norm_sqr: f64 = modes.iter().map(Spinor2::norm_sqr).sum::<f64>() * dp;
        let scale = norm_sqr.sqrt().recip();
        for m in &mut modes {
            *m = m.scale_re(scale);
        }
        Self::from_modes(box_length, params, modes)
    }

    pub fn grid_size(&self) -> usize {
        self.modes.len()
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn params(&self) -> &PhysParams {
        &self.params
    }

    pub fn modes(&self) -> &[Spinor2] {
        &self.modes
    }

    pub fn history(&self) -> &[EvolutionRecord] {
        &self.history
    }

    pub fn dp(&self) -> f64 {
        TAU * self.params.hbar / self.box_length
    }

    pub fn dx(&self) -> f64 {
        self.box_length / self.grid_size() as f64
    }

    /// Grid index `k` of storage slot `i`.
    pub fn k_of(&self, i: usize) -> i64 {
        i as i64 - (self.grid_size() / 2) as i64
    }

    pub fn momenta(&self) -> Vec<f64> {
        let dp = self.dp();
        (0..self.grid_size())
            .map(|i| self.k_of(i) as f64 * dp)
            .collect()
    }

    pub fn positions(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.grid_size())
            .map(|j| self.k_of(j) as f64 * dx)
            .collect()
    }

    /// `Σ‖ψ_k‖²Δp`.
    pub fn norm_sqr(&self) -> f64 {
        self.modes.iter().map(Spinor2::norm_sqr).sum::<f64>() * self.dp()
    }

    pub fn mean_momentum(&self) -> f64 {
        let weighted: f64 = self
            .momenta()
            .iter()
            .zip(&self.modes)
            .map(|(p, m)| p * m.norm_sqr())
            .sum();
        weighted * self.dp() / self.norm_sqr()
    }

    /// `⟨σz⟩` of the whole packet, summed over momentum modes.
    pub fn sigma_z(&self) -> f64 {
        let total: f64 = self
            .modes
            .iter()
            .map(|m| expectation(&Observable2::SIGMA_Z, m).unwrap_or(f64::NAN))
            .sum();
        total * self.dp() / self.norm_sqr()
    }

    /// Position amplitudes `ψ(x_j)`.
    pub fn synthesize(&self) -> Vec<Spinor2> {
        synthesize(&self.modes, self.box_length, self.params.hbar)
    }

    pub fn position_density(&self) -> PositionProfile {
        let x = self.positions();
        let amplitudes = self.synthesize();
        let density: Vec<f64> = amplitudes.iter().map(Spinor2::norm_sqr).collect();
        let dx = self.dx();
        let norm = density.iter().sum::<f64>() * dx;
        let mean_x = x.iter().zip(&density).map(|(x, d)| x * d).sum::<f64>() * dx / norm;
        let sigma_z = amplitudes
            .iter()
            .map(|a| a.upper.norm_sqr() - a.lower.norm_sqr())
            .sum::<f64>()
            * dx
            / norm;
        PositionProfile {
            x,
            amplitudes,
            density,
            norm,
            mean_x,
            sigma_z,
        }
    }

    /// Evolves every mode (pair) exactly with the chosen equation and
    /// returns the new packet. Under [`PacketEquation::Ultra`] the `p = 0`
    /// row uses the exact Majorana propagator; the substitution is recorded
    /// in [`Wavepacket::history`].
    pub fn evolve(&self, equation: PacketEquation, t: f64) -> Result<Wavepacket> {
        if !t.is_finite() {
            return Err(Error::NonFinite("evolution time"));
        }
        let n = self.grid_size();
        let half = n / 2;
        let dp = self.dp();
        let params = &self.params;
        let mut out = self.modes.clone();
        let mut fallback = Vec::new();

        for k in 0..half {
            let p = k as f64 * dp;
            let (ip, im) = (half + k, half - k);
            match equation {
                PacketEquation::Majorana => {
                    let pair = if k == 0 {
                        MomentumModePair::at_rest(self.modes[ip])
                    } else {
                        MomentumModePair::new(p, self.modes[ip], self.modes[im])?
                    };
                    let evolved = majorana_mode_evolve(&pair, params, t);
                    out[ip] = *evolved.plus();
                    out[im] = *evolved.minus();
                }
                PacketEquation::Dirac => {
                    out[ip] = dirac_mode_evolve(&self.modes[ip], p, params, t);
                    out[im] = dirac_mode_evolve(&self.modes[im], -p, params, t);
                }
                PacketEquation::Ultra if k == 0 => {
                    let pair = MomentumModePair::at_rest(self.modes[ip]);
                    out[ip] = *majorana_mode_evolve(&pair, params, t).plus();
                    fallback.push(0);
                }
                PacketEquation::Ultra => {
                    out[ip] = ultrarelativistic_approx(&self.modes[ip], p, params, t)?;
                    out[im] = ultrarelativistic_approx(&self.modes[im], -p, params, t)?;
                }
            }
        }

        // Nyquist row, self-paired.
        let p_nyq = -(half as f64) * dp;
        let nyq = self.modes[0];
        out[0] = match equation {
            PacketEquation::Majorana => {
                let pair = MomentumModePair::new(-p_nyq, nyq, nyq)?;
                *majorana_mode_evolve(&pair, params, t).minus()
            }
            PacketEquation::Dirac => dirac_mode_evolve(&nyq, p_nyq, params, t),
            PacketEquation::Ultra => ultrarelativistic_approx(&nyq, p_nyq, params, t)?,
        };

        let mut history = self.history.clone();
        history.push(EvolutionRecord {
            equation,
            t,
            exact_fallback: fallback,
        });
        Ok(Wavepacket {
            box_length: self.box_length,
            params: self.params,
            modes: out,
            history,
        })
    }

    fn check_compatible(&self, other: &Wavepacket) -> Result<()> {
        if self.params != other.params
            || self.box_length != other.box_length
            || self.grid_size() != other.grid_size()
        {
            return Err(Error::Mismatch);
        }
        Ok(())
    }

    /// Largest componentwise difference between the mode amplitudes of two
    /// packets on the same grid.
    pub fn max_abs_diff(&self, other: &Wavepacket) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .modes
            .iter()
            .zip(&other.modes)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max))
    }

    /// CSV snapshot with columns
    /// `x, re_upper, im_upper, re_lower, im_lower, density`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let profile = self.position_density();
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        w.write_record([
            "x", "re_upper", "im_upper", "re_lower", "im_lower", "density",
        ])?;
        for ((x, a), d) in profile
            .x
            .iter()
            .zip(&profile.amplitudes)
            .zip(&profile.density)
        {
            let [ru, iu, rl, il] = a.parts();
            w.serialize([*x, ru, iu, rl, il, *d])?;
        }
        w.flush().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(())
    }
}

/// Centred discrete transform. Slot `i` holds index `i - N/2` on both
/// sides; mapping centred indices onto FFT slots modulo `N` makes the
/// kernel exactly `e^{±2πi k j/N}` with centred `k` and `j`.
fn transform(input: &[Spinor2], prefactor: f64, inverse: bool) -> Vec<Spinor2> {
    let n = input.len();
    let half = n / 2;
    let mut planner = FftPlanner::<f64>::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };

    let slot = |i: usize| (i + half) % n;
    let mut upper = vec![C64::new(0.0, 0.0); n];
    let mut lower = vec![C64::new(0.0, 0.0); n];
    for (i, s) in input.iter().enumerate() {
        upper[slot(i)] = s.upper;
        lower[slot(i)] = s.lower;
    }
    fft.process(&mut upper);
    fft.process(&mut lower);
    (0..n)
        .map(|i| Spinor2::new(upper[slot(i)] * prefactor, lower[slot(i)] * prefactor))
        .collect()
}

/// Momentum amplitudes (slot `i` ↔ `k = i - N/2`) to position amplitudes
/// on a box of length `box_length`. `N` must be a power of two.
pub fn synthesize(modes: &[Spinor2], box_length: f64, hbar: f64) -> Vec<Spinor2> {
    let dp = TAU * hbar / box_length;
    transform(modes, dp / (TAU * hbar).sqrt(), true)
}

/// Inverse of [`synthesize`].
pub fn analyze(amplitudes: &[Spinor2], box_length: f64, hbar: f64) -> Vec<Spinor2> {
    let dx = box_length / amplitudes.len() as f64;
    transform(amplitudes, dx / (TAU * hbar).sqrt(), false)
}
