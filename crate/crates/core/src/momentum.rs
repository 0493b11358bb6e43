//! Exact evolution of single momentum modes.
//!
//! After a Fourier transform the Majorana equation becomes
//!
//! ```text
//! iħ ∂t ψ_p = cp σx ψ_p - i mc² σy ψ*_{-p}
//! ```
//!
//! which couples the amplitudes at `+p` and `-p`. Every component obeys the
//! Klein-Gordon equation, so the pair evolves with the single frequency
//! `ω_p = √(p²c² + m²c⁴)/ħ`:
//!
//! ```text
//! ψ_p(t) = cos(ω_p t) ψ_p(0) - sin(ω_p t)/(ħω_p) [i cp σx ψ_p(0) + mc² σy ψ*_{-p}(0)]
//! ```
//!
//! The partner `ψ_{-p}` follows from the same expression with `p → -p`.

use crate::spinor::Mat2;
use crate::{Error, PhysParams, Result, Spinor2, C64};

/// Factor turning "t ≪ window" into an assertion bound: `t ≤ 0.1·window`.
pub const VALIDITY_FACTOR: f64 = 0.1;

/// Amplitudes at `+p` and `-p`, keyed by `p ≥ 0`. At `p = 0` the mode is
/// its own partner and both fields hold the same spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumModePair {
    p: f64,
    plus: Spinor2,
    minus: Spinor2,
}

impl MomentumModePair {
    pub fn new(p: f64, plus: Spinor2, minus: Spinor2) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::NonFinite("momentum"));
        }
        if p < 0.0 {
            return Err(Error::InvalidPair(format!("p must be >= 0, got {p}")));
        }
        let plus = plus.ensure_finite()?;
        let minus = minus.ensure_finite()?;
        if p == 0.0 && plus != minus {
            return Err(Error::InvalidPair(
                "the p = 0 mode is self-conjugate; both amplitudes must agree".into(),
            ));
        }
        Ok(MomentumModePair { p, plus, minus })
    }

    pub fn at_rest(psi: Spinor2) -> Self {
        MomentumModePair {
            p: 0.0,
            plus: psi,
            minus: psi,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn plus(&self) -> &Spinor2 {
        &self.plus
    }

    pub fn minus(&self) -> &Spinor2 {
        &self.minus
    }

    /// `‖ψ_p‖² + ‖ψ_{-p}‖²`, counting the `p = 0` mode once.
    pub fn norm_sqr(&self) -> f64 {
        if self.p == 0.0 {
            self.plus.norm_sqr()
        } else {
            self.plus.norm_sqr() + self.minus.norm_sqr()
        }
    }

    pub fn max_abs_diff(&self, other: &MomentumModePair) -> f64 {
        self.plus
            .max_abs_diff(&other.plus)
            .max(self.minus.max_abs_diff(&other.minus))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ModeFrequency(f64);

impl ModeFrequency {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `ω_p = √(p²c² + m²c⁴)/ħ`, evaluated with `hypot` so extreme momenta do
/// not overflow.
pub fn omega_p(p: f64, params: &PhysParams) -> ModeFrequency {
    ModeFrequency((p * params.c).hypot(params.rest_energy()) / params.hbar)
}

/// `sin(ωt)/ω`, continuous through `ω = 0`.
fn sin_over(omega: f64, t: f64) -> f64 {
    if omega == 0.0 {
        t
    } else {
        (omega * t).sin() / omega
    }
}

/// One side of the coupled update: the amplitude at momentum `p` given its
/// partner at `-p`.
fn majorana_side(own: &Spinor2, partner: &Spinor2, p: f64, params: &PhysParams, t: f64) -> Spinor2 {
    let w = omega_p(p, params).value();
    let cos = (w * t).cos();
    let s = sin_over(w, t) / params.hbar;
    let kinetic = Mat2::SIGMA_X.apply(*own).scale(C64::new(0.0, p * params.c));
    let mass = Mat2::SIGMA_Y
        .apply(partner.conj())
        .scale_re(params.rest_energy());
    own.scale_re(cos) - (kinetic + mass).scale_re(s)
}

/// Evolves both members of the pair exactly. For `p = 0` this reduces to the
/// rest-limit Majorana solution.
pub fn majorana_mode_evolve(
    pair: &MomentumModePair,
    params: &PhysParams,
    t: f64,
) -> MomentumModePair {
    let plus = majorana_side(&pair.plus, &pair.minus, pair.p, params, t);
    let minus = if pair.p == 0.0 {
        plus
    } else {
        majorana_side(&pair.minus, &pair.plus, -pair.p, params, t)
    };
    MomentumModePair {
        p: pair.p,
        plus,
        minus,
    }
}

/// The 2×2 Dirac mode propagator
/// `cos(ω_p t) I - i sin(ω_p t)/(ħω_p) (cp σx + mc² σz)`.
pub fn dirac_mode_propagator(p: f64, params: &PhysParams, t: f64) -> Mat2 {
    let w = omega_p(p, params).value();
    let cos = C64::new((w * t).cos(), 0.0);
    let s = sin_over(w, t) / params.hbar;
    let generator = Mat2::SIGMA_X.scale(C64::new(p * params.c, 0.0))
        + Mat2::SIGMA_Z.scale(C64::new(params.rest_energy(), 0.0));
    Mat2::IDENTITY.scale(cos) + generator.scale(C64::new(0.0, -s))
}

/// Exact Dirac evolution of the amplitude at momentum `p` (any sign).
pub fn dirac_mode_evolve(psi_p: &Spinor2, p: f64, params: &PhysParams, t: f64) -> Spinor2 {
    dirac_mode_propagator(p, params, t).apply(*psi_p)
}

/// The massless propagator `exp(-i cpt σx/ħ)` applied regardless of the
/// mass. Meaningful only for `p ≠ 0` and times inside [`validity_window`].
pub fn ultrarelativistic_approx(
    psi_p: &Spinor2,
    p: f64,
    params: &PhysParams,
    t: f64,
) -> Result<Spinor2> {
    if p == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    let (s, c) = (p * params.c * t / params.hbar).sin_cos();
    Ok(psi_p.scale_re(c) + Mat2::SIGMA_X.apply(*psi_p).scale(C64::new(0.0, -s)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidityWindow {
    Bounded(f64),
    /// Massless case: the approximation is exact for all times.
    Unbounded,
}

impl ValidityWindow {
    pub fn time(self) -> f64 {
        match self {
            ValidityWindow::Bounded(t) => t,
            ValidityWindow::Unbounded => f64::INFINITY,
        }
    }

    /// Whether `|t| ≤ VALIDITY_FACTOR · window`.
    pub fn admits(self, t: f64) -> bool {
        t.abs() <= VALIDITY_FACTOR * self.time()
    }
}

/// Characteristic breakdown time `2ħ|p|/(m²c³)` of the ultrarelativistic
/// approximation.
pub fn validity_window(p: f64, params: &PhysParams) -> ValidityWindow {
    if params.mass == 0.0 {
        return ValidityWindow::Unbounded;
    }
    let c = params.c;
    ValidityWindow::Bounded(2.0 * params.hbar * p.abs() / (params.mass * params.mass * c * c * c))
}

/// Norm of `ħ²ψ̈ + (p²c² + m²c⁴)ψ` at time `t`, with `ψ̈` taken as the
/// centred second difference of `evolve` with step `dt`.
///
/// Exact solutions leave an `O(dt²)` residual; a state that does not evolve
/// leaves the mass term.
pub fn klein_gordon_residual(
    evolve: impl Fn(f64) -> Spinor2,
    p: f64,
    params: &PhysParams,
    t: f64,
    dt: f64,
) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    let hbar2 = params.hbar * params.hbar;
    let energy2 = (p * params.c).powi(2) + params.rest_energy().powi(2);
    let centre = evolve(t);
    let second = (evolve(t + dt) + evolve(t - dt) - centre.scale_re(2.0)).scale_re(1.0 / (dt * dt));
    let residual = second.scale_re(hbar2) + centre.scale_re(energy2);
    Ok(residual.norm_sqr().sqrt())
}
