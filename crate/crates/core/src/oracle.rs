//! Brute-force reference integration of the first-order equations of
//! motion with fixed-step classical Runge-Kutta.
//!
//! Nothing here calls the closed-form evolvers; right-hand sides are written
//! out by hand in real coordinates. Equations containing `ψ*` are not
//! holomorphic, so they are integrated on `(Re ψ, Im ψ)`. The Dirac mode
//! equation is holomorphic and is integrated directly in `C²`.

use crate::momentum::MomentumModePair;
use crate::{Error, PhysParams, Result, Spinor2, C64};

/// Largest allowed `dt · ω` for the integrated system.
pub const MAX_PHASE_PER_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub max_steps: u64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            dt: 1e-3,
            max_steps: 10_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn with_dt(dt: f64) -> Self {
        IntegratorConfig {
            dt,
            ..Default::default()
        }
    }

    fn steps_for(&self, t: f64, omega_max: f64) -> Result<u64> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be > 0, got {}",
                self.dt
            )));
        }
        if self.dt * omega_max > MAX_PHASE_PER_STEP {
            return Err(Error::InvalidConfig(format!(
                "dt·ω = {:.3} exceeds {MAX_PHASE_PER_STEP}",
                self.dt * omega_max
            )));
        }
        if !t.is_finite() {
            return Err(Error::NonFinite("integration time"));
        }
        let needed = (t.abs() / self.dt).ceil();
        if needed > self.max_steps as f64 {
            return Err(Error::StepOverflow {
                needed: needed as u64,
                limit: self.max_steps,
            });
        }
        Ok(needed as u64)
    }
}

trait OdeState: Copy {
    fn axpy(self, h: f64, k: Self) -> Self;
}

impl<const N: usize> OdeState for [f64; N] {
    fn axpy(mut self, h: f64, k: Self) -> Self {
        for (y, dy) in self.iter_mut().zip(k) {
            *y += h * dy;
        }
        self
    }
}

impl<const N: usize> OdeState for [C64; N] {
    fn axpy(mut self, h: f64, k: Self) -> Self {
        for (y, dy) in self.iter_mut().zip(k) {
            *y += dy * h;
        }
        self
    }
}

fn rk4<S: OdeState>(f: impl Fn(&S) -> S, y0: S, t: f64, steps: u64) -> S {
    if steps == 0 {
        return y0;
    }
    let h = t / steps as f64;
    let mut y = y0;
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&y.axpy(0.5 * h, k1));
        let k3 = f(&y.axpy(0.5 * h, k2));
        let k4 = f(&y.axpy(h, k3));
        y = y
            .axpy(h / 6.0, k1)
            .axpy(h / 3.0, k2)
            .axpy(h / 3.0, k3)
            .axpy(h / 6.0, k4);
    }
    y
}

fn to_real(psi: &Spinor2) -> [f64; 4] {
    [psi.upper.re, psi.upper.im, psi.lower.re, psi.lower.im]
}

fn from_real(y: &[f64]) -> Spinor2 {
    Spinor2::from_parts(y[0], y[1], y[2], y[3])
}

/// Integrates `∂tψ = -(mc²/ħ) σy ψ*` from `psi0` over time `t`.
pub fn integrate_rest(
    psi0: &Spinor2,
    params: &PhysParams,
    t: f64,
    cfg: &IntegratorConfig,
) -> Result<Spinor2> {
    let psi0 = psi0.ensure_finite()?;
    let w = params.mass * params.c * params.c / params.hbar;
    let steps = cfg.steps_for(t, w)?;
    // σy ψ* = (-i b*, i a*); with a = ar + i ai, b = br + i bi the
    // negated product is (bi + i br, -ai - i ar).
    let rhs = |y: &[f64; 4]| {
        let [ar, ai, br, bi] = *y;
        [w * bi, w * br, -w * ai, -w * ar]
    };
    Ok(from_real(&rk4(rhs, to_real(&psi0), t, steps)))
}

/// Integrates the coupled pair
/// `iħ∂tψ_{±p} = ±cp σx ψ_{±p} - i mc² σy ψ*_{∓p}` as an 8-dimensional real
/// system.
pub fn integrate_mode_pair(
    pair: &MomentumModePair,
    params: &PhysParams,
    t: f64,
    cfg: &IntegratorConfig,
) -> Result<MomentumModePair> {
    let w = params.mass * params.c * params.c / params.hbar;
    let k = pair.p() * params.c / params.hbar;
    let steps = cfg.steps_for(t, w.hypot(k))?;
    let rhs = |y: &[f64; 8]| {
        // (ur, ui, lr, li) at +p, (fr, fi, gr, gi) at -p
        let [ur, ui, lr, li, fr, fi, gr, gi] = *y;
        [
            k * li + w * gi,
            -k * lr + w * gr,
            k * ui - w * fi,
            -k * ur - w * fr,
            -k * gi + w * li,
            k * gr + w * lr,
            -k * fi - w * ui,
            k * fr - w * ur,
        ]
    };
    let mut y0 = [0.0; 8];
    y0[..4].copy_from_slice(&to_real(pair.plus()));
    y0[4..].copy_from_slice(&to_real(pair.minus()));
    let y = rk4(rhs, y0, t, steps);
    MomentumModePair::new(pair.p(), from_real(&y[..4]), from_real(&y[4..]))
}

/// Integrates the Dirac mode equation `iħ∂tψ = (cp σx + mc² σz) ψ`.
pub fn integrate_dirac_mode(
    psi_p: &Spinor2,
    p: f64,
    params: &PhysParams,
    t: f64,
    cfg: &IntegratorConfig,
) -> Result<Spinor2> {
    let psi_p = psi_p.ensure_finite()?;
    let w = params.mass * params.c * params.c / params.hbar;
    let k = p * params.c / params.hbar;
    let steps = cfg.steps_for(t, w.hypot(k))?;
    let minus_i = C64::new(0.0, -1.0);
    let rhs = |y: &[C64; 2]| {
        let [u, l] = *y;
        [minus_i * (u * w + l * k), minus_i * (u * k - l * w)]
    };
    let [u, l] = rk4(rhs, [psi_p.upper, psi_p.lower], t, steps);
    Ok(Spinor2::new(u, l))
}
