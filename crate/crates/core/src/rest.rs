//! Dynamics of a particle at rest (`p = 0`).
//!
//! Dropping the spatial derivative leaves `∂tψ = -ω σy ψ*` for Majorana and
//! `∂tψ = -iω σz ψ` for Dirac, with `ω = mc²/ħ`. Both are solved in closed
//! form here. Spinors are always compared componentwise: `ψ` and `e^{iθ}ψ`
//! do not evolve alike under the Majorana equation.

use serde::{Deserialize, Serialize};

use crate::series::check_increasing;
use crate::spinor::{expectation, inner, Mat2, Observable2};
use crate::{Error, PhysParams, Result, Spinor2, TimeSeries, C64, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RestEquation {
    Dirac,
    Majorana,
}

impl RestEquation {
    pub fn evolve(self, psi0: &Spinor2, params: &PhysParams, t: f64) -> Spinor2 {
        match self {
            RestEquation::Dirac => dirac_rest_evolve(psi0, params, t),
            RestEquation::Majorana => majorana_rest_evolve(psi0, params, t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RestEquation::Dirac => "dirac",
            RestEquation::Majorana => "majorana",
        }
    }
}

/// `ψ(t) = cos ωt ψ(0) - sin ωt σy ψ*(0)`.
pub fn majorana_rest_evolve(psi0: &Spinor2, params: &PhysParams, t: f64) -> Spinor2 {
    let (s, c) = (params.omega() * t).sin_cos();
    psi0.scale_re(c) - Mat2::SIGMA_Y.apply(psi0.conj()).scale_re(s)
}

/// `ψ(t) = exp(-iωtσz) ψ(0)`: the upper component picks up `e^{-iωt}`, the
/// lower one `e^{+iωt}`.
pub fn dirac_rest_evolve(psi0: &Spinor2, params: &PhysParams, t: f64) -> Spinor2 {
    let phase = C64::from_polar(1.0, -params.omega() * t);
    Spinor2::new(psi0.upper * phase, psi0.lower * phase.conj())
}

/// The Majorana rest solution assembled from Dirac solutions run forwards
/// and backwards in time:
///
/// `ψ_M(t) = ½[ψ_D(t) + ψ_D(-t)] - ½σx[ψ_D*(t) - ψ_D*(-t)]`.
///
/// Only useful as an independent route to [`majorana_rest_evolve`].
pub fn majorana_via_dirac(psi0: &Spinor2, params: &PhysParams, t: f64) -> Spinor2 {
    let fwd = dirac_rest_evolve(psi0, params, t);
    let back = dirac_rest_evolve(psi0, params, -t);
    let even = (fwd + back).scale_re(0.5);
    let odd = Mat2::SIGMA_X.apply(fwd.conj() - back.conj()).scale_re(0.5);
    even - odd
}

/// Closed-form `⟨σz⟩(t)` without evolving the state.
///
/// Dirac: constant `ψ0†σzψ0`. Majorana:
/// `cos(2ωt) ψ0†σzψ0 - sin(2ωt) Im[ψ0†σxψ0*]`.
pub fn sigma_z_closed_form(
    psi0: &Spinor2,
    which: RestEquation,
    params: &PhysParams,
    t: f64,
) -> f64 {
    let z0 = psi0.upper.norm_sqr() - psi0.lower.norm_sqr();
    match which {
        RestEquation::Dirac => z0,
        RestEquation::Majorana => {
            let cross = inner(psi0, &Mat2::SIGMA_X.apply(psi0.conj())).im;
            let (s, c) = (2.0 * params.omega() * t).sin_cos();
            c * z0 - s * cross
        }
    }
}

/// `⟨σz⟩` on a time grid, each sample cross-checked against the
/// expectation value of the evolved spinor within [`DEFAULT_TOLERANCE`].
pub fn sigma_z_series(
    psi0: &Spinor2,
    which: RestEquation,
    params: &PhysParams,
    times: &[f64],
) -> Result<TimeSeries<f64>> {
    sigma_z_series_with_tolerance(psi0, which, params, times, DEFAULT_TOLERANCE)
}

pub fn sigma_z_series_with_tolerance(
    psi0: &Spinor2,
    which: RestEquation,
    params: &PhysParams,
    times: &[f64],
    tolerance: f64,
) -> Result<TimeSeries<f64>> {
    let psi0 = psi0.ensure_finite()?;
    check_increasing(times)?;
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let closed = sigma_z_closed_form(&psi0, which, params, t);
        let direct = expectation(&Observable2::SIGMA_Z, &which.evolve(&psi0, params, t))?;
        let deviation = (closed - direct).abs();
        if deviation > tolerance {
            return Err(Error::SelfCheck {
                what: format!("{} <σz> at t = {t}", which.name()),
                deviation,
                tolerance,
            });
        }
        values.push(closed);
    }
    TimeSeries::new(times.to_vec(), values)
}

/// The evolved spinor on a time grid.
pub fn evolve_series(
    psi0: &Spinor2,
    which: RestEquation,
    params: &PhysParams,
    times: &[f64],
) -> Result<TimeSeries<Spinor2>> {
    let psi0 = psi0.ensure_finite()?;
    check_increasing(times)?;
    let values = times
        .iter()
        .map(|&t| which.evolve(&psi0, params, t))
        .collect();
    TimeSeries::new(times.to_vec(), values)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    use super::*;
    use crate::oracle::{integrate_rest, IntegratorConfig};

    const EPS: f64 = 1e-14;

    fn up() -> Spinor2 {
        Spinor2::from_parts(1.0, 0.0, 0.0, 0.0)
    }

    fn plus_i() -> Spinor2 {
        Spinor2::from_parts(FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2)
    }

    #[test]
    fn majorana_identity_at_zero() {
        for w in [0.3, 1.0, 7.0] {
            let params = PhysParams::with_omega(w).unwrap();
            assert_eq!(majorana_rest_evolve(&up(), &params, 0.0), up());
        }
    }

    #[test]
    fn majorana_quarter_period_matches_rk4() {
        let params = PhysParams::default();
        let cfg = IntegratorConfig::with_dt(1e-3);
        for (psi0, expected) in [
            (up(), Spinor2::from_parts(0.0, 0.0, 0.0, -1.0)),
            (
                Spinor2::from_parts(0.0, 0.0, 1.0, 0.0),
                Spinor2::from_parts(0.0, 1.0, 0.0, 0.0),
            ),
        ] {
            let oracle = integrate_rest(&psi0, &params, FRAC_PI_2, &cfg).unwrap();
            assert!(oracle.max_abs_diff(&expected) < 1e-10);
            let closed = majorana_rest_evolve(&psi0, &params, FRAC_PI_2);
            assert!(closed.max_abs_diff(&expected) < EPS);
        }
    }

    #[test]
    fn dirac_examples() {
        let params = PhysParams::with_omega(2.0).unwrap();
        let t = 0.37;
        let out = dirac_rest_evolve(&up(), &params, t);
        assert!((out.upper - C64::from_polar(1.0, -2.0 * t)).norm() < EPS);
        assert_eq!(out.lower, C64::new(0.0, 0.0));

        let down = Spinor2::from_parts(0.0, 0.0, 1.0, 0.0);
        let out = dirac_rest_evolve(&down, &params, PI / 2.0);
        assert!(out.max_abs_diff(&Spinor2::from_parts(0.0, 0.0, -1.0, 0.0)) < EPS);

        let params = PhysParams::default();
        let out = dirac_rest_evolve(&plus_i(), &params, FRAC_PI_2);
        let expected = Spinor2::from_parts(0.0, -FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0);
        assert!(out.max_abs_diff(&expected) < EPS);
    }

    #[test]
    fn via_dirac_examples() {
        let params = PhysParams::default();
        let psi = Spinor2::from_parts(0.2, -0.5, 0.7, 0.1);
        assert!(majorana_via_dirac(&psi, &params, 0.0).max_abs_diff(&psi) < EPS);
        let out = majorana_via_dirac(&up(), &params, FRAC_PI_2);
        assert!(out.max_abs_diff(&Spinor2::from_parts(0.0, 0.0, 0.0, -1.0)) < EPS);
    }

    #[test]
    fn massless_rest_dynamics_is_frozen() {
        let params = PhysParams::natural(0.0).unwrap();
        let psi = Spinor2::from_parts(0.2, -0.5, 0.7, 0.1);
        assert_eq!(majorana_rest_evolve(&psi, &params, 5.0), psi);
        assert_eq!(dirac_rest_evolve(&psi, &params, 5.0), psi);
    }

    #[test]
    fn majorana_is_not_phase_covariant() {
        let params = PhysParams::default();
        let phase = C64::from_polar(1.0, 0.9);
        let a = majorana_rest_evolve(&up().scale(phase), &params, 0.6);
        let b = majorana_rest_evolve(&up(), &params, 0.6).scale(phase);
        assert!(a.max_abs_diff(&b) > 0.1);
    }

    #[test]
    fn sigma_z_series_examples() {
        let params = PhysParams::default();
        let times = [0.0, FRAC_PI_4, FRAC_PI_2, 2.0];

        let d = sigma_z_series(&up(), RestEquation::Dirac, &params, &times).unwrap();
        assert!(d.values().iter().all(|&v| v == 1.0));

        let m = sigma_z_series(&up(), RestEquation::Majorana, &params, &times).unwrap();
        assert!((m.values()[2] + 1.0).abs() < EPS);
        for (t, v) in m.iter() {
            assert!((v - (2.0 * t).cos()).abs() < EPS);
        }

        let m = sigma_z_series(&plus_i(), RestEquation::Majorana, &params, &times).unwrap();
        assert!(m.values()[0].abs() < EPS);
        assert!((m.values()[1] - 1.0).abs() < EPS);
        for (t, v) in m.iter() {
            assert!((v - (2.0 * t).sin()).abs() < EPS);
        }
    }

    #[test]
    fn plus_i_sign_fixed_by_oracle() {
        // RK4 decides the orientation of the (1, i)/√2 Majorana curve.
        let params = PhysParams::default();
        let cfg = IntegratorConfig::with_dt(1e-3);
        let psi = integrate_rest(&plus_i(), &params, FRAC_PI_4, &cfg).unwrap();
        let z = psi.upper.norm_sqr() - psi.lower.norm_sqr();
        assert!((z - 1.0).abs() < 1e-10);
    }

    #[test]
    fn unordered_times_rejected() {
        let params = PhysParams::default();
        let err = sigma_z_series(&up(), RestEquation::Dirac, &params, &[0.0, 2.0, 1.0]);
        assert_eq!(err, Err(Error::UnorderedTimes(2)));
    }

    #[test]
    fn dirac_composition() {
        let params = PhysParams::with_omega(1.7).unwrap();
        let psi = Spinor2::from_parts(0.2, -0.5, 0.7, 0.1);
        let two_step = dirac_rest_evolve(&dirac_rest_evolve(&psi, &params, 0.4), &params, -1.3);
        let one_step = dirac_rest_evolve(&psi, &params, -0.9);
        assert!(two_step.max_abs_diff(&one_step) < EPS);
    }
}
