use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Physical constants of a run.
///
/// The default is natural units `ħ = c = 1` with `m = 1`, so that the rest
/// frequency `ω = mc²/ħ` is 1 and times read directly as `ωt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysParams {
    pub mass: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Default for PhysParams {
    fn default() -> Self {
        PhysParams {
            mass: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }
}

impl PhysParams {
    pub fn new(mass: f64, hbar: f64, c: f64) -> Result<Self> {
        PhysParams { mass, hbar, c }.validated()
    }

    /// Natural units with the given mass, so `ω = mass`.
    pub fn natural(mass: f64) -> Result<Self> {
        Self::new(mass, 1.0, 1.0)
    }

    /// Natural units tuned to a target rest frequency.
    pub fn with_omega(omega: f64) -> Result<Self> {
        Self::natural(omega)
    }

    pub fn validated(self) -> Result<Self> {
        let PhysParams { mass, hbar, c } = self;
        if !(mass.is_finite() && hbar.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParams("non-finite constant".into()));
        }
        if mass < 0.0 {
            return Err(Error::InvalidParams(format!(
                "mass must be >= 0, got {mass}"
            )));
        }
        if hbar <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "hbar must be > 0, got {hbar}"
            )));
        }
        if c <= 0.0 {
            return Err(Error::InvalidParams(format!("c must be > 0, got {c}")));
        }
        Ok(self)
    }

    /// Rest energy `mc²`.
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// Rest frequency `ω = mc²/ħ`.
    pub fn omega(&self) -> f64 {
        self.rest_energy() / self.hbar
    }

    /// Period `2π/ω` of the rest-limit dynamics, infinite when `m = 0`.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega()
    }
}
