//! Exact evolution of 1+1 dimensional Majorana and Dirac spinors.
//!
//! The crate is organised bottom-up:
//!
//! * [`spinor`]: two-component spinors, the fixed gamma/Pauli matrices,
//!   charge conjugation and observables.
//! * [`params`]: physical constants of a run (`m`, `ħ`, `c`).
//! * [`rest`]: closed-form dynamics of a particle at rest and the `⟨σz⟩`
//!   time series.
//! * [`momentum`]: closed-form propagators for a single momentum mode pair,
//!   the ultrarelativistic approximation and the Klein-Gordon residual.
//! * [`wavepacket`]: position-space dynamics assembled from mode pairs.
//! * [`ion`]: the real four-component embedding used for trapped-ion
//!   emulation, observable lifting and shot sampling.
//! * [`oracle`]: fixed-step RK4 integration of the first-order equations,
//!   used only to validate the closed forms.

pub mod error;
pub mod ion;
pub mod momentum;
pub mod oracle;
pub mod params;
pub mod rest;
pub mod series;
pub mod spinor;
pub mod wavepacket;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use params::PhysParams;
pub use series::TimeSeries;
pub use spinor::{Mat2, Observable2, Spinor2};

/// Run-wide default tolerance for self-checks and normalization tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
