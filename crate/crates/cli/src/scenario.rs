//! Scenario configuration: the JSON schema, parsing with field diagnostics,
//! and semantic validation.

use std::f64::consts::TAU;

use majorana_core::series::linspace;
use majorana_core::{PhysParams, Spinor2};
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rest,
    Momentum,
    Wavepacket,
    Ion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum EquationChoice {
    Majorana,
    Dirac,
    #[default]
    Both,
}

/// Equations that `compare` can put side by side. `ultra` is the massless
/// propagator and needs non-zero momenta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Majorana,
    Dirac,
    Ultra,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::Majorana => "majorana",
            Equation::Dirac => "dirac",
            Equation::Ultra => "ultra",
        }
    }
}

impl EquationChoice {
    /// Column order used in every output: Dirac before Majorana.
    pub fn equations(self) -> Vec<Equation> {
        match self {
            EquationChoice::Majorana => vec![Equation::Majorana],
            EquationChoice::Dirac => vec![Equation::Dirac],
            EquationChoice::Both => vec![Equation::Dirac, Equation::Majorana],
        }
    }
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Default stem for output files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub mode: Mode,
    #[serde(default)]
    pub equation: EquationChoice,
    pub params: ParamsSpec,
    /// Initial spinors; `rest` accepts several, the other modes exactly one.
    #[serde(default)]
    pub initial: Vec<InitialState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<TimeGrid>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: u64,
    /// Tolerance of the numeric self-checks.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub momentum: Option<MomentumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavepacket: Option<WavepacketSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ion: Option<IonSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare: Option<CompareSpec>,
}

fn default_tolerance() -> f64 {
    majorana_core::DEFAULT_TOLERANCE
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub mass: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    /// Used in column names.
    pub label: String,
    /// `[re upper, im upper, re lower, im lower]`.
    pub spinor: [f64; 4],
    /// Amplitude at `-p` in momentum mode; defaults to `spinor`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<[f64; 4]>,
}

/// Either explicit `values`, or `points` samples from `start` to `stop`
/// (or to `start + periods · 2π/ω`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    #[serde(default)]
    pub start: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periods: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `⟨σz⟩` of each evolved spinor.
    #[default]
    SigmaZ,
    /// The four real components of each evolved spinor.
    State,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Output directory; falls back to `$SIMULATE_OUT_DIR`, then `.`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    /// File stem; falls back to `name`, then the config file stem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
    /// What `rest` mode tabulates.
    #[serde(default)]
    pub quantity: Quantity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case")]
pub enum MomentumReport {
    /// Components of the `+p` amplitude on the time grid.
    #[default]
    Series,
    /// `‖exact Majorana − massless propagator‖` per momentum at time `t`.
    UltraTable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MomentumSpec {
    /// Momenta in units of `mc`; exclusive with `p`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_over_mc: Option<Vec<f64>>,
    /// Absolute momenta; exclusive with `p_over_mc`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    #[serde(default)]
    pub report: MomentumReport,
    /// Evaluation time of `ultra_table`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct WavepacketSpec {
    /// Grid size, a power of two.
    pub n: usize,
    pub box_length: f64,
    #[serde(default)]
    pub x0: f64,
    #[serde(default)]
    pub p0: f64,
    pub sigma_x: f64,
    /// Times at which full position-space snapshots are written.
    #[serde(default)]
    pub snapshots: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct IonSpec {
    pub shots: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CompareSpec {
    pub a: Equation,
    pub b: Equation,
}

impl Default for CompareSpec {
    fn default() -> Self {
        CompareSpec {
            a: Equation::Majorana,
            b: Equation::Dirac,
        }
    }
}

/// The JSON schema of [`Scenario`], pretty-printed.
pub fn schema_json() -> String {
    let schema = schemars::schema_for!(Scenario);
    serde_json::to_string_pretty(&schema).expect("schema serializes")
}

/// Parses a scenario, reporting the field path, line and column on failure.
pub fn parse(text: &str, origin: &str) -> Result<Scenario, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let scenario: Scenario = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let (line, column) = (inner.line(), inner.column());
        let at = format!("{origin}:{line}:{column}");
        let suffix = format!(" at line {line} column {column}");
        let msg = inner.to_string();
        let inner = msg.strip_suffix(&suffix).unwrap_or(&msg);
        if path == "." {
            CliError::Config(format!("{at}: {inner}"))
        } else {
            CliError::Config(format!("{at}: {path}: {inner}"))
        }
    })?;
    de.end()
        .map_err(|e| CliError::Config(format!("{origin}:{}:{}: {e}", e.line(), e.column())))?;
    Ok(scenario)
}

fn field(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{path}: {msg}"))
}

pub fn spinor_of(parts: &[f64; 4], path: &str) -> Result<Spinor2, CliError> {
    if parts.iter().any(|v| !v.is_finite()) {
        return Err(field(path, "components must be finite"));
    }
    Ok(Spinor2::from_parts(parts[0], parts[1], parts[2], parts[3]))
}

impl Scenario {
    pub fn physics(&self) -> Result<PhysParams, CliError> {
        let ParamsSpec { mass, hbar, c } = self.params;
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(field(
                "params.mass",
                format!("must be finite and >= 0, got {mass}"),
            ));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(field(
                "params.hbar",
                format!("must be finite and > 0, got {hbar}"),
            ));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(field(
                "params.c",
                format!("must be finite and > 0, got {c}"),
            ));
        }
        PhysParams::new(mass, hbar, c).map_err(|e| field("params", e))
    }

    /// The sample times, strictly increasing.
    pub fn times(&self, params: &PhysParams) -> Result<Vec<f64>, CliError> {
        let grid = self
            .time
            .as_ref()
            .ok_or_else(|| field("time", "required for this mode"))?;
        let times = match (&grid.values, grid.points) {
            (Some(values), None) => {
                if grid.stop.is_some() || grid.periods.is_some() {
                    return Err(field(
                        "time.values",
                        "cannot be combined with stop or periods",
                    ));
                }
                values.clone()
            }
            (None, Some(points)) => {
                if points < 2 {
                    return Err(field("time.points", format!("must be >= 2, got {points}")));
                }
                let stop = match (grid.stop, grid.periods) {
                    (Some(stop), None) => stop,
                    (None, Some(periods)) => {
                        if params.mass == 0.0 {
                            return Err(field("time.periods", "undefined for mass = 0; use stop"));
                        }
                        grid.start + periods * TAU / params.omega()
                    }
                    _ => return Err(field("time", "give exactly one of stop and periods")),
                };
                linspace(grid.start, stop, points)
            }
            (Some(_), Some(_)) => {
                return Err(field("time", "give either values or points, not both"))
            }
            (None, None) => {
                return Err(field("time", "give values, or points with stop or periods"))
            }
        };
        if times.is_empty() {
            return Err(field("time.values", "must not be empty"));
        }
        if let Some(i) = times.iter().position(|t| !t.is_finite()) {
            return Err(field(&format!("time[{i}]"), "must be finite"));
        }
        if let Some(i) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(field(
                &format!("time[{}]", i + 1),
                format!(
                    "grid must be strictly increasing ({} after {})",
                    times[i + 1],
                    times[i]
                ),
            ));
        }
        Ok(times)
    }

    pub fn initial_states(&self) -> Result<Vec<(String, Spinor2, Spinor2)>, CliError> {
        if self.initial.is_empty() {
            return Err(field("initial", "at least one initial state is required"));
        }
        if self.mode != Mode::Rest && self.initial.len() != 1 {
            return Err(field(
                "initial",
                "this mode takes exactly one initial state",
            ));
        }
        let mut out = Vec::with_capacity(self.initial.len());
        for (i, state) in self.initial.iter().enumerate() {
            let path = format!("initial[{i}]");
            if state.label.is_empty() || state.label.contains([',', '"', '\n', '\r']) {
                return Err(field(
                    &format!("{path}.label"),
                    "must be non-empty without , \" or newlines",
                ));
            }
            if self.initial[..i].iter().any(|s| s.label == state.label) {
                return Err(field(
                    &format!("{path}.label"),
                    format!("duplicate label {:?}", state.label),
                ));
            }
            let psi = spinor_of(&state.spinor, &format!("{path}.spinor"))?;
            let partner = match &state.partner {
                Some(parts) => {
                    if self.mode != Mode::Momentum {
                        return Err(field(
                            &format!("{path}.partner"),
                            "only used in momentum mode",
                        ));
                    }
                    spinor_of(parts, &format!("{path}.partner"))?
                }
                None => psi,
            };
            out.push((state.label.clone(), psi, partner));
        }
        Ok(out)
    }

    pub fn momenta(&self, params: &PhysParams) -> Result<Vec<f64>, CliError> {
        let spec = self
            .momentum
            .as_ref()
            .ok_or_else(|| field("momentum", "required in momentum mode"))?;
        let (values, path, scale) = match (&spec.p, &spec.p_over_mc) {
            (Some(p), None) => (p, "momentum.p", 1.0),
            (None, Some(r)) => {
                if params.mass == 0.0 {
                    return Err(field("momentum.p_over_mc", "undefined for mass = 0; use p"));
                }
                (r, "momentum.p_over_mc", params.mass * params.c)
            }
            _ => return Err(field("momentum", "give exactly one of p and p_over_mc")),
        };
        if values.is_empty() {
            return Err(field(path, "must not be empty"));
        }
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if v.is_finite() && v >= 0.0 {
                    Ok(v * scale)
                } else {
                    Err(field(
                        &format!("{path}[{i}]"),
                        format!("must be finite and >= 0, got {v}"),
                    ))
                }
            })
            .collect()
    }

    /// Rejects sections that do not belong to the chosen mode, so a typo in
    /// `mode` cannot silently ignore half the file.
    pub fn check_sections(&self) -> Result<(), CliError> {
        let present = [
            ("momentum", self.momentum.is_some(), Mode::Momentum),
            ("wavepacket", self.wavepacket.is_some(), Mode::Wavepacket),
            ("ion", self.ion.is_some(), Mode::Ion),
        ];
        for (name, is_present, mode) in present {
            if is_present && self.mode != mode {
                return Err(field(
                    name,
                    format!("section not used in {:?} mode", self.mode).to_lowercase(),
                ));
            }
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(field(
                "tolerance",
                format!("must be finite and > 0, got {}", self.tolerance),
            ));
        }
        Ok(())
    }
}
