//! Executors behind `simulate run` and `simulate compare`.

use majorana_core::ion::{
    decode, encode, estimate_from_counts, evolve_doubled, lift_observable, sample_populations,
    BASIS,
};
use majorana_core::momentum::{
    dirac_mode_evolve, majorana_mode_evolve, ultrarelativistic_approx, validity_window,
    MomentumModePair,
};
use majorana_core::rest::{majorana_rest_evolve, sigma_z_series_with_tolerance, RestEquation};
use majorana_core::spinor::Observable2;
use majorana_core::wavepacket::{GaussianSpec, PacketEquation, Wavepacket};
use majorana_core::{PhysParams, Spinor2};
use serde_json::json;

use crate::error::{self_check, CliError};
use crate::output::{Report, Table};
use crate::scenario::{Equation, EquationChoice, Mode, MomentumReport, Quantity, Scenario};

const COMPONENTS: [&str; 4] = ["re_upper", "im_upper", "re_lower", "im_lower"];

fn rest_equation(eq: Equation) -> Result<RestEquation, CliError> {
    match eq {
        Equation::Majorana => Ok(RestEquation::Majorana),
        Equation::Dirac => Ok(RestEquation::Dirac),
        Equation::Ultra => Err(CliError::Config(
            "equation: ultra needs non-zero momenta and is unavailable in rest mode".into(),
        )),
    }
}

fn packet_equation(eq: Equation) -> PacketEquation {
    match eq {
        Equation::Majorana => PacketEquation::Majorana,
        Equation::Dirac => PacketEquation::Dirac,
        Equation::Ultra => PacketEquation::Ultra,
    }
}

/// Relative norm drift `|‖ψ(t)‖² − ‖ψ0‖²| / max(1, ‖ψ0‖²)`.
fn norm_drift(before: f64, after: f64) -> f64 {
    (after - before).abs() / before.max(1.0)
}

/// Executes `simulate run`.
pub fn run(s: &Scenario, stem: &str) -> Result<Report, CliError> {
    s.check_sections()?;
    let params = s.physics()?;
    match s.mode {
        Mode::Rest => run_rest(s, &params, stem),
        Mode::Momentum => match s.momentum.as_ref().map(|m| m.report) {
            Some(MomentumReport::UltraTable) => run_ultra_table(s, &params, stem),
            _ => run_momentum(s, &params, stem),
        },
        Mode::Wavepacket => run_wavepacket(s, &params, stem),
        Mode::Ion => run_ion(s, &params, stem),
    }
}

fn run_rest(s: &Scenario, params: &PhysParams, stem: &str) -> Result<Report, CliError> {
    let times = s.times(params)?;
    let states = s.initial_states()?;
    let equations = s.equation.equations();
    let mut header = vec!["t".to_owned()];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (label, psi, _) in &states {
        for &eq in &equations {
            let which = rest_equation(eq)?;
            let n0 = psi.norm_sqr();
            for &t in &times {
                let n = which.evolve(psi, params, t).norm_sqr();
                self_check(
                    format!("{} norm of {label} at t = {t}", eq.name()),
                    norm_drift(n0, n),
                    s.tolerance,
                )?;
            }
            match s.output.quantity {
                Quantity::SigmaZ => {
                    header.push(format!("{}_{label}", eq.name()));
                    let series =
                        sigma_z_series_with_tolerance(psi, which, params, &times, s.tolerance)
                            .map_err(|e| CliError::from_core(&format!("initial {label}"), e))?;
                    columns.push(series.into_parts().1);
                }
                Quantity::State => {
                    let evolved: Vec<[f64; 4]> = times
                        .iter()
                        .map(|&t| which.evolve(psi, params, t).parts())
                        .collect();
                    for (k, comp) in COMPONENTS.iter().enumerate() {
                        header.push(format!("{}_{label}_{comp}", eq.name()));
                        columns.push(evolved.iter().map(|v| v[k]).collect());
                    }
                }
            }
        }
    }
    let mut table = Table::new(header);
    for (i, &t) in times.iter().enumerate() {
        let mut row = vec![t];
        row.extend(columns.iter().map(|c| c[i]));
        table.push(row);
    }
    let mut report = Report::default();
    report.note("omega", json!(params.omega()));
    report
        .summary
        .push(format!("{} samples, {} series", times.len(), columns.len()));
    report.table(format!("{stem}.csv"), table);
    Ok(report)
}

fn mode_pair(
    p: f64,
    plus: Spinor2,
    minus: Spinor2,
    path: &str,
) -> Result<MomentumModePair, CliError> {
    let minus = if p == 0.0 { plus } else { minus };
    MomentumModePair::new(p, plus, minus).map_err(|e| CliError::from_core(path, e))
}

/// Both sides `(ψ_p(t), ψ_{-p}(t))` under one equation.
fn evolve_pair(
    eq: Equation,
    pair: &MomentumModePair,
    params: &PhysParams,
    t: f64,
    path: &str,
) -> Result<(Spinor2, Spinor2), CliError> {
    let p = pair.p();
    Ok(match eq {
        Equation::Majorana => {
            let out = majorana_mode_evolve(pair, params, t);
            (*out.plus(), *out.minus())
        }
        Equation::Dirac => (
            dirac_mode_evolve(pair.plus(), p, params, t),
            dirac_mode_evolve(pair.minus(), -p, params, t),
        ),
        Equation::Ultra => {
            let approx = |psi: &Spinor2, q: f64| {
                ultrarelativistic_approx(psi, q, params, t)
                    .map_err(|e| CliError::from_core(path, e))
            };
            (approx(pair.plus(), p)?, approx(pair.minus(), -p)?)
        }
    })
}

fn momentum_path(s: &Scenario, j: usize) -> String {
    match s.momentum.as_ref().and_then(|m| m.p.as_ref()) {
        Some(_) => format!("momentum.p[{j}]"),
        None => format!("momentum.p_over_mc[{j}]"),
    }
}

fn run_momentum(s: &Scenario, params: &PhysParams, stem: &str) -> Result<Report, CliError> {
    if s.momentum.as_ref().is_some_and(|m| m.t.is_some()) {
        return Err(CliError::Config(
            "momentum.t: only used by report = ultra_table".into(),
        ));
    }
    let times = s.times(params)?;
    let momenta = s.momenta(params)?;
    let (_, psi, partner) = s.initial_states()?.remove(0);
    let equations = s.equation.equations();
    let mut header = vec!["t".to_owned()];
    for j in 0..momenta.len() {
        for eq in &equations {
            for comp in COMPONENTS {
                header.push(format!("{}_p{j}_{comp}", eq.name()));
            }
        }
    }
    let pairs: Vec<MomentumModePair> = momenta
        .iter()
        .enumerate()
        .map(|(j, &p)| mode_pair(p, psi, partner, &momentum_path(s, j)))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(header);
    for &t in &times {
        let mut row = vec![t];
        for (j, pair) in pairs.iter().enumerate() {
            for &eq in &equations {
                let (plus, minus) = evolve_pair(eq, pair, params, t, &momentum_path(s, j))?;
                let n = if pair.p() == 0.0 {
                    plus.norm_sqr()
                } else {
                    plus.norm_sqr() + minus.norm_sqr()
                };
                let n0 = if pair.p() == 0.0 {
                    pair.plus().norm_sqr()
                } else {
                    pair.norm_sqr()
                };
                self_check(
                    format!("{} pair norm at p = {}, t = {t}", eq.name(), pair.p()),
                    norm_drift(n0, n),
                    s.tolerance,
                )?;
                row.extend(plus.parts());
            }
        }
        table.push(row);
    }
    let mut report = Report::default();
    report.note("momenta", json!(momenta));
    report.summary.push(format!(
        "{} samples x {} momenta",
        times.len(),
        momenta.len()
    ));
    report.table(format!("{stem}.csv"), table);
    Ok(report)
}

fn run_ultra_table(s: &Scenario, params: &PhysParams, stem: &str) -> Result<Report, CliError> {
    if s.time.is_some() {
        return Err(CliError::Config(
            "time: ultra_table evaluates at momentum.t only".into(),
        ));
    }
    if params.mass == 0.0 {
        return Err(CliError::Config(
            "params.mass: ultra_table needs mass > 0; compare majorana with ultra for m = 0".into(),
        ));
    }
    let t = s
        .momentum
        .as_ref()
        .and_then(|m| m.t)
        .ok_or_else(|| CliError::Config("momentum.t: required for ultra_table".into()))?;
    if !t.is_finite() {
        return Err(CliError::Config("momentum.t: must be finite".into()));
    }
    let momenta = s.momenta(params)?;
    let (_, psi, partner) = s.initial_states()?.remove(0);
    let mc = params.mass * params.c;
    let header = [
        "p_over_mc",
        "p",
        "t",
        "validity_time",
        "inside_window",
        "deviation",
    ];
    let mut table = Table::new(header.map(String::from).to_vec());
    for (j, &p) in momenta.iter().enumerate() {
        let path = momentum_path(s, j);
        if p == 0.0 {
            return Err(CliError::Config(format!("{path}: ultra_table needs p > 0")));
        }
        let pair = mode_pair(p, psi, partner, &path)?;
        let exact = evolve_pair(Equation::Majorana, &pair, params, t, &path)?;
        let approx = evolve_pair(Equation::Ultra, &pair, params, t, &path)?;
        let deviation = (exact.0 - approx.0).norm_sqr() + (exact.1 - approx.1).norm_sqr();
        let window = validity_window(p, params);
        table.push(vec![
            p / mc,
            p,
            t,
            window.time(),
            if window.admits(t) { 1.0 } else { 0.0 },
            deviation.sqrt(),
        ]);
    }
    let mut report = Report::default();
    let devs = table.column("deviation").unwrap_or_default();
    let monotone = devs.windows(2).all(|w| w[1] < w[0]);
    report.note("monotone_decreasing", json!(monotone));
    report.summary.push(format!(
        "deviation by p/mc: {}{}",
        devs.iter()
            .map(|d| format!("{d:.3e}"))
            .collect::<Vec<_>>()
            .join(", "),
        if monotone {
            " (monotone decreasing)"
        } else {
            " (not monotone)"
        }
    ));
    report.table(format!("{stem}.csv"), table);
    Ok(report)
}

fn gaussian(s: &Scenario, params: &PhysParams) -> Result<Wavepacket, CliError> {
    let spec = s
        .wavepacket
        .as_ref()
        .ok_or_else(|| CliError::Config("wavepacket: required in wavepacket mode".into()))?;
    let (_, spinor, _) = s.initial_states()?.remove(0);
    let g = GaussianSpec {
        x0: spec.x0,
        p0: spec.p0,
        sigma_x: spec.sigma_x,
        spinor,
    };
    Wavepacket::gaussian(&g, spec.n, spec.box_length, *params)
        .map_err(|e| CliError::from_core("wavepacket", e))
}

fn run_wavepacket(s: &Scenario, params: &PhysParams, stem: &str) -> Result<Report, CliError> {
    let times = s.times(params)?;
    let packet = gaussian(s, params)?;
    let spec = s.wavepacket.as_ref().expect("checked by gaussian");
    if let Some(i) = spec.snapshots.iter().position(|t| !t.is_finite()) {
        return Err(CliError::Config(format!(
            "wavepacket.snapshots[{i}]: must be finite"
        )));
    }
    let equations = s.equation.equations();
    let n0 = packet.norm_sqr();
    let mut header = vec!["t".to_owned()];
    for eq in &equations {
        for q in ["norm", "mean_x", "sigma_z"] {
            header.push(format!("{}_{q}", eq.name()));
        }
    }
    let mut table = Table::new(header);
    for &t in &times {
        let mut row = vec![t];
        for &eq in &equations {
            let evolved = packet
                .evolve(packet_equation(eq), t)
                .map_err(|e| CliError::from_core("wavepacket", e))?;
            let profile = evolved.position_density();
            self_check(
                format!("{} packet norm at t = {t}", eq.name()),
                norm_drift(n0, profile.norm),
                s.tolerance,
            )?;
            row.extend([profile.norm, profile.mean_x, profile.sigma_z]);
        }
        table.push(row);
    }
    let mut report = Report::default();
    report.table(format!("{stem}.csv"), table);
    for &eq in &equations {
        for (k, &t) in spec.snapshots.iter().enumerate() {
            let evolved = packet
                .evolve(packet_equation(eq), t)
                .map_err(|e| CliError::from_core("wavepacket", e))?;
            let mut buf = Vec::new();
            evolved
                .write_csv(&mut buf)
                .map_err(|e| CliError::from_core("wavepacket snapshot", e))?;
            let text = String::from_utf8(buf).expect("csv output is utf-8");
            report.text(format!("{stem}_{}_snap{k}.csv", eq.name()), text);
        }
    }
    report.note("snapshot_times", json!(spec.snapshots));
    report.note(
        "grid",
        json!({"n": packet.grid_size(), "dx": packet.dx(), "dp": packet.dp()}),
    );
    report.summary.push(format!(
        "{} samples, {} snapshots per equation",
        times.len(),
        spec.snapshots.len()
    ));
    Ok(report)
}

fn run_ion(s: &Scenario, params: &PhysParams, stem: &str) -> Result<Report, CliError> {
    if s.equation != EquationChoice::Majorana {
        return Err(CliError::Config(
            "equation: the doubled-space embedding realises the majorana equation only".into(),
        ));
    }
    let shots = s
        .ion
        .as_ref()
        .ok_or_else(|| CliError::Config("ion: required in ion mode".into()))?
        .shots;
    if shots == 0 {
        return Err(CliError::Config("ion.shots: must be > 0".into()));
    }
    let times = s.times(params)?;
    let (_, psi, _) = s.initial_states()?.remove(0);
    if (psi.norm_sqr() - 1.0).abs() > s.tolerance {
        return Err(CliError::Config(format!(
            "initial[0].spinor: populations need a normalized state, |psi|^2 = {}",
            psi.norm_sqr()
        )));
    }
    let psi4 = encode(&psi);
    let sigma_z = lift_observable(&Observable2::SIGMA_Z);
    let mut header: Vec<String> = vec!["t".into()];
    header.extend(BASIS.iter().map(|b| format!("psi_{b}")));
    header.push("sigma_z".into());
    header.extend(BASIS.iter().map(|b| format!("count_{b}")));
    header.extend(["sigma_z_estimate".into(), "sigma_z_std_error".into()]);
    let mut table = Table::new(header);
    let mut records = Vec::with_capacity(times.len());
    for (i, &t) in times.iter().enumerate() {
        let evolved = evolve_doubled(&psi4, params, t);
        let direct = majorana_rest_evolve(&psi, params, t);
        self_check(
            format!("decoded doubled state at t = {t}"),
            decode(&evolved).max_abs_diff(&direct),
            s.tolerance,
        )?;
        let seed = s.seed.wrapping_add(i as u64);
        let record = sample_populations(&evolved, shots, seed)
            .map_err(|e| CliError::from_core("ion sampling", e))?;
        let estimate = estimate_from_counts(&sigma_z, &record);
        let mut row = vec![t];
        row.extend(evolved.0);
        row.push(sigma_z.expectation(&evolved));
        row.extend(record.counts.map(|c| c as f64));
        row.extend([estimate.value, estimate.std_error]);
        table.push(row);
        records.push(record.to_json());
    }
    let mut report = Report::default();
    report.table(format!("{stem}.csv"), table);
    report.text(
        format!("{stem}_shots.json"),
        format!("[\n  {}\n]\n", records.join(",\n  ")),
    );
    report.note("shot_seeds", json!("seed + sample index"));
    report.note("rng", json!("ChaCha8 (rand_chacha), seed_from_u64"));
    report
        .summary
        .push(format!("{} samples x {shots} shots", times.len()));
    Ok(report)
}

/// Deviation statistics of one compared series.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub column: String,
    pub max: f64,
    pub mean: f64,
    pub t_at_max: f64,
}

fn deviation_of(column: &str, times: &[f64], values: &[f64]) -> Deviation {
    let (mut max, mut t_at_max) = (0.0, times[0]);
    for (&t, &v) in times.iter().zip(values) {
        if v > max {
            max = v;
            t_at_max = t;
        }
    }
    Deviation {
        column: column.to_owned(),
        max,
        mean: values.iter().sum::<f64>() / values.len() as f64,
        t_at_max,
    }
}

/// Executes `simulate compare`: the largest componentwise deviation between
/// equations `a` and `b` at every sample time.
pub fn compare(s: &Scenario, stem: &str) -> Result<Report, CliError> {
    s.check_sections()?;
    let params = s.physics()?;
    let spec = s.compare.unwrap_or_default();
    let times = s.times(&params)?;
    let mut columns: Vec<(String, Vec<f64>)> = Vec::new();
    match s.mode {
        Mode::Rest => {
            let (a, b) = (rest_equation(spec.a)?, rest_equation(spec.b)?);
            for (label, psi, _) in s.initial_states()? {
                let dev = times
                    .iter()
                    .map(|&t| {
                        a.evolve(&psi, &params, t)
                            .max_abs_diff(&b.evolve(&psi, &params, t))
                    })
                    .collect();
                columns.push((format!("{label}_max_abs"), dev));
            }
        }
        Mode::Momentum => {
            if s.momentum
                .as_ref()
                .is_some_and(|m| m.report != MomentumReport::Series || m.t.is_some())
            {
                return Err(CliError::Config(
                    "momentum.report: compare uses the series report".into(),
                ));
            }
            let momenta = s.momenta(&params)?;
            let (_, psi, partner) = s.initial_states()?.remove(0);
            for (j, &p) in momenta.iter().enumerate() {
                let path = momentum_path(s, j);
                let pair = mode_pair(p, psi, partner, &path)?;
                let mut dev = Vec::with_capacity(times.len());
                for &t in &times {
                    let x = evolve_pair(spec.a, &pair, &params, t, &path)?;
                    let y = evolve_pair(spec.b, &pair, &params, t, &path)?;
                    dev.push(x.0.max_abs_diff(&y.0).max(x.1.max_abs_diff(&y.1)));
                }
                columns.push((format!("p{j}_max_abs"), dev));
            }
        }
        Mode::Wavepacket => {
            let packet = gaussian(s, &params)?;
            let mut dev = Vec::with_capacity(times.len());
            for &t in &times {
                let x = packet.evolve(packet_equation(spec.a), t);
                let y = packet.evolve(packet_equation(spec.b), t);
                let d = x
                    .and_then(|x| y.and_then(|y| x.max_abs_diff(&y)))
                    .map_err(|e| CliError::from_core("wavepacket", e))?;
                dev.push(d);
            }
            columns.push(("max_abs".into(), dev));
        }
        Mode::Ion => {
            return Err(CliError::Config(
                "mode: ion realises a single equation; nothing to compare".into(),
            ))
        }
    }

    let mut table = Table::new(
        std::iter::once("t".to_owned())
            .chain(columns.iter().map(|(name, _)| name.clone()))
            .collect(),
    );
    for (i, &t) in times.iter().enumerate() {
        let mut row = vec![t];
        row.extend(columns.iter().map(|(_, c)| c[i]));
        table.push(row);
    }
    table.check_finite()?;
    let stats: Vec<Deviation> = columns
        .iter()
        .map(|(n, v)| deviation_of(n, &times, v))
        .collect();
    let overall_max = stats.iter().map(|d| d.max).fold(0.0, f64::max);
    let overall_mean = stats.iter().map(|d| d.mean).sum::<f64>() / stats.len() as f64;

    let mut report = Report::default();
    report
        .summary
        .push(format!("{} vs {}", spec.a.name(), spec.b.name()));
    for d in &stats {
        report.summary.push(format!(
            "{}: max {:e} at t = {}, mean {:e}",
            d.column, d.max, d.t_at_max, d.mean
        ));
    }
    report.summary.push(format!(
        "overall: max {overall_max:e}, mean {overall_mean:e}"
    ));
    let summary = json!({
        "a": spec.a.name(),
        "b": spec.b.name(),
        "max": overall_max,
        "mean": overall_mean,
        "series": stats.iter().map(|d| json!({
            "column": d.column,
            "max": d.max,
            "mean": d.mean,
            "t_at_max": d.t_at_max,
        })).collect::<Vec<_>>(),
    });
    report.note("deviation", summary.clone());
    report.table(format!("{stem}_compare.csv"), table);
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    report.text(format!("{stem}_compare.json"), text);
    Ok(report)
}

/// Largest deviation of a reported comparison, for tests and callers.
pub fn max_deviation(report: &Report) -> Option<f64> {
    report.notes.get("deviation")?.get("max")?.as_f64()
}
