//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function has a plain Rust counterpart in [`demo`] so the
//! numerics can be tested natively.

use wasm_bindgen::prelude::*;

pub mod demo {
    use majorana_core::ion::{encode, evolve_doubled, sample_populations};
    use majorana_core::rest::{sigma_z_series, RestEquation};
    use majorana_core::series::linspace;
    use majorana_core::wavepacket::{GaussianSpec, PacketEquation, Wavepacket};
    use majorana_core::{PhysParams, Spinor2};

    fn spinor(parts: [f64; 4]) -> Result<Spinor2, String> {
        Spinor2::from_parts(parts[0], parts[1], parts[2], parts[3])
            .normalized()
            .map_err(|e| e.to_string())
    }

    /// `[t…, dirac…, majorana…]`, each block `points` long, over one period.
    pub fn sigma_z_curves(parts: [f64; 4], omega: f64, points: usize) -> Result<Vec<f64>, String> {
        let params = PhysParams::with_omega(omega).map_err(|e| e.to_string())?;
        if points < 2 {
            return Err("need at least two points".into());
        }
        let psi = spinor(parts)?;
        let times = linspace(0.0, params.period(), points);
        let mut out = times.clone();
        for which in [RestEquation::Dirac, RestEquation::Majorana] {
            let series = sigma_z_series(&psi, which, &params, &times).map_err(|e| e.to_string())?;
            out.extend(series.values());
        }
        Ok(out)
    }

    /// `[x…, density…]` of a Gaussian packet with spinor `(1, 0)` at time `t`.
    pub fn packet_density(
        equation: &str,
        mass: f64,
        p0: f64,
        sigma_x: f64,
        t: f64,
    ) -> Result<Vec<f64>, String> {
        let equation = match equation {
            "majorana" => PacketEquation::Majorana,
            "dirac" => PacketEquation::Dirac,
            "ultra" => PacketEquation::Ultra,
            other => return Err(format!("unknown equation {other:?}")),
        };
        let params = PhysParams::natural(mass).map_err(|e| e.to_string())?;
        let spec = GaussianSpec {
            x0: 0.0,
            p0,
            sigma_x,
            spinor: Spinor2::from_parts(1.0, 0.0, 0.0, 0.0),
        };
        let packet = Wavepacket::gaussian(&spec, 1024, 400.0, params).map_err(|e| e.to_string())?;
        let profile = packet
            .evolve(equation, t)
            .map_err(|e| e.to_string())?
            .position_density();
        let mut out = profile.x;
        out.extend(profile.density);
        Ok(out)
    }

    /// `[n_1r, n_2r, n_1i, n_2i, p_1r, p_2r, p_1i, p_2i]`: sampled counts
    /// followed by the exact populations of the doubled state at time `t`.
    pub fn sample_shots(
        parts: [f64; 4],
        omega: f64,
        t: f64,
        shots: u32,
        seed: u32,
    ) -> Result<Vec<f64>, String> {
        let params = PhysParams::with_omega(omega).map_err(|e| e.to_string())?;
        let psi4 = evolve_doubled(&encode(&spinor(parts)?), &params, t);
        let record =
            sample_populations(&psi4, shots.into(), seed.into()).map_err(|e| e.to_string())?;
        let mut out: Vec<f64> = record.counts.iter().map(|&c| c as f64).collect();
        out.extend(psi4.0.map(|x| x * x));
        Ok(out)
    }
}

/// ⟨σz⟩ over one period for both equations; see [`demo::sigma_z_curves`].
#[wasm_bindgen(js_name = sigmaZCurves)]
pub fn sigma_z_curves(
    re_upper: f64,
    im_upper: f64,
    re_lower: f64,
    im_lower: f64,
    omega: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    demo::sigma_z_curves([re_upper, im_upper, re_lower, im_lower], omega, points)
        .map_err(|e| JsError::new(&e))
}

/// Position density of an evolved packet; see [`demo::packet_density`].
#[wasm_bindgen(js_name = packetDensity)]
pub fn packet_density(
    equation: &str,
    mass: f64,
    p0: f64,
    sigma_x: f64,
    t: f64,
) -> Result<Vec<f64>, JsError> {
    demo::packet_density(equation, mass, p0, sigma_x, t).map_err(|e| JsError::new(&e))
}

/// Population readout of the doubled state; see [`demo::sample_shots`].
#[wasm_bindgen(js_name = sampleShots)]
#[allow(clippy::too_many_arguments)]
pub fn sample_shots(
    re_upper: f64,
    im_upper: f64,
    re_lower: f64,
    im_lower: f64,
    omega: f64,
    t: f64,
    shots: u32,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    demo::sample_shots(
        [re_upper, im_upper, re_lower, im_lower],
        omega,
        t,
        shots,
        seed,
    )
    .map_err(|e| JsError::new(&e))
}
