//! Browser bindings for the interactive demo page in `www/`.
//!
//! Every export takes plain numbers and returns a flat `Float64Array` so the
//! page can plot without any marshalling layer.

use std::f64::consts::PI;

use dunkl_coulomb::angular::AngularState;
use dunkl_coulomb::coherent::{CoherentParam, PhysicalCoherent};
use dunkl_coulomb::radial::RadialState;
use dunkl_coulomb::{ModelParams, QuantumNumbers, SpectralData};
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn params(mu1: f64, mu2: f64, alpha: f64) -> Result<ModelParams, JsError> {
    ModelParams::new(mu1, mu2, alpha).map_err(js_err)
}

/// Levels for every sector with 2m ≤ `two_m_max` and n_r ≤ `nr_max`, as
/// consecutive records `[2m, e1, e2, n_r, energy]`.
#[wasm_bindgen]
pub fn spectrum(
    mu1: f64,
    mu2: f64,
    alpha: f64,
    two_m_max: u32,
    nr_max: u32,
) -> Result<Vec<f64>, JsError> {
    let p = params(mu1, mu2, alpha)?;
    let mut out = Vec::new();
    for two_m in 0..=two_m_max {
        for (e1, e2) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            for nr in 0..=nr_max {
                let Ok(qn) = QuantumNumbers::new(e1, e2, two_m, nr) else {
                    continue;
                };
                let sd = SpectralData::new(&qn, &p).map_err(js_err)?;
                out.extend([
                    f64::from(two_m),
                    f64::from(e1),
                    f64::from(e2),
                    f64::from(nr),
                    sd.energy,
                ]);
            }
        }
    }
    Ok(out)
}

/// Probability density |Φ(φ) R(r)|² sampled on an `n × n` Cartesian grid
/// covering [-extent, extent]², row-major from the top-left corner.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn density(
    mu1: f64,
    mu2: f64,
    alpha: f64,
    e1: u8,
    e2: u8,
    two_m: u32,
    nr: u32,
    extent: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    let p = params(mu1, mu2, alpha)?;
    let qn = QuantumNumbers::new(e1, e2, two_m, nr).map_err(js_err)?;
    let radial = RadialState::new(&qn, &p).map_err(js_err)?;
    let angular = AngularState::new(qn, p);
    let step = 2.0 * extent / n as f64;
    let mut out = Vec::with_capacity(n * n);
    for row in 0..n {
        let y = extent - (row as f64 + 0.5) * step;
        for col in 0..n {
            let x = -extent + (col as f64 + 0.5) * step;
            let amp = radial.eval(x.hypot(y)) * angular.eval(y.atan2(x).rem_euclid(2.0 * PI));
            out.push(amp * amp);
        }
    }
    Ok(out)
}

/// Angular eigenfunction Φ on n equally spaced points of [0, 2π).
#[wasm_bindgen]
pub fn angular(
    mu1: f64,
    mu2: f64,
    e1: u8,
    e2: u8,
    two_m: u32,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    let p = params(mu1, mu2, -1.0)?;
    let qn = QuantumNumbers::new(e1, e2, two_m, 0).map_err(js_err)?;
    let state = AngularState::new(qn, p);
    Ok((0..n)
        .map(|j| state.eval(2.0 * PI * j as f64 / n as f64))
        .collect())
}

/// Normalised physical coherent state on r_i = r_max·i/n, as records
/// `[r, re, im]`, followed by a final record `[energy, C, 0]`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn coherent(
    mu1: f64,
    mu2: f64,
    alpha: f64,
    two_m: u32,
    modulus: f64,
    arg: f64,
    r_max: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    let p = params(mu1, mu2, alpha)?;
    let param = CoherentParam::from_polar_disc(modulus, arg).map_err(js_err)?;
    let state = PhysicalCoherent::new(&param, two_m, &p).map_err(js_err)?;
    let mut out = Vec::with_capacity(3 * n + 3);
    for i in 1..=n {
        let r = r_max * i as f64 / n as f64;
        let v = state.eval(r);
        out.extend([r, v.re, v.im]);
    }
    out.extend([state.energy(), state.c(), 0.0]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_records() {
        let rows = spectrum(0.0, 0.0, -1.0, 0, 0).unwrap();
        assert_eq!(rows, vec![0.0, 0.0, 0.0, 0.0, -2.0]);
        let rows = spectrum(0.3, 0.2, -1.0, 2, 1).unwrap();
        assert_eq!(rows.len() % 5, 0);
        assert_eq!(rows.len() / 5, 10);
    }

    #[test]
    fn density_is_normalised() {
        let (n, extent) = (400, 24.0);
        let (mu1, mu2) = (0.3, 0.2);
        let d = density(mu1, mu2, -1.0, 1, 0, 1, 0, extent, n).unwrap();
        let step = 2.0 * extent / n as f64;
        let mut total = 0.0;
        for row in 0..n {
            let y = extent - (row as f64 + 0.5) * step;
            for col in 0..n {
                let x = -extent + (col as f64 + 0.5) * step;
                total += d[row * n + col] * x.abs().powf(2.0 * mu1) * y.abs().powf(2.0 * mu2);
            }
        }
        assert!(
            (total * step * step - 1.0).abs() < 1e-2,
            "{}",
            total * step * step
        );
    }

    #[test]
    fn coherent_tail_record() {
        let out = coherent(0.3, 0.2, -1.0, 1, 0.3, 0.0, 10.0, 50).unwrap();
        assert_eq!(out.len(), 153);
        assert!(out[150] < 0.0);
        assert!(out[151] > 0.0);
    }
}
