//! Subcommand implementations. Each returns the rendered report text; numbers
//! are written with 17 significant digits so they round-trip exactly.

use std::f64::consts::PI;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use dunkl_coulomb::angular::AngularState;
use dunkl_coulomb::coherent::{coherent_closed, coherent_series, CoherentParam, PhysicalCoherent};
use dunkl_coulomb::radial::{RadialState, Sturmian};
use dunkl_coulomb::verify::{self, Check, Suite};
use dunkl_coulomb::{QuantumNumbers, SpectralData};
use serde::Serialize;
use serde_json::json;

use crate::config::{Format, Options};

/// Rendered output plus whether every verification check passed.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_text<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Serialize)]
struct SpectrumRow {
    e1: u8,
    e2: u8,
    m: f64,
    nr: u32,
    s2: f64,
    k: f64,
    energy: f64,
}

pub fn spectrum(opts: &Options) -> Result<Report> {
    let params = opts.params()?;
    params.require_bound()?;
    let two_m_max = opts.two_m_max()?;
    let nr_max = opts.nr_max.unwrap_or(2);
    let mut rows = Vec::new();
    for two_m in 0..=two_m_max {
        for (e1, e2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for nr in 0..=nr_max {
                let Ok(qn) = QuantumNumbers::new(e1, e2, two_m, nr) else {
                    continue;
                };
                let sd = SpectralData::new(&qn, &params)?;
                rows.push((
                    qn,
                    SpectrumRow {
                        e1,
                        e2,
                        m: qn.m(),
                        nr,
                        s2: sd.s2,
                        k: sd.k,
                        energy: sd.energy,
                    },
                ));
            }
        }
    }
    rows.sort_by(|(qa, a), (qb, b)| {
        a.energy
            .total_cmp(&b.energy)
            .then(qa.two_m().cmp(&qb.two_m()))
            .then(qa.nr().cmp(&qb.nr()))
            .then((qa.e1(), qa.e2()).cmp(&(qb.e1(), qb.e2())))
    });
    let rows: Vec<SpectrumRow> = rows.into_iter().map(|(_, r)| r).collect();
    match opts.format() {
        Format::Json => Ok(Report::ok(json_text(&rows)?)),
        Format::Csv => {
            let mut out = String::from("e1,e2,m,nr,s2,k,energy\n");
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.e1,
                    r.e2,
                    r.m,
                    r.nr,
                    num(r.s2),
                    num(r.k),
                    num(r.energy)
                )?;
            }
            Ok(Report::ok(out))
        }
    }
}

fn real_table(opts: &Options, coord: &str, samples: &[(f64, f64)]) -> Result<Report> {
    match opts.format() {
        Format::Json => {
            let rows: Vec<_> = samples
                .iter()
                .map(|(x, v)| json!({ coord: x, "value": v }))
                .collect();
            Ok(Report::ok(json_text(&rows)?))
        }
        Format::Csv => {
            let mut out = format!("{coord},value\n");
            for (x, v) in samples {
                writeln!(out, "{},{}", num(*x), num(*v))?;
            }
            Ok(Report::ok(out))
        }
    }
}

/// r_i = r_max · i / n, i = 1..=n
fn radial_nodes(opts: &Options) -> Result<Vec<f64>> {
    let n = opts.grid_n(200)?;
    let r_max = opts.r_max()?;
    Ok((1..=n).map(|i| r_max * i as f64 / n as f64).collect())
}

pub fn radial(opts: &Options) -> Result<Report> {
    let params = opts.params()?;
    let qn = opts.quantum_numbers()?;
    let rs = radial_nodes(opts)?;
    let samples: Vec<(f64, f64)> = if opts.sturmian {
        let st = Sturmian::new(qn.nr(), qn.two_m(), &params);
        rs.iter().map(|&r| (r, st.eval(r))).collect()
    } else {
        let st = RadialState::new(&qn, &params)?;
        rs.iter().map(|&r| (r, st.eval(r))).collect()
    };
    real_table(opts, "r", &samples)
}

pub fn angular(opts: &Options) -> Result<Report> {
    let params = opts.params()?;
    let qn = opts.quantum_numbers()?;
    let n = opts.grid_n(360)?;
    let state = AngularState::new(qn, params);
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / n as f64;
            (phi, state.eval(phi))
        })
        .collect();
    real_table(opts, "phi", &samples)
}

pub fn coherent(opts: &Options) -> Result<Report> {
    let params = opts.params()?;
    let two_m = opts.two_m();
    let param =
        CoherentParam::from_polar_disc(opts.xi_mod.unwrap_or(0.3), opts.xi_arg.unwrap_or(0.0))?;
    let rs = radial_nodes(opts)?;
    let samples = if opts.physical {
        if opts.n_max.is_some() {
            bail!("--n-max applies to the Sturmian-basis coherent state, not --physical");
        }
        let state = PhysicalCoherent::new(&param, two_m, &params)?;
        rs.iter().map(|&r| (r, state.eval(r))).collect::<Vec<_>>()
    } else {
        match opts.n_max {
            Some(n_max) => rs
                .iter()
                .map(|&r| Ok((r, coherent_series(r, &param, two_m, &params, n_max)?)))
                .collect::<Result<Vec<_>>>()?,
            None => rs
                .iter()
                .map(|&r| (r, coherent_closed(r, &param, two_m, &params)))
                .collect(),
        }
    };
    match opts.format() {
        Format::Json => {
            let rows: Vec<_> = samples
                .iter()
                .map(|(r, v)| json!({ "r": r, "value_re": v.re, "value_im": v.im, "value_abs": v.norm() }))
                .collect();
            Ok(Report::ok(json_text(&rows)?))
        }
        Format::Csv => {
            let mut out = String::from("r,value_re,value_im,value_abs\n");
            for (r, v) in &samples {
                writeln!(
                    out,
                    "{},{},{},{}",
                    num(*r),
                    num(v.re),
                    num(v.im),
                    num(v.norm())
                )?;
            }
            Ok(Report::ok(out))
        }
    }
}

pub fn parse_suites(spec: &str) -> Result<Vec<Suite>> {
    if spec == "all" {
        return Ok(Vec::new());
    }
    let mut suites = spec
        .split(',')
        .map(|s| Ok(s.trim().parse::<Suite>()?))
        .collect::<Result<Vec<_>>>()?;
    suites.sort();
    suites.dedup();
    Ok(suites)
}

pub fn verify(opts: &Options) -> Result<Report> {
    let suites = parse_suites(opts.suite.as_deref().unwrap_or("all"))?;
    let tolerances = opts.tolerances()?;
    let checks: Vec<Check> = verify::run(&suites, &tolerances);
    let ok = verify::all_pass(&checks);
    let text = match opts.format() {
        Format::Json => json_text(&checks)?,
        Format::Csv => {
            let mut out = String::from("suite,check,residual,tolerance,status\n");
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            out
        }
    };
    Ok(Report { text, ok })
}
