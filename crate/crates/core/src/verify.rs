//! Self-verification suites. Every check measures one residual against an
//! independent oracle (closed forms, series, matrix arithmetic, quadrature) and
//! compares it with a tolerance from [`Tolerances`].

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular::{angular_gram, eigen_residual as angular_residual, AngularState};
use crate::coherent::{
    coherent_closed, coherent_coefficients, coherent_series, expectation_k0, exponential_unitarity,
    quadratic_form, similarity_transform_check, CoherentParam, PhysicalCoherent,
};
use crate::error::{Error, Result};
use crate::model::{
    bargmann_index, casimir_value, coherent_energy, energy, ModelParams, QuantumNumbers,
};
use crate::radial::{
    dilate, fd_energies, physical_gram, radial_rule, sturmian_gram, GridSpec, RadialGrid,
    RadialState, Sturmian,
};
use crate::specfun::{jacobi, laguerre, log_gamma, Domain, QuadratureRule};
use crate::su11::{
    check_algebra, check_tilting, eigen_residual, generator_form_residual,
    tilted_hamiltonian_residual, SchrodingerOps, Sign, TiltingOps,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Angular,
    Coherent,
    Radial,
    Specfun,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Algebra,
        Suite::Angular,
        Suite::Coherent,
        Suite::Radial,
        Suite::Specfun,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Angular => "angular",
            Suite::Coherent => "coherent",
            Suite::Radial => "radial",
            Suite::Specfun => "specfun",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| crate::error::domain(format!("unknown suite '{s}'")))
    }
}

/// Tolerance table. Defaults are the documented acceptance thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub laguerre_series: f64,
    pub jacobi_symmetry: f64,
    pub laguerre_orthogonality: f64,
    pub log_gamma: f64,
    pub quadrature: f64,
    pub angular_orthonormality: f64,
    pub angular_reflection: f64,
    pub angular_eigen: f64,
    pub spectrum: f64,
    pub physical_gram: f64,
    pub sturmian_gram: f64,
    pub scaling: f64,
    pub commutator_exact: f64,
    pub matrix_identity: f64,
    pub grid_eigen: f64,
    pub grid_identity: f64,
    pub tilting_exact: f64,
    pub series_closed: f64,
    pub coefficient_norm: f64,
    pub expectation: f64,
    pub unitarity: f64,
    pub energy_consistency: f64,
    pub physical_norm: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            laguerre_series: 1e-9,
            jacobi_symmetry: 1e-11,
            laguerre_orthogonality: 1e-8,
            log_gamma: 1e-12,
            quadrature: 1e-12,
            angular_orthonormality: 1e-8,
            angular_reflection: 1e-12,
            angular_eigen: 1e-6,
            spectrum: 1e-4,
            physical_gram: 1e-7,
            sturmian_gram: 1e-8,
            scaling: 1e-8,
            commutator_exact: 0.0,
            matrix_identity: 1e-12,
            grid_eigen: 1e-6,
            grid_identity: 1e-5,
            tilting_exact: 1e-8,
            series_closed: 1e-9,
            coefficient_norm: 1e-12,
            expectation: 1e-10,
            unitarity: 1e-8,
            energy_consistency: 1e-12,
            physical_norm: 1e-8,
        }
    }
}

impl Tolerances {
    /// Every tolerance multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut t = *self;
        for v in t.fields_mut() {
            *v *= factor;
        }
        t
    }

    fn fields_mut(&mut self) -> [&mut f64; 23] {
        [
            &mut self.laguerre_series,
            &mut self.jacobi_symmetry,
            &mut self.laguerre_orthogonality,
            &mut self.log_gamma,
            &mut self.quadrature,
            &mut self.angular_orthonormality,
            &mut self.angular_reflection,
            &mut self.angular_eigen,
            &mut self.spectrum,
            &mut self.physical_gram,
            &mut self.sturmian_gram,
            &mut self.scaling,
            &mut self.commutator_exact,
            &mut self.matrix_identity,
            &mut self.grid_eigen,
            &mut self.grid_identity,
            &mut self.tilting_exact,
            &mut self.series_closed,
            &mut self.coefficient_norm,
            &mut self.expectation,
            &mut self.unitarity,
            &mut self.energy_consistency,
            &mut self.physical_norm,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub id: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(suite: Suite, id: impl Into<String>, residual: Result<f64>, tolerance: f64) -> Self {
        // a failed computation is reported as an infinite residual
        let residual = residual.unwrap_or(f64::INFINITY);
        Self {
            suite,
            id: id.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{:.16e},{:.16e},{}",
            self.suite,
            self.id,
            self.residual,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

type Job = (Suite, String, fn(&Tolerances) -> (Result<f64>, f64));

macro_rules! job {
    ($suite:expr, $id:expr, |$t:ident| $tol:expr, $body:expr) => {
        ($suite, String::from($id), |$t: &Tolerances| ($body, $tol))
    };
}

fn params(mu1: f64, mu2: f64, alpha: f64) -> Result<ModelParams> {
    ModelParams::new(mu1, mu2, alpha)
}

fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax()
}

// ---------------------------------------------------------------- specfun

/// Unevaluated sum hi + lo carrying about 32 significant digits.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Self {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        Self::renorm(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let r = self
            .add(Self::new(-q1 * d))
            .add(Self::new(-q1.mul_add(d, -q1 * d)));
        let q2 = r.hi / d;
        Self::renorm(q1, q2)
    }

    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// Σ_j (-1)^j C(n+α, n-j) x^j / j! in double-double arithmetic; the terms
/// reach ~1e15 at x = 40, n = 30, so plain f64 summation cancels badly.
fn laguerre_series(n: usize, alpha: f64, x: f64) -> f64 {
    let xd = DoubleDouble::new(x);
    let mut sum = DoubleDouble::new(0.0);
    for j in 0..=n {
        let mut binom = DoubleDouble::new(1.0);
        for i in 1..=n - j {
            binom = binom
                .mul(DoubleDouble::two_sum(alpha, (j + i) as f64))
                .div_f64(i as f64);
        }
        let mut power = DoubleDouble::new(1.0);
        for i in 1..=j {
            power = power.mul(xd).div_f64(i as f64);
        }
        let term = binom.mul(power);
        sum = sum.add(if j % 2 == 0 { term } else { term.neg() });
    }
    sum.hi + sum.lo
}

fn laguerre_series_check() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in [0.1, 0.7, 2.4] {
        for n in 0..=30 {
            for i in 0..100 {
                let x = 40.0 * i as f64 / 99.0;
                let v = laguerre(n, alpha, x)?;
                worst = worst.max((v - laguerre_series(n, alpha, x)).abs() / v.abs().max(1.0));
            }
        }
    }
    Ok(worst)
}

fn jacobi_symmetry_check() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (a, b) in [(0.3, 1.7), (-0.4, 0.9), (2.5, 0.0)] {
        for n in 0..=20 {
            for i in 0..41 {
                let x = -1.0 + i as f64 / 20.0;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = jacobi(n, a, b, -x)?;
                let rhs = sign * jacobi(n, b, a, x)?;
                worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
        }
    }
    Ok(worst)
}

fn laguerre_orthogonality_check() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for alpha in [0.1, 0.7, 2.4] {
        let rule = radial_rule(1.0, alpha + 16.0)?;
        let norm = |n: usize| -> Result<f64> {
            Ok((log_gamma(n as f64 + alpha + 1.0)? - log_gamma(n as f64 + 1.0)?).exp())
        };
        for n in 0..=8 {
            for m in n..=8 {
                let v = rule.integrate(|x| {
                    (-x).exp()
                        * x.powf(alpha)
                        * laguerre(n, alpha, x).unwrap_or(f64::NAN)
                        * laguerre(m, alpha, x).unwrap_or(f64::NAN)
                });
                let scale = (norm(n)? * norm(m)?).sqrt();
                let expected = if n == m { scale } else { 0.0 };
                worst = worst.max((v - expected).abs() / scale);
            }
        }
    }
    Ok(worst)
}

fn log_gamma_check() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..=495 {
        let x = 0.5 + 0.1 * i as f64;
        worst = worst.max((log_gamma(x + 1.0)? - log_gamma(x)? - x.ln()).abs());
    }
    Ok(worst)
}

fn quadrature_check() -> Result<f64> {
    let rule = QuadratureRule::composite(Domain::Finite { lo: 0.0, hi: 60.0 }, 64, 20)?;
    Ok((rule.integrate(|x| (-x).exp()) - (1.0 - (-60.0f64).exp())).abs())
}

// ---------------------------------------------------------------- angular

const ANGULAR_PARAMS: [(f64, f64); 2] = [(0.3, 0.7), (1.1, 0.4)];

fn angular_states() -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    for (e1, e2) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        for two_m in 0..=6 {
            if let Ok(q) = QuantumNumbers::new(e1, e2, two_m, 0) {
                out.push(q);
            }
        }
    }
    out
}

fn angular_orthonormality(set: usize) -> Result<f64> {
    let (mu1, mu2) = ANGULAR_PARAMS[set];
    let p = params(mu1, mu2, -1.0)?;
    let states = angular_states();
    let g = angular_gram(&states, &p);
    Ok(max_abs_diff(
        &g,
        &DMatrix::identity(states.len(), states.len()),
    ))
}

fn angular_reflection() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (mu1, mu2) in ANGULAR_PARAMS {
        let p = params(mu1, mu2, -1.0)?;
        for q in angular_states() {
            let grid = AngularState::new(q, p).sample(512)?;
            let scale = grid.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let s1 = 1.0 - 2.0 * f64::from(q.e1());
            let s2 = 1.0 - 2.0 * f64::from(q.e2());
            for (r, v) in grid.reflect_r1().values().iter().zip(grid.values()) {
                worst = worst.max((r - s1 * v).abs() / scale);
            }
            for (r, v) in grid.reflect_r2().values().iter().zip(grid.values()) {
                worst = worst.max((r - s2 * v).abs() / scale);
            }
        }
    }
    Ok(worst)
}

const ANGULAR_CASES: [(u32, u8, u8); 6] = [
    (0, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (2, 1, 1),
    (3, 1, 0),
    (4, 0, 0),
];

fn angular_eigen(case: usize) -> Result<f64> {
    let (two_m, e1, e2) = ANGULAR_CASES[case];
    let mut worst: f64 = 0.0;
    for (mu1, mu2) in ANGULAR_PARAMS {
        let q = QuantumNumbers::new(e1, e2, two_m, 0)?;
        worst = worst.max(angular_residual(&q, &params(mu1, mu2, -1.0)?, 512)?);
    }
    Ok(worst)
}

// ---------------------------------------------------------------- radial

const RADIAL_PARAMS: [(f64, f64); 2] = [(0.3, 0.2), (0.7, 1.1)];

/// Three lowest finite-difference levels against the closed-form spectrum on
/// a grid sized for the slowest-decaying of the three states.
fn spectrum_check(set: usize, two_m: u32) -> Result<f64> {
    let (mu1, mu2) = RADIAL_PARAMS[set];
    let p = params(mu1, mu2, -1.0)?;
    let grid = GridSpec::for_states(3, two_m, &p)?;
    let fd = fd_energies(two_m, &p, 3, &grid)?;
    let mut worst: f64 = 0.0;
    for (nr, e) in fd.iter().enumerate() {
        let exact = energy(nr as u32, two_m, &p)?;
        worst = worst.max((e / exact - 1.0).abs());
    }
    Ok(worst)
}

fn hydrogen_check() -> Result<f64> {
    let p = params(0.0, 0.0, -1.0)?;
    let fd = fd_energies(0, &p, 1, &GridSpec::new(4000, 40.0)?)?;
    Ok((fd[0] / -2.0 - 1.0).abs())
}

fn physical_gram_check(set: usize) -> Result<f64> {
    let (mu1, mu2) = RADIAL_PARAMS[set];
    let p = params(mu1, mu2, -1.0)?;
    let mut worst: f64 = 0.0;
    for two_m in 0..=2 {
        let g = physical_gram(two_m, &p, 4)?;
        worst = worst.max(max_abs_diff(&g, &DMatrix::identity(5, 5)));
    }
    Ok(worst)
}

/// Sturmian Gram under r^{2μ} dr equals 2^{1-2μ} I.
fn sturmian_gram_check(set: usize) -> Result<f64> {
    let (mu1, mu2) = RADIAL_PARAMS[set];
    let p = params(mu1, mu2, -1.0)?;
    let c = 2f64.powf(1.0 - 2.0 * p.mu_sum());
    let mut worst: f64 = 0.0;
    for two_m in 0..=2 {
        let g = sturmian_gram(two_m, &p, 4)?;
        worst = worst.max(max_abs_diff(&g, &(DMatrix::identity(5, 5) * c)) / c);
    }
    Ok(worst)
}

/// a·S_n(a r) is proportional to R_n(r); residual of the best proportional fit.
fn scaling_check() -> Result<f64> {
    let p = params(0.3, 0.2, -1.0)?;
    let mut worst: f64 = 0.0;
    for nr in 0..=3 {
        let qn = QuantumNumbers::new(1, 0, 1, nr)?;
        let state = RadialState::new(&qn, &p)?;
        let st = Sturmian::new(nr, 1, &p);
        let dilated = dilate(|r| st.eval(r), state.a().ln());
        let rs: Vec<f64> = (1..=400).map(|i| 0.05 * i as f64).collect();
        let f: Vec<f64> = rs.iter().map(|&r| dilated(r)).collect();
        let g: Vec<f64> = rs.iter().map(|&r| state.eval(r)).collect();
        let c = g.iter().zip(&f).map(|(a, b)| a * b).sum::<f64>()
            / f.iter().map(|b| b * b).sum::<f64>();
        let scale = g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let res = g
            .iter()
            .zip(&f)
            .fold(0.0f64, |a, (x, y)| a.max((x - c * y).abs()));
        worst = worst.max(res / scale);
    }
    Ok(worst)
}

// ---------------------------------------------------------------- algebra

const ALGEBRA_INDICES: [f64; 3] = [0.5, 1.5, 3.7];
const ALGEBRA_DIM: usize = 32;

fn commutator_exact(i: usize) -> Result<f64> {
    let r = check_algebra(ALGEBRA_INDICES[i], ALGEBRA_DIM)?;
    Ok(r.k0_kplus.max(r.k0_kminus))
}

fn ladder_commutator(i: usize) -> Result<f64> {
    Ok(check_algebra(ALGEBRA_INDICES[i], ALGEBRA_DIM)?.ladder)
}

fn matrix_casimir(i: usize) -> Result<f64> {
    Ok(check_algebra(ALGEBRA_INDICES[i], ALGEBRA_DIM)?.casimir)
}

fn operator_params() -> Result<ModelParams> {
    params(0.3, 0.2, -1.0)
}

const OPERATOR_TWO_M: u32 = 1;

fn operator_grid<F: Fn(f64) -> f64>(f: F) -> Result<RadialGrid> {
    RadialGrid::uniform(0.02, 0.02, 2000, 0.0, f)
}

fn a0_sturmian() -> Result<f64> {
    let p = operator_params()?;
    let k = bargmann_index(OPERATOR_TWO_M, &p);
    let ops = TiltingOps::new(OPERATOR_TWO_M, &p);
    let mut worst: f64 = 0.0;
    for nr in 0..=3 {
        let st = Sturmian::new(nr, OPERATOR_TWO_M, &p);
        let f = operator_grid(|r| st.eval(r))?;
        worst = worst.max(eigen_residual(&ops.a0(&f)?, &f, f64::from(nr) + k));
    }
    Ok(worst)
}

fn grid_casimir() -> Result<f64> {
    let p = operator_params()?;
    let st = Sturmian::new(1, OPERATOR_TWO_M, &p);
    let f = operator_grid(|r| st.eval(r))?;
    let c = TiltingOps::new(OPERATOR_TWO_M, &p).casimir(&f)?;
    Ok(eigen_residual(&c, &f, casimir_value(OPERATOR_TWO_M, &p)))
}

fn physical_grid(nr: u32) -> Result<(RadialGrid, RadialState)> {
    let p = operator_params()?;
    let qn = QuantumNumbers::new(1, 0, OPERATOR_TWO_M, nr)?;
    let state = RadialState::new(&qn, &p)?;
    Ok((operator_grid(|r| state.eval(r))?, state))
}

fn factorization() -> Result<f64> {
    let p = operator_params()?;
    let mut worst: f64 = 0.0;
    for nr in 0..=2 {
        let (f, state) = physical_grid(nr)?;
        let ops = SchrodingerOps::new(OPERATOR_TWO_M, &p, state.energy())?;
        for sign in [Sign::Plus, Sign::Minus] {
            worst = worst.max(eigen_residual(
                &ops.factorization_defect(&f, sign)?,
                &f,
                0.0,
            ));
        }
    }
    Ok(worst)
}

fn l0_ground() -> Result<f64> {
    let p = operator_params()?;
    let (f, state) = physical_grid(0)?;
    let ops = SchrodingerOps::new(OPERATOR_TWO_M, &p, state.energy())?;
    Ok(eigen_residual(
        &ops.l0(&f)?,
        &f,
        bargmann_index(OPERATOR_TWO_M, &p),
    ))
}

fn lowering_ground() -> Result<f64> {
    let p = operator_params()?;
    let (f, state) = physical_grid(0)?;
    let ops = SchrodingerOps::new(OPERATOR_TWO_M, &p, state.energy())?;
    Ok(eigen_residual(&ops.ladder(&f, Sign::Minus)?, &f, 0.0))
}

fn tilting(theta_kind: usize, plus: bool) -> Result<f64> {
    let p = operator_params()?;
    let theta = if theta_kind == 0 {
        2f64.ln()
    } else {
        (-2.0 * energy(1, OPERATOR_TWO_M, &p)?).sqrt().ln()
    };
    let st = Sturmian::new(1, OPERATOR_TWO_M, &p);
    let f = operator_grid(|r| st.eval(r))?;
    let rep = check_tilting(&f, theta, OPERATOR_TWO_M, &p)?;
    Ok(if plus { rep.plus } else { rep.minus })
}

fn tilted_hamiltonian() -> Result<f64> {
    let p = operator_params()?;
    let mut worst: f64 = 0.0;
    for nr in 0..=3 {
        let st = Sturmian::new(nr, OPERATOR_TWO_M, &p);
        let f = operator_grid(|r| st.eval(r))?;
        worst = worst.max(tilted_hamiltonian_residual(&f, nr, OPERATOR_TWO_M, &p)?);
    }
    Ok(worst)
}

fn generator_form() -> Result<f64> {
    let p = operator_params()?;
    let mut worst: f64 = 0.0;
    for nr in 0..=2 {
        let (f, state) = physical_grid(nr)?;
        worst = worst.max(generator_form_residual(
            &f,
            state.energy(),
            OPERATOR_TWO_M,
            &p,
        )?);
    }
    Ok(worst)
}

// ---------------------------------------------------------------- coherent

const COHERENT_TRIPLES: [(u32, f64, f64); 3] = [(0, 0.3, 0.2), (1, 0.0, 0.0), (2, 0.7, 1.1)];

fn series_closed() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (two_m, mu1, mu2) in COHERENT_TRIPLES {
        let p = params(mu1, mu2, -1.0)?;
        for (modulus, arg) in [(0.1, 0.0), (0.3, 0.7), (0.5, -2.0)] {
            let z = CoherentParam::from_polar_disc(modulus, arg)?;
            for i in 1..=100 {
                let r = 0.1 * i as f64;
                let c = coherent_closed(r, &z, two_m, &p);
                let s = coherent_series(r, &z, two_m, &p, 300)?;
                worst = worst.max((s - c).norm() / c.norm().max(1.0));
            }
        }
    }
    Ok(worst)
}

fn coefficient_norm() -> Result<f64> {
    let z = CoherentParam::from_polar_disc(0.3, 0.4)?;
    let c = coherent_coefficients(&z, 1.5, 60)?;
    Ok((c.iter().map(|v| v.norm_sqr()).sum::<f64>() - 1.0).abs())
}

fn k0_expectation() -> Result<f64> {
    let k = 1.5;
    let z = CoherentParam::from_displacement(Complex64::from_polar(0.4, 0.9))?;
    let rep = crate::su11::RepMatrices::new(k, 81)?;
    let c = coherent_coefficients(&z, k, 80)?;
    Ok((quadratic_form(&c, rep.kzero()).re - expectation_k0(&z, k)).abs())
}

/// Normal-form D on the leading dim/2 block. Column j of D spreads over
/// n ≲ (k + j)(cosh 2|ξ| + 2 sinh 2|ξ|), which stays inside the truncation for
/// j < dim/2 only while |ξ| ≲ 0.2.
fn unitarity() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for modulus in [0.1, 0.2] {
        let z = CoherentParam::from_displacement(Complex64::from_polar(modulus, 0.4))?;
        worst = worst.max(similarity_transform_check(&z, 1.0, 48)?.unitarity);
    }
    Ok(worst)
}

fn unitarity_exponential() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for modulus in [0.1, 0.2, 0.3] {
        let z = CoherentParam::from_displacement(Complex64::from_polar(modulus, 0.4))?;
        worst = worst.max(exponential_unitarity(&z, 1.0, 48)?);
    }
    Ok(worst)
}

fn energy_consistency() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (two_m, mu1, mu2) in COHERENT_TRIPLES {
        let p = params(mu1, mu2, -1.0)?;
        let k = bargmann_index(two_m, &p);
        for modulus in [0.0, 0.2, 0.5, 0.9] {
            let z = CoherentParam::from_displacement(Complex64::new(modulus, 0.0))?;
            let e = coherent_energy(z.displacement_modulus(), two_m, &p)?;
            worst = worst.max(((-2.0 * e).sqrt() * expectation_k0(&z, k) + p.alpha()).abs());
        }
    }
    Ok(worst)
}

fn physical_norm() -> Result<f64> {
    let p = params(0.3, 0.2, -1.0)?;
    let mut worst: f64 = 0.0;
    for arg in [0.0, 0.5] {
        let state = PhysicalCoherent::new(&CoherentParam::from_polar_disc(0.3, arg)?, 0, &p)?;
        worst = worst
            .max((state.physical_norm()? - 1.0).abs())
            .max((state.c() - state.analytic_c()).abs() / state.c());
    }
    Ok(worst)
}

fn registry() -> Vec<Job> {
    use Suite::*;
    vec![
        job!(
            Specfun,
            "laguerre_series_oracle",
            |t| t.laguerre_series,
            laguerre_series_check()
        ),
        job!(
            Specfun,
            "jacobi_reflection_symmetry",
            |t| t.jacobi_symmetry,
            jacobi_symmetry_check()
        ),
        job!(
            Specfun,
            "laguerre_orthogonality",
            |t| t.laguerre_orthogonality,
            laguerre_orthogonality_check()
        ),
        job!(
            Specfun,
            "log_gamma_recurrence",
            |t| t.log_gamma,
            log_gamma_check()
        ),
        job!(
            Specfun,
            "quadrature_exponential",
            |t| t.quadrature,
            quadrature_check()
        ),
        job!(
            Angular,
            "orthonormality_mu_0.3_0.7",
            |t| t.angular_orthonormality,
            angular_orthonormality(0)
        ),
        job!(
            Angular,
            "orthonormality_mu_1.1_0.4",
            |t| t.angular_orthonormality,
            angular_orthonormality(1)
        ),
        job!(
            Angular,
            "reflection_parities",
            |t| t.angular_reflection,
            angular_reflection()
        ),
        job!(
            Angular,
            "eigen_m0_e00",
            |t| t.angular_eigen,
            angular_eigen(0)
        ),
        job!(
            Angular,
            "eigen_m0.5_e10",
            |t| t.angular_eigen,
            angular_eigen(1)
        ),
        job!(
            Angular,
            "eigen_m0.5_e01",
            |t| t.angular_eigen,
            angular_eigen(2)
        ),
        job!(
            Angular,
            "eigen_m1_e11",
            |t| t.angular_eigen,
            angular_eigen(3)
        ),
        job!(
            Angular,
            "eigen_m1.5_e10",
            |t| t.angular_eigen,
            angular_eigen(4)
        ),
        job!(
            Angular,
            "eigen_m2_e00",
            |t| t.angular_eigen,
            angular_eigen(5)
        ),
        job!(
            Radial,
            "spectrum_mu_0.3_0.2_m0",
            |t| t.spectrum,
            spectrum_check(0, 0)
        ),
        job!(
            Radial,
            "spectrum_mu_0.3_0.2_m0.5",
            |t| t.spectrum,
            spectrum_check(0, 1)
        ),
        job!(
            Radial,
            "spectrum_mu_0.3_0.2_m1",
            |t| t.spectrum,
            spectrum_check(0, 2)
        ),
        job!(
            Radial,
            "spectrum_mu_0.7_1.1_m0",
            |t| t.spectrum,
            spectrum_check(1, 0)
        ),
        job!(
            Radial,
            "spectrum_mu_0.7_1.1_m0.5",
            |t| t.spectrum,
            spectrum_check(1, 1)
        ),
        job!(
            Radial,
            "spectrum_mu_0.7_1.1_m1",
            |t| t.spectrum,
            spectrum_check(1, 2)
        ),
        job!(
            Radial,
            "hydrogen_ground_fd",
            |t| t.spectrum,
            hydrogen_check()
        ),
        job!(
            Radial,
            "physical_gram_mu_0.3_0.2",
            |t| t.physical_gram,
            physical_gram_check(0)
        ),
        job!(
            Radial,
            "physical_gram_mu_0.7_1.1",
            |t| t.physical_gram,
            physical_gram_check(1)
        ),
        job!(
            Radial,
            "sturmian_gram_mu_0.3_0.2",
            |t| t.sturmian_gram,
            sturmian_gram_check(0)
        ),
        job!(
            Radial,
            "sturmian_gram_mu_0.7_1.1",
            |t| t.sturmian_gram,
            sturmian_gram_check(1)
        ),
        job!(Radial, "dilation_scaling", |t| t.scaling, scaling_check()),
        job!(
            Algebra,
            "k0_commutators_k0.5",
            |t| t.commutator_exact,
            commutator_exact(0)
        ),
        job!(
            Algebra,
            "k0_commutators_k1.5",
            |t| t.commutator_exact,
            commutator_exact(1)
        ),
        job!(
            Algebra,
            "k0_commutators_k3.7",
            |t| t.commutator_exact,
            commutator_exact(2)
        ),
        job!(
            Algebra,
            "ladder_commutator_k0.5",
            |t| t.matrix_identity,
            ladder_commutator(0)
        ),
        job!(
            Algebra,
            "ladder_commutator_k1.5",
            |t| t.matrix_identity,
            ladder_commutator(1)
        ),
        job!(
            Algebra,
            "ladder_commutator_k3.7",
            |t| t.matrix_identity,
            ladder_commutator(2)
        ),
        job!(
            Algebra,
            "casimir_matrix_k0.5",
            |t| t.matrix_identity,
            matrix_casimir(0)
        ),
        job!(
            Algebra,
            "casimir_matrix_k1.5",
            |t| t.matrix_identity,
            matrix_casimir(1)
        ),
        job!(
            Algebra,
            "casimir_matrix_k3.7",
            |t| t.matrix_identity,
            matrix_casimir(2)
        ),
        job!(
            Algebra,
            "a0_sturmian_eigen",
            |t| t.grid_eigen,
            a0_sturmian()
        ),
        job!(Algebra, "casimir_grid", |t| t.grid_identity, grid_casimir()),
        job!(
            Algebra,
            "factorization",
            |t| t.grid_identity,
            factorization()
        ),
        job!(Algebra, "l0_ground_eigen", |t| t.grid_eigen, l0_ground()),
        job!(
            Algebra,
            "lowering_annihilates_ground",
            |t| t.grid_identity,
            lowering_ground()
        ),
        job!(
            Algebra,
            "tilting_plus_ln2",
            |t| t.grid_identity,
            tilting(0, true)
        ),
        job!(
            Algebra,
            "tilting_minus_ln2",
            |t| t.tilting_exact,
            tilting(0, false)
        ),
        job!(
            Algebra,
            "tilting_plus_ln_a",
            |t| t.grid_identity,
            tilting(1, true)
        ),
        job!(
            Algebra,
            "tilting_minus_ln_a",
            |t| t.tilting_exact,
            tilting(1, false)
        ),
        job!(
            Algebra,
            "tilted_hamiltonian",
            |t| t.grid_identity,
            tilted_hamiltonian()
        ),
        job!(
            Algebra,
            "generator_form",
            |t| t.grid_identity,
            generator_form()
        ),
        job!(
            Coherent,
            "series_vs_closed",
            |t| t.series_closed,
            series_closed()
        ),
        job!(
            Coherent,
            "coefficient_norm",
            |t| t.coefficient_norm,
            coefficient_norm()
        ),
        job!(
            Coherent,
            "k0_expectation",
            |t| t.expectation,
            k0_expectation()
        ),
        job!(
            Coherent,
            "displacement_unitarity_normal_form",
            |t| t.unitarity,
            unitarity()
        ),
        job!(
            Coherent,
            "displacement_unitarity_exponential",
            |t| t.unitarity,
            unitarity_exponential()
        ),
        job!(
            Coherent,
            "energy_consistency",
            |t| t.energy_consistency,
            energy_consistency()
        ),
        job!(
            Coherent,
            "physical_normalization",
            |t| t.physical_norm,
            physical_norm()
        ),
    ]
}

/// Runs the selected suites (all when `suites` is empty) concurrently and
/// returns the checks sorted by suite and id.
pub fn run(suites: &[Suite], tolerances: &Tolerances) -> Vec<Check> {
    let mut checks: Vec<Check> = registry()
        .into_par_iter()
        .filter(|(suite, _, _)| suites.is_empty() || suites.contains(suite))
        .map(|(suite, id, job)| {
            let (residual, tol) = job(tolerances);
            Check::new(suite, id, residual, tol)
        })
        .collect();
    checks.sort_by(|a, b| (a.suite, &a.id).cmp(&(b.suite, &b.id)));
    checks
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn scaled_tolerances() {
        let t = Tolerances::default().scaled(0.0);
        assert_eq!(t.spectrum, 0.0);
        assert_eq!(Tolerances::default().scaled(2.0).spectrum, 2e-4);
    }

    #[test]
    fn double_double_keeps_low_bits() {
        let a = DoubleDouble::new(1.0).add(DoubleDouble::new(1e-20));
        assert_eq!(a.lo, 1e-20);
        let third = DoubleDouble::new(1.0).div_f64(3.0);
        let back = third
            .mul(DoubleDouble::new(3.0))
            .add(DoubleDouble::new(-1.0));
        assert!((back.hi + back.lo).abs() < 1e-31);
    }

    #[test]
    fn series_oracle_low_orders() {
        assert!((laguerre_series(2, 0.5, 1.3) - laguerre(2, 0.5, 1.3).unwrap()).abs() < 1e-14);
        assert_eq!(laguerre_series(0, 3.0, 7.0), 1.0);
    }

    #[test]
    fn specfun_suite_passes() {
        let checks = run(&[Suite::Specfun], &Tolerances::default());
        assert_eq!(checks.len(), 5);
        for c in &checks {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn failed_computation_is_reported() {
        let c = Check::new(Suite::Radial, "x", Err(Error::Grid("bad".into())), 1.0);
        assert!(!c.pass);
        assert!(c.residual.is_infinite());
    }

    #[test]
    fn report_line_format() {
        let c = Check::new(Suite::Algebra, "demo", Ok(0.5), 1.0);
        assert_eq!(
            c.to_string(),
            "algebra,demo,5.0000000000000000e-1,1.0000000000000000e0,PASS"
        );
    }
}
