//! Radial functions: the Sturmian basis, the physical bound states, radial
//! quadrature under the measures r^{2μ} dr and r^{1+2μ} dr (μ = μ₁ + μ₂), and
//! a finite-difference radial Hamiltonian used as an independent spectrum
//! oracle.

use nalgebra::DMatrix;

use crate::eigen::{SymmetricMatrix, Tridiagonal};
use crate::error::{Error, Result};
use crate::model::{bargmann_index, energy, separation_constant, ModelParams, QuantumNumbers};
use crate::specfun::gamma::log_gamma_positive;
use crate::specfun::poly::laguerre_unchecked;
use crate::specfun::{graded_breakpoints, Domain, QuadratureRule};

/// Radial measure r^p dr.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// p = 2μ₁ + 2μ₂, under which the Sturmian functions are orthogonal.
    Sturmian,
    /// p = 1 + 2μ₁ + 2μ₂, under which the radial Hamiltonian is symmetric.
    Physical,
}

impl Measure {
    pub fn exponent(&self, params: &ModelParams) -> f64 {
        match self {
            Measure::Sturmian => 2.0 * params.mu_sum(),
            Measure::Physical => 1.0 + 2.0 * params.mu_sum(),
        }
    }
}

/// Real samples of a radial function on strictly increasing positive abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    rs: Vec<f64>,
    values: Vec<f64>,
    weight_exponent: f64,
}

impl RadialGrid {
    pub fn new(rs: Vec<f64>, values: Vec<f64>, weight_exponent: f64) -> Result<Self> {
        if rs.len() != values.len() {
            return Err(Error::Grid(format!(
                "{} abscissae but {} values",
                rs.len(),
                values.len()
            )));
        }
        if rs.first().is_some_and(|&r| !(r > 0.0)) || rs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Grid(
                "radial abscissae must be positive and increasing".into(),
            ));
        }
        Ok(Self {
            rs,
            values,
            weight_exponent,
        })
    }

    pub fn sample<F: Fn(f64) -> f64>(rs: &[f64], weight_exponent: f64, f: F) -> Result<Self> {
        Self::new(
            rs.to_vec(),
            rs.iter().map(|&r| f(r)).collect(),
            weight_exponent,
        )
    }

    /// `n` points r_i = r0 + i h.
    pub fn uniform<F: Fn(f64) -> f64>(
        r0: f64,
        h: f64,
        n: usize,
        weight_exponent: f64,
        f: F,
    ) -> Result<Self> {
        let rs: Vec<f64> = (0..n).map(|i| r0 + h * i as f64).collect();
        Self::sample(&rs, weight_exponent, f)
    }

    pub fn rs(&self) -> &[f64] {
        &self.rs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weight_exponent(&self) -> f64 {
        self.weight_exponent
    }

    pub fn len(&self) -> usize {
        self.rs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rs.is_empty()
    }

    /// Same abscissae, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), self.rs.len());
        Self {
            rs: self.rs.clone(),
            values,
            weight_exponent: self.weight_exponent,
        }
    }

    /// Spacing if the abscissae are uniform to within 1e-9 relative.
    pub fn uniform_spacing(&self) -> Option<f64> {
        if self.rs.len() < 2 {
            return None;
        }
        let n = self.rs.len();
        let h = (self.rs[n - 1] - self.rs[0]) / (n - 1) as f64;
        let uniform = self
            .rs
            .iter()
            .enumerate()
            .all(|(i, r)| (r - (self.rs[0] + h * i as f64)).abs() <= 1e-9 * self.rs[n - 1]);
        uniform.then_some(h)
    }
}

fn laguerre_order(two_m: u32, params: &ModelParams) -> f64 {
    2.0 * f64::from(two_m) + 2.0 * params.mu_sum()
}

/// Sturmian basis function
/// R̃(r) = 2 [n_r! / Γ(n_r + 4m + 2μ + 1)]^{1/2} (2r)^{2m} e^{-r} L_{n_r}^{4m+2μ}(2r).
#[derive(Debug, Clone, Copy)]
pub struct Sturmian {
    nr: u32,
    two_m: u32,
    order: f64,
    norm: f64,
}

impl Sturmian {
    pub fn new(nr: u32, two_m: u32, params: &ModelParams) -> Self {
        let order = laguerre_order(two_m, params);
        let n = f64::from(nr);
        let norm =
            2.0 * (0.5 * (log_gamma_positive(n + 1.0) - log_gamma_positive(n + order + 1.0))).exp();
        Self {
            nr,
            two_m,
            order,
            norm,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        let x = 2.0 * r;
        self.norm
            * x.powi(self.two_m as i32)
            * (-r).exp()
            * laguerre_unchecked(self.nr as usize, self.order, x)
    }
}

pub fn sturmian(r: f64, qn: &QuantumNumbers, params: &ModelParams) -> f64 {
    Sturmian::new(qn.nr(), qn.two_m(), params).eval(r)
}

/// Physical bound state
/// R(r) = N e^{-ar} (2ar)^{2m} L_{n_r}^{4m+2μ}(2ar), a = √(-2E),
/// unit-normalized under r^{1+2μ} dr.
#[derive(Debug, Clone, Copy)]
pub struct RadialState {
    nr: u32,
    two_m: u32,
    order: f64,
    a: f64,
    norm: f64,
    energy: f64,
}

impl RadialState {
    pub fn new(qn: &QuantumNumbers, params: &ModelParams) -> Result<Self> {
        let e = energy(qn.nr(), qn.two_m(), params)?;
        let a = (-2.0 * e).sqrt();
        let order = laguerre_order(qn.two_m(), params);
        let n = f64::from(qn.nr());
        let mu = params.mu_sum();
        let log_norm2 = (2.0 * mu + 2.0) * (2.0 * a).ln() + log_gamma_positive(n + 1.0)
            - log_gamma_positive(n + order + 1.0)
            - (2.0 * n + order + 1.0).ln();
        Ok(Self {
            nr: qn.nr(),
            two_m: qn.two_m(),
            order,
            a,
            norm: (0.5 * log_norm2).exp(),
            energy: e,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn eval(&self, r: f64) -> f64 {
        let x = 2.0 * self.a * r;
        self.norm
            * (-self.a * r).exp()
            * x.powi(self.two_m as i32)
            * laguerre_unchecked(self.nr as usize, self.order, x)
    }
}

pub fn radial_eigenfunction(r: f64, qn: &QuantumNumbers, params: &ModelParams) -> Result<f64> {
    Ok(RadialState::new(qn, params)?.eval(r))
}

/// Radius x beyond which ∫_x^∞ t^p e^{-t} dt / Γ(p+1) is below 1e-16.
fn gamma_tail_cutoff(p: f64) -> f64 {
    let lg = log_gamma_positive(p + 1.0);
    let mut x = (p + 1.0).max(1.0);
    while p * x.ln() - x - lg + (x / (x - p).max(1.0)).ln() > -37.0 {
        x += 0.5;
    }
    x
}

/// Quadrature on [0, R_max] for integrands behaving like r^p e^{-c r},
/// graded toward r = 0 for the algebraic factor.
pub fn radial_rule(decay: f64, power: f64) -> Result<QuadratureRule> {
    if !(decay > 0.0) || !(power > -1.0) {
        return Err(crate::error::domain(format!(
            "radial quadrature needs decay > 0 and power > -1, got {decay}, {power}"
        )));
    }
    let r_max = gamma_tail_cutoff(power).max(60.0) / decay;
    let breaks = graded_breakpoints(0.0, r_max, 64, 30, 0.15, true, false);
    QuadratureRule::from_breakpoints(Domain::SemiInfinite { r_max }, &breaks, 20)
}

/// ∫ f g r^p dr by quadrature, for two functions sampled on the rule's nodes.
pub fn radial_overlap(rule: &QuadratureRule, f: &RadialGrid, g: &RadialGrid) -> Result<f64> {
    if f.rs() != rule.nodes() || g.rs() != rule.nodes() {
        return Err(Error::Grid(
            "radial functions are not sampled on the quadrature nodes".into(),
        ));
    }
    if f.weight_exponent() != g.weight_exponent() {
        return Err(Error::Grid(format!(
            "measure mismatch: r^{} vs r^{}",
            f.weight_exponent(),
            g.weight_exponent()
        )));
    }
    let p = f.weight_exponent();
    Ok(rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .zip(f.values().iter().zip(g.values()))
        .map(|((r, w), (a, b))| w * a * b * r.powf(p))
        .sum())
}

/// Uniform cell-centred grid r_i = (i - 1/2) h, i = 1..=n, h = r_max / n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub r_max: f64,
}

impl GridSpec {
    pub const MIN_POINTS: usize = 50;

    pub fn new(n: usize, r_max: f64) -> Result<Self> {
        if n < Self::MIN_POINTS {
            return Err(Error::Grid(format!(
                "need at least {} points, got {n}",
                Self::MIN_POINTS
            )));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::Grid(format!("r_max must be positive, got {r_max}")));
        }
        Ok(Self { n, r_max })
    }

    /// A grid long enough to hold the `count` lowest states of angular number m
    /// with spacing h ≤ 0.005.
    pub fn for_states(count: u32, two_m: u32, params: &ModelParams) -> Result<Self> {
        params.require_bound()?;
        let nk = f64::from(count.saturating_sub(1)) + bargmann_index(two_m, params);
        // length unit of the top state is (n+k)/|α|
        let r_max = (4.0 * nk * nk + 30.0 * nk) / params.alpha().abs();
        let n = (r_max / 0.005).ceil() as usize;
        Self::new(n.max(Self::MIN_POINTS), r_max)
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (1..=self.n).map(|i| (i as f64 - 0.5) * h).collect()
    }
}

/// W^{1/2} H W^{-1/2} for the radial Hamiltonian
/// H = -½ d²/dr² - ((1+2μ)/2r) d/dr + α/r + s²/(2r²), W = r^{1+2μ},
/// discretized in flux form on a cell-centred grid. The flux through r = 0
/// vanishes with the weight; Dirichlet beyond the last cell.
pub fn fd_radial_hamiltonian(
    two_m: u32,
    params: &ModelParams,
    grid: &GridSpec,
) -> Result<Tridiagonal> {
    let e_est = energy(0, two_m, params)?;
    let reach = grid.r_max * (-2.0 * e_est).sqrt();
    if reach < 10.0 {
        return Err(Error::Grid(format!(
            "r_max = {} is too short for the ground state of m = {} (r_max * sqrt(-2E) = {reach:.3} < 10)",
            grid.r_max,
            f64::from(two_m) / 2.0
        )));
    }
    GridSpec::new(grid.n, grid.r_max)?;
    let h = grid.spacing();
    let h2 = h * h;
    let p = Measure::Physical.exponent(params);
    let s2 = separation_constant(two_m, params);
    let alpha = params.alpha();
    let rs = grid.nodes();
    let w: Vec<f64> = rs.iter().map(|r| r.powf(p)).collect();
    // flux weight at r_{i+1/2} = i h, for i = 0..=n
    let flux: Vec<f64> = (0..=grid.n).map(|i| (h * i as f64).powf(p)).collect();
    let diag = (0..grid.n)
        .map(|i| {
            let r = rs[i];
            0.5 * (flux[i] + flux[i + 1]) / (h2 * w[i]) + alpha / r + s2 / (2.0 * r * r)
        })
        .collect();
    let off = (0..grid.n - 1)
        .map(|i| -0.5 * flux[i + 1] / (h2 * (w[i] * w[i + 1]).sqrt()))
        .collect();
    Tridiagonal::new(diag, off)
}

/// The `count` lowest eigenvalues of a symmetric matrix, ascending.
pub fn fd_spectrum(matrix: &SymmetricMatrix, count: usize) -> Result<Vec<f64>> {
    matrix.lowest_eigenvalues(count)
}

/// Lowest `count` eigenvalues of the finite-difference radial Hamiltonian.
pub fn fd_energies(
    two_m: u32,
    params: &ModelParams,
    count: usize,
    grid: &GridSpec,
) -> Result<Vec<f64>> {
    let h = fd_radial_hamiltonian(two_m, params, grid)?;
    fd_spectrum(&h.into(), count)
}

fn gram<F: Fn(u32, f64) -> f64>(
    rule: &QuadratureRule,
    count: u32,
    exponent: f64,
    f: F,
) -> Result<DMatrix<f64>> {
    let samples = (0..count)
        .map(|n| RadialGrid::sample(rule.nodes(), exponent, |r| f(n, r)))
        .collect::<Result<Vec<_>>>()?;
    let n = count as usize;
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = radial_overlap(rule, &samples[i], &samples[j])?;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(g)
}

/// Gram matrix of the Sturmian functions n_r = 0..=nr_max under r^{2μ} dr.
pub fn sturmian_gram(two_m: u32, params: &ModelParams, nr_max: u32) -> Result<DMatrix<f64>> {
    let exponent = Measure::Sturmian.exponent(params);
    let power = f64::from(2 * two_m) + exponent + f64::from(2 * nr_max);
    let rule = radial_rule(2.0, power)?;
    let basis: Vec<Sturmian> = (0..=nr_max)
        .map(|n| Sturmian::new(n, two_m, params))
        .collect();
    gram(&rule, nr_max + 1, exponent, |n, r| {
        basis[n as usize].eval(r)
    })
}

/// Gram matrix of the bound states n_r = 0..=nr_max under r^{1+2μ} dr.
pub fn physical_gram(two_m: u32, params: &ModelParams, nr_max: u32) -> Result<DMatrix<f64>> {
    let exponent = Measure::Physical.exponent(params);
    let states = (0..=nr_max)
        .map(|n| {
            let qn = QuantumNumbers::new(0, (two_m % 2) as u8, two_m, n)?;
            RadialState::new(&qn, params)
        })
        .collect::<Result<Vec<_>>>()?;
    let slowest = states.last().map(|s| s.a()).unwrap_or(1.0);
    let power = f64::from(2 * two_m) + exponent + f64::from(2 * nr_max);
    let rule = radial_rule(2.0 * slowest, power)?;
    gram(&rule, nr_max + 1, exponent, |n, r| {
        states[n as usize].eval(r)
    })
}

/// Dilation D(θ) f(r) = e^θ f(e^θ r) of a closed-form function.
pub fn dilate<F: Fn(f64) -> f64>(f: F, theta: f64) -> impl Fn(f64) -> f64 {
    let s = theta.exp();
    move |r| s * f(s * r)
}

/// Dilation of sampled data onto the same abscissae by local cubic
/// interpolation. Points whose preimage e^θ r leaves the sampled range are NaN.
pub fn dilate_sampled(f: &RadialGrid, theta: f64) -> RadialGrid {
    let s = theta.exp();
    let values = f
        .rs()
        .iter()
        .map(|&r| s * cubic_interp(f.rs(), f.values(), s * r))
        .collect();
    f.with_values(values)
}

fn cubic_interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if n < 4 || x < xs[0] || x > xs[n - 1] {
        return f64::NAN;
    }
    let idx = xs.partition_point(|&v| v <= x).clamp(2, n - 2);
    let start = idx - 2;
    let mut acc = 0.0;
    for i in start..start + 4 {
        let mut l = 1.0;
        for j in start..start + 4 {
            if i != j {
                l *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        acc += l * ys[i];
    }
    acc
}
