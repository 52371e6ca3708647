//! Angular eigenfunctions Φ_m^{(e₁,e₂)}(φ), the angular operator B_φ with
//! its reflection terms, and quadrature inner products under the weight
//! |cos φ|^{2μ₁} |sin φ|^{2μ₂}.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fd::{Stencils, STENCIL};
use crate::model::{separation_constant, ModelParams, QuantumNumbers};
use crate::specfun::log_gamma;
use crate::specfun::{graded_breakpoints, Domain, QuadratureRule};

/// Nodes excluded on each side of a singular angle when measuring residuals.
pub const SINGULAR_WINDOW: usize = 4;

/// Uniform samples φ_j = 2πj/N on [0, 2π) with N divisible by 4, which makes
/// the grid closed under both reflections φ → π - φ and φ → -φ.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    phis: Vec<f64>,
    values: Vec<f64>,
}

impl AngularGrid {
    pub fn sample<F: Fn(f64) -> f64>(n: usize, f: F) -> Result<Self> {
        let phis = uniform_angles(n)?;
        let values = phis.iter().map(|&p| f(p)).collect();
        Ok(Self { phis, values })
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let phis = uniform_angles(values.len())?;
        Ok(Self { phis, values })
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.len() as f64
    }

    /// R₁ f(φ) = f(π - φ), via j → N/2 - j (mod N).
    pub fn reflect_r1(&self) -> Self {
        let n = self.len();
        let values = (0..n).map(|j| self.values[(n + n / 2 - j) % n]).collect();
        Self {
            phis: self.phis.clone(),
            values,
        }
    }

    /// R₂ f(φ) = f(-φ), via j → N - j (mod N).
    pub fn reflect_r2(&self) -> Self {
        let n = self.len();
        let values = (0..n).map(|j| self.values[(n - j) % n]).collect();
        Self {
            phis: self.phis.clone(),
            values,
        }
    }

    /// True for nodes closer than `window` nodes to one of 0, π/2, π, 3π/2.
    pub fn near_singular(&self, window: usize) -> Vec<bool> {
        let n = self.len();
        let quarter = n / 4;
        (0..n)
            .map(|j| {
                let d = j % quarter;
                d.min(quarter - d) < window
            })
            .collect()
    }
}

fn uniform_angles(n: usize) -> Result<Vec<f64>> {
    if n % 4 != 0 || n < 2 * STENCIL {
        return Err(Error::Grid(format!(
            "angular grid size must be a multiple of 4 and at least {}, got {n}",
            2 * STENCIL
        )));
    }
    let h = 2.0 * PI / n as f64;
    Ok((0..n).map(|j| h * j as f64).collect())
}

/// The unnormalized product cos^{e₁}φ sin^{e₂}φ P_d^{(μ₁-1/2+e₁, μ₂-1/2+e₂)}(-cos 2φ).
fn unnormalized(phi: f64, qn: &QuantumNumbers, params: &ModelParams) -> f64 {
    let a = params.mu1() - 0.5 + f64::from(qn.e1());
    let b = params.mu2() - 0.5 + f64::from(qn.e2());
    let x = (-(2.0 * phi).cos()).clamp(-1.0, 1.0);
    let p = crate::specfun::jacobi(qn.jacobi_degree(), a, b, x)
        .expect("Jacobi parameters exceed -1 whenever mu >= 0");
    phi.cos().powi(i32::from(qn.e1())) * phi.sin().powi(i32::from(qn.e2())) * p
}

fn weight(phi: f64, params: &ModelParams) -> f64 {
    phi.cos().abs().powf(2.0 * params.mu1()) * phi.sin().abs().powf(2.0 * params.mu2())
}

/// Quadrature over [0, 2π) graded toward the four singular angles.
pub fn angular_rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut breaks = Vec::new();
        for q in 0..4 {
            let lo = q as f64 * FRAC_PI_2;
            let hi = lo + FRAC_PI_2;
            let mut b = graded_breakpoints(lo, hi, 4, 24, 0.2, true, true);
            if q > 0 {
                b.remove(0);
            }
            breaks.extend(b);
        }
        let domain = Domain::Finite {
            lo: 0.0,
            hi: 2.0 * PI,
        };
        QuadratureRule::from_breakpoints(domain, &breaks, 20).expect("static breakpoints are valid")
    })
}

/// Normalization η > 0 making Φ unit-norm under the angular weight, computed
/// by quadrature of the unnormalized function.
pub fn angular_norm(qn: &QuantumNumbers, params: &ModelParams) -> f64 {
    let rule = angular_rule();
    let norm2 = rule.integrate(|p| {
        let u = unnormalized(p, qn, params);
        u * u * weight(p, params)
    });
    1.0 / norm2.sqrt()
}

/// The closed-form normalization constant, with n read as m.
/// Returns NaN where a Γ argument is non-positive.
pub fn closed_form_angular_norm(qn: &QuantumNumbers, params: &ModelParams) -> f64 {
    let n = qn.m();
    let (mu1, mu2) = (params.mu1(), params.mu2());
    let es = f64::from(qn.e1() + qn.e2()) / 2.0;
    let (e1, e2) = (f64::from(qn.e1()), f64::from(qn.e2()));
    let lg = |x: f64| log_gamma(x).unwrap_or(f64::NAN);
    let prefactor = ((2.0 * n + mu1 + mu2) / 2.0) * (n - es);
    let gammas = (lg(n + mu1 + mu2 + es) - lg(n + mu1 + (1.0 + e1 + e2) / 2.0)
        + lg(n + mu1 + (1.0 + e2 - e1) / 2.0))
    .exp();
    (prefactor * gammas).sqrt()
}

/// Numeric η next to the closed-form value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormComparison {
    pub numeric: f64,
    pub closed_form: f64,
    pub relative_discrepancy: f64,
}

pub fn compare_angular_norm(qn: &QuantumNumbers, params: &ModelParams) -> NormComparison {
    let numeric = angular_norm(qn, params);
    let closed_form = closed_form_angular_norm(qn, params);
    NormComparison {
        numeric,
        closed_form,
        relative_discrepancy: ((closed_form - numeric) / numeric).abs(),
    }
}

/// Normalized angular eigenfunction, with η precomputed.
#[derive(Debug, Clone, Copy)]
pub struct AngularState {
    qn: QuantumNumbers,
    params: ModelParams,
    eta: f64,
}

impl AngularState {
    pub fn new(qn: QuantumNumbers, params: ModelParams) -> Self {
        let eta = angular_norm(&qn, &params);
        Self { qn, params, eta }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn quantum_numbers(&self) -> &QuantumNumbers {
        &self.qn
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.eta * unnormalized(phi, &self.qn, &self.params)
    }

    pub fn sample(&self, n: usize) -> Result<AngularGrid> {
        AngularGrid::sample(n, |p| self.eval(p))
    }
}

/// Φ_m^{(e₁,e₂)}(φ). Invalid parity combinations are rejected when the
/// [`QuantumNumbers`] are built.
pub fn angular_eigenfunction(phi: f64, qn: &QuantumNumbers, params: &ModelParams) -> f64 {
    AngularState::new(*qn, *params).eval(phi)
}

/// B_φ f = -½f'' + (μ₁ tan φ - μ₂ cot φ) f' + μ₁(f - R₁f)/(2cos²φ) + μ₂(f - R₂f)/(2sin²φ)
///
/// Derivatives use periodic 8th-order stencils; the exact singular nodes
/// φ ∈ {0, π/2, π, 3π/2} are returned as NaN.
pub fn apply_angular_operator(f: &AngularGrid, params: &ModelParams) -> Result<AngularGrid> {
    let n = f.len();
    if n % 4 != 0 || n < 2 * STENCIL {
        return Err(Error::Grid(format!(
            "grid of size {n} is not reflection-symmetric"
        )));
    }
    let st = Stencils::new(f.spacing());
    let d1 = st.first_periodic(f.values());
    let d2 = st.second_periodic(f.values());
    let r1 = f.reflect_r1();
    let r2 = f.reflect_r2();
    let (mu1, mu2) = (params.mu1(), params.mu2());
    let quarter = n / 4;
    let values = (0..n)
        .map(|j| {
            if j % quarter == 0 {
                return f64::NAN;
            }
            let phi = f.phis[j];
            let (s, c) = phi.sin_cos();
            let v = f.values[j];
            -0.5 * d2[j]
                + (mu1 * s / c - mu2 * c / s) * d1[j]
                + mu1 * (v - r1.values[j]) / (2.0 * c * c)
                + mu2 * (v - r2.values[j]) / (2.0 * s * s)
        })
        .collect();
    Ok(AngularGrid {
        phis: f.phis.clone(),
        values,
    })
}

/// ‖B_φ Φ - (s²/2) Φ‖_∞ / ‖Φ‖_∞ on an N-point grid, away from the singular angles.
pub fn eigen_residual(qn: &QuantumNumbers, params: &ModelParams, n: usize) -> Result<f64> {
    let state = AngularState::new(*qn, *params);
    let grid = state.sample(n)?;
    let applied = apply_angular_operator(&grid, params)?;
    let half_s2 = 0.5 * separation_constant(qn.two_m(), params);
    let mask = grid.near_singular(SINGULAR_WINDOW);
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for j in 0..n {
        if mask[j] {
            continue;
        }
        num = num.max((applied.values[j] - half_s2 * grid.values[j]).abs());
        den = den.max(grid.values[j].abs());
    }
    Ok(num / den)
}

/// Gram matrix of angular eigenfunctions under the angular weight.
pub fn angular_gram(states: &[QuantumNumbers], params: &ModelParams) -> nalgebra::DMatrix<f64> {
    let n = states.len();
    nalgebra::DMatrix::from_fn(n, n, |i, j| angular_overlap(&states[i], &states[j], params))
}

/// ∫₀^{2π} Φ_i Φ_j |cos φ|^{2μ₁} |sin φ|^{2μ₂} dφ by quadrature.
pub fn angular_overlap(i: &QuantumNumbers, j: &QuantumNumbers, params: &ModelParams) -> f64 {
    let a = AngularState::new(*i, *params);
    let b = AngularState::new(*j, *params);
    angular_rule().integrate(|p| a.eval(p) * b.eval(p) * weight(p, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(e1: u8, e2: u8, two_m: u32) -> QuantumNumbers {
        QuantumNumbers::new(e1, e2, two_m, 0).unwrap()
    }

    fn params(mu1: f64, mu2: f64) -> ModelParams {
        ModelParams::new(mu1, mu2, -1.0).unwrap()
    }

    #[test]
    fn constant_mode_undeformed() {
        let p = params(0.0, 0.0);
        let expect = 1.0 / (2.0 * PI).sqrt();
        assert!((angular_norm(&qn(0, 0, 0), &p) - expect).abs() < 1e-14);
        for phi in [0.0, 0.3, 2.0, 5.5] {
            assert!((angular_eigenfunction(phi, &qn(0, 0, 0), &p) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn cosine_mode_norm() {
        let eta = angular_norm(&qn(1, 0, 1), &params(0.0, 0.0));
        assert!((eta - 1.0 / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn reflection_parity_at_point() {
        let p = params(0.3, 0.7);
        let s = AngularState::new(qn(1, 0, 1), p);
        assert!((s.eval(PI - 0.3) + s.eval(0.3)).abs() < 1e-14);
    }

    #[test]
    fn reflection_index_maps() {
        let g = AngularGrid::sample(64, f64::sin).unwrap();
        let r2 = g.reflect_r2();
        for (a, b) in r2.values().iter().zip(g.values()) {
            assert!((a + b).abs() < 1e-14);
        }
        let r1 = g.reflect_r1();
        for (a, b) in r1.values().iter().zip(g.values()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_is_annihilated() {
        let g = AngularGrid::sample(64, |_| 1.7).unwrap();
        let out = apply_angular_operator(&g, &params(0.0, 0.0)).unwrap();
        for v in out.values().iter().filter(|v| v.is_finite()) {
            assert!(v.abs() < 1e-11, "{v}");
        }
    }

    #[test]
    fn rejects_non_symmetric_grid() {
        assert!(AngularGrid::sample(66, f64::sin).is_err());
        assert!(AngularGrid::from_values(vec![0.0; 8]).is_err());
    }

    #[test]
    fn eigen_relation_example() {
        let r = eigen_residual(&qn(1, 1, 2), &params(0.3, 0.7), 512).unwrap();
        assert!(r <= 1e-6, "{r}");
    }

    #[test]
    fn opposite_sectors_orthogonal() {
        let p = params(0.3, 0.7);
        assert!(angular_overlap(&qn(0, 0, 2), &qn(1, 1, 2), &p).abs() < 1e-12);
        assert!(angular_overlap(&qn(0, 0, 0), &qn(1, 1, 4), &p).abs() < 1e-12);
    }

    #[test]
    fn same_sector_orthogonal() {
        let p = params(0.4, 0.6);
        assert!(angular_overlap(&qn(0, 0, 2), &qn(0, 0, 4), &p).abs() < 1e-8);
        assert!((angular_overlap(&qn(0, 0, 2), &qn(0, 0, 2), &p) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn closed_form_norm_is_reported() {
        let c = compare_angular_norm(&qn(1, 1, 2), &params(0.3, 0.7));
        assert!(c.numeric > 0.0);
        assert!(c.closed_form.is_finite());
    }
}
