//! Perelomov coherent states of the discrete series.
//!
//! Two parameters describe the same state. The disc point ζ (|ζ| < 1) enters
//! the expansion coefficients and the closed-form wavefunctions; the
//! displacement ξ of D(ξ) = exp(ξK₊ - ξ*K₋) enters the expectation values and
//! the coherent energy. They are related by ζ = tanh|ξ| e^{i arg ξ}.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::model::{bargmann_index, coherent_energy, ModelParams};
use crate::radial::radial_rule;
use crate::specfun::gamma::log_gamma_positive;
use crate::specfun::laguerre_sequence;
use crate::su11::RepMatrices;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentParam {
    disc: Complex64,
}

impl CoherentParam {
    pub fn from_disc(disc: Complex64) -> Result<Self> {
        if !disc.re.is_finite() || !disc.im.is_finite() || disc.norm() >= 1.0 {
            return Err(domain(format!(
                "disc parameter must satisfy |ζ| < 1, got {disc}"
            )));
        }
        Ok(Self { disc })
    }

    pub fn from_polar_disc(modulus: f64, arg: f64) -> Result<Self> {
        if !(modulus >= 0.0) || !arg.is_finite() {
            return Err(domain(format!(
                "invalid polar disc point ({modulus}, {arg})"
            )));
        }
        Self::from_disc(Complex64::from_polar(modulus, arg))
    }

    pub fn from_displacement(xi: Complex64) -> Result<Self> {
        if !xi.re.is_finite() || !xi.im.is_finite() {
            return Err(domain(format!("displacement must be finite, got {xi}")));
        }
        let disc = Complex64::from_polar(xi.norm().tanh(), xi.arg());
        Self::from_disc(disc)
    }

    pub fn disc(&self) -> Complex64 {
        self.disc
    }

    pub fn displacement(&self) -> Complex64 {
        Complex64::from_polar(self.displacement_modulus(), self.disc.arg())
    }

    /// |ξ| = artanh|ζ|
    pub fn displacement_modulus(&self) -> f64 {
        self.disc.norm().atanh()
    }

    pub fn varphi(&self) -> f64 {
        self.disc.arg()
    }

    /// Angle φ of the parameterization ξ = -(τ/2) e^{-iφ}.
    pub fn tau_phase(&self) -> f64 {
        std::f64::consts::PI - self.varphi()
    }

    pub fn alpha_h(&self) -> f64 {
        (2.0 * self.displacement_modulus()).sinh()
    }

    pub fn beta_h(&self) -> f64 {
        ((2.0 * self.displacement_modulus()).cosh() - 1.0) / 2.0
    }
}

fn require_index(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(domain(format!("Bargmann index must be positive, got {k}")));
    }
    Ok(())
}

/// c_n = (1-|ζ|²)^k √(Γ(n+2k)/(n! Γ(2k))) ζⁿ, n = 0..=n_max
pub fn coherent_coefficients(
    param: &CoherentParam,
    k: f64,
    n_max: usize,
) -> Result<Vec<Complex64>> {
    require_index(k)?;
    let z = param.disc();
    let mut c = Vec::with_capacity(n_max + 1);
    let mut cur = Complex64::new((1.0 - z.norm_sqr()).powf(k), 0.0);
    for n in 0..=n_max {
        c.push(cur);
        let nf = n as f64;
        cur *= z * ((nf + 2.0 * k) / (nf + 1.0)).sqrt();
    }
    Ok(c)
}

/// 2 [(1-|ζ|²)^{2k} / Γ(2k)]^{1/2}
fn radial_prefactor(param: &CoherentParam, k: f64) -> f64 {
    2.0 * (k * (1.0 - param.disc().norm_sqr()).ln() - 0.5 * log_gamma_positive(2.0 * k)).exp()
}

/// Σ c_n S_n(r) summed through the Laguerre generating series.
pub fn coherent_series(
    r: f64,
    param: &CoherentParam,
    two_m: u32,
    params: &ModelParams,
    n_max: usize,
) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(domain(format!("coherent series needs r > 0, got {r}")));
    }
    let k = bargmann_index(two_m, params);
    let lag = laguerre_sequence(n_max, 2.0 * k - 1.0, 2.0 * r)?;
    let z = param.disc();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for l in lag {
        sum += zn * l;
        zn *= z;
    }
    let m = f64::from(two_m) / 2.0;
    Ok(sum * radial_prefactor(param, k) * (2.0 * r).powf(2.0 * m) * (-r).exp())
}

/// 2 [(1-|ζ|²)^{2k} / (Γ(2k)(1-ζ)^{4k})]^{1/2} (2r)^{2m} e^{r(ζ+1)/(ζ-1)},
/// principal branch for the complex power.
pub fn coherent_closed(
    r: f64,
    param: &CoherentParam,
    two_m: u32,
    params: &ModelParams,
) -> Complex64 {
    let k = bargmann_index(two_m, params);
    let z = param.disc();
    let one = Complex64::new(1.0, 0.0);
    let branch = (-2.0 * k * (one - z).ln()).exp();
    let m = f64::from(two_m) / 2.0;
    let exponent = (z + 1.0) / (z - 1.0) * r;
    branch * exponent.exp() * radial_prefactor(param, k) * (2.0 * r).powf(2.0 * m)
}

/// ⟨K₀⟩ = k cosh(2|ξ|)
pub fn expectation_k0(param: &CoherentParam, k: f64) -> f64 {
    k * (2.0 * param.displacement_modulus()).cosh()
}

/// ⟨K₊⟩ = e^{-i arg ξ} k sinh(2|ξ|); ⟨K₋⟩ is its conjugate.
pub fn expectation_kplus(param: &CoherentParam, k: f64) -> Complex64 {
    Complex64::from_polar(
        k * (2.0 * param.displacement_modulus()).sinh(),
        -param.varphi(),
    )
}

pub fn expectation_kminus(param: &CoherentParam, k: f64) -> Complex64 {
    expectation_kplus(param, k).conj()
}

/// ⟨c|X|c⟩ for a real matrix X on the truncated space.
pub fn quadratic_form(c: &[Complex64], x: &DMatrix<f64>) -> Complex64 {
    let n = c.len().min(x.nrows());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let v = x[(i, j)];
            if v != 0.0 {
                acc += c[i].conj() * v * c[j];
            }
        }
    }
    acc
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|v| Complex64::new(v, 0.0))
}

/// exp of a nilpotent matrix by its terminating power series.
fn nilpotent_exp(x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = x.nrows();
    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = sum.clone();
    for p in 1..n {
        term = &term * x / Complex64::new(p as f64, 0.0);
        if term.iter().all(|v| *v == Complex64::new(0.0, 0.0)) {
            break;
        }
        sum += &term;
    }
    sum
}

/// D(ξ) = exp(ζK₊) exp(ln(1-|ζ|²) K₀) exp(-ζ*K₋) on the truncated space.
/// Each factor is triangular or diagonal, so the result is the exact leading
/// block of the infinite-dimensional operator.
pub fn displacement_normal_form(
    param: &CoherentParam,
    k: f64,
    dim: usize,
) -> Result<DMatrix<Complex64>> {
    let rep = RepMatrices::new(k, dim)?;
    let z = param.disc();
    let eta = (1.0 - z.norm_sqr()).ln();
    let up = nilpotent_exp(&(complexify(rep.kplus()) * z));
    let down = nilpotent_exp(&(complexify(rep.kminus()) * (-z.conj())));
    let mid = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new((eta * (k + i as f64)).exp(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(up * mid * down)
}

/// exp(ξK₊ - ξ*K₋) of the truncated generator (Padé scaling and squaring).
pub fn displacement_exponential(
    param: &CoherentParam,
    k: f64,
    dim: usize,
) -> Result<DMatrix<Complex64>> {
    let rep = RepMatrices::new(k, dim)?;
    let xi = param.displacement();
    let gen = complexify(rep.kplus()) * xi - complexify(rep.kminus()) * xi.conj();
    Ok(gen.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityReport {
    /// max entrywise |D†K₀D - [(2β+1)K₀ + (αξ/2|ξ|)K₊ + (αξ*/2|ξ|)K₋]| on the safe block
    pub entrywise: f64,
    /// |trace difference| on the safe block
    pub trace: f64,
    /// max entrywise |D†D - I| on the safe block
    pub unitarity: f64,
    /// max entrywise difference between the normal form and the exponential of the truncated generator
    pub exponential: f64,
}

fn max_identity_defect(d: &DMatrix<Complex64>, block: usize) -> f64 {
    let n = d.ncols();
    let u = d.adjoint() * d - DMatrix::<Complex64>::identity(n, n);
    u.view((0, 0), (block, block))
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.norm()))
}

/// max |D†D - I| over the whole matrix, for D the exponential of the
/// truncated (anti-Hermitian) generator.
pub fn exponential_unitarity(param: &CoherentParam, k: f64, dim: usize) -> Result<f64> {
    Ok(max_identity_defect(
        &displacement_exponential(param, k, dim)?,
        dim,
    ))
}

/// Rows and columns 0..dim/2.
pub fn safe_block(dim: usize) -> usize {
    dim / 2
}

pub fn similarity_transform_check(
    param: &CoherentParam,
    k: f64,
    dim: usize,
) -> Result<SimilarityReport> {
    let rep = RepMatrices::new(k, dim)?;
    let d = displacement_normal_form(param, k, dim)?;
    let dh = d.adjoint();
    let lhs = &dh * complexify(rep.kzero()) * &d;

    let xi = param.displacement();
    let unit = if xi.norm() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        xi / xi.norm()
    };
    let a = param.alpha_h() / 2.0;
    let rhs = complexify(rep.kzero()) * Complex64::new(2.0 * param.beta_h() + 1.0, 0.0)
        + complexify(rep.kplus()) * (unit * a)
        + complexify(rep.kminus()) * (unit.conj() * a);

    let b = safe_block(dim);
    let block_max = |m: &DMatrix<Complex64>| {
        m.view((0, 0), (b, b))
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.norm()))
    };
    let diff = &lhs - &rhs;
    let trace = (0..b).map(|i| diff[(i, i)]).sum::<Complex64>().norm();
    let unitarity = max_identity_defect(&d, b);
    let exponential = block_max(&(displacement_exponential(param, k, dim)? - &d));
    Ok(SimilarityReport {
        entrywise: block_max(&diff),
        trace,
        unitarity,
        exponential,
    })
}

/// Tilted coherent state
/// R(r) = C · 2[(1-|ζ|²)^{2k}/(Γ(2k)(1-ζ)^{4k})]^{1/2} (2ar)^{2m} e^{ar(ζ+1)/(ζ-1)},
/// a = √(-2E_ξ), with C fixed by ∫|R|² r^{1+2μ} dr = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalCoherent {
    param: CoherentParam,
    two_m: u32,
    params: ModelParams,
    energy: f64,
    a: f64,
    c: f64,
}

impl PhysicalCoherent {
    pub fn new(param: &CoherentParam, two_m: u32, params: &ModelParams) -> Result<Self> {
        let energy = coherent_energy(param.displacement_modulus(), two_m, params)?;
        let a = (-2.0 * energy).sqrt();
        let mut state = Self {
            param: *param,
            two_m,
            params: *params,
            energy,
            a,
            c: 1.0,
        };
        let rule = radial_rule(2.0 * state.decay(), state.physical_power())?;
        let norm =
            rule.integrate(|r| state.eval(r).norm_sqr() * r.powf(1.0 + 2.0 * params.mu_sum()));
        state.c = norm.sqrt().recip();
        Ok(state)
    }

    /// b in |R|² ∝ r^{4m} e^{-2br}
    fn decay(&self) -> f64 {
        let z = self.param.disc();
        self.a * (1.0 - z.norm_sqr()) / (Complex64::new(1.0, 0.0) - z).norm_sqr()
    }

    fn physical_power(&self) -> f64 {
        f64::from(2 * self.two_m) + 1.0 + 2.0 * self.params.mu_sum()
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Normalization constant found by quadrature.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// C from the Gamma integral ∫ r^p e^{-2br} dr = Γ(p+1)/(2b)^{p+1}.
    pub fn analytic_c(&self) -> f64 {
        let k = bargmann_index(self.two_m, &self.params);
        let z = self.param.disc();
        let amp2 = 4.0 * ((1.0 - z.norm_sqr()).ln() * 2.0 * k - log_gamma_positive(2.0 * k)).exp()
            / (Complex64::new(1.0, 0.0) - z).norm_sqr().powf(2.0 * k);
        let p = self.physical_power();
        let log_int = f64::from(2 * self.two_m) * (2.0 * self.a).ln() + log_gamma_positive(p + 1.0)
            - (p + 1.0) * (2.0 * self.decay()).ln();
        (amp2 * log_int.exp()).sqrt().recip()
    }

    /// C_n = √(-2E) / (k^{1/2} [cosh 2|ξ| + sinh 2|ξ| cos φ]^{1/2}) in closed form.
    pub fn closed_form_c(&self) -> f64 {
        let k = bargmann_index(self.two_m, &self.params);
        let t = 2.0 * self.param.displacement_modulus();
        self.a / (k * (t.cosh() + t.sinh() * self.param.tau_phase().cos())).sqrt()
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        self.c * coherent_closed(self.a * r, &self.param, self.two_m, &self.params)
    }

    /// ∫|R|² r^{2μ} dr, the norm under the Sturmian measure.
    pub fn sturmian_norm(&self) -> Result<f64> {
        let mu = self.params.mu_sum();
        let rule = radial_rule(2.0 * self.decay(), self.physical_power() - 1.0)?;
        Ok(rule.integrate(|r| self.eval(r).norm_sqr() * r.powf(2.0 * mu)))
    }

    pub fn physical_norm(&self) -> Result<f64> {
        let mu = self.params.mu_sum();
        let rule = radial_rule(2.0 * self.decay(), self.physical_power())?;
        Ok(rule.integrate(|r| self.eval(r).norm_sqr() * r.powf(1.0 + 2.0 * mu)))
    }
}

pub fn physical_coherent(
    r: f64,
    param: &CoherentParam,
    two_m: u32,
    params: &ModelParams,
) -> Result<Complex64> {
    Ok(PhysicalCoherent::new(param, two_m, params)?.eval(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{radial_eigenfunction, Sturmian};
    use crate::QuantumNumbers;

    fn params(mu1: f64, mu2: f64, alpha: f64) -> ModelParams {
        ModelParams::new(mu1, mu2, alpha).unwrap()
    }

    fn disc(modulus: f64, arg: f64) -> CoherentParam {
        CoherentParam::from_polar_disc(modulus, arg).unwrap()
    }

    #[test]
    fn parameter_validation_and_scalars() {
        assert!(CoherentParam::from_polar_disc(1.0, 0.0).is_err());
        assert!(CoherentParam::from_disc(Complex64::new(f64::NAN, 0.0)).is_err());
        let p = CoherentParam::from_displacement(Complex64::from_polar(0.35, 1.2)).unwrap();
        assert!((p.displacement().norm() - 0.35).abs() < 1e-14);
        assert!((p.varphi() - 1.2).abs() < 1e-14);
        let (a, b) = (p.alpha_h(), p.beta_h());
        assert!(a >= 0.0 && b >= 0.0);
        assert!((a * a - ((2.0 * b + 1.0).powi(2) - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn coefficients_at_origin() {
        let c = coherent_coefficients(&disc(0.0, 0.0), 1.5, 5).unwrap();
        assert_eq!(c[0], Complex64::new(1.0, 0.0));
        assert!(c[1..].iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn coefficient_ratio_and_norm() {
        let p = disc(0.3, 0.4);
        let k = 1.5;
        let c = coherent_coefficients(&p, k, 60).unwrap();
        let ratio = c[1] / c[0];
        assert!((ratio - p.disc() * (2.0 * k).sqrt()).norm() < 1e-15);
        let total: f64 = c.iter().map(|v| v.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn series_at_origin_is_sturmian_ground() {
        let pr = params(0.3, 0.2, -1.0);
        let st = Sturmian::new(0, 1, &pr);
        for r in [0.3, 1.0, 4.0] {
            let v = coherent_series(r, &disc(0.0, 0.0), 1, &pr, 10).unwrap();
            assert!((v.re - st.eval(r)).abs() < 1e-14 * st.eval(r).abs().max(1.0));
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn closed_form_exponent_arithmetic() {
        let pr = params(0.0, 0.0, -1.0);
        let v = coherent_closed(1.0, &disc(0.5, 0.0), 0, &pr);
        // 2 · 0.75^{1/2} / 0.5 · e^{-3}
        let expected = 2.0 * 0.75f64.sqrt() / 0.5 * (-3.0f64).exp();
        assert!((v.re - expected).abs() < 1e-15);
    }

    #[test]
    fn closed_matches_series() {
        let pr = params(0.3, 0.2, -1.0);
        let p = disc(0.3, 0.7);
        for i in 1..=100 {
            let r = 0.1 * i as f64;
            let s = coherent_series(r, &p, 0, &pr, 200).unwrap();
            let c = coherent_closed(r, &p, 0, &pr);
            assert!((s - c).norm() <= 1e-10 * c.norm().max(1.0), "r={r}");
        }
    }

    #[test]
    fn expectation_values_against_matrix_form() {
        let k = 1.5;
        let p = CoherentParam::from_displacement(Complex64::from_polar(0.4, 0.9)).unwrap();
        assert_eq!(expectation_k0(&p, k), 1.5 * 0.8f64.cosh());
        let rep = RepMatrices::new(k, 81).unwrap();
        let c = coherent_coefficients(&p, k, 80).unwrap();
        assert!((quadratic_form(&c, rep.kzero()).re - expectation_k0(&p, k)).abs() < 1e-10);
        assert!((quadratic_form(&c, rep.kplus()) - expectation_kplus(&p, k)).norm() < 1e-10);
        assert!((quadratic_form(&c, rep.kminus()) - expectation_kminus(&p, k)).norm() < 1e-10);
        let origin = disc(0.0, 0.0);
        assert_eq!(expectation_k0(&origin, k), k);
        assert_eq!(expectation_kplus(&origin, k).norm(), 0.0);
    }

    #[test]
    fn energy_consistency() {
        let pr = params(0.3, 0.2, -1.0);
        let p = CoherentParam::from_displacement(Complex64::from_polar(0.4, 0.0)).unwrap();
        let k = bargmann_index(1, &pr);
        let e = coherent_energy(p.displacement_modulus(), 1, &pr).unwrap();
        assert!(((-2.0 * e).sqrt() * expectation_k0(&p, k) + pr.alpha()).abs() < 1e-12);
    }

    #[test]
    fn displacement_first_column_is_coefficient_vector() {
        let p = disc(0.4, -0.3);
        let d = displacement_normal_form(&p, 1.5, 20).unwrap();
        let c = coherent_coefficients(&p, 1.5, 19).unwrap();
        for n in 0..20 {
            assert!((d[(n, 0)] - c[n]).norm() < 1e-14);
        }
    }

    #[test]
    fn similarity_identity_at_origin() {
        let r = similarity_transform_check(&disc(0.0, 0.0), 1.0, 16).unwrap();
        assert_eq!(r.entrywise, 0.0);
        assert_eq!(r.unitarity, 0.0);
    }

    #[test]
    fn similarity_transform_holds() {
        let p = CoherentParam::from_displacement(Complex64::from_polar(0.2, 0.6)).unwrap();
        let r = similarity_transform_check(&p, 1.0, 48).unwrap();
        assert!(r.entrywise <= 1e-8, "{r:?}");
        assert!(r.trace <= 1e-8, "{r:?}");
    }

    #[test]
    fn displacement_unitary_and_converging() {
        let p = CoherentParam::from_displacement(Complex64::from_polar(0.2, 0.6)).unwrap();
        let r48 = similarity_transform_check(&p, 1.0, 48).unwrap();
        assert!(r48.unitarity <= 1e-8, "{r48:?}");
        assert!(r48.exponential <= 1e-12, "{r48:?}");
        let r32 = similarity_transform_check(&p, 1.0, 32).unwrap();
        let r64 = similarity_transform_check(&p, 1.0, 64).unwrap();
        assert!(r64.entrywise < r48.entrywise / 50.0 && r48.entrywise < r32.entrywise / 50.0);
        assert!(r64.entrywise <= 1e-8 && r64.trace <= 1e-8, "{r64:?}");
        assert!(exponential_unitarity(&p, 1.0, 48).unwrap() < 1e-13);
    }

    #[test]
    fn physical_state_at_origin_is_ground_state() {
        let pr = params(0.3, 0.2, -1.0);
        let pc = PhysicalCoherent::new(&disc(0.0, 0.0), 1, &pr).unwrap();
        let qn = QuantumNumbers::new(1, 0, 1, 0).unwrap();
        for r in [0.2, 1.0, 3.0] {
            let expected = radial_eigenfunction(r, &qn, &pr).unwrap();
            let v = pc.eval(r);
            assert!((v.re - expected).abs() < 1e-12 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn physical_normalization() {
        let pr = params(0.3, 0.2, -1.0);
        let pc = PhysicalCoherent::new(&disc(0.3, 0.0), 0, &pr).unwrap();
        assert!((pc.physical_norm().unwrap() - 1.0).abs() < 1e-8);
        assert!((pc.c() - pc.analytic_c()).abs() < 1e-10 * pc.c());
        assert!(pc.sturmian_norm().unwrap() > 0.0);
        let off = PhysicalCoherent::new(&disc(0.3, 0.5), 0, &pr).unwrap();
        assert!(off.closed_form_c().is_finite());
        assert!(PhysicalCoherent::new(&disc(0.3, 0.0), 0, &params(0.3, 0.2, 1.0)).is_err());
    }
}
