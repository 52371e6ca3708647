//! su(1,1): truncated discrete-series matrices and two differential
//! realizations on radial grids.
//!
//! The energy-independent generators are
//!
//! ```text
//! A₀ = ½(-r d² - 2(½+μ) d + s²/r + r)
//! A₁ = ½(-r d² - 2(½+μ) d + s²/r - r)
//! A₂ = -i (r d + ½ + μ)
//! ```
//!
//! A₂ is kept as the real operator T = r d + ½ + μ; the factor -i is carried
//! symbolically, so A₂² = -T².

use nalgebra::DMatrix;

use crate::error::{domain, Error, Result};
use crate::fd::{Stencils, STENCIL};
use crate::model::{bargmann_index, separation_constant, ModelParams};
use crate::radial::RadialGrid;

/// Nodes dropped at each end of a grid when measuring residuals of
/// (possibly nested) differential operators.
pub const INTERIOR_MARGIN: usize = 2 * STENCIL;

/// K₊, K₋, K₀ on span{|k,0⟩, …, |k,dim-1⟩}.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrices {
    k: f64,
    dim: usize,
    kplus: DMatrix<f64>,
    kminus: DMatrix<f64>,
    kzero: DMatrix<f64>,
}

impl RepMatrices {
    pub fn new(k: f64, dim: usize) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(domain(format!("Bargmann index must be positive, got {k}")));
        }
        if dim < 2 {
            return Err(domain(format!("representation needs dim >= 2, got {dim}")));
        }
        let mut kplus = DMatrix::zeros(dim, dim);
        for n in 0..dim - 1 {
            let nf = n as f64;
            kplus[(n + 1, n)] = ((nf + 1.0) * (2.0 * k + nf)).sqrt();
        }
        let kminus = kplus.transpose();
        let kzero = DMatrix::from_fn(dim, dim, |i, j| if i == j { k + i as f64 } else { 0.0 });
        Ok(Self {
            k,
            dim,
            kplus,
            kminus,
            kzero,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kplus(&self) -> &DMatrix<f64> {
        &self.kplus
    }

    pub fn kminus(&self) -> &DMatrix<f64> {
        &self.kminus
    }

    pub fn kzero(&self) -> &DMatrix<f64> {
        &self.kzero
    }

    /// [K₀, X] using the integer ladder K₀ = k + diag(0, 1, …): entries
    /// (i - j) X_ij, with the difference formed in integers.
    pub fn k0_commutator(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| {
            (i as i64 - j as i64) as f64 * x[(i, j)]
        })
    }

    /// -K₊K₋ + K₀(K₀ - 1)
    pub fn casimir(&self) -> DMatrix<f64> {
        let id = DMatrix::<f64>::identity(self.dim, self.dim);
        -(&self.kplus * &self.kminus) + &self.kzero * (&self.kzero - id)
    }
}

pub fn rep_matrices(k: f64, dim: usize) -> Result<RepMatrices> {
    RepMatrices::new(k, dim)
}

pub fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

/// Largest |entry| in the leading `rows` × `rows` block.
pub fn block_max_abs(m: &DMatrix<f64>, rows: usize) -> f64 {
    let r = rows.min(m.nrows()).min(m.ncols());
    m.view((0, 0), (r, r)).amax()
}

/// Residuals of the commutation relations and the Casimir identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraReport {
    /// max |[K₀,K₊] - K₊| (integer-structured commutator)
    pub k0_kplus: f64,
    /// max |[K₀,K₋] + K₋| (integer-structured commutator)
    pub k0_kminus: f64,
    /// same two relations from plain matrix products
    pub k0_dense: f64,
    /// max |[K₋,K₊] - 2K₀| on rows/cols 0..dim-2
    pub ladder: f64,
    /// max |C - k(k-1) I| on rows/cols 0..dim-2
    pub casimir: f64,
}

pub fn check_algebra(k: f64, dim: usize) -> Result<AlgebraReport> {
    let rep = RepMatrices::new(k, dim)?;
    let safe = dim - 1;
    let k0_kplus = (rep.k0_commutator(&rep.kplus) - &rep.kplus).amax();
    let k0_kminus = (rep.k0_commutator(&rep.kminus) + &rep.kminus).amax();
    let k0_dense = (commutator(&rep.kzero, &rep.kplus) - &rep.kplus)
        .amax()
        .max((commutator(&rep.kzero, &rep.kminus) + &rep.kminus).amax());
    let ladder = block_max_abs(
        &(commutator(&rep.kminus, &rep.kplus) - 2.0 * &rep.kzero),
        safe,
    );
    let id = DMatrix::<f64>::identity(dim, dim);
    let casimir = block_max_abs(&(rep.casimir() - k * (k - 1.0) * id), safe);
    Ok(AlgebraReport {
        k0_kplus,
        k0_kminus,
        k0_dense,
        ladder,
        casimir,
    })
}

fn require_uniform(f: &RadialGrid) -> Result<Stencils> {
    let h = f
        .uniform_spacing()
        .ok_or_else(|| Error::Grid("operator realizations need a uniform radial grid".into()))?;
    if f.len() < 2 * INTERIOR_MARGIN + 1 {
        return Err(Error::Grid(format!("grid too short: {} points", f.len())));
    }
    Ok(Stencils::new(h))
}

/// Energy-independent realization (A₀, A₁, A₂) for fixed m and μ.
#[derive(Debug, Clone, Copy)]
pub struct TiltingOps {
    s2: f64,
    c0: f64,
}

impl TiltingOps {
    pub fn new(two_m: u32, params: &ModelParams) -> Self {
        Self {
            s2: separation_constant(two_m, params),
            c0: 0.5 + params.mu_sum(),
        }
    }

    /// ½(-r f'' - 2c₀ f' + s²/r f + sign·r f)
    fn a0_a1(&self, f: &RadialGrid, sign: f64) -> Result<RadialGrid> {
        let st = require_uniform(f)?;
        let d1 = st.first(f.values());
        let d2 = st.second(f.values());
        let values = f
            .rs()
            .iter()
            .zip(f.values())
            .enumerate()
            .map(|(i, (&r, &v))| {
                0.5 * (-r * d2[i] - 2.0 * self.c0 * d1[i] + self.s2 / r * v + sign * r * v)
            })
            .collect();
        Ok(f.with_values(values))
    }

    pub fn a0(&self, f: &RadialGrid) -> Result<RadialGrid> {
        self.a0_a1(f, 1.0)
    }

    pub fn a1(&self, f: &RadialGrid) -> Result<RadialGrid> {
        self.a0_a1(f, -1.0)
    }

    /// Real part T f = r f' + (½+μ) f of A₂ f = -i T f.
    pub fn a2(&self, f: &RadialGrid) -> Result<RadialGrid> {
        let st = require_uniform(f)?;
        let d1 = st.first(f.values());
        let values = f
            .rs()
            .iter()
            .zip(f.values())
            .enumerate()
            .map(|(i, (&r, &v))| r * d1[i] + self.c0 * v)
            .collect();
        Ok(f.with_values(values))
    }

    /// (A₀ + A₁) f = -r f'' - 2c₀ f' + s²/r f
    pub fn a0_plus_a1(&self, f: &RadialGrid) -> Result<RadialGrid> {
        let a = self.a0(f)?;
        let b = self.a1(f)?;
        Ok(f.with_values(zip_map(a.values(), b.values(), |x, y| x + y)))
    }

    /// (A₀ - A₁) f = r f
    pub fn a0_minus_a1(&self, f: &RadialGrid) -> Result<RadialGrid> {
        let a = self.a0(f)?;
        let b = self.a1(f)?;
        Ok(f.with_values(zip_map(a.values(), b.values(), |x, y| x - y)))
    }

    /// (A₀² - A₁² - A₂²) f = A₀A₀f - A₁A₁f + T T f
    pub fn casimir(&self, f: &RadialGrid) -> Result<RadialGrid> {
        let a0 = self.a0(&self.a0(f)?)?;
        let a1 = self.a1(&self.a1(f)?)?;
        let t = self.a2(&self.a2(f)?)?;
        let values = (0..f.len())
            .map(|i| a0.values()[i] - a1.values()[i] + t.values()[i])
            .collect();
        Ok(f.with_values(values))
    }
}

pub fn apply_a0(f: &RadialGrid, two_m: u32, params: &ModelParams) -> Result<RadialGrid> {
    TiltingOps::new(two_m, params).a0(f)
}

pub fn apply_a1(f: &RadialGrid, two_m: u32, params: &ModelParams) -> Result<RadialGrid> {
    TiltingOps::new(two_m, params).a1(f)
}

/// Returns the real function r f' + (½+μ) f; the operator itself is -i times this.
pub fn apply_a2(f: &RadialGrid, two_m: u32, params: &ModelParams) -> Result<RadialGrid> {
    TiltingOps::new(two_m, params).a2(f)
}

fn zip_map(a: &[f64], b: &[f64], op: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()
}

/// Upper or lower sign in the ±-indexed operator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Constants of the factorization
/// (r d + a r + b)(-r d + c r + f) F = g F.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub f: f64,
    pub g: f64,
}

impl FactorizationConstants {
    pub fn new(sign: Sign, two_m: u32, params: &ModelParams, energy: f64) -> Result<Self> {
        if !(energy < 0.0) {
            return Err(domain(format!(
                "factorization needs a bound-state energy, got {energy}"
            )));
        }
        let s = sign.value();
        let root = (-2.0 * energy).sqrt();
        let mu = params.mu_sum();
        let q = params.alpha() / root;
        let half = (1.0 + 2.0 * mu) / 2.0;
        let g = (q - s * 0.5).powi(2) - mu * mu - separation_constant(two_m, params);
        Ok(Self {
            a: s * root,
            c: s * root,
            f: s * q - half,
            b: s * q + half - 1.0,
            g,
        })
    }
}

/// Energy-dependent realization from the Schrödinger factorization:
/// 𝒜± = ∓r d + √(-2E) r + α/√(-2E) ∓ (1+2μ)/2, L₀ and L±.
#[derive(Debug, Clone, Copy)]
pub struct SchrodingerOps {
    two_m: u32,
    params: ModelParams,
    energy: f64,
    root: f64,
}

impl SchrodingerOps {
    pub fn new(two_m: u32, params: &ModelParams, energy: f64) -> Result<Self> {
        if !(energy < 0.0) {
            return Err(domain(format!(
                "Schrödinger operators need energy < 0, got {energy}"
            )));
        }
        Ok(Self {
            two_m,
            params: *params,
            energy,
            root: (-2.0 * energy).sqrt(),
        })
    }

    fn half_width(&self) -> f64 {
        (1.0 + 2.0 * self.params.mu_sum()) / 2.0
    }

    /// 𝒜± f
    pub fn script_a(&self, f: &RadialGrid, sign: Sign) -> Result<RadialGrid> {
        let st = require_uniform(f)?;
        let d1 = st.first(f.values());
        let s = sign.value();
        let shift = self.params.alpha() / self.root - s * self.half_width();
        let values = (0..f.len())
            .map(|i| {
                let r = f.rs()[i];
                -s * r * d1[i] + self.root * r * f.values()[i] + shift * f.values()[i]
            })
            .collect();
        Ok(f.with_values(values))
    }

    /// L₀ f = (1/(2√(-2E))) [-r f'' - (1+2μ) f' - 2E r f + s²/r f]
    pub fn l0(&self, f: &RadialGrid) -> Result<RadialGrid> {
        let st = require_uniform(f)?;
        let d1 = st.first(f.values());
        let d2 = st.second(f.values());
        let p = 1.0 + 2.0 * self.params.mu_sum();
        let s2 = separation_constant(self.two_m, &self.params);
        let values = (0..f.len())
            .map(|i| {
                let r = f.rs()[i];
                let v = f.values()[i];
                (-r * d2[i] - p * d1[i] - 2.0 * self.energy * r * v + s2 / r * v)
                    / (2.0 * self.root)
            })
            .collect();
        Ok(f.with_values(values))
    }

    /// L± f = ∓r f' + √(-2E) r f ∓ (1+2μ)/2 f - L₀ f
    pub fn ladder(&self, f: &RadialGrid, sign: Sign) -> Result<RadialGrid> {
        let st = require_uniform(f)?;
        let d1 = st.first(f.values());
        let l0 = self.l0(f)?;
        let s = sign.value();
        let values = (0..f.len())
            .map(|i| {
                let r = f.rs()[i];
                let v = f.values()[i];
                -s * r * d1[i] + self.root * r * v - s * self.half_width() * v - l0.values()[i]
            })
            .collect();
        Ok(f.with_values(values))
    }

    /// (𝒜∓ ∓ 1) 𝒜± f - g± f
    pub fn factorization_defect(&self, f: &RadialGrid, sign: Sign) -> Result<RadialGrid> {
        let inner = self.script_a(f, sign)?;
        let outer = self.script_a(&inner, sign.flip())?;
        let g = FactorizationConstants::new(sign, self.two_m, &self.params, self.energy)?.g;
        let s = sign.value();
        let values = (0..f.len())
            .map(|i| outer.values()[i] - s * inner.values()[i] - g * f.values()[i])
            .collect();
        Ok(f.with_values(values))
    }
}

pub fn apply_schrodinger_ops(
    f: &RadialGrid,
    sign: Sign,
    two_m: u32,
    params: &ModelParams,
    energy: f64,
) -> Result<RadialGrid> {
    SchrodingerOps::new(two_m, params, energy)?.script_a(f, sign)
}

/// max_interior |lhs - rhs| / max(max_interior |rhs|, max_interior |f|)
pub fn interior_residual(lhs: &[f64], rhs: &[f64], f: &[f64]) -> f64 {
    let n = lhs.len();
    let range = INTERIOR_MARGIN..n.saturating_sub(INTERIOR_MARGIN);
    let mut num: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in range {
        num = num.max((lhs[i] - rhs[i]).abs());
        scale = scale.max(rhs[i].abs()).max(f[i].abs());
    }
    if scale == 0.0 {
        num
    } else {
        num / scale
    }
}

/// Residual of A f = λ f on the interior.
pub fn eigen_residual(applied: &RadialGrid, f: &RadialGrid, lambda: f64) -> f64 {
    let rhs: Vec<f64> = f.values().iter().map(|v| lambda * v).collect();
    interior_residual(applied.values(), &rhs, f.values())
}

/// e^{-iθA₂}(A₀±A₁)e^{iθA₂} against e^{±θ}(A₀±A₁), with e^{iθA₂} acting as
/// the dilation D(θ) f(r) = e^θ f(e^θ r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltingReport {
    pub plus: f64,
    pub minus: f64,
}

/// The dilated function D(θ)f is represented exactly on the grid
/// s_i = e^{-θ} r_i, where it takes the values e^θ f(r_i); (A₀±A₁) is applied
/// there, and D(-θ) maps the result back onto r_i without interpolation.
pub fn check_tilting(
    f: &RadialGrid,
    theta: f64,
    two_m: u32,
    params: &ModelParams,
) -> Result<TiltingReport> {
    require_uniform(f)?;
    let ops = TiltingOps::new(two_m, params);
    let scale = theta.exp();
    let inv = (-theta).exp();
    let s: Vec<f64> = f.rs().iter().map(|r| inv * r).collect();
    let g = RadialGrid::new(
        s,
        f.values().iter().map(|v| scale * v).collect(),
        f.weight_exponent(),
    )?;

    let lhs_plus: Vec<f64> = ops
        .a0_plus_a1(&g)?
        .values()
        .iter()
        .map(|v| inv * v)
        .collect();
    let lhs_minus: Vec<f64> = ops
        .a0_minus_a1(&g)?
        .values()
        .iter()
        .map(|v| inv * v)
        .collect();
    let rhs_plus: Vec<f64> = ops
        .a0_plus_a1(f)?
        .values()
        .iter()
        .map(|v| scale * v)
        .collect();
    let rhs_minus: Vec<f64> = ops
        .a0_minus_a1(f)?
        .values()
        .iter()
        .map(|v| inv * v)
        .collect();
    Ok(TiltingReport {
        plus: interior_residual(&lhs_plus, &rhs_plus, f.values()),
        minus: interior_residual(&lhs_minus, &rhs_minus, f.values()),
    })
}

/// [√(-2E) A₀ + α] applied to the Sturmian function with the energy of its
/// own radial number; vanishes when √(-2E)(n_r + k) = -α.
pub fn tilted_hamiltonian_residual(
    f: &RadialGrid,
    nr: u32,
    two_m: u32,
    params: &ModelParams,
) -> Result<f64> {
    let e = crate::model::energy(nr, two_m, params)?;
    let root = (-2.0 * e).sqrt();
    let a0 = TiltingOps::new(two_m, params).a0(f)?;
    let lhs: Vec<f64> = a0
        .values()
        .iter()
        .zip(f.values())
        .map(|(x, v)| root * x + params.alpha() * v)
        .collect();
    let zero = vec![0.0; f.len()];
    // scale by |α| f so the residual is relative to either term
    let scaled: Vec<f64> = f.values().iter().map(|v| params.alpha() * v).collect();
    Ok(interior_residual(&lhs, &zero, &scaled))
}

/// [½(A₀+A₁) - E(A₀-A₁) + α] applied to a physical eigenfunction of energy E.
pub fn generator_form_residual(
    f: &RadialGrid,
    energy: f64,
    two_m: u32,
    params: &ModelParams,
) -> Result<f64> {
    let ops = TiltingOps::new(two_m, params);
    let plus = ops.a0_plus_a1(f)?;
    let minus = ops.a0_minus_a1(f)?;
    let lhs: Vec<f64> = (0..f.len())
        .map(|i| {
            0.5 * plus.values()[i] - energy * minus.values()[i] + params.alpha() * f.values()[i]
        })
        .collect();
    let zero = vec![0.0; f.len()];
    let scaled: Vec<f64> = f.values().iter().map(|v| params.alpha() * v).collect();
    Ok(interior_residual(&lhs, &zero, &scaled))
}

/// k for the representation carried by angular number m.
pub fn representation_index(two_m: u32, params: &ModelParams) -> f64 {
    bargmann_index(two_m, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{RadialState, Sturmian};
    use crate::QuantumNumbers;

    fn params(mu1: f64, mu2: f64, alpha: f64) -> ModelParams {
        ModelParams::new(mu1, mu2, alpha).unwrap()
    }

    fn grid<F: Fn(f64) -> f64>(f: F) -> RadialGrid {
        RadialGrid::uniform(0.02, 0.02, 2000, 0.0, f).unwrap()
    }

    #[test]
    fn matrix_entries() {
        let rep = rep_matrices(2.0, 6).unwrap();
        assert_eq!(rep.kzero()[(0, 0)], 2.0);
        assert_eq!(rep.kplus()[(1, 0)], 2.0);
        assert_eq!(rep.kminus(), &rep.kplus().transpose());
        assert!(rep_matrices(0.0, 4).is_err());
        assert!(rep_matrices(1.0, 1).is_err());
    }

    #[test]
    fn ladder_commutator_on_safe_block() {
        let rep = rep_matrices(1.5, 20).unwrap();
        let c = commutator(rep.kminus(), rep.kplus()) - 2.0 * rep.kzero();
        assert!(block_max_abs(&c, 19) < 1e-12);
        // the last diagonal entry carries the truncation
        assert!(c[(19, 19)].abs() > 1.0);
    }

    #[test]
    fn algebra_report_exact_parts() {
        let r = check_algebra(3.7, 32).unwrap();
        assert_eq!(r.k0_kplus, 0.0);
        assert_eq!(r.k0_kminus, 0.0);
        assert!(r.casimir < 1e-12);
        assert!(r.ladder < 1e-12);
    }

    #[test]
    fn a0_minus_a1_is_multiplication_by_r() {
        let p = params(0.3, 0.2, -1.0);
        let f = grid(|r| (-r).exp());
        let out = TiltingOps::new(1, &p).a0_minus_a1(&f).unwrap();
        for ((r, v), o) in f.rs().iter().zip(f.values()).zip(out.values()) {
            assert!((o - r * v).abs() < 1e-12);
        }
    }

    #[test]
    fn a0_on_sturmian_ground() {
        let p = params(0.3, 0.2, -1.0);
        let st = Sturmian::new(0, 1, &p);
        let f = grid(|r| st.eval(r));
        let applied = apply_a0(&f, 1, &p).unwrap();
        let k = representation_index(1, &p);
        assert!(eigen_residual(&applied, &f, k) <= 1e-6);
    }

    #[test]
    fn rejects_non_uniform_grid() {
        let p = params(0.3, 0.2, -1.0);
        let rs: Vec<f64> = (1..100).map(|i| (i as f64 * 0.01).powi(2)).collect();
        let f = RadialGrid::sample(&rs, 0.0, |r| r).unwrap();
        assert!(apply_a0(&f, 0, &p).is_err());
    }

    #[test]
    fn l0_and_lowering_on_ground_state() {
        let p = params(0.3, 0.2, -1.0);
        let qn = QuantumNumbers::new(1, 0, 1, 0).unwrap();
        let st = RadialState::new(&qn, &p).unwrap();
        let f = grid(|r| st.eval(r));
        let ops = SchrodingerOps::new(1, &p, st.energy()).unwrap();
        let k = representation_index(1, &p);
        let l0 = ops.l0(&f).unwrap();
        assert!(eigen_residual(&l0, &f, k) <= 1e-6);
        let lm = ops.ladder(&f, Sign::Minus).unwrap();
        assert!(eigen_residual(&lm, &f, 0.0) <= 1e-5);
    }

    #[test]
    fn factorization_constants_consistent() {
        let p = params(0.3, 0.2, -1.0);
        let e = crate::model::energy(0, 1, &p).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let c = FactorizationConstants::new(sign, 1, &p, e).unwrap();
            assert_eq!(c.a, c.c);
            assert!((c.b * c.f - separation_constant(1, &p) - c.g).abs() < 1e-12);
        }
        assert!(FactorizationConstants::new(Sign::Plus, 1, &p, 0.1).is_err());
    }

    #[test]
    fn tilting_identity_transform() {
        let p = params(0.3, 0.2, -1.0);
        let f = grid(|r| (-r).exp());
        let rep = check_tilting(&f, 0.0, 1, &p).unwrap();
        assert_eq!(rep.plus, 0.0);
        assert_eq!(rep.minus, 0.0);
    }

    #[test]
    fn tilting_minus_branch_closed_form() {
        let p = params(0.3, 0.2, -1.0);
        let f = grid(|r| (-r).exp());
        let rep = check_tilting(&f, 2f64.ln(), 1, &p).unwrap();
        assert!(rep.minus <= 1e-8, "{}", rep.minus);
    }

    #[test]
    fn casimir_realization_on_sturmian() {
        let p = params(0.3, 0.2, -1.0);
        let st = Sturmian::new(1, 1, &p);
        let f = grid(|r| st.eval(r));
        let c = TiltingOps::new(1, &p).casimir(&f).unwrap();
        let expected = crate::model::casimir_value(1, &p);
        let res = eigen_residual(&c, &f, expected);
        assert!(res <= 1e-5, "{res}");
    }

    #[test]
    fn factorization_on_eigenfunctions() {
        let p = params(0.3, 0.2, -1.0);
        for nr in 0..3 {
            let qn = QuantumNumbers::new(1, 0, 1, nr).unwrap();
            let st = RadialState::new(&qn, &p).unwrap();
            let f = grid(|r| st.eval(r));
            let ops = SchrodingerOps::new(1, &p, st.energy()).unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                let d = ops.factorization_defect(&f, sign).unwrap();
                let res = eigen_residual(&d, &f, 0.0);
                assert!(res <= 1e-5, "nr={nr} {sign:?} {res}");
            }
        }
    }

    #[test]
    fn tilting_plus_branch_on_sturmian() {
        let p = params(0.3, 0.2, -1.0);
        let st = Sturmian::new(1, 1, &p);
        let f = grid(|r| st.eval(r));
        let a = (-2.0 * crate::model::energy(1, 1, &p).unwrap()).sqrt();
        let rep = check_tilting(&f, a.ln(), 1, &p).unwrap();
        assert!(rep.plus <= 1e-5, "{}", rep.plus);
        assert!(rep.minus <= 1e-12, "{}", rep.minus);
    }

    #[test]
    fn tilted_hamiltonian_vanishes() {
        let p = params(0.3, 0.2, -1.0);
        for nr in 0..=3 {
            let st = Sturmian::new(nr, 1, &p);
            let f = grid(|r| st.eval(r));
            let res = tilted_hamiltonian_residual(&f, nr, 1, &p).unwrap();
            assert!(res <= 1e-5, "nr={nr} {res}");
        }
    }

    #[test]
    fn generator_form_vanishes_on_eigenfunctions() {
        let p = params(0.3, 0.2, -1.0);
        for nr in 0..3 {
            let qn = QuantumNumbers::new(0, 1, 1, nr).unwrap();
            let st = RadialState::new(&qn, &p).unwrap();
            let f = grid(|r| st.eval(r));
            let res = generator_form_residual(&f, st.energy(), 1, &p).unwrap();
            assert!(res <= 1e-5, "nr={nr} {res}");
        }
    }
}
