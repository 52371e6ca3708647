//! Model parameters, quantum numbers and the closed-form scalar quantities:
//! separation constant, Bargmann index and bound-state energies.
//!
//! The angular quantum number m is integer or half-integer, so it is carried
//! everywhere as `two_m = 2m`, an exact integer.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Physical configuration (μ₁, μ₂, α).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    mu1: f64,
    mu2: f64,
    alpha: f64,
}

impl ModelParams {
    /// Both deformation parameters must be positive, or both exactly zero
    /// (the undeformed 2-D hydrogen atom).
    pub fn new(mu1: f64, mu2: f64, alpha: f64) -> Result<Self> {
        if !(mu1.is_finite() && mu2.is_finite() && alpha.is_finite()) {
            return Err(domain("model parameters must be finite"));
        }
        let undeformed = mu1 == 0.0 && mu2 == 0.0;
        if !undeformed && !(mu1 > 0.0 && mu2 > 0.0) {
            return Err(domain(format!(
                "mu1 and mu2 must both be positive (or both zero), got {mu1}, {mu2}"
            )));
        }
        Ok(Self { mu1, mu2, alpha })
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// μ₁ + μ₂
    pub fn mu_sum(&self) -> f64 {
        self.mu1 + self.mu2
    }

    /// Same deformation, different coupling.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.mu1, self.mu2, alpha)
    }

    /// Bound states exist only for an attractive coupling.
    pub fn require_bound(&self) -> Result<()> {
        if self.alpha < 0.0 {
            Ok(())
        } else {
            Err(Error::NoBoundState(self.alpha))
        }
    }
}

/// Reflection parities (e₁, e₂), angular number m (as 2m) and radial number n_r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    e1: u8,
    e2: u8,
    two_m: u32,
    nr: u32,
}

impl QuantumNumbers {
    pub fn new(e1: u8, e2: u8, two_m: u32, nr: u32) -> Result<Self> {
        if e1 > 1 || e2 > 1 {
            return Err(Error::QuantumNumbers(format!(
                "parities must be 0 or 1, got ({e1}, {e2})"
            )));
        }
        let parity = u32::from(e1 + e2);
        if two_m < parity || (two_m - parity) % 2 != 0 {
            return Err(Error::QuantumNumbers(format!(
                "m = {} is not allowed in sector (e1, e2) = ({e1}, {e2})",
                two_m as f64 / 2.0
            )));
        }
        Ok(Self { e1, e2, two_m, nr })
    }

    /// Smallest admissible m in a parity sector: 0, 1/2, 1/2 or 1.
    pub fn lowest(e1: u8, e2: u8, nr: u32) -> Result<Self> {
        Self::new(e1, e2, u32::from(e1 + e2), nr)
    }

    pub fn e1(&self) -> u8 {
        self.e1
    }

    pub fn e2(&self) -> u8 {
        self.e2
    }

    pub fn two_m(&self) -> u32 {
        self.two_m
    }

    pub fn m(&self) -> f64 {
        f64::from(self.two_m) / 2.0
    }

    pub fn nr(&self) -> u32 {
        self.nr
    }

    /// Degree m - e₁/2 - e₂/2 of the Jacobi polynomial in Φ.
    pub fn jacobi_degree(&self) -> usize {
        ((self.two_m - u32::from(self.e1 + self.e2)) / 2) as usize
    }

    pub fn with_nr(&self, nr: u32) -> Self {
        Self { nr, ..*self }
    }
}

/// Derived quantities for one state: s², k, E and a = √(-2E).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralData {
    pub s2: f64,
    pub k: f64,
    pub energy: f64,
    pub a: f64,
}

impl SpectralData {
    pub fn new(qn: &QuantumNumbers, params: &ModelParams) -> Result<Self> {
        let energy = energy(qn.nr(), qn.two_m(), params)?;
        Ok(Self {
            s2: separation_constant(qn.two_m(), params),
            k: bargmann_index(qn.two_m(), params),
            energy,
            a: (-2.0 * energy).sqrt(),
        })
    }
}

/// s² = 4m(m + μ₁ + μ₂)
pub fn separation_constant(two_m: u32, params: &ModelParams) -> f64 {
    let m = f64::from(two_m) / 2.0;
    4.0 * m * (m + params.mu_sum())
}

/// Positive branch k = 2m + μ₁ + μ₂ + 1/2 of the Casimir relation
/// k(k-1) = s² - 1/4 + (μ₁+μ₂)².
pub fn bargmann_index(two_m: u32, params: &ModelParams) -> f64 {
    f64::from(two_m) + params.mu_sum() + 0.5
}

/// Casimir eigenvalue s² - 1/4 + (μ₁+μ₂)².
pub fn casimir_value(two_m: u32, params: &ModelParams) -> f64 {
    let mu = params.mu_sum();
    separation_constant(two_m, params) - 0.25 + mu * mu
}

/// E = -α² / (2 (n_r + 2m + μ₁ + μ₂ + 1/2)²)
pub fn energy(nr: u32, two_m: u32, params: &ModelParams) -> Result<f64> {
    params.require_bound()?;
    // the integer part N = n_r + 2m is summed first so degenerate levels agree bitwise
    let denom = f64::from(nr + two_m) + params.mu_sum() + 0.5;
    Ok(-params.alpha() * params.alpha() / (2.0 * denom * denom))
}

/// Energy expressed through the coherent-state displacement modulus |ξ|:
/// E = -α² / (2 k² cosh²(2|ξ|)).
pub fn coherent_energy(xi_modulus: f64, two_m: u32, params: &ModelParams) -> Result<f64> {
    params.require_bound()?;
    if !(xi_modulus >= 0.0) || !xi_modulus.is_finite() {
        return Err(domain(format!(
            "coherent parameter modulus must be finite and non-negative, got {xi_modulus}"
        )));
    }
    let k = bargmann_index(two_m, params);
    let c = (2.0 * xi_modulus).cosh();
    Ok(-params.alpha() * params.alpha() / (2.0 * k * k * c * c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(mu1: f64, mu2: f64, alpha: f64) -> ModelParams {
        ModelParams::new(mu1, mu2, alpha).unwrap()
    }

    #[test]
    fn separation_constant_examples() {
        assert_eq!(separation_constant(0, &params(0.4, 0.9, -1.0)), 0.0);
        assert_eq!(separation_constant(1, &params(0.0, 0.0, -1.0)), 1.0);
        assert_eq!(separation_constant(2, &params(0.3, 0.7, -1.0)), 8.0);
    }

    #[test]
    fn bargmann_examples() {
        assert_eq!(bargmann_index(0, &params(0.0, 0.0, -1.0)), 0.5);
        assert_eq!(bargmann_index(1, &params(0.3, 0.2, -1.0)), 2.0);
        let p = params(0.0, 0.0, -1.0);
        let k = bargmann_index(1, &p);
        assert_eq!(k * (k - 1.0), 0.75);
        assert_eq!(casimir_value(1, &p), 0.75);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(0, 0, &params(0.0, 0.0, -1.0)).unwrap(), -2.0);
        let e = energy(1, 1, &params(0.3, 0.2, -2.0)).unwrap();
        assert!((e + 2.0 / 9.0).abs() < 1e-15);
        assert_eq!(energy(0, 0, &params(0.3, 0.2, -1.0)).unwrap(), -0.5);
    }

    #[test]
    fn energy_rejects_repulsive_coupling() {
        assert_eq!(
            energy(0, 0, &params(0.3, 0.2, 1.0)),
            Err(Error::NoBoundState(1.0))
        );
        assert!(energy(0, 0, &params(0.3, 0.2, 0.0)).is_err());
        assert!(coherent_energy(0.1, 0, &params(0.3, 0.2, 0.5)).is_err());
    }

    #[test]
    fn coherent_energy_examples() {
        let p = params(0.0, 0.0, -1.0);
        assert_eq!(coherent_energy(0.0, 0, &p).unwrap(), -2.0);
        let c = 1f64.cosh();
        assert!((coherent_energy(0.5, 0, &p).unwrap() + 2.0 / (c * c)).abs() < 1e-15);
        assert!(coherent_energy(-0.1, 0, &p).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0.0, 0.0, -1.0).is_ok());
        assert!(ModelParams::new(0.3, 0.0, -1.0).is_err());
        assert!(ModelParams::new(-0.3, 0.2, -1.0).is_err());
        assert!(ModelParams::new(0.3, 0.2, f64::NAN).is_err());
    }

    #[test]
    fn quantum_number_sectors() {
        assert!(QuantumNumbers::new(0, 0, 0, 0).is_ok());
        assert!(QuantumNumbers::new(0, 0, 1, 0).is_err());
        assert!(QuantumNumbers::new(1, 0, 1, 0).is_ok());
        assert!(QuantumNumbers::new(0, 1, 0, 0).is_err());
        assert!(QuantumNumbers::new(1, 1, 0, 0).is_err());
        assert!(QuantumNumbers::new(1, 1, 2, 0).is_ok());
        assert!(QuantumNumbers::new(2, 0, 2, 0).is_err());
        assert_eq!(QuantumNumbers::new(1, 1, 6, 0).unwrap().jacobi_degree(), 2);
        assert_eq!(QuantumNumbers::lowest(0, 1, 3).unwrap().m(), 0.5);
    }

    #[test]
    fn spectral_data_consistency() {
        let p = params(0.3, 0.7, -1.3);
        let qn = QuantumNumbers::new(1, 1, 4, 2).unwrap();
        let sd = SpectralData::new(&qn, &p).unwrap();
        assert!((sd.k * (sd.k - 1.0) - casimir_value(4, &p)).abs() < 1e-13);
        assert!((sd.a * sd.a + 2.0 * sd.energy).abs() < 1e-15);
        assert!((sd.a * (2.0 + sd.k) + p.alpha()).abs() < 1e-12);
    }
}
