use std::f64::consts::PI;

use crate::error::{domain as domain_error, Result};

/// Integration interval of a rule. Semi-infinite integrals are truncated at
/// `r_max`, chosen by the caller from the decay rate of the integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite { lo: f64, hi: f64 },
    SemiInfinite { r_max: f64 },
}

impl Domain {
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Domain::Finite { lo, hi } => (lo, hi),
            Domain::SemiInfinite { r_max } => (0.0, r_max),
        }
    }

    /// Truncation radius for an integrand decaying like e^{-c r}: e^{-c R} < 1e-16.
    pub fn semi_infinite_for_decay(c: f64) -> Self {
        Domain::SemiInfinite { r_max: 60.0 / c }
    }
}

/// Composite Gauss–Legendre rule. Weight functions are folded into the
/// integrand, so one rule serves every measure.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
}

impl QuadratureRule {
    /// `panels` equal panels with `points` Gauss–Legendre nodes each.
    pub fn composite(domain: Domain, panels: usize, points: usize) -> Result<Self> {
        if panels < 1 || points < 2 {
            return Err(domain_err(panels, points));
        }
        let (lo, hi) = checked_bounds(domain)?;
        let h = (hi - lo) / panels as f64;
        let breaks: Vec<f64> = (0..=panels)
            .map(|i| if i == panels { hi } else { lo + h * i as f64 })
            .collect();
        Self::from_breakpoints(domain, &breaks, points)
    }

    /// Like [`composite`](Self::composite), but the first and/or last panel is
    /// split geometrically (`levels` sub-panels shrinking by `ratio`) so that
    /// integrands with algebraic endpoint singularities such as x^β converge
    /// exponentially.
    pub fn graded(
        domain: Domain,
        panels: usize,
        points: usize,
        levels: usize,
        ratio: f64,
        grade_lo: bool,
        grade_hi: bool,
    ) -> Result<Self> {
        if panels < 1 || points < 2 {
            return Err(domain_err(panels, points));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(domain_error(format!(
                "grading ratio must lie in (0, 1), got {ratio}"
            )));
        }
        let (lo, hi) = checked_bounds(domain)?;
        let breaks = graded_breakpoints(lo, hi, panels, levels, ratio, grade_lo, grade_hi);
        Self::from_breakpoints(domain, &breaks, points)
    }

    /// Gauss–Legendre panels between consecutive (strictly increasing) breakpoints.
    pub fn from_breakpoints(domain: Domain, breaks: &[f64], points: usize) -> Result<Self> {
        if breaks.len() < 2 || points < 2 {
            return Err(domain_error(
                "need at least one panel and two points per panel",
            ));
        }
        if breaks.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain_error("breakpoints must be strictly increasing"));
        }
        let (ref_nodes, ref_weights) = gauss_legendre(points);
        let mut nodes = Vec::with_capacity((breaks.len() - 1) * points);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for w in breaks.windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            let mid = 0.5 * (w[1] + w[0]);
            for (x, wt) in ref_nodes.iter().zip(&ref_weights) {
                nodes.push(mid + half * x);
                weights.push(half * wt);
            }
        }
        Ok(Self {
            nodes,
            weights,
            domain,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Σ w_i a_i b_i for values already sampled on the nodes.
    pub fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(a.iter().zip(b))
            .map(|(w, (x, y))| w * x * y)
            .sum()
    }
}

/// Breakpoints of `panels` equal panels on [lo, hi] whose end panels are
/// subdivided geometrically toward the endpoint.
pub fn graded_breakpoints(
    lo: f64,
    hi: f64,
    panels: usize,
    levels: usize,
    ratio: f64,
    grade_lo: bool,
    grade_hi: bool,
) -> Vec<f64> {
    let h = (hi - lo) / panels as f64;
    // sub-panels narrower than a few ulps of the endpoint are dropped
    let resolvable = |end: f64, j: usize| h * ratio.powi(j as i32) > 8.0 * f64::EPSILON * end.abs();
    let mut breaks = Vec::with_capacity(panels + 2 * levels + 1);
    breaks.push(lo);
    if grade_lo {
        for j in (1..=levels).rev().filter(|&j| resolvable(lo, j)) {
            breaks.push(lo + h * ratio.powi(j as i32));
        }
    }
    for i in 1..panels {
        breaks.push(lo + h * i as f64);
    }
    if grade_hi {
        for j in (1..=levels).filter(|&j| resolvable(hi, j)) {
            breaks.push(hi - h * ratio.powi(j as i32));
        }
    }
    breaks.push(hi);
    breaks
}

fn domain_err(panels: usize, points: usize) -> crate::Error {
    domain_error(format!(
        "quadrature needs panels >= 1 and points_per_panel >= 2, got {panels} and {points}"
    ))
}

fn checked_bounds(d: Domain) -> Result<(f64, f64)> {
    let (lo, hi) = d.bounds();
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(domain_error(format!(
            "invalid quadrature interval [{lo}, {hi}]"
        )));
    }
    Ok((lo, hi))
}

/// Nodes (ascending) and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess, then Newton on P_n
        let theta = PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut x = theta.cos() * (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_full_circle() {
        let rule = QuadratureRule::composite(
            Domain::Finite {
                lo: 0.0,
                hi: 2.0 * PI,
            },
            1,
            2,
        )
        .unwrap();
        assert!((rule.integrate(|_| 1.0) - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn exact_to_degree_2p_minus_1() {
        let rule = QuadratureRule::composite(Domain::Finite { lo: 0.0, hi: 1.0 }, 1, 5).unwrap();
        assert!((rule.integrate(|x| x.powi(9)) - 0.1).abs() < 1e-15);
        // degree 10 is not integrated exactly
        assert!((rule.integrate(|x| x.powi(10)) - 1.0 / 11.0).abs() > 1e-9);
    }

    #[test]
    fn exponential_tail() {
        let rule = QuadratureRule::composite(Domain::SemiInfinite { r_max: 60.0 }, 64, 20).unwrap();
        assert!((rule.integrate(|x| (-x).exp()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn graded_rule_handles_root_singularity() {
        let d = Domain::Finite { lo: 0.0, hi: 1.0 };
        let rule = QuadratureRule::graded(d, 4, 16, 30, 0.15, true, true).unwrap();
        // ∫₀¹ x^{0.2} (1-x)^{0.6} dx = B(1.2, 1.6)
        let exact = (crate::log_gamma(1.2).unwrap() + crate::log_gamma(1.6).unwrap()
            - crate::log_gamma(2.8).unwrap())
        .exp();
        let got = rule.integrate(|x| x.powf(0.2) * (1.0 - x).powf(0.6));
        assert!((got - exact).abs() < 1e-13, "{got} vs {exact}");
    }

    #[test]
    fn rejects_bad_arguments() {
        let d = Domain::Finite { lo: 0.0, hi: 1.0 };
        assert!(QuadratureRule::composite(d, 0, 4).is_err());
        assert!(QuadratureRule::composite(d, 2, 1).is_err());
        assert!(QuadratureRule::composite(Domain::Finite { lo: 1.0, hi: 1.0 }, 2, 4).is_err());
    }

    #[test]
    fn reference_rule_sums_to_two() {
        for n in 2..64 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
            assert!(x.windows(2).all(|p| p[1] > p[0]));
        }
    }
}
