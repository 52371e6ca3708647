//! Finite-difference derivatives on uniform grids.
//!
//! Stencils are 9 points wide (8th order). On open grids the stencil is
//! shifted inwards near the ends; periodic grids wrap around.

pub const STENCIL: usize = 9;
const HALF: usize = STENCIL / 2;

/// Fornberg's algorithm: weights for derivatives 0..=max_order at `z` from
/// nodes `x`. Returns `w[order][node]`.
pub fn fornberg_weights(z: f64, x: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Precomputed stencils for the first and second derivative on a uniform
/// grid of spacing `h`.
#[derive(Debug, Clone)]
pub struct Stencils {
    h: f64,
    // indexed by the offset of the evaluation point inside the stencil
    d1: Vec<[f64; STENCIL]>,
    d2: Vec<[f64; STENCIL]>,
}

impl Stencils {
    pub fn new(h: f64) -> Self {
        let nodes: Vec<f64> = (0..STENCIL).map(|i| i as f64).collect();
        let mut d1 = Vec::with_capacity(STENCIL);
        let mut d2 = Vec::with_capacity(STENCIL);
        for pos in 0..STENCIL {
            let w = fornberg_weights(pos as f64, &nodes, 2);
            let mut a = [0.0; STENCIL];
            let mut b = [0.0; STENCIL];
            for i in 0..STENCIL {
                a[i] = w[1][i] / h;
                b[i] = w[2][i] / (h * h);
            }
            d1.push(a);
            d2.push(b);
        }
        Self { h, d1, d2 }
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// First derivative of samples on an open uniform grid.
    pub fn first(&self, f: &[f64]) -> Vec<f64> {
        apply_open(f, &self.d1)
    }

    /// Second derivative of samples on an open uniform grid.
    pub fn second(&self, f: &[f64]) -> Vec<f64> {
        apply_open(f, &self.d2)
    }

    /// First derivative on a periodic grid.
    pub fn first_periodic(&self, f: &[f64]) -> Vec<f64> {
        apply_periodic(f, &self.d1[HALF])
    }

    /// Second derivative on a periodic grid.
    pub fn second_periodic(&self, f: &[f64]) -> Vec<f64> {
        apply_periodic(f, &self.d2[HALF])
    }
}

fn apply_open(f: &[f64], table: &[[f64; STENCIL]]) -> Vec<f64> {
    let n = f.len();
    assert!(n >= STENCIL, "grid needs at least {STENCIL} points");
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(HALF).min(n - STENCIL);
            let w = &table[i - start];
            w.iter()
                .zip(&f[start..start + STENCIL])
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

fn apply_periodic(f: &[f64], w: &[f64; STENCIL]) -> Vec<f64> {
    let n = f.len();
    assert!(n >= STENCIL, "grid needs at least {STENCIL} points");
    (0..n)
        .map(|i| {
            w.iter()
                .enumerate()
                .map(|(j, c)| c * f[(i + n + j - HALF) % n])
                .sum()
        })
        .collect()
}
