//! Symmetric eigenvalue solvers: Sturm-sequence bisection for tridiagonal
//! matrices and a dense fallback.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Relative asymmetry accepted by the dense path.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Grid(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, &e) in self.off.iter().enumerate() {
            m[(i, i + 1)] = e;
            m[(i + 1, i)] = e;
        }
        m
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let prev = if q == 0.0 {
                f64::EPSILON * (1.0 + x.abs())
            } else {
                q
            };
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `count` lowest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        let count = count.min(self.dim());
        let (glo, ghi) = self.gershgorin();
        let scale = glo.abs().max(ghi.abs()).max(f64::MIN_POSITIVE);
        (0..count)
            .map(|j| {
                let (mut lo, mut hi) = (glo, ghi);
                // invariant: count_below(lo) <= j < count_below(hi)
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
                        break;
                    }
                    if self.count_below(mid) > j {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }
}

/// Symmetric matrix in either storage.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricMatrix {
    Tridiagonal(Tridiagonal),
    Dense(DMatrix<f64>),
}

impl From<Tridiagonal> for SymmetricMatrix {
    fn from(t: Tridiagonal) -> Self {
        SymmetricMatrix::Tridiagonal(t)
    }
}

impl From<DMatrix<f64>> for SymmetricMatrix {
    fn from(m: DMatrix<f64>) -> Self {
        SymmetricMatrix::Dense(m)
    }
}

impl SymmetricMatrix {
    pub fn dim(&self) -> usize {
        match self {
            SymmetricMatrix::Tridiagonal(t) => t.dim(),
            SymmetricMatrix::Dense(m) => m.nrows(),
        }
    }

    /// ‖M - Mᵀ‖_∞ / ‖M‖_∞ (max-abs entry norms).
    pub fn asymmetry(&self) -> f64 {
        match self {
            SymmetricMatrix::Tridiagonal(_) => 0.0,
            SymmetricMatrix::Dense(m) => relative_asymmetry(m),
        }
    }

    /// The `count` lowest eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        match self {
            SymmetricMatrix::Tridiagonal(t) => Ok(t.lowest_eigenvalues(count)),
            SymmetricMatrix::Dense(m) => dense_lowest_eigenvalues(m, count),
        }
    }
}

pub fn relative_asymmetry(m: &DMatrix<f64>) -> f64 {
    let scale = m.amax();
    if scale == 0.0 {
        return 0.0;
    }
    (m - m.transpose()).amax() / scale
}

fn dense_lowest_eigenvalues(m: &DMatrix<f64>, count: usize) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Grid(format!(
            "matrix is {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let asym = relative_asymmetry(m);
    if !(asym <= SYMMETRY_TOL) {
        return Err(Error::NotSymmetric(asym));
    }
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.truncate(count);
    Ok(values)
}
