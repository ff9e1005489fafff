//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for
//! eigenvalues and inverse iteration for eigenvectors.

use crate::error::{invalid, Error, Result};

const MAX_BISECTION_STEPS: usize = 2_000;
const MAX_INVERSE_STEPS: usize = 8;

/// Real symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
    off_sq: Vec<f64>,
    pivmin: f64,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(invalid(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(invalid("tridiagonal entries must be finite"));
        }
        let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
        let max_sq = off_sq.iter().copied().fold(1.0_f64, f64::max);
        Ok(Self {
            diag,
            off,
            off_sq,
            pivmin: f64::MIN_POSITIVE * max_sq,
        })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off
    }

    /// The leading `size x size` principal submatrix.
    pub fn leading_block(&self, size: usize) -> Result<Self> {
        if size == 0 || size > self.len() {
            return Err(invalid(format!("block size {size} out of range")));
        }
        Self::new(self.diag[..size].to_vec(), self.off[..size - 1].to_vec())
    }

    /// Number of eigenvalues strictly below `lambda`: the count of negative
    /// pivots in the `LDL^T` factorisation of `T - lambda I`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        if q.abs() <= self.pivmin {
            q = -self.pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            q = (self.diag[i] - lambda) - self.off_sq[i - 1] / q;
            if q.abs() <= self.pivmin {
                q = -self.pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + self.pivmin;
        (lo - pad, hi + pad)
    }

    /// The `index`-th smallest eigenvalue (0-based), bisected until the
    /// bracket is narrower than `abs_tol` or cannot be split further.
    pub fn eigenvalue(&self, index: usize, abs_tol: f64) -> Result<f64> {
        if index >= self.len() {
            return Err(invalid(format!("eigenvalue index {index} out of range")));
        }
        let (mut lo, mut hi) = self.gershgorin_bounds();
        for _ in 0..MAX_BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= abs_tol || mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Convergence {
            iterations: MAX_BISECTION_STEPS,
        })
    }

    /// Eigenvalues with ascending indices in `range`.
    pub fn eigenvalues(&self, range: std::ops::Range<usize>, abs_tol: f64) -> Result<Vec<f64>> {
        range.map(|i| self.eigenvalue(i, abs_tol)).collect()
    }

    pub fn norm_inf(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Unit eigenvector for an (accurate) eigenvalue `lambda` by inverse
    /// iteration with a pivoted LU of `T - lambda I`.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let lu = ShiftedLu::factor(self, lambda);
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        let target = 1e3 * f64::EPSILON * self.norm_inf().max(1.0);
        for _ in 0..MAX_INVERSE_STEPS {
            lu.solve(&mut v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(Error::NumericRange("inverse iteration diverged".into()));
            }
            v.iter_mut().for_each(|x| *x /= norm);
            let tv = self.apply(&v);
            let residual = tv
                .iter()
                .zip(&v)
                .map(|(t, x)| (t - lambda * x).abs())
                .fold(0.0, f64::max);
            if residual <= target {
                return Ok(v);
            }
        }
        Err(Error::Convergence {
            iterations: MAX_INVERSE_STEPS,
        })
    }
}

const RESCALE_ABOVE: f64 = 1e150;

/// LU factorisation of `T - lambda I` with partial pivoting; `U` gains a
/// second superdiagonal from row swaps.
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, lambda: f64) -> Self {
        let n = t.len();
        let mut dl = t.off.clone();
        let mut du = t.off.clone();
        let mut d: Vec<f64> = t.diag.iter().map(|x| x - lambda).collect();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        // an exact eigenvalue makes the factor singular; nudge zero pivots
        let tiny = f64::EPSILON * t.norm_inf().max(f64::MIN_POSITIVE);
        for p in d.iter_mut() {
            if p.abs() < tiny {
                *p = if p.is_sign_negative() { -tiny } else { tiny };
            }
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
            // the system is linear, so rescaling all of b keeps it consistent
            if b[i].abs() > RESCALE_ABOVE {
                b.iter_mut().for_each(|x| *x /= RESCALE_ABOVE);
            }
        }
    }
}
