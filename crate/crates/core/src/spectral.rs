//! Spectral problem of the position operator.
//!
//! The position operator is a Jacobi matrix with off-diagonal entries
//! `γ, √1, γ, √2, ...`. Its generalized eigenvectors are built from the
//! polynomials `p_n(x)` of the matching three-term recurrence, which are
//! symmetrized Charlier polynomials in `x^2`. The spectrum is the discrete
//! set `{±√k : k >= 0}`. This module computes `p_n` three ways: by the
//! recurrence, by the Charlier closed form, and by diagonalizing the
//! truncated matrix.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::fock::{position_matrix, position_off_diagonal, FockTruncation, ModelParams};
use crate::special::{
    charlier, charlier_at_integer, charlier_exact, exact_ln_abs, ln_factorial, ExactScalar,
};
use crate::tridiag::SymTridiagonal;

/// Smallest window half-width used by [`SpectrumWindow::adaptive`].
pub const MIN_WINDOW_K: u64 = 40;
/// Relative Poisson mass allowed outside an adaptive window.
pub const WINDOW_TAIL_EPS: f64 = 1e-14;
/// Largest squared orthonormal function allowed at the edge of a
/// degree-aware window.
pub const DEGREE_WINDOW_EPS: f64 = 1e-17;
/// Regression bound on `max |λ - (±√k)|` over the 21 central eigenvalues at
/// `N = 2048`; the measured error is one ulp of `√10`.
pub const CENTRAL_SPECTRUM_ERROR_BOUND: f64 = 2e-15;
/// Threshold for picking the component used to fix an eigenvector's sign.
pub const SIGN_ALIGN_THRESHOLD: f64 = 1e-8;

/// A point `x = sign * √k` of the spectrum, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportPoint {
    sign: i8,
    k: u64,
}

impl SupportPoint {
    /// `sign` must be `0` exactly when `k == 0`, and `±1` otherwise.
    pub fn new(sign: i8, k: u64) -> Result<Self> {
        match (sign, k) {
            (0, 0) => Ok(Self { sign, k }),
            (-1 | 1, k) if k > 0 => Ok(Self { sign, k }),
            _ => Err(invalid(format!(
                "invalid support point (sign {sign}, k {k})"
            ))),
        }
    }

    pub const fn origin() -> Self {
        Self { sign: 0, k: 0 }
    }

    /// `+√k`, or the origin for `k = 0`.
    pub const fn plus(k: u64) -> Self {
        Self {
            sign: if k == 0 { 0 } else { 1 },
            k,
        }
    }

    /// `-√k`, or the origin for `k = 0`.
    pub const fn minus(k: u64) -> Self {
        Self {
            sign: if k == 0 { 0 } else { -1 },
            k,
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// `x^2`.
    pub fn k(self) -> u64 {
        self.k
    }

    pub fn is_origin(self) -> bool {
        self.k == 0
    }

    pub fn value(self) -> f64 {
        f64::from(self.sign) * (self.k as f64).sqrt()
    }

    pub fn negated(self) -> Self {
        Self {
            sign: -self.sign,
            k: self.k,
        }
    }
}

impl fmt::Display for SupportPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => f.write_str("0"),
            1 => write!(f, "+√{}", self.k),
            _ => write!(f, "-√{}", self.k),
        }
    }
}

/// The finite view `{-√k_max, ..., -1, 0, 1, ..., √k_max}` of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpectrumWindow {
    k_max: u64,
}

impl SpectrumWindow {
    pub fn new(k_max: u64) -> Result<Self> {
        if k_max == 0 {
            return Err(invalid("window needs k_max >= 1"));
        }
        Ok(Self { k_max })
    }

    /// Smallest `k_max >= 40` whose neglected Poisson mass is below
    /// `1e-14` of the total.
    pub fn adaptive(params: ModelParams) -> Self {
        let a = params.a();
        let mut k_max = MIN_WINDOW_K;
        while poisson_tail_fraction(a, k_max) >= WINDOW_TAIL_EPS {
            k_max += 1;
        }
        Self { k_max }
    }

    /// [`adaptive`](Self::adaptive), widened until every `p̃_n^2` with
    /// `n <= n_max` is below [`DEGREE_WINDOW_EPS`] at the edge and the
    /// envelope `a^k/k! (1 + k/a)^(2m)` decays at least geometrically with
    /// ratio 1/2 from there on.
    pub fn adaptive_for_degree(params: ModelParams, n_max: u64) -> Result<Self> {
        let a = params.a();
        let half = (n_max / 2 + 1) as f64;
        let mut k = Self::adaptive(params).k_max;
        loop {
            let kf = k as f64;
            let ratio = a / (kf + 1.0) * ((a + kf + 1.0) / (a + kf)).powf(2.0 * half);
            if ratio <= 0.5 {
                let mut edge = 0.0_f64;
                for n in 0..=n_max {
                    let v = p_tilde(n, SupportPoint::plus(k), params)?;
                    edge = edge.max(v * v);
                }
                if edge < DEGREE_WINDOW_EPS {
                    return Ok(Self { k_max: k });
                }
            }
            k += 1;
            if k > 1_000_000 {
                return Err(Error::TailBound {
                    eps: DEGREE_WINDOW_EPS,
                    cap: 1_000_000,
                });
            }
        }
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    pub fn len(&self) -> usize {
        2 * self.k_max as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Points in increasing order of value.
    pub fn points(&self) -> impl Iterator<Item = SupportPoint> + '_ {
        let negatives = (1..=self.k_max).rev().map(SupportPoint::minus);
        let rest = (0..=self.k_max).map(SupportPoint::plus);
        negatives.chain(rest)
    }
}

/// `sum_{j > k} e^{-a} a^j / j!`, bounded above by a geometric series once
/// `k + 2 > a`; returns `1` before that point.
pub fn poisson_tail_fraction(a: f64, k: u64) -> f64 {
    let next = (k + 1) as f64;
    let ratio = a / (next + 1.0);
    if ratio >= 1.0 {
        return 1.0;
    }
    let ln_term = -a + next * a.ln() - ln_factorial(k + 1);
    (ln_term.exp() / (1.0 - ratio)).min(1.0)
}

/// `p_0(x), ..., p_{n_max}(x)` from the Jacobi recurrence
/// `x p_n = c_{n-1} p_{n-1} + c_n p_{n+1}` with `p_{-1} = 0`, `p_0 = 1`.
pub fn p_recurrence(n_max: usize, x: f64, params: ModelParams) -> Vec<f64> {
    let c = position_off_diagonal(params, n_max);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    let mut prev = 0.0;
    for n in 0..n_max {
        let below = if n == 0 { 0.0 } else { c[n - 1] };
        let next = (x * out[n] - below * prev) / c[n];
        prev = out[n];
        out.push(next);
    }
    out
}

/// `p_n(x)` from the Charlier closed form:
/// `p_{2m} = (-γ)^m / √(m!) C_m(x^2; γ^2)` and
/// `p_{2m+1} = -(-γ)^(m-1) / √(m!) x C_m(x^2 - 1; γ^2)`.
pub fn p_closed_form(n: u64, x: f64, params: ModelParams) -> Result<f64> {
    let cp = crate::special::CharlierParams::new(params.a())?;
    let m = n / 2;
    let scale = (-params.gamma()).powi(m as i32) / (0.5 * ln_factorial(m)).exp();
    if n.is_multiple_of(2) {
        Ok(scale * charlier(m, x * x, cp)?)
    } else {
        Ok(scale / params.gamma() * x * charlier(m, x * x - 1.0, cp)?)
    }
}

/// [`p_closed_form`] at an exact support point, evaluated in log space.
pub fn p_closed_form_at(n: u64, x: SupportPoint, params: ModelParams) -> Result<f64> {
    let m = n / 2;
    let k = x.k;
    let gamma = params.gamma();
    let (charlier_value, ln_scale, sign) = if n.is_multiple_of(2) {
        let c = charlier_at_integer(m, k, params.a())?;
        (c, m as f64 * gamma.ln(), m % 2 == 1)
    } else {
        if x.is_origin() {
            return Ok(0.0);
        }
        let c = charlier_at_integer(m, k - 1, params.a())?;
        let ln = (m as f64 - 1.0) * gamma.ln() + 0.5 * (k as f64).ln();
        (c, ln, (m % 2 == 1) != (x.sign < 0))
    };
    assemble(ln_scale - 0.5 * ln_factorial(m), sign, charlier_value)
}

fn assemble(ln_prefactor: f64, negate: bool, polynomial: f64) -> Result<f64> {
    if polynomial == 0.0 {
        return Ok(0.0);
    }
    let magnitude = (ln_prefactor + polynomial.abs().ln()).exp();
    if !magnitude.is_finite() {
        return Err(Error::NumericRange("log-space assembly overflowed".into()));
    }
    let negative = negate != (polynomial < 0.0);
    Ok(if negative { -magnitude } else { magnitude })
}

/// `ln w(x)`, with `w(0) = 1` and `w(±√k) = γ^(2k) / (2 k!)`.
pub fn ln_weight(x: SupportPoint, params: ModelParams) -> f64 {
    if x.is_origin() {
        0.0
    } else {
        let k = x.k;
        k as f64 * params.a().ln() - ln_factorial(k) - std::f64::consts::LN_2
    }
}

pub fn weight(x: SupportPoint, params: ModelParams) -> f64 {
    ln_weight(x, params).exp()
}

/// Orthonormal function `p̃_n(x) = e^{-γ²/2} √w(x) p_n(x)` at a support point.
pub fn p_tilde(n: u64, x: SupportPoint, params: ModelParams) -> Result<f64> {
    let a = params.a();
    let ln_gamma = params.gamma().ln();
    let m = n / 2;
    let k = x.k;
    let sign_even = m % 2 == 1;
    if n.is_multiple_of(2) {
        let ln_delta = if x.is_origin() {
            0.0
        } else {
            -0.5 * std::f64::consts::LN_2
        };
        let ln_pref = ln_delta - 0.5 * a + (m + k) as f64 * ln_gamma
            - 0.5 * (ln_factorial(m) + ln_factorial(k));
        assemble(ln_pref, sign_even, charlier_at_integer(m, k, a)?)
    } else {
        if x.is_origin() {
            return Ok(0.0);
        }
        let ln_pref = -0.5 * std::f64::consts::LN_2 - 0.5 * a
            + (m as f64 + k as f64 - 1.0) * ln_gamma
            - 0.5 * (ln_factorial(m) + ln_factorial(k))
            + 0.5 * (k as f64).ln();
        assemble(
            ln_pref,
            sign_even != (x.sign < 0),
            charlier_at_integer(m, k - 1, a)?,
        )
    }
}

fn check_window_tail(params: ModelParams, window: SpectrumWindow) -> Result<()> {
    if poisson_tail_fraction(params.a(), window.k_max) >= WINDOW_TAIL_EPS {
        return Err(Error::TailBound {
            eps: WINDOW_TAIL_EPS,
            cap: window.k_max,
        });
    }
    Ok(())
}

/// `sum_{x in window} p̃_m(x) p̃_n(x)`. Each `±√k` pair is added together
/// before joining the running sum, so odd-parity products cancel exactly.
pub fn orthonormal_sum(m: u64, n: u64, params: ModelParams, window: SpectrumWindow) -> Result<f64> {
    check_window_tail(params, window)?;
    let term =
        |x: SupportPoint| -> Result<f64> { Ok(p_tilde(m, x, params)? * p_tilde(n, x, params)?) };
    let mut sum = term(SupportPoint::origin())?;
    for k in 1..=window.k_max {
        sum += term(SupportPoint::plus(k))? + term(SupportPoint::minus(k))?;
    }
    Ok(sum)
}

/// `sum_{x in window} w(x) p_m(x) p_n(x)`, which approaches `e^{γ²} δ_mn`.
pub fn orthogonality_sum(
    m: u64,
    n: u64,
    params: ModelParams,
    window: SpectrumWindow,
) -> Result<f64> {
    Ok(params.a().exp() * orthonormal_sum(m, n, params, window)?)
}

/// The first `N` coefficients `p̃_0(x), ..., p̃_{N-1}(x)` of the normalized
/// position eigenvector for eigenvalue `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorExpansion {
    pub x: SupportPoint,
    pub coefficients: Vec<f64>,
}

impl EigenvectorExpansion {
    pub fn norm_sq(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    /// `max |((q - x) v)_n|` over the interior rows `n < N - 2`.
    pub fn interior_residual(&self, params: ModelParams, trunc: FockTruncation) -> f64 {
        let qv = position_matrix(params, trunc).apply_real(&self.coefficients);
        let x = self.x.value();
        (0..trunc.interior())
            .map(|n| {
                (qv[n].re - x * self.coefficients[n])
                    .abs()
                    .max(qv[n].im.abs())
            })
            .fold(0.0, f64::max)
    }
}

pub fn eigenvector(
    x: SupportPoint,
    params: ModelParams,
    trunc: FockTruncation,
) -> Result<EigenvectorExpansion> {
    let coefficients = (0..trunc.dim() as u64)
        .map(|n| p_tilde(n, x, params))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenvectorExpansion { x, coefficients })
}

/// The Jacobi matrix diagonalized for the spectrum: the leading
/// `(N-1) x (N-1)` block of the truncated position operator.
///
/// An even-order truncation has characteristic polynomial `p_N ∝ C_{N/2}(x^2)`,
/// whose smallest root pair `±√y_1` collapses onto zero as `N` grows and so
/// doubles the eigenvalue 0. The odd-order block has `p_{N-1} ∝ x C(x^2 - 1)`:
/// zero is simple and every other eigenvalue converges to a distinct `±√k`.
pub fn spectral_jacobi_matrix(params: ModelParams, trunc: FockTruncation) -> SymTridiagonal {
    let size = trunc.dim() - 1;
    SymTridiagonal::new(vec![0.0; size], position_off_diagonal(params, size - 1))
        .expect("shape is consistent")
}

fn central_index(t: &SymTridiagonal) -> usize {
    (t.len() - 1) / 2
}

/// The `count` eigenvalues of the truncated Jacobi matrix nearest to zero,
/// ascending, by Sturm bisection to full double precision.
pub fn tridiagonal_eigenvalues(
    params: ModelParams,
    trunc: FockTruncation,
    count: usize,
) -> Result<Vec<f64>> {
    let t = spectral_jacobi_matrix(params, trunc);
    if count == 0 || count > t.len() {
        return Err(invalid(format!(
            "count must lie in 1..={}, got {count}",
            t.len()
        )));
    }
    let center = central_index(&t);
    let start = (center + 1)
        .saturating_sub(count.div_ceil(2))
        .min(t.len() - count);
    t.eigenvalues(start..start + count, 0.0)
}

/// Eigenvalue and unit eigenvector of the truncated Jacobi matrix that
/// approximate the spectral point `x`; the vector's sign is fixed by its
/// first component above [`SIGN_ALIGN_THRESHOLD`], matched to `p̃_n(x)`.
pub fn numerical_eigenpair(
    x: SupportPoint,
    params: ModelParams,
    trunc: FockTruncation,
) -> Result<(f64, Vec<f64>)> {
    let t = spectral_jacobi_matrix(params, trunc);
    let center = central_index(&t) as i64;
    let index = center + i64::from(x.sign) * x.k as i64;
    if index < 0 || index >= t.len() as i64 {
        return Err(invalid(format!(
            "support point {x} is outside the truncated spectrum"
        )));
    }
    let lambda = t.eigenvalue(index as usize, 0.0)?;
    let mut v = t.eigenvector(lambda)?;
    if let Some(i) = v.iter().position(|c| c.abs() > SIGN_ALIGN_THRESHOLD) {
        let reference = p_tilde(i as u64, x, params)?;
        if (reference < 0.0) != (v[i] < 0.0) {
            v.iter_mut().for_each(|c| *c = -*c);
        }
    }
    Ok((lambda, v))
}

/// Exact value `coeff * x^(n mod 2) / √(⌊n/2⌋!)` of `p_n(x)` at a support
/// point and rational `γ`.
///
/// The two irrational factors are the same for the recurrence and the
/// closed form, so equality of these values is equality of `p_n(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactP {
    pub coeff: BigRational,
    pub odd: bool,
    pub half_index: u64,
    pub x: SupportPoint,
}

impl ExactP {
    pub fn to_f64(&self) -> f64 {
        if self.coeff.is_zero() || (self.odd && self.x.is_origin()) {
            return 0.0;
        }
        let mut ln = exact_ln_abs(&self.coeff) - 0.5 * ln_factorial(self.half_index);
        let mut negative = self.coeff.is_negative();
        if self.odd {
            ln += 0.5 * (self.x.k as f64).ln();
            negative ^= self.x.sign < 0;
        }
        let v = ln.exp();
        if negative {
            -v
        } else {
            v
        }
    }
}

fn exact_integer(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_gamma(gamma: &ExactScalar) -> Result<()> {
    if gamma.is_zero() {
        Err(invalid("gamma must be nonzero"))
    } else {
        Ok(())
    }
}

/// Exact `p_0(x), ..., p_{n_max}(x)` from the recurrence, in the scaled form of
/// [`ExactP`]. With `P_n` the rational coefficient the recurrence reads
/// `P_{2m+1} = (P_{2m} - m P_{2m-1}) / γ` and `P_{2m+2} = k P_{2m+1} - γ P_{2m}`.
pub fn p_recurrence_exact(n_max: u64, x: SupportPoint, gamma: &ExactScalar) -> Result<Vec<ExactP>> {
    check_gamma(gamma)?;
    let k = exact_integer(x.k);
    let mut coeffs: Vec<BigRational> = vec![BigRational::one()];
    for n in 0..n_max {
        let m = n / 2;
        let next = if n % 2 == 0 {
            let below = if m == 0 {
                BigRational::zero()
            } else {
                &coeffs[n as usize - 1] * exact_integer(m)
            };
            (&coeffs[n as usize] - below) / gamma
        } else {
            &k * &coeffs[n as usize] - gamma * &coeffs[n as usize - 1]
        };
        coeffs.push(next);
    }
    Ok(coeffs
        .into_iter()
        .enumerate()
        .map(|(n, coeff)| ExactP {
            coeff,
            odd: n % 2 == 1,
            half_index: n as u64 / 2,
            x,
        })
        .collect())
}

/// Exact `p_n(x)` from the Charlier closed form, in the scaled form of [`ExactP`].
pub fn p_closed_form_exact(n: u64, x: SupportPoint, gamma: &ExactScalar) -> Result<ExactP> {
    check_gamma(gamma)?;
    let a = gamma * gamma;
    let m = n / 2;
    let power: BigRational = Pow::pow(-gamma.clone(), m as u32);
    let coeff = if n.is_multiple_of(2) {
        power * charlier_exact(m, &exact_integer(x.k), &a)?
    } else {
        let arg = exact_integer(x.k) - BigRational::one();
        // -(-γ)^(m-1) = (-γ)^m / γ
        power / gamma * charlier_exact(m, &arg, &a)?
    };
    Ok(ExactP {
        coeff,
        odd: n % 2 == 1,
        half_index: m,
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ratio;

    fn params(g: f64) -> ModelParams {
        ModelParams::new(g).unwrap()
    }

    #[test]
    fn support_point_validation() {
        assert!(SupportPoint::new(0, 3).is_err());
        assert!(SupportPoint::new(1, 0).is_err());
        assert!(SupportPoint::new(2, 4).is_err());
        assert_eq!(SupportPoint::new(-1, 4).unwrap().value(), -2.0);
        assert_eq!(SupportPoint::plus(0), SupportPoint::origin());
        assert_eq!(SupportPoint::minus(3).to_string(), "-√3");
    }

    #[test]
    fn window_enumeration() {
        let w = SpectrumWindow::new(3).unwrap();
        let xs: Vec<f64> = w.points().map(SupportPoint::value).collect();
        assert_eq!(xs.len(), 7);
        assert_eq!(w.len(), 7);
        assert!(xs.windows(2).all(|p| p[0] < p[1]));
        assert!(SpectrumWindow::new(0).is_err());
    }

    #[test]
    fn adaptive_window_has_floor() {
        assert_eq!(SpectrumWindow::adaptive(params(1.0)).k_max(), MIN_WINDOW_K);
        let wide = SpectrumWindow::adaptive(params(5.0)).k_max();
        assert!(wide > 60);
        assert!(poisson_tail_fraction(25.0, wide) < WINDOW_TAIL_EPS);
    }

    #[test]
    fn recurrence_first_terms() {
        let g = 0.8;
        let x = 1.7;
        let p = p_recurrence(4, x, params(g));
        assert_eq!(p[0], 1.0);
        assert!((p[1] - x / g).abs() < 1e-15);
        assert!((p[2] - (x * x / g - g)).abs() < 1e-14);
        let at_zero = p_recurrence(21, 0.0, params(g));
        assert!(at_zero.iter().skip(1).step_by(2).all(|&v| v == 0.0));
    }

    #[test]
    fn closed_form_first_terms() {
        let g = 1.3;
        for x in [0.0, 0.5, -2.0] {
            assert!((p_closed_form(1, x, params(g)).unwrap() - x / g).abs() < 1e-15);
        }
        for m in 0..10u64 {
            let expected = (-g).powi(m as i32) / (ln_factorial(m) * 0.5).exp();
            let got = p_closed_form(2 * m, 0.0, params(g)).unwrap();
            assert!((got - expected).abs() <= 1e-14 * expected.abs());
        }
    }

    #[test]
    fn weights() {
        assert_eq!(weight(SupportPoint::origin(), params(1.7)), 1.0);
        assert!((weight(SupportPoint::plus(1), params(1.0)) - 0.5).abs() < 1e-16);
        assert!((weight(SupportPoint::minus(1), params(1.0)) - 0.5).abs() < 1e-16);
        let p = params(1.2);
        let total: f64 = SpectrumWindow::adaptive(p)
            .points()
            .map(|x| weight(x, p))
            .sum();
        assert!((total - p.a().exp()).abs() < 1e-13 * total);
    }

    #[test]
    fn p_tilde_special_values() {
        for g in [0.5, 1.0, 2.0] {
            let p = params(g);
            assert!(
                (p_tilde(0, SupportPoint::origin(), p).unwrap() - (-p.a() / 2.0).exp()).abs()
                    < 1e-16
            );
            for n in (1..30).step_by(2) {
                assert_eq!(p_tilde(n, SupportPoint::origin(), p).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn p_tilde_matches_definition() {
        let p = params(0.9);
        for k in 0..12u64 {
            for x in [SupportPoint::plus(k), SupportPoint::minus(k)] {
                let rec = p_recurrence(15, x.value(), p);
                for n in 0..=15u64 {
                    let direct = (-p.a() / 2.0).exp() * weight(x, p).sqrt() * rec[n as usize];
                    let got = p_tilde(n, x, p).unwrap();
                    assert!(
                        (got - direct).abs() < 1e-12,
                        "n={n} x={x}: {got} vs {direct}"
                    );
                }
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let p1 = params(1.0);
        let w = SpectrumWindow::adaptive(p1);
        let s = orthogonality_sum(0, 0, p1, w).unwrap();
        assert!((s - std::f64::consts::E).abs() < 1e-10);
        for g in [0.5, 1.0, 2.0] {
            let p = params(g);
            let w = SpectrumWindow::adaptive(p);
            assert_eq!(orthogonality_sum(0, 1, p, w).unwrap(), 0.0);
        }
        let p2 = params(2.0);
        let w = SpectrumWindow::adaptive_for_degree(p2, 3).unwrap();
        let s = orthogonality_sum(3, 3, p2, w).unwrap();
        assert!((s - 4f64.exp()).abs() < 1e-8, "{s}");
    }

    #[test]
    fn narrow_window_is_rejected() {
        let p = params(2.0);
        let w = SpectrumWindow::new(10).unwrap();
        assert!(matches!(
            orthonormal_sum(0, 0, p, w),
            Err(Error::TailBound { .. })
        ));
    }

    #[test]
    fn eigenvector_examples() {
        let p = params(1.0);
        let trunc = FockTruncation::new(400).unwrap();
        for k in 0..=10u64 {
            for x in [SupportPoint::plus(k), SupportPoint::minus(k)] {
                let v = eigenvector(x, p, trunc).unwrap();
                assert!(v.interior_residual(p, trunc) <= 1e-9);
                assert!((1.0 - v.norm_sq()).abs() < 1e-12);
            }
        }
        let v0 = eigenvector(SupportPoint::origin(), p, trunc).unwrap();
        assert!(v0.coefficients.iter().skip(1).step_by(2).all(|&c| c == 0.0));
    }

    #[test]
    fn eigenvalues_are_symmetric_and_central() {
        let p = params(1.0);
        let ev = tridiagonal_eigenvalues(p, FockTruncation::new(256).unwrap(), 21).unwrap();
        assert_eq!(ev.len(), 21);
        for i in 0..21 {
            assert!((ev[i] + ev[20 - i]).abs() <= 1e-12);
        }
        assert!(ev[10].abs() < 1e-13);
        assert!(tridiagonal_eigenvalues(p, FockTruncation::new(8).unwrap(), 8).is_err());
    }

    #[test]
    fn even_truncation_doubles_zero() {
        // why the spectrum is taken from the odd leading block
        let p = params(1.0);
        let full = SymTridiagonal::new(vec![0.0; 64], position_off_diagonal(p, 63)).unwrap();
        let below = full.eigenvalue(31, 0.0).unwrap();
        let above = full.eigenvalue(32, 0.0).unwrap();
        assert!(below.abs() < 1e-10 && above.abs() < 1e-10);
    }

    #[test]
    fn exact_low_orders() {
        let gamma = ratio(1, 2);
        let x = SupportPoint::plus(3);
        let rec = p_recurrence_exact(4, x, &gamma).unwrap();
        // p_1 = x / γ, p_2 = x^2/γ - γ
        assert_eq!(rec[1].coeff, ratio(2, 1));
        assert_eq!(rec[2].coeff, ratio(3, 1) * ratio(2, 1) - ratio(1, 2));
        for n in 0..=4 {
            assert_eq!(rec[n as usize], p_closed_form_exact(n, x, &gamma).unwrap());
        }
        assert!(p_recurrence_exact(3, x, &ratio(0, 1)).is_err());
    }

    #[test]
    fn exact_values_convert() {
        let gamma = ratio(2, 1);
        let p = params(2.0);
        for k in 0..6 {
            let x = SupportPoint::minus(k);
            let rec = p_recurrence(9, x.value(), p);
            for (n, e) in p_recurrence_exact(9, x, &gamma).unwrap().iter().enumerate() {
                assert!((e.to_f64() - rec[n]).abs() <= 1e-12 * rec[n].abs().max(1.0));
            }
        }
    }
}
