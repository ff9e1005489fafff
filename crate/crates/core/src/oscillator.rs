//! Physical quantities of the oscillator: wavefunctions, the Fourier
//! kernel, uncertainty products, commutator spectra and the limit from the
//! `sl(2|1)` Krawtchouk wavefunctions.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::fock::{
    generator_matrix, momentum_matrix, position_matrix, FockTruncation, GeneratorId, ModelParams,
    OperatorMatrix,
};
use crate::special::{
    exact_from_f64, exact_ln_abs, hyp2f0_terminating, krawtchouk_normalized, ln_factorial,
    ExactScalar, KrawtchoukParams,
};
use crate::spectral::{p_tilde, poisson_tail_fraction, SpectrumWindow, SupportPoint, MIN_WINDOW_K};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Target for the Cauchy-Schwarz bound on the kernel series tail.
pub const KERNEL_TAIL_EPS: f64 = 1e-12;
/// Roundoff floor of a computed completeness tail `1 - sum φ_n^2`.
pub const COMPLETENESS_TAIL_FLOOR: f64 = 1e-14;
/// Largest order used by [`fourier_kernel_series_default`].
pub const KERNEL_MAX_ORDER: u64 = 600;

/// `φ_n(x) = p̃_n(x)`.
pub fn position_wavefunction(n: u64, x: SupportPoint, params: ModelParams) -> Result<f64> {
    p_tilde(n, x, params)
}

/// Wavefunction values on a window, one row per requested `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionTable {
    pub gamma: f64,
    pub n_list: Vec<u64>,
    pub window: SpectrumWindow,
    pub points: Vec<SupportPoint>,
    /// `values[row][col] = φ_{n_list[row]}(points[col])`.
    pub values: Vec<Vec<f64>>,
    pub library_version: &'static str,
}

impl WavefunctionTable {
    pub fn build(params: ModelParams, n_list: &[u64], window: SpectrumWindow) -> Result<Self> {
        let points: Vec<SupportPoint> = window.points().collect();
        let values = n_list
            .iter()
            .map(|&n| {
                points
                    .iter()
                    .map(|&x| position_wavefunction(n, x, params))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            gamma: params.gamma(),
            n_list: n_list.to_vec(),
            window,
            points,
            values,
            library_version: env!("CARGO_PKG_VERSION"),
        })
    }

    /// Discrete norm squared of each row over the window.
    pub fn norms_sq(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|row| row.iter().map(|v| v * v).sum())
            .collect()
    }

    /// [`norms_sq`](Self::norms_sq) plus the mass of each row on
    /// `k_max < x² <= k'`, with `k'` from [`SpectrumWindow::adaptive_for_degree`].
    pub fn tail_adjusted_norms_sq(&self) -> Result<Vec<f64>> {
        let params = ModelParams::new(self.gamma)?;
        let n_max = self.n_list.iter().copied().max().unwrap_or(0);
        let outer = SpectrumWindow::adaptive_for_degree(params, n_max)?.k_max();
        let mut norms = self.norms_sq();
        for (norm, &n) in norms.iter_mut().zip(&self.n_list) {
            for k in self.window.k_max() + 1..=outer {
                *norm += 2.0 * position_wavefunction(n, SupportPoint::plus(k), params)?.powi(2);
            }
        }
        Ok(norms)
    }

    /// Largest `|φ_n(x) - (-1)^n φ_n(-x)|` in the table.
    pub fn parity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (row, &n) in self.values.iter().zip(&self.n_list) {
            let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
            let len = row.len();
            for i in 0..len {
                worst = worst.max((row[i] - parity * row[len - 1 - i]).abs());
            }
        }
        worst
    }

    /// Sign changes of each row along `0, 1, √2, ..., √k_max`, skipping exact
    /// zeros.
    pub fn positive_axis_sign_changes(&self) -> Vec<usize> {
        let origin = self.window.k_max() as usize;
        self.values
            .iter()
            .map(|row| {
                let signs: Vec<bool> = row[origin..]
                    .iter()
                    .filter(|v| **v != 0.0)
                    .map(|v| *v > 0.0)
                    .collect();
                signs.windows(2).filter(|w| w[0] != w[1]).count()
            })
            .collect()
    }
}

/// Coefficients `i^n p̃_n(y)` of the normalized momentum eigenvector for
/// eigenvalue `y`, for `n < N`.
pub fn momentum_eigvec_coefficients(
    y: SupportPoint,
    params: ModelParams,
    trunc: FockTruncation,
) -> Result<Vec<Complex64>> {
    (0..trunc.dim() as u64)
        .map(|n| Ok(i_pow(n) * p_tilde(n, y, params)?))
        .collect()
}

/// `max |((p - y) u)_n|` over the interior rows `n < N - 2`.
pub fn momentum_eigvec_residual(
    y: SupportPoint,
    params: ModelParams,
    trunc: FockTruncation,
) -> Result<f64> {
    let u = momentum_eigvec_coefficients(y, params, trunc)?;
    let pu = momentum_matrix(params, trunc).apply(&u);
    let yv = y.value();
    Ok((0..trunc.interior())
        .map(|n| (pu[n] - u[n] * yv).norm())
        .fold(0.0, f64::max))
}

fn i_pow(n: u64) -> Complex64 {
    match n % 4 {
        0 => Complex64::one(),
        1 => I,
        2 => -Complex64::one(),
        _ => -I,
    }
}

/// `sum_{n <= n_max} (-i)^n φ_n(x) φ_n(y)`.
pub fn fourier_kernel_series(
    x: SupportPoint,
    y: SupportPoint,
    params: ModelParams,
    n_max: u64,
) -> Result<Complex64> {
    let mut sum = Complex64::zero();
    for n in 0..=n_max {
        let term = p_tilde(n, x, params)? * p_tilde(n, y, params)?;
        sum += i_pow(n).conj() * term;
    }
    Ok(sum)
}

/// Smallest order whose neglected tail is below [`KERNEL_TAIL_EPS`].
///
/// By completeness `sum_n φ_n(x)^2 = 1`, so with `t(x) = 1 - sum_{n <= n_max}
/// φ_n(x)^2` the tail of the series is bounded by `sqrt(t(x) t(y))`.
pub fn kernel_series_order(x: SupportPoint, y: SupportPoint, params: ModelParams) -> Result<u64> {
    let mut seen_x = 0.0;
    let mut seen_y = 0.0;
    for n in 0..=KERNEL_MAX_ORDER {
        seen_x += p_tilde(n, x, params)?.powi(2);
        seen_y += p_tilde(n, y, params)?.powi(2);
        let tail_x = (1.0 - seen_x).max(COMPLETENESS_TAIL_FLOOR);
        let tail_y = (1.0 - seen_y).max(COMPLETENESS_TAIL_FLOOR);
        if n % 2 == 1 && (tail_x * tail_y).sqrt() < KERNEL_TAIL_EPS {
            return Ok(n);
        }
    }
    Err(Error::TailBound {
        eps: KERNEL_TAIL_EPS,
        cap: KERNEL_MAX_ORDER,
    })
}

/// [`fourier_kernel_series`] at the order chosen by [`kernel_series_order`].
pub fn fourier_kernel_series_default(
    x: SupportPoint,
    y: SupportPoint,
    params: ModelParams,
) -> Result<Complex64> {
    fourier_kernel_series(x, y, params, kernel_series_order(x, y, params)?)
}

/// Closed form of the kernel at `x = ±√k`, `y = ±√l`:
///
/// `e^{-2γ²} (2γ)^{k+l} / (2 √(k! l!))` times
/// `[√((1+δ_{k0})(1+δ_{l0})) ₂F₀(-k,-l;;-1/(4γ²)) - i xy/(4γ²) ₂F₀(1-k,1-l;;-1/(4γ²))]`.
///
/// The alternating `₂F₀` sums are evaluated exactly at the rational value of
/// the double `-1/(4γ²)`, then joined to the prefactor in log space.
pub fn fourier_kernel_closed(
    x: SupportPoint,
    y: SupportPoint,
    params: ModelParams,
) -> Result<Complex64> {
    let a = params.a();
    let (k, l) = (x.k(), y.k());
    let z = exact_from_f64(-1.0 / (4.0 * a))
        .ok_or_else(|| Error::NumericRange("kernel argument is not finite".into()))?;
    let ln_pref = -2.0 * a + (k + l) as f64 * (2.0 * params.gamma()).ln()
        - std::f64::consts::LN_2
        - 0.5 * (ln_factorial(k) + ln_factorial(l));

    let deltas = f64::from(1 + u8::from(k == 0)) * f64::from(1 + u8::from(l == 0));
    let first = hyp2f0_terminating(k, &integer(l), &z);
    let re = scaled(&first, ln_pref + 0.5 * deltas.ln())?;

    let im = if k == 0 || l == 0 {
        0.0
    } else {
        let second = hyp2f0_terminating(k - 1, &integer(l - 1), &z);
        let sign = f64::from(x.sign() * y.sign());
        let ln_xy = 0.5 * ((k as f64).ln() + (l as f64).ln()) - (4.0 * a).ln();
        -sign * scaled(&second, ln_pref + ln_xy)?
    };
    Ok(Complex64::new(re, im))
}

fn integer(v: u64) -> ExactScalar {
    ExactScalar::from_integer(v.into())
}

fn scaled(value: &ExactScalar, ln_factor: f64) -> Result<f64> {
    if value.is_zero() {
        return Ok(0.0);
    }
    let magnitude = (ln_factor + exact_ln_abs(value)).exp();
    if !magnitude.is_finite() {
        return Err(Error::NumericRange("kernel prefactor overflowed".into()));
    }
    Ok(if *value < ExactScalar::zero() {
        -magnitude
    } else {
        magnitude
    })
}

/// Window for sums of the kernel over `x`: `|K(x, y)|^2` carries the Poisson
/// weight of mean `4γ²` in `x²`, times a polynomial of degree `y²`.
pub fn kernel_window(params: ModelParams, y_k_max: u64) -> SpectrumWindow {
    let mean = 4.0 * params.a();
    let mut k = MIN_WINDOW_K;
    loop {
        // polynomial factor (1 + k)^l absorbed by a stricter tail target
        let poly = (y_k_max as f64) * ((k + 1) as f64).ln();
        if (poisson_tail_fraction(mean, k).ln() + poly) < (1e-16_f64).ln() {
            return SpectrumWindow::new(k).expect("k >= 1");
        }
        k += 1;
    }
}

/// `sum_{x in window} conj(K(x, y)) K(x, y2)`, which tends to `δ_{y,y2}`.
pub fn kernel_unitarity_check(
    y: SupportPoint,
    y2: SupportPoint,
    params: ModelParams,
    window: SpectrumWindow,
) -> Result<Complex64> {
    let mut sum = Complex64::zero();
    for x in window.points() {
        sum += fourier_kernel_closed(x, y, params)?.conj() * fourier_kernel_closed(x, y2, params)?;
    }
    Ok(sum)
}

/// `(Δq)_n (Δp)_n = γ² + n/2 + (1 - (-1)^n)/4`.
pub fn uncertainty_product(n: u64, params: ModelParams) -> f64 {
    params.a() + n as f64 / 2.0 + if n % 2 == 1 { 0.5 } else { 0.0 }
}

fn require_row(n: u64, trunc: FockTruncation) -> Result<usize> {
    if (n as usize) < trunc.interior() {
        Ok(n as usize)
    } else {
        Err(invalid(format!(
            "state {n} is too close to the truncation edge N = {}",
            trunc.dim()
        )))
    }
}

fn variance(op: &OperatorMatrix, n: usize) -> f64 {
    let sq = op * op;
    (sq.get(n, n) - op.get(n, n) * op.get(n, n)).re
}

/// `sqrt(Var_n q) sqrt(Var_n p)` from the truncated matrices.
pub fn uncertainty_product_matrix(
    n: u64,
    params: ModelParams,
    trunc: FockTruncation,
) -> Result<f64> {
    let row = require_row(n, trunc)?;
    let q = position_matrix(params, trunc);
    let p = momentum_matrix(params, trunc);
    Ok((variance(&q, row) * variance(&p, row)).sqrt())
}

/// Eigenvalue of `[q, p]` on `|n⟩`: `2i(γ² - k)` for `n = 2k`, `-2i(γ² - k)`
/// for `n = 2k - 1`.
pub fn commutator_qp_eigenvalue(n: u64, params: ModelParams) -> Complex64 {
    if n.is_multiple_of(2) {
        I * (2.0 * (params.a() - (n / 2) as f64))
    } else {
        I * (-2.0 * (params.a() - n.div_ceil(2) as f64))
    }
}

/// `[q, p] |n⟩` from the truncated matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorColumn {
    /// `⟨n| [q, p] |n⟩`.
    pub eigenvalue: Complex64,
    /// Largest off-diagonal entry of the column; zero for an eigenvector.
    pub leakage: f64,
}

pub fn commutator_qp_matrix(
    n: u64,
    params: ModelParams,
    trunc: FockTruncation,
) -> Result<CommutatorColumn> {
    let row = require_row(n, trunc)?;
    let c = position_matrix(params, trunc).commutator(&momentum_matrix(params, trunc));
    let leakage = (0..trunc.dim())
        .filter(|&i| i != row)
        .map(|i| c.get(i, row).norm())
        .fold(0.0, f64::max);
    Ok(CommutatorColumn {
        eigenvalue: c.get(row, row),
        leakage,
    })
}

/// `⟨n| (p² + q²)/2 |n⟩` from the truncated matrices.
pub fn energy_expectation_matrix(
    n: u64,
    params: ModelParams,
    trunc: FockTruncation,
) -> Result<f64> {
    let row = require_row(n, trunc)?;
    let q = position_matrix(params, trunc);
    let p = momentum_matrix(params, trunc);
    Ok(0.5 * ((&p * &p).get(row, row) + (&q * &q).get(row, row)).re)
}

/// `γ² + ⟨n|H|n⟩`.
pub fn energy_expectation(n: u64, params: ModelParams) -> f64 {
    let trunc = FockTruncation::new((n as usize + 2).next_multiple_of(2).max(4))
        .expect("size is even and >= 4");
    params.a()
        + generator_matrix(GeneratorId::H, trunc)
            .get(n as usize, n as usize)
            .re
}

/// Parameters of the finite `sl(2|1)` representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl21Params {
    j: u64,
    p: f64,
}

impl Sl21Params {
    pub fn new(j: u64, p: f64) -> Result<Self> {
        if j == 0 {
            return Err(invalid("j must be a positive integer"));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("p must lie in (0, 1), got {p}")));
        }
        Ok(Self { j, p })
    }

    /// `p = γ²/j`, requiring `γ² < j`.
    pub fn limit_coupling(j: u64, params: ModelParams) -> Result<Self> {
        if j == 0 || params.a() >= j as f64 {
            return Err(invalid(format!(
                "limit coupling needs gamma^2 < j, got gamma^2 = {} and j = {j}",
                params.a()
            )));
        }
        Self::new(j, params.a() / j as f64)
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `φ_{2m}(x) = (-1)^m √((1+δ_{x0})/2) K̃_m(x²; p, j)` and
/// `φ_{2m+1}(x) = sign(x) (-1)^m √((1-δ_{x0})/2) K̃_m(x²-1; p, j-1)`.
pub fn sl21_wavefunction(n: u64, x: SupportPoint, params: Sl21Params) -> Result<f64> {
    let (j, k, m) = (params.j, x.k(), n / 2);
    if k > j {
        return Err(invalid(format!(
            "support point {x} lies outside k <= j = {j}"
        )));
    }
    let flip = if m % 2 == 1 { -1.0 } else { 1.0 };
    if n.is_multiple_of(2) {
        if m > j {
            return Err(invalid(format!("degree {n} exceeds 2j = {}", 2 * j)));
        }
        let delta = if x.is_origin() {
            1.0
        } else {
            std::f64::consts::FRAC_1_SQRT_2
        };
        let kt = krawtchouk_normalized(m, k, KrawtchoukParams::new(params.p, j)?)?;
        Ok(flip * delta * kt)
    } else {
        if m + 1 > j {
            return Err(invalid(format!(
                "degree {n} exceeds 2j - 1 = {}",
                2 * j - 1
            )));
        }
        if x.is_origin() {
            return Ok(0.0);
        }
        let kt = krawtchouk_normalized(m, k - 1, KrawtchoukParams::new(params.p, j - 1)?)?;
        Ok(f64::from(x.sign()) * flip * std::f64::consts::FRAC_1_SQRT_2 * kt)
    }
}

/// `max |φ^{(γ²/j, j)}_n(x) - φ^{(γ)}_n(x)|` over `n <= n_max`, `x² <= k_max`.
pub fn limit_error(j: u64, params: ModelParams, n_max: u64, k_max: u64) -> Result<f64> {
    let sl = Sl21Params::limit_coupling(j, params)?;
    if k_max > j {
        return Err(invalid(format!("k_max = {k_max} exceeds j = {j}")));
    }
    if n_max > 2 * j - 1 {
        return Err(invalid(format!(
            "n_max = {n_max} exceeds 2j - 1 = {}",
            2 * j - 1
        )));
    }
    let mut worst = 0.0_f64;
    for k in 0..=k_max {
        for x in [SupportPoint::plus(k), SupportPoint::minus(k)] {
            for n in 0..=n_max {
                let diff = sl21_wavefunction(n, x, sl)? - position_wavefunction(n, x, params)?;
                worst = worst.max(diff.abs());
            }
        }
    }
    Ok(worst)
}

/// Least-squares slope of `log err` against `log(1/j)`.
pub fn limit_decay_order(js: &[u64], errors: &[f64]) -> Result<f64> {
    if js.len() != errors.len() || js.len() < 2 {
        return Err(invalid("decay fit needs at least two matching samples"));
    }
    if errors.iter().any(|e| e.is_nan() || *e <= 0.0) {
        return Err(invalid("decay fit needs positive errors"));
    }
    let xs: Vec<f64> = js.iter().map(|&j| -(j as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
