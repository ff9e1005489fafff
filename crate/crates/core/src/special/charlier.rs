use num_traits::{One, Signed, Zero};

use super::exact::ExactScalar;
use super::hypergeometric::hyp2f0_terminating;
use super::logspace::ln_factorial;
use crate::error::{invalid, Error, Result};

/// Largest summation index the orthogonality sum may reach.
pub const ORTHOGONALITY_HARD_CAP: u64 = 1_000_000;

/// Parameter of the Charlier family `C_n(x; a)`, with `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharlierParams {
    a: f64,
}

impl CharlierParams {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 {
            Ok(Self { a })
        } else {
            Err(invalid(format!(
                "Charlier parameter must be positive, got {a}"
            )))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

/// `C_n(x; a)` in double precision.
///
/// Integer arguments go through [`charlier_at_integer`]. Other arguments use
/// the three-term recurrence in the degree,
/// `a C_{m+1} = (m + a - x) C_m - m C_{m-1}`.
pub fn charlier(n: u64, x: f64, params: CharlierParams) -> Result<f64> {
    if x >= 0.0 && x.fract() == 0.0 && x < 9.0e15 {
        return charlier_at_integer(n, x as u64, params.a);
    }
    checked(n, x, degree_recurrence(n, x, params.a))
}

/// `C_n(x; a)` for a nonnegative integer argument.
///
/// Uses the self-duality `C_n(x; a) = C_x(n; a)` and runs the degree
/// recurrence in the smaller of the two indices. Running it in the larger index
/// follows the dominant solution of the recurrence and loses every digit once
/// `n` passes `x`.
pub fn charlier_at_integer(n: u64, x: u64, a: f64) -> Result<f64> {
    let (degree, argument) = if n <= x { (n, x) } else { (x, n) };
    checked(n, x as f64, degree_recurrence(degree, argument as f64, a))
}

fn degree_recurrence(n: u64, x: f64, a: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x / a;
    for m in 1..n {
        let m = m as f64;
        let next = (((m - x) + a) * cur - m * prev) / a;
        prev = cur;
        cur = next;
    }
    cur
}

fn checked(n: u64, x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NumericRange(format!(
            "C_{n}({x}) left the double range"
        )))
    }
}

/// `C_n(x; a)` as an exact rational, straight from its defining
/// `2F0(-n, -x; ; -1/a)` sum.
pub fn charlier_exact(n: u64, x: &ExactScalar, a: &ExactScalar) -> Result<ExactScalar> {
    if !a.is_positive() {
        return Err(invalid("Charlier parameter must be positive"));
    }
    let z = -(ExactScalar::one() / a);
    Ok(hyp2f0_terminating(n, x, &z))
}

/// Residuals of the forward and backward shift relations at `(n, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftResiduals {
    /// `C_n(x) - C_n(x-1) + (n/a) C_{n-1}(x-1)`; absent for `n = 0`.
    pub forward: Option<ExactScalar>,
    /// `C_n(x) - (x/a) C_n(x-1) - C_{n+1}(x)`.
    pub backward: ExactScalar,
}

impl ShiftResiduals {
    pub fn is_zero(&self) -> bool {
        self.backward.is_zero() && self.forward.as_ref().is_none_or(Zero::is_zero)
    }
}

pub fn charlier_shift_check(n: u64, x: &ExactScalar, a: &ExactScalar) -> Result<ShiftResiduals> {
    let one = ExactScalar::one();
    let x_minus = x - &one;
    let c_n = charlier_exact(n, x, a)?;
    let c_n_shifted = charlier_exact(n, &x_minus, a)?;
    let forward = if n >= 1 {
        let lower = charlier_exact(n - 1, &x_minus, a)?;
        let nn = ExactScalar::from_integer(n.into());
        Some(&c_n - &c_n_shifted + nn / a * lower)
    } else {
        None
    };
    let c_next = charlier_exact(n + 1, x, a)?;
    let backward = &c_n - x / a * &c_n_shifted - c_next;
    Ok(ShiftResiduals { forward, backward })
}

/// `sum_{x>=0} a^x/x! C_m(x;a) C_n(x;a)`, truncated once the neglected tail
/// is provably below `tail_eps`.
///
/// The tail is bounded with the envelope `a^x/x! (1 + x/a)^(m+n)`, which
/// dominates the summand because `|C_n(x;a)| <= (1 + x/a)^n` for integer
/// `x >= 0`. The envelope ratio between neighbours decreases in `x`, so once
/// it drops below one the remainder is bounded by a geometric series.
pub fn charlier_orthogonality_sum(
    m: u64,
    n: u64,
    params: CharlierParams,
    tail_eps: f64,
) -> Result<f64> {
    if tail_eps.is_nan() || tail_eps <= 0.0 {
        return Err(invalid("tail_eps must be positive"));
    }
    let a = params.a;
    let ln_a = a.ln();
    let degree = (m + n) as f64;
    let floor = (a + 6.0 * a.sqrt() + 10.0).ceil().max(20.0) as u64;
    let ln_envelope = |x: f64| x * ln_a - ln_factorial(x as u64) + degree * (x / a).ln_1p();

    let mut sum = 0.0;
    let mut x = 0u64;
    loop {
        let ln_w = x as f64 * ln_a - ln_factorial(x);
        let cm = charlier_at_integer(m, x, a)?;
        let cn = charlier_at_integer(n, x, a)?;
        sum += ln_w.exp() * cm * cn;

        if x >= floor {
            let next = (x + 1) as f64;
            let ratio = a / (next + 1.0) * ((a + next + 1.0) / (a + next)).powf(degree);
            if ratio < 1.0 {
                let tail = ln_envelope(next).exp() / (1.0 - ratio);
                if tail < tail_eps {
                    return Ok(sum);
                }
            }
        }
        x += 1;
        if x > ORTHOGONALITY_HARD_CAP {
            return Err(Error::TailBound {
                eps: tail_eps,
                cap: ORTHOGONALITY_HARD_CAP,
            });
        }
    }
}
