use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::exact::{exact_from_f64, exact_ln_abs, exact_to_f64, ExactScalar};
use super::hypergeometric::hyp2f1_terminating;
use super::logspace::ln_binomial;
use crate::error::{invalid, Error, Result};

/// Parameters `(p, N)` of the Krawtchouk family `K_n(x; p, N)`, `0 < p < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrawtchoukParams {
    p: f64,
    cutoff: u64,
}

impl KrawtchoukParams {
    pub fn new(p: f64, cutoff: u64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(invalid(format!("Krawtchouk p must lie in (0, 1), got {p}")));
        }
        Ok(Self { p, cutoff })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// The family cutoff `N`.
    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    fn check_degree(&self, n: u64) -> Result<()> {
        if n > self.cutoff {
            Err(invalid(format!(
                "degree {n} exceeds the cutoff N = {}",
                self.cutoff
            )))
        } else {
            Ok(())
        }
    }
}

/// `K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)` in double precision.
///
/// At integer arguments the terminating sum is evaluated exactly at the binary
/// value of `p` and rounded once; the alternating float sum cancels
/// catastrophically for small or large `p`.
pub fn krawtchouk(n: u64, x: f64, params: KrawtchoukParams) -> Result<f64> {
    params.check_degree(n)?;
    if x >= 0.0 && x.fract() == 0.0 && x < 9.0e15 {
        let v = exact_at_binary_p(n, x as u64, params)?;
        let out = exact_to_f64(&v);
        if !out.is_finite() {
            return Err(Error::NumericRange(format!(
                "K_{n}({x}) left the double range"
            )));
        }
        return Ok(out);
    }
    let v = hyp2f1_terminating(n, &x, params.cutoff, &(1.0 / params.p))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NumericRange(format!(
            "K_{n}({x}) left the double range"
        )))
    }
}

fn exact_at_binary_p(n: u64, x: u64, params: KrawtchoukParams) -> Result<ExactScalar> {
    let p = exact_from_f64(params.p).ok_or_else(|| invalid("p is not finite"))?;
    krawtchouk_exact(n, &ExactScalar::from_integer(x.into()), &p, params.cutoff)
}

/// `K_n(x; p, N)` as an exact rational.
pub fn krawtchouk_exact(
    n: u64,
    x: &ExactScalar,
    p: &ExactScalar,
    cutoff: u64,
) -> Result<ExactScalar> {
    if !(p.is_positive() && p < &ExactScalar::one()) {
        return Err(invalid("Krawtchouk p must lie in (0, 1)"));
    }
    let z = ExactScalar::one() / p;
    hyp2f1_terminating(n, x, cutoff, &z)
}

/// `ln d_n^2` where `d_n^2 = ((1-p)/p)^n / C(N, n)` is the squared norm of
/// `K_n` under the binomial weight.
pub fn krawtchouk_ln_norm_sq(n: u64, params: KrawtchoukParams) -> Result<f64> {
    params.check_degree(n)?;
    let p = params.p;
    Ok(n as f64 * ((-p).ln_1p() - p.ln()) - ln_binomial(params.cutoff, n))
}

/// Exact `d_n^2 = ((1-p)/p)^n / C(N, n)`.
pub fn krawtchouk_norm_sq_exact(n: u64, p: &ExactScalar, cutoff: u64) -> Result<ExactScalar> {
    if n > cutoff {
        return Err(invalid(format!(
            "degree {n} exceeds the cutoff N = {cutoff}"
        )));
    }
    let q = ExactScalar::one() - p;
    let ratio: ExactScalar = Pow::pow(q / p, n as u32);
    Ok(ratio / ExactScalar::from_integer(binomial(cutoff, n)))
}

/// Brute-force `sum_{x=0}^{N} C(N,x) p^x (1-p)^(N-x) K_m(x) K_n(x)`.
pub fn krawtchouk_inner_exact(m: u64, n: u64, p: &ExactScalar, cutoff: u64) -> Result<ExactScalar> {
    let q = ExactScalar::one() - p;
    let mut sum = ExactScalar::zero();
    for x in 0..=cutoff {
        let xs = ExactScalar::from_integer(x.into());
        let km = krawtchouk_exact(m, &xs, p, cutoff)?;
        let kn = krawtchouk_exact(n, &xs, p, cutoff)?;
        let w = ExactScalar::from_integer(binomial(cutoff, x))
            * Pow::pow(p, x as u32)
            * Pow::pow(&q, (cutoff - x) as u32);
        sum += w * km * kn;
    }
    Ok(sum)
}

/// Orthonormal Krawtchouk function
/// `sqrt(C(N,x) p^x (1-p)^(N-x)) K_n(x; p, N) / d_n` on `x = 0..=N`.
///
/// The prefactor and `|K_n|` are combined in log space, so `N` in the
/// thousands is fine.
pub fn krawtchouk_normalized(n: u64, x: u64, params: KrawtchoukParams) -> Result<f64> {
    params.check_degree(n)?;
    if x > params.cutoff {
        return Err(invalid(format!(
            "argument {x} outside the support 0..={}",
            params.cutoff
        )));
    }
    let k = exact_at_binary_p(n, x, params)?;
    if k.is_zero() {
        return Ok(0.0);
    }
    let p = params.p;
    let big_n = params.cutoff;
    let ln_weight = ln_binomial(big_n, x) + x as f64 * p.ln() + (big_n - x) as f64 * (-p).ln_1p();
    let ln_value = 0.5 * ln_weight - 0.5 * krawtchouk_ln_norm_sq(n, params)? + exact_ln_abs(&k);
    let magnitude = ln_value.exp();
    if !magnitude.is_finite() {
        return Err(Error::NumericRange(format!(
            "normalized K_{n}({x}) overflowed"
        )));
    }
    Ok(if k.is_negative() {
        -magnitude
    } else {
        magnitude
    })
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
