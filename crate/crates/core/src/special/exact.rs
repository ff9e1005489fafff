use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The exact binary value of a finite double.
pub fn exact_from_f64(x: f64) -> Option<ExactScalar> {
    BigRational::from_float(x)
}

/// Nearest double to an exact rational (infinite when out of range).
pub fn exact_to_f64(x: &ExactScalar) -> f64 {
    match x.to_f64() {
        Some(v) => v,
        None => {
            if x.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}

/// `ln |x|` without converting `x` itself to a double, so values far outside
/// the double range are handled. Returns `-inf` for zero.
pub fn exact_ln_abs(x: &ExactScalar) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_abs_int(x.numer()) - ln_abs_int(x.denom())
}

fn ln_abs_int(v: &BigInt) -> f64 {
    const KEEP: u64 = 64;
    let bits = v.bits();
    if bits <= 1000 {
        return v.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - KEEP;
    let head = (v.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    head.ln() + shift as f64 * std::f64::consts::LN_2
}
