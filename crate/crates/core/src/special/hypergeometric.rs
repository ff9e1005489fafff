use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};

fn lift<T: FromPrimitive>(v: i64) -> T {
    T::from_i64(v).expect("small integer is representable")
}

/// Terminating `2F0(-n, -x; ; z) = sum_{k=0}^{n} (-n)_k (-x)_k z^k / k!`.
///
/// Generic over the scalar so the same code runs on `f64` and on
/// [`ExactScalar`](super::ExactScalar). When `x` is a nonnegative integer
/// below `n` the Pochhammer factor `(-x)_k` vanishes past `k = x` and the loop
/// stops there.
pub fn hyp2f0_terminating<T>(n: u64, x: &T, z: &T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..=n as i64 {
        let upper_n: T = lift(k - 1 - n as i64);
        let upper_x = lift::<T>(k - 1) - x.clone();
        term = term * upper_n * upper_x * z.clone() / lift(k);
        if term.is_zero() {
            break;
        }
        sum = sum + term.clone();
    }
    sum
}

/// Float version of [`hyp2f0_terminating`] that reports overflow.
pub fn hyp2f0_f64(n: u64, x: f64, z: f64) -> Result<f64> {
    let v = hyp2f0_terminating(n, &x, &z);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NumericRange(format!(
            "2F0(-{n}, -{x}; ; {z}) left the double range"
        )))
    }
}

/// Terminating `2F1(-n, -x; -big_n; z)` for `n <= big_n`; the lower parameter
/// never hits zero before the series ends.
pub fn hyp2f1_terminating<T>(n: u64, x: &T, big_n: u64, z: &T) -> Result<T>
where
    T: Clone + Num + FromPrimitive,
{
    if n > big_n {
        return Err(Error::InvalidParameter(format!(
            "degree {n} exceeds the family cutoff {big_n}"
        )));
    }
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..=n as i64 {
        let upper_n: T = lift(k - 1 - n as i64);
        let upper_x = lift::<T>(k - 1) - x.clone();
        let lower: T = lift(k - 1 - big_n as i64);
        term = term * upper_n * upper_x * z.clone() / (lower * lift(k));
        if term.is_zero() {
            break;
        }
        sum = sum + term.clone();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{ratio, ExactScalar};

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(hyp2f0_terminating(0, &123.5, &-7.0), 1.0);
        let v: ExactScalar = hyp2f0_terminating(0, &ratio(9, 2), &ratio(-3, 1));
        assert_eq!(v, ratio(1, 1));
    }

    #[test]
    fn hand_evaluated_sums() {
        // 1 + (-1)(-2)(-1) = -1
        let v: ExactScalar = hyp2f0_terminating(1, &ratio(2, 1), &ratio(-1, 1));
        assert_eq!(v, ratio(-1, 1));
        let v: ExactScalar = hyp2f0_terminating(3, &ratio(0, 1), &ratio(-1, 4));
        assert_eq!(v, ratio(1, 1));
        assert_eq!(hyp2f0_f64(1, 2.0, -1.0).unwrap(), -1.0);
    }

    #[test]
    fn negative_integer_x_truncates() {
        // (-2)_k vanishes for k > 2 so only three terms survive:
        // 1 + 5*2*z + (5*4)(2*1) z^2 / 2
        let z = ratio(1, 3);
        let v: ExactScalar = hyp2f0_terminating(5, &ratio(2, 1), &z);
        let expected = ratio(1, 1) + ratio(10, 3) + ratio(20, 9);
        assert_eq!(v, expected);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            hyp2f0_f64(200, 1e3, 1e300),
            Err(Error::NumericRange(_))
        ));
    }

    #[test]
    fn hyp2f1_rejects_degree_above_cutoff() {
        assert!(hyp2f1_terminating(4, &1.0, 3, &2.0).is_err());
        // 1 + (-1)(-1)/(-4) * 2 = 1/2
        let v: ExactScalar = hyp2f1_terminating(1, &ratio(1, 1), 4, &ratio(2, 1)).unwrap();
        assert_eq!(v, ratio(1, 2));
    }
}
