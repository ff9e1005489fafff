use num_traits::ToPrimitive;
use proptest::prelude::*;

use sh22_core::oscillator::{fourier_kernel_closed, sl21_wavefunction, Sl21Params};
use sh22_core::special::{
    charlier_at_integer, charlier_exact, krawtchouk_normalized, ratio, KrawtchoukParams,
};
use sh22_core::spectral::{p_closed_form_exact, p_recurrence_exact, p_tilde};
use sh22_core::tridiag::SymTridiagonal;
use sh22_core::{ModelParams, SupportPoint};

fn support_point() -> impl Strategy<Value = SupportPoint> {
    (0u64..=20, any::<bool>()).prop_map(|(k, neg)| {
        if neg {
            SupportPoint::minus(k)
        } else {
            SupportPoint::plus(k)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn charlier_float_matches_exact(n in 0u64..=20, x in 0u64..=40, quarter in 1i64..=36) {
        let a = quarter as f64 / 4.0;
        let exact = charlier_exact(n, &ratio(x as i64, 1), &ratio(quarter, 4)).unwrap();
        let exact = exact.to_f64().unwrap();
        let got = charlier_at_integer(n, x, a).unwrap();
        prop_assert!((got - exact).abs() <= 1e-12 * exact.abs().max(1.0), "{got} vs {exact}");
    }

    #[test]
    fn charlier_self_duality(n in 0u64..=25, x in 0u64..=25, quarter in 1i64..=36) {
        let a = ratio(quarter, 4);
        let lhs = charlier_exact(n, &ratio(x as i64, 1), &a).unwrap();
        let rhs = charlier_exact(x, &ratio(n as i64, 1), &a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn recurrence_equals_closed_form(
        num in 1i64..=6,
        den in 1i64..=4,
        x in support_point(),
        n in 0u64..=16,
    ) {
        let gamma = ratio(num, den);
        let rec = p_recurrence_exact(n, x, &gamma).unwrap();
        prop_assert_eq!(&rec[n as usize], &p_closed_form_exact(n, x, &gamma).unwrap());
    }

    #[test]
    fn p_tilde_parity(gamma in 0.3f64..2.5, n in 0u64..=30, k in 0u64..=30) {
        let params = ModelParams::new(gamma).unwrap();
        let plus = p_tilde(n, SupportPoint::plus(k), params).unwrap();
        let minus = p_tilde(n, SupportPoint::minus(k), params).unwrap();
        let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(minus, parity * plus);
    }

    #[test]
    fn closed_kernel_is_symmetric(gamma in 0.3f64..2.5, x in support_point(), y in support_point()) {
        let params = ModelParams::new(gamma).unwrap();
        let xy = fourier_kernel_closed(x, y, params).unwrap();
        prop_assert_eq!(xy, fourier_kernel_closed(y, x, params).unwrap());
        let flipped = fourier_kernel_closed(x.negated(), y.negated(), params).unwrap();
        prop_assert_eq!(xy, flipped);
    }

    #[test]
    fn krawtchouk_orthonormal(p in 0.05f64..0.97, cutoff in 1u64..=30, fm in 0.0f64..1.0, fn_ in 0.0f64..1.0) {
        let m = (fm * (cutoff + 1) as f64) as u64;
        let n = (fn_ * (cutoff + 1) as f64) as u64;
        let params = KrawtchoukParams::new(p, cutoff).unwrap();
        let mut sum = 0.0;
        for x in 0..=cutoff {
            sum += krawtchouk_normalized(m, x, params).unwrap() * krawtchouk_normalized(n, x, params).unwrap();
        }
        let expected = if m == n { 1.0 } else { 0.0 };
        prop_assert!((sum - expected).abs() < 1e-12, "{sum}");
    }

    #[test]
    fn sl21_parity_and_norm(j in 1u64..=12, p in 0.05f64..0.95, n_frac in 0.0f64..1.0) {
        let params = Sl21Params::new(j, p).unwrap();
        let n = ((2 * j) as f64 * n_frac).floor() as u64;
        let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut norm = sl21_wavefunction(n, SupportPoint::origin(), params).unwrap().powi(2);
        for k in 1..=j {
            let plus = sl21_wavefunction(n, SupportPoint::plus(k), params).unwrap();
            let minus = sl21_wavefunction(n, SupportPoint::minus(k), params).unwrap();
            prop_assert_eq!(minus, parity * plus);
            norm += plus * plus + minus * minus;
        }
        prop_assert!((norm - 1.0).abs() < 1e-12, "{norm}");
    }

    #[test]
    fn sturm_counts_bracket_eigenvalues(
        diag in prop::collection::vec(-3.0f64..3.0, 2..40),
        seed in prop::collection::vec(0.1f64..2.0, 40),
    ) {
        let off = seed[..diag.len() - 1].to_vec();
        let t = SymTridiagonal::new(diag.clone(), off).unwrap();
        let all = t.eigenvalues(0..t.len(), 0.0).unwrap();
        let trace: f64 = diag.iter().sum();
        prop_assert!((all.iter().sum::<f64>() - trace).abs() < 1e-10);
        for (i, lambda) in all.iter().enumerate() {
            prop_assert!(t.sturm_count(lambda - 1e-9) <= i);
            prop_assert!(t.sturm_count(lambda + 1e-9) > i);
        }
    }
}
