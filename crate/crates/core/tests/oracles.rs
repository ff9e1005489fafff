use sh22_core::fock::{hamilton_lie_residuals, relation_residuals, FockTruncation, ModelParams};
use sh22_core::oscillator::{momentum_eigvec_residual, position_wavefunction};
use sh22_core::spectral::{
    eigenvector, numerical_eigenpair, orthonormal_sum, p_closed_form, p_closed_form_at,
    p_recurrence, p_tilde, tridiagonal_eigenvalues, SpectrumWindow, SupportPoint,
};

const GAMMAS: [f64; 3] = [0.5, 1.0, 2.0];

fn params(g: f64) -> ModelParams {
    ModelParams::new(g).unwrap()
}

#[test]
fn identities_for_all_sizes() {
    for n in [16, 64, 256] {
        let trunc = FockTruncation::new(n).unwrap();
        let report = relation_residuals(trunc).unwrap();
        assert!(report.first_above(1e-12).is_none(), "{:?}", report.worst());
        for g in GAMMAS {
            let (a, b) = hamilton_lie_residuals(params(g), trunc).unwrap();
            assert!(a <= 1e-12 && b <= 1e-12);
        }
    }
}

#[test]
fn three_paths_for_p_agree() {
    for g in GAMMAS {
        let p = params(g);
        for k in 0..=10u64 {
            let x = SupportPoint::minus(k);
            let rec = p_recurrence(12, x.value(), p);
            for n in 0..=12u64 {
                let exact = p_closed_form_at(n, x, p).unwrap();
                let float = p_closed_form(n, x.value(), p).unwrap();
                let scale = exact.abs().max(1.0);
                assert!(
                    (rec[n as usize] - exact).abs() <= 1e-9 * scale,
                    "rec n={n} k={k}"
                );
                assert!((float - exact).abs() <= 1e-9 * scale, "float n={n} k={k}");
            }
        }
    }
}

#[test]
fn eigenvectors_agree_with_diagonalization() {
    let trunc = FockTruncation::new(2048).unwrap();
    let p = params(1.0);
    for x in [
        SupportPoint::origin(),
        SupportPoint::plus(3),
        SupportPoint::minus(7),
    ] {
        let (lambda, numeric) = numerical_eigenpair(x, p, trunc).unwrap();
        assert!((lambda - x.value()).abs() < 1e-12);
        let analytic = eigenvector(x, p, trunc).unwrap();
        for (n, v) in numeric.iter().enumerate() {
            let rec = p_tilde(n as u64, x, p).unwrap();
            assert!((v - rec).abs() < 1e-6, "n={n}");
            assert_eq!(analytic.coefficients[n], rec);
        }
    }
}

#[test]
fn eigen_residuals_on_interior() {
    let trunc = FockTruncation::new(400).unwrap();
    for g in GAMMAS {
        let p = params(g);
        for k in 0..=10 {
            for x in [SupportPoint::plus(k), SupportPoint::minus(k)] {
                assert!(
                    eigenvector(x, p, trunc)
                        .unwrap()
                        .interior_residual(p, trunc)
                        <= 1e-9
                );
                assert!(momentum_eigvec_residual(x, p, trunc).unwrap() <= 1e-9);
            }
        }
    }
}

#[test]
fn wavefunctions_are_orthonormal() {
    for g in GAMMAS {
        let p = params(g);
        let w = SpectrumWindow::adaptive_for_degree(p, 12).unwrap();
        for m in 0..=12 {
            for n in 0..=12 {
                let s = orthonormal_sum(m, n, p, w).unwrap();
                assert!((s - if m == n { 1.0 } else { 0.0 }).abs() < 1e-10);
            }
        }
        assert_eq!(
            position_wavefunction(3, SupportPoint::plus(2), p).unwrap(),
            p_tilde(3, SupportPoint::plus(2), p).unwrap()
        );
    }
}

#[test]
fn spectrum_converges() {
    let p = params(1.0);
    let coarse = tridiagonal_eigenvalues(p, FockTruncation::new(16).unwrap(), 9).unwrap();
    let fine = tridiagonal_eigenvalues(p, FockTruncation::new(512).unwrap(), 9).unwrap();
    let err = |ev: &[f64]| {
        ev.iter()
            .enumerate()
            .map(|(i, v)| {
                let k = i as f64 - 4.0;
                (v - k.signum() * k.abs().sqrt()).abs()
            })
            .fold(0.0, f64::max)
    };
    assert!(err(&fine) < err(&coarse));
    assert!(err(&fine) < 1e-14);
}
