//! One function per subcommand, each returning its output table.

use num_complex::Complex64;
use serde_json::json;

use sh22_core::fock::{
    energy_identity_residual, hamilton_lie_residuals, phase_similarity_residual, relation_residuals,
};
use sh22_core::oscillator::{
    commutator_qp_eigenvalue, commutator_qp_matrix, energy_expectation, energy_expectation_matrix,
    fourier_kernel_closed, fourier_kernel_series, fourier_kernel_series_default, limit_error,
    momentum_eigvec_residual, position_wavefunction, sl21_wavefunction, uncertainty_product,
    uncertainty_product_matrix, Sl21Params,
};
use sh22_core::spectral::{eigenvector, orthonormal_sum, tridiagonal_eigenvalues};
use sh22_core::{FockTruncation, ModelParams, SpectrumWindow, SupportPoint};

use crate::error::CliError;
use crate::output::{Cell, OutputRecord};

pub type CmdResult = Result<OutputRecord, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KernelMode {
    Series,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

fn point_cells(x: SupportPoint) -> [Cell; 3] {
    [
        Cell::from(x.sign()),
        Cell::from(x.k()),
        Cell::from(x.value()),
    ]
}

pub fn wavefunction(gamma: f64, n_list: &[u64], k_max: u64) -> CmdResult {
    let params = ModelParams::new(gamma)?;
    let window = SpectrumWindow::new(k_max)?;
    let mut rec = OutputRecord::new("wavefunction", &["n", "sign", "k", "x_value", "phi"]);
    rec.param("gamma", params.gamma())
        .param("n", json!(n_list))
        .param("k_max", k_max);
    for &n in n_list {
        for x in window.points() {
            let mut row = vec![Cell::from(n)];
            row.extend(point_cells(x));
            row.push(Cell::from(position_wavefunction(n, x, params)?));
            rec.push(row);
        }
    }
    Ok(rec)
}

pub fn spectrum(gamma: f64, big_n: usize, count: usize) -> CmdResult {
    let params = ModelParams::new(gamma)?;
    let trunc = FockTruncation::new(big_n)?;
    let eigenvalues = tridiagonal_eigenvalues(params, trunc, count)?;
    let mut rec = OutputRecord::new(
        "spectrum",
        &[
            "index",
            "eigenvalue",
            "nearest_sign",
            "nearest_k",
            "nearest_sqrt_k",
            "abs_error",
        ],
    );
    rec.param("gamma", params.gamma())
        .param("N", big_n)
        .param("count", count);
    let center = eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
    let center = center.map_or(0, |(i, _)| i) as i64;
    for (i, &lambda) in eigenvalues.iter().enumerate() {
        let k = (lambda * lambda).round() as u64;
        let nearest = if lambda < 0.0 {
            SupportPoint::minus(k)
        } else {
            SupportPoint::plus(k)
        };
        rec.push(vec![
            Cell::from(i as i64 - center),
            Cell::from(lambda),
            Cell::from(nearest.sign()),
            Cell::from(nearest.k()),
            Cell::from(nearest.value()),
            Cell::from((lambda - nearest.value()).abs()),
        ]);
    }
    Ok(rec)
}

pub fn kernel(gamma: f64, k_max: u64, mode: KernelMode, n_max: Option<u64>) -> CmdResult {
    let params = ModelParams::new(gamma)?;
    let mut columns = vec!["x_sign", "x_k", "y_sign", "y_k", "re", "im"];
    if mode == KernelMode::Both {
        columns.extend(["re2", "im2", "abs_diff"]);
    }
    let mut rec = OutputRecord::new("kernel", &columns);
    rec.param("gamma", params.gamma())
        .param("k_max", k_max)
        .param(
            "mode",
            match mode {
                KernelMode::Series => "series",
                KernelMode::Closed => "closed",
                KernelMode::Both => "both",
            },
        );
    if let Some(n) = n_max {
        rec.param("n_max", n);
    }
    let points: Vec<SupportPoint> = if k_max == 0 {
        vec![SupportPoint::origin()]
    } else {
        SpectrumWindow::new(k_max)?.points().collect()
    };
    let series = |x, y| -> Result<Complex64, CliError> {
        Ok(match n_max {
            Some(n) => fourier_kernel_series(x, y, params, n)?,
            None => fourier_kernel_series_default(x, y, params)?,
        })
    };
    for &x in &points {
        for &y in &points {
            let mut row = vec![
                Cell::from(x.sign()),
                Cell::from(x.k()),
                Cell::from(y.sign()),
                Cell::from(y.k()),
            ];
            let first = match mode {
                KernelMode::Closed => fourier_kernel_closed(x, y, params)?,
                _ => series(x, y)?,
            };
            row.extend([Cell::from(first.re), Cell::from(first.im)]);
            if mode == KernelMode::Both {
                let second = fourier_kernel_closed(x, y, params)?;
                row.extend([
                    Cell::from(second.re),
                    Cell::from(second.im),
                    Cell::from((first - second).norm()),
                ]);
            }
            rec.push(row);
        }
    }
    Ok(rec)
}

pub fn observables(gamma: f64, n_max: u64, big_n: usize) -> CmdResult {
    let params = ModelParams::new(gamma)?;
    let trunc = FockTruncation::new(big_n)?;
    let mut rec = OutputRecord::new(
        "observables",
        &[
            "n",
            "uncertainty_formula",
            "uncertainty_matrix",
            "commutator_im_formula",
            "commutator_im_matrix",
            "energy_formula",
            "energy_matrix",
        ],
    );
    rec.param("gamma", params.gamma())
        .param("n_max", n_max)
        .param("N", big_n);
    for n in 0..=n_max {
        rec.push(vec![
            Cell::from(n),
            Cell::from(uncertainty_product(n, params)),
            Cell::from(uncertainty_product_matrix(n, params, trunc)?),
            Cell::from(commutator_qp_eigenvalue(n, params).im),
            Cell::from(commutator_qp_matrix(n, params, trunc)?.eigenvalue.im),
            Cell::from(energy_expectation(n, params)),
            Cell::from(energy_expectation_matrix(n, params, trunc)?),
        ]);
    }
    Ok(rec)
}

pub fn limit(gamma: f64, j_list: &[u64], n_max: u64, k_max: u64) -> CmdResult {
    let params = ModelParams::new(gamma)?;
    if j_list.is_empty() {
        return Err(CliError::Argument("--j-list must not be empty".into()));
    }
    let mut rec = OutputRecord::new("limit", &["j", "p", "max_error"]);
    rec.param("gamma", params.gamma())
        .param("j", json!(j_list))
        .param("n_max", n_max)
        .param("k_max", k_max);
    for &j in j_list {
        let sl = Sl21Params::limit_coupling(j, params)?;
        rec.push(vec![
            Cell::from(j),
            Cell::from(sl.p()),
            Cell::from(limit_error(j, params, n_max, k_max)?),
        ]);
    }
    Ok(rec)
}

/// Point-by-point comparison on `x² <= min(k_max, j)` for each `j`.
pub fn limit_grid(gamma: f64, j_list: &[u64], n_max: u64, k_max: u64) -> CmdResult {
    let params = ModelParams::new(gamma)?;
    if j_list.is_empty() {
        return Err(CliError::Argument("--j-list must not be empty".into()));
    }
    let mut rec = OutputRecord::new(
        "limit",
        &[
            "j",
            "p",
            "n",
            "sign",
            "k",
            "x_value",
            "phi_sl21",
            "phi_limit",
            "abs_diff",
        ],
    );
    rec.param("gamma", params.gamma())
        .param("j", json!(j_list))
        .param("n_max", n_max)
        .param("k_max", k_max)
        .param("grid", true);
    for &j in j_list {
        let sl = Sl21Params::limit_coupling(j, params)?;
        let window = SpectrumWindow::new(k_max.min(j))?;
        for n in 0..=n_max {
            for x in window.points() {
                let finite = sl21_wavefunction(n, x, sl)?;
                let target = position_wavefunction(n, x, params)?;
                let mut row = vec![Cell::from(j), Cell::from(sl.p()), Cell::from(n)];
                row.extend(point_cells(x));
                row.extend([
                    Cell::from(finite),
                    Cell::from(target),
                    Cell::from((finite - target).abs()),
                ]);
                rec.push(row);
            }
        }
    }
    Ok(rec)
}

pub const IDENTITY_TOL: f64 = 1e-12;
pub const ORTHO_TOL: f64 = 1e-10;
pub const EIGVEC_TOL: f64 = 1e-9;
pub const KERNEL_TOL: f64 = 1e-10;

/// Named residuals of every invariant suite, with the first failure, if any.
///
/// `perturb` shifts `γ` in the matrix side of each two-path check; any
/// nonzero shift must make the report fail.
pub fn verify(
    gamma: f64,
    big_n: usize,
    level: Level,
    perturb: Option<f64>,
) -> Result<(OutputRecord, Option<String>), CliError> {
    let params = ModelParams::new(gamma)?;
    let trunc = FockTruncation::new(big_n)?;
    let matrix_params = ModelParams::new(gamma + perturb.unwrap_or(0.0))?;
    let mut rec = OutputRecord::new("verify", &["check", "residual", "tolerance", "pass"]);
    rec.param("gamma", params.gamma()).param("N", big_n).param(
        "level",
        match level {
            Level::Quick => "quick",
            Level::Full => "full",
        },
    );
    if let Some(d) = perturb {
        rec.param("perturb", d);
    }
    let mut add = |name: &str, residual: f64, tol: f64| {
        rec.push(vec![
            Cell::from(name),
            Cell::from(residual),
            Cell::from(tol),
            Cell::from(residual <= tol),
        ]);
    };

    for (name, r) in relation_residuals(trunc)?.iter() {
        add(name, r, IDENTITY_TOL);
    }
    let (hq, hp) = hamilton_lie_residuals(matrix_params, trunc)?;
    add("[Ĥ,q] = -i p", hq, IDENTITY_TOL);
    add("[Ĥ,p] = i q", hp, IDENTITY_TOL);
    add(
        "(p²+q²)/2 = γ² + H",
        energy_identity_residual(matrix_params, trunc)?,
        IDENTITY_TOL,
    );
    add(
        "diag(iⁿ) q diag(iⁿ)⁻¹ = p",
        phase_similarity_residual(matrix_params, trunc),
        IDENTITY_TOL,
    );

    let (degree, k_top) = match level {
        Level::Quick => (8, 3),
        Level::Full => (20, 10),
    };
    let window = SpectrumWindow::adaptive_for_degree(params, degree)?;
    let mut ortho = 0.0_f64;
    for m in 0..=degree {
        for n in 0..=degree {
            let expected = if m == n { 1.0 } else { 0.0 };
            ortho = ortho.max((orthonormal_sum(m, n, params, window)? - expected).abs());
        }
    }
    add(&format!("orthonormality m,n <= {degree}"), ortho, ORTHO_TOL);

    let n_top = 40.min(trunc.interior() as u64 - 1);
    let (mut unc, mut comm, mut energy) = (0.0_f64, 0.0_f64, 0.0_f64);
    for n in 0..=n_top {
        unc = unc.max(
            (uncertainty_product(n, params) - uncertainty_product_matrix(n, matrix_params, trunc)?)
                .abs(),
        );
        let column = commutator_qp_matrix(n, matrix_params, trunc)?;
        comm = comm
            .max((commutator_qp_eigenvalue(n, params) - column.eigenvalue).norm())
            .max(column.leakage);
        energy = energy.max(
            (energy_expectation(n, params) - energy_expectation_matrix(n, matrix_params, trunc)?)
                .abs(),
        );
    }
    add(
        &format!("uncertainty formula = matrix, n <= {n_top}"),
        unc,
        IDENTITY_TOL,
    );
    add(
        &format!("[q,p] eigenvalues, n <= {n_top}"),
        comm,
        IDENTITY_TOL,
    );
    add(
        &format!("energy expectation, n <= {n_top}"),
        energy,
        IDENTITY_TOL,
    );

    let (mut rq, mut rp) = (0.0_f64, 0.0_f64);
    for k in 0..=k_top {
        for x in [SupportPoint::plus(k), SupportPoint::minus(k)] {
            rq = rq.max(eigenvector(x, params, trunc)?.interior_residual(matrix_params, trunc));
            rp = rp.max(momentum_eigvec_residual(x, params, trunc)?);
        }
    }
    add(
        &format!("position eigenvectors, k <= {k_top}"),
        rq,
        EIGVEC_TOL,
    );
    add(
        &format!("momentum eigenvectors, k <= {k_top}"),
        rp,
        EIGVEC_TOL,
    );

    if level == Level::Full {
        let mut kd = 0.0_f64;
        for k in 0..=6 {
            for l in 0..=6 {
                for (x, y) in [
                    (SupportPoint::plus(k), SupportPoint::plus(l)),
                    (SupportPoint::plus(k), SupportPoint::minus(l)),
                ] {
                    let s = fourier_kernel_series_default(x, y, params)?;
                    kd = kd.max((s - fourier_kernel_closed(x, y, params)?).norm());
                }
            }
        }
        add("kernel series = closed form, k,l <= 6", kd, KERNEL_TOL);
        if big_n >= 128 {
            let ev = tridiagonal_eigenvalues(matrix_params, trunc, 21)?;
            let err = ev
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let offset = i as f64 - 10.0;
                    (v - offset.signum() * offset.abs().sqrt()).abs()
                })
                .fold(0.0, f64::max);
            add("central spectrum = {0, ±√k : k <= 10}", err, ORTHO_TOL);
        }
    }

    let failed = rec.rows.iter().find_map(|row| match (&row[0], &row[3]) {
        (Cell::Text(name), Cell::Bool(false)) => Some(name.clone()),
        _ => None,
    });
    Ok((rec, failed))
}
