//! The superalgebra generators on the truncated Fock basis `|0>, ..., |N-1>`.
//!
//! States are indexed by a single integer: even `n = 2m` is `m` bosons with no
//! fermion, odd `n = 2m + 1` is `m` bosons plus one fermion. Odd generators
//! move by one step, `E^±` by two, and `H`, `R` are diagonal. Raising entries
//! that would land on `|N>` or beyond are dropped, which breaks the algebra
//! only in the last two rows and columns; identity checks therefore look at
//! the interior block `0..N-2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{invalid, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Size `N` of the truncated Fock basis. Even and at least 4, so that every
/// boson level carries both its fermion partners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockTruncation(usize);

impl FockTruncation {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(invalid(format!(
                "Fock truncation must be even and at least 4, got {n}"
            )));
        }
        Ok(Self(n))
    }

    pub fn dim(self) -> usize {
        self.0
    }

    /// Size of the block on which truncated products agree with the
    /// infinite-dimensional operators.
    pub fn interior(self) -> usize {
        self.0 - 2
    }
}

/// The model parameter `γ` of the position operator.
///
/// Only `γ^2` enters the spectrum and the eigenvectors, so a negative input is
/// replaced by `|γ|`. `γ = 0` splits the Jacobi matrix into 2x2 blocks and is
/// rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    gamma: f64,
}

impl ModelParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(invalid(format!("gamma must be finite, got {gamma}")));
        }
        if gamma == 0.0 {
            return Err(invalid(
                "gamma = 0 decouples the position operator into 2x2 blocks",
            ));
        }
        Ok(Self { gamma: gamma.abs() })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The Charlier parameter `a = γ^2`.
    pub fn a(&self) -> f64 {
        self.gamma * self.gamma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorId {
    FPlus,
    FMinus,
    QPlus,
    QMinus,
    EPlus,
    EMinus,
    H,
    One,
    /// Parity `R|n> = (-1)^n |n>`; not an element of the superalgebra itself.
    R,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 9] = [
        GeneratorId::FPlus,
        GeneratorId::FMinus,
        GeneratorId::QPlus,
        GeneratorId::QMinus,
        GeneratorId::EPlus,
        GeneratorId::EMinus,
        GeneratorId::H,
        GeneratorId::One,
        GeneratorId::R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorId::FPlus => "F+",
            GeneratorId::FMinus => "F-",
            GeneratorId::QPlus => "Q+",
            GeneratorId::QMinus => "Q-",
            GeneratorId::EPlus => "E+",
            GeneratorId::EMinus => "E-",
            GeneratorId::H => "H",
            GeneratorId::One => "1",
            GeneratorId::R => "R",
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Declared band structure of an [`OperatorMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Band {
    Diagonal,
    Tridiagonal,
    Pentadiagonal,
    Dense,
}

impl Band {
    fn half_width(self, dim: usize) -> usize {
        match self {
            Band::Diagonal => 0,
            Band::Tridiagonal => 1,
            Band::Pentadiagonal => 2,
            Band::Dense => dim,
        }
    }

    fn from_half_width(w: usize) -> Self {
        match w {
            0 => Band::Diagonal,
            1 => Band::Tridiagonal,
            2 => Band::Pentadiagonal,
            _ => Band::Dense,
        }
    }
}

/// A complex `N x N` matrix with a band hint. Entries outside the band are
/// zero; products only visit entries inside the bands of their factors.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    band: Band,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize, band: Band) -> Self {
        Self {
            dim,
            band,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, Band::Diagonal);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), Band::Diagonal);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn band(&self) -> Band {
        self.band
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Panics if `(row, col)` lies outside the declared band and `value` is nonzero.
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(
            value == ZERO || row.abs_diff(col) <= self.band.half_width(self.dim),
            "entry ({row}, {col}) outside the {:?} band",
            self.band
        );
        self.entries[row * self.dim + col] = value;
    }

    fn half_width(&self) -> usize {
        self.band.half_width(self.dim)
    }

    fn column_range(&self, row: usize) -> std::ops::Range<usize> {
        let w = self.half_width();
        row.saturating_sub(w)..(row + w + 1).min(self.dim)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim, self.band);
        for i in 0..self.dim {
            for j in self.column_range(i) {
                t.entries[j * self.dim + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        t.entries.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// Exact entrywise check, no tolerance.
    pub fn is_real_symmetric(&self) -> bool {
        self.is_real() && *self == self.transpose()
    }

    /// Exact entrywise check, no tolerance.
    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    /// True when every entry outside the declared band is zero.
    pub fn respects_band(&self) -> bool {
        let w = self.half_width();
        (0..self.dim).all(|i| (0..self.dim).all(|j| i.abs_diff(j) <= w || self.get(i, j) == ZERO))
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Diagonal and first off-diagonal of a real symmetric tridiagonal matrix.
    pub fn real_tridiagonal(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        if self.band > Band::Tridiagonal || !self.is_real_symmetric() {
            return Err(invalid("matrix is not real symmetric tridiagonal"));
        }
        let diag = (0..self.dim).map(|i| self.get(i, i).re).collect();
        let off = (1..self.dim).map(|i| self.get(i, i - 1).re).collect();
        Ok((diag, off))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.column_range(i).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn apply_real(&self, v: &[f64]) -> Vec<Complex64> {
        let lifted: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.apply(&lifted)
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `AB + BA`
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Largest `|A_ij - B_ij|` over the leading `block x block` submatrix.
    pub fn max_abs_diff(&self, other: &Self, block: usize) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let block = block.min(self.dim);
        let mut worst = 0.0_f64;
        for i in 0..block {
            for j in 0..block {
                worst = worst.max((self.get(i, j) - other.get(i, j)).norm());
            }
        }
        worst
    }

    /// Largest `|A_ij|` over the leading `block x block` submatrix.
    pub fn max_abs(&self, block: usize) -> f64 {
        self.max_abs_diff(&Self::zeros(self.dim, Band::Diagonal), block)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            band: self.band.max(other.band),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            band: self.band,
            entries: self.entries.iter().map(|&a| f(a)).collect(),
        }
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: Self) -> OperatorMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: Self) -> OperatorMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        self.map(|a| -a)
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Self) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let dim = self.dim;
        let width = self.half_width() + rhs.half_width();
        let mut out = OperatorMatrix::zeros(dim, Band::from_half_width(width));
        for i in 0..dim {
            for k in self.column_range(i) {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in rhs.column_range(k) {
                    out.entries[i * dim + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Mul<Complex64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Complex64) -> OperatorMatrix {
        self.map(|a| a * rhs)
    }
}

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: f64) -> OperatorMatrix {
        self.map(|a| a * rhs)
    }
}

fn parity_sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Matrix of a generator in the ordered basis `|0>, ..., |N-1>`.
pub fn generator_matrix(id: GeneratorId, trunc: FockTruncation) -> OperatorMatrix {
    let dim = trunc.dim();
    let band = match id {
        GeneratorId::H | GeneratorId::One | GeneratorId::R => Band::Diagonal,
        GeneratorId::EPlus | GeneratorId::EMinus => Band::Pentadiagonal,
        _ => Band::Tridiagonal,
    };
    let mut m = OperatorMatrix::zeros(dim, band);
    for n in 0..dim {
        let even = n % 2 == 0;
        let nf = n as f64;
        // (column n) -> (row target, coefficient)
        let image = match id {
            GeneratorId::FPlus => even.then(|| (n + 1, 1.0)),
            GeneratorId::FMinus => (!even).then(|| (n - 1, 1.0)),
            GeneratorId::QPlus => (!even).then(|| (n + 1, ((nf + 1.0) / 2.0).sqrt())),
            GeneratorId::QMinus => (even && n > 0).then(|| (n - 1, (nf / 2.0).sqrt())),
            GeneratorId::EPlus => {
                let c = if even {
                    ((nf + 2.0) / 2.0).sqrt()
                } else {
                    ((nf + 1.0) / 2.0).sqrt()
                };
                Some((n + 2, c))
            }
            GeneratorId::EMinus => {
                let c = if even {
                    (nf / 2.0).sqrt()
                } else {
                    ((nf - 1.0) / 2.0).sqrt()
                };
                (n >= 2).then(|| (n - 2, c))
            }
            GeneratorId::H => Some((n, nf / 2.0 + (1.0 - parity_sign(n)) / 4.0)),
            GeneratorId::One => Some((n, 1.0)),
            GeneratorId::R => Some((n, parity_sign(n))),
        };
        if let Some((row, c)) = image {
            if row < dim {
                m.set(row, n, real(c));
            }
        }
    }
    m
}

/// Off-diagonal sequence `γ, √1, γ, √2, γ, √3, ...` of the position operator.
pub fn position_off_diagonal(params: ModelParams, len: usize) -> Vec<f64> {
    (0..len)
        .map(|n| {
            if n % 2 == 0 {
                params.gamma()
            } else {
                (n.div_ceil(2) as f64).sqrt()
            }
        })
        .collect()
}

/// `q = γF^+ + Q^+ + γF^- + Q^-`, real symmetric tridiagonal with zero diagonal.
pub fn position_matrix(params: ModelParams, trunc: FockTruncation) -> OperatorMatrix {
    let dim = trunc.dim();
    let mut m = OperatorMatrix::zeros(dim, Band::Tridiagonal);
    for (n, c) in position_off_diagonal(params, dim - 1)
        .into_iter()
        .enumerate()
    {
        m.set(n + 1, n, real(c));
        m.set(n, n + 1, real(c));
    }
    m
}

/// `p = iγF^+ + iQ^+ - iγF^- - iQ^-`: `<n+1|p|n> = i c_n`, `<n|p|n+1> = -i c_n`.
pub fn momentum_matrix(params: ModelParams, trunc: FockTruncation) -> OperatorMatrix {
    let dim = trunc.dim();
    let mut m = OperatorMatrix::zeros(dim, Band::Tridiagonal);
    for (n, c) in position_off_diagonal(params, dim - 1)
        .into_iter()
        .enumerate()
    {
        m.set(n + 1, n, I * c);
        m.set(n, n + 1, -I * c);
    }
    m
}

/// `Ĥ = 2H + R/2 = diag(1/2, 3/2, 5/2, ...)`.
pub fn hamiltonian_matrix(trunc: FockTruncation) -> OperatorMatrix {
    let diag: Vec<Complex64> = (0..trunc.dim()).map(|n| real(n as f64 + 0.5)).collect();
    OperatorMatrix::from_diagonal(&diag)
}

/// `diag(i^n)`, the unitary carrying position eigenvectors to momentum ones.
pub fn phase_matrix(trunc: FockTruncation) -> OperatorMatrix {
    let diag: Vec<Complex64> = (0..trunc.dim()).map(|n| I.powu(n as u32)).collect();
    OperatorMatrix::from_diagonal(&diag)
}

/// Named max-abs residuals of a family of operator identities.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResidualReport {
    entries: Vec<(String, f64)>,
}

impl ResidualReport {
    pub fn push(&mut self, name: impl Into<String>, residual: f64) {
        self.entries.push((name.into(), residual));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, r)| r)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(n, r)| (n.as_str(), *r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry with the largest residual.
    pub fn worst(&self) -> Option<(&str, f64)> {
        self.iter().max_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn first_above(&self, tol: f64) -> Option<(&str, f64)> {
        self.iter().find(|&(_, r)| r.is_nan() || r > tol)
    }
}

fn require_interior(trunc: FockTruncation) -> Result<()> {
    if trunc.dim() < 8 {
        return Err(invalid(format!(
            "identity checks need N >= 8, got {}",
            trunc.dim()
        )));
    }
    Ok(())
}

/// Residuals of every bracket relation of the superalgebra on the interior
/// block: the odd-odd anticommutators, the even-even and the even-odd
/// commutators.
pub fn relation_residuals(trunc: FockTruncation) -> Result<ResidualReport> {
    require_interior(trunc)?;
    use GeneratorId::*;
    let g = |id| generator_matrix(id, trunc);
    let (fp, fm, qp, qm, ep, em, h, one) = (
        g(FPlus),
        g(FMinus),
        g(QPlus),
        g(QMinus),
        g(EPlus),
        g(EMinus),
        g(H),
        g(One),
    );
    let zero = OperatorMatrix::zeros(trunc.dim(), Band::Diagonal);
    let block = trunc.interior();
    let mut report = ResidualReport::default();
    let mut check = |name: &str, lhs: OperatorMatrix, rhs: &OperatorMatrix| {
        report.push(name, lhs.max_abs_diff(rhs, block));
    };

    check("{F+,F+} = 0", fp.anticommutator(&fp), &zero);
    check("{F-,F-} = 0", fm.anticommutator(&fm), &zero);
    check("{Q+,Q+} = 0", qp.anticommutator(&qp), &zero);
    check("{Q-,Q-} = 0", qm.anticommutator(&qm), &zero);
    check("{F+,F-} = 1", fp.anticommutator(&fm), &one);
    check("{Q+,Q-} = H", qp.anticommutator(&qm), &h);
    check("{F+,Q-} = 0", fp.anticommutator(&qm), &zero);
    check("{F-,Q+} = 0", fm.anticommutator(&qp), &zero);
    check("{F+,Q+} = E+", fp.anticommutator(&qp), &ep);
    check("{F-,Q-} = E-", fm.anticommutator(&qm), &em);

    check("[E-,E+] = 1", em.commutator(&ep), &one);
    check("[H,E+] = E+", h.commutator(&ep), &ep);
    check("[H,E-] = -E-", h.commutator(&em), &-&em);

    check("[E+,F+] = 0", ep.commutator(&fp), &zero);
    check("[E-,F-] = 0", em.commutator(&fm), &zero);
    check("[E+,F-] = 0", ep.commutator(&fm), &zero);
    check("[E-,F+] = 0", em.commutator(&fp), &zero);
    check("[E+,Q+] = 0", ep.commutator(&qp), &zero);
    check("[E-,Q-] = 0", em.commutator(&qm), &zero);
    check("[E+,Q-] = -F+", ep.commutator(&qm), &-&fp);
    check("[E-,Q+] = F-", em.commutator(&qp), &fm);
    check("[H,F+] = F+", h.commutator(&fp), &fp);
    check("[H,F-] = -F-", h.commutator(&fm), &-&fm);
    check("[H,Q+] = 0", h.commutator(&qp), &zero);
    check("[H,Q-] = 0", h.commutator(&qm), &zero);
    Ok(report)
}

/// Residuals of `[Ĥ, q] + i p` and `[Ĥ, p] - i q` on the leading `block`.
pub fn hamilton_lie_residuals_on_block(
    params: ModelParams,
    trunc: FockTruncation,
    block: usize,
) -> (f64, f64) {
    let h = hamiltonian_matrix(trunc);
    let q = position_matrix(params, trunc);
    let p = momentum_matrix(params, trunc);
    let first = &h.commutator(&q) + &(&p * I);
    let second = &h.commutator(&p) - &(&q * I);
    (first.max_abs(block), second.max_abs(block))
}

/// Interior-block residuals of the Hamilton-Lie equations
/// `[Ĥ, q] = -i p` and `[Ĥ, p] = i q`.
pub fn hamilton_lie_residuals(params: ModelParams, trunc: FockTruncation) -> Result<(f64, f64)> {
    require_interior(trunc)?;
    Ok(hamilton_lie_residuals_on_block(
        params,
        trunc,
        trunc.interior(),
    ))
}

/// Interior residual of `(p^2 + q^2)/2 = γ^2 + H`.
pub fn energy_identity_residual(params: ModelParams, trunc: FockTruncation) -> Result<f64> {
    require_interior(trunc)?;
    let q = position_matrix(params, trunc);
    let p = momentum_matrix(params, trunc);
    let lhs = &(&(&p * &p) + &(&q * &q)) * 0.5;
    let rhs = &(&OperatorMatrix::identity(trunc.dim()) * params.a())
        + &generator_matrix(GeneratorId::H, trunc);
    Ok(lhs.max_abs_diff(&rhs, trunc.interior()))
}

/// Full-matrix residual of `diag(i^n) q diag(i^n)^{-1} = p`.
pub fn phase_similarity_residual(params: ModelParams, trunc: FockTruncation) -> f64 {
    let u = phase_matrix(trunc);
    let rotated = &(&u * &position_matrix(params, trunc)) * &u.adjoint();
    rotated.max_abs_diff(&momentum_matrix(params, trunc), trunc.dim())
}

/// Partial sum of the position operator's off-diagonal entries.
///
/// The moment problem of a Jacobi matrix is determinate when this sum
/// diverges; here it grows like `N^{3/2}`.
pub fn off_diagonal_partial_sum(params: ModelParams, trunc: FockTruncation) -> f64 {
    position_off_diagonal(params, trunc.dim() - 1).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize) -> FockTruncation {
        FockTruncation::new(n).unwrap()
    }

    #[test]
    fn truncation_validation() {
        assert!(FockTruncation::new(2).is_err());
        assert!(FockTruncation::new(7).is_err());
        assert_eq!(t(8).interior(), 6);
    }

    #[test]
    fn gamma_domain() {
        assert!(ModelParams::new(0.0).is_err());
        assert!(ModelParams::new(f64::INFINITY).is_err());
        assert_eq!(ModelParams::new(-1.5).unwrap().gamma(), 1.5);
        assert_eq!(ModelParams::new(-1.5).unwrap().a(), 2.25);
    }

    #[test]
    fn f_plus_on_four_states() {
        let m = generator_matrix(GeneratorId::FPlus, t(4));
        for i in 0..4 {
            for j in 0..4 {
                let expected = if (i, j) == (1, 0) || (i, j) == (3, 2) {
                    1.0
                } else {
                    0.0
                };
                assert_eq!(m.get(i, j), real(expected), "({i},{j})");
            }
        }
    }

    #[test]
    fn h_diagonal() {
        let m = generator_matrix(GeneratorId::H, t(6));
        let d: Vec<f64> = m.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(d, vec![0.0, 1.0, 1.0, 2.0, 2.0, 3.0]);
        assert!(m.respects_band());
    }

    #[test]
    fn one_is_identity() {
        for n in [4, 10] {
            assert_eq!(
                generator_matrix(GeneratorId::One, t(n)),
                OperatorMatrix::identity(n)
            );
        }
    }

    #[test]
    fn adjoint_pairs() {
        use GeneratorId::*;
        let trunc = t(12);
        for (a, b) in [(FPlus, FMinus), (QPlus, QMinus), (EPlus, EMinus)] {
            assert_eq!(
                generator_matrix(a, trunc),
                generator_matrix(b, trunc).transpose()
            );
        }
        assert!(generator_matrix(H, trunc).is_real_symmetric());
        assert!(generator_matrix(R, trunc).is_real_symmetric());
    }

    #[test]
    fn position_off_diagonals() {
        let q = position_matrix(ModelParams::new(1.0).unwrap(), t(4));
        let (d, off) = q.real_tridiagonal().unwrap();
        assert_eq!(d, vec![0.0; 4]);
        assert_eq!(off, vec![1.0, 1.0, 1.0]);

        let q = position_matrix(ModelParams::new(0.5).unwrap(), t(6));
        let (_, off) = q.real_tridiagonal().unwrap();
        assert_eq!(off, vec![0.5, 1.0, 0.5, 2f64.sqrt(), 0.5]);
    }

    #[test]
    fn position_from_generators() {
        use GeneratorId::*;
        let params = ModelParams::new(0.7).unwrap();
        let trunc = t(10);
        let g = |id| generator_matrix(id, trunc);
        let f = &g(FPlus) + &g(FMinus);
        let qq = &g(QPlus) + &g(QMinus);
        let assembled = &(&f * params.gamma()) + &qq;
        assert_eq!(assembled, position_matrix(params, trunc));

        let p_assembled =
            &(&(&g(FPlus) - &g(FMinus)) * (I * params.gamma())) + &(&(&g(QPlus) - &g(QMinus)) * I);
        assert_eq!(p_assembled, momentum_matrix(params, trunc));
    }

    #[test]
    fn momentum_entries_and_symmetry() {
        let params = ModelParams::new(1.0).unwrap();
        let p = momentum_matrix(params, t(4));
        assert_eq!(p.get(1, 0), I);
        assert_eq!(p.get(0, 1), -I);
        assert!(p.is_hermitian());
        assert!(position_matrix(params, t(4)).is_real_symmetric());
    }

    #[test]
    fn hamiltonian_is_two_h_plus_half_r() {
        let trunc = t(4);
        let d: Vec<f64> = hamiltonian_matrix(trunc)
            .diagonal()
            .iter()
            .map(|z| z.re)
            .collect();
        assert_eq!(d, vec![0.5, 1.5, 2.5, 3.5]);
        let built = &(&generator_matrix(GeneratorId::H, trunc) * 2.0)
            + &(&generator_matrix(GeneratorId::R, trunc) * 0.5);
        assert_eq!(built, hamiltonian_matrix(trunc));
        let gaps: Vec<f64> = d.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(gaps.iter().all(|&g| g == 1.0));
    }

    #[test]
    fn relations_hold_on_interior() {
        let report = relation_residuals(t(32)).unwrap();
        assert_eq!(report.len(), 25);
        for (name, r) in report.iter() {
            assert!(r <= 1e-12, "{name}: {r}");
        }
        assert_eq!(report.get("{F+,F-} = 1"), Some(0.0));
        assert!(report.get("{Q+,Q-} = H").unwrap() <= 4.0 * f64::EPSILON * 32.0);
        assert_eq!(report.get("{F+,F+} = 0"), Some(0.0));
    }

    #[test]
    fn relations_break_on_full_block() {
        // {Q+,Q-} loses Q-Q+|N-1> at the edge
        let trunc = t(8);
        let qp = generator_matrix(GeneratorId::QPlus, trunc);
        let qm = generator_matrix(GeneratorId::QMinus, trunc);
        let h = generator_matrix(GeneratorId::H, trunc);
        assert!(qp.anticommutator(&qm).max_abs_diff(&h, 8) > 0.5);
        assert!(relation_residuals(t(6)).is_err());
    }

    #[test]
    fn hamilton_lie_examples() {
        for (gamma, n) in [(1.0, 64), (0.5, 16)] {
            let (a, b) = hamilton_lie_residuals(ModelParams::new(gamma).unwrap(), t(n)).unwrap();
            assert!(a <= 1e-12 && b <= 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn hamilton_lie_has_no_edge_effect() {
        // Ĥ is diagonal and q, p tridiagonal: no product reaches past the
        // truncation, so the equations hold on the full block too.
        let params = ModelParams::new(1.3).unwrap();
        let (a, b) = hamilton_lie_residuals_on_block(params, t(16), 16);
        assert!(a <= 1e-12 && b <= 1e-12, "{a} {b}");
    }

    #[test]
    fn energy_identity_and_phase_map() {
        for gamma in [0.5, 1.0, 2.0] {
            let params = ModelParams::new(gamma).unwrap();
            assert!(energy_identity_residual(params, t(40)).unwrap() <= 1e-12);
            assert!(phase_similarity_residual(params, t(40)) <= 1e-15);
        }
    }

    #[test]
    fn band_is_tracked_through_products() {
        let q = position_matrix(ModelParams::new(1.0).unwrap(), t(10));
        let q2 = &q * &q;
        assert_eq!(q2.band(), Band::Pentadiagonal);
        assert!(q2.respects_band());
        assert_eq!((&q2 * &q).band(), Band::Dense);
    }

    #[test]
    fn determinacy_sum_diverges() {
        let params = ModelParams::new(1.0).unwrap();
        let small = off_diagonal_partial_sum(params, t(64));
        let large = off_diagonal_partial_sum(params, t(1024));
        assert!(large > 10.0 * small);
    }
}
