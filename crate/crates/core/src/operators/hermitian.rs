use crate::{Error, Result, C64};
use faer::{Mat, Side};

/// Absolute Hermiticity tolerance applied at construction (atomic units).
pub const HERMITIAN_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-9;

/// Dense complex matrix verified Hermitian on construction.
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    m: Mat<C64>,
}

fn asymmetry(m: &Mat<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

impl HermitianMatrix {
    pub fn new(m: Mat<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::Dimension(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        let a = asymmetry(&m);
        if !(a <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian { asymmetry: a });
        }
        Ok(Self { m })
    }

    pub fn from_real(m: &Mat<f64>) -> Result<Self> {
        Self::new(Mat::from_fn(m.nrows(), m.ncols(), |i, j| C64::new(m[(i, j)], 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &Mat<C64> {
        &self.m
    }

    pub fn into_inner(self) -> Mat<C64> {
        self.m
    }

    pub fn asymmetry(&self) -> f64 {
        asymmetry(&self.m)
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.m.col_iter().all(|c| c.iter().all(|z| z.im == 0.0))
    }
}

/// Sorted eigenvalues, optional orthonormal eigenvectors (columns) and the
/// worst scaled residual ‖Hv − λv‖∞ / (1+|λ|).
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<Mat<C64>>,
    pub max_residual: Option<f64>,
}

impl SpectrumResult {
    pub fn lowest(&self, n: usize) -> &[f64] {
        &self.eigenvalues[..n.min(self.eigenvalues.len())]
    }

    pub fn vector(&self, i: usize) -> Option<Vec<C64>> {
        self.eigenvectors.as_ref().map(|v| v.col(i).iter().copied().collect())
    }
}

fn check_residual(worst: f64) -> Result<f64> {
    if worst.is_finite() && worst <= RESIDUAL_TOL {
        Ok(worst)
    } else {
        Err(Error::Eigensolver(format!("eigenpair residual {worst:e} exceeds {RESIDUAL_TOL:e}")))
    }
}

pub fn eig_hermitian(h: &HermitianMatrix, want_vectors: bool) -> Result<SpectrumResult> {
    let m = h.matrix();
    let fail = |e| Error::Eigensolver(format!("{e:?}"));
    if !want_vectors {
        let eigenvalues = m.self_adjoint_eigenvalues(Side::Lower).map_err(fail)?;
        return Ok(SpectrumResult { eigenvalues, eigenvectors: None, max_residual: None });
    }
    let evd = m.self_adjoint_eigen(Side::Lower).map_err(fail)?;
    let eigenvalues: Vec<f64> = evd.S().column_vector().iter().map(|z| z.re).collect();
    let u = evd.U().to_owned();
    let hu = m * &u;
    let mut worst = 0.0f64;
    for (j, &lam) in eigenvalues.iter().enumerate() {
        let r = (0..u.nrows()).map(|i| (hu[(i, j)] - u[(i, j)] * lam).norm()).fold(0.0, f64::max);
        worst = worst.max(r / (1.0 + lam.abs()));
    }
    let worst = check_residual(worst)?;
    Ok(SpectrumResult { eigenvalues, eigenvectors: Some(u), max_residual: Some(worst) })
}

/// Real-symmetric counterpart (eigenvectors returned as complex for a uniform API).
pub fn eig_symmetric(m: &Mat<f64>, want_vectors: bool) -> Result<SpectrumResult> {
    let n = m.nrows();
    let mut a = 0.0f64;
    for j in 0..n {
        for i in 0..j {
            a = a.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if !(a <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian { asymmetry: a });
    }
    let fail = |e| Error::Eigensolver(format!("{e:?}"));
    if !want_vectors {
        let eigenvalues = m.self_adjoint_eigenvalues(Side::Lower).map_err(fail)?;
        return Ok(SpectrumResult { eigenvalues, eigenvectors: None, max_residual: None });
    }
    let evd = m.self_adjoint_eigen(Side::Lower).map_err(fail)?;
    let eigenvalues: Vec<f64> = evd.S().column_vector().iter().copied().collect();
    let u = evd.U().to_owned();
    let hu = m * &u;
    let mut worst = 0.0f64;
    for (j, &lam) in eigenvalues.iter().enumerate() {
        let r = (0..n).map(|i| (hu[(i, j)] - u[(i, j)] * lam).abs()).fold(0.0, f64::max);
        worst = worst.max(r / (1.0 + lam.abs()));
    }
    let worst = check_residual(worst)?;
    let uc = Mat::from_fn(n, n, |i, j| C64::new(u[(i, j)], 0.0));
    Ok(SpectrumResult { eigenvalues, eigenvectors: Some(uc), max_residual: Some(worst) })
}
