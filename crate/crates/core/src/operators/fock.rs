use crate::{Error, Result, C64, HBAR};
use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

/// Truncated bosonic ladder `|0⟩ … |n_fock−1⟩` of a mode with frequency `omega`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockBasis {
    pub n_fock: usize,
    pub omega: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockOp {
    Lower,
    Raise,
    Position,
    Momentum,
    Number,
}

impl FockBasis {
    pub fn new(n_fock: usize, omega: f64) -> Result<Self> {
        if n_fock < 2 {
            return Err(Error::InvalidBasis(format!("n_fock = {n_fock} < 2")));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidBasis(format!("omega = {omega} must be positive")));
        }
        Ok(Self { n_fock, omega })
    }

    /// √(ħ/2Ω), the oscillator length of the quadrature q̂.
    pub fn q_scale(&self) -> f64 {
        (HBAR / (2.0 * self.omega)).sqrt()
    }

    /// √(ħΩ/2)
    pub fn p_scale(&self) -> f64 {
        (HBAR * self.omega / 2.0).sqrt()
    }
}

/// Lowering operator b on an `n`-level ladder, real.
pub fn ladder_extended(n: usize) -> Mat<f64> {
    Mat::from_fn(n, n, |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 })
}

/// Real matrices of the operators that are real in the number basis.
/// `Momentum` is returned as p̂/i (real antisymmetric).
pub fn fock_operator_real(basis: &FockBasis, kind: FockOp) -> Mat<f64> {
    let n = basis.n_fock;
    let b = ladder_extended(n);
    match kind {
        FockOp::Lower => b,
        FockOp::Raise => b.transpose().to_owned(),
        FockOp::Number => Mat::from_fn(n, n, |i, j| if i == j { i as f64 } else { 0.0 }),
        FockOp::Position => {
            let s = basis.q_scale();
            Mat::from_fn(n, n, |i, j| s * (b[(i, j)] + b[(j, i)]))
        }
        FockOp::Momentum => {
            let s = basis.p_scale();
            Mat::from_fn(n, n, |i, j| s * (b[(j, i)] - b[(i, j)]))
        }
    }
}

pub fn fock_operator(basis: &FockBasis, kind: FockOp) -> Result<Mat<C64>> {
    FockBasis::new(basis.n_fock, basis.omega)?;
    let r = fock_operator_real(basis, kind);
    let n = basis.n_fock;
    Ok(match kind {
        FockOp::Momentum => Mat::from_fn(n, n, |i, j| C64::new(0.0, r[(i, j)])),
        _ => Mat::from_fn(n, n, |i, j| C64::new(r[(i, j)], 0.0)),
    })
}

/// Spectral calculus of the truncated quadrature q̂ (decomposed once, reused).
#[derive(Clone, Debug)]
pub struct QuadratureCalculus {
    pub basis: FockBasis,
    pub eigenvalues: Vec<f64>,
    /// columns are eigenvectors, real orthogonal
    pub eigenvectors: Mat<f64>,
}

impl QuadratureCalculus {
    pub fn new(basis: &FockBasis) -> Result<Self> {
        FockBasis::new(basis.n_fock, basis.omega)?;
        let q = fock_operator_real(basis, FockOp::Position);
        let evd = q
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
        let eigenvalues = evd.S().column_vector().iter().copied().collect();
        Ok(Self { basis: *basis, eigenvalues, eigenvectors: evd.U().to_owned() })
    }

    /// f(q̂) for a real function.
    pub fn apply_real(&self, f: impl Fn(f64) -> f64) -> Mat<f64> {
        let n = self.eigenvalues.len();
        let s = &self.eigenvectors;
        let fv: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        Mat::from_fn(n, n, |i, j| (0..n).map(|a| s[(i, a)] * fv[a] * s[(j, a)]).sum())
    }

    pub fn apply(&self, f: impl Fn(f64) -> C64) -> Mat<C64> {
        let n = self.eigenvalues.len();
        let s = &self.eigenvectors;
        let fv: Vec<C64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        Mat::from_fn(n, n, |i, j| (0..n).map(|a| fv[a] * (s[(i, a)] * s[(j, a)])).sum())
    }

    /// exp(−iθq̂)
    pub fn exp_i(&self, theta: f64) -> Mat<C64> {
        self.apply(|x| C64::from_polar(1.0, -theta * x))
    }

    /// f(p̂) using p̂ = −Ω R q̂ R†, R = exp(−iπ/2 b†b) (exact in the truncated space).
    pub fn apply_momentum(&self, f: impl Fn(f64) -> C64) -> Mat<C64> {
        let om = self.basis.omega;
        let g = self.apply(|x| f(-om * x));
        let phase = |n: usize| C64::new(0.0, -1.0).powu(n as u32);
        let n = g.nrows();
        Mat::from_fn(n, n, |i, j| phase(i) * g[(i, j)] * phase(j).conj())
    }
}

/// exp(−iθq̂) in the truncated basis. Builders that need many θ should hold a
/// [`QuadratureCalculus`] instead.
pub fn phase_exponential(basis: &FockBasis, theta: f64) -> Result<Mat<C64>> {
    if !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("theta = {theta}")));
    }
    Ok(QuadratureCalculus::new(basis)?.exp_i(theta))
}
