//! Thick-restart Lanczos with full reorthogonalization for the lowest part of
//! large real-symmetric structured operators (dimensions beyond dense reach).

use crate::{Error, Result};
use faer::{Mat, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Real-symmetric operator given only through its action.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    /// y = A x
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

#[derive(Clone, Debug)]
pub struct LanczosOptions {
    pub n_eigs: usize,
    /// converged when ‖Av − θv‖ ≤ tol·(1+|θ|)
    pub tol: f64,
    /// Krylov subspace size between restarts (0 = automatic)
    pub max_basis: usize,
    pub max_matvecs: usize,
    pub seed: u64,
    pub want_vectors: bool,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self { n_eigs: 10, tol: 1e-10, max_basis: 0, max_matvecs: 200_000, seed: 0x5eed, want_vectors: false }
    }
}

#[derive(Clone, Debug)]
pub struct LanczosResult {
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub matvecs: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthogonalize `w` against the basis twice (classical Gram–Schmidt, twice is enough).
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) {
    for _ in 0..2 {
        for v in basis {
            let c = dot(v, w);
            axpy(-c, v, w);
        }
    }
}

pub fn lowest_eigenpairs(op: &dyn LinearOperator, opts: &LanczosOptions) -> Result<LanczosResult> {
    let n = op.dim();
    let nev = opts.n_eigs;
    if nev == 0 || nev >= n {
        return Err(Error::InvalidParameter(format!("n_eigs = {nev} for dimension {n}")));
    }
    let m = if opts.max_basis == 0 { (3 * nev + 40).max(2 * nev + 20) } else { opts.max_basis };
    let m = m.min(n);
    if m <= nev + 1 {
        return Err(Error::InvalidParameter(format!("Krylov size {m} too small for {nev} eigenpairs")));
    }
    let keep = (nev + (m - nev) / 3).min(m - 2).max(nev);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    let s = norm(&start);
    start.iter_mut().for_each(|x| *x /= s);

    let mut basis: Vec<Vec<f64>> = vec![start];
    // projected matrix T = Vᵀ A V, kept explicitly
    let mut t = vec![vec![0.0; m]; m];
    let mut locked_diag = 0usize; // rows [0, locked_diag) carry restart Ritz values
    let mut matvecs = 0usize;
    let mut w = vec![0.0; n];

    loop {
        // extend to m vectors
        let residual_norm;
        let mut residual = vec![0.0; n];
        let mut j = basis.len() - 1;
        loop {
            op.apply(&basis[j], &mut w);
            matvecs += 1;
            for i in 0..=j {
                if i < locked_diag && j < locked_diag {
                    continue;
                }
                let h = dot(&basis[i], &w);
                t[i][j] = h;
                t[j][i] = h;
            }
            orthogonalize(&basis, &mut w);
            let beta = norm(&w);
            if j + 1 == m {
                residual_norm = beta;
                residual.copy_from_slice(&w);
                break;
            }
            let next: Vec<f64> = if beta > 1e-13 * (1.0 + t[j][j].abs()) {
                w.iter().map(|x| x / beta).collect()
            } else {
                // invariant subspace: continue with a fresh random direction
                let mut r: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
                orthogonalize(&basis, &mut r);
                let s = norm(&r);
                r.iter_mut().for_each(|x| *x /= s);
                r
            };
            basis.push(next);
            j += 1;
        }

        let tm = Mat::from_fn(m, m, |i, k| t[i][k]);
        let evd = tm
            .self_adjoint_eigen(Side::Lower)
            .map_err(|e| Error::Eigensolver(format!("projected problem: {e:?}")))?;
        let theta: Vec<f64> = evd.S().column_vector().iter().copied().collect();
        let y = evd.U();
        let res: Vec<f64> = (0..m).map(|i| (residual_norm * y[(m - 1, i)]).abs()).collect();
        let converged = (0..nev).all(|i| res[i] <= opts.tol * (1.0 + theta[i].abs()));

        if converged || matvecs >= opts.max_matvecs {
            if !converged {
                let worst = (0..nev).map(|i| res[i] / (1.0 + theta[i].abs())).fold(0.0, f64::max);
                return Err(Error::Eigensolver(format!(
                    "Lanczos not converged after {matvecs} matvecs (worst scaled residual {worst:e})"
                )));
            }
            let eigenvectors = opts.want_vectors.then(|| {
                (0..nev)
                    .map(|i| {
                        let mut v = vec![0.0; n];
                        for (k, b) in basis.iter().enumerate() {
                            axpy(y[(k, i)], b, &mut v);
                        }
                        v
                    })
                    .collect()
            });
            return Ok(LanczosResult {
                eigenvalues: theta[..nev].to_vec(),
                residuals: res[..nev].to_vec(),
                eigenvectors,
                matvecs,
            });
        }

        // thick restart: keep the lowest `keep` Ritz vectors plus the residual direction
        let mut new_basis = Vec::with_capacity(m);
        for i in 0..keep {
            let mut v = vec![0.0; n];
            for (k, b) in basis.iter().enumerate() {
                axpy(y[(k, i)], b, &mut v);
            }
            new_basis.push(v);
        }
        for row in t.iter_mut() {
            row.iter_mut().for_each(|x| *x = 0.0);
        }
        for i in 0..keep {
            t[i][i] = theta[i];
        }
        let mut f = residual;
        orthogonalize(&new_basis, &mut f);
        let fnorm = norm(&f);
        if fnorm > 0.0 {
            f.iter_mut().for_each(|x| *x /= fnorm);
        } else {
            f = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            orthogonalize(&new_basis, &mut f);
            let s = norm(&f);
            f.iter_mut().for_each(|x| *x /= s);
        }
        new_basis.push(f);
        basis = new_basis;
        locked_diag = keep;
    }
}
