use super::{PotentialModel, RealGrid};
use crate::operators::{eig_hermitian, eig_symmetric, HermitianMatrix};
use crate::{Error, Result, HBAR};
use faer::Mat;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Charge of the particle in units of |e| (an electron).
pub const ELECTRON_CHARGE: f64 = -1.0;

/// Lowest matter eigenstates on a real-space grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatterSolution {
    pub grid: RealGrid,
    pub energies: Vec<f64>,
    /// ψ_i(x_j), normalized so that Σ_j ψ_i(x_j)² Δx = 1
    pub wavefunctions: Vec<Vec<f64>>,
    /// μ_ij = z Σ ψ_i x ψ_j Δx
    pub dipoles: Vec<Vec<f64>>,
}

impl MatterSolution {
    pub fn n_states(&self) -> usize {
        self.energies.len()
    }

    pub fn dipole_mat(&self, n: usize) -> Mat<f64> {
        Mat::from_fn(n, n, |i, j| self.dipoles[i][j])
    }

    /// Largest |ψ| over the two outermost points on each side, across all states.
    pub fn boundary_amplitude(&self) -> f64 {
        let n = self.grid.n_points;
        self.wavefunctions
            .iter()
            .flat_map(|w| [w[0], w[1], w[n - 2], w[n - 1]])
            .fold(0.0, |a, x| a.max(x.abs()))
    }
}

fn check_samples(grid: &RealGrid, potential: &PotentialModel) -> Result<Vec<f64>> {
    potential.validate()?;
    grid.points()
        .into_iter()
        .enumerate()
        .map(|(index, x)| {
            let v = potential.sample(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinitePotential { index, x })
            }
        })
        .collect()
}

/// Colbert–Miller sinc-DVR Hamiltonian (real symmetric).
pub fn dvr_hamiltonian_real(grid: &RealGrid, potential: &PotentialModel, mass: f64) -> Result<Mat<f64>> {
    if !(mass > 0.0) {
        return Err(Error::InvalidParameter(format!("mass {mass}")));
    }
    let v = check_samples(grid, potential)?;
    let dx = grid.dx();
    let pre = HBAR * HBAR / (mass * dx * dx);
    Ok(Mat::from_fn(grid.n_points, grid.n_points, |i, j| {
        if i == j {
            pre * PI * PI / 6.0 + v[i]
        } else {
            let d = i as f64 - j as f64;
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            pre * sign / (d * d)
        }
    }))
}

pub fn dvr_hamiltonian(grid: &RealGrid, potential: &PotentialModel, mass: f64) -> Result<HermitianMatrix> {
    HermitianMatrix::from_real(&dvr_hamiltonian_real(grid, potential, mass)?)
}

fn eigen_real(h: &HermitianMatrix) -> Result<(Vec<f64>, Mat<f64>)> {
    let n = h.dim();
    if h.is_real() {
        let re = Mat::from_fn(n, n, |i, j| h.matrix()[(i, j)].re);
        let s = eig_symmetric(&re, true)?;
        let u = s.eigenvectors.expect("requested");
        Ok((s.eigenvalues, Mat::from_fn(n, n, |i, j| u[(i, j)].re)))
    } else {
        let s = eig_hermitian(h, true)?;
        let u = s.eigenvectors.expect("requested");
        // a real symmetric problem stored as complex: rotate each vector to be real
        let mut out = Mat::<f64>::zeros(n, n);
        for j in 0..n {
            let piv = (0..n).max_by(|&a, &b| u[(a, j)].norm().total_cmp(&u[(b, j)].norm())).unwrap();
            let ph = u[(piv, j)].conj() / u[(piv, j)].norm();
            for i in 0..n {
                out[(i, j)] = (u[(i, j)] * ph).re;
            }
        }
        Ok((s.eigenvalues, out))
    }
}

/// Lowest `n_states` eigenpairs, degenerate clusters Gram–Schmidt orthogonalized
/// in index order, each vector signed so its largest-magnitude entry is positive.
pub fn matter_eigenstates(h: &HermitianMatrix, n_states: usize, grid: &RealGrid) -> Result<MatterSolution> {
    let n = h.dim();
    if n != grid.n_points {
        return Err(Error::Dimension(format!("H is {n}x{n}, grid has {} points", grid.n_points)));
    }
    if n_states > n || n_states == 0 {
        return Err(Error::TooManyStates { requested: n_states, available: n });
    }
    let (vals, u) = eigen_real(h)?;
    let mut vecs: Vec<Vec<f64>> = (0..n_states).map(|j| (0..n).map(|i| u[(i, j)]).collect()).collect();
    let mut start = 0;
    while start < n_states {
        let mut end = start + 1;
        while end < n_states && (vals[end] - vals[start]).abs() < 1e-10 * (1.0 + vals[start].abs()) {
            end += 1;
        }
        for a in start..end {
            for b in start..a {
                let c: f64 = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| x * y).sum();
                let vb = vecs[b].clone();
                vecs[a].iter_mut().zip(&vb).for_each(|(x, y)| *x -= c * y);
            }
            let nrm = vecs[a].iter().map(|x| x * x).sum::<f64>().sqrt();
            vecs[a].iter_mut().for_each(|x| *x /= nrm);
        }
        start = end;
    }
    let scale = 1.0 / grid.dx().sqrt();
    let wavefunctions: Vec<Vec<f64>> = vecs
        .into_iter()
        .map(|v| {
            let piv = v.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
            let s = if piv < 0.0 { -scale } else { scale };
            v.into_iter().map(|x| x * s).collect()
        })
        .collect();
    let mut sol = MatterSolution {
        grid: *grid,
        energies: vals[..n_states].to_vec(),
        wavefunctions,
        dipoles: Vec::new(),
    };
    sol.dipoles = dipole_matrix(&sol, grid);
    Ok(sol)
}

/// μ_ij = z·Σ_x ψ_i(x)·x·ψ_j(x)·Δx with z = −1.
pub fn dipole_matrix(sol: &MatterSolution, grid: &RealGrid) -> Vec<Vec<f64>> {
    let xs = grid.points();
    let dx = grid.dx();
    let n = sol.wavefunctions.len();
    let mut mu = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = sol.wavefunctions[i]
                .iter()
                .zip(&sol.wavefunctions[j])
                .zip(&xs)
                .map(|((a, b), x)| a * x * b)
                .sum();
            mu[i][j] = ELECTRON_CHARGE * s * dx;
            mu[j][i] = mu[i][j];
        }
    }
    mu
}

pub fn solve_matter(potential: &PotentialModel, mass: f64, grid: &RealGrid, n_states: usize) -> Result<MatterSolution> {
    let h = dvr_hamiltonian(grid, potential, mass)?;
    matter_eigenstates(&h, n_states, grid)
}

/// Grows the box by 25% at fixed point count until every retained state has
/// boundary amplitude below `tol`.
pub fn solve_matter_auto(
    potential: &PotentialModel,
    mass: f64,
    n_points: usize,
    initial_length: f64,
    n_states: usize,
    tol: f64,
) -> Result<MatterSolution> {
    let mut length = initial_length;
    for _ in 0..40 {
        let grid = RealGrid::new(n_points, length)?;
        let sol = solve_matter(potential, mass, &grid, n_states)?;
        if sol.boundary_amplitude() < tol {
            return Ok(sol);
        }
        length *= 1.25;
    }
    Err(Error::InvalidParameter(format!("box auto-expansion did not reach boundary amplitude {tol:e}")))
}
