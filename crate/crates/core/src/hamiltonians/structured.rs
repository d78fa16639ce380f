//! Matrix-free real-symmetric forms for dimensions beyond dense reach.

use crate::operators::LinearOperator;
use faer::{Mat, MatRef};

/// `M ⊗ 1 + 1 ⊗ ω(n+½) + C ⊗ (d+d†)` acting on row-major (matter, fock) vectors.
#[derive(Clone, Debug)]
pub struct PfOperator {
    /// diag(E) + DSE
    pub matter: Mat<f64>,
    /// ω·μA0
    pub coupling: Mat<f64>,
    pub omega: f64,
    pub n_fock: usize,
}

impl LinearOperator for PfOperator {
    fn dim(&self) -> usize {
        self.matter.nrows() * self.n_fock
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let (nm, nf) = (self.matter.nrows(), self.n_fock);
        let xm = MatRef::from_row_major_slice(x, nm, nf);
        let mx = &self.matter * xm;
        let cx = &self.coupling * xm;
        for i in 0..nm {
            for n in 0..nf {
                let mut v = mx[(i, n)] + self.omega * (n as f64 + 0.5) * xm[(i, n)];
                if n > 0 {
                    v += (n as f64).sqrt() * cx[(i, n - 1)];
                }
                if n + 1 < nf {
                    v += ((n + 1) as f64).sqrt() * cx[(i, n + 1)];
                }
                y[i * nf + n] = v;
            }
        }
    }
}

/// RAD in the (x-grid ⊗ q̂-eigenbasis) product basis:
/// `T ⊗ 1 + 1 ⊗ H_ph + Σ_j V_j ⊗ |μ_j⟩⟨μ_j|`, all real.
#[derive(Clone, Debug)]
pub struct RadGridOperator {
    pub kinetic: Mat<f64>,
    pub photon: Mat<f64>,
    /// projected V(x − λμ_j), one per q̂ eigenvalue
    pub potential: Vec<Mat<f64>>,
    /// ħΩ of the dressed ladder
    pub quantum: f64,
}

impl RadGridOperator {
    /// ⟨b†b⟩ of a normalized vector, read off the photon energy.
    pub fn ladder_excitation(&self, x: &[f64]) -> f64 {
        let (nx, nf) = (self.kinetic.nrows(), self.photon.nrows());
        let xm = MatRef::from_row_major_slice(x, nx, nf);
        let px = xm * &self.photon;
        let mut e = 0.0;
        for i in 0..nx {
            for a in 0..nf {
                e += xm[(i, a)] * px[(i, a)];
            }
        }
        let nrm: f64 = x.iter().map(|v| v * v).sum();
        e / (nrm * self.quantum) - 0.5
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let (nx, nf) = (self.kinetic.nrows(), self.photon.nrows());
        Mat::from_fn(nx * nf, nx * nf, |r, c| {
            let (i, a) = (r / nf, r % nf);
            let (j, b) = (c / nf, c % nf);
            let mut v = 0.0;
            if a == b {
                v += self.kinetic[(i, j)] + self.potential[a][(i, j)];
            }
            if i == j {
                v += self.photon[(a, b)];
            }
            v
        })
    }
}

impl LinearOperator for RadGridOperator {
    fn dim(&self) -> usize {
        self.kinetic.nrows() * self.photon.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let (nx, nf) = (self.kinetic.nrows(), self.photon.nrows());
        let xm = MatRef::from_row_major_slice(x, nx, nf);
        let mut out = &self.kinetic * xm + xm * &self.photon;
        for (j, v) in self.potential.iter().enumerate() {
            let col = v * xm.col(j);
            for i in 0..nx {
                out[(i, j)] += col[i];
            }
        }
        for i in 0..nx {
            for a in 0..nf {
                y[i * nf + a] = out[(i, a)];
            }
        }
    }
}
