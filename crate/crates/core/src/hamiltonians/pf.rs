use super::{exact_quadratic, Gauge, GaugeHamiltonian, ParamRecord, PfOperator};
use crate::matter::MatterSolution;
use crate::operators::{kron_real, HermitianMatrix, JointBasis};
use crate::transforms::CavityMode;
use crate::{Error, Result, HBAR};
use faer::Mat;

fn pf_parts(sol: &MatterSolution, mode: &CavityMode<f64>, n_matter: usize, n_fock: usize) -> Result<PfOperator> {
    mode.validate()?;
    if n_matter > sol.n_states() || n_matter == 0 {
        return Err(Error::TooManyStates { requested: n_matter, available: sol.n_states() });
    }
    if sol.dipoles.len() < n_matter {
        return Err(Error::InvalidParameter("matter solution carries no dipole matrix".into()));
    }
    if n_fock < 2 {
        return Err(Error::InvalidBasis(format!("n_fock = {n_fock} < 2")));
    }
    let w = mode.omega;
    let mu_a = {
        let a = mode.a0 * mode.polarization[0];
        Mat::from_fn(n_matter, n_matter, |i, j| sol.dipoles[i][j] * a)
    };
    let dse = &mu_a * &mu_a;
    let matter = Mat::from_fn(n_matter, n_matter, |i, j| {
        (if i == j { sol.energies[i] } else { 0.0 }) + w / HBAR * dse[(i, j)]
    });
    let coupling = Mat::from_fn(n_matter, n_matter, |i, j| w * mu_a[(i, j)]);
    Ok(PfOperator { matter, coupling, omega: HBAR * w, n_fock })
}

/// Matrix-free PF Hamiltonian for the iterative solver.
pub fn pf_operator(sol: &MatterSolution, mode: &CavityMode<f64>, n_matter: usize, n_fock: usize) -> Result<PfOperator> {
    pf_parts(sol, mode, n_matter, n_fock)
}

/// H = diag(E)⊗1 + 1⊗ħω(d†d+½) + ω(μ·A0)⊗(d†+d) + (ω/ħ)(μ·A0)²⊗1.
pub fn build_pf(sol: &MatterSolution, mode: &CavityMode<f64>, n_matter: usize, n_fock: usize) -> Result<GaugeHamiltonian> {
    let p = pf_parts(sol, mode, n_matter, n_fock)?;
    let x = exact_quadratic(n_fock, |b, bd| b + bd);
    let ladder = Mat::from_fn(n_fock, n_fock, |i, j| if i == j { p.omega * (i as f64 + 0.5) } else { 0.0 });
    let id_f = super::identity(n_fock);
    let id_m = super::identity(n_matter);
    let h = kron_real(&p.matter, &id_f) + kron_real(&id_m, &ladder) + kron_real(&p.coupling, &x);
    Ok(GaugeHamiltonian {
        gauge: Gauge::Pf,
        matrix: HermitianMatrix::from_real(&h)?,
        basis: JointBasis::new(n_matter, vec![n_fock]),
        params: ParamRecord {
            omega: mode.omega,
            a0: mode.a0,
            n_matter,
            n_fock: vec![n_fock],
            ..Default::default()
        },
        matter_momenta: Vec::new(),
    })
}
