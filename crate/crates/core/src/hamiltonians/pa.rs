use super::grid_rad::{symmetrize, KGridMatter};
use super::{exact_quadratic, Gauge, GaugeHamiltonian, ParamRecord};
use crate::matter::{PotentialModel, RealGrid, ELECTRON_CHARGE};
use crate::operators::{HermitianMatrix, JointBasis};
use crate::transforms::{coupling_gamma, CavityMode};
use crate::{Result, C64, HBAR};
use faer::Mat;

/// Coulomb-gauge (p·A) Hamiltonian under the long-wavelength approximation on
/// the K grid ⊗ Fock:
/// H_M − (z p̂A/m)(a†+a) + (z²A²/2m)(a†+a)² + ħω(a†a+½), with p̂ diagonal in K.
/// `diamagnetic = false` drops the A² term (used to expose its effect).
pub fn build_pa_lwa(
    model: &PotentialModel,
    grid: &RealGrid,
    mass: f64,
    mode: &CavityMode<f64>,
    n_fock: usize,
    diamagnetic: bool,
) -> Result<GaugeHamiltonian> {
    mode.validate()?;
    let kg = KGridMatter::new(model, grid)?;
    let n = kg.n();
    let z = ELECTRON_CHARGE;
    let a = mode.a0 * mode.polarization[0];
    let x = exact_quadratic(n_fock, |b, bd| b + bd);
    let x2 = exact_quadratic(n_fock, |b, bd| {
        let s = b + bd;
        &s * &s
    });
    let dia = if diamagnetic { z * z * a * a / (2.0 * mass) } else { 0.0 };
    let dim = n * n_fock;
    let mut h = Mat::<C64>::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            if let Some(c) = kg.coeff(j as i64 - i as i64) {
                for f in 0..n_fock {
                    h[(i * n_fock + f, j * n_fock + f)] += C64::new(c, 0.0);
                }
            }
        }
        let k = kg.kvals[i];
        let lin = -z * HBAR * k * a / mass;
        for f in 0..n_fock {
            for g in 0..n_fock {
                let mut v = lin * x[(f, g)] + dia * x2[(f, g)];
                if f == g {
                    v += HBAR * HBAR * k * k / (2.0 * mass) + HBAR * mode.omega * (f as f64 + 0.5);
                }
                h[(i * n_fock + f, i * n_fock + g)] += C64::new(v, 0.0);
            }
        }
    }
    symmetrize(&mut h);
    let gamma = coupling_gamma(&[*mode], &[z], &[mass])?[0];
    Ok(GaugeHamiltonian {
        gauge: Gauge::Pa,
        matrix: HermitianMatrix::new(h)?,
        basis: JointBasis::new(n, vec![n_fock]),
        params: ParamRecord {
            model: Some(*model),
            mass,
            omega: mode.omega,
            gamma: Some(gamma),
            a0: mode.a0,
            n_matter: n,
            n_fock: vec![n_fock],
            ..Default::default()
        },
        matter_momenta: kg.kvals.clone(),
    })
}
