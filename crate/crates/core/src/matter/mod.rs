//! Potentials, DVR matter Hamiltonians and Fourier machinery.

mod dvr;
mod fourier;
mod grid;
mod potential;
pub mod special;

pub use dvr::{
    dipole_matrix, dvr_hamiltonian, dvr_hamiltonian_real, matter_eigenstates, solve_matter,
    solve_matter_auto, MatterSolution, ELECTRON_CHARGE,
};
pub use fourier::{
    bloch_reconstruction_check, box_fourier_coeff, potential_fourier_dense, unit_cell_fourier_coeff, FourierTable,
};
pub use grid::{RealGrid, ReciprocalGrid};
pub use potential::{PotentialModel, COEFF_CUTOFF};
