//! Truncated Fock algebra, joint-basis assembly and eigensolvers.

mod fock;
mod hermitian;
mod lanczos;
mod tensor;

pub use fock::{
    fock_operator, fock_operator_real, ladder_extended, phase_exponential, FockBasis, FockOp,
    QuadratureCalculus,
};
pub use hermitian::{eig_hermitian, eig_symmetric, HermitianMatrix, SpectrumResult, HERMITIAN_TOL};
pub use lanczos::{lowest_eigenpairs, LanczosOptions, LanczosResult, LinearOperator};
pub use tensor::{kron, kron_real, tensor_embed, Factor, JointBasis};
