//! Dense complex linear algebra: matrices, Schur-based eigenvalues and
//! spectral projectors, and the matrix exponential.

mod eigen;
mod exact;
mod expm;
mod matrix;
mod spectral;

pub use eigen::{eigen_spectrum, schur, Cluster, SchurForm, Spectrum, DEFAULT_CLUSTER_TOL};
pub use exact::{exact_spectral_projectors, null_space, triangular_eigenvalues};
pub use expm::{exp_nilpotent, mat_exp};
pub use matrix::{
    exact_one, exact_real, exact_to_complex, ComplexMatrix, ExactMatrix, ExactScalar, Matrix,
    Scalar,
};
pub use spectral::{
    spectral_decomposition, spectral_projectors, spectral_projectors_capped, ProjectorResiduals,
    SpectralDecomposition, DEFAULT_PROJECTOR_CAP,
};
