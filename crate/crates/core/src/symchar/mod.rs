//! Symmetric functions evaluated at eigenvalue moduli, and the
//! representations whose characters they are.

mod functions;
mod kostka;
mod moduli;
mod partition;
mod rep;
mod rep_matrix;

pub use functions::{
    complete_homogeneous, complete_homogeneous_exact, complete_homogeneous_ln,
    complete_homogeneous_table_exact, elementary, elementary_exact, schur, schur_exact,
    HomogeneousLnSeq,
};
pub use kostka::{kostka, ssyt_weights, MAX_KOSTKA_SIZE};
pub use moduli::rational_to_f64;
pub use moduli::ModuliVector;
pub use partition::Partition;
pub use rep::{
    abs_character, abs_character_capped, abs_character_exact, rep_moduli, rep_moduli_capped,
    spectral_radius_ln, spectral_radius_rep, spectral_radius_rep_exact, RepSpec,
    DEFAULT_MODULI_CAP,
};
pub use rep_matrix::{rep_matrix, MAX_REP_MATRIX_DIM};
