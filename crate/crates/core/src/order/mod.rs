//! Kostant's order on hyperbolic elements of `SL(n, C)`, decided through
//! majorization of log eigenvalue moduli, with certificates and separating
//! characters.

mod certificate;
mod compare;
mod majorize;
mod topk;
mod witness;

pub use certificate::{
    permutohedron_certificate, HullCertificate, SeparatingFunctional, TTransformCertificate,
    TTransformStep,
};
pub use compare::{kostant_compare, OrderVerdict, Relation};
pub use majorize::{
    majorize_additive, majorize_multiplicative, majorize_weak, LogVector, ORDER_SLACK,
};
pub use topk::{check_topk, TopKLevel, TopKReport};
pub use witness::{
    find_separating_character, find_separating_character_capped, power_bound, separating_sym_power,
    SeparatingWitness, SymPowerBound, MAX_SYM_POWER,
};
