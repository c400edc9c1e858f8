//! Nerve homology, homology with functor coefficients, and the fundamental
//! group of a finite category.

mod chain;
mod pi1;
mod snf;

pub use chain::{
    build_complex, functor_homology, nerve_chain_complex, nerve_simplices, ChainComplex,
    CoefficientFunctor, Coefficients, HomologyGroup, Simplex, DEFAULT_MAX_CHAINS,
};
pub use pi1::{
    abelianization, coset_enumeration, e_subgroup, pi1_presentation, pi1_vs_quotient,
    CosetEnumeration, CosetOutcome, Pi1Presentation, Pi1Report, Presentation, DEFAULT_MAX_COSETS,
};
pub use snf::{rank_mod_p, smith_invariants, IntMatrix};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("more than {cap} chains in degree {degree}")]
    ChainCap { degree: usize, cap: usize },
    #[error("degree {degree} is above the truncation degree {max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("coefficient functor is not a functor: {0}")]
    NotFunctorial(String),
    #[error("object {0} does not exist")]
    UnknownObject(usize),
    #[error("the component of object {basepoint} reaches only {reached} objects")]
    DisconnectedBasepoint { basepoint: usize, reached: usize },
    #[error("{0}")]
    Incompatible(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
