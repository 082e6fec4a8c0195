//! Numerical semigroups with almost arithmetic sequence presentations,
//! their row-factorization matrices and the binomial generators of their
//! defining ideals.

pub mod almost_arithmetic;
pub mod rf;
pub mod semigroup;
pub mod sweep;
pub mod toric;

pub use almost_arithmetic::{
    AaError, AaPresentation, CandidateKind, PfCandidate, StructureConstants, SymmetricCase,
};
pub use rf::{Binomial, Construction, RfError, RfMatrix, RfRelationSet, RfSource};
pub use semigroup::{AperySet, Factorization, NumericalSemigroup, SemigroupError};
