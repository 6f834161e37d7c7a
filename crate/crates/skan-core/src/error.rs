//! Error type shared by every operation in the engine.
//!
//! Every failure is loud and specific: an operation either returns a fully
//! validated object or one of these variants. No operation silently truncates,
//! approximates, or guesses.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("simplicial identity {identity} fails at generator {generator}")]
    SimplicialIdentityViolation { identity: String, generator: String },

    #[error("face expression references unknown simplex {name} (dim {dim})")]
    DanglingFace { name: String, dim: usize },

    #[error("entry {name} is declared as a degeneracy and may not be listed as a generator")]
    DegenerateGeneratorListed { name: String },

    #[error("duplicate name {name} in dimension {dim}")]
    DuplicateName { name: String, dim: usize },

    #[error("dimension data through {needed} required, available through {available}")]
    InsufficientDimensionBound { needed: usize, available: usize },

    #[error("vertex {name} not found")]
    VertexNotFound { name: String },

    #[error("empty input: {reason}")]
    EmptyInput { reason: String },

    #[error("relation is not closed under the simplicial operators: {reason}")]
    RelationNotSimplicial { reason: String },

    #[error("map is not simplicial: {reason}")]
    MapNotSimplicial { reason: String },

    #[error("simplicial set is not {n}-reduced")]
    NotReduced { n: usize },

    #[error("simplicial group is not abelian at level {level}")]
    NotAbelian { level: usize },

    #[error("group action has a nontrivial stabilizer: {witness}")]
    ActionNotFree { witness: String },

    #[error("source fails the Kan condition: {witness}")]
    SourceNotKan { witness: String },

    #[error("target fails the Kan condition: {witness}")]
    TargetNotKan { witness: String },

    #[error("budget of {budget} exceeded during {during}")]
    BudgetExceeded { budget: usize, during: String },

    #[error("enumeration would exceed the budget: estimated {estimate} during {during}")]
    CombinatorialBlowup { estimate: String, during: String },

    #[error("cross-check mismatch in {construction}: {detail}")]
    CrossCheckMismatch { construction: String, detail: String },

    #[error("no certificate found: {reason}")]
    CertificateNotFound { reason: String },

    #[error("no section found for {map}")]
    SectionNotFound { map: String },

    #[error("twisting identity {identity} fails at {cell}")]
    TwistingIdentityViolation { identity: String, cell: String },

    #[error("projection is not a fibration: {witness}")]
    ProjectionNotFibration { witness: String },

    #[error("required certificate missing: {what}")]
    CertificateMissing { what: String },

    #[error("iterated intersection {which} is not certified contractible")]
    IntersectionNotContractible { which: String },

    #[error("invalid construction request: {reason}")]
    InvalidInput { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
