use thiserror::Error;

use crate::algebra::{Constraint, Param};
use crate::field::FieldScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a supported prime")]
    NotPrime(u32),
    #[error("unknown field `{0}` (expected q, f2 or fp:<prime>)")]
    UnknownField(String),
    #[error("cannot parse scalar `{0}`")]
    BadLiteral(String),
    #[error("denominator vanishes in the field")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parameter {0} must be invertible")]
    NotInvertible(Param),
    #[error("constraint {constraint} violated (residual {residual})")]
    ConstraintViolated {
        constraint: Constraint,
        residual: FieldScalar,
    },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("parameters lie in different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TqftError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {0} has two passages with the same over/under role")]
    DuplicateRole(usize),
    #[error("crossing {0} is missing a passage")]
    MissingPassage(usize),
    #[error("crossing {0} carries different signs on its two passages")]
    SignMismatch(usize),
    #[error("syntax error at byte {position}: {message}")]
    BadSyntax { position: usize, message: String },
    #[error("state has length {got}, diagram has {expected} crossings")]
    LengthMismatch { expected: usize, got: usize },
    #[error("states {from} and {to} do not span a cube edge")]
    NotCubeEdge { from: String, to: String },
    #[error("no removable pattern: {0}")]
    PatternNotFound(String),
    #[error("invalid move site: {0}")]
    BadSite(String),
    #[error("{0} crossings exceeds the supported maximum of {1}")]
    TooManyCrossings(usize, usize),
    #[error("malformed JSON diagram: {0}")]
    Json(String),
}

/// A square face of the cube on which `d ∘ d` fails to vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWitness {
    pub degree: i64,
    pub from_state: String,
    pub to_state: String,
    pub value: FieldScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("d∘d ≠ 0 in degree {} between {} and {} (entry {})", .0.degree, .0.from_state, .0.to_state, .0.value)]
    DSquaredNonzero(FaceWitness),
    #[error("theory is not graded: {0}")]
    NotGraded(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Tqft(#[from] TqftError),
}
