//! Error type shared by the model-building layers.

use thiserror::Error;

/// Errors raised while constructing or combining semantic objects.
///
/// Parse errors for the concrete formula syntax live in
/// [`crate::syntax::ParseError`]; derivation-checking diagnostics live in
/// [`crate::proofs::CheckError`].  Everything else funnels through here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("signature must declare at least one variable")]
    EmptyDomain,
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("variable `{0}` has an empty range")]
    EmptyRange(String),
    #[error("variable `{var}` lists value `{value}` twice")]
    DuplicateValue { var: String, value: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{value}` is not in the range of variable `{var}`")]
    UnknownValue { var: String, value: String },
    #[error("assignment has {got} values but the signature has {expected} variables")]
    AssignmentArity { expected: usize, got: usize },
    #[error("value index {value} is out of range for variable `{var}`")]
    ValueOutOfRange { var: String, value: usize },
    #[error("variable `{0}` cannot be its own parent")]
    SelfParent(String),
    #[error("parent list of `{0}` is not strictly increasing in signature order")]
    UnsortedParents(String),
    #[error("mechanism table for `{var}` has {got} entries, expected {expected}")]
    TableSize {
        var: String,
        expected: usize,
        got: usize,
    },
    #[error("the parent graph has a cycle through `{0}`")]
    CyclicGraph(String),
    #[error("row {row} is not compatible with the function component at `{var}`")]
    IncompatibleRow { row: String, var: String },
    #[error("teams are capped at {cap} rows/members; got {got}")]
    TeamTooLarge { cap: usize, got: usize },
    #[error("equation sequence must be nonempty")]
    EmptyEquationSeq,
    #[error("inconsistent equation sequence: `{var}` is given two distinct values")]
    InconsistentEquations { var: String },
    #[error("function components are not similar (~); union is undefined")]
    NotSimilar,
    #[error("conversion to a causal team needs a nonempty generalized team")]
    EmptyGeneralizedTeam,
    #[error("conversion to a causal team needs all members to share one function component")]
    MixedFunctionComponents,
    #[error("objects belong to different signatures")]
    SignatureMismatch,
    #[error("class of teams must be nonempty")]
    EmptyClass,
    #[error("class of teams is not {property}; witness: {witness}")]
    ClassNotClosed {
        property: &'static str,
        witness: String,
    },
    #[error("{0}")]
    Invalid(String),
}
