use alloc::string::String;

/// Errors raised by the core constructions.
///
/// Verification failures (a broken axiom, a non-isomorphism on homology) are
/// reported as data, not as errors. Errors are reserved for invalid inputs and
/// exhausted budgets.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group closure exceeds the cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("subgroup enumeration exceeds the cap of {cap} subgroups")]
    SubgroupCountExceedsCap { cap: usize },
    #[error("permutation {index} is not a bijection on {points} points")]
    InvalidPermutation { index: usize, points: usize },
    #[error("invalid Cayley table at row {row}, column {col}: {reason}")]
    InvalidCayleyTable { row: usize, col: usize, reason: String },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("the element set is not closed under multiplication")]
    NotASubgroup,
    #[error("subgroup {0} is not F-centric")]
    NotCentric(String),
    #[error("collection is missing Omega_p Z(P) = {missing} for P = {subgroup}")]
    CollectionTooSmall { missing: String, subgroup: String },
    #[error("invalid collection: {0}")]
    InvalidCollection(String),
    #[error("the square of fusion maps does not commute")]
    SquareDoesNotCommute,
    #[error("chain is not a subsimplex")]
    NotASubsimplex,
    #[error("morphism does not factor uniquely as isomorphism followed by a distinguished arrow: {0}")]
    FactorizationHypothesisFails(String),
    #[error("simplex budget of {budget} exceeded in dimension {dim}")]
    SimplexBudgetExceeded { dim: usize, budget: usize },
    #[error("boundary composition is nonzero in degree {degree}")]
    BoundaryCompositionNonzero { degree: usize },
    #[error("map does not commute with boundaries in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("the simplicial set is empty")]
    EmptyComplex,
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("{stage} exceeds budget: {detail}")]
    Budget { stage: String, detail: String },
}

pub type Result<T> = core::result::Result<T, Error>;
