use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants that the mathematics says cannot happen (`NotDivisible`,
/// `SignCoherenceViolation`, `InvariantViolation`) indicate an engine bug
/// rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable X{0} has no value at the evaluation point")]
    MissingVariable(u32),
    #[error("cannot mutate at frozen vertex {0}")]
    FrozenMutation(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("subquiver vertex set is empty")]
    EmptySubset,
    #[error("triangular extension needs a non-negative connecting matrix")]
    NegativeDelta,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable ids of the two quivers overlap")]
    VarCollision,
    #[error("C-matrix row {0} is not sign-coherent")]
    SignCoherenceViolation(usize),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("sequence is not reddening: vertex {0} is green at the end")]
    NotReddening(usize),
    #[error("quiver has an oriented cycle")]
    NotAcyclic,
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("arc {0} is not admissible")]
    NotAdmissible(String),
    #[error("({0},{1},{2}) is not a vertex of Q_{3}")]
    OutOfSimplex(i64, i64, i64, usize),
    #[error("poset does not have a unique minimal element")]
    NotPointed,
    #[error("attached piece does not have a unique minimal element")]
    PieceNotPointed,
    #[error("element {1} is not below element {0}")]
    InvalidPair(usize, usize),
    #[error("poset relations contain a cycle")]
    PosetCycle,
    #[error("duplicate cover relation ({0}, {1})")]
    DuplicateCover(usize, usize),
    #[error("label is not invertible")]
    NotInvertible,
    #[error("poset has rational labels; use ideal_function_eval")]
    NonPolynomialLabel,
    #[error("more than {0} ideals")]
    TooManyIdeals(usize),
    #[error("polynomial does not have constant term 1 after factoring")]
    NotUnital,
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
