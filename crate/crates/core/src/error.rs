use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("degree {0} exceeds the supported maximum of 32768")]
    DegreeTooLarge(usize),

    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("the generated group does not act transitively")]
    NotTransitive,

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    #[error("invalid cycle set: {0}")]
    InvalidCycleSet(String),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("induced retraction table is ill-defined")]
    InducedTableIllDefined,

    #[error("cycle set is not indecomposable")]
    NotIndecomposable,

    #[error("inconsistent brace addition: {0}")]
    InconsistentAddition(String),

    #[error("the map Phi is constant")]
    ConstantPhi,

    #[error("parameter invariant violated: {0}")]
    InvariantViolation(String),

    #[error("map is not an automorphism of the cycle set")]
    NotAnAutomorphism,

    #[error("condition {condition} fails: {detail}")]
    CoCondition { condition: &'static str, detail: String },

    #[error("size {0} is not the square of a prime")]
    NotSizePSquared(usize),

    #[error("no classified family matches the input")]
    NoMatch,

    #[error("{what} = {value} exceeds the supported bound {bound}")]
    BoundExceeded { what: &'static str, value: u64, bound: u64 },

    #[error("size {n} exceeds the exhaustive-search limit {max}")]
    SizeTooLarge { n: usize, max: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("brace of order {order} is too large to dump as tables (limit {limit})")]
    TooLargeToDump { order: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
