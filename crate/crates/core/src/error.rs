use thiserror::Error;

use crate::ideal::Mask;

/// Crate-wide error type. Variants carry enough data to name the violated
/// precondition exactly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {0} divides generator {1}")]
    DivisibleGenerators(usize, usize),
    #[error("empty generator list")]
    EmptyInput,
    #[error("no variable divides generator {0} but not generator {1}")]
    NotMinimal(usize, usize),
    #[error("empty type mask")]
    EmptyType,
    #[error("no variable divides generator {0}")]
    UnitGenerator(usize),
    #[error("generator index out of range")]
    IndexOutOfRange,
    #[error("too many generators (cap {0})")]
    TooManyGenerators(usize),
    #[error("clique complex face budget exceeded (cap {0})")]
    FaceBudgetExceeded(usize),
    #[error("taylor edge budget exceeded (cap {0})")]
    EdgeBudgetExceeded(usize),
    #[error("matrix too large for dense rank (n = {n}, cap {cap})")]
    MatrixTooLarge { n: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("generator counts differ")]
    DimensionMismatch,
    #[error("matching has {got} edges, expected {want}")]
    WrongCardinality { got: usize, want: usize },
    #[error("matching edges share vertex {0:#b}")]
    SharedVertex(Mask),
    #[error("matching edge not present in taylor graph")]
    MissingEdge,
    #[error("matching uses homotopy index {0} outside sigma")]
    ForbiddenHomotopyIndex(usize),
    #[error("matching must be verified before building the auxiliary graph")]
    UnverifiedMatching,
    #[error("cycle cap exceeded (cap {0})")]
    CycleCapExceeded(usize),
    #[error("cycle decompositions overflow the disjoint-family enumeration (cap {0})")]
    OverlappingCyclesUnsupported(usize),
    #[error("theta index {0} is used by a matched edge")]
    ThetaTouchedByMatching(usize),
    #[error("could not sample the requested locus over F_{0}")]
    UnsatisfiableOverField(u64),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("no hand-built matching for this family")]
    NoHandConstruction,
    #[error("invalid input: {0}")]
    BadInput(String),
}
