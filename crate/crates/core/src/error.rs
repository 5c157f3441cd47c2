use thiserror::Error;

/// Errors raised by lattice construction, minor manipulation and the
/// poset/zipping machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("closure is not a closure operator on {set:?}: {reason}")]
    NonClosure { set: Vec<usize>, reason: String },
    #[error("generator {0} equals the bottom element")]
    GeneratorIsBottom(usize),
    #[error("generators {0} and {1} are the same lattice element")]
    DuplicateGenerator(usize, usize),
    #[error("{0} generators exceed the supported maximum of {1}")]
    TooManyGenerators(usize, usize),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("element {0} is not strictly above the minimal element")]
    NotAbove(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graph edge {0} is a self-loop")]
    SelfLoop(usize),
    #[error("index {index} out of range for {len} generators")]
    BadIndex { index: usize, len: usize },
    #[error("minors belong to different host lattices")]
    HostMismatch,
    #[error("enumeration needs {needed} minors, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("no join: {0}")]
    NoJoin(String),
    #[error("not an order minor: {0}")]
    NotAnOrderMinor(String),
    #[error("method not applicable: {0}")]
    MethodInapplicable(String),
    #[error("lattice has a parallel: {0}")]
    HasParallel(String),
    #[error("poset lacks a bottom or top element")]
    NoBounds,
    #[error("poset is not graded")]
    NotGraded,
    #[error("ab-index has no cd-expression: {0}")]
    NotCd(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("poset too large for isomorphism search ({0} elements)")]
    TooLarge(usize),
    #[error("map is not join-preserving on elements {0} and {1}")]
    NotJoinPreserving(usize, usize),
    #[error("generator {0} is not sent to a generator or bottom")]
    GeneratorImageViolation(usize),
    #[error("strong map is not surjective")]
    NotSurjective,
    #[error("not a zipper: {0}")]
    NotAZipper(String),
    #[error("zipper not found: {0}")]
    ZipperNotFound(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
