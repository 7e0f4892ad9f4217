use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("genus {0} is not supported here (surface presentations need genus >= 2)")]
    InvalidGenus(usize),
    #[error("invalid permutation data: {0}")]
    InvalidPermutation(String),
    #[error("relator {relator} does not act trivially from coset {coset}")]
    RelatorViolated { relator: usize, coset: usize },
    #[error("action is not transitive: basepoint orbit has {orbit} of {total} points")]
    NotTransitive { orbit: usize, total: usize },
    #[error("subgroups live over different presentations")]
    PresentationMismatch,
    #[error("word problem is not available for this presentation")]
    WordProblemUnavailable,
    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("intersection index {index} exceeds the configured cap {cap}")]
    IntersectionIndexOverflow { index: u64, cap: u64 },
    #[error("index {index} exceeds the configured cap {cap}")]
    IndexOverflow { index: u64, cap: u64 },
    #[error("arithmetic overflow in {0}")]
    ArithmeticOverflow(&'static str),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not invariant under the automorphism {0}")]
    NotInvariant(String),
    #[error("images do not define an endomorphism: {0}")]
    NotAnEndomorphism(String),
    #[error("invalid identification: {0}")]
    IdentificationInvalid(String),
    #[error("virtual automorphism cannot be restricted: {0}")]
    NotRestrictable(String),
    #[error("invalid cycle path: {0}")]
    InvalidCycle(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("not an isomorphism of lattices: {0}")]
    NotAnIsomorphism(String),
    #[error("orientation-reversing data rejected")]
    OrientationReversing,
    #[error("point is not in the upper half-plane")]
    NotInUpperHalfPlane,
    #[error("incompatible tower: {0}")]
    IncompatibleTower(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
