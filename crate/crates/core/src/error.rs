//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no primitive {b}th root of unity in F_{p} ({b} does not divide {p} - 1)")]
    NoSuchRoot { p: u64, b: u64 },
    #[error("bad commutation matrix: {0}")]
    BadCommutationMatrix(String),
    #[error("bad algebra configuration: {0}")]
    BadConfig(String),
    #[error("Frobenius form is degenerate (internal inconsistency)")]
    DegenerateForm,
    #[error("Nakayama solve produced a non-diagonal basis action")]
    NotDiagonal,
    #[error("candidate map is not an algebra automorphism")]
    NotAutomorphism,
    #[error("generator {index} violates its nilpotency relation")]
    RelationViolated { index: usize, witness: Vec<u64> },
    #[error("generators {i} and {j} violate the commutation relation")]
    CommutationViolated { i: usize, j: usize, witness: Vec<u64> },
    #[error("subspace is not action-invariant")]
    NotInvariant,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("injective hull construction failed (no injective-on-socle combination)")]
    HullConstructionFailed,
    #[error("radical computation unreliable: p = {p} <= dim End = {dim}")]
    RadicalUncertain { p: u64, dim: usize },
    #[error("splitting search budget exceeded after {retries} retries")]
    SplitBudgetExceeded { retries: usize },
    #[error("module is projective; the stable translate is undefined")]
    ProjectiveInput,
    #[error("module is not absolutely indecomposable")]
    NotIndecomposable,
    #[error("no socle class found in the extension space (internal inconsistency)")]
    SocleSearchFailed,
    #[error("almost-split lifting test failed for a catalog module of dimension {0}")]
    LiftingTestFailed(usize),
    #[error("no bounding almost split sequence cached for this arrow")]
    MissingSequence,
    #[error("exploration budget exceeded")]
    BudgetExceeded,
    #[error("rank point is zero")]
    ZeroPoint,
    #[error("block size {i} out of range 1..={a}")]
    BlockOutOfRange { i: u32, a: u32 },
    #[error("rank threshold met exactly with a not dividing dim (internal inconsistency)")]
    NotDivisible,
    #[error("additive-function hypothesis violated: summands {0:?} meet the fragment or its shift")]
    HypothesisViolated(Vec<usize>),
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
