use thiserror::Error;

/// Errors raised by the workbench. Verification failures are reported
/// through certificates, not through this type; these are contract
/// violations on inputs.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group {0} is not abelian")]
    NotAbelian(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("sections belong to different bundles")]
    BundleMismatch,
    #[error("value at group element {0} does not lie in its fiber (defect {1:.3e})")]
    FiberViolation(usize, f64),
    #[error("bundle fails the Fell bundle axioms: {0}")]
    AxiomFailure(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),

    #[error("element does not lie in the coaction algebra (defect {0:.3e})")]
    NotInAlgebra(f64),
    #[error("element is not in the spectral subspace for {0} (defect {1:.3e})")]
    NotSpectral(usize, f64),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("map is not a *-homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("family is not an action of the dual group: {0}")]
    NotAnAction(String),
    #[error("spectral subspaces do not exhaust the algebra: sum of dimensions {found} != {expected}")]
    SpectralGapFailure { found: usize, expected: usize },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
