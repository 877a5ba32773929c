use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-generic kappa {kappa}: denominator vanishes at q")]
    NonGenericKappa { kappa: f64 },

    #[error("outside convergent regime: kappa {kappa} must exceed {bound}")]
    Divergent { kappa: f64, bound: f64 },

    #[error("d = {d} is not in the decomposition")]
    NotInDecomposition { d: usize },

    #[error("not a highest weight vector")]
    NotHighestWeight,

    #[error("not a trivial-subrepresentation vector")]
    NotTrivial,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("clearance violated: {0}")]
    Clearance(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("parse error: {0}")]
    Parse(String),
}
