use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ZeroPolynomial: operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("MobiusNotUnimodular: ad - bc must equal 1")]
    MobiusNotUnimodular,
    #[error("CoincidentX: divisor points share the x-coordinate")]
    CoincidentX,
    #[error("InfinitePoint: divisor contains a point at infinity")]
    InfinitePoint,
    #[error("NotOnCurve: point does not satisfy y^2 = f(x)")]
    NotOnCurve,
    #[error("FactorMismatch: {0}")]
    FactorMismatch(String),
    #[error("NotAdmissible: {0}")]
    NotAdmissible(String),
    #[error("DegenerateDecomposition: Delta(p, q, r) = 0")]
    DegenerateDecomposition,
    #[error("IndexOutOfRange: {0}")]
    IndexOutOfRange(String),
    #[error("ZeroVector: input vector is zero")]
    ZeroVector,
    #[error("InvalidSigns: {0}")]
    InvalidSigns(String),
    #[error("RootsUnavailable: {0}")]
    RootsUnavailable(String),
    #[error("SingularMatrix")]
    SingularMatrix,
    #[error("UnsupportedDegree: {0}")]
    UnsupportedDegree(String),
    #[error("IllConditioned: {0}")]
    IllConditioned(String),
    #[error("PathDegeneracy: {0}")]
    PathDegeneracy(String),
    #[error("BasisSearchFailed: {0}")]
    BasisSearchFailed(String),
    #[error("NotRiemannMatrix: {0}")]
    NotRiemannMatrix(String),
    #[error("NormalizationSingular: {0}")]
    NormalizationSingular(String),
    #[error("PrecisionLoss: {0}")]
    PrecisionLoss(String),
    #[error("Parse: {0}")]
    Parse(String),
}
