//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse `{0}` as an exact fraction")]
    BadFraction(String),
    #[error("interval is empty")]
    EmptyInterval,
    #[error("interval degenerates to a single point")]
    DegenerateInterval,
    #[error("point {0} lies outside the function's domain")]
    OutsideDomain(String),
    #[error("window is not contained in the function's domain")]
    WindowOutsideDomain,
    #[error("domains do not intersect in a nondegenerate interval")]
    EmptyDomainIntersection,
    #[error("empty list of functions")]
    EmptyFunctionList,
    #[error("domain is unbounded below; no initial slope")]
    UnboundedBelow,
    #[error("domain is bounded above; no eventual slope")]
    BoundedAbove,
    #[error("operation is undefined for the zero series")]
    ZeroSeries,
    #[error("s = {0} lies outside the certified validity window")]
    OutsideValidityWindow(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error(
        "polynomial is not homogeneous of degree {declared}: found a term of total degree {found}"
    )]
    NotHomogeneous { declared: u32, found: u32 },
    #[error("expected a polynomial in {expected} variables, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("map must have at least two coordinates")]
    TooFewCoordinates,
    #[error("all map coordinates are identically zero")]
    AllCoordinatesZero,
    #[error("map is constant")]
    ConstantMap,
    #[error("map coordinates have a common zero (gcd has degree {0})")]
    CommonZero(usize),
    #[error("operation requires polynomial-mode data (no truncated coordinates)")]
    NotPolynomialMode,
    #[error("dimension mismatch: map targets P^{map_dim}, polynomial lives in P^{poly_dim}")]
    DimensionMismatch { map_dim: usize, poly_dim: usize },
    #[error("image of the map is contained in the hypersurface (pullback identically zero)")]
    ImageInHypersurface,
    #[error(
        "pullback head is identically zero up to the truncation order; containment undecidable"
    )]
    PullbackZeroToTruncation,
    #[error("residual m + N - dT is not constant; this indicates an internal inconsistency")]
    NonConstantResidual,
    #[error("map image does not lie in the declared variety")]
    ImageNotInVariety,
    #[error("need more hypersurfaces than the variety dimension: q = {q} <= n = {n}")]
    TooFewHypersurfaces { q: usize, n: usize },
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimensionMismatch { expected: usize, found: usize },
    #[error("line parametrization is degenerate (direction vectors are dependent)")]
    DegenerateLine,
    #[error("polynomial {index} does not vanish at the witness point")]
    NonVanishingAtWitness { index: usize },
    #[error("binary form is zero")]
    ZeroForm,
    #[error("tight-family generation failed verification: {0}")]
    FamilyVerification(String),
    #[error("scenario field `{field}`: {message}")]
    Scenario { field: String, message: String },
    #[error("scenario document: {0}")]
    ScenarioSyntax(String),
}

impl Error {
    pub(crate) fn scenario(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Scenario {
            field: field.into(),
            message: message.into(),
        }
    }
}
