use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("value is not a root of the polynomial")]
    NotARoot,
    #[error("division by zero")]
    DivisionByZero,
    #[error("homogeneous coordinates are all zero")]
    ZeroVector,
    #[error("points coincide; no line through them")]
    DegenerateLine,
    #[error("points are collinear; they do not span a plane")]
    DegenerateSpan,
    #[error("line is contained in the surface or curve")]
    ContainedLine,
    #[error("point is singular")]
    SingularPoint,
    #[error("every direction in the tangent pencil lies in the surface")]
    DegenerateSurface,
    #[error("the form vanishes identically on the plane")]
    PlaneInSurface,
    #[error("prime {0} exceeds the scan bound {1}")]
    PrimeTooLarge(u64, u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("form has non-integral coefficients after scaling")]
    NonIntegralForm,
    #[error("point does not lie on the surface")]
    NotOnSurface,
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("Geiser map undefined: source equals centre")]
    WellDefinedness,
    #[error("line through centre and source lies in the surface (centre not good)")]
    GoodnessViolation,
    #[error("class is the tangent-section class; its image is zero")]
    ExcludedCurve,
    #[error("centre lies on the quadric")]
    IsotropicCenter,
    #[error("centres coincide")]
    EqualCenters,
    #[error("degenerate P^1 parameter (0:0)")]
    DegenerateP1,
    #[error("chart normalisation impossible: {0}")]
    Chart(String),
    #[error("search exceeds the size guard ({0} candidates)")]
    SizeGuard(u128),
    #[error("subset is not contained in the relation")]
    NotSubset,
    #[error("edge ({0}, {1}) out of bounds")]
    EdgeOutOfBounds(usize, usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("configuration has no triple lines")]
    NoTripleLines,
    #[error("parse error: {0}")]
    Parse(String),
}
