use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberFieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("malformed field data: {0}")]
    Malformed(String),
    #[error("field {0} has no Galois action configured")]
    NoGaloisAction(String),
    #[error("sign of the zero element is undefined")]
    ZeroSign,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("{p} divides a denominator")]
    NotIntegral { p: u32 },
    #[error("minimal polynomial of {field} is reducible mod {p}; no inertness certificate")]
    NotInert { field: String, p: u32 },
    #[error("element is not a {p}-adic unit")]
    NotUnit { p: u32 },
    #[error("cannot divide by {p}^{k}: element not divisible at precision {prec:?}")]
    NotDivisible { p: u32, k: u32, prec: Option<u32> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("singular curve (zero discriminant)")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point at infinity has no affine coordinates")]
    Infinity,
    #[error("z = -x/y undefined for a point with y = 0")]
    TwoTorsionZ,
    #[error("two-torsion not split over the field")]
    NotSplit,
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("malformed curve data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormalError {
    #[error("argument valuation {found} below the domain bound {required}")]
    Domain { found: u32, required: u32 },
    #[error("insufficient precision: {reason} (need about {required} digits, have {available})")]
    InsufficientPrecision {
        reason: String,
        required: u32,
        available: u32,
    },
    #[error("pole in the addition formula for this base point")]
    Pole,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LucasError {
    #[error("P and Q must be nonzero")]
    ZeroParameter,
    #[error("gcd(P, Q) = {0}, not 1")]
    NotCoprime(String),
    #[error("Q is not an integer")]
    NonIntegral,
}
