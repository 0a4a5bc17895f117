use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^32")]
    ModulusTooLarge(u64),
    #[error("malformed coefficient {0}")]
    BadCoefficient(String),
    #[error("coefficient {value} has a denominator divisible by {p}")]
    DenominatorDivisibleByP { value: String, p: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("expected {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("term of degree {found} in a polynomial of degree {expected}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("value outside the field {0}")]
    ForeignElement(FieldSpec),
    #[error("expected {expected} binary forms, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("binary forms of mixed degrees {0} and {1}")]
    MixedDegrees(u32, u32),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("a polynomial needs at least one term to infer its degree")]
    NoTerms,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("projective space needs at least two coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("expected {expected} exponents or coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("coordinate index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("polynomial is not an eigenvector: monomial weights {0} and {1} differ")]
    NotEigenvector(u64, u64),
    #[error("the zero polynomial has no eigenvalue")]
    ZeroPolynomial,
    #[error("zero set must be a proper subset of the coordinates")]
    EmptySubspace,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinsysError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("pair indices must be distinct and in range, got ({0}, {1})")]
    BadPair(usize, usize),
    #[error("monomial {0} is not in the basis")]
    NotInBasis(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmoothError {
    #[error("characteristic {p} divides the degree {d}; the Jacobian criterion is unsound")]
    CharacteristicDividesDegree { p: u64, d: u32 },
    #[error("characteristic {p} divides the group order {l}")]
    CharacteristicDividesOrder { p: u64, l: u64 },
    #[error("the linear system has an empty basis")]
    EmptyBasis,
    #[error("enumeration out of scope: p = {p}, n = {n} (limits p <= {max_p}, n <= {max_n})")]
    OutOfScope {
        p: u64,
        n: usize,
        max_p: u64,
        max_n: usize,
    },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("the action is not faithful on projective space")]
    NotFaithful,
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("P^1 weights ({a}, {b}): a - b is not a unit modulo {l}")]
    NotFaithfulOnLine { a: u64, b: u64, l: u64 },
    #[error("all components of the curve are zero")]
    ZeroCurve,
    #[error("no admissible twist for degree {degree} and any unit multiple of the P^1 weights")]
    StructurallyImpossible { degree: u32 },
    #[error("weight pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("{value} has no {n}-th root in {field}")]
    NoRoot {
        value: String,
        n: u32,
        field: FieldSpec,
    },
    #[error("characteristic {p} is not 1 modulo {l}")]
    BadCharacteristic { p: u64, l: u64 },
    #[error("endpoint index {0} out of range")]
    EndpointOutOfRange(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}
