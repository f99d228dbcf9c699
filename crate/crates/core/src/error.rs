use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("internal containment violated: {0}")]
    ContainmentViolated(String),
    #[error("the central element does not commute with generator {0}")]
    NotCentral(String),
    #[error("regularity certificate failed at degree {degree}: expected {expected}, found {actual}")]
    NotRegularCertificate {
        degree: usize,
        expected: i64,
        actual: i64,
    },
    #[error("quantum-polynomial certificate failed: {0}")]
    NotQuantumPolynomial(String),
    #[error("the central element lies in the span of the relations")]
    RelationDependence,
    #[error("need at least two generators, found {0}")]
    UnsupportedDimension(usize),
    #[error("no stable central degree-2 element found in the quadratic dual")]
    NoStableCentral,
    #[error("base field does not split the algebra; irreducible factor {factor}")]
    NonSplit { factor: String },
    #[error("algebra is not semisimple (radical dimension {0})")]
    NotSemisimple(usize),
    #[error("algebra is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit vector is not a two-sided identity")]
    BadUnit,
    #[error("summand presentation misses relations: degree {degree} has {presented} vs {actual}")]
    AdditivityViolated {
        degree: usize,
        presented: usize,
        actual: usize,
    },
    #[error("the hypersurface is not an isolated singularity")]
    NotIsolated,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}
