use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar {input:?}: {reason}")]
    ScalarParse { input: String, reason: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("position {position} out of range for degree {degree}")]
    PositionOutOfRange { position: usize, degree: usize },

    #[error("element is not homogeneous of degree {expected}")]
    DegreeMismatch { expected: usize },

    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("invalid bicharacter: {0}")]
    InvalidBicharacter(String),

    #[error("braiding is not symmetric; use the linear-algebra oracle instead")]
    NotSymmetric,

    #[error("braiding fails the braid equation: {0}")]
    BraidEquation(String),

    #[error("missing antipode")]
    MissingAntipode,

    #[error("subspace is not a categorical braided Hopf subalgebra: {0}")]
    InvalidSubalgebra(String),

    #[error("filtration axiom violated: {0}")]
    Filtration(String),

    #[error("algebra is not connected graded: {0}")]
    NotConnected(String),

    #[error("coinvariant computation failed: {0}")]
    Coinvariant(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
