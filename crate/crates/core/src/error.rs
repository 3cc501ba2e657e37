use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution pole: denominator vanishes identically")]
    SubstitutionPole,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("non-invertible isomorphism")]
    Singular,
    #[error("generator sets do not match")]
    GeneratorMismatch,
    #[error("no image for generator `{0}` under pullback")]
    MissingGenerator(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("rank mismatch: {0} vs {1}")]
    Rank(usize, usize),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("non-polynomial dependence on fiber coordinate `{0}`")]
    NonPolynomialFiber(String),
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error("cocycle condition violated on {0}")]
    CocycleCondition(String),
    #[error("missing restriction map: {0}")]
    MissingRestriction(String),
    #[error("holomorphic mode violation: {0}")]
    Holomorphic(String),
    #[error("contract failure: {0}")]
    Contract(String),
    #[error("unknown connection family `{0}`")]
    UnknownFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CocycleCondition(_) => 3,
            Error::Contract(_) => 4,
            _ => 2,
        }
    }
}
