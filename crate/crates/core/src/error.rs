use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("letter e{letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("exp requires a series with zero constant term")]
    NonzeroConstant,
    #[error("log requires a series with constant term 1")]
    ConstantNotOne,
    #[error("substituted series G_{0} does not have constant term 1")]
    NonUnital(usize),
    #[error("requested weight {requested} exceeds the cutoff {cutoff}")]
    WeightExceeded { requested: usize, cutoff: usize },
    #[error("domain violated: {0}")]
    Domain(String),
    #[error("non-generic parameters: {0}")]
    NonGeneric(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid path: {0}")]
    Path(String),
    #[error("no numeric backend for symbol {0}")]
    NoBackend(String),
    #[error("negative power of lef in {0}")]
    NegativeLef(String),
    #[error("singular matrix")]
    Singular,
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
