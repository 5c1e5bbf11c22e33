use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot combine elements of Q(sqrt({0})) and Q(sqrt({1}))")]
    MixedField(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed number `{0}`")]
    NumberSyntax(String),

    #[error("interval lengths sum to {0}, expected exactly 1")]
    LengthSum(String),
    #[error("length of letter `{0}` is not positive")]
    NonPositiveLength(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("point {0} is outside [0,1[")]
    OutOfDomain(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("transformation has a connection within depth {depth}: T^{k}(mu_{i}) = mu_{j}")]
    NotRegularToDepth { depth: usize, i: usize, j: usize, k: usize },
    #[error("substitution has no fixpoint starting with `{0}`")]
    NoFixpoint(String),
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("language truncated at length {available}, need at least {needed}")]
    TruncationTooShort { needed: usize, available: usize },
    #[error("not a prefix code: `{0}` is a proper prefix of `{1}`")]
    NotPrefix(String, String),
    #[error("not a bifix code: `{0}` is a proper suffix of `{1}`")]
    NotBifix(String, String),
    #[error("code is not S-maximal: `{0}` has no prefix in the code")]
    NotSMaximal(String),
    #[error("code word `{0}` is not in the language")]
    NotInLanguage(String),
    #[error("word is not decodable at position {0}")]
    NotDecodable(usize),
    #[error("invalid coding morphism: {0}")]
    InvalidMorphism(String),

    #[error("extension graph of `{0}` is empty")]
    EmptyGraph(String),
    #[error("order does not cover the alphabet: {0}")]
    InvalidOrder(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation group is not transitive on {{1..{0}}}")]
    NotTransitive(usize),

    #[error("format error: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
