use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex cap exceeded: {requested} vertices requested, cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("trailing garbage after graph6 body")]
    TrailingGarbage,
    #[error("edge {{{0}, {1}}} is not present in the graph")]
    EdgeNotPresent(usize, usize),
    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("{what} too small: {got} < {min}")]
    TooSmall { what: &'static str, got: usize, min: usize },
    #[error("{0}")]
    InvalidGroup(String),
    #[error("generating set does not generate the group")]
    NotGenerating,
    #[error("generating set contains the identity")]
    ContainsIdentity,
    #[error("generating set is not closed under inverses")]
    NotInverseClosed,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not Hamiltonian")]
    NotHamiltonian,
    #[error("sequence is not a Hamiltonian cycle of the graph")]
    NotACycleOfG,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("zigzag parameters out of range: {0}")]
    SpecOutOfRange(String),
    #[error("zigzag cycles need an odd number of layers >= 5, got {0}")]
    LayersNotOdd(usize),
    #[error("a product factor is not Hamiltonian")]
    FactorNotHamiltonian,
    #[error("graph too large for the subset dynamic program: {n} > {max}")]
    TooLarge { n: usize, max: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Stable numeric code for scripting.
    pub fn code(&self) -> u32 {
        match self {
            Error::SelfLoop(_) => 10,
            Error::VertexOutOfRange { .. } => 11,
            Error::CapExceeded { .. } => 12,
            Error::MalformedHeader => 13,
            Error::TrailingGarbage => 14,
            Error::EdgeNotPresent(..) => 15,
            Error::DegreeMismatch(..) => 20,
            Error::NotAPermutation(_) => 21,
            Error::TooSmall { .. } => 30,
            Error::InvalidGroup(_) => 31,
            Error::NotGenerating => 32,
            Error::ContainsIdentity => 33,
            Error::NotInverseClosed => 34,
            Error::NotApplicable(_) => 35,
            Error::NotCubic => 36,
            Error::Disconnected => 37,
            Error::NotHamiltonian => 40,
            Error::NotACycleOfG => 41,
            Error::Inconclusive(_) => 42,
            Error::SpecOutOfRange(_) => 43,
            Error::LayersNotOdd(_) => 44,
            Error::FactorNotHamiltonian => 45,
            Error::TooLarge { .. } => 46,
            Error::BudgetExceeded(_) => 50,
            Error::Parse { .. } => 60,
            Error::Json(_) => 61,
            Error::Io(_) => 62,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
