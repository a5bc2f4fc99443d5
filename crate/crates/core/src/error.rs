use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("alphabet has more than 255 symbols")]
    AlphabetTooLarge,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("seed must be nonempty")]
    EmptySeed,
    #[error("maximum duplication length must be at least 1")]
    InvalidMaxDup,

    #[error("no tandem repeat of block length {length} at offset {offset}")]
    InvalidLocation { offset: usize, length: usize },
    #[error("expected an alphabet of {expected} symbols, got {found}")]
    AlphabetSize { expected: usize, found: usize },

    #[error("state budget of {budget} words exceeded; complete up to length {depth_reached}")]
    BudgetExceeded { budget: usize, depth_reached: usize },
    #[error("invalid length bound: {0}")]
    InvalidLength(String),

    #[error("no finite automaton construction for maximum duplication length {0} (supported: 1..=3)")]
    UnsupportedK(usize),
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("state {0} does not exist")]
    InvalidState(usize),
    #[error("unknown export format `{0}` (expected `dot` or `json`)")]
    UnknownFormat(String),
    #[error("malformed automaton document: {0}")]
    MalformedAutomaton(String),

    #[error("power iteration did not converge after {iterations} iterations (last estimate {last})")]
    NonConvergence { iterations: usize, last: f64 },
    #[error("matrix must be square and nonnegative")]
    InvalidMatrix,
    #[error("need at least three consecutive nonzero counts")]
    InsufficientData,
    #[error("every transition is forbidden; the constrained language is finite and empty beyond short words")]
    EmptyLanguage,
    #[error("forbidden words must have length at least 2")]
    InvalidForbidden,
    #[error("capacity is undefined for a unary alphabet base")]
    DegenerateBase,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
