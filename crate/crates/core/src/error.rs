use thiserror::Error;

/// Errors produced by graph parsing, analysis and the constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("trimming removed every vertex; the presented shift is empty")]
    EmptyShift,

    #[error("graph is not essential (vertex {0} lacks an incoming or outgoing edge)")]
    NotEssential(usize),

    #[error("word `{0}` is not in the language of the presentation")]
    WordNotInLanguage(String),

    #[error("closure exceeded the budget of {limit} states")]
    ClosureBudgetExceeded { limit: usize },

    #[error("no repeated layer state within length {lmax}")]
    NotYetPeriodic { lmax: usize },

    #[error("word has length {len}, pumping needs at least {needed}")]
    WordTooShort { len: usize, needed: usize },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("join hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("input report is not certified periodic")]
    UncertifiedInput,

    #[error("factor set did not stabilize within {limit} letters")]
    BudgetExceeded { limit: usize },

    #[error("no length satisfies the non-monotonicity conditions")]
    NoSuchLength,

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable variant name, used verbatim by the CLI and the C API.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::EmptyShift => "EmptyShift",
            Error::NotEssential(_) => "NotEssential",
            Error::WordNotInLanguage(_) => "WordNotInLanguage",
            Error::ClosureBudgetExceeded { .. } => "ClosureBudgetExceeded",
            Error::NotYetPeriodic { .. } => "NotYetPeriodic",
            Error::WordTooShort { .. } => "WordTooShort",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::UncertifiedInput => "UncertifiedInput",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NoSuchLength => "NoSuchLength",
            Error::Io(_) => "Io",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::ClosureBudgetExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
