use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter name `{0}`")]
    DuplicateName(String),
    #[error("letter name `{0}` is not allowed (empty, whitespace, `,` or `^`)")]
    InvalidName(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("word `{0}` mixes compact and token notation")]
    MixedForms(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is disconnected: `{0}` is unreachable from `{1}`")]
    Disconnected(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("graph labelling is not folded")]
    NotFolded,
    #[error("vertex `{vertex}` has degree {degree} but at most {max} distinct labels exist")]
    ImpossibleLabelling { vertex: String, degree: usize, max: usize },
    #[error("no folded labelling found after {0} attempts")]
    RetriesExhausted(usize),

    #[error("{what}: requested {requested} exceeds cap {cap}")]
    CapExceeded { what: &'static str, requested: usize, cap: usize },

    #[error("word `{0}` does not lift to a path from the given vertex")]
    NoPath(String),
    #[error("word `{0}` does not read a closed path")]
    NotClosed(String),
    #[error("word `{0}` is not freely reduced")]
    NotReduced(String),
    #[error("the empty word has no filling")]
    EmptyWord,
    #[error("graph has diameter 0; tiles of length at most 3*diameter cannot exist")]
    DegenerateDiameter,

    #[error("small cancellation certificate did not pass")]
    NotCertified,
    #[error("graph has no cycles")]
    NoCycles,
}
