use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` declared twice")]
    DuplicateElement(String),
    #[error("element `{0}` has no codimension")]
    MissingCodim(String),
    #[error("isomorphism search refused: {left} and {right} elements exceed the bound {limit}")]
    SizeLimit {
        left: usize,
        right: usize,
        limit: usize,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("integer overflow while reducing a {rows}x{cols} matrix")]
pub struct OverflowError {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("unsupported signature {0}")]
    UnsupportedSignature(String),
    #[error("move from `{from}` produced a diagram outside the enumerated classes")]
    Stratification { from: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
}
