use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {u}-{v} has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("malformed build-tree at {node}: {reason}")]
    Malformed { node: String, reason: String },
}

impl TreeError {
    pub(crate) fn malformed(node: impl Into<String>, reason: impl Into<String>) -> Self {
        TreeError::Malformed {
            node: node.into(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("palette has duplicate colour {0}")]
    DuplicatePaletteColour(u32),
    #[error("palette must have exactly {expected} colours, got {got}")]
    PaletteSize { expected: usize, got: usize },
    #[error("palette too small: need more than {classes} colours, got {got}")]
    PaletteTooSmall { classes: usize, got: usize },
    #[error("colouring covers {got} vertices, graph has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has colour {colour} outside the palette")]
    ColourOutsidePalette { vertex: usize, colour: u32 },
    #[error("colour {0} is not in the permissible set")]
    ColourNotPermitted(u32),
    #[error("adjacent vertices {0} and {1} share a colour")]
    Improper(usize, usize),
    #[error("colourings do not induce the same colour classes")]
    PartitionMismatch,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large: bound {bound} exceeds budget {budget}")]
    Budget { bound: u128, budget: u128 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("inconsistent deconstruction step: {0}")]
pub struct StepError(pub String);
