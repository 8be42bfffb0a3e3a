use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("nested ^m markers are not allowed (byte {pos})")]
    NestedJump { pos: usize },
    #[error("expected a plain word but found an ^m marker")]
    UnexpectedJump,

    #[error("group elements belong to different oracles")]
    OracleMismatch,
    #[error("{0} is only available for free groups")]
    RequiresFreeGroup(&'static str),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("operation requires a finite group")]
    InfiniteGroup,
    #[error("seed space too large to enumerate ({0} edges and vertices)")]
    EnumerationTooLarge(usize),

    #[error("relator `{lhs}` = `{rhs}` does not hold in the group")]
    RelatorNotInGroup { lhs: String, rhs: String },
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("closure budget limits must be positive")]
    ZeroBudget,
    #[error("subgraph is not connected")]
    Disconnected,
    #[error("closure did not stabilize within the budget")]
    NotStabilized,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("target closure does not contain the source closure on this seed")]
    NotCoarser,

    #[error("presentation error on statement {statement}: {message}")]
    Presentation { statement: usize, message: String },
}
