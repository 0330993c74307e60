use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed exponent in token `{0}`")]
    MalformedExponent(String),
    #[error("zero exponent in token `{0}`")]
    ZeroExponent(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("too many generators: {0} (at most 64)")]
    TooManyGenerators(usize),
    #[error("defining graph file: {0}")]
    GraphFile(String),
    #[error("elements belong to different defining graphs")]
    MixedGraphs,
    #[error("distance exceeds search radius {0}")]
    NotInBall(u32),
    #[error("radius {radius} exceeds ball cap {cap}")]
    BallCapExceeded { radius: u32, cap: u32 },
    #[error("walls cross")]
    WallsCross,
    #[error("invalid wall pair: {0}")]
    InvalidPair(String),
    #[error("no extension: {0}")]
    NoExtension(String),
    #[error("invalid ray: {0}")]
    InvalidRay(String),
    #[error("rays have different base points")]
    BaseMismatch,
    #[error("membership undecided at depth {0}")]
    UncertifiedDepth(usize),
    #[error("cross ratio has an infinite term")]
    InfiniteTerm,
    #[error("separated chain exhausted")]
    ChainExhausted,
    #[error("configuration: {0}")]
    Config(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate relator {0} and {1}")]
    DuplicateRelator(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
