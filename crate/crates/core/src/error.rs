use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("parallel edge between `{0}` and `{1}`")]
    MultiEdge(String, String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QiError {
    #[error("step table is not monotone at entry {0}")]
    NotMonotone(usize),
    #[error("map is not total on the source: {0}")]
    NotTotal(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid tree parameters: {0}")]
    TreeParams(String),
    #[error("Type 2 labeling impossible: {0}")]
    Type2Labeling(String),
    #[error("missing bonding map between labels `{0}` and `{1}`")]
    MissingBonding(String, String),
    #[error("invalid adhesion family: {0}")]
    Adhesion(String),
    #[error("invalid bonding atlas: {0}")]
    Atlas(String),
    #[error("invalid group action: {0}")]
    Action(String),
    #[error("automorphism group exceeds cap {0}")]
    CapExceeded(usize),
    #[error("graph with {0} vertices is too large for exhaustive automorphism search (limit 16)")]
    TooLarge(usize),
    #[error("action does not permute the adhesion family: {0}")]
    NotSetwise(String),
    #[error("invalid amalgamation document: {0}")]
    Document(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("members do not cover the ambient space ({0} points uncovered)")]
    NotCovering(usize),
    #[error("covers live on different ambient spaces")]
    AmbientMismatch,
    #[error("exact oracle is limited to {cap} points, got {got}")]
    CapExceeded { cap: usize, got: usize },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("parameter r must be positive")]
    ZeroRadius,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("stratum {m} lies beyond the truncation (max {max})")]
    BeyondTruncation { m: u32, max: u32 },
    #[error("safe core too small: {0}")]
    SafeCore(String),
    #[error("consistency witnesses missing: {0}")]
    MissingConsistency(String),
    #[error("no label-respecting tree map: {0}")]
    NoTreeMap(String),
    #[error("stage `{stage}` failed: {message}")]
    Stage { stage: String, message: String },
}
