use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex set bound to n={found}, expected n={expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("graph has a bridge")]
    Bridge,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("wrong family: {0}")]
    WrongFamily(String),
    #[error("no automorphism of kind {0}")]
    NoAutomorphism(String),
    #[error("edge count mismatch: graph has {graph}, certificate has {cert}")]
    EdgeCountMismatch { graph: usize, cert: usize },
    #[error("no flow at r = 6; graph is not bridgeless or the search is broken")]
    NoSixFlow,
    #[error("parity violation at vertex {0}")]
    Parity(usize),
    #[error("valuation is not orientable")]
    NotOrientable,
    #[error("undefined phi: {0}")]
    UndefinedPhi(String),
    #[error("certificate does not verify: {0}")]
    Unverified(String),
    #[error("graph too large for this operation: {0}")]
    TooLarge(String),
    #[error("unknown rule id {0:?}")]
    UnknownRule(String),
    #[error("no catalog match for block {block}: {pattern}")]
    Unclassified { block: usize, pattern: String },
    #[error("hub h is not in S")]
    HubOutside,
    #[error("incompatible: {0}")]
    Incompatible(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("budget of {0:?} exceeded")]
    Budget(std::time::Duration),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
