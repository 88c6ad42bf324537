use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown letter '{0}' at offset {1}")]
    UnknownLetter(char, usize),
    #[error("malformed power syntax at offset {0}")]
    MalformedPower(usize),
    #[error("word is not geodesic: length {length}, geodesic length {geodesic}")]
    NotGeodesic { length: usize, geodesic: u64 },
    #[error("word has no class in the geodesic grammar")]
    Unclassified,
    #[error("a-power {0} too large to expand into a word")]
    PowerTooLarge(String),
    #[error("ball exceeds element cap of {cap} (at radius {radius})")]
    ResourceLimit { cap: usize, radius: u32 },
    #[error("no path inside the ball between the two vertices")]
    Unreachable,
    #[error("element is not in the ball")]
    NotInBall,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("too few data points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("bad group descriptor '{0}'")]
    BadDescriptor(String),
    #[error("cache format: {0}")]
    CacheFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
