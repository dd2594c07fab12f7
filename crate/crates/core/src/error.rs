use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {0} is not a generator index (expected one of +-1..+-4)")]
    BadLetter(i8),

    #[error("letters mix the two free factors: {0} and {1}")]
    MixedFactors(i8, i8),

    #[error("letter {letter} belongs to the wrong factor for the {side} component")]
    WrongFactor { letter: i8, side: &'static str },

    #[error("malformed canonical key: {0}")]
    BadKey(String),

    #[error("unknown token '{token}' for generating set {genset}")]
    UnknownToken { token: char, genset: String },

    #[error("invalid generating set: {0}")]
    InvalidGenSet(String),

    #[error("invalid generating set selector '{0}' (expected s1, s2 or custom:<w1,w2,w3,w4>)")]
    BadSelector(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("element cap exceeded: search grew past {cap} elements")]
    ElementCapExceeded { cap: usize },

    #[error("deadline exceeded")]
    DeadlineExceeded,

    #[error("element {0} is not in the ball")]
    NotInBall(String),

    #[error("ball radius {radius} is too small: need at least {needed}")]
    RadiusTooSmall { radius: u32, needed: u32 },

    #[error("sheets are defined only for the s2 marking")]
    SheetsUnsupported,

    #[error("word is geodesic; nothing to falsify")]
    GeodesicInput,

    #[error("word does not evaluate to the identity, so it is not a loop")]
    NotALoop,

    #[error("malformed ball cache: {0}")]
    MalformedCache(String),

    #[error("ball cache violates an invariant: {0}")]
    CacheInvariant(String),

    #[error("malformed report: {0}")]
    MalformedReport(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for resource exhaustion as opposed to bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::ElementCapExceeded { .. } | Error::DeadlineExceeded
        )
    }
}
