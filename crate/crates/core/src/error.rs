use thiserror::Error;

/// Every failure the library reports. Parse errors are kept apart from
/// domain errors so front ends can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("underflow: subtrahend exceeds minuend")]
    Underflow,
    #[error("unsupported base for exponentiation: {0}")]
    UnsupportedBase(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("not a limit ordinal: {0}")]
    NotLimit(String),
    #[error("not tail-like: {0}")]
    NotTailLike(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("elements are equal")]
    EqualElements,
    #[error("left operand ends in the uncountable marker")]
    OmegaTail,
    #[error("base order has no distinguished interval")]
    MissingJ,
    #[error("not dominated at index {0}")]
    NotDominated(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("order exceeds tree height")]
    HeightExceeded,
    #[error("generator is not a branch: {0}")]
    GeneratorNotBranch(String),
    #[error("level set is not translation invariant: {0}")]
    NotTranslationInvariant(String),
    #[error("not a member: {0}")]
    NotMember(String),

    #[error("element is eventually constant at an endpoint of the interval")]
    EventuallyConstant,
    #[error("value outside every interval of the partition: {0}")]
    ValueOutsidePartition(String),
    #[error("out of interval: {0}")]
    OutOfInterval(String),
    #[error("maps disagree at the gluing point")]
    Mismatch,

    #[error("not eventually constant")]
    NotEventuallyConstant,
    #[error("not eventually zero")]
    NotEventuallyZero,
    #[error("bad seed: {0}")]
    BadSeed(String),
    #[error("plus point not in A: {0}")]
    NotInA(String),

    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("unknown letter: {0}")]
    UnknownLetter(String),
    #[error("sequences do not share a tail from position {0}")]
    NotEndEquivalentAtBeta(usize),
    #[error("depth exceeded: {0}")]
    DepthExceeded(String),
    #[error("improper interval")]
    ImproperInterval,
    #[error("bad interval: {0}")]
    BadInterval(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvariantViolation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
