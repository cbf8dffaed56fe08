use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("group is not transitive")]
    Intransitive,

    #[error("{0}")]
    Precondition(String),

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("invalid parabolic data: {0}")]
    InvalidParabolic(String),

    #[error("pullback profile has no fiber over parabolic point {0:?}")]
    MissingFiber(String),

    #[error("invalid cover datum: {}", .0.join("; "))]
    InvalidCover(Vec<String>),

    #[error("cap exceeded: {cap} (limit {limit}, requested {requested})")]
    CapExceeded {
        cap: &'static str,
        limit: u128,
        requested: u128,
    },

    /// A proved identity failed to hold. Always a bug.
    #[error("identity violated: {0}")]
    IdentityViolated(String),
}
