use alloc::string::String;
use thiserror::Error;

/// Which configurable limit was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    CosetIndex,
    ClassElements,
    SubgroupOrbit,
    OracleOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation text: {0:?}")]
    Malformed(String),
    #[error("point {0} repeated in cycle list")]
    RepeatedPoint(usize),
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("element is not a member of the group")]
    NotMember,
    #[error("argument is not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("{kind:?} cap of {limit} exceeded")]
    CapExceeded { kind: CapKind, limit: u128 },
    #[error("no maximal-subgroup data for this group")]
    DatafileMiss,
    #[error("maximal subgroups unavailable for a group of order {0}")]
    MaximalUnavailable(u128),
    #[error("seed point {0} out of range")]
    SeedOutOfRange(usize),
    #[error("action is not transitive")]
    NotTransitive,
    #[error("{0} does not divide the group order")]
    PrimeNotDividing(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
