use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image sequence is not a bijection of 0..{degree}: {reason}")]
    NotAPermutation { degree: usize, reason: String },
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("point set is not an orbit of the group")]
    NotAnOrbit,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("partition is not a block system of the group")]
    NotABlockSystem,
    #[error("block system is not normal in the group")]
    NotNormalBlockSystem,
    #[error("join of qualifying subgroups fails the wreath-stabilizer property")]
    MaximumNotUnique,
    #[error("permutation does not stabilize the point set setwise")]
    NotInvariant,
    #[error("degree {degree} exceeds the bound of {max} for this operation")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("object too large for exhaustive search")]
    SizeTooLarge,
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error("{element} is not a unit modulo {modulus}")]
    NonUnitElement { element: usize, modulus: usize },
    #[error("connection set is not closed under double cosets of the subgroup")]
    NotDoubleCosetClosed,
    #[error("connection set intersects the subgroup")]
    IntersectsSubgroup,
    #[error("generator does not generate a regular cyclic group")]
    NotRegularCyclic,
    #[error("the left regular representation is not contained in the automorphism group")]
    NotCayleyObject,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
