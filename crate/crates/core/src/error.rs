use thiserror::Error;

use crate::rootdata::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown or unsupported type label `{0}`")]
    UnknownType(String),

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,

    #[error("weight has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {0} is not invariant under the diagram automorphism")]
    NotInvariant(Weight),

    #[error("weight {0} is not in the support of the module")]
    OutsideSupport(Weight),

    #[error("cannot parse cycle notation `{input}`: {reason}")]
    CycleParse { input: String, reason: String },

    #[error("permutation does not preserve the Cartan matrix")]
    NotAutomorphism,

    #[error("diagram automorphism is the identity")]
    TrivialAutomorphism,

    #[error("type {0} has no nontrivial diagram automorphism")]
    NoDiagramAutomorphism(String),

    #[error("source datum must be simply laced, got {0}")]
    NotSimplyLaced(String),

    #[error("pairing of coroots in orbit {orbit} with alpha_O depends on the representative")]
    RepresentativeDependence { orbit: usize },

    #[error("dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: u64, cap: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),

    #[error("invalid weight `{0}`")]
    WeightParse(String),

    #[error("invalid case `{0}`: expected TYPE,(CYCLES),COORDS")]
    CaseParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
