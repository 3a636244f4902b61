use alloc::string::String;
use alloc::vec::Vec;

use crate::diagrams::{TypeLabel, Vertex};
use crate::invariants::Slot;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("rank {rank} is out of range for type {ty}: valid ranks are {valid}")]
    RankOutOfRange {
        ty: TypeLabel,
        rank: u32,
        valid: &'static str,
    },

    #[error("permutation {perm:?} is not a diagram automorphism: edge {a}-{b} is not preserved")]
    NotAnAutomorphism {
        perm: Vec<Vertex>,
        a: Vertex,
        b: Vertex,
    },

    #[error("permutation {0:?} is not a permutation of the vertex set")]
    BadPermutation(Vec<Vertex>),

    #[error("an action of order {t} is not realizable on {ty}{rank}")]
    UnrealizableAction { ty: TypeLabel, rank: u32, t: usize },

    #[error("indexes live on different diagrams ({0} vs {1})")]
    DiagramMismatch(String, String),

    #[error("family {family} has no index rule at p = {p}: {reason}")]
    FamilyPrime {
        family: &'static str,
        p: u64,
        reason: &'static str,
    },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unknown family {0}")]
    UnknownFamily(String),

    #[error("cohomology elements live in different groups")]
    GroupMismatch,

    #[error("malformed cohomology group or element: {0}")]
    MalformedElement(String),

    #[error("profiles belong to different families ({0} vs {1})")]
    FamilyMismatch(&'static str, &'static str),

    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),

    #[error("profile is missing slots needed for this query: {0:?}")]
    MissingSlots(Vec<Slot>),

    #[error("index is not admissible: {0}")]
    NotAdmissible(String),

    #[error("invalid rules table: {0}")]
    InvalidRules(String),
}
