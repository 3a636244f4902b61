//! The Tits index value type.
//!
//! An index stores the distinguished orbits (the circled vertices); the
//! anisotropic kernel is their complement. Orbits are kept in canonical form:
//! each sorted ascending, the list ordered by minimum vertex.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::diagrams::{DynkinDiagram, GaloisAction, Vertex};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsIndex {
    action: GaloisAction,
    distinguished: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A distinguished set that is not one of the action's orbits.
    NotAnOrbit(Vec<Vertex>),
    /// A vertex label outside the diagram.
    UnknownVertex(Vertex),
    /// The same orbit listed twice.
    Duplicate(Vec<Vertex>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAnOrbit(set) => write!(f, "not an orbit: {set:?}"),
            Violation::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Violation::Duplicate(set) => write!(f, "duplicate orbit {set:?}"),
        }
    }
}

fn canonical(mut sets: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    sets
}

impl TitsIndex {
    /// Builds an index without checking it; see [`TitsIndex::validate`].
    pub fn new(action: GaloisAction, distinguished: Vec<Vec<Vertex>>) -> Self {
        TitsIndex {
            action,
            distinguished: canonical(distinguished),
        }
    }

    /// Builds an index and rejects it if any axiom fails.
    pub fn checked(
        action: GaloisAction,
        distinguished: Vec<Vec<Vertex>>,
    ) -> core::result::Result<Self, Vec<Violation>> {
        let index = TitsIndex::new(action, distinguished);
        let violations = index.validate();
        if violations.is_empty() {
            Ok(index)
        } else {
            Err(violations)
        }
    }

    /// Builds the index whose distinguished orbits are those meeting
    /// `vertices`.
    pub fn from_vertices(action: GaloisAction, vertices: &[Vertex]) -> Self {
        let distinguished = action
            .orbits()
            .iter()
            .filter(|o| o.iter().any(|v| vertices.contains(v)))
            .cloned()
            .collect();
        TitsIndex::new(action, distinguished)
    }

    pub fn quasi_split(action: GaloisAction) -> Self {
        let all = action.orbits().to_vec();
        TitsIndex::new(action, all)
    }

    pub fn anisotropic(action: GaloisAction) -> Self {
        TitsIndex::new(action, Vec::new())
    }

    pub fn action(&self) -> &GaloisAction {
        &self.action
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        self.action.diagram()
    }

    pub fn distinguished(&self) -> &[Vec<Vertex>] {
        &self.distinguished
    }

    pub fn distinguished_vertices(&self) -> BTreeSet<Vertex> {
        self.distinguished.iter().flatten().copied().collect()
    }

    pub fn is_distinguished(&self, v: Vertex) -> bool {
        self.distinguished.iter().any(|o| o.contains(&v))
    }

    /// Every structural violation; empty iff the index is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let diagram = self.action.diagram();
        for (i, set) in self.distinguished.iter().enumerate() {
            if let Some(&v) = set.iter().find(|&&v| !diagram.contains(v)) {
                out.push(Violation::UnknownVertex(v));
            } else if !self.action.is_orbit(set) {
                out.push(Violation::NotAnOrbit(set.clone()));
            }
            if i > 0 && self.distinguished[i - 1] == *set {
                out.push(Violation::Duplicate(set.clone()));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn is_quasi_split(&self) -> bool {
        self.distinguished.len() == self.action.orbits().len()
    }

    pub fn is_anisotropic(&self) -> bool {
        self.distinguished.is_empty()
    }

    /// Rank of a maximal split torus: the number of distinguished orbits.
    pub fn split_rank(&self) -> usize {
        self.distinguished.len()
    }

    /// Base-change order: `higher` can be the index of the same group over an
    /// extension field. The action may only shrink and circled vertices may
    /// only be added.
    pub fn base_change_leq(lower: &TitsIndex, higher: &TitsIndex) -> Result<bool> {
        let (dl, dh) = (lower.diagram(), higher.diagram());
        if dl.type_label() != dh.type_label() || dl.rank() != dh.rank() {
            return Err(Error::DiagramMismatch(dl.name(), dh.name()));
        }
        Ok(higher.action.is_subgroup_of(&lower.action)
            && lower
                .distinguished_vertices()
                .is_subset(&higher.distinguished_vertices()))
    }

    /// Enumeration order: descending split rank, then the sorted
    /// distinguished vertex lists lexicographically.
    pub fn catalog_cmp(&self, other: &TitsIndex) -> Ordering {
        other.split_rank().cmp(&self.split_rank()).then_with(|| {
            let a: Vec<_> = self.distinguished_vertices().into_iter().collect();
            let b: Vec<_> = other.distinguished_vertices().into_iter().collect();
            a.cmp(&b)
        })
    }
}
