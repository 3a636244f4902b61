//! Dynkin diagrams with the vertex numbering used throughout this crate, their
//! automorphism groups, and Galois actions given by automorphism subgroups.
//!
//! Numbering (chains are numbered left to right):
//!
//! | type | shape |
//! |------|-------|
//! | `A_n` | chain `1 - 2 - ... - n` |
//! | `B_n` | chain, double edge `n-1 => n`, short root `n` |
//! | `C_n` | chain, double edge `n-1 <= n`, short root `n-1` |
//! | `D_n` | chain `1 - ... - n-2`, fork vertices `n-1` and `n` attached to `n-2` |
//! | `E_6` | chain `1 - ... - 5`, vertex `6` attached to `3` |
//! | `E_7` | chain `1 - ... - 6`, vertex `7` attached to `4` |
//! | `E_8` | chain `1 - ... - 7`, vertex `8` attached to `5` |
//! | `F_4` | chain `1 - 2 => 3 - 4`, short roots `3`, `4` |
//! | `G_2` | triple edge `1 <= 2`, short root `1` |
//!
//! [`DynkinDiagram::bourbaki_label`] translates to Bourbaki's numbering.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Vertex labels are 1-based.
pub type Vertex = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 7] = [
        TypeLabel::A,
        TypeLabel::B,
        TypeLabel::C,
        TypeLabel::D,
        TypeLabel::E,
        TypeLabel::F,
        TypeLabel::G,
    ];

    pub fn as_char(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }

    /// Human-readable description of the admissible ranks.
    pub fn valid_ranks(self) -> &'static str {
        match self {
            TypeLabel::A => "n >= 1",
            TypeLabel::B => "n >= 2",
            TypeLabel::C => "n >= 3",
            TypeLabel::D => "n >= 4",
            TypeLabel::E => "n in {6, 7, 8}",
            TypeLabel::F => "n = 4",
            TypeLabel::G => "n = 2",
        }
    }

    pub fn accepts_rank(self, rank: u32) -> bool {
        match self {
            TypeLabel::A => rank >= 1,
            TypeLabel::B => rank >= 2,
            TypeLabel::C => rank >= 3,
            TypeLabel::D => rank >= 4,
            TypeLabel::E => (6..=8).contains(&rank),
            TypeLabel::F => rank == 4,
            TypeLabel::G => rank == 2,
        }
    }

    /// The rank for types that admit exactly one.
    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            TypeLabel::F => Some(4),
            TypeLabel::G => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E" => Ok(TypeLabel::E),
            "F" => Ok(TypeLabel::F),
            "G" => Ok(TypeLabel::G),
            other => Err(Error::UnknownFamily(String::from(other))),
        }
    }
}

/// An edge of a Dynkin diagram. Multiple edges record which endpoint carries
/// the short root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: Vertex,
    pub b: Vertex,
    pub multiplicity: u8,
    pub short: Option<Vertex>,
}

impl Edge {
    fn simple(a: Vertex, b: Vertex) -> Self {
        Edge {
            a,
            b,
            multiplicity: 1,
            short: None,
        }
    }

    fn multiple(a: Vertex, b: Vertex, multiplicity: u8, short: Vertex) -> Self {
        Edge {
            a,
            b,
            multiplicity,
            short: Some(short),
        }
    }

    pub fn touches(&self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: Vertex) -> Option<Vertex> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    type_label: TypeLabel,
    rank: u32,
    edges: Vec<Edge>,
}

impl DynkinDiagram {
    /// Builds the diagram of type `type_label` and rank `rank`.
    pub fn new(type_label: TypeLabel, rank: u32) -> Result<Self> {
        if !type_label.accepts_rank(rank) {
            return Err(Error::RankOutOfRange {
                ty: type_label,
                rank,
                valid: type_label.valid_ranks(),
            });
        }
        let n = rank;
        let mut edges = Vec::new();
        match type_label {
            TypeLabel::A => edges.extend((1..n).map(|i| Edge::simple(i, i + 1))),
            TypeLabel::B => {
                edges.extend((1..n - 1).map(|i| Edge::simple(i, i + 1)));
                edges.push(Edge::multiple(n - 1, n, 2, n));
            }
            TypeLabel::C => {
                edges.extend((1..n - 1).map(|i| Edge::simple(i, i + 1)));
                edges.push(Edge::multiple(n - 1, n, 2, n - 1));
            }
            TypeLabel::D => {
                edges.extend((1..n - 2).map(|i| Edge::simple(i, i + 1)));
                edges.push(Edge::simple(n - 2, n - 1));
                edges.push(Edge::simple(n - 2, n));
            }
            TypeLabel::E => {
                // chain 1..n-1, the extra vertex n hangs off chain vertex n-3
                edges.extend((1..n - 1).map(|i| Edge::simple(i, i + 1)));
                edges.push(Edge::simple(n - 3, n));
            }
            TypeLabel::F => {
                edges.push(Edge::simple(1, 2));
                edges.push(Edge::multiple(2, 3, 2, 3));
                edges.push(Edge::simple(3, 4));
            }
            TypeLabel::G => edges.push(Edge::multiple(1, 2, 3, 1)),
        }
        Ok(DynkinDiagram {
            type_label,
            rank,
            edges,
        })
    }

    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + Clone {
        1..=self.rank
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (1..=self.rank).contains(&v)
    }

    /// `"E6"`, `"A5"`, ...
    pub fn name(&self) -> String {
        format!("{}{}", self.type_label, self.rank)
    }

    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<&Edge> {
        self.edges
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.edges.iter().filter_map(move |e| e.other(v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count()
    }

    /// Checks that `perm` preserves adjacency, multiplicities and arrow
    /// directions. On failure the error names the first edge whose image is
    /// not an edge of the same kind.
    pub fn check_automorphism(&self, perm: &Permutation) -> Result<()> {
        if perm.degree() != self.rank as usize || !perm.is_bijection() {
            return Err(Error::BadPermutation(perm.images().to_vec()));
        }
        for e in &self.edges {
            let (a, b) = (perm.apply(e.a), perm.apply(e.b));
            let preserved = self.edge_between(a, b).is_some_and(|img| {
                img.multiplicity == e.multiplicity && img.short == e.short.map(|s| perm.apply(s))
            });
            if !preserved {
                return Err(Error::NotAnAutomorphism {
                    perm: perm.images().to_vec(),
                    a: e.a,
                    b: e.b,
                });
            }
        }
        Ok(())
    }

    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        self.check_automorphism(perm).is_ok()
    }

    /// The full automorphism group, identity first, remaining elements in
    /// lexicographic order of their image arrays.
    pub fn automorphism_group(&self) -> Vec<Permutation> {
        let n = self.rank;
        let mut gens = Vec::new();
        match (self.type_label, n) {
            (TypeLabel::A, n) if n >= 2 => gens.push(Permutation::from_fn(n, |i| n + 1 - i)),
            (TypeLabel::D, 4) => {
                gens.push(Permutation::from_images(vec![3, 2, 4, 1]));
                gens.push(Permutation::from_images(vec![1, 2, 4, 3]));
            }
            (TypeLabel::D, n) => gens.push(Permutation::from_fn(n, |i| match i {
                i if i == n - 1 => n,
                i if i == n => n - 1,
                i => i,
            })),
            (TypeLabel::E, 6) => gens.push(Permutation::from_images(vec![5, 4, 3, 2, 1, 6])),
            _ => {}
        }
        debug_assert!(gens.iter().all(|g| self.is_automorphism(g)));
        generate_group(n, &gens)
    }

    /// Bourbaki's label for vertex `v`.
    pub fn bourbaki_label(&self, v: Vertex) -> Vertex {
        const E6: [Vertex; 6] = [1, 3, 4, 5, 6, 2];
        const E7: [Vertex; 7] = [7, 6, 5, 4, 3, 1, 2];
        const E8: [Vertex; 8] = [8, 7, 6, 5, 4, 3, 1, 2];
        let i = (v - 1) as usize;
        match (self.type_label, self.rank) {
            (TypeLabel::E, 6) => E6[i],
            (TypeLabel::E, 7) => E7[i],
            (TypeLabel::E, 8) => E8[i],
            _ => v,
        }
    }
}

/// A permutation of `1..=n`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<Vertex>);

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn from_images(images: Vec<Vertex>) -> Self {
        Permutation(images)
    }

    pub fn from_fn(n: u32, f: impl Fn(Vertex) -> Vertex) -> Self {
        Permutation((1..=n).map(f).collect())
    }

    pub fn images(&self) -> &[Vertex] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.0[(v - 1) as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.0.len() as u32;
        let seen: BTreeSet<_> = self.0.iter().copied().collect();
        seen.len() == self.0.len() && self.0.iter().all(|&v| (1..=n).contains(&v))
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.apply(v)).collect())
    }
}

fn generate_group(n: u32, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(n);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id.clone()];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    seen.remove(&id);
    let mut group = vec![id];
    group.extend(seen);
    group
}

/// The image of the absolute Galois group in the automorphism group of a
/// diagram, given by generators.
#[derive(Debug, Clone)]
pub struct GaloisAction {
    diagram: DynkinDiagram,
    generators: Vec<Permutation>,
    group: Vec<Permutation>,
    orbits: Vec<Vec<Vertex>>,
}

impl PartialEq for GaloisAction {
    fn eq(&self, other: &Self) -> bool {
        self.diagram == other.diagram && self.group == other.group
    }
}

impl Eq for GaloisAction {}

impl GaloisAction {
    pub fn new(diagram: DynkinDiagram, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            diagram.check_automorphism(g)?;
        }
        let group = generate_group(diagram.rank(), &generators);
        let t = group.len();
        let realizable = match (diagram.type_label(), diagram.rank()) {
            _ if t == 1 => true,
            (TypeLabel::A, n) => n >= 2 && t == 2,
            (TypeLabel::D, 4) => matches!(t, 2 | 3 | 6),
            (TypeLabel::D, _) => t == 2,
            (TypeLabel::E, 6) => t == 2,
            _ => false,
        };
        if !realizable {
            return Err(Error::UnrealizableAction {
                ty: diagram.type_label(),
                rank: diagram.rank(),
                t,
            });
        }
        let orbits = orbit_partition(diagram.rank(), &group);
        Ok(GaloisAction {
            diagram,
            generators,
            group,
            orbits,
        })
    }

    pub fn trivial(diagram: DynkinDiagram) -> Self {
        GaloisAction::new(diagram, Vec::new()).expect("trivial action is always valid")
    }

    /// Recovers the action on `diagram` whose group has order `t` and whose
    /// orbits are `orbits`, if one exists.
    pub fn from_orbits(diagram: DynkinDiagram, t: usize, orbits: &[Vec<Vertex>]) -> Option<Self> {
        let mut wanted: Vec<Vec<Vertex>> = orbits
            .iter()
            .map(|o| {
                let mut o = o.clone();
                o.sort_unstable();
                o
            })
            .collect();
        wanted.sort();
        let aut = diagram.automorphism_group();
        // every subgroup of a group of order <= 6 is generated by at most two elements
        let mut candidates: Vec<Vec<Permutation>> = vec![Vec::new()];
        for (i, g) in aut.iter().enumerate().skip(1) {
            candidates.push(vec![g.clone()]);
            for h in aut.iter().skip(i + 1) {
                candidates.push(vec![g.clone(), h.clone()]);
            }
        }
        candidates.into_iter().find_map(|gens| {
            let action = GaloisAction::new(diagram.clone(), gens).ok()?;
            (action.order() == t && action.orbits == wanted).then_some(action)
        })
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn group(&self) -> &[Permutation] {
        &self.group
    }

    /// Order of the generated group (the `t` of the quasi-split type `^tT_n`).
    pub fn order(&self) -> usize {
        self.group.len()
    }

    /// Orbits, each sorted, ordered by minimum element.
    pub fn orbits(&self) -> &[Vec<Vertex>] {
        &self.orbits
    }

    pub fn orbit_of(&self, v: Vertex) -> Option<&[Vertex]> {
        self.orbits
            .iter()
            .find(|o| o.contains(&v))
            .map(Vec::as_slice)
    }

    pub fn is_orbit(&self, set: &[Vertex]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.orbits.contains(&s)
    }

    /// Whether every element of `self`'s group lies in `other`'s group.
    pub fn is_subgroup_of(&self, other: &GaloisAction) -> bool {
        self.diagram == other.diagram && self.group.iter().all(|g| other.group.contains(g))
    }
}

fn orbit_partition(n: u32, group: &[Permutation]) -> Vec<Vec<Vertex>> {
    let mut assigned = vec![false; n as usize];
    let mut orbits = Vec::new();
    for v in 1..=n {
        if assigned[(v - 1) as usize] {
            continue;
        }
        let orbit: BTreeSet<Vertex> = group.iter().map(|g| g.apply(v)).collect();
        for &w in &orbit {
            assigned[(w - 1) as usize] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}
