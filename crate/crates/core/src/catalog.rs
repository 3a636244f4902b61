//! Admissible Tits p-indexes per quasi-split family and prime.
//!
//! Classical families are generated from integer parameters (the `p`-primary
//! index `d` of the underlying algebra and the Witt-type index `r`), exceptional
//! families from literal tables of distinguished orbits. Both live in a
//! [`RuleSet`], which can be replaced wholesale to experiment with alternative
//! rules; [`RuleSet::builtin`] is the default.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::diagrams::{DynkinDiagram, GaloisAction, Permutation, TypeLabel, Vertex};
use crate::index::TitsIndex;
use crate::{Error, Result};

/// Quasi-split type `^tT_n` without the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    InnerA,
    OuterA,
    B,
    C,
    InnerD,
    OuterD,
    TrialityD4,
    G2,
    F4,
    InnerE6,
    OuterE6,
    E7,
    E8,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::InnerA,
        Family::OuterA,
        Family::B,
        Family::C,
        Family::InnerD,
        Family::OuterD,
        Family::TrialityD4,
        Family::G2,
        Family::F4,
        Family::InnerE6,
        Family::OuterE6,
        Family::E7,
        Family::E8,
    ];

    pub const CLASSICAL: [Family; 6] = [
        Family::InnerA,
        Family::OuterA,
        Family::B,
        Family::C,
        Family::InnerD,
        Family::OuterD,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::InnerA => "1A",
            Family::OuterA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::InnerD => "1D",
            Family::OuterD => "2D",
            Family::TrialityD4 => "3D4",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::InnerE6 => "1E6",
            Family::OuterE6 => "2E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        }
    }

    pub fn type_label(self) -> TypeLabel {
        match self {
            Family::InnerA | Family::OuterA => TypeLabel::A,
            Family::B => TypeLabel::B,
            Family::C => TypeLabel::C,
            Family::InnerD | Family::OuterD | Family::TrialityD4 => TypeLabel::D,
            Family::G2 => TypeLabel::G,
            Family::F4 => TypeLabel::F,
            Family::InnerE6 | Family::OuterE6 | Family::E7 | Family::E8 => TypeLabel::E,
        }
    }

    /// Order `t` of the Galois image in the diagram automorphisms.
    pub fn outer_order(self) -> usize {
        match self {
            Family::OuterA | Family::OuterD | Family::OuterE6 => 2,
            Family::TrialityD4 => 3,
            _ => 1,
        }
    }

    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            Family::TrialityD4 => Some(4),
            Family::G2 => Some(2),
            Family::F4 => Some(4),
            Family::InnerE6 | Family::OuterE6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }

    pub fn is_classical(self) -> bool {
        Family::CLASSICAL.contains(&self)
    }

    /// Resolves the rank for this family, using the fixed rank when the
    /// caller gives none.
    pub fn resolve_rank(self, rank: Option<u32>) -> Result<u32> {
        let ty = self.type_label();
        let valid = match self {
            Family::OuterA => "n >= 2",
            Family::TrialityD4 => "n = 4",
            Family::InnerE6 | Family::OuterE6 => "n = 6",
            Family::E7 => "n = 7",
            Family::E8 => "n = 8",
            _ => ty.valid_ranks(),
        };
        let rank = match (rank, self.fixed_rank()) {
            (Some(r), _) => r,
            (None, Some(r)) => r,
            (None, None) => {
                return Err(Error::RankOutOfRange {
                    ty,
                    rank: 0,
                    valid,
                })
            }
        };
        let ok = ty.accepts_rank(rank)
            && self.fixed_rank().is_none_or(|r| r == rank)
            && (self != Family::OuterA || rank >= 2);
        if ok {
            Ok(rank)
        } else {
            Err(Error::RankOutOfRange { ty, rank, valid })
        }
    }

    /// The standard action for this family on the diagram of rank `rank`.
    pub fn action(self, rank: u32) -> Result<GaloisAction> {
        let rank = self.resolve_rank(Some(rank))?;
        let diagram = DynkinDiagram::new(self.type_label(), rank)?;
        let n = rank;
        let generator = match self {
            Family::OuterA => Some(Permutation::from_fn(n, |i| n + 1 - i)),
            Family::OuterD => Some(Permutation::from_fn(n, |i| match i {
                i if i == n - 1 => n,
                i if i == n => n - 1,
                i => i,
            })),
            Family::TrialityD4 => Some(Permutation::from_images(vec![3, 2, 4, 1])),
            Family::OuterE6 => Some(Permutation::from_images(vec![5, 4, 3, 2, 1, 6])),
            _ => None,
        };
        GaloisAction::new(diagram, generator.into_iter().collect())
    }

    /// The family of an index, read off its type and action order.
    pub fn of_index(index: &TitsIndex) -> Option<Family> {
        let d = index.diagram();
        let t = index.action().order();
        let fam = match (d.type_label(), d.rank(), t) {
            (TypeLabel::A, _, 1) => Family::InnerA,
            (TypeLabel::A, _, 2) => Family::OuterA,
            (TypeLabel::B, _, 1) => Family::B,
            (TypeLabel::C, _, 1) => Family::C,
            (TypeLabel::D, _, 1) => Family::InnerD,
            (TypeLabel::D, _, 2) => Family::OuterD,
            (TypeLabel::D, 4, 3) => Family::TrialityD4,
            (TypeLabel::G, _, 1) => Family::G2,
            (TypeLabel::F, _, 1) => Family::F4,
            (TypeLabel::E, 6, 1) => Family::InnerE6,
            (TypeLabel::E, 6, 2) => Family::OuterE6,
            (TypeLabel::E, 7, 1) => Family::E7,
            (TypeLabel::E, 8, 1) => Family::E8,
            _ => return None,
        };
        Some(fam)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fam = match s {
            "A" | "1A" => Family::InnerA,
            "2A" => Family::OuterA,
            "B" => Family::B,
            "C" => Family::C,
            "D" | "1D" => Family::InnerD,
            "2D" => Family::OuterD,
            "3D4" => Family::TrialityD4,
            "G" | "G2" => Family::G2,
            "F" | "F4" => Family::F4,
            "E6" | "1E6" => Family::InnerE6,
            "2E6" => Family::OuterE6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            other => return Err(Error::UnknownFamily(String::from(other))),
        };
        Ok(fam)
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `p^{v_p(d)}`, the `p`-primary part of `d`.
pub fn p_primary_part(d: u64, p: u64) -> u64 {
    assert!(d >= 1 && p >= 2, "p_primary_part needs d >= 1 and p >= 2");
    let mut d = d;
    let mut out = 1;
    while d.is_multiple_of(p) {
        d /= p;
        out *= p;
    }
    out
}

fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            out.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Torsion primes of a simple group of the given type: the only primes at
/// which a non-split `p`-index can occur.
pub fn torsion_primes(ty: TypeLabel, rank: u32) -> Vec<u64> {
    let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
    match (ty, rank) {
        (TypeLabel::A, n) => primes.extend(prime_divisors(n as u64 + 1)),
        (TypeLabel::D, 4) | (TypeLabel::E, 6) | (TypeLabel::E, 7) | (TypeLabel::F, _) => {
            primes.insert(3);
        }
        (TypeLabel::E, 8) => primes.extend([3, 5]),
        _ => {}
    }
    primes.into_iter().collect()
}

/// `p`-powers dividing `m`, ascending.
pub fn p_power_divisors(m: u64, p: u64) -> Vec<u64> {
    let top = p_primary_part(m, p);
    let mut out = vec![1];
    while *out.last().unwrap() < top {
        let next = out.last().unwrap() * p;
        out.push(next);
    }
    out
}

/// A constraint on the index of a central simple algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndA {
    Exactly(u64),
    Divides(u64),
    OneOf(Vec<u64>),
}

impl IndA {
    pub fn admits(&self, ind: u64) -> bool {
        match self {
            IndA::Exactly(n) => ind == *n,
            IndA::Divides(n) => ind >= 1 && n % ind == 0,
            IndA::OneOf(v) => v.contains(&ind),
        }
    }
}

impl fmt::Display for IndA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndA::Exactly(n) => write!(f, "{n}"),
            IndA::Divides(n) => write!(f, "divides {n}"),
            IndA::OneOf(v) => {
                for (i, n) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(if i + 1 == v.len() { " or " } else { ", " })?;
                    }
                    write!(f, "{n}")?;
                }
                Ok(())
            }
        }
    }
}

/// One row of an exceptional family's index table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    /// Distinguished orbits; all orbits for the quasi-split row, none for the
    /// anisotropic row.
    pub distinguished: Vec<Vec<Vertex>>,
    pub ind_a: Option<IndA>,
    /// `(p, occurs as a p-index)` for each torsion prime.
    pub occurs: Vec<(u64, bool)>,
    /// Signature of the Killing form of the real form with this index, when
    /// there is one.
    pub signature: Option<i32>,
    /// The circled positions were read off a picture whose chain runs in the
    /// opposite direction to this crate's numbering.
    pub numbering_dependent: bool,
}

impl TableRow {
    pub fn occurs_at(&self, p: u64) -> bool {
        self.occurs.iter().any(|&(q, yes)| q == p && yes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTable {
    pub family: Family,
    pub source: String,
    pub rows: Vec<TableRow>,
}

impl FamilyTable {
    /// 1-based row number of the row whose distinguished set matches `index`.
    pub fn row_of(&self, index: &TitsIndex) -> Option<usize> {
        self.rows
            .iter()
            .position(|r| {
                let mut d = r.distinguished.clone();
                for o in &mut d {
                    o.sort_unstable();
                }
                d.sort();
                d == index.distinguished()
            })
            .map(|i| i + 1)
    }
}

/// What happens to the fork vertices of `^1D_n` when `rd = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForkRule {
    /// Circle `{d, 2d, ..., rd}` verbatim; vertex `n` is a fork vertex.
    Literal,
    /// Circle both fork vertices `n-1` and `n`.
    BothForks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InnerDRule {
    /// Reject `rd = n - 1`.
    pub exclude_rd_n_minus_1: bool,
    pub full_rank: ForkRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRules {
    /// `C_n`: a split algebra forces `rd = n`.
    pub symplectic_split_forced: bool,
    /// `^2A_n`: `rd <= floor((n+1)/2)`.
    pub unitary_witt_bound: bool,
    pub inner_d: InnerDRule,
}

/// Every rule the enumerator consults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub version: u32,
    pub classical: ClassicalRules,
    pub tables: Vec<FamilyTable>,
}

/// Integer parameters of a classical index: `d` is the `p`-primary index of
/// the algebra (the Witt index for `B_n` is carried in `r` with `d = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClassicalParams {
    pub d: u64,
    pub r: u64,
}

impl RuleSet {
    pub fn builtin() -> RuleSet {
        RuleSet {
            version: 1,
            classical: ClassicalRules {
                symplectic_split_forced: true,
                unitary_witt_bound: true,
                inner_d: InnerDRule {
                    exclude_rd_n_minus_1: true,
                    full_rank: ForkRule::Literal,
                },
            },
            tables: builtin_tables(),
        }
    }

    pub fn table(&self, family: Family) -> Option<&FamilyTable> {
        self.tables.iter().find(|t| t.family == family)
    }

    /// Structural checks run after loading a rules override.
    pub fn check(&self) -> Result<()> {
        for table in &self.tables {
            let rank = table.family.fixed_rank().ok_or_else(|| {
                Error::InvalidRules(alloc::format!(
                    "family {} is classical and has no table",
                    table.family
                ))
            })?;
            let action = table.family.action(rank)?;
            for (i, row) in table.rows.iter().enumerate() {
                let index = TitsIndex::new(action.clone(), row.distinguished.clone());
                if !index.is_valid() {
                    return Err(Error::InvalidRules(alloc::format!(
                        "{} row {} is not a valid index",
                        table.family,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Classical parameter tuples `(d, r)` admitted at `(family, rank, p)`,
    /// before deduplication of the indexes they produce.
    pub fn classical_params(&self, family: Family, n: u32, p: u64) -> Vec<ClassicalParams> {
        let n = n as u64;
        let mut out = Vec::new();
        let push_range = |out: &mut Vec<ClassicalParams>, d: u64, max_rd: u64, ok: &dyn Fn(u64) -> bool| {
            for r in 0..=max_rd / d {
                if ok(r * d) {
                    out.push(ClassicalParams { d, r });
                }
            }
        };
        match family {
            Family::InnerA => {
                for d in p_power_divisors(n + 1, p) {
                    out.push(ClassicalParams {
                        d,
                        r: (n + 1) / d - 1,
                    });
                }
            }
            Family::OuterA => {
                let bound = if self.classical.unitary_witt_bound {
                    n.div_ceil(2)
                } else {
                    n
                };
                for d in p_power_divisors(n + 1, 2) {
                    push_range(&mut out, d, bound, &|_| true);
                }
            }
            Family::B => {
                for r in 0..=n {
                    out.push(ClassicalParams { d: 1, r });
                }
            }
            Family::C => {
                let forced = self.classical.symplectic_split_forced;
                for d in p_power_divisors(2 * n, 2) {
                    push_range(&mut out, d, n, &|rd| !(forced && d == 1 && rd != n));
                }
            }
            Family::InnerD => {
                let excl = self.classical.inner_d.exclude_rd_n_minus_1;
                for d in p_power_divisors(2 * n, 2) {
                    push_range(&mut out, d, n, &|rd| !(excl && rd == n - 1));
                }
            }
            Family::OuterD => {
                for d in p_power_divisors(2 * n, 2) {
                    push_range(&mut out, d, n - 1, &|_| true);
                }
            }
            _ => {}
        }
        out
    }

    /// The index produced by classical parameters.
    pub fn classical_index(
        &self,
        family: Family,
        action: &GaloisAction,
        params: ClassicalParams,
    ) -> TitsIndex {
        let n = action.diagram().rank() as u64;
        let ClassicalParams { d, r } = params;
        let mut vertices: Vec<Vertex> = (1..=r).map(|i| (i * d) as Vertex).collect();
        if family == Family::InnerD
            && r * d == n
            && self.classical.inner_d.full_rank == ForkRule::BothForks
        {
            vertices.push((n - 1) as Vertex);
        }
        TitsIndex::from_vertices(action.clone(), &vertices)
    }

    /// Checks that `p` makes sense for `family`: `t` must be a power of `p`.
    pub fn check_prime(family: Family, p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let t = family.outer_order() as u64;
        let mut power = 1;
        while power < t {
            power *= p;
        }
        if power != t {
            return Err(Error::FamilyPrime {
                family: family.label(),
                p,
                reason: "the order of the Galois action must be a power of p",
            });
        }
        Ok(())
    }

    /// All Tits `p`-indexes of `family` in rank `rank`, duplicate-free, in
    /// catalog order.
    pub fn enumerate(&self, family: Family, rank: Option<u32>, p: u64) -> Result<Vec<TitsIndex>> {
        Self::check_prime(family, p)?;
        let rank = family.resolve_rank(rank)?;
        let action = family.action(rank)?;
        if !torsion_primes(family.type_label(), rank).contains(&p) {
            return Ok(vec![TitsIndex::quasi_split(action)]);
        }
        let mut out: Vec<TitsIndex> = Vec::new();
        if family.is_classical() {
            // classical rules are stated for p = 2, and for p | n+1 in type 1A
            if family == Family::InnerA || p == 2 {
                for params in self.classical_params(family, rank, p) {
                    out.push(self.classical_index(family, &action, params));
                }
            } else {
                out.push(TitsIndex::quasi_split(action));
            }
        } else {
            let table = self.table(family).ok_or_else(|| {
                Error::InvalidRules(alloc::format!("no table for family {family}"))
            })?;
            for row in table.rows.iter().filter(|r| r.occurs_at(p)) {
                out.push(TitsIndex::new(action.clone(), row.distinguished.clone()));
            }
            if out.is_empty() {
                out.push(TitsIndex::quasi_split(action));
            }
        }
        out.sort_by(|a, b| a.catalog_cmp(b));
        out.dedup();
        Ok(out)
    }

    /// Whether `index` is a Tits `p`-index of its family.
    pub fn admissible(&self, index: &TitsIndex, p: u64) -> bool {
        let Some(family) = Family::of_index(index) else {
            return false;
        };
        self.enumerate(family, Some(index.diagram().rank()), p)
            .is_ok_and(|all| all.contains(index))
    }

    /// Signature of the real form with this index, where the tables record one.
    pub fn signature_of_real_form(&self, index: &TitsIndex) -> Option<i32> {
        let table = self.table(Family::of_index(index)?)?;
        let row = table.row_of(index)?;
        table.rows[row - 1].signature
    }
}

pub fn enumerate_indexes(family: Family, rank: Option<u32>, p: u64) -> Result<Vec<TitsIndex>> {
    RuleSet::builtin().enumerate(family, rank, p)
}

pub fn admissible(index: &TitsIndex, p: u64) -> bool {
    RuleSet::builtin().admissible(index, p)
}

pub fn signature_of_real_form(index: &TitsIndex) -> Option<i32> {
    RuleSet::builtin().signature_of_real_form(index)
}

fn row(
    distinguished: &[&[Vertex]],
    ind_a: Option<IndA>,
    occurs: &[(u64, bool)],
    signature: Option<i32>,
) -> TableRow {
    TableRow {
        distinguished: distinguished.iter().map(|o| o.to_vec()).collect(),
        ind_a,
        occurs: occurs.to_vec(),
        signature,
        numbering_dependent: false,
    }
}

fn flagged(mut r: TableRow) -> TableRow {
    r.numbering_dependent = true;
    r
}

fn builtin_tables() -> Vec<FamilyTable> {
    use IndA::{Divides, Exactly};
    let table = |family, source: &str, rows| FamilyTable {
        family,
        source: String::from(source),
        rows,
    };
    let (y, n) = (true, false);
    vec![
        table(
            Family::G2,
            "Prop. ht1",
            vec![
                row(&[&[1], &[2]], None, &[(2, y)], None),
                row(&[], None, &[(2, y)], None),
            ],
        ),
        table(
            Family::TrialityD4,
            "Prop. ht1",
            vec![
                row(&[&[1, 3, 4], &[2]], None, &[(2, n), (3, y)], None),
                row(&[], None, &[(2, n), (3, y)], None),
            ],
        ),
        table(
            Family::F4,
            "Table 4",
            vec![
                row(&[&[1], &[2], &[3], &[4]], None, &[(2, y), (3, y)], Some(4)),
                row(&[&[1]], None, &[(2, y), (3, n)], Some(-20)),
                row(&[], None, &[(2, y), (3, y)], Some(-52)),
            ],
        ),
        table(
            Family::InnerE6,
            "Table oE6",
            vec![
                row(
                    &[&[1], &[2], &[3], &[4], &[5], &[6]],
                    Some(Exactly(1)),
                    &[(2, y), (3, y)],
                    Some(6),
                ),
                row(&[&[1], &[5]], Some(Exactly(1)), &[(2, y), (3, n)], Some(-26)),
                row(&[&[3], &[6]], Some(Exactly(3)), &[(2, n), (3, y)], None),
                row(&[], Some(Divides(27)), &[(2, n), (3, y)], None),
            ],
        ),
        table(
            Family::OuterE6,
            "Table dE6",
            vec![
                row(&[&[1, 5], &[2, 4], &[3], &[6]], None, &[(2, y), (3, n)], Some(2)),
                row(&[&[1, 5], &[6]], None, &[(2, y), (3, n)], Some(-14)),
                row(&[&[1, 5]], None, &[(2, y), (3, n)], None),
                row(&[&[6]], None, &[(2, y), (3, n)], None),
                row(&[], None, &[(2, y), (3, n)], Some(-78)),
            ],
        ),
        table(
            Family::E7,
            "Table 7",
            vec![
                row(
                    &[&[1], &[2], &[3], &[4], &[5], &[6], &[7]],
                    Some(Exactly(1)),
                    &[(2, y), (3, y)],
                    Some(7),
                ),
                flagged(row(
                    &[&[1], &[2], &[3], &[5]],
                    Some(Exactly(2)),
                    &[(2, y), (3, n)],
                    Some(-5),
                )),
                flagged(row(
                    &[&[1], &[5], &[6]],
                    Some(Exactly(1)),
                    &[(2, y), (3, n)],
                    Some(-25),
                )),
                flagged(row(&[&[1], &[5]], Some(Exactly(2)), &[(2, y), (3, n)], None)),
                flagged(row(&[&[5]], Some(Exactly(2)), &[(2, y), (3, n)], None)),
                flagged(row(&[&[1]], Some(Divides(4)), &[(2, y), (3, n)], None)),
                flagged(row(&[&[6]], Some(Exactly(1)), &[(2, n), (3, y)], None)),
                row(&[], Some(Divides(8)), &[(2, y), (3, n)], Some(-133)),
            ],
        ),
        table(
            Family::E8,
            "Table 8",
            vec![
                row(
                    &[&[1], &[2], &[3], &[4], &[5], &[6], &[7], &[8]],
                    None,
                    &[(2, y), (3, y), (5, y)],
                    Some(8),
                ),
                flagged(row(
                    &[&[1], &[5], &[6], &[7]],
                    None,
                    &[(2, y), (3, n), (5, n)],
                    Some(-24),
                )),
                flagged(row(&[&[1], &[7]], None, &[(2, y), (3, n), (5, n)], None)),
                flagged(row(&[&[6], &[7]], None, &[(2, n), (3, y), (5, n)], None)),
                flagged(row(&[&[1]], None, &[(2, y), (3, n), (5, n)], None)),
                flagged(row(&[&[7]], None, &[(2, y), (3, n), (5, n)], None)),
                row(&[], None, &[(2, y), (3, y), (5, y)], Some(-248)),
            ],
        ),
    ]
}
