//! Invariant profiles and the dictionary between profiles and Tits p-indexes.
//!
//! A profile carries whatever is known about a group: the index of its Tits
//! algebra, Witt-type parameters for classical families, and degree-3 classes
//! as [`CohElement`]s. Each (family, prime) pair has a dictionary of table rows,
//! each row a disjunction of conjunctions of [`Condition`]s. Conditions are
//! evaluated three-valued, so a partial profile can still pin down an index,
//! or come back [`Resolution::Underdetermined`] with the slots that would
//! settle it.

mod coh;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use coh::{same_subgroup, CohElement, CohGroup};

use crate::catalog::{
    is_prime, p_primary_part, torsion_primes, ClassicalParams, Family, IndA, RuleSet,
};
use crate::index::TitsIndex;
use crate::{Error, Result};

/// A named field of an [`InvariantProfile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Rank,
    IndA,
    WittIndex,
    R,
    DiscriminantTrivial,
    TitsClassOrder,
    TitsClass,
    F3,
    F5,
    G3,
    A,
    B,
    C,
    J3,
    /// Row number in the family's index table. Used where no tabulated
    /// invariant separates the rows (`E7` and `E8` at `p = 2`).
    TableRow,
}

impl Slot {
    pub const ALL: [Slot; 15] = [
        Slot::Rank,
        Slot::IndA,
        Slot::WittIndex,
        Slot::R,
        Slot::DiscriminantTrivial,
        Slot::TitsClassOrder,
        Slot::TitsClass,
        Slot::F3,
        Slot::F5,
        Slot::G3,
        Slot::A,
        Slot::B,
        Slot::C,
        Slot::J3,
        Slot::TableRow,
    ];

    /// Field name in the profile JSON.
    pub fn name(self) -> &'static str {
        match self {
            Slot::Rank => "n",
            Slot::IndA => "ind_A",
            Slot::WittIndex => "witt_index",
            Slot::R => "r",
            Slot::DiscriminantTrivial => "discriminant_trivial",
            Slot::TitsClassOrder => "tits_class_order",
            Slot::TitsClass => "tits_class",
            Slot::F3 => "f3",
            Slot::F5 => "f5",
            Slot::G3 => "g3",
            Slot::A => "a",
            Slot::B => "b",
            Slot::C => "c",
            Slot::J3 => "J3",
            Slot::TableRow => "table_row",
        }
    }

    pub fn is_cohomological(self) -> bool {
        matches!(
            self,
            Slot::TitsClass | Slot::F3 | Slot::F5 | Slot::G3 | Slot::A | Slot::B | Slot::C
        )
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What is known about one group. `None` means unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantProfile {
    pub family: Family,
    pub rank: Option<u32>,
    pub ind_a: Option<u64>,
    pub witt_index: Option<u64>,
    pub r: Option<u64>,
    pub discriminant_trivial: Option<bool>,
    pub tits_class_order: Option<u64>,
    /// Class of the Tits algebra in `H^2`, when the caller tracks it.
    pub tits_class: Option<CohElement>,
    pub f3: Option<CohElement>,
    pub f5: Option<CohElement>,
    pub g3: Option<CohElement>,
    pub a: Option<CohElement>,
    pub b: Option<CohElement>,
    /// Carried for bookkeeping only; no rule reads it.
    pub c: Option<CohElement>,
    pub j3: Option<(u32, u32)>,
    pub table_row: Option<usize>,
}

impl InvariantProfile {
    pub fn new(family: Family) -> Self {
        InvariantProfile {
            family,
            rank: family.fixed_rank(),
            ind_a: None,
            witt_index: None,
            r: None,
            discriminant_trivial: None,
            tits_class_order: None,
            tits_class: None,
            f3: None,
            f5: None,
            g3: None,
            a: None,
            b: None,
            c: None,
            j3: None,
            table_row: None,
        }
    }

    fn explicit_element(&self, slot: Slot) -> Option<&CohElement> {
        match slot {
            Slot::TitsClass => self.tits_class.as_ref(),
            Slot::F3 => self.f3.as_ref(),
            Slot::F5 => self.f5.as_ref(),
            Slot::G3 => self.g3.as_ref(),
            Slot::A => self.a.as_ref(),
            Slot::B => self.b.as_ref(),
            Slot::C => self.c.as_ref(),
            _ => None,
        }
    }

    fn element_mut(&mut self, slot: Slot) -> Option<&mut Option<CohElement>> {
        match slot {
            Slot::TitsClass => Some(&mut self.tits_class),
            Slot::F3 => Some(&mut self.f3),
            Slot::F5 => Some(&mut self.f5),
            Slot::G3 => Some(&mut self.g3),
            Slot::A => Some(&mut self.a),
            Slot::B => Some(&mut self.b),
            Slot::C => Some(&mut self.c),
            _ => None,
        }
    }

    pub fn set_element(&mut self, slot: Slot, value: CohElement) {
        if let Some(s) = self.element_mut(slot) {
            *s = Some(value);
        }
    }

    /// The value of a cohomological slot. For `F4`, `f3` and `g3` fall back to
    /// the 2- and 3-components of `b`; for `1E6`, `g3` falls back to the
    /// 3-component of `a`.
    pub fn element(&self, slot: Slot) -> Option<CohElement> {
        if let Some(e) = self.explicit_element(slot) {
            return Some(e.clone());
        }
        match (self.family, slot) {
            (Family::F4, Slot::F3) => self.b.as_ref().map(|b| b.p_component(2)),
            (Family::F4, Slot::G3) => self.b.as_ref().map(|b| b.p_component(3)),
            (Family::InnerE6, Slot::G3) => self.a.as_ref().map(|a| a.p_component(3)),
            _ => None,
        }
    }

    pub fn has(&self, slot: Slot) -> bool {
        match slot {
            Slot::Rank => self.rank.is_some(),
            Slot::IndA => self.ind_a.is_some(),
            Slot::WittIndex => self.witt_index.is_some(),
            Slot::R => self.r.is_some(),
            Slot::DiscriminantTrivial => self.discriminant_trivial.is_some(),
            Slot::TitsClassOrder => self.tits_class_order.is_some(),
            Slot::J3 => self.j3.is_some(),
            Slot::TableRow => self.table_row.is_some(),
            s => self.explicit_element(s).is_some(),
        }
    }

    /// A copy with a cohomological slot replaced by zero in the same group.
    /// Unknown slots stay unknown.
    pub fn zeroed(&self, slot: Slot) -> InvariantProfile {
        let mut out = self.clone();
        if let Some(e) = self.explicit_element(slot) {
            out.set_element(slot, CohElement::zero(e.group().clone()));
        }
        out
    }

    /// Whether the Tits class is known to vanish (`Some(true)`), known not to
    /// (`Some(false)`), or unknown.
    pub fn tits_class_trivial(&self) -> Option<bool> {
        if let Some(t) = &self.tits_class {
            return Some(t.is_zero());
        }
        if let Some(o) = self.tits_class_order {
            return Some(o == 1);
        }
        self.ind_a.map(|i| i == 1)
    }

    /// Degree bound for `ind_A` in this family, when there is one.
    pub fn degree_bound(&self) -> Option<u64> {
        let n = self.rank.map(u64::from);
        match self.family {
            Family::InnerA | Family::OuterA => n.map(|n| n + 1),
            Family::C | Family::InnerD | Family::OuterD => n.map(|n| 2 * n),
            Family::InnerE6 | Family::OuterE6 => Some(27),
            Family::E7 => Some(8),
            Family::G2 | Family::F4 | Family::E8 => Some(1),
            Family::B | Family::TrialityD4 => None,
        }
    }

    /// Internal consistency checks that do not depend on a prime.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InconsistentProfile(msg));
        if let Some(n) = self.rank {
            self.family.resolve_rank(Some(n))?;
        }
        if let Some(ind) = self.ind_a {
            if ind == 0 {
                return bad(String::from("ind_A must be positive"));
            }
            if let Some(bound) = self.degree_bound() {
                if bound % ind != 0 {
                    return bad(format!("ind_A = {ind} does not divide {bound}"));
                }
            }
        }
        if let Some(o) = self.tits_class_order {
            if !(1..=3).contains(&o) {
                return bad(format!("tits_class_order = {o} is not 1, 2 or 3"));
            }
            if let Some(ind) = self.ind_a {
                if (o == 1) != (ind == 1) {
                    return bad(format!(
                        "tits_class_order = {o} contradicts ind_A = {ind}"
                    ));
                }
            }
        }
        if let (Some(w), Some(n)) = (self.witt_index, self.rank) {
            if w > u64::from(n) {
                return bad(format!("witt_index = {w} exceeds n = {n}"));
            }
        }
        if let Some(disc) = self.discriminant_trivial {
            let expected = match self.family {
                Family::InnerD => Some(true),
                Family::OuterD => Some(false),
                _ => None,
            };
            if expected.is_some_and(|e| e != disc) {
                return bad(format!(
                    "discriminant_trivial = {disc} contradicts family {}",
                    self.family
                ));
            }
        }
        if self.family == Family::F4 {
            let f3 = self.element(Slot::F3).map(|e| e.p_component(2));
            let f5 = self.element(Slot::F5).map(|e| e.p_component(2));
            if let (Some(f3), Some(f5)) = (f3, f5) {
                if f3.is_zero() && !f5.is_zero() {
                    return bad(String::from("f5 != 0 requires f3 != 0"));
                }
            }
        }
        if self.family == Family::InnerE6
            && (self.g3.is_some() || self.a.is_some())
            && self.tits_class_trivial() == Some(false)
        {
            return bad(String::from("g3 and a are only defined when t_G = 0"));
        }
        if let (Some(a), Some(b)) = (&self.a, &self.b) {
            if self.tits_class_trivial() == Some(true) {
                let k = b.group().orders().len();
                if a.group().orders().starts_with(b.group().orders())
                    && a.coords()[..k] != *b.coords()
                {
                    return bad(String::from("with t_G = 0 the b-component of a must equal b"));
                }
            }
        }
        Ok(())
    }
}

/// One atomic requirement on a profile, read at a fixed prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// On the `p`-primary part of `ind_A`.
    IndA(IndA),
    /// The `p`-component of the slot vanishes.
    Zero(Slot),
    NonZero(Slot),
    /// `m` kills the `p`-component.
    KilledBy(Slot, u64),
    NotKilledBy(Slot, u64),
    Symbol(Slot, bool),
    KilledByK(Slot, bool),
    J3(u32, u32),
    TableRow(usize),
    R(u64),
    WittIndex(u64),
}

impl Condition {
    pub fn slot(&self) -> Slot {
        match self {
            Condition::IndA(_) => Slot::IndA,
            Condition::Zero(s)
            | Condition::NonZero(s)
            | Condition::KilledBy(s, _)
            | Condition::NotKilledBy(s, _)
            | Condition::Symbol(s, _)
            | Condition::KilledByK(s, _) => *s,
            Condition::J3(..) => Slot::J3,
            Condition::TableRow(_) => Slot::TableRow,
            Condition::R(_) => Slot::R,
            Condition::WittIndex(_) => Slot::WittIndex,
        }
    }

    /// `None` when the profile lacks the slot.
    pub fn eval(&self, profile: &InvariantProfile, p: u64) -> Option<bool> {
        let elem = |s: Slot| profile.element(s).map(|e| e.p_component(p));
        Some(match self {
            Condition::IndA(rule) => rule.admits(p_primary_part(profile.ind_a?, p)),
            Condition::Zero(s) => elem(*s)?.is_zero(),
            Condition::NonZero(s) => !elem(*s)?.is_zero(),
            Condition::KilledBy(s, m) => elem(*s)?.is_killed_by(*m),
            Condition::NotKilledBy(s, m) => !elem(*s)?.is_killed_by(*m),
            Condition::Symbol(s, want) => elem(*s)?.is_symbol() == *want,
            Condition::KilledByK(s, want) => elem(*s)?.killed_by_k() == *want,
            Condition::J3(a, b) => profile.j3? == (*a, *b),
            Condition::TableRow(k) => profile.table_row? == *k,
            Condition::R(r) => profile.r? == *r,
            Condition::WittIndex(w) => profile.witt_index? == *w,
        })
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::IndA(IndA::Divides(n)) => write!(f, "ind A divides {n}"),
            Condition::IndA(rule) => write!(f, "ind A = {rule}"),
            Condition::Zero(s) => write!(f, "{s} = 0"),
            Condition::NonZero(s) => write!(f, "{s} != 0"),
            Condition::KilledBy(s, m) => write!(f, "{m}{s} = 0"),
            Condition::NotKilledBy(s, m) => write!(f, "{m}{s} != 0"),
            Condition::Symbol(s, true) => write!(f, "{s} is a symbol"),
            Condition::Symbol(s, false) => write!(f, "{s} is not a symbol"),
            Condition::KilledByK(s, true) => write!(f, "{s} is killed by K"),
            Condition::KilledByK(s, false) => write!(f, "{s} is not killed by K"),
            Condition::J3(a, b) => write!(f, "J3 = ({a},{b})"),
            Condition::TableRow(k) => write!(f, "table row {k}"),
            Condition::R(r) => write!(f, "r = {r}"),
            Condition::WittIndex(w) => write!(f, "witt index = {w}"),
        }
    }
}

/// Profiles compatible with an index: any one variant, all of its conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    pub family: Family,
    pub rank: u32,
    pub p: u64,
    pub variants: Vec<Vec<Condition>>,
}

impl ConstraintSet {
    /// No condition at all: every profile qualifies.
    pub fn is_trivial(&self) -> bool {
        self.variants.iter().any(|v| v.is_empty())
    }

    pub fn admits(&self, profile: &InvariantProfile) -> bool {
        self.variants
            .iter()
            .any(|v| v.iter().all(|c| c.eval(profile, self.p) == Some(true)))
    }

    pub fn slots(&self) -> BTreeSet<Slot> {
        self.variants.iter().flatten().map(Condition::slot).collect()
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.variants.iter().enumerate() {
            if i > 0 {
                f.write_str(" or ")?;
            }
            if v.is_empty() {
                f.write_str("no conditions")?;
            }
            for (j, c) in v.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Determined {
        index: TitsIndex,
        /// 1-based row in the family table, for exceptional families.
        row: Option<usize>,
        /// Conditions of the matching row the profile did not state.
        implied: Vec<Condition>,
    },
    Underdetermined {
        candidates: Vec<TitsIndex>,
        needs: Vec<Slot>,
    },
}

impl Resolution {
    pub fn index(&self) -> Option<&TitsIndex> {
        match self {
            Resolution::Determined { index, .. } => Some(index),
            Resolution::Underdetermined { .. } => None,
        }
    }
}

type Dictionary = Vec<(usize, Vec<Vec<Condition>>)>;

/// Table rows occurring at `p` with the conditions selecting each row.
fn dictionary(rules: &RuleSet, family: Family, p: u64) -> Result<Dictionary> {
    use Condition::*;
    use Slot::{B, F3, F5, G3};
    let table = rules
        .table(family)
        .ok_or_else(|| Error::InvalidRules(format!("no table for family {family}")))?;
    let keyed_by_row = |k: usize| {
        let mut v = Vec::new();
        if let Some(rule) = &table.rows[k - 1].ind_a {
            v.push(IndA(rule.clone()));
        }
        v.push(TableRow(k));
        vec![v]
    };
    let dichotomy = |slot: Slot, last: usize| vec![(1, vec![vec![Zero(slot)]]), (last, vec![vec![NonZero(slot)]])];
    let dict: Dictionary = match (family, p) {
        (Family::G2, 2) | (Family::TrialityD4, 3) | (Family::E7, 3) | (Family::E8, 5) => {
            let last = if family == Family::E7 { 7 } else { table.rows.len() };
            dichotomy(B, last)
        }
        (Family::F4, 3) => dichotomy(G3, 3),
        (Family::F4, 2) => vec![
            (1, vec![vec![Zero(F3), Zero(F5)]]),
            (2, vec![vec![NonZero(F3), Zero(F5)]]),
            (3, vec![vec![NonZero(F3), NonZero(F5)]]),
        ],
        (Family::InnerE6, 2) => dichotomy(F3, 2),
        (Family::InnerE6, 3) => {
            let one = || IndA(crate::catalog::IndA::Exactly(1));
            let three = || IndA(crate::catalog::IndA::Exactly(3));
            vec![
                (1, vec![vec![one(), Zero(G3), J3(0, 0)]]),
                (3, vec![vec![three(), J3(1, 0)]]),
                (
                    4,
                    vec![
                        vec![one(), NonZero(G3), J3(0, 1)],
                        vec![three(), J3(1, 1)],
                        vec![IndA(crate::catalog::IndA::OneOf(vec![9, 27])), J3(2, 1)],
                    ],
                ),
            ]
        }
        (Family::OuterE6, 2) => vec![
            (1, vec![vec![Zero(B)]]),
            (
                2,
                vec![vec![NonZero(B), KilledBy(B, 2), Symbol(B, true), KilledByK(B, true)]],
            ),
            (
                3,
                vec![vec![NonZero(B), KilledBy(B, 2), Symbol(B, true), KilledByK(B, false)]],
            ),
            (4, vec![vec![NonZero(B), KilledBy(B, 2), Symbol(B, false)]]),
            (5, vec![vec![NotKilledBy(B, 2)]]),
        ],
        (Family::E7, 2) | (Family::E8, 2) => (1..=table.rows.len())
            .filter(|&k| table.rows[k - 1].occurs_at(p))
            .map(|k| (k, keyed_by_row(k)))
            .collect(),
        (Family::E8, 3) => vec![
            (1, vec![vec![Zero(B), J3(0, 0)]]),
            (4, vec![vec![NonZero(B), Symbol(B, true), J3(1, 0)]]),
            (7, vec![vec![NonZero(B), Symbol(B, false), J3(1, 1)]]),
        ],
        _ => {
            return Err(Error::FamilyPrime {
                family: family.label(),
                p,
                reason: "no invariant dictionary for this prime",
            })
        }
    };
    for (k, _) in &dict {
        if !table.rows.get(k - 1).is_some_and(|r| r.occurs_at(p)) {
            return Err(Error::InvalidRules(format!(
                "{family} row {k} does not occur at p = {p}"
            )));
        }
    }
    Ok(dict)
}

fn check_query(family: Family, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    RuleSet::check_prime(family, p)
}

/// Primes at which the classical rules apply to `family`.
fn classical_rule_applies(family: Family, p: u64) -> bool {
    family == Family::InnerA || p == 2
}

impl RuleSet {
    /// The Tits `p`-index determined by `profile`.
    pub fn index_from_profile(&self, profile: &InvariantProfile, p: u64) -> Result<Resolution> {
        let family = profile.family;
        check_query(family, p)?;
        profile.check()?;
        let rank = profile
            .rank
            .ok_or_else(|| Error::MissingSlots(vec![Slot::Rank]))?;
        let action = family.action(rank)?;
        let quasi_split = || Resolution::Determined {
            index: TitsIndex::quasi_split(action.clone()),
            row: None,
            implied: Vec::new(),
        };
        if !torsion_primes(family.type_label(), rank).contains(&p) {
            return Ok(quasi_split());
        }
        if family.is_classical() {
            if !classical_rule_applies(family, p) {
                return Ok(quasi_split());
            }
            let needs: &[Slot] = match family {
                Family::InnerA => &[Slot::IndA],
                Family::B => &[Slot::WittIndex],
                _ => &[Slot::IndA, Slot::R],
            };
            let missing: Vec<Slot> = needs.iter().copied().filter(|s| !profile.has(*s)).collect();
            if !missing.is_empty() {
                return Err(Error::MissingSlots(missing));
            }
            let n = u64::from(rank);
            let params = match family {
                Family::InnerA => {
                    let d = p_primary_part(profile.ind_a.unwrap(), p);
                    ClassicalParams { d, r: (n + 1) / d - 1 }
                }
                Family::B => ClassicalParams { d: 1, r: profile.witt_index.unwrap() },
                _ => ClassicalParams {
                    d: p_primary_part(profile.ind_a.unwrap(), p),
                    r: profile.r.unwrap(),
                },
            };
            if !self.classical_params(family, rank, p).contains(&params) {
                return Err(Error::InconsistentProfile(format!(
                    "(d, r) = ({}, {}) is not admissible for {family} in rank {rank}",
                    params.d, params.r
                )));
            }
            return Ok(Resolution::Determined {
                index: self.classical_index(family, &action, params),
                row: None,
                implied: Vec::new(),
            });
        }

        let table = self.table(family).expect("dictionary checked the table");
        let dict = dictionary(self, family, p)?;
        let mut candidates = Vec::new();
        for (row, variants) in &dict {
            let open: Vec<&Vec<Condition>> = variants
                .iter()
                .filter(|v| v.iter().all(|c| c.eval(profile, p) != Some(false)))
                .collect();
            if !open.is_empty() {
                candidates.push((*row, open));
            }
        }
        match candidates.len() {
            0 => Err(Error::InconsistentProfile(format!(
                "no {family} row at p = {p} matches the profile"
            ))),
            1 => {
                let (row, open) = candidates.pop().unwrap();
                let implied = if open.len() == 1 {
                    open[0]
                        .iter()
                        .filter(|c| c.eval(profile, p).is_none())
                        .cloned()
                        .collect()
                } else {
                    Vec::new()
                };
                Ok(Resolution::Determined {
                    index: TitsIndex::new(action, table.rows[row - 1].distinguished.clone()),
                    row: Some(row),
                    implied,
                })
            }
            _ => {
                let needs: BTreeSet<Slot> = candidates
                    .iter()
                    .flat_map(|(_, open)| open.iter().copied().flatten())
                    .filter(|c| c.eval(profile, p).is_none())
                    .map(Condition::slot)
                    .collect();
                let mut indexes: Vec<TitsIndex> = candidates
                    .iter()
                    .map(|(row, _)| {
                        TitsIndex::new(action.clone(), table.rows[row - 1].distinguished.clone())
                    })
                    .collect();
                indexes.sort_by(|a, b| a.catalog_cmp(b));
                Ok(Resolution::Underdetermined {
                    candidates: indexes,
                    needs: needs.into_iter().collect(),
                })
            }
        }
    }

    /// The inverse dictionary: which profiles produce `index` at `p`.
    pub fn constraints_for_index(&self, index: &TitsIndex, p: u64) -> Result<ConstraintSet> {
        let family = Family::of_index(index)
            .ok_or_else(|| Error::NotAdmissible(format!("no family for {}", index.diagram().name())))?;
        check_query(family, p)?;
        let rank = index.diagram().rank();
        if !self.admissible(index, p) {
            return Err(Error::NotAdmissible(format!(
                "{:?} is not a {family} index at p = {p}",
                index.distinguished()
            )));
        }
        let mut out = ConstraintSet {
            family,
            rank,
            p,
            variants: Vec::new(),
        };
        let torsion = torsion_primes(family.type_label(), rank).contains(&p);
        if !torsion || (family.is_classical() && !classical_rule_applies(family, p)) {
            out.variants.push(Vec::new());
            return Ok(out);
        }
        if family.is_classical() {
            let action = index.action();
            for params in self.classical_params(family, rank, p) {
                if self.classical_index(family, action, params) != *index {
                    continue;
                }
                let v = match family {
                    Family::InnerA => vec![Condition::IndA(IndA::Exactly(params.d))],
                    Family::B => vec![Condition::WittIndex(params.r)],
                    _ => vec![Condition::IndA(IndA::Exactly(params.d)), Condition::R(params.r)],
                };
                if !out.variants.contains(&v) {
                    out.variants.push(v);
                }
            }
            return Ok(out);
        }
        let row = self
            .table(family)
            .and_then(|t| t.row_of(index))
            .ok_or_else(|| Error::NotAdmissible(String::from("index is not a table row")))?;
        let dict = dictionary(self, family, p)?;
        out.variants = dict
            .into_iter()
            .find(|(k, _)| *k == row)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::NotAdmissible(format!("{family} row {row} has no entry at p = {p}")))?;
        Ok(out)
    }
}

pub fn index_from_profile(profile: &InvariantProfile, p: u64) -> Result<Resolution> {
    RuleSet::builtin().index_from_profile(profile, p)
}

pub fn constraints_for_index(index: &TitsIndex, p: u64) -> Result<ConstraintSet> {
    RuleSet::builtin().constraints_for_index(index, p)
}

/// The group a sampled element of `slot` lives in.
pub fn default_group(family: Family, slot: Slot) -> CohGroup {
    let m = match (family, slot) {
        (Family::F4, Slot::B) | (Family::InnerE6, Slot::A) => 6,
        (_, Slot::F3) | (_, Slot::F5) | (Family::G2, Slot::B) => 2,
        (Family::OuterE6, Slot::B) => 4,
        (Family::E8, Slot::B) => 60,
        (Family::E7, Slot::TitsClass) => 2,
        (Family::InnerE6, Slot::TitsClass) => 3,
        _ => 3,
    };
    CohGroup::cyclic(m)
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Every profile over a small grid satisfying one variant of `cs` exactly.
///
/// Test harness only: elements come from [`default_group`] with all flag
/// combinations, `ind_A` ranges over divisors of the family's degree bound.
pub fn sample_profiles(cs: &ConstraintSet) -> Vec<InvariantProfile> {
    let mut base = InvariantProfile::new(cs.family);
    base.rank = Some(cs.rank);
    let mut out: Vec<InvariantProfile> = Vec::new();
    for variant in &cs.variants {
        let mut partial = vec![base.clone()];
        let slots: BTreeSet<Slot> = variant.iter().map(Condition::slot).collect();
        for slot in slots {
            let conds: Vec<&Condition> = variant.iter().filter(|c| c.slot() == slot).collect();
            let mut next = Vec::new();
            for prof in &partial {
                for value in slot_values(prof, slot, &conds, cs.p) {
                    next.push(value);
                }
            }
            partial = next;
        }
        for prof in partial {
            if prof.check().is_ok() && !out.contains(&prof) {
                out.push(prof);
            }
        }
    }
    out
}

fn slot_values(prof: &InvariantProfile, slot: Slot, conds: &[&Condition], p: u64) -> Vec<InvariantProfile> {
    let ok = |q: &InvariantProfile| conds.iter().all(|c| c.eval(q, p) == Some(true));
    let mut out: Vec<InvariantProfile> = Vec::new();
    let mut try_with = |q: InvariantProfile| {
        if ok(&q) && !out.contains(&q) {
            out.push(q);
        }
    };
    match slot {
        Slot::IndA => {
            let bound = prof.degree_bound().unwrap_or(1);
            for d in divisors(bound) {
                try_with(InvariantProfile { ind_a: Some(d), ..prof.clone() });
            }
        }
        Slot::R => {
            for c in conds {
                if let Condition::R(r) = c {
                    try_with(InvariantProfile { r: Some(*r), ..prof.clone() });
                }
            }
        }
        Slot::WittIndex => {
            for c in conds {
                if let Condition::WittIndex(w) = c {
                    try_with(InvariantProfile { witt_index: Some(*w), ..prof.clone() });
                }
            }
        }
        Slot::J3 => {
            for c in conds {
                if let Condition::J3(a, b) = c {
                    try_with(InvariantProfile { j3: Some((*a, *b)), ..prof.clone() });
                }
            }
        }
        Slot::TableRow => {
            for c in conds {
                if let Condition::TableRow(k) = c {
                    try_with(InvariantProfile { table_row: Some(*k), ..prof.clone() });
                }
            }
        }
        s if s.is_cohomological() => {
            let group = default_group(prof.family, s);
            for (sym, killed) in [(true, true), (true, false), (false, true), (false, false)] {
                for e in group.elements(sym, killed) {
                    let mut q = prof.clone();
                    q.set_element(s, e);
                    try_with(q);
                }
            }
        }
        _ => {}
    }
    out
}
