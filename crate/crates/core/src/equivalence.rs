//! Motivic equivalence mod `p` between two invariant profiles.
//!
//! Only closed-form criteria are evaluated. Where none is known the answer is
//! [`Verdict::CriterionUnavailable`], never a guess from the base-field index.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::catalog::{is_prime, p_primary_part, torsion_primes, Family, RuleSet};
use crate::invariants::{InvariantProfile, Slot};
use crate::{CohElement, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    CriterionUnavailable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::NotEquivalent => "not_equivalent",
            Verdict::CriterionUnavailable => "criterion_unavailable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verdict with the criterion that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    /// `None` for the combined verdict over all torsion primes.
    pub prime: Option<u64>,
    pub verdict: Verdict,
    pub criterion: &'static str,
    pub citations: Vec<&'static str>,
    pub note: Option<String>,
    /// Per-prime decisions behind a combined verdict.
    pub per_prime: Vec<Decision>,
}

impl Decision {
    fn new(p: u64, verdict: Verdict, criterion: &'static str, citations: &[&'static str]) -> Self {
        Decision {
            prime: Some(p),
            verdict,
            criterion,
            citations: citations.to_vec(),
            note: None,
            per_prime: Vec::new(),
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(String::from(note));
        self
    }
}

fn need(profile: &InvariantProfile, slot: Slot, p: u64) -> Result<CohElement> {
    profile
        .element(slot)
        .map(|e| e.p_component(p))
        .ok_or(Error::MissingSlots(vec![slot]))
}

fn need_both(p1: &InvariantProfile, p2: &InvariantProfile, slot: Slot, p: u64) -> Result<(CohElement, CohElement)> {
    match (p1.element(slot), p2.element(slot)) {
        (Some(a), Some(b)) => Ok((a.p_component(p), b.p_component(p))),
        _ => Err(Error::MissingSlots(vec![slot])),
    }
}

fn verdict(eq: bool) -> Verdict {
    if eq {
        Verdict::Equivalent
    } else {
        Verdict::NotEquivalent
    }
}

/// Primes dividing the exponent of the center, where the Tits class can be
/// nonzero.
fn center_primes(family: Family, rank: u32) -> Vec<u64> {
    match family {
        Family::InnerA | Family::OuterA => torsion_primes(family.type_label(), rank)
            .into_iter()
            .filter(|&q| (u64::from(rank) + 1) % q == 0)
            .collect(),
        Family::B | Family::C | Family::InnerD | Family::OuterD | Family::TrialityD4 | Family::E7 => vec![2],
        Family::InnerE6 | Family::OuterE6 => vec![3],
        Family::G2 | Family::F4 | Family::E8 => Vec::new(),
    }
}

/// Whether the `p`-primary Tits classes generate the same subgroup; a
/// necessary condition for equivalence mod `p`.
///
/// Uses the explicit Tits classes when both are given and otherwise compares
/// the `p`-parts of `ind_A`, which is all the subgroup test sees once the
/// classes are cyclic.
pub fn tits_algebra_compatible(p1: &InvariantProfile, p2: &InvariantProfile, p: u64) -> Result<bool> {
    if p1.family != p2.family {
        return Err(Error::FamilyMismatch(p1.family.label(), p2.family.label()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let (Some(t1), Some(t2)) = (&p1.tits_class, &p2.tits_class) {
        return t1.p_component(p).same_subgroup(&t2.p_component(p));
    }
    let rank = p1.rank.or(p2.rank).unwrap_or(0);
    if !center_primes(p1.family, rank).contains(&p) {
        return Ok(true);
    }
    let part = |q: &InvariantProfile| -> Option<u64> {
        if let Some(t) = &q.tits_class {
            return Some(p_primary_part(t.p_component(p).order(), p));
        }
        q.ind_a
            .or(q.tits_class_order)
            .map(|i| p_primary_part(i, p))
    };
    match (part(p1), part(p2)) {
        (Some(a), Some(b)) => Ok(a == b),
        _ => Err(Error::MissingSlots(vec![Slot::IndA])),
    }
}

/// Motivic equivalence mod `p` by the closed-form criterion for the family.
pub fn motivic_equivalent_mod_p(p1: &InvariantProfile, p2: &InvariantProfile, p: u64) -> Result<Decision> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p1.family != p2.family || (p1.rank.is_some() && p2.rank.is_some() && p1.rank != p2.rank) {
        return Ok(Decision::new(p, Verdict::NotEquivalent, "quasi_split_type", &[])
            .with_note("no diagram isomorphism f"));
    }
    let family = p1.family;
    let rank = p1
        .rank
        .or(p2.rank)
        .ok_or(Error::MissingSlots(vec![Slot::Rank]))?;
    family.resolve_rank(Some(rank))?;
    if !torsion_primes(family.type_label(), rank).contains(&p) {
        return Ok(Decision::new(p, Verdict::Equivalent, "outside_torsion_primes", &["Table 1"]));
    }
    if RuleSet::check_prime(family, p).is_err() {
        return Ok(Decision::new(p, Verdict::CriterionUnavailable, "none", &[])
            .with_note("the Galois action order is not a power of p"));
    }
    let subgroup = |slot: Slot| -> Result<bool> {
        let (a, b) = need_both(p1, p2, slot, p)?;
        a.same_subgroup(&b)
    };
    let decision = match (family, p) {
        (Family::G2, 2) => Decision::new(p, verdict(subgroup(Slot::B)?), "G2_mod2_b_subgroup", &["Prop. ht1", "Cor. ht1.me"])
            .with_note("for G2, equivalence mod 2 coincides with isomorphism"),
        (Family::TrialityD4, 3) => {
            Decision::new(p, verdict(subgroup(Slot::B)?), "3D4_mod3_b_subgroup", &["Prop. ht1", "Cor. ht1.me"])
        }
        (Family::F4, 3) => {
            Decision::new(p, verdict(subgroup(Slot::G3)?), "F4_mod3_b_subgroup", &["Prop. ht1", "Cor. ht1.me"])
        }
        (Family::E8, 5) => {
            Decision::new(p, verdict(subgroup(Slot::B)?), "E8_mod5_b_subgroup", &["Prop. ht1", "Cor. ht1.me"])
        }
        (Family::F4, 2) => {
            let (f3, f3b) = need_both(p1, p2, Slot::F3, 2)?;
            let (f5, f5b) = need_both(p1, p2, Slot::F5, 2)?;
            let eq = f3.same_value(&f3b) && f5.same_value(&f5b);
            Decision::new(p, verdict(eq), "F4_mod2_f3_f5", &["Prop. F4.me"])
        }
        (Family::InnerE6, 2) => {
            let (f3, f3b) = need_both(p1, p2, Slot::F3, 2)?;
            Decision::new(p, verdict(f3.same_value(&f3b)), "1E6_mod2_f3", &["Table E6.triv"])
        }
        (Family::InnerE6, 3) => {
            let trivial = |q: &InvariantProfile| q.tits_class_trivial();
            match (trivial(p1), trivial(p2)) {
                (Some(true), Some(true)) => {
                    let slot = if p1.a.is_some() && p2.a.is_some() { Slot::A } else { Slot::G3 };
                    Decision::new(p, verdict(subgroup(slot)?), "1E6_a_subgroup", &["Prop. oE.me"])
                }
                (None, _) | (_, None) => return Err(Error::MissingSlots(vec![Slot::IndA])),
                _ => Decision::new(p, Verdict::CriterionUnavailable, "none", &[])
                    .with_note("1E6 mod 3 is only settled for trivial Tits class"),
            }
        }
        (Family::E7, 3) => {
            let b = need(p1, Slot::B, 3)?;
            let b2 = need(p2, Slot::B, 3)?;
            if b.group() != b2.group() {
                return Err(Error::GroupMismatch);
            }
            let eq = b.same_value(&b2) || b.same_value(&b2.neg());
            Decision::new(p, verdict(eq), "E7_mod3_pm_b", &["Table E7.3"])
        }
        _ => Decision::new(p, Verdict::CriterionUnavailable, "none", &[])
            .with_note("no closed-form criterion is known for this family and prime"),
    };
    Ok(decision)
}

/// Equivalence mod every torsion prime. Any `not_equivalent` prime decides;
/// otherwise any unavailable prime makes the answer unavailable.
pub fn motivic_equivalent(p1: &InvariantProfile, p2: &InvariantProfile) -> Result<Decision> {
    if p1.family != p2.family || (p1.rank.is_some() && p2.rank.is_some() && p1.rank != p2.rank) {
        let mut d = motivic_equivalent_mod_p(p1, p2, 2)?;
        d.prime = None;
        return Ok(d);
    }
    let rank = p1
        .rank
        .or(p2.rank)
        .ok_or(Error::MissingSlots(vec![Slot::Rank]))?;
    let mut per_prime = Vec::new();
    for p in torsion_primes(p1.family.type_label(), rank) {
        per_prime.push(motivic_equivalent_mod_p(p1, p2, p)?);
    }
    let any = |v: Verdict| per_prime.iter().any(|d| d.verdict == v);
    let overall = if any(Verdict::NotEquivalent) {
        Verdict::NotEquivalent
    } else if any(Verdict::CriterionUnavailable) {
        Verdict::CriterionUnavailable
    } else {
        Verdict::Equivalent
    };
    let mut citations: Vec<&'static str> = Vec::new();
    for c in per_prime.iter().flat_map(|d| d.citations.iter()) {
        if !citations.contains(c) {
            citations.push(c);
        }
    }
    Ok(Decision {
        prime: None,
        verdict: overall,
        criterion: "all_torsion_primes",
        citations,
        note: None,
        per_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CohGroup;

    fn el(m: u64, c: i64) -> CohElement {
        CohElement::new(CohGroup::cyclic(m), &[c], true, false).unwrap()
    }

    fn f4(f3: i64, f5: i64, g3: i64) -> InvariantProfile {
        let mut p = InvariantProfile::new(Family::F4);
        p.f3 = Some(el(2, f3));
        p.f5 = Some(el(2, f5));
        p.g3 = Some(el(3, g3));
        p
    }

    #[test]
    fn f4_worked_example() {
        let (g, h) = (f4(1, 1, 1), f4(1, 1, -1));
        for p in [2, 3, 5, 7] {
            assert_eq!(motivic_equivalent_mod_p(&g, &h, p).unwrap().verdict, Verdict::Equivalent);
        }
        assert_eq!(motivic_equivalent(&g, &h).unwrap().verdict, Verdict::Equivalent);
        let k = f4(1, 1, 0);
        assert_eq!(motivic_equivalent(&g, &k).unwrap().verdict, Verdict::NotEquivalent);
    }

    #[test]
    fn g2_equal_classes() {
        let mut a = InvariantProfile::new(Family::G2);
        a.b = Some(el(2, 1));
        let d = motivic_equivalent_mod_p(&a, &a.clone(), 2).unwrap();
        assert_eq!(d.verdict, Verdict::Equivalent);
        assert!(d.note.is_some());
    }

    #[test]
    fn e7_mod3_plus_minus() {
        let mut a = InvariantProfile::new(Family::E7);
        a.b = Some(el(3, 1));
        let mut b = a.clone();
        b.b = Some(el(3, 2));
        let d = motivic_equivalent_mod_p(&a, &b, 3).unwrap();
        assert_eq!(d.verdict, Verdict::Equivalent);
        assert_eq!(d.criterion, "E7_mod3_pm_b");
        assert_eq!(d.citations, vec!["Table E7.3"]);
        let mut z = a.clone();
        z.b = Some(el(3, 0));
        assert_eq!(motivic_equivalent_mod_p(&a, &z, 3).unwrap().verdict, Verdict::NotEquivalent);
        assert_eq!(
            motivic_equivalent_mod_p(&a, &b, 2).unwrap().verdict,
            Verdict::CriterionUnavailable
        );
    }

    #[test]
    fn e6_lines_in_plane() {
        let g = CohGroup::with_orders(&[3, 3]).unwrap();
        let mut a = InvariantProfile::new(Family::InnerE6);
        a.ind_a = Some(1);
        a.a = Some(CohElement::new(g.clone(), &[1, 0], true, false).unwrap());
        let mut b = a.clone();
        b.a = Some(CohElement::new(g, &[0, 1], true, false).unwrap());
        assert_eq!(motivic_equivalent_mod_p(&a, &b, 3).unwrap().verdict, Verdict::NotEquivalent);
    }

    #[test]
    fn mismatched_types() {
        let a = InvariantProfile::new(Family::F4);
        let b = InvariantProfile::new(Family::E8);
        let d = motivic_equivalent_mod_p(&a, &b, 2).unwrap();
        assert_eq!(d.verdict, Verdict::NotEquivalent);
        assert_eq!(d.note.as_deref(), Some("no diagram isomorphism f"));
        assert!(matches!(tits_algebra_compatible(&a, &b, 2), Err(Error::FamilyMismatch(..))));
    }

    #[test]
    fn tits_algebras() {
        let mut a = InvariantProfile::new(Family::E7);
        a.ind_a = Some(2);
        let mut b = a.clone();
        b.ind_a = Some(1);
        assert!(!tits_algebra_compatible(&a, &b, 2).unwrap());
        assert!(tits_algebra_compatible(&a, &b, 3).unwrap());
        let mut x = InvariantProfile::new(Family::InnerA);
        x.rank = Some(2);
        x.tits_class = Some(el(3, 1));
        let mut y = x.clone();
        y.tits_class = Some(el(3, -1));
        assert!(tits_algebra_compatible(&x, &y, 3).unwrap());
        let f = InvariantProfile::new(Family::F4);
        assert!(tits_algebra_compatible(&f, &f, 2).unwrap());
    }

    #[test]
    fn outside_torsion_primes_is_equivalent() {
        let a = InvariantProfile::new(Family::E7);
        let d = motivic_equivalent_mod_p(&a, &a, 5).unwrap();
        assert_eq!(d.verdict, Verdict::Equivalent);
        assert_eq!(d.criterion, "outside_torsion_primes");
    }

    #[test]
    fn missing_slots_are_reported() {
        let a = InvariantProfile::new(Family::G2);
        assert_eq!(
            motivic_equivalent_mod_p(&a, &a, 2),
            Err(Error::MissingSlots(vec![Slot::B]))
        );
    }
}
