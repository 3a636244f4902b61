//! Finite abelian groups standing in for `H^2` / `H^3` cohomology groups, and
//! their elements.
//!
//! Whether a class is a symbol, or vanishes over the fixed quadratic extension
//! `K`, cannot be computed from coordinates alone; both predicates are carried
//! as flags supplied by the caller.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::catalog::p_primary_part;
use crate::{Error, Result};

/// A direct sum of cyclic groups `Z/m_1 + ... + Z/m_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohGroup {
    orders: Vec<u64>,
    labels: Vec<String>,
}

impl CohGroup {
    pub fn new(orders: Vec<u64>, labels: Vec<String>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::MalformedElement(String::from(
                "cyclic orders must be positive",
            )));
        }
        if labels.len() != orders.len() {
            return Err(Error::MalformedElement(format!(
                "{} labels for {} cyclic factors",
                labels.len(),
                orders.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::MalformedElement(format!("duplicate label {l}")));
            }
        }
        Ok(CohGroup { orders, labels })
    }

    /// Factors labelled `e1, e2, ...`.
    pub fn with_orders(orders: &[u64]) -> Result<Self> {
        let labels = (1..=orders.len()).map(|i| format!("e{i}")).collect();
        CohGroup::new(orders.to_vec(), labels)
    }

    pub fn cyclic(m: u64) -> Self {
        CohGroup::with_orders(&[m]).expect("positive order")
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    /// The `p`-primary subgroup, as a group in its own right.
    pub fn p_part(&self, p: u64) -> CohGroup {
        CohGroup {
            orders: self.orders.iter().map(|&m| p_primary_part(m, p)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Every element, in lexicographic order of coordinates, with the given
    /// flags (zero always gets the conventional flags).
    pub fn elements(&self, is_symbol: bool, killed_by_k: bool) -> Vec<CohElement> {
        let mut out = Vec::new();
        let mut coords = vec![0u64; self.orders.len()];
        loop {
            out.push(CohElement::from_reduced(
                self.clone(),
                coords.clone(),
                is_symbol,
                killed_by_k,
            ));
            let mut i = coords.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.orders[i] {
                    break;
                }
                coords[i] = 0;
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohElement {
    group: CohGroup,
    coords: Vec<u64>,
    is_symbol: bool,
    killed_by_k: bool,
}

impl CohElement {
    /// Reduces `coords` modulo the cyclic orders.
    pub fn new(group: CohGroup, coords: &[i64], is_symbol: bool, killed_by_k: bool) -> Result<Self> {
        if coords.len() != group.orders.len() {
            return Err(Error::MalformedElement(format!(
                "{} coordinates for {} cyclic factors",
                coords.len(),
                group.orders.len()
            )));
        }
        let reduced = coords
            .iter()
            .zip(&group.orders)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        Ok(CohElement::from_reduced(group, reduced, is_symbol, killed_by_k))
    }

    fn from_reduced(group: CohGroup, coords: Vec<u64>, is_symbol: bool, killed_by_k: bool) -> Self {
        let zero = coords.iter().all(|&c| c == 0);
        CohElement {
            group,
            coords,
            is_symbol: is_symbol || zero,
            killed_by_k: killed_by_k || zero,
        }
    }

    pub fn zero(group: CohGroup) -> Self {
        let coords = vec![0; group.orders.len()];
        CohElement::from_reduced(group, coords, true, true)
    }

    /// Generator of `Z/m`, flagged as a symbol not killed by `K`.
    pub fn generator(m: u64) -> Self {
        CohElement::from_reduced(CohGroup::cyclic(m), vec![1 % m], true, false)
    }

    pub fn group(&self) -> &CohGroup {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_symbol(&self) -> bool {
        self.is_symbol
    }

    pub fn killed_by_k(&self) -> bool {
        self.killed_by_k
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `k` times this element; flags are kept (and forced for zero).
    pub fn scale(&self, k: i64) -> CohElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.group.orders)
            .map(|(&c, &m)| ((c as i128 * k as i128).rem_euclid(m as i128)) as u64)
            .collect();
        CohElement::from_reduced(self.group.clone(), coords, self.is_symbol, self.killed_by_k)
    }

    pub fn neg(&self) -> CohElement {
        self.scale(-1)
    }

    pub fn is_killed_by(&self, m: u64) -> bool {
        self.scale(m as i64).is_zero()
    }

    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .zip(&self.group.orders)
            .fold(1, |acc, (&c, &m)| lcm(acc, m / gcd(c, m)))
    }

    /// Image under the projection onto the `p`-primary subgroup.
    pub fn p_component(&self, p: u64) -> CohElement {
        let group = self.group.p_part(p);
        let coords = self
            .coords
            .iter()
            .zip(&group.orders)
            .map(|(&c, &m)| c % m)
            .collect();
        CohElement::from_reduced(group, coords, self.is_symbol, self.killed_by_k)
    }

    /// Same underlying value; flags are ignored.
    pub fn same_value(&self, other: &CohElement) -> bool {
        self.group.orders == other.group.orders && self.coords == other.coords
    }

    /// Whether `self` lies in the cyclic subgroup generated by `other`.
    pub fn is_multiple_of(&self, other: &CohElement) -> Result<bool> {
        if self.group.orders != other.group.orders {
            return Err(Error::GroupMismatch);
        }
        Ok((0..other.order() as i64).any(|k| other.scale(k).same_value(self)))
    }

    /// Whether the two elements generate the same cyclic subgroup.
    pub fn same_subgroup(&self, other: &CohElement) -> Result<bool> {
        Ok(self.is_multiple_of(other)? && other.is_multiple_of(self)?)
    }
}

pub fn same_subgroup(e1: &CohElement, e2: &CohElement) -> Result<bool> {
    e1.same_subgroup(e2)
}
