//! The rules file: a JSON image of [`RuleSet`].
//!
//! The default file is compiled in from `data/rules.json`; `--rules <path>` or
//! `TITS_RULES` replaces it wholesale.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use tits_core::catalog::{ClassicalRules, FamilyTable, ForkRule, IndA, InnerDRule, TableRow};
use tits_core::{Family, RuleSet, Vertex};

pub const RULES_SCHEMA: &str = "tits-rules/1";
pub const EMBEDDED: &str = include_str!("../data/rules.json");

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RulesJson {
    pub schema: String,
    pub version: u32,
    pub classical: ClassicalJson,
    /// Multipliers `m` with `b(G)` in `H^3(k, Z/m(2))`, keyed by family.
    pub rost_multipliers: Vec<MultiplierJson>,
    pub tables: Vec<TableJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ClassicalJson {
    pub symplectic_split_forced: bool,
    pub unitary_witt_bound: bool,
    pub inner_d_exclude_rd_n_minus_1: bool,
    /// `"literal"` or `"both_forks"`.
    pub inner_d_full_rank: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MultiplierJson {
    pub family: String,
    pub m: u64,
    pub source: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub family: String,
    pub source: String,
    pub rows: Vec<RowJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RowJson {
    pub distinguished: Vec<Vec<Vertex>>,
    #[serde(rename = "ind_A")]
    pub ind_a: Option<IndAJson>,
    pub occurs: BTreeMap<String, bool>,
    pub signature: Option<i32>,
    pub numbering_dependent: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum IndAJson {
    Exactly(u64),
    Divides(u64),
    OneOf(Vec<u64>),
}

impl From<&IndA> for IndAJson {
    fn from(i: &IndA) -> Self {
        match i {
            IndA::Exactly(n) => IndAJson::Exactly(*n),
            IndA::Divides(n) => IndAJson::Divides(*n),
            IndA::OneOf(v) => IndAJson::OneOf(v.clone()),
        }
    }
}

impl From<&IndAJson> for IndA {
    fn from(i: &IndAJson) -> Self {
        match i {
            IndAJson::Exactly(n) => IndA::Exactly(*n),
            IndAJson::Divides(n) => IndA::Divides(*n),
            IndAJson::OneOf(v) => IndA::OneOf(v.clone()),
        }
    }
}

/// Multipliers stated for the quasi-split outer forms; other families are
/// left to external sources.
fn builtin_multipliers() -> Vec<MultiplierJson> {
    [("2A (n even)", 2), ("3D4", 3), ("6D4", 3), ("2E6", 4)]
        .into_iter()
        .map(|(family, m)| MultiplierJson {
            family: family.to_string(),
            m,
            source: "stated".to_string(),
        })
        .collect()
}

pub fn to_json(rules: &RuleSet) -> RulesJson {
    let c = &rules.classical;
    RulesJson {
        schema: RULES_SCHEMA.to_string(),
        version: rules.version,
        classical: ClassicalJson {
            symplectic_split_forced: c.symplectic_split_forced,
            unitary_witt_bound: c.unitary_witt_bound,
            inner_d_exclude_rd_n_minus_1: c.inner_d.exclude_rd_n_minus_1,
            inner_d_full_rank: match c.inner_d.full_rank {
                ForkRule::Literal => "literal",
                ForkRule::BothForks => "both_forks",
            }
            .to_string(),
        },
        rost_multipliers: builtin_multipliers(),
        tables: rules
            .tables
            .iter()
            .map(|t| TableJson {
                family: t.family.label().to_string(),
                source: t.source.clone(),
                rows: t
                    .rows
                    .iter()
                    .map(|r| RowJson {
                        distinguished: r.distinguished.clone(),
                        ind_a: r.ind_a.as_ref().map(IndAJson::from),
                        occurs: r.occurs.iter().map(|(p, y)| (p.to_string(), *y)).collect(),
                        signature: r.signature,
                        numbering_dependent: r.numbering_dependent,
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn from_json(rj: &RulesJson) -> anyhow::Result<RuleSet> {
    if rj.schema != RULES_SCHEMA {
        bail!("schema: expected {RULES_SCHEMA}, found {}", rj.schema);
    }
    let full_rank = match rj.classical.inner_d_full_rank.as_str() {
        "literal" => ForkRule::Literal,
        "both_forks" => ForkRule::BothForks,
        other => bail!("classical.inner_d_full_rank: unknown rule {other}"),
    };
    let mut tables = Vec::new();
    for t in &rj.tables {
        let family: Family = t.family.parse().map_err(|e| anyhow!("tables.family: {e}"))?;
        let mut rows = Vec::new();
        for r in &t.rows {
            let mut occurs = Vec::new();
            for (p, y) in &r.occurs {
                let p: u64 = p.parse().with_context(|| format!("tables.occurs: bad prime {p}"))?;
                occurs.push((p, *y));
            }
            occurs.sort();
            rows.push(TableRow {
                distinguished: r.distinguished.clone(),
                ind_a: r.ind_a.as_ref().map(IndA::from),
                occurs,
                signature: r.signature,
                numbering_dependent: r.numbering_dependent,
            });
        }
        tables.push(FamilyTable {
            family,
            source: t.source.clone(),
            rows,
        });
    }
    let rules = RuleSet {
        version: rj.version,
        classical: ClassicalRules {
            symplectic_split_forced: rj.classical.symplectic_split_forced,
            unitary_witt_bound: rj.classical.unitary_witt_bound,
            inner_d: InnerDRule {
                exclude_rd_n_minus_1: rj.classical.inner_d_exclude_rd_n_minus_1,
                full_rank,
            },
        },
        tables,
    };
    rules.check()?;
    Ok(rules)
}

pub fn parse(text: &str) -> anyhow::Result<RuleSet> {
    let rj: RulesJson = serde_json::from_str(text).context("rules file")?;
    from_json(&rj)
}

pub fn embedded() -> RuleSet {
    parse(EMBEDDED).expect("embedded rules file is valid")
}

/// The rules from `path` if given, else the embedded file.
pub fn load(path: Option<&Path>) -> anyhow::Result<RuleSet> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            parse(&text)
        }
        None => Ok(embedded()),
    }
}
