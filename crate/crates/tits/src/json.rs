//! JSON forms of diagrams, indexes, profiles and verdicts.

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tits_core::equivalence::Decision;
use tits_core::invariants::{Condition, ConstraintSet, Resolution};
use tits_core::{CohElement, CohGroup, DynkinDiagram, Family, GaloisAction, InvariantProfile, TitsIndex, TypeLabel, Vertex};

pub const INDEX_SCHEMA: &str = "tits-index/1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<Value>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct IndexJson {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub diagram: DiagramJson,
    pub t: usize,
    pub orbits: Vec<Vec<Vertex>>,
    pub distinguished: Vec<Vec<Vertex>>,
}

fn default_schema() -> String {
    String::from(INDEX_SCHEMA)
}

pub fn diagram_json(d: &DynkinDiagram) -> DiagramJson {
    let edges = d
        .edges()
        .iter()
        .map(|e| match e.short {
            Some(s) if e.multiplicity > 1 => {
                json!([e.a, e.b, e.multiplicity, {"arrow": "toward_short", "short": s}])
            }
            _ => json!([e.a, e.b, e.multiplicity]),
        })
        .collect();
    DiagramJson {
        ty: format!("{}{}", d.type_label(), d.rank()),
        rank: d.rank(),
        edges: Some(edges),
    }
}

/// Accepts `"E6"` or `"E"` for the type.
fn parse_diagram(dj: &DiagramJson) -> anyhow::Result<DynkinDiagram> {
    let letter = dj.ty.chars().next().ok_or_else(|| anyhow!("diagram.type: empty"))?;
    let ty: TypeLabel = letter
        .to_string()
        .parse()
        .map_err(|e| anyhow!("diagram.type: {e}"))?;
    let suffix = &dj.ty[letter.len_utf8()..];
    if !suffix.is_empty() && suffix.parse::<u32>().ok() != Some(dj.rank) {
        bail!("diagram.type: {} disagrees with rank {}", dj.ty, dj.rank);
    }
    let d = DynkinDiagram::new(ty, dj.rank)?;
    if let Some(edges) = &dj.edges {
        let canonical = diagram_json(&d).edges.unwrap();
        let norm = |v: &Value| -> Value {
            match v.as_array() {
                Some(a) if a.len() >= 2 && a[0].as_u64() > a[1].as_u64() => {
                    let mut a = a.clone();
                    a.swap(0, 1);
                    Value::Array(a)
                }
                _ => v.clone(),
            }
        };
        let mut given: Vec<String> = edges.iter().map(|e| norm(e).to_string()).collect();
        let mut want: Vec<String> = canonical.iter().map(|e| e.to_string()).collect();
        given.sort();
        want.sort();
        if given != want {
            bail!("diagram.edges: do not match the {} diagram", d.name());
        }
    }
    Ok(d)
}

pub fn index_json(index: &TitsIndex) -> IndexJson {
    IndexJson {
        schema: default_schema(),
        diagram: diagram_json(index.diagram()),
        t: index.action().order(),
        orbits: index.action().orbits().to_vec(),
        distinguished: index.distinguished().to_vec(),
    }
}

/// Parses an index without validating its distinguished set.
pub fn parse_index(ij: &IndexJson) -> anyhow::Result<TitsIndex> {
    if ij.schema != INDEX_SCHEMA {
        bail!("schema: expected {INDEX_SCHEMA}, found {}", ij.schema);
    }
    let d = parse_diagram(&ij.diagram)?;
    let action = GaloisAction::from_orbits(d, ij.t, &ij.orbits)
        .ok_or_else(|| anyhow!("orbits: no action of order {} has these orbits", ij.t))?;
    Ok(TitsIndex::new(action, ij.distinguished.clone()))
}

/// One index or an array of them.
pub fn parse_indexes(text: &str) -> anyhow::Result<Vec<TitsIndex>> {
    let value: Value = serde_json::from_str(text).context("not valid JSON")?;
    let docs: Vec<IndexJson> = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    docs.iter().map(parse_index).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub group: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub coords: Vec<i64>,
    #[serde(default)]
    pub is_symbol: bool,
    #[serde(default, rename = "killed_by_K")]
    pub killed_by_k: bool,
}

impl ElementJson {
    pub fn to_element(&self) -> tits_core::Result<CohElement> {
        let group = match &self.labels {
            Some(l) => CohGroup::new(self.group.clone(), l.clone())?,
            None => CohGroup::with_orders(&self.group)?,
        };
        CohElement::new(group, &self.coords, self.is_symbol, self.killed_by_k)
    }

    pub fn from_element(e: &CohElement) -> Self {
        ElementJson {
            group: e.group().orders().to_vec(),
            labels: None,
            coords: e.coords().iter().map(|&c| c as i64).collect(),
            is_symbol: e.is_symbol(),
            killed_by_k: e.killed_by_k(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProfileJson {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, rename = "ind_A", skip_serializing_if = "Option::is_none")]
    pub ind_a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witt_index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tits_class_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tits_class: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f3: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f5: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g3: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<ElementJson>,
    #[serde(default, rename = "J3", skip_serializing_if = "Option::is_none")]
    pub j3: Option<(u32, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_row: Option<usize>,
}

impl ProfileJson {
    pub fn to_profile(&self) -> anyhow::Result<InvariantProfile> {
        let family: Family = self.family.parse().map_err(|e| anyhow!("family: {e}"))?;
        let mut p = InvariantProfile::new(family);
        if self.n.is_some() {
            p.rank = self.n;
        }
        p.ind_a = self.ind_a;
        p.witt_index = self.witt_index;
        p.r = self.r;
        p.discriminant_trivial = self.discriminant_trivial;
        p.tits_class_order = self.tits_class_order;
        p.j3 = self.j3;
        p.table_row = self.table_row;
        let elem = |name: &str, e: &Option<ElementJson>| -> anyhow::Result<Option<CohElement>> {
            e.as_ref()
                .map(|e| e.to_element().map_err(|err| anyhow!("{name}: {err}")))
                .transpose()
        };
        p.tits_class = elem("tits_class", &self.tits_class)?;
        p.f3 = elem("f3", &self.f3)?;
        p.f5 = elem("f5", &self.f5)?;
        p.g3 = elem("g3", &self.g3)?;
        p.a = elem("a", &self.a)?;
        p.b = elem("b", &self.b)?;
        p.c = elem("c", &self.c)?;
        Ok(p)
    }

    pub fn from_profile(p: &InvariantProfile) -> Self {
        let e = |x: &Option<CohElement>| x.as_ref().map(ElementJson::from_element);
        ProfileJson {
            family: p.family.label().to_string(),
            n: if p.family.fixed_rank().is_some() { None } else { p.rank },
            ind_a: p.ind_a,
            witt_index: p.witt_index,
            r: p.r,
            discriminant_trivial: p.discriminant_trivial,
            tits_class_order: p.tits_class_order,
            tits_class: e(&p.tits_class),
            f3: e(&p.f3),
            f5: e(&p.f5),
            g3: e(&p.g3),
            a: e(&p.a),
            b: e(&p.b),
            c: e(&p.c),
            j3: p.j3,
            table_row: p.table_row,
        }
    }
}

pub fn parse_profile(text: &str) -> anyhow::Result<InvariantProfile> {
    let pj: ProfileJson = serde_json::from_str(text)?;
    pj.to_profile()
}

pub fn decision_json(d: &Decision) -> Value {
    let mut out = serde_json::Map::new();
    if let Some(p) = d.prime {
        out.insert("prime".into(), json!(p));
    }
    out.insert("verdict".into(), json!(d.verdict.as_str()));
    out.insert("criterion".into(), json!(d.criterion));
    out.insert("citations".into(), json!(d.citations));
    if let Some(n) = &d.note {
        out.insert("note".into(), json!(n));
    }
    if !d.per_prime.is_empty() {
        out.insert(
            "per_prime".into(),
            Value::Array(d.per_prime.iter().map(decision_json).collect()),
        );
    }
    Value::Object(out)
}

fn conditions_json(v: &[Condition]) -> Value {
    Value::Array(v.iter().map(|c| json!(c.to_string())).collect())
}

pub fn resolution_json(r: &Resolution) -> Value {
    match r {
        Resolution::Determined { index, row, implied } => json!({
            "result": "determined",
            "index": index_json(index),
            "row": row,
            "implied": conditions_json(implied),
        }),
        Resolution::Underdetermined { candidates, needs } => json!({
            "result": "underdetermined",
            "candidates": candidates.iter().map(index_json).collect::<Vec<_>>(),
            "needs": needs.iter().map(|s| s.name()).collect::<Vec<_>>(),
        }),
    }
}

pub fn constraints_json(cs: &ConstraintSet) -> Value {
    json!({
        "family": cs.family.label(),
        "rank": cs.rank,
        "prime": cs.p,
        "variants": cs.variants.iter().map(|v| conditions_json(v)).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
