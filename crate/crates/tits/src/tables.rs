//! Golden table documents: one JSON file per classification table, plus a
//! text file of rendered diagrams.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde_json::{json, Map, Value};

use tits_core::catalog::{torsion_primes, FamilyTable};
use tits_core::invariants::{Condition, Slot};
use tits_core::render::render_text;
use tits_core::{Family, RuleSet, TitsIndex, TypeLabel};

/// `(file stem, document)` in output order.
pub fn generate(rules: &RuleSet) -> anyhow::Result<Vec<(String, Value)>> {
    let mut out = vec![("table_1".to_string(), table_1())];
    for (stem, family) in [
        ("table_4", Family::F4),
        ("table_oE6", Family::InnerE6),
        ("table_dE6", Family::OuterE6),
        ("table_7", Family::E7),
        ("table_8", Family::E8),
    ] {
        out.push((stem.to_string(), family_table(rules, family)?));
    }
    out.push(("table_E7.3".to_string(), single_prime_table(rules, Family::E7, 3, "Table E7.3")?));
    out.push(("table_J3_E6".to_string(), j3_table(rules, Family::InnerE6)?));
    out.push(("table_J3_E8".to_string(), j3_table(rules, Family::E8)?));
    Ok(out)
}

fn primes_text(ps: &[u64]) -> String {
    let s: Vec<String> = ps.iter().map(u64::to_string).collect();
    match s.len() {
        1 => s[0].clone(),
        2 => format!("{} and {}", s[0], s[1]),
        _ => format!("{}, and {}", s[..s.len() - 1].join(", "), s[s.len() - 1]),
    }
}

fn table_1() -> Value {
    let a_samples: Map<String, Value> = (1..=8)
        .map(|n| (format!("A{n}"), json!(torsion_primes(TypeLabel::A, n))))
        .collect();
    let fixed = |label: &str, exponent: &str, reps: &[(TypeLabel, u32)]| {
        let primes = torsion_primes(reps[0].0, reps[0].1);
        debug_assert!(reps.iter().all(|&(t, n)| torsion_primes(t, n) == primes));
        json!({
            "type": label,
            "center_exponent": exponent,
            "primes": primes,
            "text": primes_text(&primes),
        })
    };
    json!({
        "table": "Table 1",
        "title": "torsion primes S(G)",
        "rows": [
            {
                "type": "A_n",
                "center_exponent": "n+1",
                "primes": "2 and the prime divisors of n+1",
                "samples": a_samples,
            },
            fixed("B_n, C_n, D_n (n != 4)", "2", &[(TypeLabel::B, 3), (TypeLabel::C, 5), (TypeLabel::D, 7)]),
            fixed("G_2", "1", &[(TypeLabel::G, 2)]),
            fixed("D_4, E_7", "2", &[(TypeLabel::D, 4), (TypeLabel::E, 7)]),
            fixed("F_4", "1", &[(TypeLabel::F, 4)]),
            fixed("E_6", "3", &[(TypeLabel::E, 6)]),
            fixed("E_8", "1", &[(TypeLabel::E, 8)]),
        ],
    })
}

fn row_index(family: Family, table: &FamilyTable, k: usize) -> anyhow::Result<TitsIndex> {
    let rank = family.fixed_rank().expect("exceptional family");
    Ok(TitsIndex::new(family.action(rank)?, table.rows[k - 1].distinguished.clone()))
}

fn shape_name(index: &TitsIndex) -> Value {
    if index.is_anisotropic() {
        json!("anisotropic")
    } else if index.is_quasi_split() {
        json!(if index.action().order() == 1 { "split" } else { "quasi-split" })
    } else {
        json!(index.distinguished())
    }
}

fn conditions_text(v: &[Vec<Condition>]) -> String {
    v.iter()
        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join(" or ")
}

fn family_table(rules: &RuleSet, family: Family) -> anyhow::Result<Value> {
    let table = rules.table(family).context("missing table")?;
    let rank = family.fixed_rank().unwrap();
    let primes = torsion_primes(family.type_label(), rank);
    let mut rows = Vec::new();
    for k in 1..=table.rows.len() {
        let row = &table.rows[k - 1];
        let index = row_index(family, table, k)?;
        let mut occurs = Map::new();
        let mut conditions = Map::new();
        for &p in &primes {
            let yes = row.occurs_at(p);
            occurs.insert(p.to_string(), json!(yes));
            if yes && RuleSet::check_prime(family, p).is_ok() {
                let cs = rules.constraints_for_index(&index, p)?;
                conditions.insert(p.to_string(), json!(conditions_text(&cs.variants)));
            }
        }
        rows.push(json!({
            "row": k,
            "index": shape_name(&index),
            "split_rank": index.split_rank(),
            "ind_A": row.ind_a.as_ref().map(ToString::to_string),
            "occurs": occurs,
            "signature": row.signature,
            "conditions": conditions,
            "numbering_dependent": row.numbering_dependent,
            "picture": render_text(&index),
        }));
    }
    Ok(json!({
        "table": table.source,
        "family": family.label(),
        "rows": rows,
    }))
}

fn single_prime_table(rules: &RuleSet, family: Family, p: u64, name: &str) -> anyhow::Result<Value> {
    let rank = family.fixed_rank().unwrap();
    let mut rows = Vec::new();
    for index in rules.enumerate(family, Some(rank), p)? {
        let cs = rules.constraints_for_index(&index, p)?;
        rows.push(json!({
            "index": shape_name(&index),
            "conditions": conditions_text(&cs.variants),
            "picture": render_text(&index),
        }));
    }
    Ok(json!({ "table": name, "family": family.label(), "prime": p, "rows": rows }))
}

/// Key of the degree-3 class in the `E8` column header.
fn e8_key(conds: &[Condition]) -> &'static str {
    if conds.contains(&Condition::Zero(Slot::B)) {
        "0"
    } else if conds.contains(&Condition::Symbol(Slot::B, true)) {
        "nonzero symbol"
    } else {
        "otherwise"
    }
}

fn j3_table(rules: &RuleSet, family: Family) -> anyhow::Result<Value> {
    let rank = family.fixed_rank().unwrap();
    let mut columns = Vec::new();
    for index in rules.enumerate(family, Some(rank), 3)? {
        let cs = rules.constraints_for_index(&index, 3)?;
        for v in &cs.variants {
            let Some(j3) = v.iter().find_map(|c| match c {
                Condition::J3(a, b) => Some((*a, *b)),
                _ => None,
            }) else {
                continue;
            };
            let mut col = Map::new();
            col.insert("J3".into(), json!([j3.0, j3.1]));
            col.insert("index".into(), shape_name(&index));
            match family {
                Family::E8 => {
                    col.insert("r(xi)".into(), json!(e8_key(v)));
                }
                _ => {
                    let ind = v.iter().find_map(|c| match c {
                        Condition::IndA(i) => Some(i.to_string()),
                        _ => None,
                    });
                    col.insert("ind_A".into(), json!(ind));
                }
            }
            col.insert("picture".into(), json!(render_text(&index)));
            columns.push(Value::Object(col));
        }
    }
    Ok(json!({
        "table": format!("J3 ({})", family.label()),
        "family": family.label(),
        "prime": 3,
        "columns": columns,
    }))
}

/// Every enumerated index of the tabulated families, rendered as text.
pub fn diagrams_text(rules: &RuleSet) -> anyhow::Result<String> {
    let mut s = String::new();
    for family in [Family::F4, Family::InnerE6, Family::OuterE6, Family::E7, Family::E8] {
        let table = rules.table(family).context("missing table")?;
        let _ = writeln!(s, "== {} ({})", table.source, family.label());
        for k in 1..=table.rows.len() {
            let index = row_index(family, table, k)?;
            let _ = writeln!(s, "-- row {k}");
            let _ = writeln!(s, "{}", render_text(&index));
        }
        s.push('\n');
    }
    Ok(s)
}

/// Writes every table into `dir`, returning the file names written.
pub fn write_all(rules: &RuleSet, dir: &Path) -> anyhow::Result<Vec<String>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut names = Vec::new();
    for (stem, doc) in generate(rules)? {
        let name = format!("{stem}.json");
        std::fs::write(dir.join(&name), crate::json::pretty(&doc))?;
        names.push(name);
    }
    std::fs::write(dir.join("diagrams.txt"), diagrams_text(rules)?)?;
    names.push("diagrams.txt".to_string());
    Ok(names)
}
