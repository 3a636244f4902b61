//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the test
//! harness so the report is always printed.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use tits_core::catalog::{enumerate_indexes, torsion_primes, Family};
use tits_core::equivalence::{motivic_equivalent, motivic_equivalent_mod_p, tits_algebra_compatible, Verdict};
use tits_core::invariants::{constraints_for_index, index_from_profile, sample_profiles, Resolution};
use tits_core::render::render_text;
use tits_core::{CohElement, CohGroup, InvariantProfile, RuleSet, TitsIndex};

type Check = Result<(), String>;
type Criterion = fn() -> Check;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const MAX_RANK: u32 = 8;
const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn families_and_ranks() -> Vec<(Family, u32)> {
    let mut out = Vec::new();
    for f in Family::ALL {
        match f.fixed_rank() {
            Some(r) => out.push((f, r)),
            None => out.extend((1..=MAX_RANK).filter(|&n| f.resolve_rank(Some(n)).is_ok()).map(|n| (f, n))),
        }
    }
    out
}

/// Every enumerated set for ranks up to 8 and primes up to 7.
fn all_enumerations() -> Vec<(Family, u32, u64, Vec<TitsIndex>)> {
    let mut out = Vec::new();
    for (family, rank) in families_and_ranks() {
        for p in PRIMES {
            if let Ok(all) = enumerate_indexes(family, Some(rank), p) {
                out.push((family, rank, p, all));
            }
        }
    }
    out
}

// ---- criterion 1 -------------------------------------------------------

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn load(dir: &Path, stem: &str) -> Result<Value, String> {
    let text = std::fs::read_to_string(dir.join(format!("{stem}.json"))).map_err(|e| format!("{stem}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("{stem}: {e}"))
}

fn rows(doc: &Value) -> Vec<Value> {
    doc["rows"].as_array().cloned().unwrap_or_default()
}

fn signatures(doc: &Value) -> Vec<i64> {
    rows(doc).iter().filter_map(|r| r["signature"].as_i64()).collect()
}

fn ind_a_column(doc: &Value) -> Vec<String> {
    rows(doc).iter().map(|r| r["ind_A"].as_str().unwrap_or("-").to_string()).collect()
}

fn yes_count(doc: &Value, p: u64) -> usize {
    rows(doc).iter().filter(|r| r["occurs"][p.to_string()] == Value::Bool(true)).count()
}

fn table_reproduction() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_tits"))
        .args(["tables", "--out"])
        .arg(dir.path())
        .env_remove("TITS_RULES")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "tables exited with {:?}", out.status.code());
    for entry in std::fs::read_dir(golden_dir()).map_err(|e| e.to_string())? {
        let name = entry.map_err(|e| e.to_string())?.file_name();
        let want = std::fs::read(golden_dir().join(&name)).map_err(|e| e.to_string())?;
        let got = std::fs::read(dir.path().join(&name)).map_err(|e| format!("{name:?}: {e}"))?;
        ensure!(want == got, "{name:?} differs from the golden copy");
    }
    let d = dir.path();

    let t1 = load(d, "table_1")?;
    let expect = [
        ("B_n, C_n, D_n (n != 4)", vec![2]),
        ("G_2", vec![2]),
        ("D_4, E_7", vec![2, 3]),
        ("F_4", vec![2, 3]),
        ("E_6", vec![2, 3]),
        ("E_8", vec![2, 3, 5]),
    ];
    for (ty, primes) in expect {
        let row = rows(&t1).into_iter().find(|r| r["type"] == ty).ok_or(format!("Table 1 lacks {ty}"))?;
        ensure!(row["primes"] == serde_json::json!(primes), "Table 1 {ty}: {}", row["primes"]);
    }
    let a_row = rows(&t1).into_iter().find(|r| r["type"] == "A_n").ok_or("Table 1 lacks A_n")?;
    for n in 1..=8u64 {
        let mut want: Vec<u64> = vec![2];
        want.extend((3..=n + 1).filter(|q| (n + 1) % q == 0 && (2..*q).all(|k| q % k != 0)));
        ensure!(a_row["samples"][format!("A{n}")] == serde_json::json!(want), "Table 1 A{n}");
    }

    let t4 = load(d, "table_4")?;
    ensure!(rows(&t4).len() == 3, "Table 4 rows");
    ensure!(signatures(&t4) == [4, -20, -52], "Table 4 signatures {:?}", signatures(&t4));
    ensure!(
        rows(&t4).iter().all(|r| r["conditions"].as_object().is_some_and(|m| !m.is_empty())),
        "Table 4 conditions missing"
    );

    let oe6 = load(d, "table_oE6")?;
    ensure!(rows(&oe6).len() == 4, "Table oE6 rows");
    ensure!(ind_a_column(&oe6) == ["1", "1", "3", "divides 27"], "Table oE6 ind A {:?}", ind_a_column(&oe6));
    ensure!(yes_count(&oe6, 2) == 2 && yes_count(&oe6, 3) == 3, "Table oE6 index flags");

    let de6 = load(d, "table_dE6")?;
    ensure!(rows(&de6).len() == 5, "Table dE6 rows");
    ensure!(signatures(&de6) == [2, -14, -78], "Table dE6 signatures {:?}", signatures(&de6));

    let t7 = load(d, "table_7")?;
    ensure!(rows(&t7).len() == 8, "Table 7 rows");
    ensure!(
        ind_a_column(&t7) == ["1", "2", "1", "2", "2", "divides 4", "1", "divides 8"],
        "Table 7 ind A {:?}",
        ind_a_column(&t7)
    );
    ensure!(yes_count(&t7, 2) == 7 && yes_count(&t7, 3) == 2, "Table 7 yes-counts");
    ensure!(signatures(&t7) == [7, -5, -25, -133], "Table 7 signatures {:?}", signatures(&t7));

    let e73 = load(d, "table_E7.3")?;
    ensure!(rows(&e73).len() == 2, "Table E7.3 rows");

    let t8 = load(d, "table_8")?;
    ensure!(rows(&t8).len() == 7, "Table 8 rows");
    ensure!(
        (yes_count(&t8, 2), yes_count(&t8, 3), yes_count(&t8, 5)) == (6, 3, 2),
        "Table 8 yes-counts"
    );
    ensure!(signatures(&t8) == [8, -24, -248], "Table 8 signatures {:?}", signatures(&t8));

    let j6 = load(d, "table_J3_E6")?;
    let cols = j6["columns"].as_array().cloned().unwrap_or_default();
    ensure!(cols.len() == 5, "J3 (1E6) has {} columns", cols.len());
    ensure!(cols[4]["ind_A"] == "9 or 27", "J3 (1E6) last column {}", cols[4]["ind_A"]);
    let j8 = load(d, "table_J3_E8")?;
    let keys: Vec<Value> = j8["columns"].as_array().cloned().unwrap_or_default().iter().map(|c| c["r(xi)"].clone()).collect();
    ensure!(
        keys == [serde_json::json!("0"), serde_json::json!("nonzero symbol"), serde_json::json!("otherwise")],
        "J3 (E8) columns {keys:?}"
    );
    Ok(())
}

// ---- criterion 2 -------------------------------------------------------

/// Distinguished vertex sets straight from the classical predicates, by
/// looping over every integer `d` and `r` without using the engine.
fn classical_oracle(family: Family, n: u64, p: u64) -> BTreeSet<BTreeSet<u64>> {
    let is_p_power = |d: u64| {
        let mut x = d;
        while x.is_multiple_of(p) {
            x /= p;
        }
        x == 1
    };
    let chain = |d: u64, r: u64| -> BTreeSet<u64> { (1..=r).map(|i| i * d).collect() };
    let mut out = BTreeSet::new();
    let in_s = match family {
        Family::InnerA => p == 2 || (n + 1).is_multiple_of(p),
        _ => p == 2,
    };
    if !in_s || (family != Family::InnerA && p != 2) {
        // outside the torsion primes only the quasi-split index survives
        out.insert((1..=n).collect());
        return out;
    }
    for d in 1..=2 * n + 2 {
        if !is_p_power(d) {
            continue;
        }
        for r in 0..=n {
            let rd = r * d;
            let set = match family {
                Family::InnerA => {
                    if !(n + 1).is_multiple_of(d) || rd != n + 1 - d {
                        continue;
                    }
                    chain(d, r)
                }
                Family::OuterA => {
                    if !(n + 1).is_multiple_of(d) || 2 * rd > n + 1 {
                        continue;
                    }
                    (1..=r).flat_map(|i| [i * d, n + 1 - i * d]).collect()
                }
                Family::B => {
                    if d != 1 || rd > n {
                        continue;
                    }
                    chain(1, r)
                }
                Family::C => {
                    if !(2 * n).is_multiple_of(d) || rd > n || (d == 1 && rd != n) {
                        continue;
                    }
                    chain(d, r)
                }
                Family::InnerD => {
                    if !(2 * n).is_multiple_of(d) || rd > n || rd == n - 1 {
                        continue;
                    }
                    chain(d, r)
                }
                Family::OuterD => {
                    if !(2 * n).is_multiple_of(d) || rd > n - 1 {
                        continue;
                    }
                    let mut s = chain(d, r);
                    if rd == n - 1 {
                        s.insert(n);
                    }
                    s
                }
                _ => unreachable!(),
            };
            out.insert(set);
        }
    }
    out
}

fn oracle_equivalence() -> Check {
    let cases = [
        (Family::InnerA, &PRIMES[..]),
        (Family::OuterA, &[2][..]),
        (Family::B, &[2][..]),
        (Family::C, &[2][..]),
        (Family::InnerD, &[2][..]),
        (Family::OuterD, &[2][..]),
    ];
    let mut checked = 0;
    for (family, primes) in cases {
        for n in (1..=MAX_RANK).filter(|&n| family.resolve_rank(Some(n)).is_ok()) {
            for &p in primes {
                let engine: BTreeSet<BTreeSet<u64>> = enumerate_indexes(family, Some(n), p)
                    .map_err(|e| format!("{family}{n} p={p}: {e}"))?
                    .iter()
                    .map(|i| i.distinguished_vertices().into_iter().map(u64::from).collect())
                    .collect();
                let oracle = classical_oracle(family, n as u64, p);
                ensure!(engine == oracle, "{family}{n} p={p}: engine {engine:?} oracle {oracle:?}");
                checked += 1;
            }
        }
    }
    ensure!(checked > 40, "only {checked} cases compared");
    Ok(())
}

// ---- criterion 3 -------------------------------------------------------

fn dichotomy() -> Check {
    for (family, p) in [(Family::G2, 2), (Family::TrialityD4, 3), (Family::F4, 3), (Family::E8, 5)] {
        let rank = family.fixed_rank().unwrap();
        let action = family.action(rank).map_err(|e| e.to_string())?;
        let got = enumerate_indexes(family, None, p).map_err(|e| e.to_string())?;
        let want = [TitsIndex::quasi_split(action.clone()), TitsIndex::anisotropic(action)];
        ensure!(got.len() == 2 && want.iter().all(|w| got.contains(w)), "({family}, {p}) gives {} indexes", got.len());
    }
    Ok(())
}

// ---- criterion 4 -------------------------------------------------------

fn partial_order() -> Check {
    let leq = |a: &TitsIndex, b: &TitsIndex| TitsIndex::base_change_leq(a, b).unwrap_or(false);
    for (family, rank, p, all) in all_enumerations() {
        let ctx = format!("{family}{rank} p={p}");
        for a in &all {
            ensure!(leq(a, a), "{ctx}: not reflexive");
            for b in &all {
                if leq(a, b) && leq(b, a) {
                    ensure!(a == b, "{ctx}: not antisymmetric");
                }
                if leq(a, b) && a != b {
                    ensure!(a.split_rank() < b.split_rank(), "{ctx}: split rank is not a grading");
                }
                for c in &all {
                    if leq(a, b) && leq(b, c) {
                        ensure!(leq(a, c), "{ctx}: not transitive");
                    }
                }
            }
        }
        let maxima: Vec<&TitsIndex> = all.iter().filter(|a| all.iter().all(|b| leq(b, a))).collect();
        ensure!(maxima.len() == 1 && maxima[0].is_quasi_split(), "{ctx}: no unique quasi-split maximum");
    }
    Ok(())
}

// ---- criterion 5 -------------------------------------------------------

fn cyclic(m: u64, c: i64) -> CohElement {
    CohElement::new(CohGroup::cyclic(m), &[c], true, false).unwrap()
}

fn equivalence_criteria() -> Check {
    let f4 = |g3: i64| {
        let mut p = InvariantProfile::new(Family::F4);
        p.f3 = Some(cyclic(2, 1));
        p.f5 = Some(cyclic(2, 1));
        p.g3 = Some(cyclic(3, g3));
        p
    };
    let (g, h) = (f4(1), f4(-1));
    for p in PRIMES {
        let d = motivic_equivalent_mod_p(&g, &h, p).map_err(|e| e.to_string())?;
        ensure!(d.verdict == Verdict::Equivalent, "F4 example mod {p}: {}", d.verdict.as_str());
    }
    ensure!(
        motivic_equivalent(&g, &h).map_err(|e| e.to_string())?.verdict == Verdict::Equivalent,
        "F4 example over all primes"
    );

    let plane = CohGroup::with_orders(&[3, 3]).unwrap();
    let e7 = |coords: [i64; 2]| {
        let mut p = InvariantProfile::new(Family::E7);
        p.b = Some(CohElement::new(plane.clone(), &coords, true, false).unwrap());
        p
    };
    let vectors: Vec<[i64; 2]> = (0..3).flat_map(|x| (0..3).map(move |y| [x, y])).collect();
    for &u in &vectors {
        let neg = [-u[0], -u[1]];
        let d = motivic_equivalent_mod_p(&e7(u), &e7(neg), 3).map_err(|e| e.to_string())?;
        ensure!(d.verdict == Verdict::Equivalent, "E7 b={u:?} against -b");
        for &v in &vectors {
            let same_line = (1..3).any(|k| (k * u[0] - v[0]).rem_euclid(3) == 0 && (k * u[1] - v[1]).rem_euclid(3) == 0)
                || (u == [0, 0] && v == [0, 0]);
            if !same_line {
                let d = motivic_equivalent_mod_p(&e7(u), &e7(v), 3).map_err(|e| e.to_string())?;
                ensure!(d.verdict == Verdict::NotEquivalent, "E7 b={u:?} against {v:?}");
            }
        }
    }

    let mut judged = 0;
    for (family, rank, p, all) in all_enumerations() {
        let grid: Vec<InvariantProfile> = all
            .iter()
            .flat_map(|i| constraints_for_index(i, p).map(|cs| sample_profiles(&cs)).unwrap_or_default())
            .collect();
        for a in &grid {
            for b in &grid {
                let Ok(d) = motivic_equivalent_mod_p(a, b, p) else { continue };
                if d.verdict == Verdict::Equivalent {
                    judged += 1;
                    ensure!(
                        tits_algebra_compatible(a, b, p).unwrap_or(false),
                        "{family}{rank} p={p}: equivalent pair fails the Tits algebra test"
                    );
                }
            }
        }
    }
    ensure!(judged > 0, "no grid pair judged equivalent");
    Ok(())
}

// ---- criterion 6 -------------------------------------------------------

fn profile_round_trip() -> Check {
    for family in [Family::F4, Family::InnerE6, Family::OuterE6, Family::E7, Family::E8] {
        let rank = family.fixed_rank().unwrap();
        for p in torsion_primes(family.type_label(), rank) {
            if RuleSet::check_prime(family, p).is_err() {
                continue;
            }
            for index in enumerate_indexes(family, None, p).map_err(|e| e.to_string())? {
                let cs = constraints_for_index(&index, p).map_err(|e| format!("{family} p={p}: {e}"))?;
                let samples = sample_profiles(&cs);
                ensure!(!samples.is_empty(), "{family} p={p}: no profile for {:?}", index.distinguished());
                for prof in samples {
                    let text = tits::json::pretty(&tits::json::ProfileJson::from_profile(&prof));
                    let back = tits::json::parse_profile(&text).map_err(|e| e.to_string())?;
                    match index_from_profile(&back, p) {
                        Ok(Resolution::Determined { index: got, .. }) if got == index => {}
                        other => return Err(format!("{family} p={p} {:?}: {other:?}", index.distinguished())),
                    }
                }
            }
        }
    }
    Ok(())
}

// ---- criterion 7 -------------------------------------------------------

fn renderer() -> Check {
    for (family, rank, p, all) in all_enumerations() {
        let pictures: BTreeSet<String> = all.iter().map(render_text).collect();
        ensure!(pictures.len() == all.len(), "{family}{rank} p={p}: render_text collides");
    }
    let runs: Vec<tempfile::TempDir> = (0..2).map(|_| tempfile::tempdir().unwrap()).collect();
    for dir in &runs {
        let ok = Command::new(env!("CARGO_BIN_EXE_tits"))
            .args(["tables", "--out"])
            .arg(dir.path())
            .env_remove("TITS_RULES")
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(ok.status.success(), "tables failed");
    }
    for entry in std::fs::read_dir(runs[0].path()).map_err(|e| e.to_string())? {
        let name = entry.map_err(|e| e.to_string())?.file_name();
        let a = std::fs::read(runs[0].path().join(&name)).map_err(|e| e.to_string())?;
        let b = std::fs::read(runs[1].path().join(&name)).map_err(|e| e.to_string())?;
        ensure!(a == b, "{name:?} differs between runs");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("table reproduction", table_reproduction),
        ("classical enumeration against brute force", oracle_equivalence),
        ("quasi-split or anisotropic dichotomy", dichotomy),
        ("partial order and grading", partial_order),
        ("equivalence criteria", equivalence_criteria),
        ("profile round trip", profile_round_trip),
        ("renderer injectivity and stability", renderer),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name}", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
