//! The `check` subcommand: self-validation of the enumeration and the
//! Brauer-group formulas, plus comparison against the embedded golden tables.

use std::collections::{BTreeMap, BTreeSet};

use delpezzo::brauer::{
    ambient_bad_primes, bad_primes, brauer_group, brauer_via_cokernel, smooth_locus_picard_torsion,
};
use delpezzo::pisystems::{all_pisystems, exhaustive_pisystems, InvariantKey};
use delpezzo::{brauer_table, BrauerResult, Family, RootSystem};
use serde::Serialize;

use crate::render::{table_json, table_rows, TableJson, TableOptions};

pub const GOLDEN_JSON: [(u32, &str); 4] = [
    (1, include_str!("../goldens/degree1.json")),
    (2, include_str!("../goldens/degree2.json")),
    (3, include_str!("../goldens/degree3.json")),
    (4, include_str!("../goldens/degree4.json")),
];

#[derive(Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

pub fn run_checks(oracle_floor: u32) -> CheckReport {
    let mut tables: BTreeMap<u32, Vec<BrauerResult>> = BTreeMap::new();
    for degree in 1..=7 {
        tables.insert(degree, brauer_table(degree).expect("supported degree"));
    }

    let checks = vec![
        formula_agreement(&tables),
        oracle_equality(oracle_floor),
        bad_primes_list(),
        orders_factor_over_bad_primes(&tables),
        golden_tables(&tables),
    ];
    let passed = checks.iter().all(|c| c.passed);
    CheckReport { checks, passed }
}

fn result(name: &str, failures: Vec<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            None
        } else {
            Some(failures.join("; "))
        },
    }
}

/// Every classified system must give the same group along all three routes.
fn formula_agreement(tables: &BTreeMap<u32, Vec<BrauerResult>>) -> CheckResult {
    let mut failures = Vec::new();
    for degree in 1..=7u32 {
        let rs = RootSystem::for_degree(degree).expect("supported degree");
        for cls in all_pisystems(&rs) {
            let a = brauer_group(&rs, &cls.system);
            let b = brauer_via_cokernel(&rs, &cls.system);
            let c = smooth_locus_picard_torsion(&rs, &cls.system);
            match b {
                Ok(b) if a == b && a == c => {}
                Ok(b) => failures.push(format!("degree {degree} {}: {a} vs {b} vs {c}", cls.key)),
                Err(e) => failures.push(format!("degree {degree} {}: {e}", cls.key)),
            }
        }
        // High degrees must come out trivial everywhere.
        if degree >= 5 {
            for row in &tables[&degree] {
                if !row.group.is_trivial() {
                    failures.push(format!("degree {degree} {}: non-trivial group", row.dynkin));
                }
            }
        }
    }
    result("three-formula agreement (degrees 1-7)", failures)
}

/// The subset enumeration and the exhaustive backtracking oracle must see
/// exactly the same invariant keys.
fn oracle_equality(floor: u32) -> CheckResult {
    let floor = floor.clamp(1, 7);
    let mut failures = Vec::new();
    for degree in floor..=7 {
        let rs = RootSystem::for_degree(degree).expect("supported degree");
        let from_subsets: BTreeSet<InvariantKey> =
            all_pisystems(&rs).into_iter().map(|c| c.key).collect();
        let from_oracle: BTreeSet<InvariantKey> = exhaustive_pisystems(&rs, rs.max_rank())
            .into_iter()
            .map(|c| c.key)
            .collect();
        for k in from_subsets.symmetric_difference(&from_oracle) {
            let side = if from_subsets.contains(k) {
                "only in subset enumeration"
            } else {
                "only in oracle"
            };
            failures.push(format!("degree {degree} {k}: {side}"));
        }
    }
    result(
        &format!("enumeration matches exhaustive oracle (degrees {floor}-7)"),
        failures,
    )
}

/// Recomputed bad primes must match the classical list.
fn bad_primes_list() -> CheckResult {
    let mut failures = Vec::new();
    let mut expect = |family: Family, rank: usize, want: &[u64]| {
        let got = bad_primes(family, rank).expect("valid label");
        let want: BTreeSet<u64> = want.iter().copied().collect();
        if got != want {
            failures.push(format!("{family:?}{rank}: {got:?} != {want:?}"));
        }
    };
    for n in 1..=8 {
        expect(Family::A, n, &[]);
    }
    for n in 4..=8 {
        expect(Family::D, n, &[2]);
    }
    expect(Family::E, 6, &[2, 3]);
    expect(Family::E, 7, &[2, 3]);
    expect(Family::E, 8, &[2, 3, 5]);
    result("bad primes match the classical list", failures)
}

fn orders_factor_over_bad_primes(tables: &BTreeMap<u32, Vec<BrauerResult>>) -> CheckResult {
    let mut failures = Vec::new();
    for (&degree, rows) in tables {
        let rs = RootSystem::for_degree(degree).expect("supported degree");
        let bad = ambient_bad_primes(&rs);
        for row in rows {
            for factor in row.group.factors_u64() {
                let mut m = factor;
                for &p in &bad {
                    while m % p == 0 {
                        m /= p;
                    }
                }
                if m != 1 {
                    failures.push(format!(
                        "degree {degree} {}: factor {factor} outside bad primes {bad:?}",
                        row.dynkin
                    ));
                }
            }
        }
    }
    result("group orders factor over ambient bad primes", failures)
}

/// Recompute the default tables and compare them with the embedded goldens,
/// naming the first divergent row per degree.
fn golden_tables(tables: &BTreeMap<u32, Vec<BrauerResult>>) -> CheckResult {
    let mut failures = Vec::new();
    for (degree, golden) in GOLDEN_JSON {
        let expected: TableJson = match serde_json::from_str(golden) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("degree {degree}: golden file unreadable: {e}"));
                continue;
            }
        };
        let computed = table_json(
            degree,
            &table_rows(&tables[&degree], TableOptions::default()),
        );
        if let Some(diff) = diff_tables(&computed, &expected) {
            failures.push(format!("degree {degree}: {diff}"));
        }
    }
    result("golden tables (degrees 1-4)", failures)
}

/// Names the first divergent row, or the length mismatch, or nothing.
fn diff_tables(computed: &TableJson, expected: &TableJson) -> Option<String> {
    if computed.degree != expected.degree {
        return Some("degree field mismatch".into());
    }
    for (i, (c, e)) in computed.rows.iter().zip(&expected.rows).enumerate() {
        if c != e {
            return Some(format!(
                "first divergent row {i}: computed {} {:?}, expected {} {:?}",
                c.type_string, c.group.invariant_factors, e.type_string, e.group.invariant_factors,
            ));
        }
    }
    if computed.rows.len() != expected.rows.len() {
        return Some(format!(
            "{} rows computed, {} expected",
            computed.rows.len(),
            expected.rows.len()
        ));
    }
    None
}

pub fn render_report_text(report: &CheckReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        if c.passed {
            out.push_str(&format!("check: {} ... ok\n", c.name));
        } else {
            out.push_str(&format!(
                "check: {} ... FAILED\n  {}\n",
                c.name,
                c.details.as_deref().unwrap_or("")
            ));
        }
    }
    out.push_str(if report.passed {
        "all checks passed\n"
    } else {
        "validation FAILED\n"
    });
    out
}

pub fn render_report_json(report: &CheckReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialises");
    s.push('\n');
    s
}
