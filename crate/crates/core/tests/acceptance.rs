//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::collections::HashMap;
use std::io::{self, Write};
use std::time::{Duration, Instant};

use serde::Deserialize;

use bch_params::gf::{build_field, generator_poly, min_distance_search, DEFAULT_BUDGET};
use bch_params::params::evaluate;
use bch_params::table::{generate, TableOptions, TABLE2_CSV, TABLE3_CSV};
use bch_params::verify::{
    assertion_suite, bose_suite, construction_suite, count_suite, dimension_suite, lemma_suite,
    nonnarrow_suite, partition_suite, SuiteReport,
};
use bch_params::CodeIndex;

#[derive(Debug, Clone, Deserialize)]
struct FixtureRow {
    q: u64,
    m: u32,
    delta_lo: u64,
    delta_hi: u64,
    n: u64,
    k: u64,
    #[serde(rename = "d_B")]
    d_b: u64,
    d: Option<u64>,
}

fn fixture(text: &str) -> Vec<FixtureRow> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("fixture parses")
}

fn sweep() -> Vec<CodeIndex> {
    let pairs = (4..=12)
        .map(|m| (2, m))
        .chain((4..=7).map(|m| (3, m)))
        .chain((4..=5).map(|m| (4, m)))
        .chain((4..=5).map(|m| (5, m)));
    pairs.map(|(q, m)| CodeIndex::new(q, m).unwrap()).collect()
}

/// Prints the verdict line and fails the test on a negative verdict.
fn verdict(n: u32, title: &str, failures: &[String], elapsed: Duration, limit: Option<Duration>) {
    let slow = limit.is_some_and(|l| elapsed > l);
    let ok = failures.is_empty() && !slow;
    // Written to the raw handle so the line shows up even when the harness
    // captures test output.
    let mut line = format!(
        "{} criterion {n}: {title} ({} failures, {:.2?})\n",
        if ok { "PASS" } else { "FAIL" },
        failures.len(),
        elapsed
    );
    for f in failures.iter().take(5) {
        line.push_str(&format!("  {f}\n"));
    }
    let _ = io::stdout().lock().write_all(line.as_bytes());
    assert!(failures.is_empty(), "criterion {n}: {}", failures[0]);
    assert!(!slow, "criterion {n}: took {elapsed:?}, limit {limit:?}");
}

fn suite_failures(reports: impl IntoIterator<Item = SuiteReport>) -> Vec<String> {
    reports
        .into_iter()
        .filter_map(|r| {
            let suite = r.suite;
            r.first_failure.map(|c| format!("{suite}: {c}"))
        })
        .collect()
}

/// Every designed distance of every row gives the row's parameters, and the
/// generated (merged) table has a row covering the whole span.
fn table_failures(rows: &[FixtureRow]) -> Vec<String> {
    let mut failures = Vec::new();
    let mut tables = HashMap::new();
    for row in rows {
        let idx = CodeIndex::new(row.q, row.m).unwrap();
        if idx.n() != row.n {
            failures.push(format!("{row:?}: n = {}", idx.n()));
        }
        for delta in row.delta_lo..=row.delta_hi {
            let r = evaluate(delta, 1, &idx).unwrap();
            if (r.n, r.dimension, r.bose) != (row.n, row.k, row.d_b) {
                failures.push(format!(
                    "q={} m={} delta={delta}: expected (n,k,d_B)=({},{},{}), got ({},{},{})",
                    row.q, row.m, row.n, row.k, row.d_b, r.n, r.dimension, r.bose
                ));
            }
        }
        let table = tables.entry((row.q, row.m)).or_insert_with(|| {
            generate(&idx, 2, idx.closed_form_bound(), TableOptions::default()).unwrap()
        });
        let covered = table.iter().any(|t| {
            t.delta_lo <= row.delta_lo && row.delta_hi <= t.delta_hi && (t.k, t.d_b) == (row.k, row.d_b)
        });
        if !covered {
            failures.push(format!("{row:?}: no generated row covers it"));
        }
    }
    failures
}

#[test]
fn criterion_01_binary_table() {
    let start = Instant::now();
    let rows = fixture(TABLE2_CSV);
    assert_eq!(rows.len(), 45);
    assert!(rows.iter().all(|r| r.q == 2 && (4..=8).contains(&r.m)));
    let mut failures = table_failures(&rows);
    // Spot checks straight from the reference table.
    let r = evaluate(19, 1, &CodeIndex::new(2, 7).unwrap()).unwrap();
    if (r.dimension, r.bose) != (71, 19) {
        failures.push(format!("(2,7,19): {r:?}"));
    }
    let r = evaluate(32, 1, &CodeIndex::new(2, 8).unwrap()).unwrap();
    if (r.n, r.dimension, r.bose) != (255, 131, 37) {
        failures.push(format!("(2,8,32): {r:?}"));
    }
    verdict(1, "binary table rows", &failures, start.elapsed(), Some(Duration::from_secs(10)));
}

#[test]
fn criterion_02_nonbinary_table() {
    let start = Instant::now();
    let rows = fixture(TABLE3_CSV);
    assert_eq!(rows.len(), 56);
    let mut failures = table_failures(&rows);
    let r = evaluate(27, 1, &CodeIndex::new(3, 5).unwrap()).unwrap();
    if (r.dimension, r.bose) != (152, 31) {
        failures.push(format!("(3,5,27): {r:?}"));
    }
    let r = evaluate(16, 1, &CodeIndex::new(4, 4).unwrap()).unwrap();
    if (r.dimension, r.bose) != (207, 17) {
        failures.push(format!("(4,4,16): {r:?}"));
    }
    verdict(2, "non-binary table rows", &failures, start.elapsed(), Some(Duration::from_secs(10)));
}

#[test]
fn criterion_03_dimension_sweep() {
    let start = Instant::now();
    let reports: Vec<_> = sweep().iter().map(|i| dimension_suite(i).unwrap()).collect();
    assert!(reports.iter().all(|r| r.checked > 0));
    let failures = suite_failures(reports);
    verdict(3, "dimension vs coset union", &failures, start.elapsed(), Some(Duration::from_secs(300)));
}

#[test]
fn criterion_04_bose_sweep() {
    let start = Instant::now();
    let reports: Vec<_> = sweep().iter().map(|i| bose_suite(i).unwrap()).collect();
    let failures = suite_failures(reports);
    verdict(4, "Bose distance vs smallest leader", &failures, start.elapsed(), Some(Duration::from_secs(300)));
}

#[test]
fn criterion_05_offset_sweep() {
    let start = Instant::now();
    let reports: Vec<_> = sweep().iter().map(|i| nonnarrow_suite(i).unwrap()).collect();
    assert!(reports.iter().all(|r| r.checked > 0));
    let failures = suite_failures(reports);
    verdict(5, "offset codes vs coset union", &failures, start.elapsed(), None);
}

#[test]
fn criterion_06_partitions() {
    let start = Instant::now();
    let reports: Vec<_> = sweep().iter().map(|i| partition_suite(i).unwrap()).collect();
    let failures = suite_failures(reports);
    verdict(6, "slice partitions into classes", &failures, start.elapsed(), None);
}

#[test]
fn criterion_07_counts() {
    let start = Instant::now();
    let mut reports = Vec::new();
    for idx in sweep() {
        reports.push(count_suite(&idx).unwrap());
        // Class sizes are checked inside the partition suite.
        reports.push(partition_suite(&idx).unwrap());
        reports.push(assertion_suite(&idx).unwrap());
    }
    let failures = suite_failures(reports);
    verdict(7, "counting identities", &failures, start.elapsed(), None);
}

#[test]
fn criterion_08_lemmas() {
    let start = Instant::now();
    let reports: Vec<_> = (2..=5).map(|q| lemma_suite(q).unwrap()).collect();
    // k reaches 4 for every q in range.
    assert!(reports.iter().all(|r| r.checked >= 5 + 4 * 2 * 8));
    let failures = suite_failures(reports);
    verdict(8, "summation lemmas", &failures, start.elapsed(), None);
}

#[test]
fn criterion_09_construction() {
    let start = Instant::now();
    let reports: Vec<_> = sweep()
        .iter()
        .filter(|i| i.q() <= 4 && i.n() <= 4095)
        .map(|i| construction_suite(i).unwrap())
        .collect();
    assert_eq!(reports.len(), 15);
    let failures = suite_failures(reports);
    verdict(9, "deg g = n - k and g h = x^n - 1", &failures, start.elapsed(), None);
}

#[test]
fn criterion_10_minimum_distance() {
    let start = Instant::now();
    let mut rows = fixture(TABLE2_CSV);
    rows.extend(fixture(TABLE3_CSV));
    let mut failures = Vec::new();
    let mut exact_rows = 0;
    // Equal dimension means equal code, so search once per (q, m, k).
    let mut seen: HashMap<(u64, u32, u64), Option<u64>> = HashMap::new();
    let mut fields = HashMap::new();
    for row in rows.iter().filter(|r| r.n <= 255) {
        let idx = CodeIndex::new(row.q, row.m).unwrap();
        let fs = fields
            .entry((row.q, row.m))
            .or_insert_with(|| build_field(&idx).unwrap());
        let key = (row.q, row.m, row.k);
        let found = match seen.get(&key) {
            Some(d) => *d,
            None => {
                let g = generator_poly(row.delta_lo, 1, fs).unwrap();
                // Rows the reference could not settle get a smaller budget.
                let budget = if row.d.is_some() { DEFAULT_BUDGET } else { DEFAULT_BUDGET / 4 };
                let report = min_distance_search(&g, fs, budget);
                if report.lower < row.d_b {
                    failures.push(format!("{row:?}: lower bound {} below d_B", report.lower));
                }
                seen.insert(key, report.exact);
                report.exact
            }
        };
        let must_resolve = row.n == 15 || row.n == 31 || (row.q, row.m, row.k) == (3, 4, 56);
        match (row.d, found) {
            (Some(d), Some(x)) => {
                exact_rows += 1;
                if x != d {
                    failures.push(format!("{row:?}: distance {x}"));
                }
            }
            (Some(_), None) if must_resolve => failures.push(format!("{row:?}: not resolved")),
            (Some(_), None) => println!("  unresolved within budget: {row:?}"),
            (None, Some(x)) if x < row.d_b => failures.push(format!("{row:?}: distance {x} < d_B")),
            (None, Some(x)) => println!("  resolved beyond the reference: {row:?} d = {x}"),
            (None, None) => {}
        }
    }
    println!("  {exact_rows} listed distances reproduced exactly");
    verdict(10, "minimum distance of listed codes", &failures, start.elapsed(), None);
}
