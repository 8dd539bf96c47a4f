//! Parameter tables over ranges of designed distance.

use serde::Serialize;

use crate::error::Result;
use crate::formulas::Source;
use crate::gf::{build_field, generator_poly, min_distance_search};
use crate::params::evaluate;
use crate::qadic::CodeIndex;

/// Reference tables shipped with the crate, as CSV with header
/// `q,m,delta_lo,delta_hi,n,k,d_B,d`.
pub const TABLE2_CSV: &str = include_str!("../fixtures/table2.csv");
pub const TABLE3_CSV: &str = include_str!("../fixtures/table3.csv");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub q: u64,
    pub m: u32,
    pub delta_lo: u64,
    pub delta_hi: u64,
    pub n: u64,
    pub k: u64,
    #[serde(rename = "d_B")]
    pub d_b: u64,
    pub d: Option<u64>,
    pub source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    /// Merge consecutive designed distances with equal `(k, d_B)`.
    pub merge: bool,
    /// Candidate budget for the distance column; `None` leaves it empty.
    pub distance_budget: Option<u64>,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            merge: true,
            distance_budget: None,
        }
    }
}

/// Narrow-sense rows for `delta` in `[lo, hi]`; an empty range gives no rows.
pub fn generate(idx: &CodeIndex, lo: u64, hi: u64, opts: TableOptions) -> Result<Vec<TableRow>> {
    let mut rows: Vec<TableRow> = Vec::new();
    for delta in lo..=hi {
        let r = evaluate(delta, 1, idx)?;
        if let Some(last) = rows.last_mut() {
            if opts.merge && last.k == r.dimension && last.d_b == r.bose {
                last.delta_hi = delta;
                if last.source != r.source {
                    last.source = Source::Hybrid;
                }
                continue;
            }
        }
        rows.push(TableRow {
            q: idx.q(),
            m: idx.m(),
            delta_lo: delta,
            delta_hi: delta,
            n: idx.n(),
            k: r.dimension,
            d_b: r.bose,
            d: None,
            source: r.source,
        });
    }
    if let Some(budget) = opts.distance_budget {
        fill_distances(&mut rows, idx, budget)?;
    }
    Ok(rows)
}

/// Nested codes with equal dimension coincide, so one search per `k`.
fn fill_distances(rows: &mut [TableRow], idx: &CodeIndex, budget: u64) -> Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    let fs = build_field(idx)?;
    let mut cache: Vec<(u64, Option<u64>)> = Vec::new();
    for row in rows.iter_mut() {
        if let Some((_, d)) = cache.iter().find(|(k, _)| *k == row.k) {
            row.d = *d;
            continue;
        }
        let g = generator_poly(row.delta_lo, 1, &fs)?;
        let d = min_distance_search(&g, &fs, budget).exact;
        cache.push((row.k, d));
        row.d = d;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_m4() {
        let idx = CodeIndex::new(2, 4).unwrap();
        let rows = generate(&idx, 2, 7, TableOptions::default()).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.delta_lo, r.delta_hi, r.k, r.d_b)).collect();
        assert_eq!(got, vec![(2, 3, 11, 3), (4, 5, 7, 5), (6, 7, 5, 7)]);
    }

    #[test]
    fn unmerged_and_empty() {
        let idx = CodeIndex::new(2, 4).unwrap();
        let opts = TableOptions {
            merge: false,
            distance_budget: None,
        };
        assert_eq!(generate(&idx, 2, 7, opts).unwrap().len(), 6);
        assert!(generate(&idx, 5, 4, opts).unwrap().is_empty());
    }

    #[test]
    fn distances_small() {
        let idx = CodeIndex::new(2, 4).unwrap();
        let opts = TableOptions {
            merge: true,
            distance_budget: Some(1 << 20),
        };
        let rows = generate(&idx, 2, 7, opts).unwrap();
        let d: Vec<_> = rows.iter().map(|r| r.d).collect();
        assert_eq!(d, vec![Some(3), Some(5), Some(7)]);
    }
}
