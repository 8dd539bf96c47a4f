//! Sweep checks of the closed forms against enumeration and explicit
//! construction. Each suite counts checks and keeps the first mismatch.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::cosets::{
    classify_a, classify_b, coset_of, coset_size_thm1, is_leader, member_a, member_b,
    oracle_dimension_run, CosetUnion,
};
use crate::error::{Error, Result};
use crate::formulas::{
    bose_distance, bose_distance_nonnarrow, class_size, closed_form_special, delta_profile,
    dimension, dimension_nonnarrow, f_even, f_odd, g_even, h_count, lemma_sum_n,
    lemma_sum_n_direct, lemma_sum_t, lemma_sum_t_direct, mu, t_set, tau, Parity,
};
use crate::gf::{build_field, generator_poly, minimal_poly, parity_check_poly, Poly};
use crate::params::evaluate;
use crate::qadic::{count_nondiv, CodeIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Formulas,
    Partitions,
    Lemmas,
    Codes,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub q: u64,
    pub m: u32,
    pub input: String,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} m={} {}: expected {}, got {}",
            self.q, self.m, self.input, self.expected, self.got
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

struct Tally<'a> {
    idx: &'a CodeIndex,
    report: SuiteReport,
}

impl<'a> Tally<'a> {
    fn new(suite: &'static str, idx: &'a CodeIndex) -> Self {
        Tally {
            idx,
            report: SuiteReport {
                suite,
                checked: 0,
                failed: 0,
                first_failure: None,
            },
        }
    }

    fn check<T: PartialEq + fmt::Debug>(&mut self, input: impl FnOnce() -> String, expected: T, got: T) {
        self.report.checked += 1;
        if expected != got {
            self.report.failed += 1;
            if self.report.first_failure.is_none() {
                self.report.first_failure = Some(Counterexample {
                    q: self.idx.q(),
                    m: self.idx.m(),
                    input: input(),
                    expected: format!("{expected:?}"),
                    got: format!("{got:?}"),
                });
            }
        }
    }

    fn done(self) -> SuiteReport {
        self.report
    }
}

/// Runs every suite selected by `level`.
pub fn run(idx: &CodeIndex, level: Level) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    let all = level == Level::All;
    if all || level == Level::Formulas {
        out.push(dimension_suite(idx)?);
        out.push(bose_suite(idx)?);
        out.push(nonnarrow_suite(idx)?);
        out.push(cardinality_suite(idx)?);
        out.push(special_suite(idx)?);
        out.push(assertion_suite(idx)?);
    }
    if all || level == Level::Partitions {
        out.push(partition_suite(idx)?);
        out.push(count_suite(idx)?);
        out.push(coset_size_suite(idx)?);
        out.push(small_leader_suite(idx)?);
    }
    if all || level == Level::Lemmas {
        out.push(lemma_suite(idx.q())?);
    }
    if all || level == Level::Codes {
        out.push(construction_suite(idx)?);
    }
    Ok(out)
}

fn require_closed_form_scale(idx: &CodeIndex) -> Result<()> {
    if idx.m() < 4 {
        return Err(Error::Domain(format!(
            "formula suites need m >= 4, got m = {}",
            idx.m()
        )));
    }
    Ok(())
}

fn in_s(a: u64, idx: &CodeIndex) -> bool {
    a % idx.q() != 0 && !is_leader(a, idx)
}

/// Membership in H straight from the definition.
fn in_h_def(a: u64, idx: &CodeIndex) -> Result<bool> {
    Ok(idx.is_even() && is_leader(a, idx) && coset_of(a, idx)?.size == idx.m() / 2)
}

/// `prefix[x] = |[1, x) ∩ set|` for `x` in `[0, limit]`.
fn prefix_counts(limit: u64, mut member: impl FnMut(u64) -> Result<bool>) -> Result<Vec<u64>> {
    let mut out = vec![0u64; limit as usize + 1];
    for x in 1..=limit {
        let hit = x > 1 && member(x - 1)?;
        out[x as usize] = out[x as usize - 1] + hit as u64;
    }
    Ok(out)
}

pub fn dimension_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let bound = idx.closed_form_bound();
    let oracle = oracle_dimension_run(1, bound, idx)?;
    let mut t = Tally::new("dimension", idx);
    for delta in 2..=bound {
        let got = dimension(delta, idx)?;
        t.check(|| format!("delta={delta}"), oracle[delta as usize - 2], got);
    }
    Ok(t.done())
}

pub fn bose_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let bound = idx.closed_form_bound();
    let mut t = Tally::new("bose", idx);
    let mut next = 2u64;
    for delta in 2..bound {
        next = next.max(delta);
        while !is_leader(next, idx) {
            next += 1;
        }
        let got = bose_distance(delta, idx)?;
        t.check(|| format!("delta={delta}"), next, got);
    }
    Ok(t.done())
}

/// Offset codes against their own coset unions, for every admissible `(b, delta)`.
pub fn nonnarrow_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let bound = idx.closed_form_bound();
    let q = idx.q();
    let mut t = Tally::new("nonnarrow", idx);
    let mut b = 2u64;
    while b * (q - 1) + 1 + b - 1 <= bound {
        let min_delta = b * (q - 1) + 1;
        let max_delta = bound + 1 - b;
        let mut union = CosetUnion::new(idx)?;
        let mut gap = b;
        for delta in 2..=max_delta {
            union.add(b + delta - 2);
            if delta < min_delta {
                continue;
            }
            let oracle_dim = idx.n() - union.len();
            t.check(
                || format!("b={b} delta={delta} (dimension)"),
                oracle_dim,
                dimension_nonnarrow(delta, b, idx)?,
            );
            if b + delta - 1 < bound {
                gap = gap.max(b + delta - 1);
                while union.contains(gap) {
                    gap += 1;
                }
                t.check(
                    || format!("b={b} delta={delta} (Bose)"),
                    gap - b + 1,
                    bose_distance_nonnarrow(delta, b, idx)?,
                );
            }
        }
        b += 1;
    }
    Ok(t.done())
}

/// The counting functions inside the dimension formula against enumeration.
pub fn cardinality_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let bound = idx.closed_form_bound();
    let s = prefix_counts(bound, |a| Ok(in_s(a, idx)))?;
    let h = prefix_counts(bound, |a| in_h_def(a, idx))?;
    let mut t = Tally::new("cardinality", idx);
    for delta in 2..=bound {
        let d = delta as usize;
        if idx.is_even() {
            t.check(|| format!("f~({delta})"), s[d] + h[d], f_even(delta, idx)?);
            t.check(|| format!("g({delta})"), h[d], g_even(delta, idx)?);
        } else {
            t.check(|| format!("f({delta})"), s[d], f_odd(delta, idx)?);
        }
    }
    Ok(t.done())
}

/// The `delta = a q^(h+k) + b` formulas against the general ones.
pub fn special_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let q = idx.q();
    let h = idx.h() as i64;
    let mut t = Tally::new("special", idx);
    let k_lo = if idx.is_even() { 0 } else { 1 };
    for k in k_lo..=idx.max_k() {
        let b_hi = if idx.is_even() {
            idx.pow((h - k) as u32)
        } else {
            idx.pow((h - k + 1) as u32)
        };
        for a in 1..q {
            for b in 1..=b_hi {
                let delta = a * idx.pow((h + k) as u32) + b;
                if delta == idx.closed_form_bound() {
                    continue;
                }
                let general = evaluate(delta, 1, idx)?;
                let special = closed_form_special(a, k, b, idx)?;
                t.check(
                    || format!("a={a} k={k} b={b} (delta={delta})"),
                    (general.dimension, general.bose),
                    (special.dimension, special.bose),
                );
            }
        }
    }
    Ok(t.done())
}

/// Interval counts that build up the dimension formula, above `q^(m-h)`.
pub fn assertion_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let bound = idx.closed_form_bound();
    let q = idx.q();
    let s = prefix_counts(bound, |a| Ok(in_s(a, idx)))?;
    let hs = prefix_counts(bound, |a| in_h_def(a, idx))?;
    // |[lo, hi] ∩ set| from a prefix table, `hi` inclusive.
    let between = |p: &[u64], lo: u64, hi: u64| {
        if lo > hi {
            0
        } else {
            p[hi as usize + 1] - p[lo as usize]
        }
    };
    let h = idx.h() as i64;
    let mut t = Tally::new("assertions", idx);
    for delta in idx.pow(idx.m() - idx.h()) + 1..=bound {
        let p = delta_profile(delta, idx)?;
        let k = p.k_delta.expect("k_delta above q^(m-h)");
        let d = &p.dim_digits;
        let start = idx.pow((h + k) as u32);
        if idx.is_even() {
            let lo = d.window(h - k, h + k, 0);
            let both = |x: u64, y: u64| between(&s, x, y) + between(&hs, x, y);
            t.check(
                || format!("delta={delta} tail of S ∪ H"),
                both(lo, delta - 1),
                count_nondiv(mu(&p, idx)? + 1, q),
            );
            let hlo = d.window(h, h + k, 0);
            t.check(
                || format!("delta={delta} tail of H"),
                between(&hs, hlo, delta - 1),
                tau(&p, idx)?,
            );
            let mut sum = 0;
            for i in -k..=k {
                sum += t_set(&p, i, idx)?.sum_scaled(2 * i);
            }
            t.check(|| format!("delta={delta} body of S ∪ H"), both(start, lo.max(1) - 1), sum);
            t.check(
                || format!("delta={delta} body of H"),
                between(&hs, start, hlo.max(1) - 1),
                count_nondiv(d.window(h, h + k, h), q) - count_nondiv(idx.pow(k as u32), q),
            );
        } else {
            let lo = d.window(h - k + 1, h + k, 0);
            t.check(
                || format!("delta={delta} tail of S"),
                between(&s, lo, delta - 1),
                count_nondiv(mu(&p, idx)? + 1, q),
            );
            let mut sum = 0;
            for i in -k + 1..=k {
                sum += t_set(&p, i, idx)?.sum_scaled(2 * i - 1);
            }
            t.check(|| format!("delta={delta} body of S"), between(&s, start, lo.max(1) - 1), sum);
        }
    }
    Ok(t.done())
}

/// Each slice `[q^(h+k), q^(h+k+1))` of S (odd m) or S ∪ H (even m) splits
/// into the classes, each element in exactly one; class sizes are checked
/// against their closed forms on the way.
pub fn partition_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let h = idx.h() as i64;
    let even = idx.is_even();
    let mut t = Tally::new("partitions", idx);
    let k_lo = if even { 0 } else { 1 };
    for k in k_lo..=idx.max_k() {
        let i_lo = if even { -k } else { -k + 1 };
        let mut sizes = vec![0u64; (k - i_lo + 1) as usize];
        for a in idx.pow((h + k) as u32)..idx.pow((h + k + 1) as u32) {
            let expected = in_s(a, idx) || in_h_def(a, idx)?;
            let class = if even {
                classify_b(a, k, idx)?
            } else {
                classify_a(a, k, idx)?
            };
            let mut hits = 0;
            for i in i_lo..=k {
                let hit = if even {
                    member_b(a, k, i, idx)?
                } else {
                    member_a(a, k, i, idx)?
                };
                hits += hit as u32;
            }
            t.check(|| format!("k={k} a={a} (member)"), expected, class.is_some());
            t.check(
                || format!("k={k} a={a} (classes containing a)"),
                class.is_some() as u32,
                hits,
            );
            if let Some(i) = class {
                sizes[(i - i_lo) as usize] += 1;
            }
        }
        let parity = if even { Parity::Even } else { Parity::Odd };
        for i in i_lo..=k {
            let closed = class_size(k, i, parity, idx.q())?;
            t.check(
                || format!("k={k} i={i} (class size)"),
                sizes[(i - i_lo) as usize],
                closed,
            );
        }
    }
    Ok(t.done())
}

/// Elements of H per slice, even m.
pub fn count_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let mut t = Tally::new("counts", idx);
    if !idx.is_even() {
        return Ok(t.done());
    }
    let h = idx.h();
    for k in 1..=idx.max_k() {
        let lo = idx.pow(h + k as u32);
        let hi = idx.pow(h + k as u32 + 1);
        let mut count = 0;
        for a in lo..hi {
            count += in_h_def(a, idx)? as u64;
        }
        t.check(|| format!("k={k} (|H| in slice)"), count, h_count(k, idx.q()));
    }
    Ok(t.done())
}

/// Coset sizes from the short formula against orbit enumeration.
pub fn coset_size_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    let mut t = Tally::new("coset sizes", idx);
    let top = idx.pow(idx.m() - idx.m() / 3).min(idx.n());
    for a in 1..top {
        t.check(
            || format!("a={a}"),
            coset_of(a, idx)?.size,
            coset_size_thm1(a, idx)?,
        );
    }
    Ok(t.done())
}

/// Leaders are prime to q, and below the small-leader bound every integer
/// prime to q leads its coset.
pub fn small_leader_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    let mut t = Tally::new("small leaders", idx);
    let q = idx.q();
    let bound = if idx.is_even() {
        2 * idx.pow(idx.h())
    } else {
        idx.pow(idx.h() + 1)
    };
    for a in 1..idx.n() {
        let leader = is_leader(a, idx);
        if leader {
            t.check(|| format!("a={a} (leader prime to q)"), true, a % q != 0);
        }
        if a <= bound {
            t.check(|| format!("a={a} (small leader)"), a % q != 0, leader);
        }
    }
    Ok(t.done())
}

/// Closed forms of the two summation lemmas against direct summation,
/// `k <= 4`, `a` in `[1, q]`; `k` stops early when the sums get large.
pub fn lemma_suite(q: u64) -> Result<SuiteReport> {
    let idx = CodeIndex::new(q, 1)?;
    let mut t = Tally::new("lemmas", &idx);
    const TERMS: u64 = 1 << 24;
    let fits = |k: i64| (q as u128).pow(2 * k as u32 + 1) <= TERMS as u128;
    for k in 0..=4u32 {
        if !fits(k as i64) {
            break;
        }
        t.check(|| format!("sum N(t+1), k={k}"), lemma_sum_n_direct(k, q), lemma_sum_n(k, q));
    }
    for k in 1..=4i64 {
        if !fits(k) {
            break;
        }
        for a in 1..=q {
            for (parity, i_lo) in [(Parity::Odd, -k + 1), (Parity::Even, -k)] {
                for i in i_lo..=k {
                    t.check(
                        || format!("sum over T, k={k} a={a} i={i} {parity:?}"),
                        lemma_sum_t_direct(k, a, i, parity, q)?,
                        lemma_sum_t(k, a, i, parity, q)?,
                    );
                }
            }
        }
    }
    Ok(t.done())
}

/// Builds `g(x)` one minimal polynomial at a time across the closed-form
/// range, checking `deg g = n - k`, `g h = x^n - 1` for each distinct code
/// and agreement with the direct generator at the end.
pub fn construction_suite(idx: &CodeIndex) -> Result<SuiteReport> {
    require_closed_form_scale(idx)?;
    let fs = build_field(idx)?;
    let bound = idx.closed_form_bound().min(idx.n());
    let mut t = Tally::new("construction", idx);
    let mut g = Poly::one();
    let mut seen = HashSet::new();
    let mut last_checked = None;
    for delta in 2..=bound {
        let a = delta - 1;
        let leader = coset_of(a, idx)?.leader;
        if seen.insert(leader) {
            g = g.mul(&minimal_poly(leader, &fs)?, &fs.base);
        }
        let deg = g.degree().unwrap_or(0) as u64;
        let k = dimension(delta, idx)?;
        t.check(|| format!("delta={delta} (deg g)"), idx.n() - k, deg);
        if last_checked != Some(deg) {
            last_checked = Some(deg);
            let ok = parity_check_poly(&g, &fs).is_ok();
            t.check(|| format!("delta={delta} (g h = x^n - 1)"), true, ok);
        }
    }
    let direct = generator_poly(bound, 1, &fs)?;
    t.check(|| format!("delta={bound} (direct generator)"), direct, g);
    Ok(t.done())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(q: u64, m: u32) -> CodeIndex {
        CodeIndex::new(q, m).unwrap()
    }

    #[test]
    fn all_suites_pass_small() {
        for (q, m) in [(2, 4), (2, 5), (3, 4), (2, 7)] {
            for r in run(&idx(q, m), Level::All).unwrap() {
                assert!(r.passed(), "{} failed: {:?}", r.suite, r.first_failure);
                assert!(r.checked > 0 || r.suite == "counts", "{} checked nothing", r.suite);
            }
        }
    }

    #[test]
    fn partitions_even_m4() {
        let r = partition_suite(&idx(2, 4)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn lemmas_q5() {
        let r = lemma_suite(5).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure);
        assert!(r.checked > 100);
    }

    #[test]
    fn tally_keeps_first_failure() {
        let i = idx(2, 4);
        let mut t = Tally::new("x", &i);
        t.check(|| "one".into(), 1, 1);
        t.check(|| "two".into(), 1, 2);
        t.check(|| "three".into(), 1, 3);
        let r = t.done();
        assert_eq!((r.checked, r.failed), (3, 2));
        assert_eq!(r.first_failure.unwrap().input, "two");
    }

    #[test]
    fn small_m_rejected() {
        assert!(run(&idx(2, 3), Level::Formulas).is_err());
        assert!(run(&idx(2, 3), Level::Lemmas).is_ok());
    }
}
