//! Cyclotomic cosets modulo `n = q^m - 1`, the digit-pattern classes used to
//! count non-leaders, and a brute-force oracle for dimension and Bose
//! distance.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qadic::{to_digits, CodeIndex, DigitVector};

/// Largest `n` the set-union oracle will allocate for.
pub const ORACLE_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetRecord {
    pub representative: u64,
    pub leader: u64,
    pub size: u32,
    /// `a, aq, aq^2, ...` in generation order.
    pub elements: Vec<u64>,
}

fn step(x: u64, idx: &CodeIndex) -> u64 {
    (x as u128 * idx.q() as u128 % idx.n() as u128) as u64
}

pub fn coset_of(a: u64, idx: &CodeIndex) -> Result<CosetRecord> {
    if a >= idx.n() {
        return Err(Error::out_of_range("a", a, 0, idx.n() as i128 - 1));
    }
    let mut elements = vec![a];
    let mut x = step(a, idx);
    while x != a {
        elements.push(x);
        x = step(x, idx);
    }
    let leader = *elements.iter().min().expect("coset is never empty");
    Ok(CosetRecord {
        representative: a,
        leader,
        size: elements.len() as u32,
        elements,
    })
}

/// True iff `a` is the smallest element of its coset. Zero counts as a leader.
pub fn is_leader(a: u64, idx: &CodeIndex) -> bool {
    debug_assert!(a < idx.n());
    let mut x = a;
    for _ in 1..idx.m() {
        x = step(x, idx);
        if x < a {
            return false;
        }
    }
    true
}

/// Coset size from the closed form valid below `q^(m - floor(m/3))`.
pub fn coset_size_thm1(a: u64, idx: &CodeIndex) -> Result<u32> {
    let limit = idx.pow(idx.m() - idx.m() / 3);
    if a < 1 || a >= limit {
        return Err(Error::Domain(format!(
            "closed-form coset size needs 1 <= a < {limit}, got {a}"
        )));
    }
    if !idx.is_even() {
        return Ok(idx.m());
    }
    if idx.mul_pow_mod(a, idx.h()) == a {
        Ok(idx.m() / 2)
    } else {
        Ok(idx.m())
    }
}

fn require_even(idx: &CodeIndex, what: &str) -> Result<()> {
    if idx.is_even() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} is only defined for even m")))
    }
}

/// Membership in H: leaders whose coset has size `m/2` (even m only).
pub fn in_h(a: u64, idx: &CodeIndex) -> Result<bool> {
    require_even(idx, "H")?;
    if a < 1 || a >= idx.n() {
        return Err(Error::out_of_range("a", a, 1, idx.n() as i128 - 1));
    }
    if a < idx.closed_form_bound() {
        let by_form = in_h_digit_form(a, idx);
        debug_assert_eq!(by_form, in_h_definition(a, idx), "H forms disagree at a = {a}");
        Ok(by_form)
    } else {
        Ok(in_h_definition(a, idx))
    }
}

/// `V(a) = (0, .., 0, u_k, .., u_0, 0, .., 0, u_k, .., u_0)` with `u_0, u_k > 0`,
/// i.e. `a = u (q^h + 1)` with `q ∤ u` and a non-empty zero block, so
/// `u < q^(h-1)`.
fn in_h_digit_form(a: u64, idx: &CodeIndex) -> bool {
    let qh = idx.pow(idx.h());
    let u = a / qh;
    if u == 0 || u % idx.q() == 0 {
        return false;
    }
    // The zero block between the copies must be non-empty: u < q^(h-1).
    if idx.h() == 0 || u >= idx.pow(idx.h() - 1) {
        return false;
    }
    a == u * (qh + 1)
}

fn in_h_definition(a: u64, idx: &CodeIndex) -> bool {
    a % idx.q() != 0 && is_leader(a, idx) && idx.mul_pow_mod(a, idx.h()) == a
}

fn class_range_check(a: u64, k: i64, idx: &CodeIndex, odd: bool) -> Result<DigitVector> {
    let parity_ok = idx.is_even() != odd;
    if !parity_ok || idx.m() < 4 {
        return Err(Error::Domain(format!(
            "{} classes need {} m >= 4, got m = {}",
            if odd { "A" } else { "B" },
            if odd { "odd" } else { "even" },
            idx.m()
        )));
    }
    if k < idx.min_k() || k > idx.max_k() {
        return Err(Error::out_of_range("k", k, idx.min_k(), idx.max_k()));
    }
    let h = idx.h() as i64;
    let lo = idx.pow((h + k) as u32);
    let hi = idx.pow((h + k + 1) as u32);
    if a < lo || a >= hi {
        return Err(Error::out_of_range("a", a, lo, hi as i128 - 1));
    }
    to_digits(a, idx)
}

/// Literal check of the three defining conditions of `A_k(i)` (odd m).
pub fn member_a(a: u64, k: i64, i: i64, idx: &CodeIndex) -> Result<bool> {
    let d = class_range_check(a, k, idx, true)?;
    if i < -k + 1 || i > k {
        return Err(Error::out_of_range("i", i, -k + 1, k));
    }
    let h = idx.h() as i64;
    Ok(d.digit(h + i) > 0
        && d.digit(0) > 0
        && d.window(0, k + i - 1, 0) <= d.window(h - i + 1, h + k, h - i + 1)
        && (k + i..h + i).all(|l| d.digit(l) == 0))
}

/// Literal check of the defining conditions of `B_k(i)` (even m).
pub fn member_b(a: u64, k: i64, i: i64, idx: &CodeIndex) -> Result<bool> {
    let d = class_range_check(a, k, idx, false)?;
    if i < -k || i > k {
        return Err(Error::out_of_range("i", i, -k, k));
    }
    let h = idx.h() as i64;
    Ok(d.digit(h + i) > 0
        && d.digit(0) > 0
        && d.window(0, k + i, 0) <= d.window(h - i, h + k, h - i)
        && (k + i + 1..h + i).all(|l| d.digit(l) == 0))
}

/// The unique `i` with `a` in `A_k(i)`, or `None`.
pub fn classify_a(a: u64, k: i64, idx: &CodeIndex) -> Result<Option<i64>> {
    let d = class_range_check(a, k, idx, true)?;
    let h = idx.h() as i64;
    let Some(i) = (-k + 1..=k).find(|i| d.digit(h + i) > 0) else {
        return Ok(None);
    };
    Ok(member_a(a, k, i, idx)?.then_some(i))
}

/// The unique `i` with `a` in `B_k(i)`, or `None`.
pub fn classify_b(a: u64, k: i64, idx: &CodeIndex) -> Result<Option<i64>> {
    let d = class_range_check(a, k, idx, false)?;
    let h = idx.h() as i64;
    let Some(i) = (-k..=k).find(|i| d.digit(h + i) > 0) else {
        return Ok(None);
    };
    Ok(member_b(a, k, i, idx)?.then_some(i))
}

/// Integers in `[lo, hi]` that are prime to q but not coset leaders.
pub fn enumerate_s(lo: u64, hi: u64, idx: &CodeIndex) -> Result<Vec<u64>> {
    if lo < 1 || hi >= idx.n() || lo > hi {
        return Err(Error::Domain(format!(
            "enumerate_s needs 1 <= lo <= hi <= {}, got [{lo}, {hi}]",
            idx.n() as i128 - 1
        )));
    }
    Ok((lo..=hi)
        .filter(|a| a % idx.q() != 0 && !is_leader(*a, idx))
        .collect())
}

fn oracle_guard(idx: &CodeIndex) -> Result<()> {
    if idx.n() > ORACLE_LIMIT {
        return Err(Error::DeskScaleExceeded {
            n: idx.n(),
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Incremental union of cosets over a bit set of `[0, n)`.
pub struct CosetUnion<'a> {
    idx: &'a CodeIndex,
    marked: Vec<bool>,
    count: u64,
}

impl<'a> CosetUnion<'a> {
    pub fn new(idx: &'a CodeIndex) -> Result<Self> {
        oracle_guard(idx)?;
        Ok(CosetUnion {
            idx,
            marked: vec![false; idx.n() as usize],
            count: 0,
        })
    }

    /// Adds `C_(a mod n)`.
    pub fn add(&mut self, a: u64) {
        let start = a % self.idx.n();
        if self.marked[start as usize] {
            return;
        }
        let mut x = start;
        loop {
            self.marked[x as usize] = true;
            self.count += 1;
            x = step(x, self.idx);
            if x == start {
                break;
            }
        }
    }

    pub fn contains(&self, a: u64) -> bool {
        self.marked[(a % self.idx.n()) as usize]
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}

fn check_window(delta: u64, b: u64, idx: &CodeIndex) -> Result<()> {
    if b < 1 {
        return Err(Error::out_of_range("b", b, 1, idx.n() as i128 - 1));
    }
    if delta < 2 {
        return Err(Error::out_of_range("delta", delta, 2, idx.n()));
    }
    if b as u128 + delta as u128 - 2 > idx.n() as u128 - 1 {
        return Err(Error::Domain(format!(
            "b + delta - 2 = {} exceeds n - 1 = {}",
            b as u128 + delta as u128 - 2,
            idx.n() - 1
        )));
    }
    Ok(())
}

/// `n - |C_b ∪ ... ∪ C_(b+delta-2)|` by explicit set union.
pub fn oracle_dimension(delta: u64, b: u64, idx: &CodeIndex) -> Result<u64> {
    check_window(delta, b, idx)?;
    let mut union = CosetUnion::new(idx)?;
    for a in b..=b + delta - 2 {
        union.add(a);
    }
    Ok(idx.n() - union.len())
}

/// Oracle dimensions for `delta = 2..=max_delta` at a fixed offset `b`,
/// sharing one growing union. Index 0 of the result is `delta = 2`.
pub fn oracle_dimension_run(b: u64, max_delta: u64, idx: &CodeIndex) -> Result<Vec<u64>> {
    check_window(max_delta, b, idx)?;
    let mut union = CosetUnion::new(idx)?;
    let mut out = Vec::with_capacity(max_delta.saturating_sub(1) as usize);
    for a in b..=b + max_delta - 2 {
        union.add(a);
        out.push(idx.n() - union.len());
    }
    Ok(out)
}

/// Smallest coset leader in `[delta, n-1]`.
pub fn oracle_bose(delta: u64, idx: &CodeIndex) -> Result<u64> {
    if delta < 2 || delta >= idx.n() {
        return Err(Error::out_of_range("delta", delta, 2, idx.n() as i128 - 1));
    }
    oracle_guard(idx)?;
    (delta..idx.n())
        .find(|a| is_leader(*a, idx))
        .ok_or_else(|| Error::Domain(format!("no coset leader in [{delta}, {}]", idx.n() - 1)))
}

/// Bose distance of the code with offset `b`: the largest `delta'` whose
/// window `[b, b+delta'-2]` covers the same union of cosets.
pub fn oracle_bose_with_offset(delta: u64, b: u64, idx: &CodeIndex) -> Result<u64> {
    check_window(delta, b, idx)?;
    let mut union = CosetUnion::new(idx)?;
    for a in b..=b + delta - 2 {
        union.add(a);
    }
    (b + delta - 1..b + idx.n())
        .find(|a| !union.contains(*a))
        .map(|a| a - b + 1)
        .ok_or_else(|| Error::Domain("window already covers every coset".into()))
}

/// Coset leaders of `[lo, hi]` and their coset sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeaderInventory {
    pub lo: u64,
    pub hi: u64,
    pub leaders: Vec<u64>,
    pub size_of: BTreeMap<u64, u32>,
}

impl LeaderInventory {
    pub fn new(lo: u64, hi: u64, idx: &CodeIndex) -> Result<Self> {
        if lo > hi || hi >= idx.n() {
            return Err(Error::Domain(format!(
                "inventory range [{lo}, {hi}] not inside [0, {}]",
                idx.n() - 1
            )));
        }
        oracle_guard(idx)?;
        let leaders: Vec<u64> = (lo..=hi).filter(|a| is_leader(*a, idx)).collect();
        let size_of = leaders
            .iter()
            .map(|&a| Ok((a, coset_of(a, idx)?.size)))
            .collect::<Result<_>>()?;
        Ok(LeaderInventory {
            lo,
            hi,
            leaders,
            size_of,
        })
    }

    /// Smallest leader `>= a` inside the inventory range.
    pub fn next_leader(&self, a: u64) -> Option<u64> {
        let pos = self.leaders.partition_point(|x| *x < a);
        self.leaders.get(pos).copied()
    }

    /// Total size of the cosets led by leaders in `[lo, a]`.
    pub fn covered_up_to(&self, a: u64) -> u64 {
        self.size_of.range(..=a).map(|(_, s)| *s as u64).sum()
    }
}
