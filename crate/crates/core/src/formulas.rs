//! Closed forms for dimension and Bose distance of narrow-sense primitive
//! BCH codes with designed distance up to `q^(floor((2m-1)/3)+1)`.
//!
//! All quantities are exact integers. Digits of `delta - 1` drive the
//! dimension side; digits of `delta` drive the Bose side.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qadic::{count_nondiv, count_nondiv_scaled, to_digits, CodeIndex, DigitVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Source {
    ClosedForm,
    Oracle,
    Hybrid,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Source::ClosedForm => "ClosedForm",
            Source::Oracle => "Oracle",
            Source::Hybrid => "Hybrid",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BchResult {
    pub n: u64,
    pub dimension: u64,
    pub bose: u64,
    pub source: Source,
    pub min_distance: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Odd,
    Even,
}

/// Derived quantities of a designed distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaProfile {
    pub delta: u64,
    /// Digits of `delta - 1`.
    pub dim_digits: DigitVector,
    /// Digits of `delta`.
    pub bose_digits: DigitVector,
    /// `q^(h+k) <= delta - 1 < q^(h+k+1)`, present once `delta - 1 >= q^(m-h)`.
    pub k_delta: Option<i64>,
    pub s_delta: Option<i64>,
    /// `q^(h+j) <= delta < q^(h+j+1)`; negative below `q^h`.
    pub j_delta: i64,
    pub r_delta: Option<i64>,
    pub delta_hat: Option<u64>,
}

fn require_formula_range(idx: &CodeIndex) -> Result<()> {
    if idx.m() < 4 {
        return Err(Error::ClosedFormInapplicable(format!(
            "closed forms need m >= 4, got m = {}",
            idx.m()
        )));
    }
    Ok(())
}

fn require_delta(delta: u64, idx: &CodeIndex) -> Result<()> {
    require_formula_range(idx)?;
    let bound = idx.closed_form_bound();
    if delta < 2 || delta > bound {
        return Err(Error::out_of_range("delta", delta, 2, bound));
    }
    Ok(())
}

/// Exponent of the leading digit minus h; `None` for zero.
fn top_minus_h(a: u64, idx: &CodeIndex) -> i64 {
    idx.digit_len(a) as i64 - 1 - idx.h() as i64
}

pub fn delta_profile(delta: u64, idx: &CodeIndex) -> Result<DeltaProfile> {
    require_delta(delta, idx)?;
    let h = idx.h() as i64;
    let dim_digits = to_digits(delta - 1, idx)?;
    let bose_digits = to_digits(delta, idx)?;
    let min_k = idx.min_k();

    let k = top_minus_h(delta - 1, idx);
    let (k_delta, s_delta) = if k >= min_k {
        let s = (min_k - k..=k)
            .find(|s| dim_digits.digit(h + s) > 0)
            .expect("leading digit of delta - 1 is non-zero");
        (Some(k), Some(s))
    } else {
        (None, None)
    };

    let j = top_minus_h(delta, idx);
    let (r_delta, delta_hat) = if j >= min_k && delta < idx.closed_form_bound() {
        let r_lo = if idx.is_even() { -j } else { -j + 1 };
        let r = (r_lo..=j)
            .find(|r| bose_digits.digit(h + r) > 0)
            .expect("leading digit of delta is non-zero");
        // Odd m mirrors around h - r + 1, even m around h - r.
        let mirror = if idx.is_even() { h - r } else { h - r + 1 };
        let hat = bose_digits.window(h + r, h + j, 0) + bose_digits.window(mirror, h + j, mirror);
        (Some(r), Some(hat))
    } else {
        (None, None)
    };

    Ok(DeltaProfile {
        delta,
        dim_digits,
        bose_digits,
        k_delta,
        s_delta,
        j_delta: j,
        r_delta,
        delta_hat,
    })
}

/// `{t : lo <= t <= hi, q ∤ t}`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TSet {
    pub lo: u64,
    pub hi: u64,
    q: u64,
}

impl TSet {
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let q = self.q;
        (self.lo..=self.hi).filter(move |t| t % q != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }

    pub fn len(&self) -> u64 {
        if self.lo > self.hi {
            return 0;
        }
        count_nondiv(self.hi + 1, self.q) - count_nondiv(self.lo, self.q)
    }

    /// `sum_{t in T} N(t q^e + 1)`.
    pub fn sum_scaled(&self, e: i64) -> u64 {
        self.iter().map(|t| count_nondiv_scaled(t, e, self.q)).sum()
    }
}

fn k_and_s(p: &DeltaProfile) -> Result<(i64, i64)> {
    match (p.k_delta, p.s_delta) {
        (Some(k), Some(s)) => Ok((k, s)),
        _ => Err(Error::Domain(format!(
            "delta = {} is below q^(m-h) + 1; k_delta and s_delta are undefined",
            p.delta
        ))),
    }
}

/// `T_i(delta) = {t : q^(k-i) <= t < sum_{l=h+s}^{h+k} delta_l q^(l-h-i), q ∤ t}`.
pub fn t_set(p: &DeltaProfile, i: i64, idx: &CodeIndex) -> Result<TSet> {
    let (k, s) = k_and_s(p)?;
    let i_lo = if idx.is_even() { -k } else { -k + 1 };
    if i < i_lo || i > k {
        return Err(Error::out_of_range("i", i, i_lo, k));
    }
    let h = idx.h() as i64;
    let w = p.dim_digits.window(h + s, h + k, 0);
    let scale = idx.pow((h + i) as u32);
    let lo = idx.pow((k - i) as u32);
    // t * q^(h+i) < w
    let hi = if w == 0 { 0 } else { (w - 1) / scale };
    if w == 0 || hi < lo {
        return Ok(TSet { lo: 1, hi: 0, q: idx.q() });
    }
    Ok(TSet { lo, hi, q: idx.q() })
}

/// `mu` for odd m, `mu~` for even m.
pub fn mu(p: &DeltaProfile, idx: &CodeIndex) -> Result<u64> {
    let (k, s) = k_and_s(p)?;
    let h = idx.h() as i64;
    let d = &p.dim_digits;
    Ok(if idx.is_even() {
        d.window(0, h - k - 1, 0).min(d.window(h - s, h + k, h - s))
    } else {
        d.window(0, h - k, 0).min(d.window(h - s + 1, h + k, h - s + 1))
    })
}

pub fn tau(p: &DeltaProfile, idx: &CodeIndex) -> Result<u64> {
    if !idx.is_even() {
        return Err(Error::Domain("tau is only defined for even m".into()));
    }
    let (k, _) = k_and_s(p)?;
    let h = idx.h() as i64;
    let d = &p.dim_digits;
    Ok((d.digit(h) > 0 && d.window(h, h + k, h) <= d.window(0, h - 1, 0)) as u64)
}

fn require_parity(idx: &CodeIndex, even: bool) -> Result<()> {
    if idx.is_even() != even {
        return Err(Error::Domain(format!(
            "expected {} m, got m = {}",
            if even { "even" } else { "odd" },
            idx.m()
        )));
    }
    Ok(())
}

/// Number of non-leaders prime to q in `[1, delta - 1]`, odd m.
pub fn f_odd(delta: u64, idx: &CodeIndex) -> Result<u64> {
    require_parity(idx, false)?;
    require_delta(delta, idx)?;
    let h = idx.h();
    if delta <= idx.pow(h + 1) {
        return Ok(0);
    }
    let p = delta_profile(delta, idx)?;
    let (k, _) = k_and_s(&p)?;
    let q = idx.q();
    let mut total = if k == 1 {
        0
    } else {
        q.pow((2 * k - 3) as u32) * (k as u64 - 1) * (q - 1) * (q - 1)
    };
    total += count_nondiv(mu(&p, idx)? + 1, q);
    for i in -k + 1..=k {
        total += t_set(&p, i, idx)?.sum_scaled(2 * i - 1);
    }
    Ok(total)
}

/// Number of elements of S ∪ H in `[1, delta - 1]`, even m.
pub fn f_even(delta: u64, idx: &CodeIndex) -> Result<u64> {
    require_parity(idx, true)?;
    require_delta(delta, idx)?;
    let h = idx.h();
    let q = idx.q();
    if delta <= idx.pow(h) {
        return Ok(0);
    }
    let p = delta_profile(delta, idx)?;
    let tail = count_nondiv(mu(&p, idx)? + 1, q);
    if delta <= idx.pow(h + 1) {
        let dh = p.dim_digits.digit(h as i64);
        return Ok(dh * dh.saturating_sub(1) / 2 + tail);
    }
    let (k, _) = k_and_s(&p)?;
    let k_u = k as u64;
    let twice = (2 * k_u - 1) * q.pow((2 * k - 2) as u32) * (q - 1) * (q - 1)
        + q.pow((k - 1) as u32) * (q - 1);
    debug_assert_eq!(twice % 2, 0);
    let mut total = twice / 2 + tail;
    for i in -k..=k {
        total += t_set(&p, i, idx)?.sum_scaled(2 * i);
    }
    Ok(total)
}

/// Number of elements of H in `[1, delta - 1]`, even m.
pub fn g_even(delta: u64, idx: &CodeIndex) -> Result<u64> {
    require_parity(idx, true)?;
    require_delta(delta, idx)?;
    let h = idx.h();
    if delta <= idx.pow(h) {
        return Ok(0);
    }
    let p = delta_profile(delta, idx)?;
    let t = tau(&p, idx)?;
    if delta <= idx.pow(h + 1) {
        return Ok(p.dim_digits.digit(h as i64) - 1 + t);
    }
    let (k, _) = k_and_s(&p)?;
    let hh = h as i64;
    Ok(count_nondiv(p.dim_digits.window(hh, hh + k, hh), idx.q()) + t)
}

/// Dimension of the narrow-sense code with designed distance `delta`.
pub fn dimension(delta: u64, idx: &CodeIndex) -> Result<u64> {
    require_delta(delta, idx)?;
    let m = idx.m() as u64;
    let nd = count_nondiv(delta, idx.q());
    if idx.is_even() {
        let f = f_even(delta, idx)?;
        let g = g_even(delta, idx)?;
        Ok(idx.n() - m * (nd - f) - m / 2 * g)
    } else {
        let f = f_odd(delta, idx)?;
        Ok(idx.n() - m * (nd - f))
    }
}

fn check_reduction(delta: u64, b: u64, idx: &CodeIndex) -> Result<()> {
    require_formula_range(idx)?;
    let q = idx.q() as u128;
    let (d, b128) = (delta as u128, b as u128);
    let bound = idx.closed_form_bound() as u128;
    if b < 2 || b128 * (q - 1) + 1 > d || d + b128 > bound + 1 {
        return Err(Error::ReductionInapplicable { b, delta, q: idx.q() });
    }
    Ok(())
}

/// Dimension with offset `b >= 2`, via the reduction to designed distance
/// `b + delta - 1`.
pub fn dimension_nonnarrow(delta: u64, b: u64, idx: &CodeIndex) -> Result<u64> {
    check_reduction(delta, b, idx)?;
    dimension(b + delta - 1, idx)
}

/// Bose distance of the narrow-sense code, `2 <= delta < q^(floor((2m-1)/3)+1)`.
pub fn bose_distance(delta: u64, idx: &CodeIndex) -> Result<u64> {
    require_delta(delta, idx)?;
    if delta == idx.closed_form_bound() {
        return Err(Error::DeferredToPriorWork { delta });
    }
    let q = idx.q();
    let divisible = delta % q == 0;
    if delta < idx.pow(idx.m() - idx.h()) {
        return Ok(delta + divisible as u64);
    }
    let p = delta_profile(delta, idx)?;
    let (r, hat) = match (p.r_delta, p.delta_hat) {
        (Some(r), Some(hat)) => (r, hat),
        _ => return Err(Error::Internal(format!("no r_delta for delta = {delta}"))),
    };
    let h = idx.h() as i64;
    let j = p.j_delta;
    let d = &p.bose_digits;
    let (low, mirror) = if idx.is_even() {
        (d.window(0, h - j - 1, 0), h - r)
    } else {
        (d.window(0, h - j, 0), h - r + 1)
    };
    let high = d.window(mirror, h + j, mirror);
    let past_hat = hat + 1 + (d.digit(mirror) == q - 1) as u64;

    if idx.is_even() && r == 0 {
        return Ok(if low > high { delta + divisible as u64 } else { hat });
    }
    Ok(match (divisible, low > high, low >= high) {
        (false, true, _) => delta,
        (false, false, _) => past_hat,
        (true, _, true) => delta + 1,
        (true, _, false) => past_hat,
    })
}

/// Bose distance with offset `b >= 2`, under the same hypotheses as
/// [`dimension_nonnarrow`] and `b + delta - 1` below the bound.
pub fn bose_distance_nonnarrow(delta: u64, b: u64, idx: &CodeIndex) -> Result<u64> {
    check_reduction(delta, b, idx)?;
    Ok(bose_distance(b + delta - 1, idx)? - b + 1)
}

/// Dimension and Bose distance of `delta = a q^(h+k) + b` from the
/// special-case formulas.
pub fn closed_form_special(a: u64, k: i64, b: u64, idx: &CodeIndex) -> Result<BchResult> {
    require_formula_range(idx)?;
    let q = idx.q() as i128;
    let m = idx.m() as i128;
    let n = idx.n() as i128;
    let h = idx.h() as i64;
    if k < idx.min_k() || k > idx.max_k() {
        return Err(Error::out_of_range("k", k, idx.min_k(), idx.max_k()));
    }
    if a < 1 || a >= idx.q() {
        return Err(Error::out_of_range("a", a, 1, idx.q() - 1));
    }
    let b_hi = if idx.is_even() {
        idx.pow((h - k) as u32)
    } else {
        idx.pow((h - k + 1) as u32)
    };
    if b < 1 || b > b_hi {
        return Err(Error::out_of_range("b", b, 1, b_hi));
    }
    let delta = a * idx.pow((h + k) as u32) + b;
    // Only reachable for even m; the Bose case split does not hold there.
    if delta == idx.closed_form_bound() {
        return Err(Error::DeferredToPriorWork { delta });
    }
    let a_ = a as i128;
    let b_ = b as i128;
    let pw = |e: i64| q.pow(e as u32);
    let nd = count_nondiv(delta, idx.q()) as i128;
    // The "d_B = delta" branches hold only when q does not divide b; a
    // multiple of q is never a leader, and delta + 1 is then the next one.
    let own = delta as i128 + (delta % idx.q() == 0) as i128;

    let (bose, dim) = if !idx.is_even() {
        // a^2 (q-1) q^(2k-3) [(q-1)k + 1], exact even when k = 1.
        let core = a_ * a_ * (q - 1) * ((q - 1) * k as i128 + 1) * pw(2 * k - 2) / q;
        if b_ > a_ * pw(2 * k - 1) {
            (own, n - m * nd + m * core)
        } else {
            (
                a_ * pw(h + k) + a_ * pw(2 * k - 1) + 1,
                n - m * a_ * pw(h + k - 1) * (q - 1) - m * a_ * (q - 1) * pw(2 * k - 2) + m * core,
            )
        }
    } else if k == 0 {
        if b_ <= a_ {
            (
                a_ * pw(h) + a_,
                n - m * a_ * pw(h - 1) * (q - 1) + m * (a_ - 1) * (a_ - 1) / 2,
            )
        } else {
            (own, n - m * nd + m * a_ * a_ / 2)
        }
    } else {
        // m a^2 (q-1)^2 q^(2k-2) (k - 1/2), with m even.
        let lead = m / 2 * a_ * a_ * (q - 1) * (q - 1) * pw(2 * k - 2) * (2 * k as i128 - 1);
        if b_ > a_ * pw(2 * k) {
            (own, lead + m * a_ * a_ * (q - 1) * pw(2 * k - 1) + n - m * nd)
        } else {
            (
                a_ * pw(h + k) + a_ * pw(2 * k) + 1,
                lead + m * a_ * (a_ - 1) * (q - 1) * pw(2 * k - 1) + n
                    - m * a_ * pw(h + k - 1) * (q - 1),
            )
        }
    };
    // At the top of the b range the case split misses the next digit
    // pattern; the general result covers it.
    let bose = if b == b_hi {
        bose_distance(delta, idx)?
    } else {
        bose as u64
    };
    Ok(BchResult {
        n: idx.n(),
        dimension: dim as u64,
        bose,
        source: Source::ClosedForm,
        min_distance: None,
    })
}

/// `sum_{t=q^k}^{q^(k+1)-1} N(t+1)` in closed form.
pub fn lemma_sum_n(k: u32, q: u64) -> u64 {
    if k == 0 {
        (q * q - q) / 2
    } else {
        q.pow(2 * k - 1) * (q - 1) * (q - 1) * (q + 1) / 2
    }
}

pub fn lemma_sum_n_direct(k: u32, q: u64) -> u64 {
    (q.pow(k)..q.pow(k + 1)).map(|t| count_nondiv(t + 1, q)).sum()
}

fn check_lemma_t(k: i64, a: u64, i: i64, parity: Parity, q: u64) -> Result<()> {
    if k < 1 {
        return Err(Error::out_of_range("k", k, 1, i64::MAX));
    }
    if a < 1 || a > q {
        return Err(Error::out_of_range("a", a, 1, q));
    }
    let i_lo = match parity {
        Parity::Odd => -k + 1,
        Parity::Even => -k,
    };
    if i < i_lo || i > k {
        return Err(Error::out_of_range("i", i, i_lo, k));
    }
    Ok(())
}

/// Closed form of `sum_{t = q^(k-i), q ∤ t}^{a q^(k-i) - 1} N(t q^e + 1)` with
/// `e = 2i - 1` (odd) or `e = 2i` (even).
pub fn lemma_sum_t(k: i64, a: u64, i: i64, parity: Parity, q: u64) -> Result<u64> {
    check_lemma_t(k, a, i, parity, q)?;
    let q = q as u128;
    let a = a as u128;
    let pw = |e: i64| q.pow(e as u32);
    let value = match parity {
        Parity::Odd if i == k || i == -k + 1 => a * (a - 1) * (q - 1) * pw(2 * k - 2) / 2,
        Parity::Odd => (a * a - 1) * (q - 1) * (q - 1) * pw(2 * k - 3) / 2,
        Parity::Even if i == k || i == -k => a * (a - 1) * (q - 1) * pw(2 * k - 1) / 2,
        Parity::Even if i == 0 => {
            ((a * a - 1) * (q - 1) * (q - 1) * pw(2 * k - 2) + (a - 1) * (q - 1) * pw(k - 1)) / 2
        }
        Parity::Even => (a * a - 1) * (q - 1) * (q - 1) * pw(2 * k - 2) / 2,
    };
    Ok(value as u64)
}

pub fn lemma_sum_t_direct(k: i64, a: u64, i: i64, parity: Parity, q: u64) -> Result<u64> {
    check_lemma_t(k, a, i, parity, q)?;
    let lo = q.pow((k - i) as u32);
    let e = match parity {
        Parity::Odd => 2 * i - 1,
        Parity::Even => 2 * i,
    };
    Ok((lo..a * lo)
        .filter(|t| t % q != 0)
        .map(|t| count_nondiv_scaled(t, e, q))
        .sum())
}

/// Closed-form size of `A_k(i)` (odd) or `B_k(i)` (even), `k >= 1`, or of
/// `B_k(0)` for any `k >= 0`.
pub fn class_size(k: i64, i: i64, parity: Parity, q: u64) -> Result<u64> {
    let q = q as u128;
    let pw = |e: i64| q.pow(e as u32);
    let v = match parity {
        Parity::Odd => {
            if k < 1 || i < -k + 1 || i > k {
                return Err(Error::Domain(format!("A_k(i) needs k >= 1, i in [-k+1, k]; got k={k}, i={i}")));
            }
            if i == k || i == -k + 1 {
                pw(2 * k - 1) * (q - 1) * (q - 1) / 2
            } else {
                pw(2 * k - 3) * (q - 1).pow(3) * (q + 1) / 2
            }
        }
        Parity::Even => {
            if k < 0 || i < -k || i > k {
                return Err(Error::Domain(format!("B_k(i) needs k >= 0, i in [-k, k]; got k={k}, i={i}")));
            }
            if i == 0 {
                if k == 0 {
                    q * (q - 1) / 2
                } else {
                    (q - 1) * (q - 1) * (pw(2 * k) - pw(2 * k - 2) + pw(k - 1)) / 2
                }
            } else if i == k || i == -k {
                pw(2 * k) * (q - 1) * (q - 1) / 2
            } else {
                pw(2 * k - 2) * (q - 1).pow(3) * (q + 1) / 2
            }
        }
    };
    Ok(v as u64)
}

/// Number of elements of H in `[q^(h+k), q^(h+k+1))`, `k >= 1`.
pub fn h_count(k: i64, q: u64) -> u64 {
    assert!(k >= 1);
    q.pow((k - 1) as u32) * (q - 1) * (q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::{oracle_bose, oracle_dimension};

    fn idx(q: u64, m: u32) -> CodeIndex {
        CodeIndex::new(q, m).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p = delta_profile(19, &idx(2, 7)).unwrap();
        assert_eq!((p.k_delta, p.s_delta), (Some(1), Some(1)));
        let p = delta_profile(10, &idx(3, 4)).unwrap();
        assert_eq!((p.k_delta, p.s_delta), (Some(0), Some(0)));
        let p = delta_profile(5, &idx(2, 4)).unwrap();
        assert_eq!((p.j_delta, p.r_delta, p.delta_hat), (0, Some(0), Some(5)));
        assert!(delta_profile(1, &idx(2, 4)).is_err());
        assert!(delta_profile(9, &idx(2, 4)).is_err());
    }

    #[test]
    fn t_set_examples() {
        let i = idx(2, 7);
        let p = delta_profile(19, &i).unwrap();
        assert!(t_set(&p, 1, &i).unwrap().is_empty());
        assert!(t_set(&p, 0, &i).unwrap().is_empty());
        assert!(t_set(&p, -1, &i).is_err());
        assert!(t_set(&p, 2, &i).is_err());
    }

    #[test]
    fn t_set_special_form() {
        // delta = a q^(h+k) + b gives T_i = [q^(k-i), a q^(k-i) - 1] minus multiples of q.
        let i = idx(3, 7);
        let (h, k) = (3i64, 1i64);
        for a in 1..3u64 {
            for b in [1u64, 5, 20] {
                let delta = a * 3u64.pow((h + k) as u32) + b;
                let p = delta_profile(delta, &i).unwrap();
                for ii in -k + 1..=k {
                    let t = t_set(&p, ii, &i).unwrap();
                    let lo = 3u64.pow((k - ii) as u32);
                    let expect: Vec<u64> = (lo..a * lo).filter(|t| t % 3 != 0).collect();
                    assert_eq!(t.iter().collect::<Vec<_>>(), expect);
                }
            }
        }
    }

    #[test]
    fn mu_tau_examples() {
        let p = delta_profile(19, &idx(2, 7)).unwrap();
        assert_eq!(mu(&p, &idx(2, 7)).unwrap(), 2);
        let i = idx(3, 4);
        let p = delta_profile(10, &i).unwrap();
        assert_eq!(mu(&p, &i).unwrap(), 0);
        assert_eq!(tau(&p, &i).unwrap(), 0);
        for (q, m) in [(2u64, 4u32), (3, 4), (2, 6), (5, 4)] {
            let i = idx(q, m);
            let p = delta_profile(i.pow(i.h() + 1), &i).unwrap();
            assert_eq!(mu(&p, &i).unwrap(), q - 1);
            assert_eq!(tau(&p, &i).unwrap(), 1);
        }
        assert!(tau(&delta_profile(19, &idx(2, 7)).unwrap(), &idx(2, 7)).is_err());
    }

    #[test]
    fn f_g_examples() {
        assert_eq!(f_odd(19, &idx(2, 7)).unwrap(), 1);
        assert_eq!(f_odd(16, &idx(2, 7)).unwrap(), 0);
        assert_eq!(f_even(10, &idx(3, 4)).unwrap(), 0);
        assert_eq!(g_even(10, &idx(3, 4)).unwrap(), 0);
        assert_eq!(f_even(9, &idx(3, 4)).unwrap(), 0);
        for (q, m) in [(2u64, 4u32), (3, 4), (2, 6)] {
            let i = idx(q, m);
            assert_eq!(g_even(i.pow(i.h() + 1), &i).unwrap(), q - 1);
        }
        // 13 = 1101b is the only element of S u H below 14 besides 5 and 9, 11.
        assert_eq!(f_even(8, &idx(2, 4)).unwrap(), 1);
        assert!(f_even(14, &idx(2, 4)).is_err());
        assert!(f_odd(19, &idx(2, 8)).is_err());
        assert!(g_even(19, &idx(2, 7)).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(19, &idx(2, 7)).unwrap(), 71);
        assert_eq!(dimension(10, &idx(3, 4)).unwrap(), 56);
        assert_eq!(dimension(2, &idx(2, 5)).unwrap(), 26);
        assert!(dimension(2, &idx(2, 3)).is_err());
    }

    #[test]
    fn nonnarrow_examples() {
        assert_eq!(dimension_nonnarrow(3, 2, &idx(2, 4)).unwrap(), 7);
        assert_eq!(dimension_nonnarrow(7, 3, &idx(2, 7)).unwrap(), 99);
        assert!(matches!(
            dimension_nonnarrow(2, 2, &idx(2, 4)),
            Err(Error::ReductionInapplicable { .. })
        ));
        for (q, m) in [(3u64, 5u32), (4, 4)] {
            let i = idx(q, m);
            let b = 2;
            let delta = b * (q - 1) + 1;
            assert_eq!(
                dimension_nonnarrow(delta, b, &i).unwrap(),
                dimension(b + delta - 1, &i).unwrap()
            );
        }
    }

    #[test]
    fn bose_examples() {
        assert_eq!(bose_distance(16, &idx(2, 7)).unwrap(), 19);
        assert_eq!(bose_distance(5, &idx(2, 4)).unwrap(), 5);
        assert_eq!(bose_distance(6, &idx(3, 5)).unwrap(), 7);
        assert!(matches!(
            bose_distance(8, &idx(2, 4)),
            Err(Error::DeferredToPriorWork { delta: 8 })
        ));
    }

    #[test]
    fn special_examples() {
        let r = closed_form_special(1, 0, 1, &idx(3, 4)).unwrap();
        assert_eq!((r.bose, r.dimension), (10, 56));
        let r = closed_form_special(1, 1, 1, &idx(2, 7)).unwrap();
        assert_eq!((r.bose, r.dimension), (19, 71));
        let i = idx(2, 7);
        for b in 3..=4u64 {
            let r = closed_form_special(1, 1, b, &i).unwrap();
            assert_eq!(r.bose, bose_distance(16 + b, &i).unwrap());
        }
        // b = 4 is even, so delta = 20 is not a leader.
        assert_eq!(closed_form_special(1, 1, 4, &i).unwrap().bose, 21);
        assert!(closed_form_special(2, 1, 1, &i).is_err());
        assert!(closed_form_special(1, 2, 1, &i).is_err());
        assert!(closed_form_special(1, 1, 9, &i).is_err());
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma_sum_n(0, 2), 1);
        assert_eq!(lemma_sum_n(1, 2), 3);
        assert_eq!(lemma_sum_n_direct(1, 2), 3);
        assert_eq!(lemma_sum_n(1, 3), 24);
        assert_eq!(lemma_sum_n_direct(1, 3), 24);
        for parity in [Parity::Odd, Parity::Even] {
            assert_eq!(lemma_sum_t(2, 1, 0, parity, 3).unwrap(), 0);
        }
        assert_eq!(
            lemma_sum_t(2, 2, 0, Parity::Even, 3).unwrap(),
            lemma_sum_t_direct(2, 2, 0, Parity::Even, 3).unwrap()
        );
        assert!(lemma_sum_t(1, 2, 2, Parity::Odd, 3).is_err());
        assert!(lemma_sum_t(1, 2, -1, Parity::Odd, 3).is_err());
    }

    #[test]
    fn small_sweep_against_oracle() {
        for (q, m) in [(2u64, 4u32), (2, 5), (2, 7), (3, 4), (3, 5), (4, 4)] {
            let i = idx(q, m);
            for delta in 2..=i.closed_form_bound() {
                assert_eq!(
                    dimension(delta, &i).unwrap(),
                    oracle_dimension(delta, 1, &i).unwrap(),
                    "dimension q={q} m={m} delta={delta}"
                );
                if delta < i.closed_form_bound() {
                    assert_eq!(
                        bose_distance(delta, &i).unwrap(),
                        oracle_bose(delta, &i).unwrap(),
                        "bose q={q} m={m} delta={delta}"
                    );
                }
            }
        }
    }
}
