//! Base-q digit arithmetic over `[0, q^m - 1]`.
//!
//! Digits are stored most-significant first, so `digits()[0]` is `a_{m-1}`
//! and `digit(l)` returns `a_l`. Rotation by `t` is the left cyclic shift
//! that models multiplication by `q^t` modulo `q^m - 1`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest admissible `q^m - 1` (exclusive).
pub const MAX_N: u64 = 1 << 63;

/// Ambient parameters `(q, m)` with `n = q^m - 1` and `h = floor(m/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CodeIndex {
    q: u64,
    m: u32,
    n: u64,
    h: u32,
}

impl CodeIndex {
    pub fn new(q: u64, m: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::out_of_range("q", q, 2, i64::MAX));
        }
        if m < 1 {
            return Err(Error::out_of_range("m", m, 1, u32::MAX));
        }
        let mut power: u64 = 1;
        for _ in 0..m {
            power = power
                .checked_mul(q)
                .filter(|p| *p <= MAX_N)
                .ok_or(Error::Overflow { q, m })?;
        }
        let n = power - 1;
        if n >= MAX_N {
            return Err(Error::Overflow { q, m });
        }
        Ok(CodeIndex { q, m, n, h: m / 2 })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn is_even(&self) -> bool {
        self.m % 2 == 0
    }

    /// `q^e` for `0 <= e <= m`; always fits because `q^m <= 2^63`.
    pub fn pow(&self, e: u32) -> u64 {
        assert!(e <= self.m, "exponent {e} above m = {}", self.m);
        self.q.pow(e)
    }

    /// `floor((2m - 1) / 3)`, the exponent that bounds the closed-form range.
    pub fn top_exponent(&self) -> u32 {
        (2 * self.m - 1) / 3
    }

    /// `q^(floor((2m-1)/3) + 1)`: the largest designed distance the
    /// dimension formulas cover.
    pub fn closed_form_bound(&self) -> u64 {
        self.pow(self.top_exponent() + 1)
    }

    /// Largest admissible `k` for the digit classes, `floor((2m-1)/3) - h`.
    pub fn max_k(&self) -> i64 {
        self.top_exponent() as i64 - self.h as i64
    }

    /// `m - 2h`: 1 for odd m, 0 for even m. Smallest admissible `k`.
    pub fn min_k(&self) -> i64 {
        (self.m - 2 * self.h) as i64
    }

    /// Number of base-q digits of `a` (0 for `a = 0`).
    pub fn digit_len(&self, a: u64) -> u32 {
        let mut len = 0;
        let mut x = a;
        while x > 0 {
            x /= self.q;
            len += 1;
        }
        len
    }

    /// `a * q^t mod n` for `a < n`.
    pub fn mul_pow_mod(&self, a: u64, t: u32) -> u64 {
        let mut x = a as u128;
        let n = self.n as u128;
        for _ in 0..t {
            x = x * self.q as u128 % n;
        }
        x as u64
    }

    /// `N(a)`: how many integers in `[1, a-1]` are not divisible by q.
    pub fn count_nondiv(&self, a: u64) -> u64 {
        count_nondiv(a, self.q)
    }
}

impl fmt::Display for CodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, m={}, n={})", self.q, self.m, self.n)
    }
}

/// `N(a) = (a-1) - floor((a-1)/q)` on integers, with `N(0) = N(1) = 0`.
pub fn count_nondiv(a: u64, q: u64) -> u64 {
    if a <= 1 {
        return 0;
    }
    let x = a - 1;
    x - x / q
}

/// `N(t * q^e + 1)` for a possibly negative exponent `e`.
///
/// `N(x + 1) = floor(x) - floor(floor(x)/q)`, so only `floor(t q^e)` is needed.
pub fn count_nondiv_scaled(t: u64, e: i64, q: u64) -> u64 {
    let scaled = if e >= 0 {
        (t as u128 * (q as u128).pow(e as u32)) as u64
    } else {
        let d = (q as u128).checked_pow((-e) as u32);
        match d {
            Some(d) => (t as u128 / d) as u64,
            None => 0,
        }
    };
    count_nondiv(scaled + 1, q)
}

/// The length-m digit vector `V(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    q: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn new(digits: Vec<u64>, idx: &CodeIndex) -> Result<Self> {
        if digits.len() != idx.m() as usize {
            return Err(Error::Domain(format!(
                "digit vector has length {} but m = {}",
                digits.len(),
                idx.m()
            )));
        }
        if let Some(d) = digits.iter().find(|d| **d >= idx.q()) {
            return Err(Error::out_of_range("digit", *d, 0, idx.q() - 1));
        }
        Ok(DigitVector { q: idx.q(), digits })
    }

    /// Most-significant-first view.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// `a_l`, the coefficient of `q^l`; zero for `l` outside `[0, m)`.
    pub fn digit(&self, l: i64) -> u64 {
        let m = self.digits.len() as i64;
        if l < 0 || l >= m {
            return 0;
        }
        self.digits[(m - 1 - l) as usize]
    }

    /// `sum_{l=lo}^{hi} a_l q^(l - base)`; requires `lo >= base` when the
    /// range is non-empty. An empty range (`lo > hi`) sums to zero.
    pub fn window(&self, lo: i64, hi: i64, base: i64) -> u64 {
        if lo > hi {
            return 0;
        }
        assert!(lo >= base, "window [{lo}, {hi}] below base {base}");
        let mut acc: u64 = 0;
        for l in (lo..=hi).rev() {
            acc = acc * self.q + self.digit(l);
        }
        acc * self.q.pow((lo - base) as u32)
    }

    /// Left cyclic shift by `t`: the digit vector of `a * q^t mod n`.
    pub fn rotate(&self, t: u32) -> Result<DigitVector> {
        let m = self.digits.len();
        if t as usize >= m {
            return Err(Error::out_of_range("t", t, 0, m as i64 - 1));
        }
        let mut digits = self.digits.clone();
        digits.rotate_left(t as usize);
        Ok(DigitVector { q: self.q, digits })
    }

    pub fn lex_compare(&self, other: &DigitVector) -> Ordering {
        assert_eq!(
            self.digits.len(),
            other.digits.len(),
            "lexicographic comparison needs equal lengths"
        );
        self.digits.cmp(&other.digits)
    }
}

impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.q > 10 { "," } else { "" };
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(sep))
    }
}

pub fn to_digits(a: u64, idx: &CodeIndex) -> Result<DigitVector> {
    if a > idx.n() {
        return Err(Error::out_of_range("a", a, 0, idx.n()));
    }
    let m = idx.m() as usize;
    let mut digits = vec![0; m];
    let mut x = a;
    for slot in digits.iter_mut().rev() {
        *slot = x % idx.q();
        x /= idx.q();
    }
    Ok(DigitVector { q: idx.q(), digits })
}

pub fn from_digits(d: &DigitVector, idx: &CodeIndex) -> u64 {
    debug_assert_eq!(d.q, idx.q());
    d.digits.iter().fold(0, |acc, x| acc * idx.q() + x)
}

pub fn rotate(d: &DigitVector, t: u32) -> Result<DigitVector> {
    d.rotate(t)
}

pub fn lex_compare(u: &DigitVector, w: &DigitVector) -> Ordering {
    u.lex_compare(w)
}
