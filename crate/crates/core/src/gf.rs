//! Finite fields GF(q) and GF(q^m), polynomials over GF(q), BCH generator
//! polynomials and a bounded minimum-distance search.
//!
//! GF(q) with `q = p^s` is GF(p)[y] modulo the smallest primitive monic
//! polynomial; an element is encoded as the integer whose base-p digits
//! (least significant first) are its coefficients in `1, y, .., y^(s-1)`.
//! GF(q^m) is GF(q)[x] modulo the smallest primitive monic degree-m
//! polynomial, with elements encoded the same way in base q. "Smallest"
//! orders candidates by that integer encoding of their lower coefficients.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cosets::coset_of;
use crate::error::{Error, Result};
use crate::qadic::CodeIndex;

/// Largest base field handled by the lookup tables.
pub const MAX_BASE_FIELD: u64 = 256;
/// Largest extension field (number of elements) for exp/log tables.
pub const MAX_FIELD: u64 = 1 << 22;
/// Enumeration cap for full codeword enumeration.
pub const FULL_ENUMERATION_LIMIT: u64 = 1 << 22;
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// `(p, s)` with `q = p^s`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q % d == 0)
        .unwrap_or(q);
    let (mut x, mut s) = (q, 0);
    while x % p == 0 {
        x /= p;
        s += 1;
    }
    if x == 1 {
        Ok((p, s))
    } else {
        Err(Error::NotPrimePower(q))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn digits_of(mut x: u64, base: u64, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (x % base) as u32;
        x /= base;
    }
    out
}

/// GF(q) by lookup tables.
#[derive(Debug, Clone)]
pub struct BaseField {
    pub p: u64,
    pub s: u32,
    pub q: u64,
    /// Monic degree-s modulus over GF(p), ascending; `[.., 1]`. Empty for s = 1.
    pub modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl BaseField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, s) = prime_power(q)?;
        if q > MAX_BASE_FIELD {
            return Err(Error::Domain(format!(
                "base field size {q} exceeds {MAX_BASE_FIELD}"
            )));
        }
        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        let modulus = if s == 1 {
            for a in 0..qs {
                for b in 0..qs {
                    add[a * qs + b] = ((a + b) % qs) as u32;
                    mul[a * qs + b] = ((a * b) % qs) as u32;
                }
            }
            Vec::new()
        } else {
            let modulus = smallest_primitive_over_prime(p, s);
            for a in 0..qs {
                let da = digits_of(a as u64, p, s as usize);
                for b in 0..qs {
                    let db = digits_of(b as u64, p, s as usize);
                    let sum: Vec<u32> = da
                        .iter()
                        .zip(&db)
                        .map(|(x, y)| ((x + y) as u64 % p) as u32)
                        .collect();
                    add[a * qs + b] = encode_digits(&sum, p);
                    mul[a * qs + b] = encode_digits(&mul_mod_prime(&da, &db, &modulus, p), p);
                }
            }
            modulus
        };
        let mut neg = vec![0u32; qs];
        let mut inv = vec![0u32; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        Ok(BaseField {
            p,
            s,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Base-p digits of an element, least significant first.
    pub fn element_digits(&self, a: u32) -> Vec<u32> {
        digits_of(a as u64, self.p, self.s as usize)
    }
}

fn encode_digits(d: &[u32], base: u64) -> u32 {
    d.iter().rev().fold(0u64, |acc, x| acc * base + *x as u64) as u32
}

/// Product of two polynomials over GF(p) reduced by a monic modulus.
fn mul_mod_prime(a: &[u32], b: &[u32], modulus: &[u32], p: u64) -> Vec<u32> {
    let s = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + *x as u64 * *y as u64) % p;
        }
    }
    for d in (s..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, m) in modulus.iter().enumerate() {
            let at = d - s + i;
            prod[at] = (prod[at] + p * p - c * *m as u64 % p) % p;
        }
    }
    prod.truncate(s);
    prod.into_iter().map(|x| x as u32).collect()
}

fn smallest_primitive_over_prime(p: u64, s: u32) -> Vec<u32> {
    let order = p.pow(s) - 1;
    for code in 1..p.pow(s) {
        let mut modulus = digits_of(code, p, s as usize);
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        // Order of y: first return to 1.
        let mut y = vec![0u32; s as usize];
        y[1.min(s as usize - 1)] = 1;
        if s == 1 {
            continue;
        }
        let one = {
            let mut v = vec![0u32; s as usize];
            v[0] = 1;
            v
        };
        let mut acc = y.clone();
        let mut e = 1;
        while acc != one && e <= order {
            acc = mul_mod_prime(&acc, &y, &modulus, p);
            e += 1;
        }
        if e == order {
            return modulus;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

/// Polynomial over GF(q), ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(n: u64, f: &BaseField) -> Self {
        let mut c = vec![0u32; n as usize + 1];
        c[0] = f.neg(1);
        c[n as usize] = 1;
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Poly, f: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(*a, *b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &Poly, f: &BaseField) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for pos in (dd..rem.len()).rev() {
            let c = rem[pos];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[pos - dd] = factor;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let at = pos - dd + i;
                rem[at] = f.sub(rem[at], f.mul(factor, *d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Number of non-zero coefficients.
    pub fn weight(&self) -> u64 {
        self.coeffs.iter().filter(|c| **c != 0).count() as u64
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let coef = if *c == 1 && i > 0 { String::new() } else { c.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(format!("{coef}{var}"));
        }
        f.write_str(&terms.join(" + "))
    }
}

/// GF(q) together with GF(q^m) and a primitive element `alpha`.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    pub idx: CodeIndex,
    pub base: BaseField,
    /// Monic degree-m modulus over GF(q), ascending.
    pub ext_modulus: Vec<u32>,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn s(&self) -> u32 {
        self.base.s
    }

    pub fn m(&self) -> u32 {
        self.idx.m()
    }

    pub fn n(&self) -> u64 {
        self.idx.n()
    }

    /// `alpha^e` as an encoded element.
    pub fn alpha_pow(&self, e: u64) -> u64 {
        self.exp[(e % self.n()) as usize]
    }

    /// Discrete log base alpha of a non-zero element.
    pub fn log(&self, a: u64) -> u64 {
        assert!(a != 0, "log of zero");
        self.log[a as usize]
    }

    pub fn ext_mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[((self.log[a as usize] + self.log[b as usize]) % self.n()) as usize]
    }

    pub fn ext_add(&self, a: u64, b: u64) -> u64 {
        if self.base.q == 2 {
            return a ^ b;
        }
        let q = self.base.q;
        let (mut x, mut y, mut out, mut place) = (a, b, 0u64, 1u64);
        for _ in 0..self.m() {
            let d = self.base.add((x % q) as u32, (y % q) as u32) as u64;
            out += d * place;
            place *= q;
            x /= q;
            y /= q;
        }
        out
    }

    pub fn ext_neg(&self, a: u64) -> u64 {
        if self.base.p == 2 {
            return a;
        }
        let q = self.base.q;
        let (mut x, mut out, mut place) = (a, 0u64, 1u64);
        for _ in 0..self.m() {
            out += self.base.neg((x % q) as u32) as u64 * place;
            place *= q;
            x /= q;
        }
        out
    }

    pub fn ext_pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return (e == 0) as u64;
        }
        let l = self.log[a as usize] as u128 * e as u128 % self.n() as u128;
        self.exp[l as usize]
    }
}

/// Polynomial over GF(q) modulo a monic modulus, used for the primitivity test.
fn polymulmod(a: &[u32], b: &[u32], modulus: &[u32], f: &BaseField) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(*x, *y));
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, mc) in modulus.iter().enumerate() {
            let at = d - m + i;
            prod[at] = f.sub(prod[at], f.mul(c, *mc));
        }
    }
    prod.truncate(m);
    prod
}

fn x_pow_mod(e: u64, modulus: &[u32], f: &BaseField) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut result = vec![0u32; m];
    result[0] = 1;
    let mut base = vec![0u32; m];
    if m == 1 {
        base[0] = f.neg(modulus[0]);
    } else {
        base[1] = 1;
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = polymulmod(&result, &base, modulus, f);
        }
        base = polymulmod(&base, &base, modulus, f);
        e >>= 1;
    }
    result
}

fn is_primitive(modulus: &[u32], n: u64, factors: &[u64], f: &BaseField) -> bool {
    let m = modulus.len() - 1;
    let mut one = vec![0u32; m];
    one[0] = 1;
    if x_pow_mod(n, modulus, f) != one {
        return false;
    }
    factors.iter().all(|r| x_pow_mod(n / r, modulus, f) != one)
}

pub fn build_field(idx: &CodeIndex) -> Result<FieldSpec> {
    let base = BaseField::new(idx.q())?;
    let q = idx.q();
    let m = idx.m() as usize;
    let size = idx.n() + 1;
    if size > MAX_FIELD {
        return Err(Error::DeskScaleExceeded {
            n: idx.n(),
            limit: MAX_FIELD - 1,
        });
    }
    let n = idx.n();
    let factors = prime_factors(n);
    let ext_modulus = (1..size)
        .map(|code| {
            let mut c = digits_of(code, q, m);
            c.push(1);
            c
        })
        .filter(|c| c[0] != 0)
        .find(|c| is_primitive(c, n, &factors, &base))
        .ok_or_else(|| Error::Internal(format!("no primitive modulus for q={q}, m={m}")))?;

    // exp/log tables by repeated multiplication by alpha.
    let mut exp = vec![0u64; n as usize];
    let mut log = vec![0u64; size as usize];
    let mut cur = vec![0u32; m];
    cur[0] = 1;
    for (e, slot) in exp.iter_mut().enumerate() {
        let code = encode_digits_u64(&cur, q);
        *slot = code;
        log[code as usize] = e as u64;
        cur = times_alpha(&cur, &ext_modulus, &base);
    }
    debug_assert_eq!(encode_digits_u64(&cur, q), 1);
    Ok(FieldSpec {
        idx: *idx,
        base,
        ext_modulus,
        exp,
        log,
    })
}

fn encode_digits_u64(d: &[u32], base: u64) -> u64 {
    d.iter().rev().fold(0u64, |acc, x| acc * base + *x as u64)
}

fn times_alpha(cur: &[u32], modulus: &[u32], f: &BaseField) -> Vec<u32> {
    let m = cur.len();
    if m == 1 {
        return vec![f.mul(cur[0], f.neg(modulus[0]))];
    }
    let carry = cur[m - 1];
    let mut next = vec![0u32; m];
    next[1..m].copy_from_slice(&cur[..m - 1]);
    if carry != 0 {
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = f.sub(*slot, f.mul(carry, modulus[i]));
        }
    }
    next
}

/// `prod_{i in C_a} (x - alpha^i)`, checked to have coefficients in GF(q).
pub fn minimal_poly(a: u64, fs: &FieldSpec) -> Result<Poly> {
    let coset = coset_of(a, &fs.idx)?;
    let mut acc: Vec<u64> = vec![1];
    for &i in &coset.elements {
        let root = fs.alpha_pow(i);
        let neg_root = fs.ext_neg(root);
        let mut next = vec![0u64; acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] = fs.ext_add(next[j + 1], *c);
            next[j] = fs.ext_add(next[j], fs.ext_mul(neg_root, *c));
        }
        acc = next;
    }
    let q = fs.base.q;
    let mut coeffs = Vec::with_capacity(acc.len());
    for c in acc {
        if c >= q || fs.ext_pow(c, q) != c {
            return Err(Error::Internal(format!(
                "minimal polynomial of alpha^{a} has a coefficient outside GF({q})"
            )));
        }
        coeffs.push(c as u32);
    }
    Ok(Poly::new(coeffs))
}

fn check_generator_window(delta: u64, b: u64, idx: &CodeIndex) -> Result<()> {
    if b < 1 || delta < 2 || b as u128 + delta as u128 - 2 > idx.n() as u128 - 1 {
        return Err(Error::Domain(format!(
            "generator needs b >= 1, delta >= 2, b + delta - 2 <= n - 1 (b = {b}, delta = {delta}, n = {})",
            idx.n()
        )));
    }
    Ok(())
}

/// Generator polynomial of the BCH code with zeros `alpha^b, .., alpha^(b+delta-2)`
/// and their conjugates.
pub fn generator_poly(delta: u64, b: u64, fs: &FieldSpec) -> Result<Poly> {
    check_generator_window(delta, b, &fs.idx)?;
    let mut seen = HashSet::new();
    let mut g = Poly::one();
    let mut zeros = 0usize;
    for a in b..=b + delta - 2 {
        let coset = coset_of(a % fs.n(), &fs.idx)?;
        if seen.insert(coset.leader) {
            zeros += coset.size as usize;
            g = g.mul(&minimal_poly(coset.leader, fs)?, &fs.base);
        }
    }
    if g.degree() != Some(zeros) {
        return Err(Error::Internal(format!(
            "generator degree {:?} differs from zero count {zeros}",
            g.degree()
        )));
    }
    Ok(g)
}

/// `(x^n - 1) / g`, verified by multiplying back.
pub fn parity_check_poly(g: &Poly, fs: &FieldSpec) -> Result<Poly> {
    let target = Poly::x_n_minus_one(fs.n(), &fs.base);
    if g.is_zero() {
        return Err(Error::Internal("zero generator polynomial".into()));
    }
    let (h, r) = target.divrem(g, &fs.base);
    if !r.is_zero() {
        return Err(Error::Internal("g(x) does not divide x^n - 1".into()));
    }
    if g.mul(&h, &fs.base) != target {
        return Err(Error::Internal("g(x) h(x) != x^n - 1".into()));
    }
    Ok(h)
}

/// Codeword `message(x) g(x)` as a length-n coefficient vector.
pub fn encode(message: &[u32], g: &Poly, fs: &FieldSpec) -> Vec<u32> {
    let deg = g.degree().expect("zero generator");
    let k = fs.n() as usize - deg;
    assert_eq!(message.len(), k, "message length must be n - deg g = {k}");
    let mut word = Poly::new(message.to_vec()).mul(g, &fs.base).coeffs;
    word.resize(fs.n() as usize, 0);
    word
}

/// Outcome of a minimum-distance search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    /// Exact distance when the bounds met.
    pub exact: Option<u64>,
    pub lower: u64,
    pub upper: u64,
    /// Candidate codewords evaluated.
    pub evaluated: u64,
    pub exhaustive: bool,
}

/// Exact minimum Hamming distance of the cyclic code generated by `g`, or
/// `None` when the search budget runs out first.
pub fn min_distance_exhaustive(g: &Poly, fs: &FieldSpec, budget: u64) -> Option<u64> {
    min_distance_search(g, fs, budget).exact
}

/// Full enumeration when `q^k` fits the budget; otherwise the BCH bound
/// from below against low-weight codewords found in automorphism-invariant
/// subcodes and by information-set search.
pub fn min_distance_search(g: &Poly, fs: &FieldSpec, budget: u64) -> DistanceReport {
    let n = fs.n() as usize;
    let deg = g.degree().expect("zero generator");
    let k = n - deg;
    if k == 0 {
        return DistanceReport {
            exact: None,
            lower: 0,
            upper: 0,
            evaluated: 0,
            exhaustive: true,
        };
    }
    let q = fs.base.q;
    if let Some(total) = (q as u128).checked_pow(k as u32) {
        if total <= budget.min(FULL_ENUMERATION_LIMIT) as u128 {
            let d = enumerate_cyclic(g, fs, k);
            return DistanceReport {
                exact: Some(d),
                lower: d,
                upper: d,
                evaluated: total as u64 - 1,
                exhaustive: true,
            };
        }
    }

    let lower = bch_lower_bound(g, fs);
    let mut upper = g.weight();
    let mut evaluated = 1u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eedbc4);

    let full = WeightedCode {
        rows: (0..k)
            .map(|i| {
                let mut r = vec![0u32; n];
                r[i..i + g.coeffs().len()].copy_from_slice(g.coeffs());
                r
            })
            .collect(),
        weights: vec![1; n],
    };
    // A short plain search first catches light words that no automorphism
    // fixes; invariant subcodes get at most half the budget; the plain
    // search then takes whatever is left.
    let (u, e) = search_weighted(&full, &fs.base, lower, (budget / 16).max(1), &mut rng);
    upper = upper.min(u);
    evaluated += e;
    let residues = residues_mod_g(g, fs);
    let share = (budget / 8).max(1);
    let subcode_limit = evaluated + budget / 2;
    for orbits in invariant_groups(fs) {
        if upper <= lower || evaluated >= subcode_limit.min(budget) {
            break;
        }
        let sub = invariant_subcode(&orbits, &residues, fs);
        if sub.rows.is_empty() {
            continue;
        }
        let cap = share.min(subcode_limit.min(budget) - evaluated);
        let (u, e) = search_weighted(&sub, &fs.base, lower, cap, &mut rng);
        upper = upper.min(u);
        evaluated += e;
    }
    if upper > lower && evaluated < budget {
        let (u, e) = search_weighted(&full, &fs.base, lower, budget - evaluated, &mut rng);
        upper = upper.min(u);
        evaluated += e;
    }
    DistanceReport {
        exact: (upper <= lower).then_some(upper),
        lower,
        upper,
        evaluated,
        exhaustive: false,
    }
}

/// Walks every codeword with a p-ary Gray code over the GF(p)-basis
/// `y^j x^i g(x)`: step `t` adds basis vector number `v_p(t)`.
fn enumerate_cyclic(g: &Poly, fs: &FieldSpec, k: usize) -> u64 {
    let f = &fs.base;
    let (p, s) = (f.p, f.s as usize);
    let n = fs.n() as usize;
    let gens: Vec<(usize, Vec<u32>)> = (0..k)
        .flat_map(|i| {
            (0..s).map(move |j| {
                let scalar = p.pow(j as u32) as u32;
                (i, g.coeffs().iter().map(|c| f.mul(*c, scalar)).collect())
            })
        })
        .collect();
    let mut word = vec![0u32; n];
    let mut weight = 0u64;
    let mut best = u64::MAX;
    let steps = (p as u128).pow((k * s) as u32);
    for t in 1..steps {
        let (shift, gen) = &gens[p_adic_valuation(t, p)];
        for (off, c) in gen.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let pos = shift + off;
            let old = word[pos];
            let new = f.add(old, *c);
            word[pos] = new;
            weight = weight + (new != 0) as u64 - (old != 0) as u64;
        }
        best = best.min(weight);
    }
    best
}

fn p_adic_valuation(mut t: u128, p: u64) -> usize {
    let mut v = 0;
    while t % p as u128 == 0 {
        t /= p as u128;
        v += 1;
    }
    v
}

/// Largest `L + 1` such that some arithmetic progression `b, b+u, .., b+(L-1)u`
/// with `gcd(u, n) = 1` lies in the zero set of `g`.
pub fn bch_lower_bound(g: &Poly, fs: &FieldSpec) -> u64 {
    let n = fs.n();
    let zero: Vec<bool> = (0..n).map(|i| eval_at_alpha_pow(g, i, fs) == 0).collect();
    let mut best = 1u64;
    for u in 1..n {
        if gcd(u, n) != 1 {
            continue;
        }
        let order: Vec<bool> = (0..n)
            .map(|t| zero[((t as u128 * u as u128) % n as u128) as usize])
            .collect();
        let Some(start) = order.iter().position(|z| !*z) else {
            return n + 1;
        };
        let mut run = 0u64;
        for t in 1..=n as usize {
            if order[(start + t) % n as usize] {
                run += 1;
                best = best.max(run + 1);
            } else {
                run = 0;
            }
        }
    }
    best
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn eval_at_alpha_pow(g: &Poly, e: u64, fs: &FieldSpec) -> u64 {
    let x = fs.alpha_pow(e);
    g.coeffs()
        .iter()
        .rev()
        .fold(0u64, |acc, c| fs.ext_add(fs.ext_mul(acc, x), *c as u64))
}

/// Generator rows over GF(q) whose coordinates carry weights; the weight of
/// a vector is the sum of the weights of its non-zero coordinates.
struct WeightedCode {
    rows: Vec<Vec<u32>>,
    weights: Vec<u64>,
}

fn weighted_weight(v: &[u32], weights: &[u64]) -> u64 {
    v.iter()
        .zip(weights)
        .filter(|(x, _)| **x != 0)
        .map(|(_, w)| *w)
        .sum()
}

/// `x^i mod g` for `i in [0, n)`.
fn residues_mod_g(g: &Poly, fs: &FieldSpec) -> Vec<Vec<u32>> {
    let f = &fs.base;
    let deg = g.degree().unwrap();
    let mut out = Vec::with_capacity(fs.n() as usize);
    let mut cur = vec![0u32; deg];
    if deg > 0 {
        cur[0] = 1;
    }
    let lead_inv = f.inv(g.coeffs()[deg]);
    for _ in 0..fs.n() {
        out.push(cur.clone());
        if deg == 0 {
            continue;
        }
        let carry = cur[deg - 1];
        let mut next = vec![0u32; deg];
        next[1..].copy_from_slice(&cur[..deg - 1]);
        if carry != 0 {
            let factor = f.mul(carry, lead_inv);
            for (slot, c) in next.iter_mut().zip(g.coeffs()) {
                *slot = f.sub(*slot, f.mul(factor, *c));
            }
        }
        cur = next;
    }
    out
}

/// Orbits of the groups generated by `i -> q^j i` and `i -> i + L` for
/// `j | m`, `L | n`, smallest subcodes first; the trivial group is skipped.
fn invariant_groups(fs: &FieldSpec) -> Vec<Vec<Vec<usize>>> {
    let n = fs.n() as usize;
    let m = fs.m() as u64;
    let q = fs.base.q;
    let mut groups = Vec::new();
    for j in (1..=m).filter(|j| m % j == 0) {
        for l in (1..=n).filter(|l| n % l == 0) {
            if j == m && l == n {
                continue;
            }
            let mult = q.pow(j as u32) as usize % n.max(1);
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                let mut y = x;
                while p[y] != r {
                    let next = p[y];
                    p[y] = r;
                    y = next;
                }
                r
            }
            for i in 0..n {
                for target in [(i * mult) % n, (i + l) % n] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, target));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
            let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for i in 0..n {
                let r = find(&mut parent, i);
                by_root.entry(r).or_default().push(i);
            }
            groups.push(by_root.into_values().collect::<Vec<_>>());
        }
    }
    groups.sort_by_key(|g| g.len());
    groups.dedup();
    groups
}

/// Codewords constant on every orbit, in orbit coordinates.
fn invariant_subcode(orbits: &[Vec<usize>], residues: &[Vec<u32>], fs: &FieldSpec) -> WeightedCode {
    let f = &fs.base;
    let deg = residues[0].len();
    // Column o: the residue of the orbit indicator modulo g.
    let cols: Vec<Vec<u32>> = orbits
        .iter()
        .map(|orbit| {
            let mut acc = vec![0u32; deg];
            for &i in orbit {
                for (a, r) in acc.iter_mut().zip(&residues[i]) {
                    *a = f.add(*a, *r);
                }
            }
            acc
        })
        .collect();
    let rows: Vec<Vec<u32>> = (0..deg)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    WeightedCode {
        rows: nullspace(rows, orbits.len(), f),
        weights: orbits.iter().map(|o| o.len() as u64).collect(),
    }
}

/// Basis of `{x : A x = 0}` over GF(q).
fn nullspace(mut a: Vec<Vec<u32>>, ncols: usize, f: &BaseField) -> Vec<Vec<u32>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|i| a[*i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, *y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[row][fc]);
            }
            v
        })
        .collect()
}

/// Smallest weight found among codewords of `code`, and the number of
/// candidates evaluated. Enumerates everything when that fits the budget,
/// otherwise runs Lee-Brickell with two-row combinations.
fn search_weighted(
    code: &WeightedCode,
    f: &BaseField,
    lower: u64,
    budget: u64,
    rng: &mut ChaCha8Rng,
) -> (u64, u64) {
    let k = code.rows.len();
    let ncols = code.weights.len();
    let total = (f.q as u128).checked_pow(k as u32);
    if let Some(total) = total.filter(|t| *t <= budget as u128) {
        let mut word = vec![0u32; ncols];
        let mut best = u64::MAX;
        let (p, s) = (f.p, f.s as usize);
        let gens: Vec<Vec<u32>> = code
            .rows
            .iter()
            .flat_map(|row| {
                (0..s).map(move |j| {
                    let scalar = p.pow(j as u32) as u32;
                    row.iter().map(|c| f.mul(*c, scalar)).collect()
                })
            })
            .collect();
        let mut weight = 0u64;
        for t in 1..total {
            let gen = &gens[p_adic_valuation(t, p)];
            for (pos, c) in gen.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let old = word[pos];
                let new = f.add(old, *c);
                word[pos] = new;
                weight = weight + code.weights[pos] * (new != 0) as u64
                    - code.weights[pos] * (old != 0) as u64;
            }
            best = best.min(weight);
        }
        return (best, total as u64 - 1);
    }

    let mut upper = u64::MAX;
    let mut evaluated = 0u64;
    let mut cols: Vec<usize> = (0..ncols).collect();
    let nonzero: Vec<u32> = (1..f.q as u32).collect();
    'outer: while upper > lower && evaluated < budget {
        cols.shuffle(rng);
        let mut m = code.rows.clone();
        let mut r = 0;
        for &c in &cols {
            if r == k {
                break;
            }
            let Some(pivot) = (r..k).find(|i| m[*i][c] != 0) else {
                continue;
            };
            m.swap(r, pivot);
            let inv = f.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let factor = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if *y != 0 {
                        *x = f.sub(*x, f.mul(factor, *y));
                    }
                }
            }
            r += 1;
        }
        for row in &m {
            upper = upper.min(weighted_weight(row, &code.weights));
            evaluated += 1;
        }
        if upper <= lower {
            break;
        }
        let mut combo = vec![0u32; ncols];
        for i in 0..k {
            for j in i + 1..k {
                for &c in &nonzero {
                    for ((slot, a), b) in combo.iter_mut().zip(&m[i]).zip(&m[j]) {
                        *slot = f.add(*a, f.mul(c, *b));
                    }
                    upper = upper.min(weighted_weight(&combo, &code.weights));
                    evaluated += 1;
                    if upper <= lower || evaluated >= budget {
                        break 'outer;
                    }
                }
            }
        }
    }
    (upper, evaluated)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64, m: u32) -> FieldSpec {
        build_field(&CodeIndex::new(q, m).unwrap()).unwrap()
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2).unwrap(), (2, 1));
        assert_eq!(prime_power(4).unwrap(), (2, 2));
        assert_eq!(prime_power(27).unwrap(), (3, 3));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
    }

    #[test]
    fn base_field_gf4() {
        let f = BaseField::new(4).unwrap();
        assert_eq!(f.modulus, vec![1, 1, 1]);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        // y * y = y + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.element_digits(3), vec![1, 1]);
    }

    #[test]
    fn field_examples() {
        assert_eq!(field(2, 4).ext_modulus, vec![1, 1, 0, 0, 1]);
        let f = field(3, 1);
        assert_eq!(f.ext_modulus, vec![1, 1]);
        assert_eq!(f.alpha_pow(1), 2);
        let f = field(4, 4);
        assert_eq!(f.base.modulus, vec![1, 1, 1]);
        assert_eq!(f.ext_modulus.len(), 5);
        assert!(build_field(&CodeIndex::new(6, 2).unwrap()).is_err());
    }

    #[test]
    fn minimal_poly_examples() {
        let f = field(2, 4);
        assert_eq!(minimal_poly(1, &f).unwrap().coeffs(), &[1, 1, 0, 0, 1]);
        assert_eq!(minimal_poly(0, &f).unwrap().coeffs(), &[1, 1]);
        assert_eq!(minimal_poly(5, &f).unwrap().degree(), Some(2));
        let f3 = field(3, 4);
        assert_eq!(minimal_poly(0, &f3).unwrap().coeffs(), &[2, 1]);
    }

    #[test]
    fn generator_examples() {
        let f = field(2, 4);
        assert_eq!(generator_poly(4, 1, &f).unwrap().degree(), Some(8));
        assert_eq!(generator_poly(2, 1, &f).unwrap(), minimal_poly(1, &f).unwrap());
        let f3 = field(3, 4);
        assert_eq!(generator_poly(9, 1, &f3).unwrap().degree(), Some(24));
        assert!(generator_poly(1, 1, &f).is_err());
    }

    #[test]
    fn parity_check_examples() {
        let f = field(2, 4);
        let g = generator_poly(2, 1, &f).unwrap();
        assert_eq!(parity_check_poly(&g, &f).unwrap().degree(), Some(11));
        assert_eq!(
            parity_check_poly(&Poly::one(), &f).unwrap(),
            Poly::x_n_minus_one(15, &f.base)
        );
        let g7 = generator_poly(4, 1, &f).unwrap();
        assert_eq!(parity_check_poly(&g7, &f).unwrap().degree(), Some(7));
        assert!(parity_check_poly(&Poly::new(vec![1, 0, 1]), &f).is_err());
    }

    #[test]
    fn encode_examples() {
        let f = field(3, 4);
        let g = generator_poly(9, 1, &f).unwrap();
        assert!(encode(&[0; 56], &g, &f).iter().all(|c| *c == 0));
        let mut unit = vec![0; 56];
        unit[0] = 1;
        let word = encode(&unit, &g, &f);
        assert_eq!(&word[..25], g.coeffs());
        let msg: Vec<u32> = (0..56).map(|i| (i * 7 % 3) as u32).collect();
        let word = Poly::new(encode(&msg, &g, &f));
        assert!(word.divrem(&g, &f.base).1.is_zero());
    }

    #[test]
    fn distance_examples() {
        let f = field(2, 4);
        let d = |delta| min_distance_exhaustive(&generator_poly(delta, 1, &f).unwrap(), &f, DEFAULT_BUDGET);
        assert_eq!(d(4), Some(5));
        assert_eq!(d(2), Some(3));
        let f5 = field(2, 5);
        let g = generator_poly(2, 1, &f5).unwrap();
        assert_eq!(min_distance_exhaustive(&g, &f5, DEFAULT_BUDGET), Some(3));
    }

    #[test]
    fn gray_code_agrees_with_information_sets() {
        let f = field(3, 3);
        for delta in 2..12 {
            let g = generator_poly(delta, 1, &f).unwrap();
            let k = 26 - g.degree().unwrap();
            if 3u64.pow(k as u32) > FULL_ENUMERATION_LIMIT {
                continue;
            }
            let full = min_distance_search(&g, &f, DEFAULT_BUDGET);
            assert!(full.exhaustive);
            let d = full.exact.unwrap();
            assert!(bch_lower_bound(&g, &f) <= d);
            let rows = (0..k)
                .map(|i| {
                    let mut r = vec![0u32; 26];
                    r[i..i + g.coeffs().len()].copy_from_slice(g.coeffs());
                    r
                })
                .collect();
            let code = WeightedCode { rows, weights: vec![1; 26] };
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let (upper, _) = search_weighted(&code, &f.base, 0, 1 << 40, &mut rng);
            assert_eq!(upper, d);
        }
    }
}
