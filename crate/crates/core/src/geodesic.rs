//! Geodesics in `BS(1,q)`: exact word length, normal forms, the tilde map
//! and pinch detection.
//!
//! A word over `{a, t}` walks through heights (running `t`-exponent sum); an
//! `a`-run of length `c` at height `h` translates by `c·q^h`. The element
//! `(τ, b)` therefore costs the `t`-letters of a walk from 0 to `τ` covering
//! some height range `[lo, hi]`, plus `Σ|c_h|` over one digit per height with
//! `Σ c_h q^h = b`. The lowest height is forced to `min(0, τ, −dpow)`: going
//! lower adds two `t`-letters and never shortens the digit sum. What remains
//! is a carry-propagating digit search run from the bottom height upward,
//! where the digit at `hi` absorbs the remaining value.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bs::{BsElement, BsParams};
use crate::error::{Error, Result};
use crate::words::{classify, t_blocks, Word, WordClass, A, T, T_INV};

const SATURATED: u64 = 1 << 62;

/// `t`-letters used by a walk from 0 to `texp` covering `[lo, hi]`.
fn walk_cost(lo: i64, hi: i64, texp: i64) -> u64 {
    let down_first = -lo + (hi - lo) + (hi - texp);
    let up_first = hi + (hi - lo) + (texp - lo);
    down_first.min(up_first) as u64
}

fn lowest_height(g: &BsElement) -> i64 {
    0.min(g.texp).min(-(g.dpow as i64))
}

/// `|num| · q^(−lo − dpow)`: the translation expressed in units of `q^lo`.
fn scaled_translation(g: &BsElement, p: &BsParams, lo: i64) -> BigInt {
    let shift = (-lo - g.dpow as i64) as u32;
    &g.num * BigInt::from(p.q()).pow(shift)
}

/// `d(1, g)` in the Cayley graph of `BS(1,q)` with generators `a, t`.
pub fn geodesic_length(g: &BsElement, p: &BsParams) -> u64 {
    let q = p.q() as i64;
    let lo = lowest_height(g);
    let base = 0.max(g.texp);
    let n: BigUint = scaled_translation(g, p, lo).abs().to_biguint().expect("nonnegative");
    let digits: Vec<u8> = if n.is_zero() { vec![] } else { n.to_radix_le(p.q()) };
    let len = digits.len();
    // quotient[k] = ⌊n / q^k⌋, saturating
    let mut quotient = vec![0u64; len + 1];
    for k in (0..len).rev() {
        let v = (quotient[k + 1] as u128) * q as u128 + digits[k] as u128;
        quotient[k] = v.min(SATURATED as u128) as u64;
    }

    // states: (carry, a-letters so far); the remainder at level k is quotient[k] + carry
    let mut states: Vec<(i64, u64)> = vec![(0, 0)];
    let mut best = u64::MAX;
    let mut k = 0usize;
    loop {
        let h = lo + k as i64;
        let qk = quotient.get(k).copied().unwrap_or(0);
        if h >= base && qk < SATURATED {
            for &(carry, cost) in &states {
                let top = (qk as i64 + carry).unsigned_abs();
                best = best.min(walk_cost(lo, h, g.texp) + cost + top);
            }
        }
        if k >= len + 2 && h >= base + 2 {
            break;
        }
        let d = digits.get(k).copied().unwrap_or(0) as i64;
        let mut next: Vec<(i64, u64)> = Vec::with_capacity(3);
        let mut relax = |carry: i64, cost: u64| match next.iter_mut().find(|(c, _)| *c == carry) {
            Some(slot) => slot.1 = slot.1.min(cost),
            None => next.push((carry, cost)),
        };
        for &(carry, cost) in &states {
            let x = d + carry;
            let r = x.rem_euclid(q);
            let up = (x - r) / q;
            relax(up, cost + r as u64);
            if r != 0 {
                relax(up + 1, cost + (q - r) as u64);
            }
        }
        states = next;
        k += 1;
    }
    best
}

pub fn is_geodesic(w: &Word, p: &BsParams) -> bool {
    w.len() as u64 == geodesic_length(&p.eval(w), p)
}

/// True iff `w` contains `t⁻¹ a^j t` with `q | j` (including `j = 0`).
pub fn has_pinch(w: &Word, p: &BsParams) -> bool {
    let ls = w.letters();
    let q = p.q() as usize;
    ls.iter().enumerate().filter(|(_, l)| **l == T_INV).any(|(i, _)| {
        let mut j = i + 1;
        while j < ls.len() && ls[j] == ls[i + 1] && ls[j].gen == A.gen {
            j += 1;
        }
        j < ls.len() && ls[j] == T && (j - i - 1) % q == 0
    })
}

/// Which end of the walk the normal form visits first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Walk {
    /// `t^{-e} … t … [X]`: down to `lo`, up through the digits, `X`-block on top.
    DownFirst,
    /// `[X] t^{-1} … t^{f}`: `X`-block at height 0, digits on the way down.
    UpFirst,
}

/// Preferred rendering where the normal form admits two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    /// `X`-blocks as `t^h a^s t⁻¹ … a^{k_0}`; class 4 with `σ_t = 0` as `t^{-e} … t w_0`.
    #[default]
    Pn,
    /// `X`-blocks in class 1 as `a^{k_0} t … t a^s t^{-h}`; class 4 with
    /// `σ_t = 0` as `w_0 t⁻¹ … t^f`.
    Np,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XBlock {
    pub orientation: Orientation,
    pub h: i64,
    pub s: i64,
    /// `k_0 .. k_{h−1}`, bottom to top.
    pub k: Vec<i64>,
}

impl XBlock {
    pub fn check(&self, p: &BsParams) -> std::result::Result<(), String> {
        if self.h < 1 {
            return Err(format!("X-block height {} < 1", self.h));
        }
        let s = self.s.abs();
        let ok = if p.q() == 2 { (2..=3).contains(&s) } else { (1..p.q() as i64).contains(&s) };
        if !ok {
            return Err(format!("X-block top digit {} out of range", self.s));
        }
        if let Some(k) = self.k.iter().find(|k| k.abs() > p.half()) {
            return Err(format!("X-block digit {k} exceeds ⌊q/2⌋"));
        }
        Ok(())
    }

    pub fn render(&self) -> Word {
        let mut w = Word::empty();
        match self.orientation {
            Orientation::Pn => {
                w.push_power(T, self.h);
                w.push_power(A, self.s);
                for &k in self.k.iter().rev() {
                    w.push(T_INV);
                    w.push_power(A, k);
                }
            }
            Orientation::Np => {
                for &k in &self.k {
                    w.push_power(A, k);
                    w.push(T);
                }
                w.push_power(A, self.s);
                w.push_power(T, -self.h);
            }
        }
        w
    }
}

/// A geodesic in the normal form for its class: one digit per height in
/// `[lo, hi]`, arranged along a down-first or up-first walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicNormalForm {
    pub class: u8,
    pub walk: Walk,
    pub orientation: Orientation,
    pub texp: i64,
    pub lo: i64,
    pub hi: i64,
    /// Digit at height `lo + i`.
    pub digits: Vec<i64>,
}

impl GeodesicNormalForm {
    fn digit(&self, h: i64) -> i64 {
        self.digits[(h - self.lo) as usize]
    }

    /// Height the core (`a^i` or `X`-block) sits on.
    fn core_height(&self) -> i64 {
        match self.walk {
            Walk::DownFirst => self.texp,
            Walk::UpFirst => 0,
        }
    }

    pub fn xblock(&self) -> Option<XBlock> {
        let base = self.core_height();
        (self.hi > base).then(|| XBlock {
            orientation: if self.class == 1 { self.orientation } else { Orientation::Pn },
            h: self.hi - base,
            s: self.digit(self.hi),
            k: (base..self.hi).map(|h| self.digit(h)).collect(),
        })
    }

    /// `i` in the core `w_0 = a^i`, when there is no `X`-block.
    pub fn core_power(&self) -> Option<i64> {
        (self.hi == self.core_height()).then(|| self.digit(self.hi))
    }

    /// Number of `t⁻¹` letters outside the core.
    pub fn e(&self) -> i64 {
        -self.lo
    }

    /// Number of `t` letters outside the core.
    pub fn f(&self) -> i64 {
        self.texp - self.lo
    }

    /// `m_1 .. m_e` (classes 2 and 4).
    pub fn suffix_digits(&self) -> Vec<i64> {
        match self.walk {
            Walk::UpFirst => (1..=self.e()).map(|j| self.digit(-j)).collect(),
            Walk::DownFirst => (1..=self.f()).map(|j| self.digit(self.texp - j)).collect(),
        }
    }

    /// `n_0 .. n_{f−1}` (class 3).
    pub fn prefix_digits(&self) -> Vec<i64> {
        (0..self.texp.max(0)).map(|j| self.digit(j)).collect()
    }

    pub fn render(&self) -> Word {
        let core = match self.xblock() {
            Some(x) => x.render(),
            None => Word::power(A, self.digit(self.hi)),
        };
        let mut w = Word::empty();
        match self.walk {
            Walk::DownFirst => {
                w.push_power(T, self.lo);
                for h in self.lo..self.texp {
                    w.push_power(A, self.digit(h));
                    w.push(T);
                }
                w = w.concat(&core);
            }
            Walk::UpFirst => {
                w = core;
                for h in (self.lo..0).rev() {
                    w.push(T_INV);
                    w.push_power(A, self.digit(h));
                }
                w.push_power(T, self.texp - self.lo);
            }
        }
        w
    }

    /// Checks every bound of the normal-form shape.
    pub fn check_shape(&self, p: &BsParams) -> std::result::Result<(), String> {
        let half = p.half();
        let top = self.digits.len() - 1;
        if let Some((i, d)) = self.digits[..top].iter().enumerate().find(|(_, d)| d.abs() > half) {
            return Err(format!("digit {d} at height {} exceeds ⌊q/2⌋", self.lo + i as i64));
        }
        match (self.xblock(), self.core_power()) {
            (Some(x), _) => x.check(p)?,
            (None, Some(i)) if i.abs() > p.c_q() => return Err(format!("core a^{i} exceeds C_q = {}", p.c_q())),
            _ => {}
        }
        let (e, f) = (self.e(), self.f());
        let expected = match (self.lo, self.texp) {
            (0, 0) => 1,
            (lo, t) if lo == t && t < 0 => 2,
            (0, t) if t > 0 => 3,
            _ => 4,
        };
        if expected != self.class {
            return Err(format!("class {} does not match heights (expected {expected})", self.class));
        }
        if self.class == 4 {
            let ok = match self.walk {
                Walk::DownFirst => 1 <= e && e <= f,
                Walk::UpFirst => 1 <= f && f <= e,
            };
            if !ok {
                return Err(format!("class 4 with e={e}, f={f} violates the {:?} bound", self.walk));
            }
        }
        let tag = classify(&self.render());
        if tag.geodesic_class() != Some(self.class) {
            return Err(format!("rendered word classifies as {tag:?}, not class {}", self.class));
        }
        Ok(())
    }
}

impl fmt::Display for GeodesicNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render().to_text(&crate::words::GenAlphabet::bs()))
    }
}

fn top_digit_ok(p: &BsParams, top: &BigInt, has_x: bool) -> bool {
    let Some(v) = top.to_i64() else { return false };
    let v = v.unsigned_abs();
    if has_x {
        if p.q() == 2 {
            (2..=3).contains(&v)
        } else {
            (1..p.q() as u64).contains(&v)
        }
    } else {
        v <= p.c_q() as u64
    }
}

/// The normal form of `g`: minimal length over shapes with bounded digits;
/// ties go to the lowest top height, then the lexicographically smallest
/// digit vector (bottom height first).
pub fn normal_form(g: &BsElement, p: &BsParams, orientation: Orientation) -> GeodesicNormalForm {
    let q = BigInt::from(p.q());
    let half = p.half();
    let lo = lowest_height(g);
    let base = 0.max(g.texp);
    let n = scaled_translation(g, p, lo);
    let walk =
        if g.texp > 0 || (g.texp == 0 && orientation == Orientation::Pn) { Walk::DownFirst } else { Walk::UpFirst };
    let limit = base.max(lo + n.bits() as i64) + 4;

    // states: (remainder, a-letters, digits so far)
    let mut states: Vec<(BigInt, u64, Vec<i64>)> = vec![(n, 0, Vec::new())];
    let mut best: Option<(u64, i64, Vec<i64>)> = None;
    let mut h = lo;
    loop {
        if h >= base {
            for (rem, cost, digits) in &states {
                if !top_digit_ok(p, rem, h > base) {
                    continue;
                }
                let top = rem.to_i64().expect("bounded");
                let total = walk_cost(lo, h, g.texp) + cost + top.unsigned_abs();
                let mut ds = digits.clone();
                ds.push(top);
                let cand = (total, h, ds);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        if h >= limit {
            break;
        }
        let mut next: Vec<(BigInt, u64, Vec<i64>)> = Vec::with_capacity(3);
        for (rem, cost, digits) in &states {
            let r = rem.mod_floor(&q).to_i64().expect("small");
            let mut choices = Vec::with_capacity(2);
            if r <= half {
                choices.push(r);
            }
            if p.q() as i64 - r <= half && r != 0 {
                choices.push(r - p.q() as i64);
            }
            for c in choices {
                let rem2 = (rem - c) / &q;
                let cost2 = cost + c.unsigned_abs();
                let mut ds = digits.clone();
                ds.push(c);
                match next.iter_mut().find(|s| s.0 == rem2) {
                    Some(slot) => {
                        if (cost2, &ds) < (slot.1, &slot.2) {
                            slot.1 = cost2;
                            slot.2 = ds;
                        }
                    }
                    None => next.push((rem2, cost2, ds)),
                }
            }
        }
        states = next;
        h += 1;
    }
    let (_, hi, digits) = best.expect("a bounded-digit representation always exists");
    let class = match (lo, g.texp) {
        (0, 0) => 1,
        (lo, t) if lo == t && t < 0 => 2,
        (0, t) if t > 0 => 3,
        _ => 4,
    };
    GeodesicNormalForm { class, walk, orientation, texp: g.texp, lo, hi, digits }
}

/// Normal form of a geodesic word; rejects non-geodesic input.
pub fn normalize(w: &Word, p: &BsParams) -> Result<GeodesicNormalForm> {
    normalize_with(w, p, Orientation::Pn)
}

pub fn normalize_with(w: &Word, p: &BsParams, orientation: Orientation) -> Result<GeodesicNormalForm> {
    let g = p.eval(w);
    let geodesic = geodesic_length(&g, p);
    if w.len() as u64 != geodesic {
        return Err(Error::NotGeodesic { length: w.len(), geodesic });
    }
    Ok(normal_form(&g, p, orientation))
}

/// Largest `|k|` [`tilde`] will expand into letters.
pub const TILDE_POWER_CAP: u64 = 1 << 20;

/// Replaces the `X`-factor of `w` by the power of `a` it represents.
pub fn tilde(w: &Word, p: &BsParams) -> Result<Word> {
    use WordClass::*;
    let ls = w.letters();
    let blocks = t_blocks(w);
    // index of the n-th (1-based) occurrence of `target`
    let nth = |target, n: usize| {
        ls.iter().enumerate().filter(|(_, l)| **l == target).nth(n - 1).map(|(i, _)| i).expect("count")
    };
    let (start, end) = match classify(w) {
        E | N | P | NP => return Ok(w.clone()),
        Other => return Err(Error::Unclassified),
        X => (0, ls.len()),
        XN | XNP => (0, nth(T_INV, blocks[0].1) + 1),
        PX => (nth(T, blocks[0].1 - blocks[1].1 + 1), ls.len()),
        NPX => (nth(T, blocks[1].1 - blocks[2].1 + 1), ls.len()),
    };
    let xpart = Word::from_letters(ls[start..end].to_vec());
    let g = p.eval(&xpart);
    let k = g.as_a_power().expect("X-factor has zero t-sum and integral translation");
    if k.abs() > BigInt::from(TILDE_POWER_CAP) {
        return Err(Error::PowerTooLarge(k.to_string()));
    }
    let mut out = Word::from_letters(ls[..start].to_vec());
    out.push_power(A, k.to_i64().expect("capped"));
    Ok(out.concat(&Word::from_letters(ls[end..].to_vec())))
}
