//! Exact arithmetic in `BS(1,q) = ⟨a, t | t a t⁻¹ = a^q⟩`.
//!
//! An element acts on the line as `x ↦ q^texp · x + num · q^(−dpow)`; `a` is
//! `x ↦ x + 1` and `t` is `x ↦ q x`. Products compose with the right factor
//! applied first, so evaluating a word is a left-to-right fold.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ball::GroupModel;
use crate::error::{Error, Result};
use crate::words::{Letter, Word, A, T};

/// The group parameter `q` and the derived core bound `C_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BsParams {
    q: u32,
}

impl BsParams {
    /// Largest supported `q`; digit expansions use byte radix conversion.
    pub const MAX_Q: u32 = 256;

    pub fn new(q: u32) -> Result<Self> {
        if !(2..=Self::MAX_Q).contains(&q) {
            return Err(Error::InvalidParams(format!("q must lie in 2..={}, got {q}", Self::MAX_Q)));
        }
        Ok(BsParams { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `⌊q/2 + 1⌋` for `q > 2`, and 3 for `q = 2`.
    pub fn c_q(&self) -> i64 {
        if self.q == 2 {
            3
        } else {
            (self.q / 2 + 1) as i64
        }
    }

    /// `⌊q/2⌋`, the digit bound of geodesic normal forms.
    pub fn half(&self) -> i64 {
        (self.q / 2) as i64
    }

    pub fn descriptor(&self) -> String {
        format!("bs:q={}", self.q)
    }

    fn qpow(&self, k: u32) -> BigInt {
        BigInt::from(self.q).pow(k)
    }

    /// Multiplies `num · q^(−dpow)` by `q^e`.
    fn scale(&self, num: &BigInt, dpow: u32, e: i64) -> (BigInt, u32) {
        if e >= 0 {
            let e = e as u32;
            let shift = e.min(dpow);
            (num * self.qpow(e - shift), dpow - shift)
        } else {
            (num.clone(), dpow + e.unsigned_abs() as u32)
        }
    }

    fn add(&self, (n1, d1): (BigInt, u32), (n2, d2): (BigInt, u32)) -> (BigInt, u32) {
        let d = d1.max(d2);
        let num = n1 * self.qpow(d - d1) + n2 * self.qpow(d - d2);
        (num, d)
    }

    fn normalized(&self, texp: i64, mut num: BigInt, mut dpow: u32) -> BsElement {
        if num.is_zero() {
            dpow = 0;
        }
        let q = BigInt::from(self.q);
        while dpow > 0 {
            let (quo, rem) = num.div_rem(&q);
            if !rem.is_zero() {
                break;
            }
            num = quo;
            dpow -= 1;
        }
        BsElement { texp, num, dpow }
    }

    pub fn identity(&self) -> BsElement {
        BsElement::identity()
    }

    pub fn a_pow(&self, k: impl Into<BigInt>) -> BsElement {
        BsElement { texp: 0, num: k.into(), dpow: 0 }
    }

    /// `g ∘ h`: the product `g·h`.
    pub fn mul(&self, g: &BsElement, h: &BsElement) -> BsElement {
        let shifted = self.scale(&h.num, h.dpow, g.texp);
        let (num, dpow) = self.add((g.num.clone(), g.dpow), shifted);
        self.normalized(g.texp + h.texp, num, dpow)
    }

    pub fn inv(&self, g: &BsElement) -> BsElement {
        let (num, dpow) = self.scale(&g.num, g.dpow, -g.texp);
        self.normalized(-g.texp, -num, dpow)
    }

    /// `g · l` for a single letter.
    pub fn mul_letter(&self, g: &BsElement, l: Letter) -> BsElement {
        if l.gen == T.gen {
            return BsElement { texp: g.texp + l.sign(), num: g.num.clone(), dpow: g.dpow };
        }
        debug_assert_eq!(l.gen, A.gen);
        let step = self.scale(&BigInt::from(l.sign()), 0, g.texp);
        let (num, dpow) = self.add((g.num.clone(), g.dpow), step);
        self.normalized(g.texp, num, dpow)
    }

    pub fn eval(&self, w: &Word) -> BsElement {
        w.letters().iter().fold(BsElement::identity(), |g, &l| self.mul_letter(&g, l))
    }
}

/// An element of `BS(1,q)` in normalized affine form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BsElement {
    pub texp: i64,
    pub num: BigInt,
    pub dpow: u32,
}

impl BsElement {
    pub fn identity() -> Self {
        BsElement { texp: 0, num: BigInt::zero(), dpow: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.texp == 0 && self.num.is_zero()
    }

    /// `Some(k)` when the element equals `a^k`.
    pub fn as_a_power(&self) -> Option<&BigInt> {
        (self.texp == 0 && self.dpow == 0).then_some(&self.num)
    }

    /// Canonical key `texp:num:dpow`.
    pub fn key(&self) -> String {
        format!("{}:{}:{}", self.texp, self.num, self.dpow)
    }

    /// Inverse of [`BsElement::key`]; checks normalization against `q`.
    pub fn from_key(key: &str, params: &BsParams) -> Result<Self> {
        let bad = || Error::CacheFormat(format!("bad BS key '{key}'"));
        let mut parts = key.split(':');
        let texp: i64 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let num: BigInt = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let dpow: u32 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let g = params.normalized(texp, num, dpow);
        if g.dpow != dpow {
            return Err(bad());
        }
        Ok(g)
    }

    pub fn abs_num_is_one(&self) -> bool {
        self.num.abs().is_one()
    }
}

impl fmt::Display for BsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// `BS(1,q)` with generators `a, t` as a ball-engine model.
impl GroupModel for BsParams {
    type Elem = BsElement;

    fn identity(&self) -> BsElement {
        BsElement::identity()
    }

    fn letters(&self) -> Vec<Letter> {
        vec![A, A.inverse(), T, T.inverse()]
    }

    fn mul_letter(&self, g: &BsElement, l: Letter) -> BsElement {
        BsParams::mul_letter(self, g, l)
    }

    fn mul(&self, g: &BsElement, h: &BsElement) -> BsElement {
        BsParams::mul(self, g, h)
    }

    fn inv(&self, g: &BsElement) -> BsElement {
        BsParams::inv(self, g)
    }

    fn key(&self, g: &BsElement) -> String {
        g.key()
    }

    fn parse_key(&self, key: &str) -> Result<BsElement> {
        BsElement::from_key(key, self)
    }

    fn descriptor(&self) -> String {
        BsParams::descriptor(self)
    }

    fn alphabet(&self) -> crate::words::GenAlphabet {
        crate::words::GenAlphabet::bs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32) -> BsParams {
        BsParams::new(q).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(p(2).c_q(), 3);
        assert_eq!(p(3).c_q(), 2);
        assert_eq!(p(7).c_q(), 4);
        assert_eq!(p(8).c_q(), 5);
        assert!(BsParams::new(1).is_err());
        assert!(BsParams::new(257).is_err());
    }

    #[test]
    fn relator_is_trivial() {
        for q in 2..12 {
            let w = Word::bs(&format!("t a T a^-{q}"));
            assert!(p(q).eval(&w).is_identity(), "q={q}");
            assert_eq!(p(q).eval(&Word::bs("t a T")), p(q).a_pow(q));
        }
    }

    #[test]
    fn eval_examples() {
        let g = p(2);
        assert_eq!(g.eval(&Word::bs("t a^3 T")).key(), "0:6:0");
        assert_eq!(g.eval(&Word::bs("T a t")).key(), "0:1:1");
        assert_eq!(g.eval(&Word::empty()).key(), "0:0:0");
        assert_eq!(g.eval(&Word::bs("a^5")).key(), "0:5:0");
        assert_eq!(g.eval(&Word::bs("a a")), BsElement { texp: 0, num: 2.into(), dpow: 0 });
    }

    #[test]
    fn inverses() {
        let g = p(2);
        let t = g.eval(&Word::bs("t"));
        assert_eq!(g.inv(&t).key(), "-1:0:0");
        assert_eq!(g.inv(&BsElement::identity()), BsElement::identity());
        assert_eq!(g.inv(&g.a_pow(1)).key(), "0:-1:0");
        let x = g.eval(&Word::bs("T a T T a t a"));
        assert!(g.mul(&x, &g.inv(&x)).is_identity());
        assert!(g.mul(&g.inv(&x), &x).is_identity());
    }

    #[test]
    fn keys_round_trip() {
        let g = p(3);
        let x = g.eval(&Word::bs("T a T a^2 t"));
        assert_eq!(BsElement::from_key(&x.key(), &g).unwrap(), x);
        assert!(BsElement::from_key("0:3:1", &g).is_err());
        assert!(BsElement::from_key("0:3", &g).is_err());
    }
}
