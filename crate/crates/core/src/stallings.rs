//! Stallings' group
//! `S = ⟨a,b,c,d,s | [a,c]=[a,d]=[b,c]=[b,d]=1, s commutes with a⁻¹b, a⁻¹c, a⁻¹d⟩`.
//!
//! `S` is an HNN extension of `G = F(a,b) × F(c,d)` whose stable letter
//! centralizes `H`, the exponent-sum-zero subgroup of `G`. `H` is normal and
//! `S/H` is free on the images of `a` and `s`, so an element is stored as a
//! reduced word `W` over `{a, s}` together with `h ∈ H`, meaning `W · h`.

use std::fmt;

use serde::Serialize;

use crate::ball::{build_ball, BridgeScratch, GroupModel};
use crate::error::{Error, Result};
use crate::words::{GenAlphabet, Letter, Word};

pub const SA: Letter = Letter::new(0, false);
pub const SB: Letter = Letter::new(1, false);
pub const SC: Letter = Letter::new(2, false);
pub const SD: Letter = Letter::new(3, false);
pub const SS: Letter = Letter::new(4, false);

/// An element of `G = F(a,b) × F(c,d)`; both components freely reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GElement {
    pub u: Word,
    pub v: Word,
}

impl GElement {
    pub fn identity() -> Self {
        GElement::default()
    }

    /// Splits a word over `{a,b,c,d}` into its two free factors.
    pub fn from_word(w: &Word) -> Result<Self> {
        let mut u = Word::empty();
        let mut v = Word::empty();
        for &l in w.letters() {
            match l.gen {
                0 | 1 => u.push(l),
                2 | 3 => v.push(l),
                _ => return Err(Error::InvalidParams("stable letter in a G-word".into())),
            }
        }
        Ok(GElement { u: u.free_reduce(), v: v.free_reduce() })
    }

    pub fn mul(&self, other: &GElement) -> GElement {
        GElement { u: self.u.concat(&other.u).free_reduce(), v: self.v.concat(&other.v).free_reduce() }
    }

    pub fn inv(&self) -> GElement {
        GElement { u: self.u.inverse(), v: self.v.inverse() }
    }

    /// `a^{-k} · self · a^k`.
    fn conj_by_a(&self, k: i64) -> GElement {
        let u = Word::power(SA, -k).concat(&self.u).concat(&Word::power(SA, k)).free_reduce();
        GElement { u, v: self.v.clone() }
    }

    pub fn exp_sum(&self) -> i64 {
        self.u.exp_sum() + self.v.exp_sum()
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_empty() && self.v.is_empty()
    }
}

/// Geodesic length in the Cayley graph of `G` over `{a,b,c,d}`.
pub fn lambda_length(g: &GElement) -> u64 {
    (g.u.free_reduce().len() + g.v.free_reduce().len()) as u64
}

/// Canonical form `W · h`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StallingsElement {
    pub quotient: Word,
    pub hpart: GElement,
}

impl StallingsElement {
    pub fn identity() -> Self {
        StallingsElement::default()
    }

    pub fn is_identity(&self) -> bool {
        self.quotient.is_empty() && self.hpart.is_identity()
    }

    pub fn key(&self) -> String {
        let al = GenAlphabet::stallings();
        format!("{}|{}|{}", self.quotient.to_text(&al), self.hpart.u.to_text(&al), self.hpart.v.to_text(&al))
    }

    pub fn from_key(key: &str) -> Result<Self> {
        let bad = || Error::CacheFormat(format!("bad Stallings key '{key}'"));
        let al = GenAlphabet::stallings();
        let parts: Vec<&str> = key.split('|').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let parse = |s: &str| Word::parse(s, &al).map_err(|_| bad());
        let (w, u, v) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        let gens_ok = |w: &Word, allowed: &[u8]| w.letters().iter().all(|l| allowed.contains(&l.gen));
        if !gens_ok(&w, &[0, 4]) || !gens_ok(&u, &[0, 1]) || !gens_ok(&v, &[2, 3]) {
            return Err(bad());
        }
        if !w.is_reduced() || !u.is_reduced() || !v.is_reduced() || u.exp_sum() + v.exp_sum() != 0 {
            return Err(bad());
        }
        Ok(StallingsElement { quotient: w, hpart: GElement { u, v } })
    }

    /// The exponent `k` when the quotient word is `a^k`.
    fn quotient_a_power(&self) -> Option<i64> {
        self.quotient.letters().iter().all(|l| l.gen == 0).then(|| self.quotient.exp_sum())
    }

    /// The element as a member of `G`, when it lies there.
    pub fn as_g(&self) -> Option<GElement> {
        let k = self.quotient_a_power()?;
        Some(GElement::from_word(&Word::power(SA, k)).expect("a-power").mul(&self.hpart))
    }
}

impl fmt::Display for StallingsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Stallings' group with generators `a, b, c, d, s`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stallings;

/// The seven defining relators.
pub fn relators() -> Vec<Word> {
    ["a c A C", "a d A D", "b c B C", "b d B D", "s A b S B a", "s A c S C a", "s A d S D a"]
        .iter()
        .map(|r| Word::parse(r, &GenAlphabet::stallings()).expect("relator literal"))
        .collect()
}

fn push_reduced(w: &Word, l: Letter) -> Word {
    let mut out = w.clone();
    if out.letters().last() == Some(&l.inverse()) {
        out = out.prefix(out.len() - 1);
    } else {
        out.push(l);
    }
    out
}

impl Stallings {
    pub fn mul_letter(&self, g: &StallingsElement, l: Letter) -> StallingsElement {
        let e = l.sign();
        match l.gen {
            4 => StallingsElement { quotient: push_reduced(&g.quotient, l), hpart: g.hpart.clone() },
            0 => StallingsElement { quotient: push_reduced(&g.quotient, l), hpart: g.hpart.conj_by_a(e) },
            _ => {
                // y^e = a^e · (a^{-e} y^e) with the second factor in H.
                let tail = GElement::from_word(&Word::from_letters(vec![Letter::new(0, e < 0).inverse(), l]))
                    .expect("G letters");
                StallingsElement {
                    quotient: push_reduced(&g.quotient, Letter::new(0, e < 0)),
                    hpart: g.hpart.conj_by_a(e).mul(&tail),
                }
            }
        }
    }

    pub fn mul(&self, g: &StallingsElement, h: &StallingsElement) -> StallingsElement {
        let mut out = h.quotient.letters().iter().fold(g.clone(), |acc, &l| self.mul_letter(&acc, l));
        out.hpart = out.hpart.mul(&h.hpart);
        out
    }

    pub fn inv(&self, g: &StallingsElement) -> StallingsElement {
        let start = StallingsElement { quotient: Word::empty(), hpart: g.hpart.inv() };
        g.quotient.inverse().letters().iter().fold(start, |acc, &l| self.mul_letter(&acc, l))
    }

    pub fn eval(&self, w: &Word) -> StallingsElement {
        w.letters().iter().fold(StallingsElement::identity(), |g, &l| self.mul_letter(&g, l))
    }
}

/// Canonical form of a word over `{a,b,c,d,s}`.
pub fn st_eval(w: &Word) -> StallingsElement {
    Stallings.eval(w)
}

pub fn st_mul(g: &StallingsElement, h: &StallingsElement) -> StallingsElement {
    Stallings.mul(g, h)
}

pub fn in_h(g: &StallingsElement) -> bool {
    g.quotient.is_empty()
}

/// Geodesic length for elements of `G`, `sG` and `Gs`; `None` otherwise.
pub fn gamma_length_special(g: &StallingsElement) -> Option<u64> {
    if let Some(x) = g.as_g() {
        return Some(lambda_length(&x));
    }
    let q = g.quotient.letters();
    let is_a = |ls: &[Letter]| ls.iter().all(|l| l.gen == 0);
    let rest = if q.first() == Some(&SS) && is_a(&q[1..]) {
        Word::from_letters(q[1..].to_vec())
    } else if q.last() == Some(&SS) && is_a(&q[..q.len() - 1]) {
        Word::from_letters(q[..q.len() - 1].to_vec())
    } else {
        return None;
    };
    let g2 = StallingsElement { quotient: rest, hpart: g.hpart.clone() };
    g2.as_g().map(|x| 1 + lambda_length(&x))
}

impl GroupModel for Stallings {
    type Elem = StallingsElement;

    fn identity(&self) -> StallingsElement {
        StallingsElement::identity()
    }

    fn letters(&self) -> Vec<Letter> {
        GenAlphabet::stallings().signed_letters()
    }

    fn mul_letter(&self, g: &StallingsElement, l: Letter) -> StallingsElement {
        Stallings::mul_letter(self, g, l)
    }

    fn mul(&self, g: &StallingsElement, h: &StallingsElement) -> StallingsElement {
        Stallings::mul(self, g, h)
    }

    fn inv(&self, g: &StallingsElement) -> StallingsElement {
        Stallings::inv(self, g)
    }

    fn key(&self, g: &StallingsElement) -> String {
        g.key()
    }

    fn parse_key(&self, key: &str) -> Result<StallingsElement> {
        StallingsElement::from_key(key)
    }

    fn descriptor(&self) -> String {
        "stallings".into()
    }

    fn alphabet(&self) -> GenAlphabet {
        GenAlphabet::stallings()
    }
}

/// Outcome of the non-MAC witness check for `S`.
#[derive(Debug, Clone, Serialize)]
pub struct StallingsWitnessReport {
    pub n: u32,
    pub radius: u32,
    pub alpha: String,
    pub beta: String,
    pub alpha_length: Option<u64>,
    pub beta_length: Option<u64>,
    pub lengths_ok: bool,
    pub distance_two: bool,
    pub relators_even_and_trivial: bool,
    pub ball_size: usize,
    pub min_bridge: Option<u32>,
    pub bridge_bound: u32,
    pub bridge_ok: bool,
}

impl StallingsWitnessReport {
    pub fn passed(&self) -> bool {
        self.lengths_ok && self.distance_two && self.relators_even_and_trivial && self.bridge_ok
    }
}

/// `α = b^{-(n+1)} a^{n+1}`.
pub fn witness_alpha(n: u32) -> Word {
    let mut w = Word::power(SB, -(n as i64 + 1));
    w.push_power(SA, n as i64 + 1);
    w
}

/// `β = s b^{-(n+1)} a^n`.
pub fn witness_beta(n: u32) -> Word {
    let mut w = Word::power(SS, 1);
    w.push_power(SB, -(n as i64 + 1));
    w.push_power(SA, n as i64);
    w
}

/// Checks the witness pair of radius `2n+2`: both on the sphere, at distance
/// 2, and no bridge inside the ball shorter than `4n+4`.
pub fn verify_stallings_witness(n: u32, cap: usize) -> Result<StallingsWitnessReport> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let al = GenAlphabet::stallings();
    let radius = 2 * n + 2;
    let (alpha_w, beta_w) = (witness_alpha(n), witness_beta(n));
    let (alpha, beta) = (st_eval(&alpha_w), st_eval(&beta_w));
    let alpha_length = gamma_length_special(&alpha);
    let beta_length = gamma_length_special(&beta);
    let lengths_ok = alpha_length == Some(radius as u64) && beta_length == Some(radius as u64);

    let diff = st_mul(&Stallings.inv(&alpha), &beta);
    let distance_two = diff == st_eval(&Word::parse("s A", &al)?) && !diff.is_identity() && !adjacent(&alpha, &beta);

    let relators_even_and_trivial = relators().iter().all(|r| r.len() % 2 == 0 && st_eval(r).is_identity());

    let ball = build_ball(&Stallings, radius, cap)?;
    let (xi, yi) = match (ball.index_of(&alpha), ball.index_of(&beta)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::NotInBall),
    };
    let mut scratch = BridgeScratch::new(ball.len());
    let min_bridge = ball.bridge_distances(&mut scratch, xi, &[yi], radius, None)[0];
    let bridge_bound = 4 * n + 4;
    let bridge_ok = min_bridge.is_none_or(|d| d >= bridge_bound);
    Ok(StallingsWitnessReport {
        n,
        radius,
        alpha: alpha_w.to_text(&al),
        beta: beta_w.to_text(&al),
        alpha_length,
        beta_length,
        lengths_ok,
        distance_two,
        relators_even_and_trivial,
        ball_size: ball.len(),
        min_bridge,
        bridge_bound,
        bridge_ok,
    })
}

/// True when `β = α · x` for a single generator letter `x`.
fn adjacent(alpha: &StallingsElement, beta: &StallingsElement) -> bool {
    Stallings.letters().iter().any(|&l| Stallings.mul_letter(alpha, l) == *beta)
}
