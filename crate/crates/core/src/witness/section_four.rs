//! Witnesses against the stronger convexity conditions in `BS(1,q)`:
//! sphere points at distance 2 whose bridges inside the ball grow linearly
//! (`q = 2`) or must pass through the identity (`q ≥ 7`), and the bound on
//! powers `a^m` reachable in a ball.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{build_ball, BridgeScratch};
use crate::bs::BsParams;
use crate::error::{Error, Result};
use crate::geodesic::{geodesic_length, is_geodesic};
use crate::words::{GenAlphabet, Word, A, T};

/// A pair of sphere points in `B(R)` of `BS(1,q)`.
#[derive(Debug, Clone, Serialize)]
pub struct SectionFourWitness {
    pub q: u32,
    pub n: u32,
    pub radius: u32,
    pub w: String,
    pub u: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionFourReport {
    pub witness: SectionFourWitness,
    /// `(word, is geodesic)` for `w`, `wa`, `wa⁻¹`, `wt⁻¹`, `u`.
    pub geodesics: Vec<(String, bool)>,
    pub distance_two: bool,
    pub ball_size: usize,
    /// Shortest path from `w` to `u` inside `B(R)`.
    pub min_bridge: Option<u32>,
    /// Same, with the identity removed.
    pub min_bridge_avoiding_identity: Option<u32>,
    pub bound: String,
    pub bound_ok: bool,
}

impl SectionFourReport {
    pub fn passed(&self) -> bool {
        self.geodesics.iter().all(|g| g.1) && self.distance_two && self.bound_ok
    }
}

fn witness_words(q: u32, n: u32) -> (Word, Word, u32) {
    let n = n as i64;
    let top = if q == 2 { 2 } else { 1 };
    let mut w = Word::power(T, n);
    w.push_power(A, top);
    w.push_power(T, -n);
    let mut u = Word::power(A, 1);
    u.push_power(T, n);
    u.push_power(A, top);
    u.push_power(T, -(n - 1));
    let radius = w.len() as u32;
    (w, u, radius)
}

fn examine(p: &BsParams, n: u32, cap: usize, with_avoid: bool) -> Result<SectionFourReport> {
    if n < 1 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let al = GenAlphabet::bs();
    let (w, u, radius) = witness_words(p.q(), n);
    let geodesics = ["", "a", "A", "T"]
        .iter()
        .map(|s| w.concat(&Word::bs(s)))
        .chain(std::iter::once(u.clone()))
        .map(|x| (x.to_text(&al), is_geodesic(&x, p)))
        .collect();
    let (gw, gu) = (p.eval(&w), p.eval(&u));
    let gamma = Word::bs("a t");
    let distance_two = p.mul(&gw, &p.eval(&gamma)) == gu && geodesic_length(&p.mul(&p.inv(&gw), &gu), p) == 2;

    let ball = build_ball(p, radius, cap)?;
    let (xi, yi) = match (ball.index_of(&gw), ball.index_of(&gu)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::NotInBall),
    };
    let mut scratch = BridgeScratch::new(ball.len());
    let min_bridge = ball.bridge_distances(&mut scratch, xi, &[yi], radius, None)[0];
    let min_bridge_avoiding_identity = if with_avoid {
        let id = ball.index_of(&p.identity()).expect("identity is in every ball");
        ball.bridge_distances(&mut scratch, xi, &[yi], radius, Some(id))[0]
    } else {
        None
    };
    let witness = SectionFourWitness { q: p.q(), n, radius, w: w.to_text(&al), u: u.to_text(&al) };
    Ok(SectionFourReport {
        witness,
        geodesics,
        distance_two,
        ball_size: ball.len(),
        min_bridge,
        min_bridge_avoiding_identity,
        bound: String::new(),
        bound_ok: false,
    })
}

/// `q = 2`, `w = t^n a² t^{-n}`, `u = a t^n a² t^{-(n-1)}`, `R = 2n+2`:
/// the bridge is longer than `R − 8`.
pub fn verify_notpac(n: u32, cap: usize) -> Result<SectionFourReport> {
    let p = BsParams::new(2)?;
    let mut rep = examine(&p, n, cap, false)?;
    let r = rep.witness.radius;
    rep.bound = format!("min_bridge > R - 8 = {}", r as i64 - 8);
    rep.bound_ok = rep.min_bridge.is_some_and(|l| l as i64 > r as i64 - 8);
    Ok(rep)
}

/// `q ≥ 7`, `w = t^n a t^{-n}`, `u = a t^n a t^{-(n-1)}`, `R = 2n+1`: the
/// shortest bridge has length `2R` and every shortest bridge meets the
/// identity.
pub fn verify_bs1q_notmac(q: u32, n: u32, cap: usize) -> Result<SectionFourReport> {
    if q < 7 {
        return Err(Error::InvalidParams(format!("q must be at least 7, got {q}")));
    }
    let p = BsParams::new(q)?;
    let mut rep = examine(&p, n, cap, true)?;
    let two_r = 2 * rep.witness.radius;
    rep.bound = format!("min_bridge = 2R = {two_r}, and longer without the identity");
    rep.bound_ok = rep.min_bridge == Some(two_r) && rep.min_bridge_avoiding_identity.is_none_or(|l| l > two_r);
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundingReport {
    pub q: u32,
    pub n: u32,
    pub radius: u32,
    /// Every `m > 0` up to this value was examined.
    pub scanned_to: u64,
    pub reachable: usize,
    pub max_reachable: u64,
    /// The exceptional power allowed above the bound.
    pub exceptional: u64,
    pub bound: u64,
    /// Reachable `m` above `bound`.
    pub above_bound: Vec<u64>,
    pub passed: bool,
}

/// Powers `a^m` in `B(R)`: either `m` is the exceptional power (`2^{n+1}`
/// for `q = 2`, `q^n` for `q ≥ 7`) or `m` is at most `2^n + 2^{n-1} + 2^{n-2}`
/// (resp. `3q^{n-1}`).
///
/// A word with top height `h` reaches at most `(R − 2h) q^h ≤ q^{n+1}`,
/// so scanning to `q^{n+1}` is exhaustive.
pub fn verify_boundingm(n: u32, q: u32) -> Result<BoundingReport> {
    let p = BsParams::new(q)?;
    let (radius, exceptional, bound) = match q {
        2 if n >= 2 => (2 * n + 2, 1u64 << (n + 1), (1u64 << n) + (1 << (n - 1)) + (1 << (n - 2))),
        q if q >= 7 && n >= 1 => (2 * n + 1, (q as u64).pow(n), 3 * (q as u64).pow(n - 1)),
        _ => {
            return Err(Error::InvalidParams(format!("need q = 2 with n ≥ 2, or q ≥ 7 with n ≥ 1 (got q={q}, n={n})")))
        }
    };
    let scanned_to =
        (q as u64).checked_pow(n + 1).filter(|&m| m <= 1 << 32).ok_or(Error::ResourceLimit { cap: 1 << 32, radius })?;
    let reach: Vec<u64> = (1..=scanned_to)
        .into_par_iter()
        .filter(|&m| geodesic_length(&p.a_pow(BigInt::from(m)), &p) <= radius as u64)
        .collect();
    let above_bound: Vec<u64> = reach.iter().copied().filter(|&m| m > bound).collect();
    let passed = above_bound.iter().all(|&m| m == exceptional);
    Ok(BoundingReport {
        q,
        n,
        radius,
        scanned_to,
        reachable: reach.len(),
        max_reachable: reach.last().copied().unwrap_or(0),
        exceptional,
        bound,
        above_bound,
        passed,
    })
}
