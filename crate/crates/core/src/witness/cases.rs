//! Bridging paths for close pairs of sphere points in `BS(1,2)`.
//!
//! Each case id fixes the classes of the two geodesics `w`, `u` and the
//! short connector `γ` with `w γ = u`; the builder produces an instance and
//! the path `δ` prescribed for that case, and [`verify_case`] checks the
//! instance exactly with [`geodesic_length`].

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bs::{BsElement, BsParams};
use crate::error::{Error, Result};
use crate::geodesic::{geodesic_length, is_geodesic, normal_form, GeodesicNormalForm, Orientation, Walk};
use crate::words::{GenAlphabet, Word, A, T};

/// Cases with an explicit bridging path.
pub const CONSTRUCTIVE_CASES: [&str; 16] = [
    "4", "6", "7.2", "7.3", "7.4", "8.1", "9.1.2", "9.2", "10.1", "10.2.2", "10.2.3", "10.2.4", "10.3.1.1", "10.3.1.2",
    "10.3.3.1", "10.3.3.2",
];

/// Cases handled by rewriting into another case.
pub const REDUCTION_CASES: [&str; 4] = ["5", "8.2", "9.1.1", "10.2.1"];

const MAX_ATTEMPTS: usize = 4000;
const MAX_FILLER_A: usize = 20;

/// Parameters a caller may pin; anything left `None` is drawn at random.
#[derive(Debug, Clone, Default)]
pub struct CaseParams {
    /// Main size parameter: `p` in 8.x, 9.2, 10.3; `X`-block height elsewhere.
    pub p: Option<i64>,
    pub l: Option<i64>,
    pub f1: Option<i64>,
    pub k: Option<i64>,
    pub m: Option<i64>,
    pub i: Option<i64>,
    pub j: Option<i64>,
    pub i1: Option<i64>,
    pub i2: Option<i64>,
    pub v: Option<Word>,
    pub w2: Option<Word>,
    pub w3: Option<Word>,
}

/// A constructed instance: geodesics `w`, `u` of length `r`, the connector
/// `γ` and the proposed path `δ`.
#[derive(Debug, Clone)]
pub struct CaseWitness {
    pub case: String,
    pub params: BTreeMap<String, Value>,
    pub w: Word,
    pub u: Word,
    pub gamma: Word,
    pub delta: Word,
    pub r: usize,
    /// Length the construction is supposed to give `δ`, where one is stated.
    pub claimed_length: Option<usize>,
    pub reduces_to: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseChecks {
    pub geodesic: bool,
    pub distance: bool,
    pub endpoint: bool,
    pub length: bool,
    pub in_ball: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub params: BTreeMap<String, Value>,
    pub checks: CaseChecks,
    /// First prefix length of `δ` whose endpoint leaves `B(r)`.
    pub first_violation: Option<usize>,
    pub r: usize,
    pub delta_length: usize,
    pub claimed_length: Option<usize>,
    pub reduces_to: Option<String>,
    pub w: String,
    pub u: String,
    pub gamma: String,
    pub delta: String,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        let c = self.checks;
        c.geodesic && c.distance && c.endpoint && c.length && c.in_ball
    }

    pub fn claim_holds(&self) -> bool {
        self.claimed_length.is_none_or(|l| l == self.delta_length)
    }
}

fn q2() -> BsParams {
    BsParams::new(2).expect("q = 2")
}

/// Runs the five checks on an instance.
pub fn verify_case(cw: &CaseWitness) -> CaseReport {
    let p = q2();
    let r = cw.r;
    let gw = p.eval(&cw.w);
    let gu = p.eval(&cw.u);
    let glen = |g: &BsElement| geodesic_length(g, &p);

    let geodesic = cw.w.len() == r && cw.u.len() == r && is_geodesic(&cw.w, &p) && is_geodesic(&cw.u, &p);
    let d = glen(&p.mul(&p.inv(&gw), &gu));
    let distance = (1..=2).contains(&d) && cw.gamma.len() <= 2 && p.mul(&gw, &p.eval(&cw.gamma)) == gu;
    let endpoint = p.eval(&cw.delta) == p.eval(&cw.gamma);
    let length = cw.delta.len() + 2 <= 2 * r;

    let mut first_violation = None;
    let mut g = gw.clone();
    for (idx, &l) in cw.delta.letters().iter().enumerate() {
        g = p.mul_letter(&g, l);
        if glen(&g) > r as u64 {
            first_violation = Some(idx + 1);
            break;
        }
    }
    let al = GenAlphabet::bs();
    CaseReport {
        case: cw.case.clone(),
        params: cw.params.clone(),
        checks: CaseChecks { geodesic, distance, endpoint, length, in_ball: first_violation.is_none() },
        first_violation,
        r,
        delta_length: cw.delta.len(),
        claimed_length: cw.claimed_length,
        reduces_to: cw.reduces_to.clone(),
        w: cw.w.to_text(&al),
        u: cw.u.to_text(&al),
        gamma: cw.gamma.to_text(&al),
        delta: cw.delta.to_text(&al),
    }
}

/// Builds an instance of `case`, drawing unpinned parameters from `seed`.
/// Random sizes come from `size`.
pub fn build_case(case: &str, params: &CaseParams, seed: u64, size: RangeInclusive<i64>) -> Result<CaseWitness> {
    if !CONSTRUCTIVE_CASES.contains(&case) && !REDUCTION_CASES.contains(&case) {
        return Err(Error::InvalidParams(format!("unknown case id '{case}'")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..MAX_ATTEMPTS {
        let mut d = Draw { fixed: params, rng: &mut rng, size: size.clone(), params: BTreeMap::new(), random: false };
        match attempt(case, &mut d) {
            Ok(mut cw) => {
                cw.params = d.params;
                return Ok(cw);
            }
            Err(why) if !d.random => return Err(Error::InvalidParams(format!("case {case}: {why}"))),
            Err(why) => last = why,
        }
    }
    Err(Error::InvalidParams(format!("case {case}: no valid instance in {MAX_ATTEMPTS} draws (last: {last})")))
}

/// Draws parameters, remembering which ones were random.
struct Draw<'a> {
    fixed: &'a CaseParams,
    rng: &'a mut ChaCha8Rng,
    size: RangeInclusive<i64>,
    params: BTreeMap<String, Value>,
    random: bool,
}

type Attempt<T> = std::result::Result<T, String>;

fn require(cond: bool, what: &str) -> Attempt<()> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

impl Draw<'_> {
    fn int(&mut self, name: &str, given: Option<i64>, pick: impl FnOnce(&mut ChaCha8Rng) -> i64) -> i64 {
        let v = match given {
            Some(v) => v,
            None => {
                self.random = true;
                pick(self.rng)
            }
        };
        self.params.insert(name.to_string(), json!(v));
        v
    }

    fn sized(&mut self, name: &str, given: Option<i64>, min: i64) -> i64 {
        let (lo, hi) = (*self.size.start(), *self.size.end());
        let (lo, hi) = (lo.max(min), hi.max(min));
        self.int(name, given, |r| r.gen_range(lo..=hi))
    }

    fn sign(&mut self, name: &str, given: Option<i64>) -> i64 {
        self.int(name, given, |r| if r.gen() { 1 } else { -1 })
    }

    fn small(&mut self, name: &str, range: RangeInclusive<i64>) -> i64 {
        self.int(name, None, |r| r.gen_range(range))
    }

    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        self.random = true;
        items[self.rng.gen_range(0..items.len())].clone()
    }

    fn word(&mut self, name: &str, given: Option<&Word>, make: impl FnOnce(&mut ChaCha8Rng) -> Word) -> Word {
        let w = match given {
            Some(w) => w.clone(),
            None => {
                self.random = true;
                make(self.rng)
            }
        };
        self.params.insert(name.to_string(), json!(w.to_text(&GenAlphabet::bs())));
        w
    }

    fn digit(&mut self) -> i64 {
        self.random = true;
        self.rng.gen_range(-1..=1)
    }

    fn digits(&mut self, n: i64) -> Vec<i64> {
        (0..n).map(|_| self.digit()).collect()
    }

    /// `t^h a^s (t⁻¹ a^{k})^h` with `2 ≤ |s| ≤ 3` and at most 20 nonzero
    /// digits `k`, no two adjacent (dense digit strings are rarely geodesic).
    fn xblock(&mut self, h: i64) -> Word {
        self.random = true;
        let s = self.rng.gen_range(2..=3) * if self.rng.gen() { 1 } else { -1 };
        let mut ks = vec![0; h as usize];
        let mut placed = 0;
        for _ in 0..h.min(MAX_FILLER_A as i64) {
            let at = self.rng.gen_range(0..h as usize);
            let free = |i: usize| ks.get(i).is_none_or(|&k| k == 0);
            if free(at) && (at == 0 || free(at - 1)) && free(at + 1) && placed < MAX_FILLER_A {
                ks[at] = if self.rng.gen() { 1 } else { -1 };
                placed += 1;
            }
        }
        let mut w = tp(h).concat(&ap(s));
        for k in ks {
            w = w.concat(&tp(-1)).concat(&ap(k));
        }
        w
    }
}

fn ap(k: i64) -> Word {
    Word::power(A, k)
}

fn tp(k: i64) -> Word {
    Word::power(T, k)
}

fn cat(parts: &[&Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, w| acc.concat(w))
}

/// A word `a^{n_0} t a^{n_1} … t a^{n_σ}` with `σ` letters `t` and between
/// `min_a` and 20 letters `a^{±1}` in distinct slots.
pub fn sparse_filler(rng: &mut impl Rng, sigma: i64, min_a: usize) -> Word {
    let slots = sigma as usize + 1;
    let hi = MAX_FILLER_A.min(slots).max(min_a.min(slots));
    let count = rng.gen_range(min_a.min(hi)..=hi);
    let chosen = sample(rng, slots, count).into_vec();
    let mut w = Word::empty();
    for slot in 0..slots {
        if chosen.contains(&slot) {
            w = w.concat(&ap(if rng.gen() { 1 } else { -1 }));
        }
        if slot < sigma as usize {
            w = w.concat(&tp(1));
        }
    }
    w
}

fn gammas_ep() -> Vec<Word> {
    ["a", "A", "a^2", "A^2", "t", "t^2", "t a", "t A", "a t", "A t"].iter().map(|s| Word::bs(s)).collect()
}

/// Normal form of `g`, checked to be a geodesic of length `r`.
fn nf_of(g: &BsElement, orientation: Orientation, r: usize) -> Attempt<(Word, GeodesicNormalForm)> {
    let p = q2();
    require(geodesic_length(g, &p) == r as u64, "u is not on the sphere of radius l(w)")?;
    let nf = normal_form(g, &p, orientation);
    Ok((nf.render(), nf))
}

fn geodesic(w: &Word, name: &str) -> Attempt<()> {
    require(is_geodesic(w, &q2()), &format!("{name} is not geodesic"))
}

fn mul_word(w: &Word, gamma: &Word) -> BsElement {
    let p = q2();
    p.mul(&p.eval(w), &p.eval(gamma))
}

fn leading_t(w: &Word) -> usize {
    w.letters().iter().take_while(|&&l| l == T).count()
}

fn leading_t_inv(w: &Word) -> usize {
    w.letters().iter().take_while(|&&l| l == T.inverse()).count()
}

fn last_digit(nf: &GeodesicNormalForm) -> i64 {
    *nf.suffix_digits().last().expect("at least one t⁻¹")
}

fn witness(case: &str, w: Word, u: Word, gamma: Word, delta: Word) -> CaseWitness {
    let r = w.len();
    CaseWitness {
        case: case.into(),
        params: BTreeMap::new(),
        w,
        u,
        gamma,
        delta,
        r,
        claimed_length: None,
        reduces_to: None,
    }
}

fn attempt(case: &str, d: &mut Draw) -> Attempt<CaseWitness> {
    match case {
        "4" | "5" => case_4(d, case == "5"),
        "6" => case_6(d),
        "7.2" | "7.3" | "7.4" => case_7(d, case),
        "8.1" => case_8_1(d),
        "8.2" => case_8_2(d),
        "9.1.1" | "9.1.2" => case_9_1(d, case),
        "9.2" => case_9_2(d),
        "10.1" => case_10_1(d),
        "10.2.1" | "10.2.2" | "10.2.3" | "10.2.4" => case_10_2(d, case),
        "10.3.1.1" | "10.3.1.2" => case_10_3_1(d, case == "10.3.1.1"),
        "10.3.3.1" | "10.3.3.2" => case_10_3_3(d, case == "10.3.3.1"),
        _ => unreachable!("ids are checked by build_case"),
    }
}

/// Both in `X` (or `u ∈ XN` for the reduction 5): back along `w` to its
/// first letter `t`, then forward along `u`.
fn case_4(d: &mut Draw, from_5: bool) -> Attempt<CaseWitness> {
    let h = d.sized("p", d.fixed.p, 1);
    let w = d.xblock(h);
    geodesic(&w, "w")?;
    let gamma = if from_5 {
        d.pick(&["T", "T^2", "T a", "T A", "a T", "A T"].map(Word::bs))
    } else {
        d.pick(&["a", "A", "a^2", "A^2"].map(Word::bs))
    };
    let r = w.len();
    let (u, nf) = nf_of(&mul_word(&w, &gamma), Orientation::Pn, r)?;
    require(nf.class == if from_5 { 2 } else { 1 } && nf.xblock().is_some(), "u has the wrong class")?;
    let (hw, hu) = (leading_t(&w), leading_t(&u));
    require(hw >= 1 && hu >= 1, "normal forms do not start with t")?;
    let delta = cat(&[&w.suffix(r - hw).inverse(), &tp(-(hw as i64 - 1)), &tp(hu as i64 - 1), &u.suffix(r - hu)]);
    let mut cw = witness(if from_5 { "5" } else { "4" }, w, u, gamma, delta);
    cw.claimed_length = Some(2 * r - 2);
    if from_5 {
        cw.reduces_to = Some("4".into());
    }
    Ok(cw)
}

/// Both in `P(X)`: `w = a^i t w_1 w_0`, `u = a^j t u_1 u_0`.
fn case_6(d: &mut Draw) -> Attempt<CaseWitness> {
    let h = d.sized("p", d.fixed.p, 1);
    let f = d.small("f", 1..=3);
    let mut w = Word::empty();
    for n in d.digits(f) {
        w = cat(&[&w, &ap(n), &tp(1)]);
    }
    let x = d.xblock(h);
    let w = w.concat(&x);
    geodesic(&w, "w")?;
    let gamma = d.pick(&gammas_ep());
    let r = w.len();
    let (u, nf) = nf_of(&mul_word(&w, &gamma), Orientation::Pn, r)?;
    require(nf.class == 3, "u is not in class 3")?;
    let i: i64 = w.letters().iter().take_while(|l| l.gen == A.gen).map(|l| l.sign()).sum();
    let j = nf.prefix_digits()[0];
    let (wi, uj) = (i.unsigned_abs() as usize + 1, j.unsigned_abs() as usize + 1);
    let back = w.suffix(r - wi).inverse();
    let fwd = u.suffix(r - uj);
    d.params.insert("i".into(), json!(i));
    d.params.insert("j".into(), json!(j));
    let (delta, claimed) = if i == j {
        (back.concat(&fwd), 2 * r - 2 * wi)
    } else if i == -j && i.abs() == 1 {
        (cat(&[&back, &ap(-i), &fwd]), 2 * r - 3)
    } else {
        // the construction has nothing to offer here
        (Word::empty(), 0)
    };
    let mut cw = witness("6", w, u, gamma, delta);
    cw.claimed_length = Some(claimed);
    Ok(cw)
}

/// `δ` of subcase 7.3 for last digits `i` (of `w`), `j` (of `u`) and `γ = a^k`.
fn delta_7_3(i: i64, j: i64, k: i64) -> Option<Word> {
    if i == 0 && j.abs() == 1 && k == -j {
        Some(cat(&[&tp(1), &ap(-j), &tp(-1), &ap(j)]))
    } else if i.abs() == 1 && j == 0 && k == i {
        Some(cat(&[&ap(-i), &tp(1), &ap(i), &tp(-1)]))
    } else {
        None
    }
}

/// `w_0 (t⁻¹ a^{m})^e` with the last digit `last`.
fn class_2_word(d: &mut Draw, h: i64, e: i64, last: i64) -> Word {
    let mut w = d.xblock(h);
    let mut ms = d.digits(e);
    *ms.last_mut().expect("e ≥ 1") = last;
    for m in ms {
        w = cat(&[&w, &tp(-1), &ap(m)]);
    }
    w
}

/// Both in `(X)N`: `w = w_0 w_1 t⁻¹ a^i`, `u = u_0 u_1 t⁻¹ a^j`.
fn case_7(d: &mut Draw, case: &str) -> Attempt<CaseWitness> {
    let h = d.sized("p", d.fixed.p, 1);
    let (i, gamma) = match case {
        "7.2" => (0, d.pick(&["t^2", "t a", "t A"].map(Word::bs))),
        "7.3" => (d.int("i", d.fixed.i, |r| r.gen_range(-1..=1)), d.pick(&["a", "A"].map(Word::bs))),
        _ => (d.int("i", d.fixed.i, |r| r.gen_range(-1..=1)), d.pick(&["a^2", "A^2"].map(Word::bs))),
    };
    require(i.abs() <= 1, "|i| ≤ 1")?;
    let e = d.small("e", if case == "7.2" { 2..=4 } else { 1..=3 });
    let w = class_2_word(d, h, e, i);
    geodesic(&w, "w")?;
    let r = w.len();
    let (u, nf) = nf_of(&mul_word(&w, &gamma), Orientation::Pn, r)?;
    require(nf.class == 2, "u is not in class 2")?;
    let j = last_digit(&nf);
    if let Some(want) = d.fixed.j {
        require(j == want, "u does not end with the requested j")?;
    }
    d.params.insert("j".into(), json!(j));
    let k = gamma.gen_exp_sum(A.gen);
    let delta = match case {
        "7.2" => Some(gamma.clone()),
        "7.3" => delta_7_3(i, j, k),
        _ => {
            let k = k / 2;
            if i == 0 && j == 0 {
                Some(cat(&[&tp(1), &ap(k), &tp(-1)]))
            } else if i.abs() == 1 && (k == -i || j == i) {
                Some(gamma.clone())
            } else if i.abs() == 1 && j == -i {
                Some(cat(&[&ap(-i), &tp(1), &ap(2 * i), &tp(-1), &ap(-i)]))
            } else {
                None
            }
        }
    };
    Ok(witness(case, w, u, gamma, delta.unwrap_or_default()))
}

fn sign_of(k: i64) -> i64 {
    k.signum()
}

fn top_k(d: &mut Draw) -> Attempt<i64> {
    let k = d.int("k", d.fixed.k, |r| r.gen_range(2..=3) * if r.gen() { 1 } else { -1 });
    require((2..=3).contains(&k.abs()), "2 ≤ |k| ≤ 3")?;
    Ok(k)
}

fn delta_8_1(p: i64, s: i64, j: i64) -> Word {
    cat(&[&tp(p), &ap(-2 * s), &tp(-p), &ap(j), &tp(p), &ap(2 * s), &tp(1 - p)])
}

/// `w = t v t a^k t^{-(p+1)}`, `u = a^j t v t a^k t^{-p}`, `γ = a^j t`.
fn case_8_1(d: &mut Draw) -> Attempt<CaseWitness> {
    let p = d.sized("p", d.fixed.p, 2);
    require(p >= 2, "p ≥ 2")?;
    let k = top_k(d)?;
    let j = d.sign("j", d.fixed.j);
    require(j.abs() == 1, "|j| = 1")?;
    let v = d.word("v", d.fixed.v.as_ref(), |r| sparse_filler(r, p - 1, 0));
    require(v.sigma_t() == p - 1 && v.letters().iter().all(|l| *l != T.inverse()), "v ∈ P with σ_t(v) = p−1")?;
    let s = sign_of(k);
    let w = cat(&[&tp(1), &v, &tp(1), &ap(k), &tp(-(p + 1))]);
    let u = cat(&[&ap(j), &tp(1), &v, &tp(1), &ap(k), &tp(-p)]);
    geodesic(&w, "w")?;
    geodesic(&u, "u")?;
    let gamma = cat(&[&ap(j), &tp(1)]);
    let mut cw = witness("8.1", w, u, gamma, delta_8_1(p, s, j));
    cw.claimed_length = Some(4 * p as usize + 4);
    Ok(cw)
}

/// `γ = a^{-j} t`: `u` is replaced by `a^{-j} t w_0` and 8.1 applies.
fn case_8_2(d: &mut Draw) -> Attempt<CaseWitness> {
    let p = d.sized("p", d.fixed.p, 2);
    let k = top_k(d)?;
    let j = d.sign("j", d.fixed.j);
    require(j.abs() == 1, "|j| = 1")?;
    let v = d.word("v", d.fixed.v.as_ref(), |r| sparse_filler(r, p - 1, 0));
    require(v.sigma_t() == p - 1, "σ_t(v) = p−1")?;
    let s = sign_of(k);
    let w0 = cat(&[&v, &tp(1), &ap(k), &tp(-p)]);
    let w = cat(&[&tp(1), &w0, &tp(-1)]);
    geodesic(&w, "w")?;
    let (u0, nf) = nf_of(&mul_word(&ap(-j), &w0), Orientation::Pn, w0.len())?;
    require(nf.class == 1, "u_0 is not in class 1")?;
    let u = cat(&[&ap(j), &tp(1), &u0]);
    geodesic(&u, "u")?;
    let gamma = cat(&[&ap(-j), &tp(1)]);
    let mut cw = witness("8.2", w, u, gamma, delta_8_1(p, s, -j));
    cw.claimed_length = Some(4 * p as usize + 4);
    cw.reduces_to = Some("8.1".into());
    Ok(cw)
}

/// `w ∈ (X)N`, `u ∈ (X)NP` with `σ_t(u) ≤ 0`.
fn case_9_1(d: &mut Draw, case: &str) -> Attempt<CaseWitness> {
    let h = d.sized("p", d.fixed.p, 1);
    let e = d.small("e", 2..=4);
    let i = d.digit();
    let w = class_2_word(d, h, e, i);
    geodesic(&w, "w")?;
    let r = w.len();
    let gamma = if case == "9.1.1" {
        d.pick(&["t^2", "a t", "A t"].map(Word::bs))
    } else {
        d.pick(&["t a", "t A"].map(Word::bs))
    };
    let (u, nf) = nf_of(&mul_word(&w, &gamma), Orientation::Np, r)?;
    require(nf.class == 4 && nf.texp <= 0, "u is not in class 4 with σ_t(u) ≤ 0")?;
    if case == "9.1.1" {
        let mut cw = witness(case, w, u, gamma.clone(), gamma);
        cw.reduces_to = Some("δ = γ".into());
        return Ok(cw);
    }
    let k = gamma.gen_exp_sum(A.gen);
    d.params.insert("f".into(), json!(nf.f()));
    let delta = after_shared_t(&w, &u, k, |wi, vj| delta_7_3(wi, vj, k));
    Ok(witness(case, w, u, gamma, delta))
}

/// Shared tail of 9.1.2 and 10.2.3: `γ = t a^k`, `v = u(r−1) a^{-k}`.
/// Either `v` is closer to the identity and `δ = a^{2k} t`, or `δ` detours
/// from `w` to `v` first.
fn after_shared_t(w: &Word, u: &Word, k: i64, detour: impl Fn(i64, i64) -> Option<Word>) -> Word {
    let p = q2();
    let r = w.len();
    let v = p.mul(&p.eval(&u.prefix(r - 1)), &p.eval(&ap(-k)));
    if geodesic_length(&v, &p) < r as u64 {
        return cat(&[&ap(2 * k), &tp(1)]);
    }
    let nf_w = normal_form(&p.eval(w), &p, Orientation::Np);
    let nf_v = normal_form(&v, &p, Orientation::Np);
    let last = |nf: &GeodesicNormalForm| nf.suffix_digits().last().copied().unwrap_or(i64::MAX);
    match detour(last(&nf_w), last(&nf_v)) {
        Some(first) => cat(&[&first, &ap(k), &tp(1)]),
        None => Word::empty(),
    }
}

/// `w = w_0 t⁻¹ a^i`, `w_0 = v t a^k t^{-(p+1)}`, `u = t⁻¹ a^i t v t a^k t^{-p}`, `γ = t²`.
fn case_9_2(d: &mut Draw) -> Attempt<CaseWitness> {
    let p = d.sized("p", d.fixed.p, 10);
    require(p > 9, "σ_t(v) = p > 9")?;
    let k = top_k(d)?;
    let i = d.sign("i", d.fixed.i);
    require(i.abs() == 1, "|i| = 1")?;
    let v = d.word("v", d.fixed.v.as_ref(), |r| sparse_filler(r, p, 0));
    require(v.sigma_t() == p, "σ_t(v) = p")?;
    let s = sign_of(k);
    let w0 = cat(&[&v, &tp(1), &ap(k), &tp(-(p + 1))]);
    let w = cat(&[&w0, &tp(-1), &ap(i)]);
    let u = cat(&[&tp(-1), &ap(i), &tp(1), &v, &tp(1), &ap(k), &tp(-p)]);
    geodesic(&w, "w")?;
    geodesic(&u, "u")?;
    let delta = cat(&[
        &ap(-i),
        &tp(p + 1),
        &ap(-2 * s),
        &tp(-(p - 1)),
        &tp(-2),
        &ap(i),
        &tp(2),
        &tp(p - 1),
        &ap(2 * s),
        &tp(-(p - 1)),
    ]);
    let mut cw = witness("9.2", w, u, tp(2), delta);
    cw.claimed_length = Some(4 * p as usize + 8);
    Ok(cw)
}

/// Both in `NP(X)` with nonnegative `σ_t`: `w = t^{-p_1} w'`, `u = t^{-p_2} u'`.
fn case_10_1(d: &mut Draw) -> Attempt<CaseWitness> {
    let h = d.sized("p", d.fixed.p, 1);
    let e = d.small("e", 1..=3);
    let f = e + d.small("f_minus_e", 0..=2);
    let mut w = tp(-e);
    let mut ms = d.digits(f);
    if ms[0] == 0 {
        ms[0] = 1;
    }
    for m in ms {
        w = cat(&[&w, &ap(m), &tp(1)]);
    }
    let x = d.xblock(h);
    let w = w.concat(&x);
    geodesic(&w, "w")?;
    let r = w.len();
    let gamma = d.pick(&gammas_ep());
    let (u, nf) = nf_of(&mul_word(&w, &gamma), Orientation::Pn, r)?;
    require(nf.class == 4 && nf.walk == Walk::DownFirst, "u is not in NP(X)")?;
    let (p1, p2) = (leading_t_inv(&w), leading_t_inv(&u));
    let delta = cat(&[&w.suffix(r - p1).inverse(), &tp(p1 as i64 - 1), &tp(-(p2 as i64 - 1)), &u.suffix(r - p2)]);
    let mut cw = witness("10.1", w, u, gamma, delta);
    cw.claimed_length = Some(2 * r - 2);
    Ok(cw)
}

/// Both in `(X)NP`, `σ_t(w) < 0`, `σ_t(u) ≤ 0`:
/// `w = w_0 w_1 t⁻¹ a^{i_1} t^{f_1}`, `u = u_0 u_1 t⁻¹ a^{i_2} t^{f_2}`.
fn case_10_2(d: &mut Draw, case: &str) -> Attempt<CaseWitness> {
    let f1 = d.sized("f1", d.fixed.f1, 1);
    require(f1 >= 1, "f_1 ≥ 1")?;
    let i1 = d.sign("i1", d.fixed.i1);
    require(i1.abs() == 1, "|i_1| = 1")?;
    let e = f1 + d.small("e_minus_f1", 1..=2);
    let w0 = if case == "10.2.4" && d.fixed.p.is_none() {
        let c = d.small("c", -3..=3);
        ap(c)
    } else {
        let h = d.sized("p", d.fixed.p, 1);
        d.xblock(h)
    };
    let w1 = d.word("w1", None, |r| sparse_filler(r, e - 1, 0).inverse());
    let w = cat(&[&w0, &w1, &tp(-1), &ap(i1), &tp(f1)]);
    geodesic(&w, "w")?;
    let r = w.len();
    let gamma = match case {
        "10.2.1" => d.pick(&["t^2", "a t", "A t"].map(Word::bs)),
        "10.2.2" => d.pick(&["a", "A"].map(Word::bs)),
        "10.2.3" => d.pick(&["t a", "t A"].map(Word::bs)),
        _ => {
            let k = d.sign("k", d.fixed.k);
            require(k.abs() == 1, "|k| = 1")?;
            ap(2 * k)
        }
    };
    let (u, nf) = nf_of(&mul_word(&w, &gamma), Orientation::Np, r)?;
    require(nf.class == 4 && nf.walk == Walk::UpFirst && nf.texp <= 0, "u is not in (X)NP with σ_t(u) ≤ 0")?;
    let i2 = last_digit(&nf);
    if let Some(want) = d.fixed.i2 {
        require(i2 == want, "u does not end with the requested i_2")?;
    }
    d.params.insert("i2".into(), json!(i2));
    let k = gamma.gen_exp_sum(A.gen);
    let (delta, claimed) = match case {
        "10.2.1" => (gamma.clone(), None),
        "10.2.2" => (cat(&[&tp(-1), &ap(2 * k), &tp(1)]), Some(4)),
        "10.2.3" => (after_shared_t(&w, &u, k, |_, _| Some(cat(&[&tp(-1), &ap(2 * k), &tp(1)]))), None),
        _ => {
            let k = k / 2;
            let delta = cat(&[&tp(-f1), &ap(-i1), &tp(f1), &ap(2 * k), &tp(-f1), &ap(i1), &tp(f1)]);
            (delta, Some(4 * f1 as usize + 4))
        }
    };
    let mut cw = witness(case, w, u, gamma, delta);
    cw.claimed_length = claimed;
    if case == "10.2.1" {
        cw.reduces_to = Some("δ = γ".into());
    }
    Ok(cw)
}

/// `w = w_3 t a^m t^{-l} t^{-p} a^i t w_2`,
/// `u = t^{-p} a^i t w_2 t w_3 t a^m t^{-(l-1)}`, `γ = t²`.
fn case_10_3_1(d: &mut Draw, long: bool) -> Attempt<CaseWitness> {
    let p = d.sized("p", d.fixed.p, 2);
    require(p >= 2, "p ≥ 2")?;
    let l = if long { d.sized("l", d.fixed.l, 2) } else { d.int("l", d.fixed.l, |_| 1) };
    require(if long { l >= 2 } else { l == 1 }, if long { "l ≥ 2" } else { "l = 1" })?;
    let m = d.int("m", d.fixed.m, |r| r.gen_range(2..=3) * if r.gen() { 1 } else { -1 });
    require((2..=3).contains(&m.abs()), "2 ≤ |m| ≤ 3")?;
    let i = d.sign("i", d.fixed.i);
    require(i.abs() == 1, "|i| = 1")?;
    let w2 = d.word("w2", d.fixed.w2.as_ref(), |r| sparse_filler(r, p - 2, 0));
    let w3 = d.word("w3", d.fixed.w3.as_ref(), |r| sparse_filler(r, l - 1, 0));
    require(w2.sigma_t() == p - 2, "σ_t(w_2) = p−2")?;
    require(w3.sigma_t() == l - 1, "σ_t(w_3) = l−1")?;
    let s = sign_of(m);
    let w = cat(&[&w3, &tp(1), &ap(m), &tp(-l), &tp(-p), &ap(i), &tp(1), &w2]);
    let u = cat(&[&tp(-p), &ap(i), &tp(1), &w2, &tp(1), &w3, &tp(1), &ap(m), &tp(-(l - 1))]);
    geodesic(&w, "w")?;
    geodesic(&u, "u")?;
    let head = cat(&[&w2.inverse(), &tp(-1), &ap(-i), &tp(p - 1)]);
    let back = cat(&[&tp(-(p - 1)), &ap(i), &tp(1), &w2]);
    let (delta, claimed) = if long {
        let delta = cat(&[&head, &tp(l), &ap(-2 * s), &tp(-l), &back, &tp(l), &ap(2 * s), &tp(-(l - 2))]);
        (delta, 2 * w2.len() + 4 * l as usize + 2 * p as usize + 4)
    } else {
        let delta = cat(&[&head, &tp(1), &ap(-2 * s), &tp(-1), &back, &tp(2), &ap(s)]);
        (delta, 2 * w2.len() + 2 * p as usize + 9)
    };
    let mut cw = witness(if long { "10.3.1.1" } else { "10.3.1.2" }, w, u, tp(2), delta);
    cw.claimed_length = Some(claimed);
    Ok(cw)
}

/// `w = a^k t^{-p} a^i t w_2` with `l(w_2) ≥ p−1`, `u = t^{-p} a^j t u_1 u_0`, `γ = t²`.
fn case_10_3_3(d: &mut Draw, same: bool) -> Attempt<CaseWitness> {
    let p = d.sized("p", d.fixed.p, 2);
    require(p >= 2, "p ≥ 2")?;
    let k = d.int("k", d.fixed.k, |r| r.gen_range(2..=3) * if r.gen() { 1 } else { -1 });
    require(k.abs() <= 3, "|k| ≤ 3")?;
    let i = d.sign("i", d.fixed.i);
    require(i.abs() == 1, "|i| = 1")?;
    // u stays on the sphere when w_2 ends in a^s t a^s, s = sign(k); other
    // tails almost never do for large p.
    let s = sign_of(k);
    let w2 = d.word("w2", d.fixed.w2.as_ref(), |r| {
        if s != 0 && p >= 3 && r.gen_bool(0.9) {
            cat(&[&sparse_filler(r, p - 3, 0), &ap(s), &tp(1), &ap(s)])
        } else {
            sparse_filler(r, p - 2, 1)
        }
    });
    require(w2.sigma_t() == p - 2, "σ_t(w_2) = p−2")?;
    require(w2.len() as i64 >= p - 1, "l(w_2) ≥ p−1")?;
    let j = if same { i } else { -i };
    d.params.insert("j".into(), json!(j));
    let w = cat(&[&ap(k), &tp(-p), &ap(i), &tp(1), &w2]);
    geodesic(&w, "w")?;
    let r = w.len();
    let pre = cat(&[&tp(-p), &ap(j), &tp(1)]);
    let bs = q2();
    let rest = bs.mul(&bs.inv(&bs.eval(&pre)), &mul_word(&w, &tp(2)));
    let tail = normal_form(&rest, &bs, Orientation::Pn);
    require(tail.class == 3 || tail.class == 1, "u_1 u_0 is not in P(X)")?;
    let tail = tail.render();
    let u = pre.concat(&tail);
    require(u.len() == r, "u has the wrong length")?;
    geodesic(&u, "u")?;
    let mid = cat(&[&w2.inverse(), &tp(p - 1), &ap(-k), &tp(-(p - 1))]);
    let (delta, claimed) = if same { (mid.concat(&tail), 2 * r - 6) } else { (cat(&[&mid, &ap(j), &tail]), 2 * r - 5) };
    let mut cw = witness(if same { "10.3.3.1" } else { "10.3.3.2" }, w, u, tp(2), delta);
    cw.claimed_length = Some(claimed);
    Ok(cw)
}
