//! Exhaustive search for the class combinations that admit no bridging
//! path because they never occur between sphere points of `BS(1,2)`.

use serde::Serialize;

use crate::ball::build_ball;
use crate::bs::{BsElement, BsParams};
use crate::error::Result;
use crate::geodesic::{geodesic_length, is_geodesic, normal_form, GeodesicNormalForm, Orientation};
use crate::words::{GenAlphabet, Word, A, T};

pub const IMPOSSIBLE_CASES: [&str; 5] = ["1", "2", "3", "7.1", "10.3.2"];

/// One pair of sphere points falling into a forbidden case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub case: String,
    pub r: u32,
    pub w: String,
    pub u: String,
    pub gamma: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImpossibilityReport {
    pub radius: u32,
    /// Ordered pairs `(w, γ)` examined.
    pub pairs: u64,
    /// Pairs by `(class of w, class of u)`, before the shape filter.
    pub class_pairs: [[u64; 4]; 4],
    pub counts: Vec<(String, usize)>,
    pub realizations: Vec<Realization>,
}

impl ImpossibilityReport {
    pub fn passed(&self) -> bool {
        self.realizations.is_empty()
    }
}

/// Reduced words of length 1 and 2.
fn short_gammas(al: &GenAlphabet) -> Vec<Word> {
    let letters = al.signed_letters();
    let mut out: Vec<Word> = letters.iter().map(|&l| Word::from_letters(vec![l])).collect();
    for &l1 in &letters {
        for &l2 in &letters {
            if l2 != l1.inverse() {
                out.push(Word::from_letters(vec![l1, l2]));
            }
        }
    }
    out
}

/// Short geodesics of classes 1–3 with `|σ_t| ≤ 2` have no `X`-block; the
/// argument assumes radii where such words are too short to matter.
fn large_radius_shape(nf: &GeodesicNormalForm) -> bool {
    nf.class == 4 || nf.texp.abs() > 2 || nf.xblock().is_some()
}

/// Scans every ordered pair `w ∈ S(r)`, `u = wγ ∈ S(r)` with `γ` a geodesic
/// of length 1 or 2, `r ≤ radius`.
pub fn impossibility_search(radius: u32, cap: usize) -> Result<ImpossibilityReport> {
    let p = BsParams::new(2)?;
    let al = GenAlphabet::bs();
    let ball = build_ball(&p, radius, cap)?;
    let gammas: Vec<(Word, BsElement)> = short_gammas(&al)
        .into_iter()
        .filter(|g| is_geodesic(g, &p))
        .map(|g| {
            let e = p.eval(&g);
            (g, e)
        })
        .collect();
    let t_like: Vec<Word> = ["t", "a t", "A t"].iter().map(|s| Word::bs(s)).collect();
    let mut pairs = 0;
    let mut class_pairs = [[0; 4]; 4];
    let mut found = Vec::new();
    for r in 1..=radius {
        for xi in ball.sphere(r) {
            let x = ball.elem(xi);
            let nx = normal_form(x, &p, Orientation::Pn);
            for (gw, ge) in &gammas {
                let y = p.mul(x, ge);
                if geodesic_length(&y, &p) != r as u64 {
                    continue;
                }
                pairs += 1;
                let ny = normal_form(&y, &p, Orientation::Pn);
                class_pairs[nx.class as usize - 1][ny.class as usize - 1] += 1;
                let both = large_radius_shape(&nx) && large_radius_shape(&ny);
                let case = match (nx.class, ny.class) {
                    (4, 1) if both => Some("1"),
                    (4, 3) if both => Some("2"),
                    (2, 3) if both => Some("3"),
                    (2, 2) if nx.texp <= ny.texp && t_like.contains(gw) => Some("7.1"),
                    _ => None,
                };
                if let Some(case) = case {
                    found.push(Realization {
                        case: case.into(),
                        r,
                        w: nx.render().to_text(&al),
                        u: ny.render().to_text(&al),
                        gamma: gw.to_text(&al),
                    });
                }
            }
        }
    }
    found.extend(search_10_3_2(&p, radius));
    let counts =
        IMPOSSIBLE_CASES.iter().map(|c| (c.to_string(), found.iter().filter(|f| f.case == *c).count())).collect();
    Ok(ImpossibilityReport { radius, pairs, class_pairs, counts, realizations: found })
}

/// `w = a^k t^{-p} a^i t^{p-1}` geodesic of length `r = |k| + 2p`, with
/// `u = w t²` on the same sphere in class 4.
fn search_10_3_2(p: &BsParams, radius: u32) -> Vec<Realization> {
    let al = GenAlphabet::bs();
    let mut out = Vec::new();
    for pp in 2..=(radius as i64 / 2) {
        for k in -3i64..=3 {
            let r = k.abs() + 2 * pp;
            if r > radius as i64 {
                continue;
            }
            for i in [-1, 1] {
                let mut w = Word::power(A, k);
                w.push_power(T, -pp);
                w.push_power(A, i);
                w.push_power(T, pp - 1);
                if !is_geodesic(&w, p) {
                    continue;
                }
                let gamma = Word::power(T, 2);
                let y = p.mul(&p.eval(&w), &p.eval(&gamma));
                if geodesic_length(&y, p) != r as u64 {
                    continue;
                }
                let ny = normal_form(&y, p, Orientation::Pn);
                if ny.class == 4 {
                    out.push(Realization {
                        case: "10.3.2".into(),
                        r: r as u32,
                        w: w.to_text(&al),
                        u: ny.render().to_text(&al),
                        gamma: gamma.to_text(&al),
                    });
                }
            }
        }
    }
    out
}
