//! Breadth-first Cayley balls over a pluggable group model, plus shortest
//! paths restricted to the ball.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{GenAlphabet, Letter, Word};

/// Default cap on the number of elements in a ball.
pub const DEFAULT_ELEMENT_CAP: usize = 50_000_000;

const NONE: u32 = u32::MAX;

/// What the ball engine needs from a group.
pub trait GroupModel: Sync {
    type Elem: Clone + Eq + Hash + Send + Sync + std::fmt::Debug;

    fn identity(&self) -> Self::Elem;
    /// Generators and their inverses; the Cayley graph's edge labels.
    fn letters(&self) -> Vec<Letter>;
    fn mul_letter(&self, g: &Self::Elem, l: Letter) -> Self::Elem;
    fn mul(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;
    fn inv(&self, g: &Self::Elem) -> Self::Elem;
    /// Injective, self-describing text key.
    fn key(&self, g: &Self::Elem) -> String;
    fn parse_key(&self, key: &str) -> Result<Self::Elem>;
    fn descriptor(&self) -> String;
    fn alphabet(&self) -> GenAlphabet;

    fn eval(&self, w: &Word) -> Self::Elem {
        w.letters().iter().fold(self.identity(), |g, &l| self.mul_letter(&g, l))
    }
}

/// The ball `B(r)` about the identity, with spheres stored contiguously in
/// key order.
#[derive(Debug)]
pub struct BallIndex<E> {
    radius: u32,
    letters: Vec<Letter>,
    elems: Vec<E>,
    dist: Vec<u32>,
    index: HashMap<E, u32>,
    /// `adj[i * letters.len() + j]`: index of `elems[i] · letters[j]`, or NONE
    /// when outside the ball.
    adj: Vec<u32>,
    spheres: Vec<Range<u32>>,
}

impl<E: Clone + Eq + Hash + Send + Sync> BallIndex<E> {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn elem(&self, i: u32) -> &E {
        &self.elems[i as usize]
    }

    pub fn dist_of(&self, i: u32) -> u32 {
        self.dist[i as usize]
    }

    pub fn index_of(&self, g: &E) -> Option<u32> {
        self.index.get(g).copied()
    }

    /// `d(1, g)` when `g ∈ B(r)`.
    pub fn distance(&self, g: &E) -> Option<u32> {
        self.index_of(g).map(|i| self.dist_of(i))
    }

    /// Indices of `S(k)`, in key order. Empty beyond the radius.
    pub fn sphere(&self, k: u32) -> Range<u32> {
        self.spheres.get(k as usize).cloned().unwrap_or(0..0)
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(|s| s.len()).collect()
    }

    /// Neighbor `elem(i) · letters[j]` when it lies in the ball.
    pub fn neighbor(&self, i: u32, j: usize) -> Option<u32> {
        let n = self.adj[i as usize * self.letters.len() + j];
        (n != NONE).then_some(n)
    }

    /// A geodesic word for `elem(i)`, chosen by descending through the
    /// first letter (in `letters` order) that lowers the distance.
    pub fn geodesic_word(&self, mut i: u32) -> Word {
        let inv_pos: Vec<usize> = self
            .letters
            .iter()
            .map(|l| self.letters.iter().position(|m| *m == l.inverse()).expect("inverse-closed"))
            .collect();
        let mut rev = Vec::new();
        while self.dist_of(i) > 0 {
            let d = self.dist_of(i);
            let (j, prev) = (0..self.letters.len())
                .find_map(|j| {
                    // elem(i) = elem(prev) · letters[j]  ⇔  elem(prev) = elem(i) · letters[j]⁻¹
                    self.neighbor(i, inv_pos[j]).filter(|&p| self.dist_of(p) + 1 == d).map(|p| (j, p))
                })
                .expect("BFS parent exists");
            rev.push(self.letters[j]);
            i = prev;
        }
        rev.reverse();
        Word::from_letters(rev)
    }

    /// Shortest path length from `x` to `y` using only vertices at distance
    /// at most `radius` from the identity.
    pub fn bridge_length(&self, x: u32, y: u32, radius: u32) -> Result<u32> {
        let mut scratch = BridgeScratch::new(self.len());
        let d = self.bridge_distances(&mut scratch, x, &[y], radius, None)[0];
        d.ok_or(Error::Unreachable)
    }

    /// Restricted BFS from `src` that stops once every target is reached.
    /// `avoid` removes one vertex from the graph.
    pub fn bridge_distances(
        &self,
        scratch: &mut BridgeScratch,
        src: u32,
        targets: &[u32],
        radius: u32,
        avoid: Option<u32>,
    ) -> Vec<Option<u32>> {
        let mut found = vec![None; targets.len()];
        let mut remaining = targets.len();
        scratch.reset();
        scratch.visit(src, 0);
        for (t, f) in targets.iter().zip(found.iter_mut()) {
            if *t == src {
                *f = Some(0);
                remaining -= 1;
            }
        }
        if remaining == 0 {
            return found;
        }
        let ng = self.letters.len();
        let mut head = 0;
        while head < scratch.queue.len() {
            let v = scratch.queue[head];
            head += 1;
            let dv = scratch.dist[v as usize];
            for &n in &self.adj[v as usize * ng..(v as usize + 1) * ng] {
                if n == NONE || self.dist[n as usize] > radius || Some(n) == avoid || scratch.seen(n) {
                    continue;
                }
                scratch.visit(n, dv + 1);
                for (t, f) in targets.iter().zip(found.iter_mut()) {
                    if *t == n && f.is_none() {
                        *f = Some(dv + 1);
                        remaining -= 1;
                    }
                }
                if remaining == 0 {
                    return found;
                }
            }
        }
        found
    }

    /// Full restricted BFS distances from `src` (u32::MAX when unreachable).
    pub fn restricted_distances(&self, src: u32, radius: u32, avoid: Option<u32>) -> Vec<u32> {
        let mut scratch = BridgeScratch::new(self.len());
        self.bridge_distances(&mut scratch, src, &[], radius, avoid);
        let mut out = vec![u32::MAX; self.len()];
        for &v in &scratch.queue {
            out[v as usize] = scratch.dist[v as usize];
        }
        out
    }

    pub(crate) fn from_parts(
        radius: u32,
        letters: Vec<Letter>,
        layers: Vec<Vec<E>>,
        mul: impl Fn(&E, Letter) -> E + Sync,
    ) -> Self {
        let mut elems = Vec::new();
        let mut dist = Vec::new();
        let mut spheres = Vec::new();
        for (k, layer) in layers.into_iter().enumerate() {
            let start = elems.len() as u32;
            dist.extend(std::iter::repeat_n(k as u32, layer.len()));
            elems.extend(layer);
            spheres.push(start..elems.len() as u32);
        }
        let index: HashMap<E, u32> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let adj: Vec<u32> = elems
            .par_iter()
            .flat_map_iter(|e| {
                letters.iter().map(|&l| index.get(&mul(e, l)).copied().unwrap_or(NONE)).collect::<Vec<_>>()
            })
            .collect();
        BallIndex { radius, letters, elems, dist, index, adj, spheres }
    }
}

/// Reusable visited-set storage for repeated restricted searches.
#[derive(Debug, Clone)]
pub struct BridgeScratch {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    queue: Vec<u32>,
    epoch: u32,
}

impl BridgeScratch {
    pub fn new(n: usize) -> Self {
        BridgeScratch { stamp: vec![0; n], dist: vec![0; n], queue: Vec::new(), epoch: 0 }
    }

    fn reset(&mut self) {
        self.queue.clear();
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    fn seen(&self, v: u32) -> bool {
        self.stamp[v as usize] == self.epoch
    }

    fn visit(&mut self, v: u32, d: u32) {
        self.stamp[v as usize] = self.epoch;
        self.dist[v as usize] = d;
        self.queue.push(v);
    }
}

/// Builds `B(r)` by breadth-first search. Each level is expanded in
/// parallel and sorted by key, so the result is deterministic.
pub fn build_ball<M: GroupModel>(model: &M, r: u32, cap: usize) -> Result<BallIndex<M::Elem>> {
    let letters = model.letters();
    let mut seen: HashMap<M::Elem, ()> = HashMap::new();
    let id = model.identity();
    seen.insert(id.clone(), ());
    let mut layers: Vec<Vec<M::Elem>> = vec![vec![id]];
    for k in 1..=r {
        let frontier = layers.last().expect("nonempty");
        let products: Vec<M::Elem> = frontier
            .par_iter()
            .flat_map_iter(|g| letters.iter().map(|&l| model.mul_letter(g, l)).collect::<Vec<_>>())
            .collect();
        let mut fresh = Vec::new();
        for h in products {
            if !seen.contains_key(&h) {
                seen.insert(h.clone(), ());
                fresh.push(h);
            }
        }
        if seen.len() > cap {
            return Err(Error::ResourceLimit { cap, radius: k });
        }
        let mut keyed: Vec<(String, M::Elem)> = fresh.into_par_iter().map(|h| (model.key(&h), h)).collect();
        keyed.par_sort_by(|a, b| a.0.cmp(&b.0));
        layers.push(keyed.into_iter().map(|(_, h)| h).collect());
    }
    drop(seen);
    Ok(BallIndex::from_parts(r, letters, layers, |g, l| model.mul_letter(g, l)))
}
