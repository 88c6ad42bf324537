//! Slow reference implementations used as oracles. They share no code with
//! the ball engine: elements are keyed by their text key and stored in
//! plain hash maps.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use almost_convex::bs::{BsElement, BsParams};
use almost_convex::words::{Letter, A, A_INV, T, T_INV};

pub const LETTERS: [Letter; 4] = [A, A_INV, T, T_INV];

/// `B(r)` of `BS(1,q)` by breadth-first search over text keys, with the
/// adjacency of every element.
pub struct RefBall {
    pub keys: Vec<String>,
    pub elems: Vec<BsElement>,
    pub dist: Vec<u32>,
    pub index: HashMap<String, usize>,
    /// Neighbors inside the ball, one slot per letter.
    pub adj: Vec<[Option<usize>; 4]>,
}

impl RefBall {
    pub fn build(p: &BsParams, r: u32) -> RefBall {
        let id = p.identity();
        let mut keys = vec![id.key()];
        let mut elems = vec![id];
        let mut dist = vec![0];
        let mut index = HashMap::from([(keys[0].clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            if dist[i] == r {
                continue;
            }
            for l in LETTERS {
                let g = p.mul_letter(&elems[i], l);
                let k = g.key();
                if !index.contains_key(&k) {
                    index.insert(k.clone(), keys.len());
                    queue.push_back(keys.len());
                    keys.push(k);
                    elems.push(g);
                    dist.push(dist[i] + 1);
                }
            }
        }
        let adj = elems.iter().map(|g| LETTERS.map(|l| index.get(&p.mul_letter(g, l).key()).copied())).collect();
        RefBall { keys, elems, dist, index, adj }
    }

    pub fn distance_of(&self, key: &str) -> Option<u32> {
        self.index.get(key).map(|&i| self.dist[i])
    }

    /// Restricted BFS distances from `src` over vertices with `dist ≤ radius`.
    pub fn restricted_bfs(&self, src: usize, radius: u32) -> HashMap<usize, u32> {
        let mut seen = HashMap::from([(src, 0)]);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let dv = seen[&v];
            for n in self.adj[v].iter().flatten() {
                if self.dist[*n] <= radius && !seen.contains_key(n) {
                    seen.insert(*n, dv + 1);
                    queue.push_back(*n);
                }
            }
        }
        seen
    }
}

/// `fmax(r)` for `r_lo..=r_hi`: the longest shortest in-ball path between
/// sphere points at distance 1 or 2.
pub fn reference_fmax(p: &BsParams, r_lo: u32, r_hi: u32) -> Vec<(u32, Option<u32>)> {
    let ball = RefBall::build(p, r_hi);
    (r_lo..=r_hi)
        .map(|r| {
            let mut fmax = None;
            for x in (0..ball.keys.len()).filter(|&i| ball.dist[i] == r) {
                let mut partners = Vec::new();
                for l1 in LETTERS {
                    let g1 = p.mul_letter(&ball.elems[x], l1);
                    let mut cands = vec![g1.clone()];
                    cands.extend(LETTERS.map(|l2| p.mul_letter(&g1, l2)));
                    for g in cands {
                        if let Some(&y) = ball.index.get(&g.key()) {
                            if y != x && ball.dist[y] == r {
                                partners.push(y);
                            }
                        }
                    }
                }
                if partners.is_empty() {
                    continue;
                }
                let d = ball.restricted_bfs(x, r);
                for y in partners {
                    let l = d[&y];
                    fmax = Some(fmax.map_or(l, |f: u32| f.max(l)));
                }
            }
            (r, fmax)
        })
        .collect()
}
