#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use snarkflow::graph::{Graph, VertexSet};
use snarkflow::valuations::BalancedValuation;

/// Uniform-ish simple connected cubic graph on `n` vertices (pairing model with rejection).
pub fn random_cubic(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 4 && n % 2 == 0);
    loop {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        edges.sort_unstable();
        if edges.iter().any(|&(u, v)| u == v) || edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_bridgeless_cubic(rng: &mut impl Rng, n: usize) -> Graph {
    loop {
        let g = random_cubic(rng, n);
        if g.is_bridgeless() {
            return g;
        }
    }
}

/// A strongly connected orientation from a randomised DFS (tree edges away from the root,
/// back edges towards it); b(v) = in-degree − out-degree.
pub fn random_orientable(rng: &mut impl Rng, g: &Graph) -> BalancedValuation {
    let n = g.n();
    let mut depth = vec![usize::MAX; n];
    let mut done = vec![false; g.m()];
    let mut b = vec![0i64; n];
    let root = rng.gen_range(0..n);
    depth[root] = 0;
    let mut stack = vec![root];
    while let Some(&v) = stack.last() {
        let mut nb: Vec<(usize, usize)> = g.neighbors(v).iter().copied().filter(|&(_, e)| !done[e]).collect();
        nb.shuffle(rng);
        match nb.first() {
            None => {
                stack.pop();
            }
            Some(&(u, e)) => {
                done[e] = true;
                // v -> u
                b[u] += 1;
                b[v] -= 1;
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    stack.push(u);
                }
            }
        }
    }
    BalancedValuation::new(b)
}

/// A connected proper subset grown from a random vertex.
pub fn random_connected_set(rng: &mut impl Rng, g: &Graph) -> VertexSet {
    let n = g.n();
    let size = rng.gen_range(1..n);
    let mut s = VertexSet::new(n);
    s.insert(rng.gen_range(0..n));
    while s.len() < size {
        let frontier: Vec<usize> = s.iter().flat_map(|v| g.neighbors(v).iter().map(|&(u, _)| u)).filter(|&u| !s.contains(u)).collect();
        s.insert(*frontier.choose(rng).unwrap());
    }
    s
}
