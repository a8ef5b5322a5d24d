//! Proper 3-edge-colourings by backtracking.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{block_indexing, LabeledGraph};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    /// colour of each edge, in 1..=3
    pub colours: Vec<u8>,
}

impl EdgeColoring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colours.len() == g.m()
            && self.colours.iter().all(|c| (1..=3).contains(c))
            && (0..g.n()).all(|v| {
                let mut seen = 0u8;
                g.neighbors(v).iter().all(|&(_, e)| {
                    let bit = 1 << self.colours[e];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            })
    }
}

/// Edges in breadth-first discovery order, so each new edge touches coloured ones early.
fn edge_order(g: &Graph) -> Vec<usize> {
    let mut seen_v = vec![false; g.n()];
    let mut seen_e = vec![false; g.m()];
    let mut order = Vec::with_capacity(g.m());
    for s in 0..g.n() {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(u, e) in g.neighbors(v) {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                if !seen_v[u] {
                    seen_v[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    order
}

/// Calls `f` on every proper 3-edge-colouring (colours 1..=3) of `g`; stops early when
/// `f` returns `false`. Vertices of degree below 3 simply leave colours unused.
pub fn enumerate_edge_colourings(g: &Graph, mut f: impl FnMut(&[u8]) -> bool) {
    let order = edge_order(g);
    let mut used = vec![0u8; g.n()];
    let mut col = vec![0u8; g.m()];
    fn rec(
        i: usize,
        g: &Graph,
        order: &[usize],
        used: &mut [u8],
        col: &mut [u8],
        f: &mut dyn FnMut(&[u8]) -> bool,
    ) -> bool {
        if i == order.len() {
            return f(col);
        }
        let e = order[i];
        let (u, v) = g.edge(e);
        for c in 1..=3u8 {
            let bit = 1 << c;
            if (used[u] | used[v]) & bit != 0 {
                continue;
            }
            used[u] |= bit;
            used[v] |= bit;
            col[e] = c;
            let go = rec(i + 1, g, order, used, col, f);
            used[u] &= !bit;
            used[v] &= !bit;
            if !go {
                return false;
            }
        }
        true
    }
    rec(0, g, &order, &mut used, &mut col, &mut f);
}

pub fn three_edge_color(g: &Graph) -> Result<Option<EdgeColoring>> {
    if !g.is_cubic() {
        return Err(Error::NotCubic);
    }
    let mut found = None;
    enumerate_edge_colourings(g, |c| {
        found = Some(EdgeColoring { colours: c.to_vec() });
        false
    });
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub holds: bool,
    pub colourings: usize,
    pub counterexample: Option<Vec<u8>>,
}

/// Checks, over every proper 3-edge-colouring of `g`, that the two `left` edges share a
/// colour exactly when the two `right` edges do not.
pub fn pair_parity(g: &Graph, left: (usize, usize), right: (usize, usize)) -> ParityReport {
    let mut rep = ParityReport { holds: true, colourings: 0, counterexample: None };
    enumerate_edge_colourings(g, |c| {
        rep.colourings += 1;
        let l = c[left.0] == c[left.1];
        let r = c[right.0] == c[right.1];
        if l == r && rep.holds {
            rep.holds = false;
            rep.counterexample = Some(c.to_vec());
        }
        true
    });
    rep
}

/// The extended-block colouring property for block `i`: colours of b_{i-1}a_i and
/// g_{i-1}f_i agree iff those of b_ia_{i+1} and g_if_{i+1} differ.
pub fn extended_block_parity_report(lg: &LabeledGraph, i: usize) -> Result<ParityReport> {
    let bi = block_indexing(lg)?;
    let x = bi.extended.get(i).ok_or_else(|| Error::InvalidParameter(format!("no block {i}")))?;
    let (sub, _) = lg.graph.induced(x);
    let find = |a: usize, b: usize| {
        sub.edges().iter().position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a)).expect("extended block edge")
    };
    // local indices: a=0 b=1 f=5 g=6, b_{i-1}=7 g_{i-1}=8 a_{i+1}=9 f_{i+1}=10
    Ok(pair_parity(&sub, (find(7, 0), find(8, 5)), (find(1, 9), find(6, 10))))
}

pub fn extended_block_parity(lg: &LabeledGraph, i: usize) -> Result<bool> {
    Ok(extended_block_parity_report(lg, i)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, goldberg, petersen, prism, reduced_goldberg};

    #[test]
    fn class_one_and_snarks() {
        let k4 = complete(4);
        assert!(three_edge_color(&k4).unwrap().unwrap().is_proper(&k4));
        assert!(three_edge_color(&petersen().graph).unwrap().is_none());
        for k in [1, 2] {
            assert!(three_edge_color(&goldberg(k).unwrap().graph).unwrap().is_none());
        }
        assert!(three_edge_color(&prism(5)).unwrap().is_some());
        assert_eq!(three_edge_color(&Graph::new(2, vec![(0, 1)]).unwrap()), Err(Error::NotCubic));
    }

    #[test]
    fn k4_has_six_colourings() {
        let mut n = 0;
        enumerate_edge_colourings(&complete(4), |_| {
            n += 1;
            true
        });
        assert_eq!(n, 6);
    }

    #[test]
    fn parity_on_blocks() {
        let h3 = reduced_goldberg(1).unwrap();
        for i in 0..3 {
            assert!(extended_block_parity(&h3, i).unwrap());
        }
        let h5 = reduced_goldberg(2).unwrap();
        assert!(extended_block_parity(&h5, 2).unwrap());
        assert!(extended_block_parity(&petersen(), 0).is_err());
    }

    #[test]
    fn four_cycle_gadget_fails() {
        // 4-cycle p q r s with pendant edges: left pair at p and s, right pair at q and r
        let g = Graph::new(8, vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (5, 3), (1, 6), (2, 7)]).unwrap();
        let rep = pair_parity(&g, (4, 5), (6, 7));
        assert!(!rep.holds);
        assert!(rep.counterexample.is_some());
    }
}
