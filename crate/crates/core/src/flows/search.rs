//! Integer p/q-flow search and the Farey-ladder solver for φ.
//!
//! Edges are oriented one at a time (breadth-first edge order, reference direction first).
//! A partial orientation survives while the circulation problem "oriented edges carry
//! [q, p − q], unoriented edges carry [−(p − q), p − q]" is feasible, which is decided
//! exactly by a max-flow. A full orientation that survives yields the integer values
//! directly from the flow.

use std::time::{Duration, Instant};

use num_integer::Integer;

use super::{integer_to_circular, FlowCertificate, IntegerFlow};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::maxflow::Network;
use crate::rational::Rational;

/// Reduced fractions p/q in (2, 6] with q ≤ `cap`, ascending.
pub fn farey_ladder(cap: usize) -> Vec<Rational> {
    let cap = cap.max(1) as i64;
    let mut out = Vec::new();
    for q in 1..=cap {
        for p in 2 * q + 1..=6 * q {
            if p.gcd(&q) == 1 {
                out.push(Rational::new(p, q).unwrap());
            }
        }
    }
    out.sort();
    out
}

/// A circular p/q-flow as an integer flow with values in [q, p − q], or `None` when
/// none exists. The result is the first orientation in search order that admits a flow,
/// with values from a deterministic max-flow, so it does not depend on any scheduling.
pub fn find_integer_flow(g: &Graph, p: i64, q: i64) -> Result<Option<IntegerFlow>> {
    find_integer_flow_budgeted(g, p, q, None)
}

/// As [`find_integer_flow`], giving up with [`Error::Budget`] after `budget`.
pub fn find_integer_flow_budgeted(g: &Graph, p: i64, q: i64, budget: Option<Duration>) -> Result<Option<IntegerFlow>> {
    if q < 1 || p <= 2 * q || p.gcd(&q) != 1 {
        return Err(Error::InvalidParameter(format!("need gcd(p,q)=1 and p > 2q >= 2, got {p}/{q}")));
    }
    if !g.is_bridgeless() {
        return Err(Error::Bridge);
    }
    let mut s = OrientSearch::new(g, q, p - q);
    s.deadline = budget.map(|d| Instant::now() + d);
    let found = s.rec(0);
    if s.timed_out {
        return Err(Error::Budget(budget.unwrap_or_default()));
    }
    if !found {
        return Ok(None);
    }
    let values = s.values();
    let orientation = g
        .edges()
        .iter()
        .zip(&s.dir)
        .map(|(&(u, v), &d)| if d > 0 { (u, v) } else { (v, u) })
        .collect();
    Ok(Some(IntegerFlow { p, q, orientation, values }))
}

/// Least r = p/q on the ladder with q ≤ `cap` (default |V|) that admits a flow, by binary
/// search, with its certificate.
pub fn phi_via_flows(g: &Graph, cap: Option<usize>) -> Result<(Rational, FlowCertificate)> {
    phi_via_flows_budgeted(g, cap, None)
}

/// As [`phi_via_flows`], giving up with [`Error::Budget`] after `budget`.
pub fn phi_via_flows_budgeted(g: &Graph, cap: Option<usize>, budget: Option<Duration>) -> Result<(Rational, FlowCertificate)> {
    if !g.is_bridgeless() {
        return Err(Error::Bridge);
    }
    let start = Instant::now();
    let ladder = farey_ladder(cap.unwrap_or(g.n()));
    let probe = |r: Rational| {
        let left = match budget {
            Some(b) => Some(b.checked_sub(start.elapsed()).filter(|d| !d.is_zero()).ok_or(Error::Budget(b))?),
            None => None,
        };
        find_integer_flow_budgeted(g, r.numer(), r.denom(), left).map_err(|e| match (e, budget) {
            (Error::Budget(_), Some(b)) => Error::Budget(b),
            (e, _) => e,
        })
    };
    let mut hi = ladder.len() - 1;
    let mut best = probe(ladder[hi])?.ok_or(Error::NoSixFlow)?;
    // ladder[hi] is feasible; ladder[..=lo] is infeasible (lo = -1 stands for r = 2)
    let mut lo: isize = -1;
    while hi as isize - lo > 1 {
        let mid = ((lo + hi as isize) / 2) as usize;
        match probe(ladder[mid])? {
            Some(f) => {
                hi = mid;
                best = f;
            }
            None => lo = mid as isize,
        }
    }
    Ok((ladder[hi], integer_to_circular(&best)))
}

struct OrientSearch<'a> {
    g: &'a Graph,
    q: i64,
    hi: i64,
    order: Vec<usize>,
    // 0 = open, +1 = reference direction (edges()[e].0 → .1), -1 = reversed
    dir: Vec<i8>,
    inn: Vec<usize>,
    out: Vec<usize>,
    net: Network,
    edge_arc: Vec<usize>,
    // per vertex: source→v and v→sink arcs
    src_arc: Vec<usize>,
    snk_arc: Vec<usize>,
    deadline: Option<Instant>,
    timed_out: bool,
    calls: u64,
}

impl<'a> OrientSearch<'a> {
    fn new(g: &'a Graph, q: i64, hi: i64) -> Self {
        let n = g.n();
        let mut net = Network::new(n + 2);
        let edge_arc = g.edges().iter().map(|&(u, v)| net.add(u, v, 0, 0)).collect();
        let src_arc = (0..n).map(|v| net.add(n, v, 0, 0)).collect();
        let snk_arc = (0..n).map(|v| net.add(v, n + 1, 0, 0)).collect();
        OrientSearch {
            g,
            q,
            hi,
            order: bfs_edge_order(g),
            dir: vec![0; g.m()],
            inn: vec![0; n],
            out: vec![0; n],
            net,
            edge_arc,
            src_arc,
            snk_arc,
            deadline: None,
            timed_out: false,
            calls: 0,
        }
    }

    fn feasible(&mut self) -> bool {
        let n = self.g.n();
        let mut excess = vec![0i64; n];
        for (e, &(u, v)) in self.g.edges().iter().enumerate() {
            let a = self.edge_arc[e];
            match self.dir[e] {
                0 => self.net.set(a, self.hi, self.hi),
                d => {
                    let (t, h) = if d > 0 { (u, v) } else { (v, u) };
                    excess[h] += self.q;
                    excess[t] -= self.q;
                    if d > 0 {
                        self.net.set(a, self.hi - self.q, 0);
                    } else {
                        self.net.set(a, 0, self.hi - self.q);
                    }
                }
            }
        }
        let mut need = 0;
        for v in 0..n {
            let x = excess[v];
            self.net.set(self.src_arc[v], x.max(0), 0);
            self.net.set(self.snk_arc[v], (-x).max(0), 0);
            need += x.max(0);
        }
        self.net.max_flow(n, n + 1) == need
    }

    fn rec(&mut self, i: usize) -> bool {
        self.calls += 1;
        if self.timed_out || (self.calls % 256 == 0 && self.deadline.is_some_and(|d| Instant::now() > d)) {
            self.timed_out = true;
            return false;
        }
        if !self.feasible() {
            return false;
        }
        if i == self.order.len() {
            return true;
        }
        let e = self.order[i];
        let (u, v) = self.g.edge(e);
        let dirs: &[i8] = if i == 0 { &[1] } else { &[1, -1] };
        for &d in dirs {
            let (t, h) = if d > 0 { (u, v) } else { (v, u) };
            // a vertex with every edge pointing the same way cannot conserve flow
            if self.out[t] + 1 == self.g.degree(t) || self.inn[h] + 1 == self.g.degree(h) {
                continue;
            }
            self.dir[e] = d;
            self.out[t] += 1;
            self.inn[h] += 1;
            if self.rec(i + 1) {
                return true;
            }
            self.out[t] -= 1;
            self.inn[h] -= 1;
        }
        self.dir[e] = 0;
        false
    }

    /// Values after a successful `rec`: lower bound plus the flow pushed on each arc.
    fn values(&self) -> Vec<i64> {
        (0..self.g.m())
            .map(|e| {
                let a = self.edge_arc[e];
                let fwd = if self.dir[e] > 0 { a } else { a ^ 1 };
                self.q + (self.hi - self.q - self.net.residual(fwd))
            })
            .collect()
    }
}

fn bfs_edge_order(g: &Graph) -> Vec<usize> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, goldberg, petersen, prism};

    fn brute_force(g: &Graph, p: i64, q: i64) -> bool {
        let vals: Vec<i64> = (-(p - q)..=-q).chain(q..=p - q).collect();
        let m = g.m();
        let mut idx = vec![0usize; m];
        loop {
            let mut net = vec![0; g.n()];
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                net[u] += vals[idx[e]];
                net[v] -= vals[idx[e]];
            }
            if net.iter().all(|&x| x == 0) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == m {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < vals.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn ladder() {
        let l = farey_ladder(2);
        let s: Vec<String> = l.iter().map(|r| r.to_string()).collect();
        assert_eq!(s, ["5/2", "3/1", "7/2", "4/1", "9/2", "5/1", "11/2", "6/1"]);
    }

    #[test]
    fn k4_against_brute_force() {
        let g = complete(4);
        for (p, q) in [(3, 1), (4, 1), (5, 2), (7, 2)] {
            let f = find_integer_flow(&g, p, q).unwrap();
            assert_eq!(f.is_some(), brute_force(&g, p, q), "{p}/{q}");
            if let Some(f) = f {
                assert!(f.is_valid(&g));
            }
        }
    }

    #[test]
    fn small_cases() {
        assert!(find_integer_flow(&petersen().graph, 9, 2).unwrap().is_none());
        assert!(find_integer_flow(&petersen().graph, 5, 1).unwrap().is_some());
        let k33 = complete_bipartite(3, 3);
        assert!(find_integer_flow(&k33, 3, 1).unwrap().unwrap().is_valid(&k33));
        assert!(find_integer_flow(&prism(4), 3, 1).unwrap().is_some());
        assert!(find_integer_flow(&prism(3), 3, 1).unwrap().is_none());
    }

    #[test]
    fn errors() {
        let path = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(find_integer_flow(&path, 4, 1), Err(Error::Bridge));
        assert!(find_integer_flow(&complete(4), 4, 2).is_err());
        assert!(find_integer_flow(&complete(4), 2, 1).is_err());
    }

    #[test]
    fn phi_small() {
        assert_eq!(phi_via_flows(&complete(4), None).unwrap().0, Rational::from_integer(4));
        assert_eq!(phi_via_flows(&complete_bipartite(3, 3), None).unwrap().0, Rational::from_integer(3));
        assert_eq!(phi_via_flows(&petersen().graph, None).unwrap().0, Rational::from_integer(5));
    }

    #[test]
    fn monotone_on_ladder() {
        for g in [complete(4), petersen().graph, prism(5)] {
            let ladder = farey_ladder(5);
            let ok: Vec<bool> =
                ladder.iter().map(|r| find_integer_flow(&g, r.numer(), r.denom()).unwrap().is_some()).collect();
            let first = ok.iter().position(|&b| b).unwrap();
            assert!(ok[first..].iter().all(|&b| b));
        }
    }

    #[test]
    fn goldberg3_nine_halves() {
        let g = goldberg(1).unwrap().graph;
        let f = find_integer_flow(&g, 9, 2).unwrap().unwrap();
        assert!(f.is_valid(&g));
        assert!(find_integer_flow(&g, 22, 5).unwrap().is_none());
    }
}
