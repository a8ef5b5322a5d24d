//! The project-selection oracle: max over proper S of b(S) − t·∂(S).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::maxflow::Network;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutOracleResult {
    pub value: Rational,
    /// `None` only when no proper set exists at all (a graph without edges).
    pub witness: Option<VertexSet>,
}

/// max over S with ∂(S) ≠ 0 of b(S) − t·∂(S), for 0 < t < 1.
pub fn max_excess(g: &Graph, b: &[i64], t: Rational) -> Result<CutOracleResult> {
    if !(t.is_positive() && t < Rational::one()) {
        return Err(Error::InvalidParameter(format!("t = {t} must lie in (0, 1)")));
    }
    check_len(g, b)?;
    let mut o = CutOracle::new(g);
    let (m, w) = o.proper_max(b, t.numer(), t.denom());
    Ok(CutOracleResult { value: Rational::new(m, t.denom())?, witness: w })
}

pub(crate) fn check_len(g: &Graph, b: &[i64]) -> Result<()> {
    if b.len() != g.n() {
        return Err(Error::InvalidParameter(format!("valuation has {} entries, graph has {} vertices", b.len(), g.n())));
    }
    Ok(())
}

/// Reusable network for repeated excess queries on one graph. Scaled objective:
/// F(S) = c·b(S) − a·∂(S) for t = a/c with 0 ≤ a ≤ c.
pub(crate) struct CutOracle<'a> {
    g: &'a Graph,
    net: Network,
    edge_arc: Vec<usize>,
    src_arc: Vec<usize>,
    snk_arc: Vec<usize>,
}

const INF: i64 = i64::MAX / 4;

impl<'a> CutOracle<'a> {
    pub(crate) fn new(g: &'a Graph) -> Self {
        let n = g.n();
        let mut net = Network::new(n + 2);
        let edge_arc = g.edges().iter().map(|&(u, v)| net.add(u, v, 0, 0)).collect();
        let src_arc = (0..n).map(|v| net.add(n, v, 0, 0)).collect();
        let snk_arc = (0..n).map(|v| net.add(v, n + 1, 0, 0)).collect();
        CutOracle { g, net, edge_arc, src_arc, snk_arc }
    }

    /// Solves the (optionally forced) instance; returns the unrestricted max of F.
    fn solve(&mut self, b: &[i64], a: i64, c: i64, forced: Option<(usize, usize)>) -> i64 {
        let n = self.g.n();
        for &arc in &self.edge_arc {
            self.net.set(arc, a, a);
        }
        let mut pos = 0;
        for v in 0..n {
            let w = c * b[v];
            self.net.set(self.src_arc[v], w.max(0), 0);
            self.net.set(self.snk_arc[v], (-w).max(0), 0);
            pos += w.max(0);
        }
        // forcing never changes the cut value of a set that respects it
        if let Some((inside, outside)) = forced {
            self.net.set(self.src_arc[inside], INF, 0);
            self.net.set(self.snk_arc[outside], INF, 0);
        }
        pos - self.net.max_flow(n, n + 1)
    }

    fn side(&self, mask: &[bool]) -> VertexSet {
        VertexSet::from_vertices(self.g.n(), (0..self.g.n()).filter(|&v| mask[v])).unwrap()
    }

    fn proper(&self, s: &VertexSet) -> bool {
        self.g.boundary_size(s).unwrap() != 0
    }

    /// An attaining min-cut source side with ∂ ≠ 0 after `solve`, if any exists:
    /// the minimal side, the maximal side, then the closures of single free vertices.
    fn proper_attainer(&self) -> Option<VertexSet> {
        let n = self.g.n();
        let from_s = self.net.reachable_from(n);
        let to_t = self.net.reaching(n + 1);
        let min = self.side(&from_s);
        if self.proper(&min) {
            return Some(min);
        }
        let max_mask: Vec<bool> = (0..n).map(|v| !to_t[v]).collect();
        let max = self.side(&max_mask);
        if self.proper(&max) {
            return Some(max);
        }
        let res = self.net.residual_graph();
        for x in 0..n {
            if from_s[x] || to_t[x] {
                continue;
            }
            let mut seen = from_s.clone();
            let mut stack = vec![x];
            seen[x] = true;
            while let Some(v) = stack.pop() {
                for &w in &res[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            let s = self.side(&seen);
            if self.proper(&s) {
                return Some(s);
            }
        }
        None
    }

    /// Max of F over proper sets, with its witness.
    pub(crate) fn proper_max(&mut self, b: &[i64], a: i64, c: i64) -> (i64, Option<VertexSet>) {
        let m = self.solve(b, a, c, None);
        if let Some(s) = self.proper_attainer() {
            return (m, Some(s));
        }
        let mut best: Option<(i64, VertexSet)> = None;
        for e in 0..self.g.m() {
            let (u, v) = self.g.edge(e);
            for (i, o) in [(u, v), (v, u)] {
                let val = self.solve(b, a, c, Some((i, o)));
                if best.as_ref().map_or(true, |(bv, _)| val > *bv) {
                    let side = self.net.reachable_from(self.g.n());
                    best = Some((val, self.side(&side)));
                }
            }
        }
        match best {
            Some((v, s)) => (v, Some(s)),
            None => (m, None),
        }
    }

    /// Is there a proper S with F(S) ≥ 0? Returns such a set. Cheaper than `proper_max`
    /// because the unrestricted maximum is never negative (F(∅) = 0).
    pub(crate) fn proper_nonnegative(&mut self, b: &[i64], a: i64, c: i64) -> Option<VertexSet> {
        let m = self.solve(b, a, c, None);
        if let Some(s) = self.proper_attainer() {
            return Some(s);
        }
        if m > 0 {
            // only improper maximizers: a disconnected graph with a component of positive
            // excess; settle it exactly
            let (pm, w) = self.proper_max(b, a, c);
            return if pm >= 0 { w } else { None };
        }
        // m == 0 is attained by ∅ (improper); a proper set with F ≥ 0 would be another
        // maximizer, and every maximizer is a closed set of the residual network, all of
        // which were inspected above for connected graphs
        if self.g.is_connected() {
            None
        } else {
            let (pm, w) = self.proper_max(b, a, c);
            if pm >= 0 {
                w
            } else {
                None
            }
        }
    }

    /// Unrestricted max of F (∅ and V included) and the minimal maximizer.
    pub(crate) fn unrestricted_max(&mut self, b: &[i64], a: i64, c: i64) -> (i64, VertexSet) {
        let m = self.solve(b, a, c, None);
        let side = self.net.reachable_from(self.g.n());
        (m, self.side(&side))
    }

    /// Every maximizer of the unrestricted problem after `solve`: the closed sets of the
    /// residual network between the minimal and maximal source sides, up to `cap` of them,
    /// in a fixed order. Returns `None` if there are more than `cap`.
    pub(crate) fn all_maximizers(&mut self, b: &[i64], a: i64, c: i64, cap: usize) -> (i64, Option<Vec<VertexSet>>) {
        let m = self.solve(b, a, c, None);
        let n = self.g.n();
        let from_s = self.net.reachable_from(n);
        let to_t = self.net.reaching(n + 1);
        let free: Vec<usize> = (0..n).filter(|&v| !from_s[v] && !to_t[v]).collect();
        let res = self.net.residual_graph();
        // closure of each free vertex inside the free region
        let closure: Vec<Vec<usize>> = free
            .iter()
            .map(|&x| {
                let mut seen = vec![false; n + 2];
                seen[x] = true;
                let mut stack = vec![x];
                let mut out = vec![];
                while let Some(v) = stack.pop() {
                    out.push(v);
                    for &w in &res[v] {
                        if w < n && !from_s[w] && !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                out
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = from_s[..n].to_vec();
        let ok = enumerate_closed(0, &free, &closure, &mut cur, &mut vec![false; n], &mut out, cap, self);
        (m, ok.then_some(out))
    }
}

/// Branch on free vertices in order: exclude (if nothing already forces it in) or include
/// with its closure.
#[allow(clippy::too_many_arguments)]
fn enumerate_closed(
    i: usize,
    free: &[usize],
    closure: &[Vec<usize>],
    cur: &mut Vec<bool>,
    excluded: &mut Vec<bool>,
    out: &mut Vec<VertexSet>,
    cap: usize,
    o: &CutOracle,
) -> bool {
    if i == free.len() {
        if out.len() >= cap {
            return false;
        }
        out.push(o.side(cur));
        return true;
    }
    let x = free[i];
    if cur[x] {
        return enumerate_closed(i + 1, free, closure, cur, excluded, out, cap, o);
    }
    // exclude x
    excluded[x] = true;
    if !enumerate_closed(i + 1, free, closure, cur, excluded, out, cap, o) {
        return false;
    }
    excluded[x] = false;
    // include x with its closure, unless that pulls in an excluded vertex
    if closure[i].iter().any(|&v| excluded[v]) {
        return true;
    }
    let added: Vec<usize> = closure[i].iter().copied().filter(|&v| !cur[v]).collect();
    for &v in &added {
        cur[v] = true;
    }
    let ok = enumerate_closed(i + 1, free, closure, cur, excluded, out, cap, o);
    for &v in &added {
        cur[v] = false;
    }
    ok
}

/// Exhaustive reference: max over proper S of c·b(S) − a·∂(S) and the least mask attaining it.
pub fn max_excess_exhaustive(g: &Graph, b: &[i64], t: Rational) -> Result<CutOracleResult> {
    check_len(g, b)?;
    if g.n() > 24 {
        return Err(Error::TooLarge(format!("exhaustive search on {} vertices", g.n())));
    }
    let (a, c) = (t.numer(), t.denom());
    let mut best: Option<(i64, u64)> = None;
    for_each_subset(g, b, |mask, bs, d| {
        if d != 0 {
            let f = c * bs - a * d as i64;
            if best.map_or(true, |(bv, bm)| f > bv || (f == bv && mask < bm)) {
                best = Some((f, mask));
            }
        }
    });
    Ok(match best {
        Some((f, mask)) => CutOracleResult { value: Rational::new(f, c)?, witness: Some(VertexSet::from_mask(g.n(), mask)) },
        None => CutOracleResult { value: Rational::zero(), witness: None },
    })
}

/// Visits every subset (as a bit mask) in Gray-code order with b(S) and ∂(S).
pub(crate) fn for_each_subset(g: &Graph, b: &[i64], mut f: impl FnMut(u64, i64, usize)) {
    let n = g.n();
    assert!(n < 64);
    let mut mask = 0u64;
    let mut bs = 0i64;
    let mut d = 0i64;
    f(0, 0, 0);
    for i in 1u64..1 << n {
        let v = i.trailing_zeros() as usize;
        let k = g.neighbors(v).iter().filter(|&&(u, _)| mask >> u & 1 == 1).count() as i64;
        let delta = g.degree(v) as i64 - 2 * k;
        if mask >> v & 1 == 0 {
            mask |= 1 << v;
            bs += b[v];
            d += delta;
        } else {
            mask &= !(1 << v);
            bs -= b[v];
            d -= delta;
        }
        f(mask, bs, d as usize);
    }
}
