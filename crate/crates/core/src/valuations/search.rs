//! φ(G) as the least φ(b) over balanced valuations, by branch and bound.
//!
//! Vertices are assigned in index order, values ascending, with Σb = 0 and b(0) ≤ 0
//! (φ(b) = φ(−b)). After each assignment the connected sets of at most six vertices whose
//! last vertex was just assigned give the lower bound φ(b) ≥ 2∂(X)/(∂(X) − |b(X)|). Full
//! assignments are checked against the incumbent by one min cut before φ(b) is computed
//! exactly. The top of the tree is split into tasks run under rayon.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{phi_valuation_with_set, scan::connected_subsets, BalancedValuation, CutOracle};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

const SMALL_SET: usize = 6;
const SPLIT_DEPTH: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub tasks: usize,
    pub nodes: u64,
    pub pruned_small: u64,
    pub pruned_cut: u64,
    pub evaluated: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.pruned_small += o.pruned_small;
        self.pruned_cut += o.pruned_cut;
        self.evaluated += o.evaluated;
    }
}

struct Problem<'a> {
    g: &'a Graph,
    domains: Vec<Vec<i64>>,
    /// sets (vertex list, boundary) grouped by their largest vertex
    sets: Vec<Vec<(Vec<usize>, i64)>>,
    /// bounds on the sum of the values of vertices i..
    rest_min: Vec<i64>,
    rest_max: Vec<i64>,
    symmetric: bool,
    deadline: Option<(Instant, Duration)>,
}

impl<'a> Problem<'a> {
    fn new(g: &'a Graph, symmetric: bool, budget: Option<Duration>) -> Result<Self> {
        if !g.is_bridgeless() {
            return Err(Error::Bridge);
        }
        if !g.is_connected() {
            return Err(Error::InvalidGraph("valuation search needs a connected graph".into()));
        }
        if g.n() < 2 {
            return Err(Error::InvalidGraph("valuation search needs an edge".into()));
        }
        let n = g.n();
        // orientable on singletons and their complements: |b(v)| < deg(v)
        let domains: Vec<Vec<i64>> = (0..n)
            .map(|v| {
                let d = g.degree(v) as i64;
                (-(d - 2)..=d - 2).step_by(2).collect()
            })
            .collect();
        let mut sets = vec![Vec::new(); n];
        for x in connected_subsets(g, SMALL_SET.min(n - 1)) {
            let last = *x.iter().max().unwrap();
            let d = g.boundary_size(&VertexSet::from_vertices(n, x.iter().copied())?)? as i64;
            sets[last].push((x, d));
        }
        let mut rest_min = vec![0; n + 1];
        let mut rest_max = vec![0; n + 1];
        for v in (0..n).rev() {
            rest_min[v] = rest_min[v + 1] + domains[v][0];
            rest_max[v] = rest_max[v + 1] + domains[v].last().unwrap();
        }
        Ok(Problem { g, domains, sets, rest_min, rest_max, symmetric, deadline: budget.map(|d| (Instant::now() + d, d)) })
    }
}

/// What a subtree is searched for.
enum Goal<'g> {
    /// least φ(b); `local` is this task's incumbent, `global` the shared one
    Minimize { local: Option<(Rational, Vec<i64>)>, global: &'g AtomicU64 },
    /// every b with φ(b) ≤ `max`
    Collect { max: Rational, found: Vec<(Vec<i64>, Rational)> },
}

const NONE: u64 = u64::MAX;

fn pack(r: Rational) -> u64 {
    ((r.numer() as u64) << 32) | r.denom() as u64
}

fn unpack(x: u64) -> Option<Rational> {
    (x != NONE).then(|| Rational::new((x >> 32) as i64, (x & 0xffff_ffff) as i64).unwrap())
}

fn lower_min(global: &AtomicU64, r: Rational) {
    let mut cur = global.load(Ordering::Relaxed);
    while unpack(cur).map_or(true, |g| r < g) {
        match global.compare_exchange_weak(cur, pack(r), Ordering::Relaxed, Ordering::Relaxed) {
            Ok(_) => return,
            Err(x) => cur = x,
        }
    }
}

/// The cut-off for a subtree: prune when φ(b) ≥ r (`strict` false) or φ(b) > r.
fn cutoff(goal: &Goal) -> Option<(Rational, bool)> {
    match goal {
        Goal::Minimize { local, global } => {
            let l = local.as_ref().map(|x| x.0);
            match (l, unpack(global.load(Ordering::Relaxed))) {
                (Some(l), Some(g)) if g < l => Some((g, true)),
                (Some(l), _) => Some((l, false)),
                (None, Some(g)) => Some((g, true)),
                (None, None) => None,
            }
        }
        Goal::Collect { max, .. } => Some((*max, true)),
    }
}

struct Worker<'p, 'g> {
    p: &'p Problem<'g>,
    oracle: CutOracle<'g>,
    b: Vec<i64>,
    stats: SearchStats,
}

impl<'p, 'g> Worker<'p, 'g> {
    fn new(p: &'p Problem<'g>) -> Self {
        Worker { p, oracle: CutOracle::new(p.g), b: vec![0; p.g.n()], stats: SearchStats::default() }
    }

    /// Does some small set with last vertex `v` already decide the prune?
    fn small_prune(&self, v: usize, cut: Option<(Rational, bool)>) -> bool {
        for (x, d) in &self.p.sets[v] {
            let bx: i64 = x.iter().map(|&u| self.b[u]).sum::<i64>().abs();
            if d - bx <= 0 {
                return true;
            }
            if let Some((r, strict)) = cut {
                // 2d/(d − bx) against r
                let o = Rational::cmp_fractions(2 * d, d - bx, r.numer(), r.denom());
                if o.is_gt() || (!strict && o.is_eq()) {
                    return true;
                }
            }
        }
        false
    }

    fn leaf(&mut self, goal: &mut Goal) -> Result<()> {
        let cut = cutoff(goal);
        let pruned = match cut {
            None => self.oracle.proper_nonnegative(&self.b, 1, 1).is_some(),
            Some((r, strict)) => {
                let t = (r - Rational::from_integer(2)) / r;
                if strict {
                    self.oracle.proper_max(&self.b, t.numer(), t.denom()).0 > 0
                } else {
                    self.oracle.proper_nonnegative(&self.b, t.numer(), t.denom()).is_some()
                }
            }
        };
        if pruned {
            self.stats.pruned_cut += 1;
            return Ok(());
        }
        self.stats.evaluated += 1;
        let (phi, _) = phi_valuation_with_set(self.p.g, &BalancedValuation::new(self.b.clone()))?;
        match goal {
            Goal::Minimize { local, global } => {
                *local = Some((phi, self.b.clone()));
                lower_min(global, phi);
            }
            Goal::Collect { found, .. } => found.push((self.b.clone(), phi)),
        }
        Ok(())
    }

    /// With `prefixes`, stops at depth `stop` and records the assignment instead of
    /// evaluating it.
    fn rec(&mut self, i: usize, sum: i64, stop: usize, goal: &mut Goal, prefixes: &mut Option<Vec<Vec<i64>>>) -> Result<()> {
        self.stats.nodes += 1;
        if let Some((at, budget)) = self.p.deadline {
            if self.stats.nodes % 1024 == 0 && Instant::now() > at {
                return Err(Error::Budget(budget));
            }
        }
        if i == stop {
            return match prefixes {
                Some(p) => {
                    p.push(self.b[..i].to_vec());
                    Ok(())
                }
                None => self.leaf(goal),
            };
        }
        for k in 0..self.p.domains[i].len() {
            let val = self.p.domains[i][k];
            if i == 0 && self.p.symmetric && val > 0 {
                break;
            }
            let s = sum + val;
            if s + self.p.rest_min[i + 1] > 0 || s + self.p.rest_max[i + 1] < 0 {
                continue;
            }
            self.b[i] = val;
            if self.small_prune(i, cutoff(goal)) {
                self.stats.pruned_small += 1;
                continue;
            }
            self.rec(i + 1, s, stop, goal, prefixes)?;
        }
        Ok(())
    }

    fn run_task(&mut self, prefix: &[i64], goal: &mut Goal) -> Result<()> {
        self.b[..prefix.len()].copy_from_slice(prefix);
        let sum = prefix.iter().sum();
        self.rec(prefix.len(), sum, self.p.g.n(), goal, &mut None)
    }
}

fn split(p: &Problem) -> Result<(Vec<Vec<i64>>, SearchStats)> {
    let mut w = Worker::new(p);
    let depth = SPLIT_DEPTH.min(p.g.n());
    let mut prefixes = Some(Vec::new());
    let global = AtomicU64::new(NONE);
    let mut goal = Goal::Minimize { local: None, global: &global };
    w.rec(0, 0, depth, &mut goal, &mut prefixes)?;
    Ok((prefixes.unwrap(), w.stats))
}

/// φ(G) and the lexicographically least valuation attaining it. Independent of the flow
/// solver; the result does not depend on the number of threads.
pub fn phi_via_valuations(g: &Graph) -> Result<(Rational, BalancedValuation)> {
    let (r, b, _) = phi_via_valuations_stats(g)?;
    Ok((r, b))
}

pub fn phi_via_valuations_stats(g: &Graph) -> Result<(Rational, BalancedValuation, SearchStats)> {
    phi_via_valuations_budgeted(g, None)
}

/// As [`phi_via_valuations_stats`], giving up with [`Error::Budget`] after `budget`.
pub fn phi_via_valuations_budgeted(g: &Graph, budget: Option<Duration>) -> Result<(Rational, BalancedValuation, SearchStats)> {
    let p = Problem::new(g, true, budget)?;
    let (prefixes, mut stats) = split(&p)?;
    stats.tasks = prefixes.len();
    let global = AtomicU64::new(NONE);
    let results: Vec<Result<(Option<(Rational, Vec<i64>)>, SearchStats)>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut w = Worker::new(&p);
            let mut goal = Goal::Minimize { local: None, global: &global };
            w.run_task(prefix, &mut goal)?;
            let Goal::Minimize { local, .. } = goal else { unreachable!() };
            Ok((local, w.stats))
        })
        .collect();
    let mut best: Option<(Rational, Vec<i64>)> = None;
    for r in results {
        let (local, s) = r?;
        stats.add(&s);
        if let Some((phi, b)) = local {
            // tasks are in lexicographic order, so the first minimum wins ties
            if best.as_ref().map_or(true, |(bp, _)| phi < *bp) {
                best = Some((phi, b));
            }
        }
    }
    let (phi, b) = best.ok_or(Error::NoSixFlow)?;
    Ok((phi, BalancedValuation::new(b), stats))
}

/// Every balanced valuation with φ(b) ≤ `max_phi` and its φ(b), in lexicographic order.
/// With `symmetric` only those with b(0) ≤ 0 are listed (the rest are their negations).
pub fn enumerate_valuations(
    g: &Graph,
    max_phi: Rational,
    symmetric: bool,
) -> Result<(Vec<(BalancedValuation, Rational)>, SearchStats)> {
    enumerate_valuations_budgeted(g, max_phi, symmetric, None)
}

pub fn enumerate_valuations_budgeted(
    g: &Graph,
    max_phi: Rational,
    symmetric: bool,
    budget: Option<Duration>,
) -> Result<(Vec<(BalancedValuation, Rational)>, SearchStats)> {
    if max_phi <= Rational::from_integer(2) {
        return Err(Error::InvalidParameter(format!("bound {max_phi} must exceed 2")));
    }
    let p = Problem::new(g, symmetric, budget)?;
    let (prefixes, mut stats) = split(&p)?;
    stats.tasks = prefixes.len();
    let results: Vec<Result<(Vec<(Vec<i64>, Rational)>, SearchStats)>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut w = Worker::new(&p);
            let mut goal = Goal::Collect { max: max_phi, found: Vec::new() };
            w.run_task(prefix, &mut goal)?;
            let Goal::Collect { found, .. } = goal else { unreachable!() };
            Ok((found, w.stats))
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        let (found, s) = r?;
        stats.add(&s);
        out.extend(found.into_iter().map(|(b, phi)| (BalancedValuation::new(b), phi)));
    }
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, petersen, prism};
    use crate::valuations::{phi_valuation_exhaustive, validate_valuation, ValuationMode};

    /// every ±1 (cubic) valuation with Σb = 0, exhaustive φ
    fn brute(g: &Graph) -> Rational {
        let n = g.n();
        let mut best: Option<Rational> = None;
        for mask in 0u64..1 << n {
            let b: Vec<i64> = (0..n).map(|v| if mask >> v & 1 == 1 { 1 } else { -1 }).collect();
            if b.iter().sum::<i64>() != 0 {
                continue;
            }
            let b = BalancedValuation::new(b);
            if validate_valuation(g, &b, ValuationMode::Orientable).unwrap().is_some() {
                continue;
            }
            let phi = phi_valuation_exhaustive(g, &b).unwrap();
            if best.map_or(true, |x| phi < x) {
                best = Some(phi);
            }
        }
        best.unwrap()
    }

    #[test]
    fn small_graphs() {
        for (g, want) in [
            (complete(4), Rational::from_integer(4)),
            (complete_bipartite(3, 3), Rational::from_integer(3)),
            (petersen().graph, Rational::from_integer(5)),
            (prism(3), Rational::from_integer(4)),
        ] {
            let (phi, b) = phi_via_valuations(&g).unwrap();
            assert_eq!(phi, want);
            assert_eq!(phi, brute(&g));
            assert_eq!(phi_valuation_exhaustive(&g, &b).unwrap(), phi);
            assert!(b.b[0] < 0);
        }
    }

    #[test]
    fn lexicographically_least() {
        let g = prism(4);
        let (phi, b) = phi_via_valuations(&g).unwrap();
        let (all, _) = enumerate_valuations(&g, phi, false).unwrap();
        assert!(all.iter().all(|(_, p)| *p == phi));
        assert_eq!(all.iter().map(|(b, _)| b).min().unwrap(), &b);
        // every optimum comes with its negation
        for (c, _) in &all {
            assert!(all.iter().any(|(d, _)| *d == c.negated()));
        }
    }

    #[test]
    fn collect_matches_brute_force() {
        let g = petersen().graph;
        let (all, _) = enumerate_valuations(&g, Rational::from_integer(20), false).unwrap();
        let mut n = 0;
        for mask in 0u64..1 << 10 {
            let b: Vec<i64> = (0..10).map(|v| if mask >> v & 1 == 1 { 1 } else { -1 }).collect();
            let b = BalancedValuation::new(b);
            if b.sum() == 0 && validate_valuation(&g, &b, ValuationMode::Orientable).unwrap().is_none() {
                n += 1;
                let phi = phi_valuation_exhaustive(&g, &b).unwrap();
                assert!(all.contains(&(b, phi)));
            }
        }
        assert_eq!(n, all.len());
    }

    #[test]
    fn bridge_rejected() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]).unwrap();
        assert_eq!(phi_via_valuations(&g), Err(Error::Bridge));
    }
}
