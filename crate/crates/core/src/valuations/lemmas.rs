//! Executable forms of the structural facts about optimal cuts, checked on one (G, b, S).

use serde::Serialize;

use super::{connected_subsets, phi_set, phi_valuation, BalancedValuation};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaStatus {
    Pass,
    Fail,
    /// the premise does not apply to this instance
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub status: LemmaStatus,
    pub witness: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn failures(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| c.status == LemmaStatus::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn get(&self, lemma: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.lemma == lemma)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn check(lemma: &str, status: LemmaStatus, witness: Option<&VertexSet>, detail: impl Into<String>) -> LemmaCheck {
    LemmaCheck { lemma: lemma.into(), status, witness: witness.map(|w| w.to_vec()), detail: detail.into() }
}

/// Largest swap sets tried by the "swap" check.
pub const SWAP_SET_MAX: usize = 6;

/// Runs the checks "complement", "split", "split-complement", "boundary-colours", "swap"
/// and "flow-bound" on (g, b, s). Unmet premises give `Skipped`; only malformed input
/// (wrong lengths, ∂(s) = 0, b not orientable) is an error.
pub fn lemma_suite(g: &Graph, b: &BalancedValuation, s: &VertexSet, k: usize) -> Result<LemmaReport> {
    let phi_s = phi_set(g, b, s)?;
    let phi_b = phi_valuation(g, b)?;
    let optimal = phi_s == phi_b;
    let comp = s.complement();
    let mut checks = Vec::new();

    // φ(S, b) = φ(V − S, −b) and φ(b) = φ(−b)
    let nb = b.negated();
    let c1 = phi_set(g, &nb, &comp)?;
    let c2 = phi_valuation(g, &nb)?;
    checks.push(if c1 == phi_s && c2 == phi_b {
        check("complement", LemmaStatus::Pass, None, format!("φ(S,b) = {phi_s}, φ(b) = {phi_b}"))
    } else {
        check("complement", LemmaStatus::Fail, Some(s), format!("φ(S,b) = {phi_s} vs {c1}; φ(b) = {phi_b} vs {c2}"))
    });

    checks.push(split_check(g, b, s, phi_b, optimal, false)?);
    checks.push(split_check(g, b, s, phi_b, optimal, true)?);
    checks.push(boundary_colours(g, b, s, phi_b, optimal)?);
    checks.push(swaps(g, b, s, phi_s)?);
    checks.push(flow_bound(g, s, phi_s, k)?);
    Ok(LemmaReport { checks })
}

/// S (or V − S when `outside`) split into a component A and the rest B: both parts must
/// attain φ(b) (as A, B or as V − A, V − B).
fn split_check(g: &Graph, b: &BalancedValuation, s: &VertexSet, phi_b: Rational, optimal: bool, outside: bool) -> Result<LemmaCheck> {
    let name = if outside { "split-complement" } else { "split" };
    let side = if outside { s.complement() } else { s.clone() };
    let comps = g.components_within(&side)?;
    if !optimal || comps.len() < 2 {
        let why = if !optimal { "S is not optimal" } else { "connected" };
        return Ok(check(name, LemmaStatus::Skipped, None, why));
    }
    for a in &comps {
        let bset = side.difference(a)?;
        for part in [a, &bset] {
            let x = if outside { part.complement() } else { part.clone() };
            let val = phi_set(g, b, &x)?;
            if val != phi_b {
                return Ok(check(name, LemmaStatus::Fail, Some(part), format!("part has φ = {val}, φ(b) = {phi_b}")));
            }
        }
    }
    Ok(check(name, LemmaStatus::Pass, None, format!("{} components", comps.len())))
}

fn boundary_colours(g: &Graph, b: &BalancedValuation, s: &VertexSet, phi_b: Rational, optimal: bool) -> Result<LemmaCheck> {
    const NAME: &str = "boundary-colours";
    if !optimal || phi_b <= Rational::from_integer(3) {
        return Ok(check(NAME, LemmaStatus::Skipped, None, "needs φ(S,b) = φ(b) > 3"));
    }
    for (u, v) in g.edges().iter().copied() {
        if s.contains(u) == s.contains(v) {
            continue;
        }
        let (inside, outside) = if s.contains(u) { (u, v) } else { (v, u) };
        if g.degree(inside) == 3 && b.b[inside] != 1 {
            return Ok(check(NAME, LemmaStatus::Fail, Some(&VertexSet::from_vertices(g.n(), [inside])?), "black vertex of S on the boundary"));
        }
        if g.degree(outside) == 3 && b.b[outside] != -1 {
            return Ok(check(NAME, LemmaStatus::Fail, Some(&VertexSet::from_vertices(g.n(), [outside])?), "white vertex outside S on the boundary"));
        }
    }
    Ok(check(NAME, LemmaStatus::Pass, None, ""))
}

/// Every connected T, |T| ≤ 6, on one side of S with b(T) = 0 and its leaving edges split
/// evenly between S and V − S: moving T across leaves φ unchanged.
fn swaps(g: &Graph, b: &BalancedValuation, s: &VertexSet, phi_s: Rational) -> Result<LemmaCheck> {
    const NAME: &str = "swap";
    let mut tried = 0;
    for t in connected_subsets(g, SWAP_SET_MAX) {
        let inside = s.contains(t[0]);
        if t.iter().any(|&v| s.contains(v) != inside) || t.iter().map(|&v| b.b[v]).sum::<i64>() != 0 {
            continue;
        }
        let tset = VertexSet::from_vertices(g.n(), t.iter().copied())?;
        let (mut to_s, mut to_rest) = (0, 0);
        for &v in &t {
            for &(u, _) in g.neighbors(v) {
                if tset.contains(u) {
                    continue;
                }
                if s.contains(u) {
                    to_s += 1;
                } else {
                    to_rest += 1;
                }
            }
        }
        if to_s != to_rest {
            continue;
        }
        let moved = if inside { s.difference(&tset)? } else { s.union(&tset)? };
        if g.boundary_size(&moved)? == 0 {
            continue;
        }
        tried += 1;
        let val = phi_set(g, b, &moved)?;
        if val != phi_s {
            return Ok(check(NAME, LemmaStatus::Fail, Some(&tset), format!("φ moved from {phi_s} to {val}")));
        }
    }
    Ok(if tried == 0 {
        check(NAME, LemmaStatus::Skipped, None, "no swap set")
    } else {
        check(NAME, LemmaStatus::Pass, None, format!("{tried} swap sets"))
    })
}

/// If 4 < φ(S, b) < 4 + 1/k then ∂(S) ≥ 4k + 5; checked for the given k and for the
/// largest k the value allows.
fn flow_bound(g: &Graph, s: &VertexSet, phi_s: Rational, k: usize) -> Result<LemmaCheck> {
    const NAME: &str = "flow-bound";
    let four = Rational::from_integer(4);
    if phi_s <= four {
        return Ok(check(NAME, LemmaStatus::Skipped, None, format!("φ(S,b) = {phi_s} ≤ 4")));
    }
    // largest k with φ < 4 + 1/k, i.e. k < 1/(φ − 4)
    let inv = Rational::one() / (phi_s - four);
    let kmax = if inv.denom() == 1 { inv.numer() - 1 } else { inv.floor() };
    let d = g.boundary_size(s)? as i64;
    let k = k as i64;
    let given = k >= 1 && phi_s < four + Rational::new(1, k)?;
    for kk in [if given { k } else { 0 }, kmax] {
        if kk >= 1 && d < 4 * kk + 5 {
            return Ok(check(NAME, LemmaStatus::Fail, Some(s), format!("∂(S) = {d} < {} with k = {kk}", 4 * kk + 5)));
        }
    }
    if kmax < 1 {
        return Ok(check(NAME, LemmaStatus::Skipped, None, format!("φ(S,b) = {phi_s} ≥ 5")));
    }
    Ok(check(NAME, LemmaStatus::Pass, None, format!("∂(S) = {d}, k up to {kmax}")))
}
