//! φ(S, b), φ(b) and the sets attaining it.

use super::{check_len, for_each_subset, BalancedValuation, CutOracle};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// (∂ + b)/(∂ − b) + 1 = 2∂/(∂ − b) from the raw numbers.
pub fn phi_set_raw(boundary: i64, bs: i64) -> Result<Rational> {
    if boundary == 0 {
        return Err(Error::UndefinedPhi("empty boundary".into()));
    }
    if boundary - bs <= 0 {
        return Err(Error::UndefinedPhi(format!("∂ − b = {} ≤ 0", boundary - bs)));
    }
    Rational::new(2 * boundary, boundary - bs)
}

pub fn phi_set(g: &Graph, b: &BalancedValuation, s: &VertexSet) -> Result<Rational> {
    check_len(g, &b.b)?;
    phi_set_raw(g.boundary_size(s)? as i64, b.on(s))
}

/// φ(S, b) > r ⇔ b(S) > t·∂(S) with t = (r − 2)/r.
fn threshold(r: Rational) -> Result<Rational> {
    if r <= Rational::from_integer(2) {
        return Err(Error::InvalidParameter(format!("r = {r} must exceed 2")));
    }
    Ok((r - Rational::from_integer(2)) / r)
}

/// Some proper S with φ(S, b) > r, if one exists.
pub fn violating_set(g: &Graph, b: &BalancedValuation, r: Rational) -> Result<Option<VertexSet>> {
    check_len(g, &b.b)?;
    let t = threshold(r)?;
    let (m, w) = CutOracle::new(g).proper_max(&b.b, t.numer(), t.denom());
    Ok(if m > 0 { w } else { None })
}

/// φ(b) with a set attaining it. Dinkelbach iteration on the cut oracle, starting from the
/// best single vertex; every step strictly increases b(S)/∂(S).
pub fn phi_valuation_with_set(g: &Graph, b: &BalancedValuation) -> Result<(Rational, VertexSet)> {
    check_len(g, &b.b)?;
    let mut o = CutOracle::new(g);
    let mut cur = (0..g.n())
        .filter(|&v| g.degree(v) > 0)
        .max_by(|&u, &v| {
            Rational::cmp_fractions(b.b[u], g.degree(u) as i64, b.b[v], g.degree(v) as i64).then(v.cmp(&u))
        })
        .map(|v| VertexSet::from_vertices(g.n(), [v]).unwrap())
        .ok_or_else(|| Error::UndefinedPhi("graph has no edges".into()))?;
    loop {
        let d = g.boundary_size(&cur)? as i64;
        let bs = b.on(&cur);
        if bs >= d {
            return Err(Error::NotOrientable);
        }
        if bs < 0 {
            if g.n() <= 22 {
                return phi_valuation_exhaustive_with_set(g, b);
            }
            return Err(Error::InvalidParameter("every proper set has negative b(S)".into()));
        }
        let t = Rational::new(bs, d)?;
        let (m, w) = o.proper_max(&b.b, t.numer(), t.denom());
        match w {
            Some(w) if m > 0 => cur = w,
            _ => return Ok((phi_set_raw(d, bs)?, cur)),
        }
    }
}

pub fn phi_valuation(g: &Graph, b: &BalancedValuation) -> Result<Rational> {
    Ok(phi_valuation_with_set(g, b)?.0)
}

fn phi_valuation_exhaustive_with_set(g: &Graph, b: &BalancedValuation) -> Result<(Rational, VertexSet)> {
    check_len(g, &b.b)?;
    if g.n() > 22 {
        return Err(Error::TooLarge(format!("exhaustive search on {} vertices", g.n())));
    }
    let mut best: Option<(i64, i64, u64)> = None;
    let mut bad = false;
    for_each_subset(g, &b.b, |mask, bs, d| {
        if d == 0 {
            return;
        }
        let d = d as i64;
        if bs >= d {
            bad = true;
            return;
        }
        // compare 2d/(d-bs) with the best 2d'/(d'-bs')
        let better = match best {
            None => true,
            Some((bd, bb, bm)) => {
                let o = Rational::cmp_fractions(2 * d, d - bs, 2 * bd, bd - bb);
                o.is_gt() || (o.is_eq() && mask < bm)
            }
        };
        if better {
            best = Some((d, bs, mask));
        }
    });
    if bad {
        return Err(Error::NotOrientable);
    }
    let (d, bs, mask) = best.ok_or_else(|| Error::UndefinedPhi("graph has no edges".into()))?;
    Ok((phi_set_raw(d, bs)?, VertexSet::from_mask(g.n(), mask)))
}

/// φ(b) by enumerating every subset (n ≤ 22).
pub fn phi_valuation_exhaustive(g: &Graph, b: &BalancedValuation) -> Result<Rational> {
    Ok(phi_valuation_exhaustive_with_set(g, b)?.0)
}

/// Every proper S with φ(S, b) = φ(b) (closed sets of the final residual network), up to
/// `cap`; `None` when there are more.
pub fn optimal_sets(g: &Graph, b: &BalancedValuation, cap: usize) -> Result<(Rational, Option<Vec<VertexSet>>)> {
    let (phi, s) = phi_valuation_with_set(g, b)?;
    let d = g.boundary_size(&s)? as i64;
    let t = Rational::new(b.on(&s), d)?;
    let mut o = CutOracle::new(g);
    // nonnegative t: the improper sets ∅ (and V when Σb = 0) also attain 0
    let (m, all) = o.all_maximizers(&b.b, t.numer(), t.denom(), cap.saturating_add(2));
    debug_assert_eq!(m, 0);
    let all = all.map(|v| {
        v.into_iter().filter(|x| g.boundary_size(x).unwrap() != 0).collect::<Vec<_>>()
    });
    Ok((phi, all.filter(|v| v.len() <= cap)))
}
