//! Exhaustive audit of the discharging claims over cyclic sequences of block types.
//!
//! Every locally compatible cyclic sequence is realised on the reduced Goldberg graph of
//! that length. Sequences where S or V − S is disconnected (or S is everything) cannot
//! come from an optimal set and are dropped. The rest are discharged and every claim is
//! checked. A sequence that breaks a claim is then tested against the global facts about
//! optimal sets (boundary colours, the pattern bound, maximality and small components
//! after swaps); it only counts as a failure if none of them rules it out.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::Catalog;
use super::discharge::{frame_for, incompatibility, realise, run, ChargeLedger, Frame, Side};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::valuations::connected_subsets;

/// Claim names, in report order.
pub const CLAIMS: [&str; 11] = [
    "conservation",
    "charge-bound",
    "total-bound",
    "boundary-count",
    "cl01",
    "cl02",
    "cl02b",
    "cl03",
    "cl04",
    "no-D3",
    "forwarding",
];

/// Largest swap sets tried by the global rules.
pub const GLOBAL_SWAP_MAX: usize = 10;
/// Largest sets scanned for φ ≥ 9/2 by the global rules.
pub const GLOBAL_PATTERN_MAX: usize = 7;

/// The reduced Goldberg graph as bit masks, with its small connected sets.
pub(crate) struct MaskGraph {
    pub frame: Frame,
    pub nbr: Vec<u64>,
    pub all: u64,
    /// connected sets without the hub, with their boundary sizes
    pub small: Vec<(u64, i64)>,
}

impl MaskGraph {
    pub fn new(frame: Frame) -> Result<Self> {
        let n = frame.graph.n();
        if n > 64 {
            return Err(Error::TooLarge(format!("{n} vertices")));
        }
        let mut nbr = vec![0u64; n];
        for &(u, v) in frame.graph.edges() {
            nbr[u] |= 1 << v;
            nbr[v] |= 1 << u;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| v != frame.hub).collect();
        let (sub, _) = frame.graph.induced(&keep);
        let small = connected_subsets(&sub, GLOBAL_SWAP_MAX)
            .into_iter()
            .map(|x| {
                let m = x.iter().fold(0u64, |a, &v| a | 1 << keep[v]);
                (m, boundary(&nbr, m))
            })
            .collect();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(MaskGraph { frame, nbr, all, small })
    }

    fn connected(&self, x: u64) -> bool {
        x != 0 && self.component(x, x.trailing_zeros() as usize) == x
    }

    fn component(&self, x: u64, v: usize) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.nbr[u] & x & !seen;
            seen |= new;
            frontier |= new;
        }
        seen
    }

    fn components(&self, mut x: u64) -> Vec<u64> {
        let mut out = vec![];
        while x != 0 {
            let c = self.component(x, x.trailing_zeros() as usize);
            out.push(c);
            x &= !c;
        }
        out
    }
}

fn boundary(nbr: &[u64], x: u64) -> i64 {
    bits(x).map(|v| (nbr[v] & !x).count_ones() as i64).sum()
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let v = x.trailing_zeros() as usize;
            x &= x - 1;
            v
        })
    })
}

fn boundary_colours_ok(mg: &MaskGraph, s: u64, white: u64) -> bool {
    let hub = mg.frame.hub;
    bits(s).filter(|&x| x != hub).all(|x| mg.nbr[x] & !s == 0 || white >> x & 1 == 1)
        && bits(mg.all & !s).all(|x| mg.nbr[x] & s == 0 || white >> x & 1 == 0)
}

/// Global reasons a realised sequence cannot come from an optimal, maximal S:
/// "boundary-colours", "pattern", "not-maximal", "swap-boundary-colours", "swap-small-cut"
/// or, last, "small-cut" (∂(S) < 4k + 9).
pub(crate) fn global_exclusion(mg: &MaskGraph, s: u64, white: u64) -> Option<&'static str> {
    let k = (mg.frame.blocks() as i64 - 1) / 2;
    if !boundary_colours_ok(mg, s, white) {
        return Some("boundary-colours");
    }
    let colour = |x: u64| 2 * (x & white).count_ones() as i64 - x.count_ones() as i64;
    for &(x, d) in &mg.small {
        if x.count_ones() as usize > GLOBAL_PATTERN_MAX {
            continue;
        }
        let bx = colour(x);
        for b in [bx, -bx] {
            // φ(X) = 2d/(d − b) ≥ 9/2, or undefined
            if d - b <= 0 || 4 * d >= 9 * (d - b) {
                return Some("pattern");
            }
        }
    }
    let hub = 1u64 << mg.frame.hub;
    for &(t, _) in &mg.small {
        let adding = t & s == 0;
        if !adding && t & (s & !hub) != t {
            continue;
        }
        if colour(t) != 0 {
            continue;
        }
        let (mut to_s, mut all) = (0, 0);
        for v in bits(t) {
            let out = mg.nbr[v] & !t;
            all += out.count_ones();
            to_s += (out & s).count_ones();
        }
        if all == 0 || 2 * to_s != all {
            continue;
        }
        if adding {
            return Some("not-maximal");
        }
        let s2 = s & !t;
        if !boundary_colours_ok(mg, s2, white) {
            return Some("swap-boundary-colours");
        }
        let small = mg.components(s2).into_iter().chain(mg.components(mg.all & !s2)).any(|c| boundary(&mg.nbr, c) < 4 * k + 9);
        if small {
            return Some("swap-small-cut");
        }
    }
    if boundary(&mg.nbr, s) < 4 * k + 9 {
        return Some("small-cut");
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimFinding {
    pub claim: String,
    pub block: Option<usize>,
    pub detail: String,
}

fn finding(claim: &str, block: Option<usize>, detail: String) -> ClaimFinding {
    ClaimFinding { claim: claim.into(), block, detail }
}

/// Every claim a discharged sequence breaks.
pub(crate) fn claim_findings(cat: &Catalog, seq: &[usize], ledger: &ChargeLedger) -> Vec<ClaimFinding> {
    let l = seq.len();
    let mut out = vec![];
    let id = |i: usize| cat.types[seq[i % l]].id.as_str();
    let t = |i: usize| &cat.types[seq[i % l]];
    if !ledger.conserved() {
        out.push(finding("conservation", None, "charge created or lost".into()));
    }
    for i in ledger.over_cap() {
        out.push(finding("charge-bound", Some(i), format!("{} ends with {} > {}", id(i), ledger.charges[i], ledger.cap(i))));
    }
    let cap = Rational::from_integer(2 * l as i64 + 6);
    if ledger.total() > cap {
        out.push(finding("total-bound", None, format!("total {} > {cap}", ledger.total())));
    }
    let nl = ledger.left_boundary.iter().filter(|&&x| x).count();
    let nr = ledger.right_boundary.iter().filter(|&&x| x).count();
    if nl > 1 || nr > 1 {
        out.push(finding("boundary-count", None, format!("{nl} left and {nr} right boundaries")));
    }
    if ledger.forwarding_cycle {
        out.push(finding("forwarding", None, "step-3 charge forwarded around the ring".into()));
    }
    let half = Rational::new(1, 2).expect("nonzero");
    let q = |p: i64, d: i64| Rational::new(p, d).expect("nonzero");
    for i in 0..l {
        let zero = Rational::zero();
        let s2l = ledger.received(i, Side::Left, &[2]);
        let s2r = ledger.received(i, Side::Right, &[2]);
        let s3 = ledger.received(i, Side::Left, &[3]) + ledger.received(i, Side::Right, &[3]);
        if s2l > zero && !ledger.right_boundary[i] {
            out.push(finding("cl01", Some(i), format!("{} gets {s2l} from the left in step 2 but is not a right boundary", id(i))));
        }
        if s2r > zero && !ledger.left_boundary[i] {
            out.push(finding("cl01", Some(i), format!("{} gets {s2r} from the right in step 2 but is not a left boundary", id(i))));
        }
        if s2l + s2r > zero && s3 > zero {
            out.push(finding("cl01", Some(i), format!("{} gets charge in steps 2 and 3", id(i))));
        }
        let ti = t(i);
        for side in [Side::Left, Side::Right] {
            let (members, nbr, excluded, not_boundary) = match side {
                Side::Left => (ti.membership[0] as usize + ti.membership[5] as usize, id(i + l - 1), ["G_2^T", "G_4"], !ledger.right_boundary[i]),
                _ => (ti.membership[1] as usize + ti.membership[6] as usize, id(i + 1), ["G_2", "G_4^T"], !ledger.left_boundary[i]),
            };
            let got = ledger.received(i, side, &[1, 2, 3]);
            let name = if side == Side::Left { "left" } else { "right" };
            let tables: [(&str, bool, [Rational; 3]); 3] = [
                ("cl02", true, [half, q(5, 2), q(7, 2)]),
                ("cl02b", !excluded.contains(&nbr), [half, q(2, 1), q(3, 1)]),
                ("cl03", not_boundary, [half, q(3, 2), zero]),
            ];
            for (claim, applies, table) in tables {
                if applies && got > table[members] {
                    out.push(finding(claim, Some(i), format!("{} gets {got} from the {name} (bound {})", id(i), table[members])));
                }
            }
        }
        let group = ["E_1", "E_1^T", "C_2", "C_2^T", "C_4", "C_4^T"];
        if group.contains(&id(i)) && group.contains(&id(i + 1)) {
            out.push(finding("cl04", Some(i), format!("{} next to {}", id(i), id(i + 1))));
        }
        if id(i) == "D_3" || id(i) == "D_3^T" {
            out.push(finding("no-D3", Some(i), id(i).into()));
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimTally {
    /// sequences where the discharged charges break the claim
    pub flagged: usize,
    /// of those, ruled out by a global fact about optimal sets
    pub excluded: usize,
    /// not ruled out: audit failures
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceFailure {
    pub types: Vec<String>,
    pub findings: Vec<ClaimFinding>,
    pub charges: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceAudit {
    pub length: usize,
    /// locally compatible cyclic sequences, up to rotation and reversal
    pub compatible: usize,
    /// dropped because S or V − S is disconnected, or S is everything
    pub disconnected: usize,
    pub discharged: usize,
    /// discharged sequences breaking some claim
    pub flagged: usize,
    /// flagged sequences by the global fact ruling them out
    pub excluded: BTreeMap<String, usize>,
    pub claims: BTreeMap<String, ClaimTally>,
    pub failures: Vec<SequenceFailure>,
    pub max_plain_charge: Rational,
    pub max_total: Rational,
    pub passed: bool,
}

/// The image of a sequence under reversing: read backwards, every type reversed.
fn reversed(cat: &Catalog, seq: &[usize]) -> Vec<usize> {
    seq.iter().rev().map(|&t| cat.reverse(t)).collect()
}

fn is_canonical(cat: &Catalog, seq: &[usize]) -> bool {
    let l = seq.len();
    let rev = reversed(cat, seq);
    (0..l).all(|r| {
        let rot = |x: &[usize]| (0..l).map(|i| x[(i + r) % l]).collect::<Vec<_>>();
        seq <= &rot(seq)[..] && seq <= &rot(&rev)[..]
    })
}

/// Pairs (t, u) that can stand next to each other, t on the left.
fn pair_table(cat: &Catalog) -> Vec<Vec<bool>> {
    let n = cat.len();
    let mut tab = vec![vec![false; n]; n];
    for t in 0..n {
        for u in 0..n {
            let (a, b) = (&cat.types[t], &cat.types[u]);
            // only the shared interface matters: compare against every context
            let right_ok = a.context_codes().iter().any(|&c| {
                let (m, w) = (c & 15, c >> 4);
                (m >> 2 & 1 == b.membership[0] as u8)
                    && (m >> 3 & 1 == b.membership[5] as u8)
                    && (w >> 2 & 1 == (b.colouring[0] > 0) as u8)
                    && (w >> 3 & 1 == (b.colouring[5] > 0) as u8)
            });
            let left_ok = b.context_codes().iter().any(|&c| {
                let (m, w) = (c & 15, c >> 4);
                (m & 1 == a.membership[1] as u8)
                    && (m >> 1 & 1 == a.membership[6] as u8)
                    && (w & 1 == (a.colouring[1] > 0) as u8)
                    && (w >> 1 & 1 == (a.colouring[6] > 0) as u8)
            });
            tab[t][u] = right_ok && left_ok;
        }
    }
    tab
}

/// Catalog types that can stand directly left of `id`.
pub fn left_neighbours(cat: &Catalog, id: &str) -> Vec<String> {
    let Some(u) = cat.get(id) else { return vec![] };
    let tab = pair_table(cat);
    let mut out: Vec<String> = (0..cat.len()).filter(|&t| tab[t][u]).map(|t| cat.types[t].id.clone()).collect();
    out.sort();
    out
}

/// All locally compatible cyclic sequences of the given length, canonical under rotation
/// and reversal, in lexicographic order of catalog indices.
pub fn compatible_sequences(cat: &Catalog, len: usize) -> Vec<Vec<usize>> {
    let tab = pair_table(cat);
    let n = cat.len();
    let mut per_first: Vec<Vec<Vec<usize>>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut out = vec![];
            let mut seq = vec![first];
            extend_seq(cat, &tab, len, &mut seq, &mut out);
            out
        })
        .collect();
    per_first.iter_mut().flat_map(std::mem::take).collect()
}

fn extend_seq(cat: &Catalog, tab: &[Vec<bool>], len: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if seq.len() == len {
        if tab[seq[len - 1]][seq[0]] && incompatibility(cat, seq).is_none() && is_canonical(cat, seq) {
            out.push(seq.clone());
        }
        return;
    }
    let last = *seq.last().expect("nonempty");
    for t in seq[0]..cat.len() {
        if !tab[last][t] {
            continue;
        }
        seq.push(t);
        let m = seq.len();
        let ok = m < 3 || {
            // the middle of the last three placed blocks now has both neighbours
            let window = [seq[m - 3], seq[m - 2], seq[m - 1]];
            cat.allows(window[1], super::discharge::context_in(cat, &window, 1))
        };
        if ok {
            extend_seq(cat, tab, len, seq, out);
        }
        seq.pop();
    }
}

struct Outcome {
    disconnected: bool,
    findings: Vec<ClaimFinding>,
    excluded: Option<&'static str>,
    ledger: Option<ChargeLedger>,
}

fn audit_one(cat: &Catalog, mg: &MaskGraph, seq: &[usize]) -> Outcome {
    let (s, b) = realise(cat, &mg.frame, seq);
    let sm = (0..s.len()).filter(|&v| s[v]).fold(0u64, |a, v| a | 1 << v);
    let white = (0..b.len()).filter(|&v| b[v] > 0).fold(0u64, |a, v| a | 1 << v);
    if sm == mg.all || !mg.connected(sm) || !mg.connected(mg.all & !sm) {
        return Outcome { disconnected: true, findings: vec![], excluded: None, ledger: None };
    }
    let ledger = run(cat, &mg.frame, &s, seq);
    let findings = claim_findings(cat, seq, &ledger);
    let excluded = if findings.is_empty() { None } else { global_exclusion(mg, sm, white) };
    Outcome { disconnected: false, findings, excluded, ledger: Some(ledger) }
}

/// Audits every compatible cyclic sequence of length `len` (odd, ≥ 3).
pub fn audit_sequences(cat: &Catalog, len: usize) -> Result<SequenceAudit> {
    let mg = MaskGraph::new(frame_for(len)?)?;
    let seqs = compatible_sequences(cat, len);
    let outcomes: Vec<Outcome> = seqs.par_iter().map(|seq| audit_one(cat, &mg, seq)).collect();
    let mut report = SequenceAudit {
        length: len,
        compatible: seqs.len(),
        disconnected: 0,
        discharged: 0,
        flagged: 0,
        excluded: BTreeMap::new(),
        claims: CLAIMS.iter().map(|c| (c.to_string(), ClaimTally::default())).collect(),
        failures: vec![],
        max_plain_charge: Rational::zero(),
        max_total: Rational::zero(),
        passed: true,
    };
    for (seq, o) in seqs.iter().zip(outcomes) {
        if o.disconnected {
            report.disconnected += 1;
            continue;
        }
        report.discharged += 1;
        let ledger = o.ledger.expect("discharged");
        if o.findings.is_empty() || o.excluded.is_none() {
            for i in 0..len {
                if !ledger.left_boundary[i] && !ledger.right_boundary[i] {
                    report.max_plain_charge = report.max_plain_charge.max(ledger.charges[i]);
                }
            }
            report.max_total = report.max_total.max(ledger.total());
        }
        if o.findings.is_empty() {
            continue;
        }
        report.flagged += 1;
        let mut names: Vec<&str> = o.findings.iter().map(|f| f.claim.as_str()).collect();
        names.sort();
        names.dedup();
        for nm in &names {
            let tally = report.claims.get_mut(*nm).expect("known claim");
            tally.flagged += 1;
            match o.excluded {
                Some(_) => tally.excluded += 1,
                None => tally.failed += 1,
            }
        }
        match o.excluded {
            Some(why) => *report.excluded.entry(why.to_string()).or_insert(0) += 1,
            None => {
                report.passed = false;
                report.failures.push(SequenceFailure {
                    types: seq.iter().map(|&t| cat.types[t].id.clone()).collect(),
                    findings: o.findings,
                    charges: ledger.charges,
                });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReceiveBoundReport {
    pub lengths: Vec<usize>,
    /// per claim, summed over the lengths
    pub claims: BTreeMap<String, ClaimTally>,
    /// types that fit directly left of D_3
    pub d3_left_neighbours: Vec<String>,
    /// sequences containing D_3 or D_3^T that survive the local and connectivity checks
    pub d3_sequences: usize,
    /// of those, ruled out by a global fact
    pub d3_excluded: usize,
    pub passed: bool,
}

const RECEIVE_CLAIMS: [&str; 6] = ["cl01", "cl02", "cl02b", "cl03", "cl04", "no-D3"];

/// The receive tables, the step-2/step-3 exclusivity, the forbidden neighbours and the
/// absence of D_3, summarised from sequence audits.
pub fn receive_bound_audit_from(cat: &Catalog, audits: &[SequenceAudit]) -> ReceiveBoundReport {
    let mut claims: BTreeMap<String, ClaimTally> = RECEIVE_CLAIMS.iter().map(|c| (c.to_string(), ClaimTally::default())).collect();
    for a in audits {
        for (name, t) in claims.iter_mut() {
            let x = &a.claims[name];
            t.flagged += x.flagged;
            t.excluded += x.excluded;
            t.failed += x.failed;
        }
    }
    let d3 = &claims["no-D3"];
    ReceiveBoundReport {
        lengths: audits.iter().map(|a| a.length).collect(),
        d3_left_neighbours: left_neighbours(cat, "D_3"),
        d3_sequences: d3.flagged,
        d3_excluded: d3.excluded,
        passed: claims.values().all(|t| t.failed == 0),
        claims,
    }
}

pub fn receive_bound_audit(cat: &Catalog) -> Result<ReceiveBoundReport> {
    let audits = [audit_sequences(cat, 3)?, audit_sequences(cat, 5)?];
    Ok(receive_bound_audit_from(cat, &audits))
}

/// Discharges a realised sequence and returns the findings and the global exclusion, for
/// inspecting single cases.
pub fn inspect_sequence(cat: &Catalog, ids: &[&str]) -> Result<(ChargeLedger, Vec<ClaimFinding>, Option<String>)> {
    let seq = ids
        .iter()
        .map(|id| cat.get(id).ok_or_else(|| Error::Catalog(format!("unknown type {id}"))))
        .collect::<Result<Vec<_>>>()?;
    let mg = MaskGraph::new(frame_for(seq.len())?)?;
    if let Some(why) = incompatibility(cat, &seq) {
        return Err(Error::Incompatible(why));
    }
    let o = audit_one(cat, &mg, &seq);
    let ledger = match o.ledger {
        Some(l) => l,
        None => return Err(Error::InvalidParameter("S or V − S is disconnected".into())),
    };
    Ok((ledger, o.findings, o.excluded.map(String::from)))
}
