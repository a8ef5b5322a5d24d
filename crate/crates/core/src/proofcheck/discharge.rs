//! Block classification, boundaries and the three-step charge redistribution on reduced
//! Goldberg graphs.

use serde::Serialize;

use super::block::*;
use super::catalog::{context_of_masks, Catalog, Step3Role};
use crate::error::{Error, Result};
use crate::families::{block_indexing, reduced_goldberg, BlockIndexing, Family, LabeledGraph};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;
use crate::valuations::BalancedValuation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockMatch {
    /// index into the catalog
    pub index: usize,
    pub id: String,
    /// the catalog entry was derived for this context of the four outside vertices
    pub context_ok: bool,
}

/// The reduced Goldberg graph with its block structure, reusable across memberships.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub graph: Graph,
    pub bi: BlockIndexing,
    pub hub: usize,
    /// (block, position in a..g) for every non-hub vertex
    pub slot: Vec<Option<(usize, usize)>>,
}

impl Frame {
    pub fn new(lg: &LabeledGraph) -> Result<Self> {
        if lg.family != Family::ReducedGoldberg {
            return Err(Error::WrongFamily("expected a reduced Goldberg graph".into()));
        }
        let bi = block_indexing(lg)?;
        let hub = lg.hub().ok_or_else(|| Error::WrongFamily("no hub".into()))?;
        let mut slot = vec![None; lg.graph.n()];
        for (i, b) in bi.blocks.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                slot[v] = Some((i, j));
            }
        }
        Ok(Frame { graph: lg.graph.clone(), bi, hub, slot })
    }

    pub fn blocks(&self) -> usize {
        self.bi.blocks.len()
    }

    /// (white, members) over the 11 extended vertices of block i
    pub fn pattern(&self, white: &[bool], s: &[bool], i: usize) -> (Mask, Mask) {
        let mut w = 0;
        let mut m = 0;
        for (j, &v) in self.bi.extended[i].iter().enumerate() {
            w |= (white[v] as Mask) << j;
            m |= (s[v] as Mask) << j;
        }
        (w, m)
    }
}

fn describe(white: Mask, s: Mask) -> String {
    format!("white={} S={}", mask_to_string(white, 11), mask_to_string(s, 11))
}

fn classify(cat: &Catalog, frame: &Frame, white: &[bool], s: &[bool], i: usize) -> Result<BlockMatch> {
    let (w, m) = frame.pattern(white, s, i);
    let index = cat.lookup(w, m).ok_or_else(|| Error::Unclassified { block: i, pattern: describe(w, m) })?;
    Ok(BlockMatch { index, id: cat.types[index].id.clone(), context_ok: cat.allows(index, context_of_masks(m, w)) })
}

fn flags(g: &Graph, b: &BalancedValuation, s: &VertexSet) -> Result<(Vec<bool>, Vec<bool>)> {
    if b.b.len() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), found: b.b.len() });
    }
    if s.n() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), found: s.n() });
    }
    Ok((b.b.iter().map(|&x| x > 0).collect(), (0..g.n()).map(|v| s.contains(v)).collect()))
}

/// The catalog type of block i under (b, s). Reverse, switch and twist are already part of
/// the catalog, so the match is a direct lookup.
pub fn block_type_of(cat: &Catalog, lg: &LabeledGraph, b: &BalancedValuation, s: &VertexSet, i: usize) -> Result<BlockMatch> {
    let frame = Frame::new(lg)?;
    if i >= frame.blocks() {
        return Err(Error::InvalidParameter(format!("no block {i}")));
    }
    let (white, inside) = flags(&lg.graph, b, s)?;
    classify(cat, &frame, &white, &inside, i)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Boundaries {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

fn boundary_flags(frame: &Frame, s: &[bool]) -> (Vec<bool>, Vec<bool>) {
    (0..frame.blocks())
        .map(|i| {
            let (_, m) = frame.pattern(&vec![false; s.len()], s, i);
            (left_boundary(m), right_boundary(m))
        })
        .unzip()
}

pub fn detect_boundaries(lg: &LabeledGraph, s: &VertexSet) -> Result<Boundaries> {
    let frame = Frame::new(lg)?;
    if s.n() != lg.graph.n() {
        return Err(Error::SizeMismatch { expected: lg.graph.n(), found: s.n() });
    }
    if !s.contains(frame.hub) {
        return Err(Error::HubOutside);
    }
    let inside: Vec<bool> = (0..lg.graph.n()).map(|v| s.contains(v)).collect();
    let (l, r) = boundary_flags(&frame, &inside);
    let pick = |f: &[bool]| (0..f.len()).filter(|&i| f[i]).collect();
    Ok(Boundaries { left: pick(&l), right: pick(&r) })
}

/// Side of the receiving block the charge comes in through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Inner,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub step: u8,
    /// sending block; `None` for an edge's own charge
    pub from: Option<usize>,
    /// the cut edge carrying the charge in step 1
    pub edge: Option<(usize, usize)>,
    /// receiving block; `None` is the h-bucket
    pub to: Option<usize>,
    pub side: Side,
    pub amount: Rational,
    /// forwarding blocks passed in step 3
    pub via: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub types: Vec<String>,
    pub charges: Vec<Rational>,
    pub h_bucket: Rational,
    /// ∂(S)
    pub cut: usize,
    /// block charges after steps 1, 2 and 3
    pub after_step: Vec<Vec<Rational>>,
    pub transfers: Vec<Transfer>,
    pub left_boundary: Vec<bool>,
    pub right_boundary: Vec<bool>,
    /// a step-3 charge went once around the ring through forwarders only
    pub forwarding_cycle: bool,
}

impl ChargeLedger {
    /// Σ block charges + h-bucket = ∂(S) after every step.
    pub fn conserved(&self) -> bool {
        let cut = Rational::from_integer(self.cut as i64);
        self.after_step.iter().all(|c| c.iter().copied().sum::<Rational>() + self.h_bucket == cut)
    }

    pub fn total(&self) -> Rational {
        self.charges.iter().copied().sum()
    }

    /// 2, plus 3 for each boundary role.
    pub fn cap(&self, i: usize) -> Rational {
        Rational::from_integer(2 + 3 * self.left_boundary[i] as i64 + 3 * self.right_boundary[i] as i64)
    }

    /// Blocks above their cap.
    pub fn over_cap(&self) -> Vec<usize> {
        (0..self.charges.len()).filter(|&i| self.charges[i] > self.cap(i)).collect()
    }

    /// Charge arriving at block i through `side` in the given steps.
    pub fn received(&self, i: usize, side: Side, steps: &[u8]) -> Rational {
        self.transfers
            .iter()
            .filter(|t| t.to == Some(i) && t.side == side && steps.contains(&t.step))
            .map(|t| t.amount)
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub(crate) fn run(cat: &Catalog, frame: &Frame, s: &[bool], types: &[usize]) -> ChargeLedger {
    let l = frame.blocks();
    let mut ch = vec![Rational::zero(); l];
    let mut bucket = Rational::zero();
    let mut transfers = Vec::new();
    let mut cut = 0;
    let one = Rational::one();
    for &(u, v) in frame.graph.edges() {
        if s[u] == s[v] {
            continue;
        }
        cut += 1;
        let (x, y) = if s[u] { (u, v) } else { (v, u) };
        let (to, side) = match frame.slot[x] {
            None => (None, Side::Inner),
            Some((i, _)) => {
                let side = match frame.slot[y] {
                    Some((j, _)) if j == (i + l - 1) % l && j != i => Side::Left,
                    Some((j, _)) if j == (i + 1) % l && j != i => Side::Right,
                    _ => Side::Inner,
                };
                (Some(i), side)
            }
        };
        match to {
            Some(i) => ch[i] += one,
            None => bucket += one,
        }
        transfers.push(Transfer { step: 1, from: None, edge: Some((x, y)), to, side, amount: one, via: vec![] });
    }
    let mut after_step = vec![ch.clone()];

    for (i, &t) in types.iter().enumerate() {
        let bt = &cat.types[t];
        for (amount, j, side) in [(bt.sends_right(), (i + 1) % l, Side::Left), (bt.sends_left(), (i + l - 1) % l, Side::Right)] {
            if let Some(a) = amount {
                ch[i] -= a;
                ch[j] += a;
                transfers.push(Transfer { step: 2, from: Some(i), edge: None, to: Some(j), side, amount: a, via: vec![] });
            }
        }
    }
    after_step.push(ch.clone());

    let half = Rational::new(1, 2).expect("nonzero");
    let role = |j: usize| cat.types[types[j]].step3;
    let mut forwarding_cycle = false;
    for i in 0..l {
        if role(i) != Some(Step3Role::Sender) {
            continue;
        }
        for (dir, side) in [(1, Side::Left), (l - 1, Side::Right)] {
            let mut j = (i + dir) % l;
            let mut via = vec![];
            while role(j) == Some(Step3Role::Forwarder) && via.len() <= l {
                via.push(j);
                j = (j + dir) % l;
            }
            if via.len() > l {
                forwarding_cycle = true;
                continue;
            }
            ch[i] -= half;
            ch[j] += half;
            transfers.push(Transfer { step: 3, from: Some(i), edge: None, to: Some(j), side, amount: half, via });
        }
    }
    after_step.push(ch.clone());
    let (left_boundary, right_boundary) = boundary_flags(frame, s);
    ChargeLedger {
        types: types.iter().map(|&t| cat.types[t].id.clone()).collect(),
        charges: ch,
        h_bucket: bucket,
        cut,
        after_step,
        transfers,
        left_boundary,
        right_boundary,
        forwarding_cycle,
    }
}

/// Steps 1–3 on a concrete (b, s) with h ∈ s. Every block must be in the catalog.
pub fn discharge(cat: &Catalog, lg: &LabeledGraph, b: &BalancedValuation, s: &VertexSet) -> Result<ChargeLedger> {
    let frame = Frame::new(lg)?;
    let (white, inside) = flags(&lg.graph, b, s)?;
    if !inside[frame.hub] {
        return Err(Error::HubOutside);
    }
    let types = (0..frame.blocks()).map(|i| classify(cat, &frame, &white, &inside, i).map(|m| m.index)).collect::<Result<Vec<_>>>()?;
    Ok(run(cat, &frame, &inside, &types))
}

/// Context of block i in a cyclic sequence of catalog indices.
pub(crate) fn context_in(cat: &Catalog, seq: &[usize], i: usize) -> u8 {
    let l = seq.len();
    let (p, n) = (&cat.types[seq[(i + l - 1) % l]], &cat.types[seq[(i + 1) % l]]);
    let bit = |t: &super::catalog::BlockType, v: usize| t.membership[v] as u8;
    let col = |t: &super::catalog::BlockType, v: usize| (t.colouring[v] > 0) as u8;
    let om = bit(p, 1) | bit(p, 6) << 1 | bit(n, 0) << 2 | bit(n, 5) << 3;
    let oc = col(p, 1) | col(p, 6) << 1 | col(n, 0) << 2 | col(n, 5) << 3;
    om | oc << 4
}

/// First block whose context is not among those its type was derived for.
pub(crate) fn incompatibility(cat: &Catalog, seq: &[usize]) -> Option<String> {
    (0..seq.len()).find(|&i| !cat.allows(seq[i], context_in(cat, seq, i))).map(|i| {
        let l = seq.len();
        format!(
            "block {i} ({}) does not fit between {} and {}",
            cat.types[seq[i]].id,
            cat.types[seq[(i + l - 1) % l]].id,
            cat.types[seq[(i + 1) % l]].id
        )
    })
}

/// Membership (with h) and colouring of the reduced Goldberg graph realising a sequence.
pub(crate) fn realise(cat: &Catalog, frame: &Frame, seq: &[usize]) -> (Vec<bool>, Vec<i64>) {
    let n = frame.graph.n();
    let mut s = vec![false; n];
    let mut b = vec![0i64; n];
    s[frame.hub] = true;
    for (i, &t) in seq.iter().enumerate() {
        for (j, &v) in frame.bi.blocks[i].iter().enumerate() {
            s[v] = cat.types[t].membership[j];
            b[v] = cat.types[t].colouring[j] as i64;
        }
    }
    b[frame.hub] = -b.iter().sum::<i64>();
    (s, b)
}

pub(crate) fn frame_for(len: usize) -> Result<Frame> {
    if len < 3 || len % 2 == 0 {
        return Err(Error::InvalidParameter(format!("sequence length {len} must be odd and at least 3")));
    }
    Frame::new(&reduced_goldberg((len - 1) / 2)?)
}

/// Runs steps 1–3 on the reduced Goldberg graph whose blocks carry the given types (by
/// id, left to right, cyclically).
pub fn discharge_abstract(cat: &Catalog, ids: &[&str]) -> Result<ChargeLedger> {
    let seq = ids
        .iter()
        .map(|id| cat.get(id).ok_or_else(|| Error::Catalog(format!("unknown type {id}"))))
        .collect::<Result<Vec<_>>>()?;
    let frame = frame_for(seq.len())?;
    if let Some(why) = incompatibility(cat, &seq) {
        return Err(Error::Incompatible(why));
    }
    let (s, _) = realise(cat, &frame, &seq);
    Ok(run(cat, &frame, &s, &seq))
}
