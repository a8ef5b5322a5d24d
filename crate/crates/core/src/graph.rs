//! Undirected multigraphs with positional edges, cuts and contraction.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // adj[v] = (neighbour, edge index)
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {k} = ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {k} is a loop at {u}")));
            }
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().any(|&(u, v)| !seen.insert((u.min(v), u.max(v))))
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check(&self, s: &VertexSet) -> Result<()> {
        if s.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: s.n() });
        }
        Ok(())
    }

    /// ∂(S) and the crossing edges in index order.
    pub fn boundary(&self, s: &VertexSet) -> Result<(usize, Vec<usize>)> {
        self.check(s)?;
        let edges: Vec<usize> = (0..self.m())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                s.contains(u) != s.contains(v)
            })
            .collect();
        Ok((edges.len(), edges))
    }

    pub fn boundary_size(&self, s: &VertexSet) -> Result<usize> {
        Ok(self.boundary(s)?.0)
    }

    /// Connected parts of the subgraph induced by `s`, ordered by least vertex.
    pub fn components_within(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check(s)?;
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut parts = Vec::new();
        for v in s.iter() {
            if seen.contains(v) {
                continue;
            }
            let mut part = VertexSet::new(self.n);
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(x) = stack.pop() {
                part.insert(x);
                for &(y, _) in &self.adj[x] {
                    if s.contains(y) && !seen.contains(y) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            parts.push(part);
        }
        Ok(parts)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components_within(&self.full_set()).map(|c| c.len() == 1).unwrap_or(false)
    }

    /// Merges `x` into one vertex placed last; other vertices keep their relative order.
    /// Edges inside `x` are dropped, parallel edges are kept.
    pub fn contract(&self, x: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check(x)?;
        if x.is_empty() {
            return Err(Error::InvalidParameter("contract: empty set".into()));
        }
        let mut map = vec![0; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !x.contains(v) {
                map[v] = next;
                next += 1;
            }
        }
        for v in x.iter() {
            map[v] = next;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| !(x.contains(u) && x.contains(v)))
            .map(|&(u, v)| (map[u], map[v]))
            .collect();
        Ok((Graph::new(next + 1, edges)?, map))
    }

    /// Induced subgraph on `verts` (in the given order) with the edge indices it keeps.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        let mut kept = Vec::new();
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                edges.push((pos[u], pos[v]));
                kept.push(k);
            }
        }
        (Graph::new(verts.len(), edges).expect("induced subgraph"), kept)
    }

    /// Cut edges, by lowpoint DFS over edge indices (parallel edges are never bridges).
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut t = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = t;
            low[root] = t;
            t += 1;
            // (vertex, parent edge, next adjacency position)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&(v, pe, i)) = stack.last() {
                if i < self.adj[v].len() {
                    let (w, e) = self.adj[v][i];
                    stack.last_mut().unwrap().2 += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = t;
                        low[w] = t;
                        t += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        Graph::new(j.n, j.edges.iter().map(|e| (e[0], e[1])).collect())
    }
}

/// A subset of `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        s.bits.insert_range(..);
        s
    }

    pub fn from_vertices(n: usize, vs: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::new(n);
        for v in vs {
            if v >= n {
                return Err(Error::InvalidParameter(format!("vertex {v} out of range for n={n}")));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Bit `v` of `mask` is vertex `v`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut s = Self::new(n);
        for v in 0..n.min(64) {
            if mask >> v & 1 == 1 {
                s.insert(v);
            }
        }
        s
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.n > 64 {
            return None;
        }
        Some(self.iter().fold(0u64, |m, v| m | 1 << v))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }

    fn same(&self, o: &VertexSet) -> Result<()> {
        if self.n != o.n {
            return Err(Error::SizeMismatch { expected: self.n, found: o.n });
        }
        Ok(())
    }

    pub fn union(&self, o: &VertexSet) -> Result<VertexSet> {
        self.same(o)?;
        let mut s = self.clone();
        s.bits.union_with(&o.bits);
        Ok(s)
    }

    pub fn intersection(&self, o: &VertexSet) -> Result<VertexSet> {
        self.same(o)?;
        let mut s = self.clone();
        s.bits.intersect_with(&o.bits);
        Ok(s)
    }

    pub fn difference(&self, o: &VertexSet) -> Result<VertexSet> {
        self.same(o)?;
        let mut s = self.clone();
        s.bits.difference_with(&o.bits);
        Ok(s)
    }

    pub fn is_subset(&self, o: &VertexSet) -> Result<bool> {
        self.same(o)?;
        Ok(self.bits.is_subset(&o.bits))
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
