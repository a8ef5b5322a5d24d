//! Labelled generators: Goldberg snarks, their reduced form, flower snarks, Petersen.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Goldberg,
    ReducedGoldberg,
    Flower,
    Petersen,
    Other,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s {
            "goldberg" => Family::Goldberg,
            "reduced-goldberg" => Family::ReducedGoldberg,
            "flower" => Family::Flower,
            "petersen" => Family::Petersen,
            _ => return Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    pub family: Family,
    pub k: Option<usize>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<String>, family: Family, k: Option<usize>) -> Result<Self> {
        if labels.len() != graph.n() {
            return Err(Error::InvalidParameter("label count differs from vertex count".into()));
        }
        let mut index = HashMap::new();
        for (v, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), v).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate label {l}")));
            }
        }
        Ok(LabeledGraph { graph, labels, index, family, k })
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn named_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<VertexSet> {
        let mut s = self.graph.empty_set();
        for nm in names {
            s.insert(self.vertex(nm).ok_or_else(|| Error::InvalidParameter(format!("no vertex {nm}")))?);
        }
        Ok(s)
    }

    /// Number of blocks, `2k+1`, for the Goldberg families.
    pub fn blocks(&self) -> Result<usize> {
        match (self.family, self.k) {
            (Family::Goldberg | Family::ReducedGoldberg, Some(k)) => Ok(2 * k + 1),
            _ => Err(Error::WrongFamily(format!("{:?} has no blocks", self.family))),
        }
    }

    /// The hub `h` of a reduced Goldberg graph.
    pub fn hub(&self) -> Option<usize> {
        (self.family == Family::ReducedGoldberg).then(|| self.vertex("h")).flatten()
    }
}

pub const BLOCK_LETTERS: [char; 7] = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];

fn lbl(c: char, i: usize) -> String {
    format!("{c}_{i}")
}

fn check_k(k: usize) -> Result<usize> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    Ok(2 * k + 1)
}

/// G_{2k+1}; vertex `8i + j` is the j-th of a_i..h_i.
pub fn goldberg(k: usize) -> Result<LabeledGraph> {
    let l = check_k(k)?;
    let v = |c: char, i: usize| 8 * (i % l) + "abcdefgh".find(c).unwrap();
    let mut edges = Vec::with_capacity(12 * l);
    for i in 0..l {
        let j = i + 1;
        edges.extend([
            (v('a', i), v('b', i)),
            (v('b', i), v('a', j)),
            (v('a', i), v('e', i)),
            (v('b', i), v('c', i)),
            (v('c', i), v('d', i)),
            (v('d', i), v('e', i)),
            (v('c', i), v('f', i)),
            (v('e', i), v('g', i)),
            (v('f', i), v('g', i)),
            (v('g', i), v('f', j)),
            (v('d', i), v('h', i)),
            (v('h', i), v('h', j)),
        ]);
    }
    let labels = (0..l).flat_map(|i| "abcdefgh".chars().map(move |c| lbl(c, i))).collect();
    LabeledGraph::new(Graph::new(8 * l, edges)?, labels, Family::Goldberg, Some(k))
}

/// H_{2k+1}: G_{2k+1} with h_0..h_{2k} contracted into `h` (the last vertex).
pub fn reduced_goldberg(k: usize) -> Result<LabeledGraph> {
    let g = goldberg(k)?;
    let l = 2 * k + 1;
    let hs = g.named_set((0..l).map(|i| lbl('h', i)).collect::<Vec<_>>().iter().map(|s| s.as_str()))?;
    let (h, map) = g.graph.contract(&hs)?;
    let mut labels = vec![String::new(); h.n()];
    for v in 0..g.graph.n() {
        if !hs.contains(v) {
            labels[map[v]] = g.label(v).to_string();
        }
    }
    labels[h.n() - 1] = "h".into();
    LabeledGraph::new(h, labels, Family::ReducedGoldberg, Some(k))
}

/// I_{2k+1}; vertex `4i + j` is the j-th of x_i, y_i, z_i, w_i.
pub fn flower_snark(k: usize) -> Result<LabeledGraph> {
    let l = check_k(k)?;
    let v = |c: char, i: usize| 4 * (i % l) + "xyzw".find(c).unwrap();
    let mut edges = Vec::with_capacity(6 * l);
    for i in 0..l {
        edges.extend([
            (v('w', i), v('x', i)),
            (v('w', i), v('y', i)),
            (v('w', i), v('z', i)),
            (v('x', i), v('x', i + 1)),
            (v('y', i), v('z', i + 1)),
            (v('z', i), v('y', i + 1)),
        ]);
    }
    let labels = (0..l).flat_map(|i| "xyzw".chars().map(move |c| lbl(c, i))).collect();
    LabeledGraph::new(Graph::new(4 * l, edges)?, labels, Family::Flower, Some(k))
}

/// Outer 5-cycle u_0..u_4, spokes u_i v_i, inner pentagram on v_0..v_4.
pub fn petersen() -> LabeledGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let labels = (0..5).map(|i| lbl('u', i)).chain((0..5).map(|i| lbl('v', i))).collect();
    LabeledGraph::new(Graph::new(10, edges).unwrap(), labels, Family::Petersen, None).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect()).unwrap()
}

/// C_n × K_2.
pub fn prism(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((n + i, n + (i + 1) % n));
        e.push((i, n + i));
    }
    Graph::new(2 * n, e).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockIndexing {
    pub k: usize,
    /// a_i..g_i
    pub blocks: Vec<[usize; 7]>,
    /// a_i..g_i, b_{i-1}, g_{i-1}, a_{i+1}, f_{i+1}
    pub extended: Vec<[usize; 11]>,
    /// d_i's neighbour outside the block (h or h_i)
    pub tails: Vec<usize>,
}

pub fn block_indexing(lg: &LabeledGraph) -> Result<BlockIndexing> {
    let l = lg.blocks()?;
    let k = lg.k.unwrap();
    let v = |c: char, i: usize| lg.vertex(&lbl(c, i % l)).expect("block vertex");
    let mut blocks = Vec::new();
    let mut extended = Vec::new();
    let mut tails = Vec::new();
    for i in 0..l {
        let b: [usize; 7] = std::array::from_fn(|j| v(BLOCK_LETTERS[j], i));
        let p = i + l - 1;
        let mut x = [0; 11];
        x[..7].copy_from_slice(&b);
        x[7] = v('b', p);
        x[8] = v('g', p);
        x[9] = v('a', i + 1);
        x[10] = v('f', i + 1);
        blocks.push(b);
        extended.push(x);
        tails.push(match lg.family {
            Family::Goldberg => v('h', i),
            _ => lg.vertex("h").unwrap(),
        });
    }
    Ok(BlockIndexing { k, blocks, extended, tails })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutKind {
    Reverse,
    Twist,
}

/// Edges of the block on local indices 0..7 = a..g.
pub const BLOCK_EDGES: [(usize, usize); 8] = [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4), (2, 5), (4, 6), (5, 6)];

/// All automorphisms of the 7-vertex block, by brute force, as local permutations.
pub fn block_automorphisms() -> Vec<[usize; 7]> {
    let mut edges: Vec<(usize, usize)> = BLOCK_EDGES.to_vec();
    edges.sort_unstable();
    let mut out = Vec::new();
    let mut perm = [0usize; 7];
    fn rec(i: usize, used: u8, perm: &mut [usize; 7], edges: &[(usize, usize)], out: &mut Vec<[usize; 7]>) {
        if i == 7 {
            let mut img: Vec<(usize, usize)> =
                edges.iter().map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
            img.sort_unstable();
            if img == edges {
                out.push(*perm);
            }
            return;
        }
        for x in 0..7 {
            if used >> x & 1 == 0 {
                perm[i] = x;
                rec(i + 1, used | 1 << x, perm, edges, out);
            }
        }
    }
    rec(0, 0, &mut perm, &edges, &mut out);
    out
}

/// Local permutation for `kind`: the unique involutive automorphism sending a to b (reverse)
/// or a to g (twist) that keeps d fixed.
pub fn block_permutation(kind: AutKind) -> Result<[usize; 7]> {
    let target = match kind {
        AutKind::Reverse => 1,
        AutKind::Twist => 6,
    };
    let cands: Vec<[usize; 7]> = block_automorphisms()
        .into_iter()
        .filter(|p| p[0] == target && p[3] == 3 && (0..7).all(|x| p[p[x]] == x))
        .collect();
    match cands.as_slice() {
        [p] => Ok(*p),
        _ => Err(Error::NoAutomorphism(format!("{kind:?}: {} candidates", cands.len()))),
    }
}

/// The automorphism of block `i` as pairs (vertex, image) in a..g order.
pub fn block_automorphism(lg: &LabeledGraph, i: usize, kind: AutKind) -> Result<Vec<(usize, usize)>> {
    let bi = block_indexing(lg)?;
    let b = bi.blocks.get(i).ok_or_else(|| Error::InvalidParameter(format!("no block {i}")))?;
    let p = block_permutation(kind)?;
    Ok((0..7).map(|j| (b[j], b[p[j]])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (k, n, m) in [(1, 24, 36), (2, 40, 60)] {
            let g = goldberg(k).unwrap();
            assert_eq!((g.graph.n(), g.graph.m()), (n, m));
            assert!(g.graph.is_cubic() && g.graph.is_bridgeless());
        }
        for (k, n, m, dh) in [(1, 22, 33, 3), (2, 36, 55, 5)] {
            let h = reduced_goldberg(k).unwrap();
            assert_eq!((h.graph.n(), h.graph.m()), (n, m));
            assert_eq!(h.graph.degree(h.vertex("h").unwrap()), dh);
        }
        for (k, n, m) in [(1, 12, 18), (2, 20, 30)] {
            let f = flower_snark(k).unwrap();
            assert_eq!((f.graph.n(), f.graph.m()), (n, m));
            assert!(f.graph.is_cubic() && f.graph.is_bridgeless());
        }
        assert!(goldberg(0).is_err() && flower_snark(0).is_err());
    }

    #[test]
    fn families_up_to_six() {
        for k in 1..=6 {
            let g = goldberg(k).unwrap();
            assert!(g.graph.is_cubic() && g.graph.is_bridgeless() && !g.graph.is_bipartite());
            let h = reduced_goldberg(k).unwrap();
            let hub = h.vertex("h").unwrap();
            assert!((0..h.graph.n()).all(|v| v == hub || h.graph.degree(v) == 3));
            assert_eq!(h.graph.degree(hub), 2 * k + 1);
        }
    }

    #[test]
    fn petersen_girth_five() {
        let p = petersen().graph;
        assert!(p.is_cubic() && p.is_bridgeless());
        // no triangles or 4-cycles: any two vertices share at most one neighbour, none adjacent-and-sharing
        for u in 0..10 {
            for v in u + 1..10 {
                let nu: Vec<usize> = p.neighbors(u).iter().map(|x| x.0).collect();
                let common = p.neighbors(v).iter().filter(|x| nu.contains(&x.0)).count();
                let adjacent = nu.contains(&v);
                assert!(common <= 1 && !(adjacent && common > 0));
            }
        }
    }

    #[test]
    fn g3_block_boundary() {
        let g = goldberg(1).unwrap();
        let s = g.named_set(["a_0", "b_0", "c_0", "d_0", "e_0", "f_0", "g_0"]).unwrap();
        let (d, es) = g.graph.boundary(&s).unwrap();
        assert_eq!(d, 5);
        let mut names: Vec<String> = es
            .iter()
            .map(|&e| {
                let (u, v) = g.graph.edge(e);
                let mut p = [g.label(u), g.label(v)];
                p.sort();
                format!("{}{}", p[0], p[1])
            })
            .collect();
        names.sort();
        assert_eq!(names, vec!["a_0b_2", "a_1b_0", "d_0h_0", "f_0g_2", "f_1g_0"]);
    }

    #[test]
    fn reduced_is_contraction() {
        let g = goldberg(2).unwrap();
        let hs = g.named_set(["h_0", "h_1", "h_2", "h_3", "h_4"]).unwrap();
        let (c, _) = g.graph.contract(&hs).unwrap();
        assert_eq!(c, reduced_goldberg(2).unwrap().graph);
    }

    #[test]
    fn indexing() {
        let h = reduced_goldberg(1).unwrap();
        let bi = block_indexing(&h).unwrap();
        let mut all: Vec<usize> = bi.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        let expect: Vec<usize> = (0..h.graph.n()).filter(|&v| h.label(v) != "h").collect();
        assert_eq!(all, expect);
        assert_eq!(bi.extended[0].len(), 11);
        assert_eq!(h.label(bi.extended[0][7]), "b_2");
        assert_eq!(h.label(bi.extended[0][10]), "f_1");
        for b in &bi.blocks {
            let (sub, _) = h.graph.induced(b);
            assert_eq!(sub.m(), 8);
        }
        assert!(block_indexing(&petersen()).is_err());
    }

    #[test]
    fn automorphisms() {
        let rev = block_permutation(AutKind::Reverse).unwrap();
        let tw = block_permutation(AutKind::Twist).unwrap();
        assert_eq!(rev, [1, 0, 4, 3, 2, 6, 5]);
        assert_eq!(tw, [6, 5, 2, 3, 4, 1, 0]);
        for p in [rev, tw] {
            assert!((0..7).all(|x| p[p[x]] == x));
        }
        // twist carries the 5-cycle a,b,c,d,e onto g,f,c,d,e
        let mut img: Vec<usize> = [0, 1, 2, 3, 4].iter().map(|&x| tw[x]).collect();
        img.sort_unstable();
        assert_eq!(img, vec![2, 3, 4, 5, 6]);
        let h = reduced_goldberg(1).unwrap();
        let pairs = block_automorphism(&h, 1, AutKind::Reverse).unwrap();
        assert_eq!(h.label(pairs[0].1), "b_1");
    }

    #[test]
    fn two_five_circuits_share_cde() {
        let c1 = [0, 1, 2, 3, 4];
        let c2 = [2, 3, 4, 6, 5];
        for c in [c1, c2] {
            for w in 0..5 {
                let (u, v) = (c[w], c[(w + 1) % 5]);
                assert!(BLOCK_EDGES.contains(&(u.min(v), u.max(v))));
            }
        }
        let common: Vec<usize> = c1.iter().filter(|x| c2.contains(x)).copied().collect();
        assert_eq!(common, vec![2, 3, 4]);
    }
}
