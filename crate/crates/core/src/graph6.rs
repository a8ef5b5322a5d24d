//! graph6 reading and writing (simple graphs only).

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_N: usize = 68_719_476_735;

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    match bytes.first() {
        None => return Err(err("empty input")),
        Some(b':') => return Err(err("sparse6 input is not supported")),
        Some(b'&') => return Err(err("digraph6 input is not supported")),
        _ => {}
    }
    if let Some(&c) = bytes.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(err(format!("byte {c:#x} outside the graph6 alphabet")));
    }
    let (n, rest) = decode_n(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if rest.len() < need {
        return Err(err(format!("truncated: need {need} data bytes, found {}", rest.len())));
    }
    if rest.len() > need {
        return Err(err(format!("{} trailing bytes", rest.len() - need)));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    for k in nbits..need * 6 {
        if bit(k) {
            return Err(err("nonzero padding bits"));
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

fn decode_n(b: &[u8]) -> Result<(usize, &[u8])> {
    let val = |s: &[u8]| s.iter().fold(0usize, |a, &c| a << 6 | (c - 63) as usize);
    if b[0] != 126 {
        return Ok(((b[0] - 63) as usize, &b[1..]));
    }
    if b.len() >= 2 && b[1] == 126 {
        if b.len() < 8 {
            return Err(err("truncated size field"));
        }
        let n = val(&b[2..8]);
        if n <= 258_047 {
            return Err(err("non-canonical size field"));
        }
        return Ok((n, &b[8..]));
    }
    if b.len() < 4 {
        return Err(err("truncated size field"));
    }
    let n = val(&b[1..4]);
    if n <= 62 {
        return Err(err("non-canonical size field"));
    }
    Ok((n, &b[4..]))
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    if g.has_parallel_edges() {
        return Err(err("graph has parallel edges"));
    }
    let n = g.n();
    if n > MAX_N {
        return Err(err("n out of range"));
    }
    let mut out: Vec<u8> = Vec::new();
    let push6 = |out: &mut Vec<u8>, x: usize, chunks: usize| {
        for c in (0..chunks).rev() {
            out.push((x >> (6 * c) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push6(&mut out, n, 3);
    } else {
        out.extend([126, 126]);
        push6(&mut out, n, 6);
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let (mut acc, mut used) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | adj[i * n + j] as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    Ok(String::from_utf8(out).expect("ascii"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()).unwrap()
    }

    #[test]
    fn known_strings() {
        assert_eq!(emit_graph6(&Graph::new(1, vec![]).unwrap()).unwrap(), "@");
        assert_eq!(emit_graph6(&complete(4)).unwrap(), "C~");
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!((k4.n(), k4.m()), (4, 6));
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap().m(), 6);
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_graph6(":Fa@x^").is_err());
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C\u{7f}").is_err());
        assert!(parse_graph6("A_").is_ok());
        assert!(parse_graph6("A`").is_err()); // padding bit set
        let multi = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(emit_graph6(&multi).is_err());
    }

    #[test]
    fn long_size_form() {
        let g = Graph::new(100, (0..99).map(|i| (i, i + 1)).collect()).unwrap();
        let s = emit_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        let h = parse_graph6(&s).unwrap();
        assert_eq!(h.n(), 100);
        assert_eq!(emit_graph6(&h).unwrap(), s);
    }

    fn adjacency(g: &Graph) -> Vec<bool> {
        let n = g.n();
        let mut a = vec![false; n * n];
        for &(u, v) in g.edges() {
            a[u * n + v] = true;
            a[v * n + u] = true;
        }
        a
    }

    proptest! {
        #[test]
        fn roundtrip(n in 0usize..20, seed in proptest::collection::vec(any::<bool>(), 190)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n { for i in 0..j { if seed[k] { edges.push((i, j)); } k += 1; } }
            let g = Graph::new(n, edges).unwrap();
            let s = emit_graph6(&g).unwrap();
            let h = parse_graph6(&s).unwrap();
            prop_assert_eq!(adjacency(&g), adjacency(&h));
            prop_assert_eq!(emit_graph6(&h).unwrap(), s);
        }
    }
}
