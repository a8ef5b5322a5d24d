//! The extended block as a standalone gadget: a..g on 0..7, then b_{i-1}, g_{i-1},
//! a_{i+1}, f_{i+1} on 7..11. The hub h hangs off d and is always in S.

pub const LB: usize = 7;
pub const LG: usize = 8;
pub const RA: usize = 9;
pub const RF: usize = 10;

pub const LETTERS: [&str; 11] = ["a", "b", "c", "d", "e", "f", "g", "Lb", "Lg", "Ra", "Rf"];

pub const EXT_EDGES: [(usize, usize); 12] =
    [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4), (2, 5), (4, 6), (5, 6), (0, LB), (5, LG), (1, RA), (6, RF)];

/// a↔b, c↔e, f↔g; the outside vertices follow (b_{i-1} ↔ a_{i+1}, g_{i-1} ↔ f_{i+1}).
pub const REVERSE: [usize; 11] = [1, 0, 4, 3, 2, 6, 5, RA, RF, LB, LG];
/// a↔g, b↔f; b_{i-1} ↔ f_{i+1}, g_{i-1} ↔ a_{i+1}.
pub const TWIST: [usize; 11] = [6, 5, 2, 3, 4, 1, 0, RF, RA, LG, LB];

pub const D: usize = 3;

/// Bit masks over the 11 extended vertices.
pub type Mask = u16;

pub const BLOCK_MASK: Mask = 0x7f;

pub fn neighbours(v: usize) -> impl Iterator<Item = usize> {
    EXT_EDGES.iter().filter_map(move |&(x, y)| if x == v { Some(y) } else if y == v { Some(x) } else { None })
}

/// ∂ of a set of extended vertices, counting every vertex as degree 3 in the whole graph.
pub fn boundary(x: Mask) -> i64 {
    let inner = EXT_EDGES.iter().filter(|&&(u, v)| x >> u & 1 == 1 && x >> v & 1 == 1).count() as i64;
    3 * x.count_ones() as i64 - 2 * inner
}

pub fn connected(x: Mask) -> bool {
    if x == 0 {
        return false;
    }
    let start = x.trailing_zeros() as usize;
    let mut seen: Mask = 1 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in neighbours(v) {
            if x >> u & 1 == 1 && seen >> u & 1 == 0 {
                seen |= 1 << u;
                stack.push(u);
            }
        }
    }
    seen == x
}

pub fn permute(x: Mask, p: &[usize; 11]) -> Mask {
    (0..11).filter(|&v| x >> v & 1 == 1).fold(0, |acc, v| acc | 1 << p[v])
}

/// Colours as the mask of white vertices.
pub fn colour_sum(white: Mask, x: Mask) -> i64 {
    let w = (white & x).count_ones() as i64;
    let all = x.count_ones() as i64;
    2 * w - all
}

pub fn mask_to_string(x: Mask, upto: usize) -> String {
    (0..upto).filter(|&v| x >> v & 1 == 1).map(|v| LETTERS[v]).collect::<Vec<_>>().join("")
}

pub fn mask_from_letters(s: &str) -> Mask {
    s.chars().map(|c| 1 << "abcdefg".find(c).expect("block letter")).fold(0, |a, b| a | b)
}

fn reaches(from: Mask, to: Mask, within: Mask) -> bool {
    let mut seen = from & within;
    let mut stack: Vec<usize> = (0..11).filter(|&v| seen >> v & 1 == 1).collect();
    while let Some(x) = stack.pop() {
        if to >> x & 1 == 1 {
            return true;
        }
        for y in neighbours(x) {
            if within >> y & 1 == 1 && seen >> y & 1 == 0 {
                seen |= 1 << y;
                stack.push(y);
            }
        }
    }
    false
}

/// Left-boundary test on the membership mask of an extended block: V − S ends at this
/// block on its right-hand side.
pub fn left_boundary(s: Mask) -> bool {
    let i = |v: usize| s >> v & 1 == 1;
    let (a, b, f, g) = (0, 1, 5, 6);
    (!i(RA) && i(b) && i(RF))
        || (!i(RF) && i(RA) && i(g))
        || (!i(RA) && !i(RF) && i(b) && i(g))
        || ((!i(b) || !i(g)) && !reaches(1 << b | 1 << g, 1 << a | 1 << f, !s & BLOCK_MASK))
}

/// The mirror image of [`left_boundary`] under reversing.
pub fn right_boundary(s: Mask) -> bool {
    left_boundary(permute(s, &REVERSE))
}
