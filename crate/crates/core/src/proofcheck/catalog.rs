//! Block colourings, block types and the checked-in catalog.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::block::*;
use crate::error::{Error, Result};
use crate::rational::Rational;

// ---------------------------------------------------------------------------------------
// configurations

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigurationClass {
    /// 1..=4 for the named classes, 0 for a class none of the representatives fall in
    pub id: u8,
    /// white vertices of the representative, as letters
    pub representative: String,
    /// every colouring in the class, as white-vertex masks over a..g
    pub members: Vec<Mask>,
}

/// Representatives (white vertices) of the four configurations.
pub const CONFIGURATIONS: [(u8, &str); 4] = [(1, "bdef"), (2, "bce"), (3, "bceg"), (4, "cef")];

fn has_mono_path(white: Mask) -> bool {
    // connected 3-sets of the block are exactly its 3-vertex paths
    (0u16..128).filter(|x| x.count_ones() == 3 && connected(*x)).any(|x| white & x == x || white & x == 0)
}

/// All 2^7 colourings of a block, minus those with a monochromatic 3-path or with at most
/// two vertices of one colour on the two 5-circuits, grouped under colour switching and
/// reversing.
pub fn enumerate_configurations() -> Vec<ConfigurationClass> {
    let ok: Vec<Mask> = (0u16..128)
        .filter(|&w| {
            let whites = w.count_ones();
            !has_mono_path(w) && whites > 2 && whites < 5
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &w in &ok {
        if seen.contains(&w) {
            continue;
        }
        let mut members = vec![];
        for x in [w, w ^ BLOCK_MASK, permute(w, &REVERSE), permute(w, &REVERSE) ^ BLOCK_MASK] {
            if !members.contains(&x) {
                members.push(x);
            }
        }
        members.sort();
        seen.extend(members.iter().copied());
        let id = CONFIGURATIONS.iter().find(|(_, r)| members.contains(&mask_from_letters(r))).map_or(0, |c| c.0);
        let representative = match id {
            0 => mask_to_string(members[0], 7),
            _ => CONFIGURATIONS[id as usize - 1].1.to_string(),
        };
        out.push(ConfigurationClass { id, representative, members });
    }
    out.sort_by_key(|c| (c.id == 0, c.id));
    out
}

// ---------------------------------------------------------------------------------------
// rules

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RuleSet {
    /// R1: boundary vertices of S white, of V − S black
    pub boundary_colours: bool,
    /// R2: no swap set may be added to S, and removing one keeps the other rules
    pub swap_maximality: bool,
    /// R3: no component of S or V − S confined to the block
    pub small_components: bool,
    /// R4: no connected set of the extended block with φ ≥ 9/2 under b or −b
    pub patterns: bool,
    /// swap sets qualify when moving them cannot lower φ(S, b) for any 4 < φ < 9/2,
    /// instead of only when ∂ and b are both unchanged
    pub generalized_swaps: bool,
}

impl RuleSet {
    pub fn paper() -> Self {
        RuleSet { boundary_colours: true, swap_maximality: true, small_components: true, patterns: true, generalized_swaps: false }
    }

    pub fn strict() -> Self {
        RuleSet { generalized_swaps: true, ..Self::paper() }
    }

    pub fn relaxed() -> Self {
        RuleSet { boundary_colours: true, swap_maximality: false, small_components: false, patterns: true, generalized_swaps: false }
    }

    /// "paper", "strict", "relaxed", or a comma list of R1..R4 (plus "G" for generalized
    /// swap sets).
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "paper" => return Ok(Self::paper()),
            "strict" => return Ok(Self::strict()),
            "relaxed" => return Ok(Self::relaxed()),
            _ => {}
        }
        let mut r = RuleSet { boundary_colours: false, swap_maximality: false, small_components: false, patterns: false, generalized_swaps: false };
        for id in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match id {
                "R1" => r.boundary_colours = true,
                "R2" => r.swap_maximality = true,
                "R3" => r.small_components = true,
                "R4" => r.patterns = true,
                "G" => r.generalized_swaps = true,
                _ => return Err(Error::UnknownRule(id.into())),
            }
        }
        Ok(r)
    }
}

fn connected_ext_sets() -> &'static [Mask] {
    static SETS: std::sync::OnceLock<Vec<Mask>> = std::sync::OnceLock::new();
    SETS.get_or_init(|| (1u16..1 << 11).filter(|&x| connected(x)).collect())
}

/// R4 on a fully coloured extended block.
fn patterns_ok(white: Mask) -> bool {
    connected_ext_sets().iter().all(|&x| {
        let d = boundary(x);
        let bx = colour_sum(white, x);
        // φ = 2d/(d − b) must be defined and below 9/2 for b and −b
        [bx, -bx].iter().all(|&b| d - b > 0 && 4 * d < 9 * (d - b))
    })
}

fn boundary_colours_ok(s: Mask, white: Mask) -> bool {
    for &(u, v) in &EXT_EDGES {
        for (x, y) in [(u, v), (v, u)] {
            if s >> x & 1 == 1 && s >> y & 1 == 0 && (white >> x & 1 == 0 || white >> y & 1 == 1) {
                return false;
            }
        }
    }
    // d's neighbour h is in S
    !(s >> D & 1 == 0 && white >> D & 1 == 1)
}

/// Some component of S ∩ block or (V − S) ∩ block cannot leave the block.
fn confined(s: Mask) -> bool {
    for inside in [true, false] {
        let side = if inside { s & BLOCK_MASK } else { !s & BLOCK_MASK };
        let mut seen: Mask = 0;
        for v in 0..7 {
            if side >> v & 1 == 0 || seen >> v & 1 == 1 {
                continue;
            }
            let mut comp: Mask = 1 << v;
            let mut stack = vec![v];
            let mut exit = false;
            while let Some(x) = stack.pop() {
                if inside && x == D {
                    exit = true;
                }
                for y in neighbours(x) {
                    if y >= 7 {
                        if (s >> y & 1 == 1) == inside {
                            exit = true;
                        }
                    } else if side >> y & 1 == 1 && comp >> y & 1 == 0 {
                        comp |= 1 << y;
                        stack.push(y);
                    }
                }
            }
            seen |= comp;
            if !exit {
                return true;
            }
        }
    }
    false
}

fn cut_size(s: Mask) -> i64 {
    let c = EXT_EDGES.iter().filter(|&&(u, v)| (s >> u & 1) != (s >> v & 1)).count() as i64;
    c + (s >> D & 1 == 0) as i64
}

/// Does moving T (∂ changes by dd, b by db) keep φ(S, b) ≥ its old value?
fn qualifies(dd: i64, db: i64, generalized: bool) -> bool {
    if !generalized {
        return dd == 0 && db == 0;
    }
    let (dp, dq) = (dd + db, dd - db);
    match dq.signum() {
        1 => 2 * dp >= 7 * dq,
        -1 => dp >= 3 * dq,
        _ => dp >= 0,
    }
}

fn touches(s: Mask, t: Mask) -> bool {
    let mut seen: Mask = 0;
    for v in 0..7 {
        if t >> v & 1 == 0 || seen >> v & 1 == 1 {
            continue;
        }
        let mut comp: Mask = 1 << v;
        let mut stack = vec![v];
        let mut touch = false;
        while let Some(x) = stack.pop() {
            if x == D {
                touch = true;
            }
            for y in neighbours(x) {
                if t >> y & 1 == 1 && comp >> y & 1 == 0 {
                    comp |= 1 << y;
                    stack.push(y);
                } else if s >> y & 1 == 1 {
                    touch = true;
                }
            }
        }
        seen |= comp;
        if !touch {
            return false;
        }
    }
    true
}

fn valid(s: Mask, white: Mask, rules: &RuleSet) -> bool {
    if rules.boundary_colours && !boundary_colours_ok(s, white) {
        return false;
    }
    if rules.small_components && confined(s) {
        return false;
    }
    if !rules.swap_maximality {
        return true;
    }
    let base = cut_size(s);
    for t in 1u16..128 {
        let add = t & s == 0;
        let rem = t & s == t;
        for adding in [true, false] {
            if (adding && !add) || (!adding && !rem) {
                continue;
            }
            let s2 = if adding { s | t } else { s & !t };
            let dd = cut_size(s2) - base;
            let db = colour_sum(white, t) * if adding { 1 } else { -1 };
            if !qualifies(dd, db, rules.generalized_swaps) {
                continue;
            }
            if adding && touches(s, t) {
                return false;
            }
            if (rules.boundary_colours && !boundary_colours_ok(s2, white)) || (rules.small_components && confined(s2)) {
                return false;
            }
        }
    }
    true
}

/// A context: membership (bits 0..4) and whiteness (bits 4..8) of b_{i-1}, g_{i-1},
/// a_{i+1}, f_{i+1}.
pub type Context = u8;

fn context_masks(ctx: Context) -> (Mask, Mask) {
    let (om, oc) = ((ctx & 15) as Mask, (ctx >> 4) as Mask);
    (om << 7, oc << 7)
}

pub(crate) fn context_of_masks(s: Mask, white: Mask) -> Context {
    (((s >> 7) & 15) | (((white >> 7) & 15) << 4)) as Context
}

fn permute_context(ctx: Context, p: &[usize; 11]) -> Context {
    let (s, w) = context_masks(ctx);
    context_of_masks(permute(s, p), permute(w, p))
}

/// Membership patterns of a block with colouring `white` (over a..g) surviving `rules`
/// in at least one context, with the surviving contexts.
pub fn enumerate_block_types(white: Mask, rules: &RuleSet) -> BTreeMap<Mask, Vec<Context>> {
    let mut pattern_cache: HashMap<Mask, bool> = HashMap::new();
    let mut out = BTreeMap::new();
    for mem in 0u16..128 {
        let mut ctxs = vec![];
        for ctx in 0..=255u8 {
            let (om, oc) = context_masks(ctx);
            let w = white | oc;
            if rules.patterns && !*pattern_cache.entry(w).or_insert_with(|| patterns_ok(w)) {
                continue;
            }
            if valid(mem | om, w, rules) {
                ctxs.push(ctx);
            }
        }
        if !ctxs.is_empty() {
            out.insert(mem, ctxs);
        }
    }
    out
}

// ---------------------------------------------------------------------------------------
// naming and discharging roles

fn key(white: Mask, s: Mask) -> (String, String) {
    (mask_to_string(white, 7), mask_to_string(s, 7))
}

fn keyed(w: &str, s: &str) -> (Mask, Mask) {
    (mask_from_letters(w), mask_from_letters(s))
}

/// Names of the basic types by (white, S) in the orientation the name refers to.
fn basic_names() -> HashMap<(Mask, Mask), String> {
    let mut m = HashMap::new();
    let c1 = [
        ("bdef", "abcdefg", "A_1"),
        ("bdef", "abcdef", "B_1"),
        ("bdef", "bcdefg", "C_1"),
        ("bdef", "bcdef", "D_1"),
        ("bdef", "de", "E_1"),
        ("acg", "abcdefg", "F_1"),
        ("acg", "abcdeg", "G_1"),
        ("acg", "acdefg", "H_1"),
        ("acg", "abc", "I_1"),
        ("acg", "cfg", "J_1"),
        ("acg", "ag", "K_1"),
        ("acg", "a", "L_1"),
        ("acg", "g", "M_1"),
        ("acg", "", "N_1"),
    ];
    let c2 = [
        ("bce", "abcdefg", "A_2"),
        ("bce", "bcdefg", "B_2"),
        ("bdfg", "d", "C_2"),
        ("bce", "", "D_2"),
        ("bce", "abcde", "E_2"),
        ("adfg", "adefg", "F_2"),
        ("ace", "acde", "G_2"),
        ("adfg", "abcdefg", "H_2"),
    ];
    let c3 = [
        ("bceg", "bcdeg", "A_3"),
        ("bceg", "bcdefg", "B_3"),
        ("bceg", "abcdeg", "C_3"),
        ("bdg", "bdg", "D_3"),
        ("bdg", "bd", "E_3"),
        ("bdg", "dg", "F_3"),
        ("bdg", "d", "G_3"),
        ("bceg", "abcdefg", "H_3"),
        ("adf", "adefg", "I_3"),
        ("adf", "abcdf", "J_3"),
        ("adf", "abcdefg", "K_3"),
        ("acef", "", "L_3"),
    ];
    for (w, s, n) in c1.iter().chain(&c2).chain(&c3) {
        m.insert(keyed(w, s), n.to_string());
    }
    for (w, s, n) in &c2 {
        let (w, s) = keyed(w, s);
        let tw = |x: Mask| permute(x, &TWIST) & BLOCK_MASK;
        m.insert((tw(w), tw(s)), format!("{}_4", &n[..1]));
    }
    m
}

pub fn flip_name(n: &str) -> String {
    match n.strip_suffix("^T") {
        Some(b) => b.to_string(),
        None => format!("{n}^T"),
    }
}

/// Step-2 senders and amounts, by directed type, sending to the right.
pub const STEP2_RIGHT: [(&str, i64, i64); 12] = [
    ("I_1^T", 2, 1),
    ("J_1", 2, 1),
    ("K_1", 2, 1),
    ("K_1^T", 2, 1),
    ("L_1^T", 2, 1),
    ("M_1", 2, 1),
    ("E_2", 2, 1),
    ("E_3", 2, 1),
    ("F_3", 2, 1),
    ("E_4^T", 2, 1),
    ("G_2^T", 5, 2),
    ("G_4", 5, 2),
];

pub const STEP3_SENDERS: [&str; 2] = ["E_1", "E_1^T"];
pub const STEP3_FORWARDERS: [&str; 6] = ["C_2", "C_2^T", "G_3", "G_3^T", "C_4", "C_4^T"];

fn step2_right(n: &str) -> Option<Rational> {
    STEP2_RIGHT.iter().find(|x| x.0 == n).map(|&(_, p, q)| Rational::new(p, q).unwrap())
}

// ---------------------------------------------------------------------------------------
// catalog entries

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outside {
    In,
    Out,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step2 {
    pub dir: Direction,
    pub amount: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step3Role {
    Sender,
    Forwarder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextEntry {
    /// b_{i-1}, g_{i-1}, a_{i+1}, f_{i+1} in S
    pub membership: [bool; 4],
    pub colouring: [i8; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockType {
    pub id: String,
    pub configuration: u8,
    /// a..g, +1 white / −1 black
    pub colouring: [i8; 7],
    pub membership: [bool; 7],
    /// b_{i-1}, g_{i-1}, a_{i+1}, f_{i+1}
    pub outside: [Outside; 4],
    /// every surviving assignment of the four outside vertices
    pub contexts: Vec<ContextEntry>,
    pub step2: Option<Step2>,
    pub step3: Option<Step3Role>,
}

impl BlockType {
    pub fn white(&self) -> Mask {
        (0..7).filter(|&v| self.colouring[v] > 0).fold(0, |a, v| a | 1 << v)
    }

    pub fn members(&self) -> Mask {
        (0..7).filter(|&v| self.membership[v]).fold(0, |a, v| a | 1 << v)
    }

    pub fn context_codes(&self) -> Vec<Context> {
        self.contexts
            .iter()
            .map(|c| {
                let om = (0..4).filter(|&j| c.membership[j]).fold(0u8, |a, j| a | 1 << j);
                let oc = (0..4).filter(|&j| c.colouring[j] > 0).fold(0u8, |a, j| a | 1 << j);
                om | oc << 4
            })
            .collect()
    }

    pub fn sends_right(&self) -> Option<Rational> {
        self.step2.as_ref().filter(|s| s.dir != Direction::Left).map(|s| s.amount)
    }

    pub fn sends_left(&self) -> Option<Rational> {
        self.step2.as_ref().filter(|s| s.dir != Direction::Right).map(|s| s.amount)
    }
}

fn entry(id: String, configuration: u8, white: Mask, mem: Mask, ctxs: &[Context]) -> BlockType {
    let colouring = std::array::from_fn(|v| if white >> v & 1 == 1 { 1 } else { -1 });
    let membership = std::array::from_fn(|v| mem >> v & 1 == 1);
    let outside = std::array::from_fn(|j| {
        let ins = ctxs.iter().filter(|&&c| c >> j & 1 == 1).count();
        if ins == ctxs.len() {
            Outside::In
        } else if ins == 0 {
            Outside::Out
        } else {
            Outside::Free
        }
    });
    let contexts = ctxs
        .iter()
        .map(|&c| ContextEntry {
            membership: std::array::from_fn(|j| c >> j & 1 == 1),
            colouring: std::array::from_fn(|j| if c >> (4 + j) & 1 == 1 { 1 } else { -1 }),
        })
        .collect();
    let (r, l) = (step2_right(&id), step2_right(&flip_name(&id)));
    let step2 = match (r, l) {
        (Some(a), Some(_)) => Some(Step2 { dir: Direction::Both, amount: a }),
        (Some(a), None) => Some(Step2 { dir: Direction::Right, amount: a }),
        (None, Some(a)) => Some(Step2 { dir: Direction::Left, amount: a }),
        (None, None) => None,
    };
    let step3 = if STEP3_SENDERS.contains(&id.as_str()) {
        Some(Step3Role::Sender)
    } else if STEP3_FORWARDERS.contains(&id.as_str()) {
        Some(Step3Role::Forwarder)
    } else {
        None
    };
    BlockType { id, configuration, colouring, membership, outside, contexts, step2, step3 }
}

/// The directed catalog: every enumerated type followed by its reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub types: Vec<BlockType>,
    /// allowed contexts per type as a 256-bit set
    allowed: Vec<[u64; 4]>,
    by_pattern: HashMap<(Mask, Mask), usize>,
    by_id: HashMap<String, usize>,
}

/// SHA-256 of `data/catalog.json`.
pub const CATALOG_SHA256: &str = "16874260c67a91bce009d9996b8b41879160efe170bb4b009bf08a3b9229176c";

pub const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

impl Catalog {
    fn index(types: Vec<BlockType>) -> Result<Self> {
        let mut allowed = Vec::new();
        let mut by_pattern = HashMap::new();
        let mut by_id = HashMap::new();
        for (i, t) in types.iter().enumerate() {
            let mut set = [0u64; 4];
            for c in t.context_codes() {
                set[c as usize / 64] |= 1 << (c % 64);
            }
            allowed.push(set);
            if by_pattern.insert((t.white(), t.members()), i).is_some() {
                return Err(Error::Catalog(format!("duplicate pattern for {}", t.id)));
            }
            if by_id.insert(t.id.clone(), i).is_some() {
                return Err(Error::Catalog(format!("duplicate id {}", t.id)));
            }
        }
        Ok(Catalog { types, allowed, by_pattern, by_id })
    }

    /// Enumerates the catalog from scratch under `rules`. Types the naming table does not
    /// know get ids "?<white>/<S>".
    pub fn build(rules: &RuleSet) -> Result<Self> {
        let names = basic_names();
        let name_of = |w: Mask, s: Mask| -> String {
            if let Some(n) = names.get(&(w, s)) {
                return n.clone();
            }
            let r = |x: Mask| permute(x, &REVERSE) & BLOCK_MASK;
            if let Some(n) = names.get(&(r(w), r(s))) {
                return format!("{n}^T");
            }
            let (a, b) = key(w, s);
            format!("?{a}/{b}")
        };
        let mut types = Vec::new();
        for (conf, rep) in CONFIGURATIONS {
            let w0 = mask_from_letters(rep);
            for white in [w0, w0 ^ BLOCK_MASK] {
                for (mem, ctxs) in enumerate_block_types(white, rules) {
                    types.push(entry(name_of(white, mem), conf, white, mem, &ctxs));
                    let rw = permute(white, &REVERSE) & BLOCK_MASK;
                    let rm = permute(mem, &REVERSE) & BLOCK_MASK;
                    let mut rc: Vec<Context> = ctxs.iter().map(|&c| permute_context(c, &REVERSE)).collect();
                    rc.sort();
                    types.push(entry(name_of(rw, rm), conf, rw, rm, &rc));
                }
            }
        }
        Self::index(types)
    }

    /// The checked-in catalog, after verifying its checksum.
    pub fn load() -> Result<Self> {
        let sum = sha256_hex(CATALOG_JSON.as_bytes());
        if sum != CATALOG_SHA256 {
            return Err(Error::Catalog(format!("checksum mismatch: {sum}")));
        }
        Self::from_json(CATALOG_JSON)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::index(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.types).expect("serializable");
        s.push('\n');
        s
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn lookup(&self, white: Mask, members: Mask) -> Option<usize> {
        self.by_pattern.get(&(white & BLOCK_MASK, members & BLOCK_MASK)).copied()
    }

    pub fn allows(&self, t: usize, ctx: Context) -> bool {
        self.allowed[t][ctx as usize / 64] >> (ctx % 64) & 1 == 1
    }

    /// Index of the reversed type.
    pub fn reverse(&self, t: usize) -> usize {
        self.get(&flip_name(&self.types[t].id)).expect("catalog is closed under reverse")
    }

    /// Counts of basic types (X and X^T counted once) per configuration.
    pub fn basic_counts(&self) -> BTreeMap<u8, usize> {
        let mut m = BTreeMap::new();
        for t in &self.types {
            if !t.id.ends_with("^T") || self.get(&flip_name(&t.id)).is_none() {
                *m.entry(t.configuration).or_insert(0) += 1;
            }
        }
        m
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// Patterns (id, white, S) present in one catalog but not the other, and entries whose
/// contexts differ.
pub fn catalog_diff(a: &Catalog, b: &Catalog) -> Vec<String> {
    let mut out = Vec::new();
    for (x, y, tag) in [(a, b, "only in first"), (b, a, "only in second")] {
        for t in &x.types {
            match y.lookup(t.white(), t.members()) {
                None => out.push(format!("{tag}: {} white={} S={}", t.id, mask_to_string(t.white(), 7), mask_to_string(t.members(), 7))),
                Some(j) if tag == "only in first" && y.types[j] != *t => {
                    out.push(format!("differs: {} vs {}", t.id, y.types[j].id))
                }
                _ => {}
            }
        }
    }
    out
}
