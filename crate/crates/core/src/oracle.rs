//! Exact maximum packings of internally disjoint Steiner trees for
//! three-vertex terminal sets, and the generalized 3-connectivity built on
//! top of them.
//!
//! Two trees of a packing must share no edge and meet exactly in the
//! terminal set. For three terminals every tree whose leaves all lie in the
//! terminal set is either a path through one terminal or a spider with a
//! non-terminal center, and any tree can be trimmed down to that form
//! without losing a terminal.
//!
//! The exact search does not work over every trimmed tree. A tree is
//! summarized by its *footprint*: the non-terminal vertices it uses and the
//! terminal-terminal edges it uses. Trees with disjoint footprints never
//! conflict, and replacing a tree by one whose footprint is contained in its
//! own keeps a packing valid. The search therefore runs over one
//! representative tree per inclusion-minimal footprint, which is a small
//! set even for dense graphs.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bits, edge, Edge, SimpleGraph};

/// Largest order the exact oracle accepts. Footprint tables grow as
/// `2^(n-3)`.
pub const MAX_ORACLE_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("expected exactly 3 terminals, got {0}")]
    TerminalCount(usize),
    #[error("terminal {vertex} out of range for a graph of order {n}")]
    TerminalOutOfRange { vertex: usize, n: usize },
    #[error("terminal {0} listed twice")]
    DuplicateTerminal(usize),
    #[error("graph of order {0} exceeds the oracle limit of {MAX_ORACLE_ORDER}")]
    TooLarge(usize),
    #[error("k = {k} must satisfy 2 <= k <= n = {n}")]
    InvalidK { n: usize, k: usize },
}

/// Three distinct terminals, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Terminals([usize; 3]);

impl Terminals {
    pub fn new(s: &[usize], n: usize) -> Result<Self, OracleError> {
        let [a, b, c] = *s else {
            return Err(OracleError::TerminalCount(s.len()));
        };
        let mut t = [a, b, c];
        t.sort_unstable();
        if let Some(&v) = t.iter().find(|&&v| v >= n) {
            return Err(OracleError::TerminalOutOfRange { vertex: v, n });
        }
        if t[0] == t[1] || t[1] == t[2] {
            return Err(OracleError::DuplicateTerminal(t[1]));
        }
        Ok(Self(t))
    }

    pub fn as_array(&self) -> [usize; 3] {
        self.0
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// A tree subgraph given by its edges (normalized and sorted).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SteinerTree {
    pub edges: Vec<Edge>,
}

impl SteinerTree {
    pub fn new<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        Self { edges }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        set.into_iter().collect()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &(u, v)| m | 1 << u | 1 << v)
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> Vec<usize> {
        self.vertices()
            .into_iter()
            .filter(|&v| self.edges.iter().filter(|&&(a, b)| a == v || b == v).count() == 1)
            .collect()
    }

    /// Whether the edges form a single tree.
    pub fn is_tree(&self) -> bool {
        let vs = self.vertices();
        if self.edges.len() + 1 != vs.len() {
            return false;
        }
        let mut parent: Vec<usize> = (0..=vs.last().copied().unwrap_or(0)).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        self.edges.iter().all(|&(u, v)| {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
            ru != rv
        })
    }
}

/// Pairwise internally disjoint trees connecting `terminals`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePacking {
    pub terminals: Vec<usize>,
    pub trees: Vec<SteinerTree>,
}

impl TreePacking {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Compact JSON with sorted edge lists.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("packing serializes")
    }
}

/// First condition a packing fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TerminalMismatch { expected: Vec<usize>, found: Vec<usize> },
    EdgeAbsent { tree: usize, edge: Edge },
    NotATree { tree: usize },
    MissingTerminal { tree: usize, vertex: usize },
    EdgeOverlap { first: usize, second: usize, edge: Edge },
    VertexOverlap { first: usize, second: usize, vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TerminalMismatch { expected, found } => {
                write!(f, "terminal mismatch: expected {expected:?}, packing lists {found:?}")
            }
            Violation::EdgeAbsent { tree, edge } => {
                write!(f, "edge absent from graph: tree {tree} uses {edge:?}")
            }
            Violation::NotATree { tree } => write!(f, "not a tree: tree {tree}"),
            Violation::MissingTerminal { tree, vertex } => {
                write!(f, "missing terminal: tree {tree} does not reach {vertex}")
            }
            Violation::EdgeOverlap { first, second, edge } => {
                write!(f, "edge overlap: trees {first} and {second} share {edge:?}")
            }
            Violation::VertexOverlap { first, second, vertex } => write!(
                f,
                "vertex overlap: trees {first} and {second} share non-terminal {vertex}"
            ),
        }
    }
}

/// Checks that `p` is a family of internally disjoint `s`-trees in `g`.
///
/// Works for terminal sets of any size. Trees need not be trimmed.
pub fn verify_packing(g: &SimpleGraph, s: &[usize], p: &TreePacking) -> Result<(), Violation> {
    let mut expected = s.to_vec();
    expected.sort_unstable();
    expected.dedup();
    let mut found = p.terminals.clone();
    found.sort_unstable();
    if expected != found || p.terminals.len() != found.len() {
        return Err(Violation::TerminalMismatch { expected, found: p.terminals.clone() });
    }

    let term_mask = expected.iter().fold(0u64, |m, &v| m | 1u64.checked_shl(v as u32).unwrap_or(0));
    for (i, t) in p.trees.iter().enumerate() {
        if let Some(&e) = t.edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
            return Err(Violation::EdgeAbsent { tree: i, edge: e });
        }
        let raw: BTreeSet<Edge> = t.edges.iter().map(|&(u, v)| edge(u, v)).collect();
        if raw.len() != t.edges.len() || !SteinerTree::new(raw).is_tree() {
            return Err(Violation::NotATree { tree: i });
        }
        let vm = t.vertex_mask();
        if let Some(&v) = expected.iter().find(|&&v| vm >> v & 1 == 0) {
            return Err(Violation::MissingTerminal { tree: i, vertex: v });
        }
    }

    for (i, a) in p.trees.iter().enumerate() {
        for (j, b) in p.trees.iter().enumerate().skip(i + 1) {
            let ea: BTreeSet<Edge> = a.edges.iter().map(|&(u, v)| edge(u, v)).collect();
            if let Some(&(u, v)) = b.edges.iter().find(|&&(u, v)| ea.contains(&edge(u, v))) {
                return Err(Violation::EdgeOverlap { first: i, second: j, edge: edge(u, v) });
            }
            let shared = a.vertex_mask() & b.vertex_mask() & !term_mask;
            if shared != 0 {
                return Err(Violation::VertexOverlap {
                    first: i,
                    second: j,
                    vertex: shared.trailing_zeros() as usize,
                });
            }
        }
    }
    Ok(())
}

/// All simple paths `from -> to` whose inner vertices lie in `inner`.
fn simple_paths(g: &SimpleGraph, from: usize, to: usize, inner: u64) -> Vec<Vec<usize>> {
    fn walk(
        g: &SimpleGraph,
        path: &mut Vec<usize>,
        to: usize,
        free: u64,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        if g.has_edge(last, to) {
            let mut p = path.clone();
            p.push(to);
            out.push(p);
        }
        for w in bits(g.neighbors(last) & free) {
            path.push(w);
            walk(g, path, to, free & !(1 << w), out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(g, &mut vec![from], to, inner & !(1 << from) & !(1 << to), &mut out);
    out
}

fn inner_mask(path: &[usize]) -> u64 {
    path[1..path.len() - 1].iter().fold(0, |m, &v| m | 1 << v)
}

fn path_edges(path: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    path.windows(2).map(|w| edge(w[0], w[1]))
}

/// Every trimmed `s`-tree of `g` (all leaves in `s`), sorted by edge list.
///
/// Exhaustive; intended for small graphs and for cross-checking the
/// packing search.
pub fn enumerate_s_trees(g: &SimpleGraph, s: &[usize]) -> Result<Vec<SteinerTree>, OracleError> {
    let t = Terminals::new(s, g.order())?;
    let [a, b, c] = t.as_array();
    let free = g.vertex_mask() & !t.mask();
    let mut out = BTreeSet::new();

    // Paths: one terminal in the middle, the other two at the ends.
    for (mid, x, y) in [(a, b, c), (b, a, c), (c, a, b)] {
        for p in simple_paths(g, mid, x, free) {
            for q in simple_paths(g, mid, y, free & !inner_mask(&p)) {
                out.insert(SteinerTree::new(path_edges(&p).chain(path_edges(&q))));
            }
        }
    }

    // Spiders: a non-terminal center with a leg to each terminal.
    for center in bits(free) {
        let rest = free & !(1 << center);
        for la in simple_paths(g, center, a, rest) {
            let rest = rest & !inner_mask(&la);
            for lb in simple_paths(g, center, b, rest) {
                let rest = rest & !inner_mask(&lb);
                for lc in simple_paths(g, center, c, rest) {
                    let edges = path_edges(&la).chain(path_edges(&lb)).chain(path_edges(&lc));
                    out.insert(SteinerTree::new(edges));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Upper bound on the number of internally disjoint `s`-trees:
/// the smallest terminal degree, and `n - 2`.
///
/// Each tree uses its own edge at every terminal, and at most one tree can
/// avoid all non-terminals.
pub fn upper_bound(g: &SimpleGraph, s: &[usize]) -> Result<usize, OracleError> {
    let t = Terminals::new(s, g.order())?;
    let deg = t.as_array().iter().map(|&v| g.degree(v)).min().unwrap_or(0);
    Ok(deg.min(g.order() - 2))
}

/// One representative tree per minimal footprint.
#[derive(Debug, Clone)]
struct Candidate {
    inner: u64,
    term_edges: u8,
    tree: SteinerTree,
}

impl Candidate {
    fn conflicts(&self, used_inner: u64, used_term: u8) -> bool {
        self.inner & used_inner != 0 || self.term_edges & used_term != 0
    }
}

fn candidates(g: &SimpleGraph, t: &Terminals) -> Vec<Candidate> {
    let [a, b, c] = t.as_array();
    let term_pairs = [(a, b), (a, c), (b, c)];
    let present: u8 = (0..3)
        .filter(|&i| g.has_edge(term_pairs[i].0, term_pairs[i].1))
        .fold(0, |m, i| m | 1 << i);
    let free: Vec<usize> = bits(g.vertex_mask() & !t.mask()).collect();
    let subsets = 1usize << free.len();
    let inner_of = |sub: usize| bits(sub as u64).fold(0u64, |m, i| m | 1 << free[i]);

    // Graph with all terminal-terminal edges removed; allowed ones come back per option.
    let mut base = vec![0u64; g.order()];
    for (v, row) in base.iter_mut().enumerate() {
        *row = g.neighbors(v);
        if t.mask() >> v & 1 == 1 {
            *row &= !t.mask();
        }
    }
    let with_term = |opt: u8, v: usize| -> u64 {
        let mut row = base[v];
        for (i, &(x, y)) in term_pairs.iter().enumerate() {
            if opt >> i & 1 == 1 {
                if v == x {
                    row |= 1 << y;
                } else if v == y {
                    row |= 1 << x;
                }
            }
        }
        row
    };

    // connects[opt][sub]: terminals joined inside terminals + subset, using only
    // the terminal edges in `opt`.
    let mut connects = vec![vec![false; subsets]; 8];
    for opt in 0..8u8 {
        if opt & !present != 0 {
            continue;
        }
        let rows: Vec<u64> = (0..g.order()).map(|v| with_term(opt, v)).collect();
        for (sub, slot) in connects[opt as usize].iter_mut().enumerate() {
            let within = t.mask() | inner_of(sub);
            let mut seen = 1u64 << a;
            let mut frontier = seen;
            while frontier != 0 {
                let next = bits(frontier).fold(0, |m, v| m | rows[v]);
                frontier = next & within & !seen;
                seen |= frontier;
            }
            *slot = seen & t.mask() == t.mask();
        }
    }

    let mut out = Vec::new();
    for opt in 0..8u8 {
        if opt & !present != 0 {
            continue;
        }
        for sub in 0..subsets {
            if !connects[opt as usize][sub] {
                continue;
            }
            let minimal = bits(sub as u64).all(|i| !connects[opt as usize][sub ^ 1 << i])
                && bits(opt as u64).all(|i| !connects[(opt ^ 1 << i) as usize][sub]);
            if minimal {
                let inner = inner_of(sub);
                let rows: Vec<u64> = (0..g.order()).map(|v| with_term(opt, v)).collect();
                out.push(Candidate {
                    inner,
                    term_edges: opt,
                    tree: smallest_spanning_tree(&rows, t.mask() | inner),
                });
            }
        }
    }
    out.sort_by(|x, y| x.tree.cmp(&y.tree));
    out
}

/// Spanning tree of the subgraph induced on `within` with the
/// lexicographically smallest sorted edge list (Kruskal in edge order).
fn smallest_spanning_tree(rows: &[u64], within: u64) -> SteinerTree {
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edges = Vec::new();
    for u in bits(within) {
        for v in bits(rows[u] & within & !((2u64 << u) - 1)) {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                edges.push((u, v));
            }
        }
    }
    SteinerTree::new(edges)
}

/// Branch-and-bound over the candidate conflict structure.
struct Search<'a> {
    cands: &'a [Candidate],
}

impl Search<'_> {
    /// Take every candidate that fits, in order. This is the first maximal
    /// packing in depth-first order.
    fn greedy(&self) -> Vec<usize> {
        let (mut used_inner, mut used_term) = (0u64, 0u8);
        let mut chosen = Vec::new();
        for (i, c) in self.cands.iter().enumerate() {
            if !c.conflicts(used_inner, used_term) {
                used_inner |= c.inner;
                used_term |= c.term_edges;
                chosen.push(i);
            }
        }
        chosen
    }

    /// First packing of size `k` in depth-first (lexicographic) order.
    fn first_of_size(&self, k: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(k);
        self.extend(0, 0, 0, k, &mut chosen).then_some(chosen)
    }

    fn extend(&self, start: usize, used_inner: u64, used_term: u8, k: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        let need = k - chosen.len();
        let open: Vec<usize> = (start..self.cands.len())
            .filter(|&i| !self.cands[i].conflicts(used_inner, used_term))
            .collect();
        if open.len() < need {
            return false;
        }
        // Each open candidate needs a fresh non-terminal, except at most one
        // that runs along two terminal edges.
        let reach = open.iter().fold(0u64, |m, &i| m | self.cands[i].inner).count_ones() as usize
            + open.iter().any(|&i| self.cands[i].inner == 0) as usize;
        if reach < need {
            return false;
        }
        for (pos, &i) in open.iter().enumerate() {
            if open.len() - pos < need {
                break;
            }
            let c = &self.cands[i];
            if c.conflicts(used_inner, used_term) {
                continue;
            }
            chosen.push(i);
            if self.extend(i + 1, used_inner | c.inner, used_term | c.term_edges, k, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Largest packing of size at most `cap` (or the greedy seed, if that is
    /// larger), preferring the lexicographically smallest among those of
    /// maximum size.
    fn best(&self, cap: usize) -> Vec<usize> {
        let seed = self.greedy();
        for k in (seed.len() + 1..=cap).rev() {
            if let Some(found) = self.first_of_size(k) {
                return found;
            }
        }
        seed
    }
}

fn to_packing(t: &Terminals, cands: &[Candidate], chosen: &[usize]) -> TreePacking {
    TreePacking {
        terminals: t.as_array().to_vec(),
        trees: chosen.iter().map(|&i| cands[i].tree.clone()).collect(),
    }
}

fn check_order(g: &SimpleGraph) -> Result<(), OracleError> {
    if g.order() > MAX_ORACLE_ORDER {
        return Err(OracleError::TooLarge(g.order()));
    }
    Ok(())
}

/// Maximum number of internally disjoint `s`-trees in `g`, with a witness.
///
/// Among maximum packings over the minimal-footprint representatives, the
/// witness is the one whose sorted tree list is lexicographically smallest.
pub fn max_internally_disjoint(g: &SimpleGraph, s: &[usize]) -> Result<(usize, TreePacking), OracleError> {
    let t = Terminals::new(s, g.order())?;
    check_order(g)?;
    let cands = candidates(g, &t);
    let chosen = Search { cands: &cands }.best(upper_bound(g, s)?);
    Ok((chosen.len(), to_packing(&t, &cands, &chosen)))
}

/// Exact `κ(S)` with witness if it is below `limit`, otherwise `None`.
fn packing_below(g: &SimpleGraph, t: &Terminals, limit: usize) -> Option<(usize, TreePacking)> {
    let cands = candidates(g, t);
    let search = Search { cands: &cands };
    let seed = search.greedy();
    if seed.len() >= limit {
        return None;
    }
    let ub = upper_bound(g, &t.as_array()).expect("terminals validated");
    for k in (seed.len() + 1..=ub.min(limit)).rev() {
        if let Some(found) = search.first_of_size(k) {
            return (k < limit).then(|| (k, to_packing(t, &cands, &found)));
        }
    }
    Some((seed.len(), to_packing(t, &cands, &seed)))
}

/// Result of the generalized 3-connectivity computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Kappa3 {
    pub value: usize,
    /// Lexicographically smallest terminal set attaining the minimum.
    /// Absent for graphs of order below 3.
    pub terminals: Option<[usize; 3]>,
    pub witness: Option<TreePacking>,
}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Generalized 3-connectivity: the minimum of `κ(S)` over all 3-sets `S`.
///
/// Disconnected graphs give 0 and connected graphs of order below 3 give 1.
/// Per-triple searches are capped at the vertex connectivity, which bounds
/// the minimum from above.
pub fn kappa3(g: &SimpleGraph) -> Result<Kappa3, OracleError> {
    check_order(g)?;
    let n = g.order();
    let connected = g.is_connected();
    if n < 3 {
        let value = connected as usize;
        return Ok(Kappa3 { value, terminals: None, witness: None });
    }
    if !connected {
        let comps = g.components();
        let split = triples(n)
            .find(|s| {
                let m = s.iter().fold(0u64, |m, &v| m | 1 << v);
                !comps.iter().any(|&c| c & m == m)
            })
            .expect("a disconnected graph on 3+ vertices has a separated triple");
        let witness = TreePacking { terminals: split.to_vec(), trees: Vec::new() };
        return Ok(Kappa3 { value: 0, terminals: Some(split), witness: Some(witness) });
    }

    let cap = g.vertex_connectivity().min(n - 2);
    let mut best: Option<(usize, [usize; 3], TreePacking)> = None;
    for s in triples(n) {
        let limit = best.as_ref().map_or(cap + 1, |b| b.0);
        let t = Terminals::new(&s, n)?;
        if let Some((value, packing)) = packing_below(g, &t, limit) {
            best = Some((value, s, packing));
            if value <= 1 {
                break;
            }
        }
    }
    let (value, s, witness) = match best {
        Some(b) => b,
        // Only reachable if some triple exceeded the connectivity cap everywhere.
        None => triples(n)
            .map(|s| {
                let (v, p) = max_internally_disjoint(g, &s).expect("triple is valid");
                (v, s, p)
            })
            .min_by_key(|b| b.0)
            .expect("n >= 3"),
    };
    Ok(Kappa3 { value, terminals: Some(s), witness: Some(witness) })
}

/// Closed form for complete graphs: `κ_k(K_n) = n - ⌈k/2⌉`.
pub fn kappa_k_complete(n: usize, k: usize) -> Result<usize, OracleError> {
    if k < 2 || k > n {
        return Err(OracleError::InvalidK { n, k });
    }
    Ok(n - k.div_ceil(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSet;

    fn path(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn star(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()
    }

    /// Trimmed `s`-trees by scanning every edge subset of `g`.
    fn trimmed_trees_by_subset_scan(g: &SimpleGraph, s: &[usize]) -> Vec<SteinerTree> {
        let edges = g.edges();
        let mut out = Vec::new();
        for mask in 1u64..1 << edges.len() {
            let tree = SteinerTree::new(bits(mask).map(|i| edges[i]));
            let vm = tree.vertex_mask();
            if tree.is_tree()
                && s.iter().all(|&v| vm >> v & 1 == 1)
                && tree.leaves().iter().all(|v| s.contains(v))
            {
                out.push(tree);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_examples() {
        let k3 = SimpleGraph::complete(3).unwrap();
        assert_eq!(enumerate_s_trees(&k3, &[0, 1, 2]).unwrap().len(), 3);
        assert_eq!(enumerate_s_trees(&path(3), &[0, 1, 2]).unwrap().len(), 1);
        // 3 trees inside the terminals plus 7 spanning trees of K_4 where
        // vertex 3 is not a leaf.
        let k4 = SimpleGraph::complete(4).unwrap();
        let trees = enumerate_s_trees(&k4, &[0, 1, 2]).unwrap();
        assert_eq!(trees.len(), 10);
        assert_eq!(trees, trimmed_trees_by_subset_scan(&k4, &[0, 1, 2]));
        assert!(trees.windows(2).all(|w| w[0] < w[1]));

        let split = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(enumerate_s_trees(&split, &[0, 1, 2]).unwrap().is_empty());
        assert_eq!(enumerate_s_trees(&k4, &[0, 1]), Err(OracleError::TerminalCount(2)));
        assert_eq!(enumerate_s_trees(&k4, &[0, 1, 1]), Err(OracleError::DuplicateTerminal(1)));
        assert!(matches!(
            enumerate_s_trees(&k4, &[0, 1, 4]),
            Err(OracleError::TerminalOutOfRange { vertex: 4, .. })
        ));
    }

    #[test]
    fn enumeration_matches_subset_scan_on_five_vertices() {
        for mask in (0..1u64 << 10).step_by(7) {
            let g = SimpleGraph::from_pair_mask(5, mask).unwrap();
            for s in [[0, 1, 2], [0, 2, 4], [1, 3, 4]] {
                assert_eq!(
                    enumerate_s_trees(&g, &s).unwrap(),
                    trimmed_trees_by_subset_scan(&g, &s),
                    "{g:?} {s:?}"
                );
            }
        }
    }

    /// Trimming a leaf outside `s` keeps every terminal connected.
    #[test]
    fn trimming_preserves_terminal_connectivity() {
        let g = SimpleGraph::complete(6).unwrap();
        let s = [0, 1, 2];
        let untrimmed = SteinerTree::new([(0, 3), (3, 1), (1, 2), (2, 4), (4, 5)]);
        let mut tree = untrimmed.clone();
        loop {
            let stray: Vec<usize> = tree.leaves().into_iter().filter(|v| !s.contains(v)).collect();
            let Some(&leaf) = stray.first() else { break };
            tree = SteinerTree::new(tree.edges.iter().copied().filter(|&(u, v)| u != leaf && v != leaf));
            assert!(tree.is_tree());
            assert!(s.iter().all(|&t| tree.vertex_mask() >> t & 1 == 1));
        }
        assert_eq!(tree, SteinerTree::new([(0, 3), (3, 1), (1, 2)]));
        assert!(enumerate_s_trees(&g, &s).unwrap().contains(&tree));
        assert!(!enumerate_s_trees(&g, &s).unwrap().contains(&untrimmed));
    }

    #[test]
    fn packing_examples() {
        let k4 = SimpleGraph::complete(4).unwrap();
        for s in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            let (count, witness) = max_internally_disjoint(&k4, &s).unwrap();
            assert_eq!(count, 2);
            assert_eq!(verify_packing(&k4, &s, &witness), Ok(()));
        }
        let tree = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(max_internally_disjoint(&tree, &[0, 4, 5]).unwrap().0, 1);
        assert_eq!(max_internally_disjoint(&tree, &[2, 3, 5]).unwrap().0, 1);
        let c5 = cycle(5);
        for s in triples(5) {
            assert_eq!(max_internally_disjoint(&c5, &s).unwrap().0, 1);
        }
        let split = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let (count, witness) = max_internally_disjoint(&split, &[0, 1, 2]).unwrap();
        assert_eq!((count, witness.trees.len()), (0, 0));
        assert_eq!(max_internally_disjoint(&k4, &[0]), Err(OracleError::TerminalCount(1)));
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let k4 = SimpleGraph::complete(4).unwrap();
        let (_, w) = max_internally_disjoint(&k4, &[0, 1, 2]).unwrap();
        assert_eq!(w.trees, vec![
            SteinerTree::new([(0, 1), (0, 2)]),
            SteinerTree::new([(0, 3), (1, 3), (2, 3)]),
        ]);
        assert_eq!(
            w.to_json(),
            r#"{"terminals":[0,1,2],"trees":[{"edges":[[0,1],[0,2]]},{"edges":[[0,3],[1,3],[2,3]]}]}"#
        );
    }

    /// Exhaustive maximum independent set over the full conflict graph of
    /// trimmed trees, without dominance pruning.
    fn full_conflict_graph_optimum(g: &SimpleGraph, s: &[usize]) -> usize {
        let trees = enumerate_s_trees(g, s).unwrap();
        let term = s.iter().fold(0u64, |m, &v| m | 1 << v);
        let sets: Vec<(u64, BTreeSet<Edge>)> = trees
            .iter()
            .map(|t| (t.vertex_mask() & !term, t.edges.iter().copied().collect()))
            .collect();
        let conflict = |i: usize, j: usize| {
            sets[i].0 & sets[j].0 != 0 || !sets[i].1.is_disjoint(&sets[j].1)
        };
        fn grow(i: usize, chosen: &mut Vec<usize>, n: usize, conflict: &dyn Fn(usize, usize) -> bool) -> usize {
            let mut best = chosen.len();
            for j in i..n {
                if chosen.iter().all(|&c| !conflict(c, j)) {
                    chosen.push(j);
                    best = best.max(grow(j + 1, chosen, n, conflict));
                    chosen.pop();
                }
            }
            best
        }
        grow(0, &mut Vec::new(), trees.len(), &conflict)
    }

    #[test]
    fn footprint_search_matches_full_conflict_graph() {
        for mask in (0..1u64 << 10).step_by(3) {
            let g = SimpleGraph::from_pair_mask(5, mask).unwrap();
            for s in triples(5) {
                let (count, w) = max_internally_disjoint(&g, &s).unwrap();
                assert_eq!(count, full_conflict_graph_optimum(&g, &s), "{g:?} {s:?}");
                assert_eq!(verify_packing(&g, &s, &w), Ok(()));
                assert!(count <= upper_bound(&g, &s).unwrap());
            }
        }
        let k6 = SimpleGraph::complete(6).unwrap();
        assert_eq!(full_conflict_graph_optimum(&k6, &[0, 1, 2]), 4);
        let k6m = SimpleGraph::complete_minus(6, &EdgeSet::new([(0, 1), (2, 3), (4, 5)]).unwrap()).unwrap();
        assert_eq!(max_internally_disjoint(&k6m, &[0, 2, 4]).unwrap().0, 3);
        assert_eq!(full_conflict_graph_optimum(&k6m, &[0, 2, 4]), 3);
    }

    #[test]
    fn upper_bound_examples() {
        let k5 = SimpleGraph::complete(5).unwrap();
        assert_eq!(upper_bound(&k5, &[0, 2, 4]).unwrap(), 3);
        assert_eq!(upper_bound(&star(5), &[1, 2, 3]).unwrap(), 1);
        let g = SimpleGraph::complete_minus(6, &EdgeSet::new([(0, 1), (0, 2), (0, 3)]).unwrap()).unwrap();
        assert_eq!(upper_bound(&g, &[0, 4, 5]).unwrap(), 2);
        for s in triples(6) {
            let k6 = SimpleGraph::complete(6).unwrap();
            assert_eq!(max_internally_disjoint(&k6, &s).unwrap().0, upper_bound(&k6, &s).unwrap());
        }
    }

    /// Two copies of K_4 glued at vertex 3: the graph has a cut vertex, yet a
    /// triple inside one block has two disjoint trees. Vertex connectivity is
    /// therefore not a per-triple bound.
    #[test]
    fn per_triple_value_can_exceed_connectivity() {
        let mut edges = Vec::new();
        for block in [[0, 1, 2, 3], [3, 4, 5, 6]] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((block[i], block[j]));
                }
            }
        }
        let g = SimpleGraph::from_edges(7, edges).unwrap();
        assert_eq!(g.vertex_connectivity(), 1);
        assert_eq!(max_internally_disjoint(&g, &[0, 1, 2]).unwrap().0, 2);
        assert_eq!(kappa3(&g).unwrap().value, 1);
    }

    #[test]
    fn kappa3_examples() {
        let k6 = kappa3(&SimpleGraph::complete(6).unwrap()).unwrap();
        assert_eq!((k6.value, k6.terminals), (4, Some([0, 1, 2])));
        assert_eq!(kappa3(&star(5)).unwrap().value, 1);
        let m = EdgeSet::new([(0, 1), (2, 3), (4, 5)]).unwrap();
        let g = SimpleGraph::complete_minus(6, &m).unwrap();
        let r = kappa3(&g).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(verify_packing(&g, &r.terminals.unwrap(), r.witness.as_ref().unwrap()), Ok(()));

        assert_eq!(kappa3(&SimpleGraph::empty(1).unwrap()).unwrap().value, 1);
        assert_eq!(kappa3(&SimpleGraph::complete(2).unwrap()).unwrap().value, 1);
        assert_eq!(kappa3(&SimpleGraph::empty(2).unwrap()).unwrap().value, 0);
        let split = kappa3(&SimpleGraph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap()).unwrap();
        assert_eq!((split.value, split.terminals), (0, Some([0, 1, 3])));
        assert!(kappa3(&SimpleGraph::complete(17).unwrap()).is_err());
    }

    #[test]
    fn argmin_is_smallest_minimizing_triple() {
        // Pendant vertex 5 attached to a K_5: every triple through 5 has value 1.
        let mut g = SimpleGraph::complete(6).unwrap();
        for v in 0..4 {
            g = SimpleGraph::from_edges(6, g.edges().into_iter().filter(|&e| e != (v, 5))).unwrap();
        }
        let r = kappa3(&g).unwrap();
        assert_eq!((r.value, r.terminals), (1, Some([0, 1, 5])));
    }

    #[test]
    fn closed_form_for_complete_graphs() {
        assert_eq!(kappa_k_complete(6, 3), Ok(4));
        assert_eq!(kappa_k_complete(7, 4), Ok(5));
        for n in 2..=10 {
            assert_eq!(kappa_k_complete(n, 2), Ok(n - 1));
        }
        assert!(kappa_k_complete(3, 1).is_err());
        assert!(kappa_k_complete(3, 4).is_err());
    }

    #[test]
    fn verify_reports_first_violation() {
        let k4 = SimpleGraph::complete(4).unwrap();
        let s = [0, 1, 2];
        let pack = |trees: Vec<SteinerTree>| TreePacking { terminals: s.to_vec(), trees };

        let overlap = pack(vec![
            SteinerTree::new([(0, 3), (3, 1), (3, 2)]),
            SteinerTree::new([(0, 3), (1, 2)]),
        ]);
        assert!(matches!(verify_packing(&k4, &s, &overlap), Err(Violation::NotATree { tree: 1 })));

        let k6 = SimpleGraph::complete(6).unwrap();
        let shared = pack(vec![
            SteinerTree::new([(0, 3), (3, 1), (3, 2)]),
            SteinerTree::new([(0, 4), (4, 3), (3, 5), (5, 1), (5, 2)]),
        ]);
        let err = verify_packing(&k6, &s, &shared).unwrap_err();
        assert!(err.to_string().starts_with("edge overlap") || err.to_string().starts_with("vertex overlap"));
        let shared = pack(vec![
            SteinerTree::new([(0, 3), (3, 1), (3, 2)]),
            SteinerTree::new([(0, 4), (4, 3), (5, 3), (5, 1), (5, 2)]),
        ]);
        let err = verify_packing(&k6, &s, &shared).unwrap_err();
        assert!(err.to_string().starts_with("vertex overlap"), "{err}");

        let same_edge = pack(vec![SteinerTree::new([(0, 1), (1, 2)]), SteinerTree::new([(0, 1), (0, 3), (3, 2)])]);
        assert!(matches!(verify_packing(&k4, &s, &same_edge), Err(Violation::EdgeOverlap { edge: (0, 1), .. })));

        let short = pack(vec![SteinerTree::new([(0, 1)])]);
        assert!(matches!(verify_packing(&k4, &s, &short), Err(Violation::MissingTerminal { vertex: 2, .. })));

        let wrong = TreePacking { terminals: vec![0, 1, 3], trees: vec![] };
        assert!(matches!(verify_packing(&k4, &s, &wrong), Err(Violation::TerminalMismatch { .. })));

        // Matched pair {x, y} = {0, 1}: the tree xy + yz uses a deleted edge.
        let m = EdgeSet::new([(0, 1), (2, 3), (4, 5)]).unwrap();
        let g = SimpleGraph::complete_minus(6, &m).unwrap();
        let printed = pack(vec![SteinerTree::new([(0, 1), (1, 2)])]);
        let err = verify_packing(&g, &s, &printed).unwrap_err();
        assert_eq!(err, Violation::EdgeAbsent { tree: 0, edge: (0, 1) });
        assert!(err.to_string().starts_with("edge absent from graph"));
        let repaired = pack(vec![SteinerTree::new([(0, 2), (2, 1)])]);
        assert_eq!(verify_packing(&g, &s, &repaired), Ok(()));
    }
}
