//! Simple undirected graphs on dense vertex ids, their interchange formats,
//! and the structure of the edge set missing from the complete graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest order supported by the bitset representation and short graph6.
pub const MAX_ORDER: usize = 62;

/// An unordered vertex pair, always stored with the smaller id first.
pub type Edge = (usize, usize);

/// Normalizes a pair so the smaller endpoint comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph6: {reason} at byte offset {offset}")]
    Graph6 { offset: usize, reason: &'static str },
    #[error("unsupported order {0}: vertex count must be in 1..={MAX_ORDER}")]
    UnsupportedOrder(usize),
    #[error("line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Undirected simple graph on vertices `0..n`, adjacency held as one
/// neighbor bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::UnsupportedOrder(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let all = g.vertex_mask();
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    /// Builds a graph from an edge list; duplicate pairs collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.check_pair(u, v)?;
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// `K_n` with every pair of `deleted` removed.
    pub fn complete_minus(n: usize, deleted: &EdgeSet) -> Result<Self, GraphError> {
        let mut g = Self::complete(n)?;
        for &(u, v) in deleted.iter() {
            g.check_pair(u, v)?;
            g.adj[u] &= !(1 << v);
            g.adj[v] &= !(1 << u);
        }
        Ok(g)
    }

    /// Graph whose edges are the set bits of `mask`, pairs taken in graph6
    /// order (column-major upper triangle).
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if bit < 64 && mask >> bit & 1 == 1 {
                    g.adj[u] |= 1 << v;
                    g.adj[v] |= 1 << u;
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Bitset with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// All edges, sorted ascending.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.size() == self.n * (self.n - 1) / 2
    }

    /// Copy with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Self { n: self.n, adj }
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 0 {
                let comp = self.reach(1 << v, self.vertex_mask());
                seen |= comp;
                out.push(comp);
            }
        }
        out
    }

    /// Vertices reachable from `start` while staying inside `within`.
    pub fn reach(&self, start: u64, within: u64) -> u64 {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & within & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(1, self.vertex_mask()) == self.vertex_mask()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Classical vertex connectivity: `n - 1` for complete graphs, `0` for
    /// disconnected ones, otherwise the size of a smallest separating set.
    ///
    /// Candidate cuts are scanned by increasing size up to the minimum
    /// degree, so this is only meant for small orders.
    pub fn vertex_connectivity(&self) -> usize {
        if self.is_complete() {
            return self.n - 1;
        }
        if !self.is_connected() {
            return 0;
        }
        let all = self.vertex_mask();
        for k in 1..=self.min_degree() {
            for cut in subsets_of_size(self.n, k) {
                let rest = all & !cut;
                let start = rest & rest.wrapping_neg();
                if self.reach(start, rest) != rest {
                    return k;
                }
            }
        }
        // Unreachable for a connected non-complete graph: removing the
        // neighborhood of a vertex of minimum degree separates it.
        self.min_degree()
    }

    /// `M = E(K_n) \ E(G)`.
    pub fn deleted_set(&self) -> EdgeSet {
        let mut out = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.insert((u, v));
                }
            }
        }
        EdgeSet(out)
    }

    pub fn to_graph6(&self) -> String {
        emit_graph6(self).expect("order is bounded by construction")
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph({} {:?})", self.n, self.edges())
    }
}

/// Iterates over the indices of set bits, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// All `k`-subsets of `0..n` as bitsets, in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut cur = if k == 0 {
        Some(0u64)
    } else if k <= n {
        Some((1u64 << k) - 1)
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            // Gosper's hack.
            let c = out & out.wrapping_neg();
            let r = out.wrapping_add(c);
            let next = (((r ^ out) >> 2) / c) | r;
            (r != 0 && next < limit).then_some(next)
        };
        Some(out)
    })
}

/// A set of unordered vertex pairs with distinct endpoints.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new<I>(pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut out = BTreeSet::new();
        for (u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out.insert(edge(u, v));
        }
        Ok(Self(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.contains(&edge(u, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.0.iter()
    }

    /// Endpoints of all pairs, as a bitset.
    pub fn vertex_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &(u, v)| m | 1 << u | 1 << v)
    }
}

impl FromIterator<Edge> for EdgeSet {
    /// Panics on a self-loop; use [`EdgeSet::new`] for untrusted input.
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        Self::new(iter).expect("edge set contains a self-loop")
    }
}

/// Shape of one connected component of `K_n[M]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// Path on the given number of vertices (at least 2).
    Path(usize),
    /// Cycle on the given number of vertices (at least 3).
    Cycle(usize),
    Other,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Path(k) => write!(f, "P{k}"),
            Shape::Cycle(k) => write!(f, "C{k}"),
            Shape::Other => f.write_str("Other"),
        }
    }
}

impl Serialize for Shape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Component shapes of `K_n[M]` (sorted), with its maximum degree and size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementProfile {
    pub shapes: Vec<Shape>,
    pub max_degree: usize,
    pub edge_count: usize,
}

impl ComplementProfile {
    /// Number of components with the given shape.
    pub fn count(&self, shape: Shape) -> usize {
        self.shapes.iter().filter(|&&s| s == shape).count()
    }

    pub fn is(&self, shapes: &[Shape]) -> bool {
        let mut want = shapes.to_vec();
        want.sort();
        self.shapes == want
    }
}

/// Splits the subgraph of `K_n` formed by the edges of `m` into components
/// and names each one.
///
/// Panics if an endpoint of `m` is not below `n`.
pub fn profile_deleted_set(m: &EdgeSet, n: usize) -> ComplementProfile {
    let span = m.vertex_mask();
    assert!(n <= 64 && span >> n == 0, "deleted edge endpoint out of range for order {n}");
    let mut adj = vec![0u64; n];
    for &(u, v) in m.iter() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let degree = |v: usize| adj[v].count_ones() as usize;

    let mut shapes = Vec::new();
    let mut seen = 0u64;
    for v in bits(span) {
        if seen >> v & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let next = bits(frontier).fold(0, |acc, x| acc | adj[x]);
            frontier = next & !comp;
            comp |= frontier;
        }
        seen |= comp;

        let order = comp.count_ones() as usize;
        let degrees: usize = bits(comp).map(degree).sum();
        let size = degrees / 2;
        let widest = bits(comp).map(degree).max().unwrap_or(0);
        shapes.push(if widest > 2 {
            Shape::Other
        } else if size + 1 == order {
            Shape::Path(order)
        } else {
            Shape::Cycle(order)
        });
    }
    shapes.sort();
    ComplementProfile {
        shapes,
        max_degree: (0..n).map(degree).max().unwrap_or(0),
        edge_count: m.len(),
    }
}

/// Decodes one short-form graph6 line (no `>>graph6<<` header).
pub fn parse_graph6(text: &str) -> Result<SimpleGraph, GraphError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let err = |offset, reason| GraphError::Graph6 { offset, reason };

    let &first = bytes.first().ok_or(err(0, "empty input"))?;
    if first == 126 {
        return Err(err(0, "extended length form (more than 62 vertices) is unsupported"));
    }
    if !(63..126).contains(&first) {
        return Err(err(0, "malformed length byte"));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(err(0, "graph of order 0"));
    }

    let pairs = n * (n - 1) / 2;
    let expected = pairs.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < expected {
        return Err(err(bytes.len(), "truncated adjacency data"));
    }
    if data.len() > expected {
        return Err(err(1 + expected, "unexpected trailing bytes"));
    }

    let mut g = SimpleGraph::empty(n)?;
    let mut k = 0;
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(1 + i, "invalid adjacency byte"));
        }
        let chunk = b - 63;
        for shift in (0..6).rev() {
            let set = chunk >> shift & 1 == 1;
            if k >= pairs {
                if set {
                    return Err(err(1 + i, "nonzero padding bits"));
                }
            } else if set {
                let (u, v) = pair_at(k);
                g.adj[u] |= 1 << v;
                g.adj[v] |= 1 << u;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Pair with index `k` in column order: (0,1), (0,2), (1,2), (0,3), ...
fn pair_at(k: usize) -> Edge {
    let mut v = 1;
    let mut start = 0;
    while start + v <= k {
        start += v;
        v += 1;
    }
    (k - start, v)
}

/// Encodes a graph as short-form graph6.
pub fn emit_graph6(g: &SimpleGraph) -> Result<String, GraphError> {
    let n = g.order();
    if n == 0 || n > MAX_ORDER {
        return Err(GraphError::UnsupportedOrder(n));
    }
    let mut out = String::with_capacity(1 + (n * n).div_ceil(12));
    out.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = chunk << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses `n` followed by whitespace-separated vertex pairs.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph, GraphError> {
    let mut tokens = text.lines().enumerate().flat_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        line.split_whitespace().map(move |t| (i + 1, t))
    });
    let number = |(line, tok): (usize, &str)| {
        tok.parse::<usize>().map_err(|_| GraphError::EdgeList {
            line,
            reason: format!("expected a non-negative integer, found {tok:?}"),
        })
    };

    let first = tokens.next().ok_or(GraphError::EdgeList {
        line: 1,
        reason: "missing vertex count".into(),
    })?;
    let n = number(first)?;
    let mut g = SimpleGraph::empty(n).map_err(|e| GraphError::EdgeList {
        line: first.0,
        reason: e.to_string(),
    })?;
    while let Some(a) = tokens.next() {
        let line = a.0;
        let b = tokens.next().ok_or(GraphError::EdgeList {
            line,
            reason: "edge is missing its second endpoint".into(),
        })?;
        let (u, v) = (number(a)?, number(b)?);
        g.check_pair(u, v).map_err(|e| GraphError::EdgeList {
            line: b.0,
            reason: e.to_string(),
        })?;
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
    }
    Ok(g)
}

/// Writes the edge-list form accepted by [`parse_edge_list`].
pub fn emit_edge_list(g: &SimpleGraph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
