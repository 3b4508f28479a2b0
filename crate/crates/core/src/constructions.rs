//! Explicit internally disjoint tree families for near-complete graphs.
//!
//! Every family is checked with [`verify_packing`] on its host graph before
//! it is returned, so a flawed case analysis surfaces as
//! [`ConstructionError::Invalid`] instead of a silently wrong packing.
//!
//! Naming follows the usual convention: `x, y, z` are the terminals, `w`
//! ranges over the remaining vertices, and a *star* at `w` is the tree
//! `{wx, wy, wz}`. Most families are all the stars that fit plus a few
//! special trees through the vertices that miss a terminal.

use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeSet, GraphError, SimpleGraph};
use crate::oracle::{verify_packing, OracleError, SteinerTree, Terminals, TreePacking, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("order {n} is below the minimum {min} for this family")]
    OrderTooSmall { n: usize, min: usize },
    #[error(transparent)]
    Terminals(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("placement: {0}")]
    Placement(String),
    #[error("deleted edges do not form a matching of at least two edges")]
    NotAMatching,
    #[error("constructed family failed validation: {0}")]
    Invalid(Violation),
    #[error("constructed family has {got} trees, expected {expected}")]
    WrongSize { expected: usize, got: usize },
}

/// Shape of the deleted edge set `K_n[M]` for the families built here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeletedShape {
    None,
    SingleEdge,
    /// `r` disjoint edges, `r >= 2`.
    Matching(usize),
    P3PlusP2,
    C3PlusP2,
    P4,
}

impl DeletedShape {
    /// Vertices named by a placement of this shape.
    pub fn placement_len(self) -> usize {
        match self {
            DeletedShape::None => 0,
            DeletedShape::SingleEdge => 2,
            DeletedShape::Matching(r) => 2 * r,
            DeletedShape::P3PlusP2 | DeletedShape::C3PlusP2 => 5,
            DeletedShape::P4 => 4,
        }
    }

    pub fn min_order(self) -> usize {
        self.placement_len().max(3).max(match self {
            DeletedShape::Matching(_) | DeletedShape::P4 => 4,
            _ => 3,
        })
    }

    /// Generalized 3-connectivity of `K_n` minus this shape.
    pub fn expected_kappa3(self, n: usize) -> usize {
        match self {
            DeletedShape::None | DeletedShape::SingleEdge => n - 2,
            _ => n - 3,
        }
    }
}

impl fmt::Display for DeletedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeletedShape::None => f.write_str("none"),
            DeletedShape::SingleEdge => f.write_str("edge"),
            DeletedShape::Matching(r) => write!(f, "matching:{r}"),
            DeletedShape::P3PlusP2 => f.write_str("p3p2"),
            DeletedShape::C3PlusP2 => f.write_str("c3p2"),
            DeletedShape::P4 => f.write_str("p4"),
        }
    }
}

impl std::str::FromStr for DeletedShape {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let shape = match s {
            "none" | "complete" => DeletedShape::None,
            "edge" => DeletedShape::SingleEdge,
            "p3p2" => DeletedShape::P3PlusP2,
            "c3p2" => DeletedShape::C3PlusP2,
            "p4" => DeletedShape::P4,
            _ => {
                let r = s
                    .strip_prefix("matching:")
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| ConstructionError::Placement(format!("unknown shape {s:?}")))?;
                if r < 2 {
                    return Err(ConstructionError::NotAMatching);
                }
                DeletedShape::Matching(r)
            }
        };
        Ok(shape)
    }
}

/// A deleted shape with labeled vertices.
///
/// Placement order: `SingleEdge` is `[u, v]`; `Matching(r)` lists the pairs
/// consecutively; `P3PlusP2` and `C3PlusP2` are `[v1, v2, v3, u1, u2]`
/// with the path `v1 v2 v3` (or triangle) and the edge `u1 u2`; `P4` is the
/// path in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeletedShapeSpec {
    shape: DeletedShape,
    placement: Vec<usize>,
}

impl DeletedShapeSpec {
    pub fn new(shape: DeletedShape, placement: Vec<usize>) -> Result<Self, ConstructionError> {
        if let DeletedShape::Matching(r) = shape {
            if r < 2 {
                return Err(ConstructionError::NotAMatching);
            }
        }
        if placement.len() != shape.placement_len() {
            return Err(ConstructionError::Placement(format!(
                "shape {shape} needs {} vertices, got {}",
                shape.placement_len(),
                placement.len()
            )));
        }
        distinct(&placement)?;
        Ok(Self { shape, placement })
    }

    /// The shape placed on vertices `0, 1, 2, ...`.
    pub fn canonical(shape: DeletedShape) -> Self {
        Self::new(shape, (0..shape.placement_len()).collect()).expect("canonical placement is valid")
    }

    pub fn shape(&self) -> DeletedShape {
        self.shape
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn deleted_edges(&self) -> EdgeSet {
        let p = &self.placement;
        let pairs: Vec<(usize, usize)> = match self.shape {
            DeletedShape::None => vec![],
            DeletedShape::SingleEdge => vec![(p[0], p[1])],
            DeletedShape::Matching(_) => p.chunks(2).map(|c| (c[0], c[1])).collect(),
            DeletedShape::P3PlusP2 => vec![(p[0], p[1]), (p[1], p[2]), (p[3], p[4])],
            DeletedShape::C3PlusP2 => vec![(p[0], p[1]), (p[1], p[2]), (p[0], p[2]), (p[3], p[4])],
            DeletedShape::P4 => vec![(p[0], p[1]), (p[1], p[2]), (p[2], p[3])],
        };
        pairs.into_iter().collect()
    }

    pub fn host(&self, n: usize) -> Result<SimpleGraph, ConstructionError> {
        self.check_order(n)?;
        Ok(SimpleGraph::complete_minus(n, &self.deleted_edges())?)
    }

    fn check_order(&self, n: usize) -> Result<(), ConstructionError> {
        let min = self.shape.min_order();
        if n < min {
            return Err(ConstructionError::OrderTooSmall { n, min });
        }
        if let Some(&v) = self.placement.iter().find(|&&v| v >= n) {
            return Err(ConstructionError::Placement(format!("vertex {v} out of range for order {n}")));
        }
        Ok(())
    }

    /// The family for terminal set `s` on `K_n` minus this shape.
    pub fn pack(&self, n: usize, s: &[usize]) -> Result<TreePacking, ConstructionError> {
        self.check_order(n)?;
        let p = &self.placement;
        match self.shape {
            DeletedShape::None => pack_complete(n, s),
            DeletedShape::SingleEdge => pack_complete_minus_edge(n, (p[0], p[1]), s),
            DeletedShape::Matching(_) => pack_matching(n, &self.deleted_edges(), s),
            DeletedShape::P3PlusP2 => pack_p3_p2(n, [p[0], p[1], p[2], p[3], p[4]], s),
            DeletedShape::C3PlusP2 => pack_c3_p2(n, [p[0], p[1], p[2], p[3], p[4]], s),
            DeletedShape::P4 => pack_p4(n, [p[0], p[1], p[2], p[3]], s),
        }
    }

    /// Families for every 3-subset, in lexicographic order of the subset.
    pub fn pack_all(&self, n: usize) -> Result<Vec<TreePacking>, ConstructionError> {
        self.check_order(n)?;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    out.push(self.pack(n, &[a, b, c])?);
                }
            }
        }
        Ok(out)
    }
}

fn distinct(vs: &[usize]) -> Result<(), ConstructionError> {
    for (i, v) in vs.iter().enumerate() {
        if vs[..i].contains(v) {
            return Err(ConstructionError::Placement(format!("vertex {v} used twice")));
        }
    }
    Ok(())
}

fn in_range(n: usize, vs: &[usize]) -> Result<(), ConstructionError> {
    match vs.iter().find(|&&v| v >= n) {
        Some(v) => Err(ConstructionError::Placement(format!("vertex {v} out of range for order {n}"))),
        None => Ok(()),
    }
}

fn tree(edges: &[(usize, usize)]) -> SteinerTree {
    SteinerTree::new(edges.iter().copied())
}

/// Stars at every vertex of `0..n` outside `skip` (the terminals are
/// always skipped).
fn stars(n: usize, [x, y, z]: [usize; 3], skip: &[usize]) -> Vec<SteinerTree> {
    (0..n)
        .filter(|w| ![x, y, z].contains(w) && !skip.contains(w))
        .map(|w| tree(&[(w, x), (w, y), (w, z)]))
        .collect()
}

/// Sorts, validates and sizes a family.
fn finish(
    host: &SimpleGraph,
    terminals: Terminals,
    mut trees: Vec<SteinerTree>,
    expected: usize,
) -> Result<TreePacking, ConstructionError> {
    trees.sort();
    let packing = TreePacking { terminals: terminals.as_array().to_vec(), trees };
    verify_packing(host, &packing.terminals, &packing).map_err(ConstructionError::Invalid)?;
    if packing.len() != expected {
        return Err(ConstructionError::WrongSize { expected, got: packing.len() });
    }
    Ok(packing)
}

/// `n - 2` trees in `K_n`: the star at every non-terminal plus the path
/// through the middle terminal.
pub fn pack_complete(n: usize, s: &[usize]) -> Result<TreePacking, ConstructionError> {
    let t = Terminals::new(s, n)?;
    let [x, y, z] = t.as_array();
    let host = SimpleGraph::complete(n)?;
    let mut trees = stars(n, [x, y, z], &[]);
    trees.push(tree(&[(x, y), (y, z)]));
    finish(&host, t, trees, n - 2)
}

/// `n - 2` trees in `K_n` minus the edge `e = uv`, by how many endpoints of
/// `e` are terminals.
pub fn pack_complete_minus_edge(
    n: usize,
    e: (usize, usize),
    s: &[usize],
) -> Result<TreePacking, ConstructionError> {
    let t = Terminals::new(s, n)?;
    let (u, v) = e;
    in_range(n, &[u, v])?;
    distinct(&[u, v])?;
    if n < 3 {
        return Err(ConstructionError::OrderTooSmall { n, min: 3 });
    }
    let host = SimpleGraph::complete_minus(n, &[e].into_iter().collect())?;
    let terms = t.as_array();
    let inside = |a: usize| terms.contains(&a);

    let trees = match (inside(u), inside(v)) {
        (true, true) => {
            // S = {u, v, w1}: stars at the other w_i, plus u - w1 - v.
            let w1 = *terms.iter().find(|&&a| a != u && a != v).unwrap();
            let mut trees = stars(n, terms, &[]);
            trees.push(tree(&[(u, w1), (w1, v)]));
            trees
        }
        (true, false) | (false, true) => {
            // S = {u, w1, w2} with v outside. The star range starts after
            // w2: the tree through v already occupies the slot a range
            // starting at w2 would collide with.
            let (u, v) = if inside(u) { (u, v) } else { (v, u) };
            let [w1, w2] = [0, 1].map(|i| terms.iter().copied().filter(|&a| a != u).nth(i).unwrap());
            let mut trees = stars(n, terms, &[v]);
            trees.push(tree(&[(u, w1), (w1, w2)]));
            trees.push(tree(&[(u, w2), (v, w2), (v, w1)]));
            trees
        }
        (false, false) => {
            // S = {w1, w2, w3}: stars at the other w_i and at u and v, plus
            // the path through w2.
            let [w1, w2, w3] = terms;
            let mut trees = stars(n, terms, &[]);
            trees.push(tree(&[(w2, w1), (w2, w3)]));
            trees
        }
    };
    finish(&host, t, trees, n - 2)
}

/// `n - 3` trees in `K_n` minus a matching of at least two edges.
pub fn pack_matching(n: usize, m: &EdgeSet, s: &[usize]) -> Result<TreePacking, ConstructionError> {
    let t = Terminals::new(s, n)?;
    let mut partner = vec![None; n];
    for &(a, b) in m.iter() {
        in_range(n, &[a, b])?;
        if partner[a].is_some() || partner[b].is_some() {
            return Err(ConstructionError::NotAMatching);
        }
        partner[a] = Some(b);
        partner[b] = Some(a);
    }
    if m.len() < 2 {
        return Err(ConstructionError::NotAMatching);
    }
    let host = SimpleGraph::complete_minus(n, m)?;
    let terms = t.as_array();
    let smallest_outside = |taken: &[usize]| (0..n).find(|v| !taken.contains(v));

    let matched = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(i, j)| partner[terms[i]] == Some(terms[j]));
    let trees = if let Some((i, j)) = matched {
        let (x, y) = (terms[i], terms[j]);
        let z = terms[3 - i - j];
        let z_prime = partner[z].or_else(|| smallest_outside(&terms)).expect("n >= 4");
        let mut trees = stars(n, terms, &[z_prime]);
        // xy is deleted, so the inner tree routes through z: x - z - y.
        trees.push(tree(&[(x, z), (z, y)]));
        trees
    } else {
        let [x, y, z] = terms;
        let mut taken = terms.to_vec();
        taken.extend(terms.iter().filter_map(|&a| partner[a]));
        // Unmatched terminals borrow the smallest free vertex; with too few
        // vertices left (n = 5) the corresponding tree is dropped and the
        // count still comes out at n - 3 because no star is lost either.
        let mut prime = [None; 3];
        for (k, &a) in terms.iter().enumerate() {
            prime[k] = partner[a].or_else(|| {
                let w = smallest_outside(&taken)?;
                taken.push(w);
                Some(w)
            });
        }
        let [xp, yp, zp] = prime;
        let used: Vec<usize> = prime.iter().flatten().copied().collect();
        let mut trees = stars(n, terms, &used);
        if let Some(yp) = yp {
            trees.push(tree(&[(y, x), (x, yp), (yp, z)]));
        }
        if let Some(xp) = xp {
            trees.push(tree(&[(y, xp), (z, xp), (z, x)]));
        }
        if let Some(zp) = zp {
            trees.push(tree(&[(z, y), (y, zp), (zp, x)]));
        }
        trees
    };
    finish(&host, t, trees, n - 3)
}

/// The `C3 ∪ P2` family; `placement = [v1, v2, v3, u1, u2]`.
fn c3_p2_family(n: usize, placement: [usize; 5], t: Terminals) -> Vec<SteinerTree> {
    let cycle = &placement[..3];
    let pair = &placement[3..];
    let terms = t.as_array();
    let in_cycle: Vec<usize> = terms.iter().copied().filter(|v| cycle.contains(v)).collect();
    let in_pair: Vec<usize> = terms.iter().copied().filter(|v| pair.contains(v)).collect();
    let outside: Vec<usize> = terms.iter().copied().filter(|v| !placement.contains(v)).collect();
    let mate = |u: usize| if u == pair[0] { pair[1] } else { pair[0] };
    let cycle_rest = |x: &[usize]| -> Vec<usize> { cycle.iter().copied().filter(|v| !x.contains(v)).collect() };

    match (in_cycle.len(), in_pair.len()) {
        // Every other vertex sees the whole triangle, or no terminal has a
        // deleted edge to a non-terminal.
        (3, 0) | (0, 0) | (0, 2) => stars(n, terms, &[]),
        (2, 1) => {
            let (x, y, z) = (in_cycle[0], in_cycle[1], in_pair[0]);
            let (u2, v3) = (mate(z), cycle_rest(&in_cycle)[0]);
            let mut trees = stars(n, terms, &[u2, v3]);
            trees.push(tree(&[(x, z), (y, z)]));
            trees.push(tree(&[(x, u2), (u2, v3), (z, v3), (u2, y)]));
            trees
        }
        (2, 0) => {
            let (x, y, z) = (in_cycle[0], in_cycle[1], outside[0]);
            let v3 = cycle_rest(&in_cycle)[0];
            let mut trees = stars(n, terms, &[v3]);
            trees.push(tree(&[(x, z), (z, y)]));
            trees
        }
        (1, 2) => {
            let (x, y, z) = (in_cycle[0], in_pair[0], in_pair[1]);
            let [v2, v3] = [cycle_rest(&[x])[0], cycle_rest(&[x])[1]];
            let mut trees = stars(n, terms, &[v2, v3]);
            trees.push(tree(&[(x, z), (v2, z), (v2, y)]));
            trees.push(tree(&[(x, y), (y, v3), (z, v3)]));
            trees
        }
        (1, 1) => {
            let (x, y, z) = (in_cycle[0], in_pair[0], outside[0]);
            let u2 = mate(y);
            let [v2, v3] = [cycle_rest(&[x])[0], cycle_rest(&[x])[1]];
            let mut trees = stars(n, terms, &[v2, v3, u2]);
            trees.push(tree(&[(x, z), (z, y)]));
            trees.push(tree(&[(x, u2), (u2, v2), (v2, y), (v2, z)]));
            // x and v3 are both on the triangle, so v3 reaches x through the
            // terminal edge xy; xz already belongs to the path x - z - y.
            trees.push(tree(&[(x, y), (y, v3), (z, v3)]));
            trees
        }
        (1, 0) => {
            let (x, y, z) = (in_cycle[0], outside[0], outside[1]);
            let [v2, v3] = [cycle_rest(&[x])[0], cycle_rest(&[x])[1]];
            let mut trees = stars(n, terms, &[v2, v3]);
            trees.push(tree(&[(x, z), (z, y)]));
            trees.push(tree(&[(x, y), (y, v3), (z, v3)]));
            trees
        }
        (0, 1) => {
            let x = in_pair[0];
            let (y, z) = (outside[0], outside[1]);
            let mut trees = stars(n, terms, &[mate(x)]);
            trees.push(tree(&[(x, z), (z, y)]));
            trees
        }
        _ => unreachable!("three terminals split over a triangle and an edge"),
    }
}

fn check_placement(n: usize, placement: &[usize], min: usize) -> Result<(), ConstructionError> {
    if n < min {
        return Err(ConstructionError::OrderTooSmall { n, min });
    }
    in_range(n, placement)?;
    distinct(placement)
}

/// `n - 3` trees in `K_n` minus a triangle `v1 v2 v3` and an edge `u1 u2`.
pub fn pack_c3_p2(n: usize, placement: [usize; 5], s: &[usize]) -> Result<TreePacking, ConstructionError> {
    check_placement(n, &placement, 5)?;
    let t = Terminals::new(s, n)?;
    let host = DeletedShapeSpec::new(DeletedShape::C3PlusP2, placement.to_vec())?.host(n)?;
    finish(&host, t, c3_p2_family(n, placement, t), n - 3)
}

/// `n - 3` trees in `K_n` minus a path `v1 v2 v3` and an edge `u1 u2`.
///
/// The host contains `K_n` minus the triangle on `v1 v2 v3` and the same
/// edge, so the triangle family is reused unchanged.
pub fn pack_p3_p2(n: usize, placement: [usize; 5], s: &[usize]) -> Result<TreePacking, ConstructionError> {
    check_placement(n, &placement, 5)?;
    let t = Terminals::new(s, n)?;
    let host = DeletedShapeSpec::new(DeletedShape::P3PlusP2, placement.to_vec())?.host(n)?;
    finish(&host, t, c3_p2_family(n, placement, t), n - 3)
}

/// `n - 3` trees in `K_n` minus a path `v1 v2 v3 v4`.
///
/// Let `I` be the positions of the terminals on the path. Reversing the
/// path maps every pattern onto one of the following, where `F` is the
/// set of vertices off the path and terminals in `F` are named last:
///
/// | `I`       | stars skip   | special trees                                   |
/// |-----------|--------------|-------------------------------------------------|
/// | {}        | -            | -                                               |
/// | {1}       | v2           | x y, y v2, v2 z                                 |
/// | {2}       | v1, v3       | x y, y v1, v1 z / x z, z v3, v3 y               |
/// | {1,2}     | v3           | x z, z y                                        |
/// | {1,3}     | v2, v4       | x z, z y / y x, x v4, v4 z                      |
/// | {1,4}     | v2, v3       | x y, y v2, v2 z / x v3, v3 z, z y               |
/// | {2,3}     | v1, v4       | x z, z y / x v4, v4 v1, v1 y, v1 z              |
/// | {1,2,3}   | -            | v4 v1, v4 v2, v1 v3                             |
/// | {1,2,4}   | v3           | v1 v4, v4 v2                                    |
///
/// In each row the stars cover every vertex adjacent to all terminals, and
/// each special tree uses one of the skipped vertices together with a
/// distinct terminal-terminal edge.
pub fn pack_p4(n: usize, placement: [usize; 4], s: &[usize]) -> Result<TreePacking, ConstructionError> {
    check_placement(n, &placement, 4)?;
    let t = Terminals::new(s, n)?;
    let host = DeletedShapeSpec::new(DeletedShape::P4, placement.to_vec())?.host(n)?;
    let terms = t.as_array();

    let positions = |path: &[usize; 4]| -> Vec<usize> { (0..4).filter(|&i| terms.contains(&path[i])).collect() };
    const BASE: [&[usize]; 9] = [&[], &[0], &[1], &[0, 1], &[0, 2], &[0, 3], &[1, 2], &[0, 1, 2], &[0, 1, 3]];
    let mut path = placement;
    if !BASE.contains(&positions(&path).as_slice()) {
        path.reverse();
    }
    let pos = positions(&path);
    let [v1, v2, v3, v4] = path;
    let off: Vec<usize> = terms.iter().copied().filter(|v| !path.contains(v)).collect();

    let trees = match pos.as_slice() {
        [] => stars(n, terms, &[]),
        [0] => {
            let (x, y, z) = (v1, off[0], off[1]);
            let mut trees = stars(n, terms, &[v2]);
            trees.push(tree(&[(x, y), (y, v2), (v2, z)]));
            trees
        }
        [1] => {
            let (x, y, z) = (v2, off[0], off[1]);
            let mut trees = stars(n, terms, &[v1, v3]);
            trees.push(tree(&[(x, y), (y, v1), (v1, z)]));
            trees.push(tree(&[(x, z), (z, v3), (v3, y)]));
            trees
        }
        [0, 1] => {
            let (x, y, z) = (v1, v2, off[0]);
            let mut trees = stars(n, terms, &[v3]);
            trees.push(tree(&[(x, z), (z, y)]));
            trees
        }
        [0, 2] => {
            let (x, y, z) = (v1, v3, off[0]);
            let mut trees = stars(n, terms, &[v2, v4]);
            trees.push(tree(&[(x, z), (z, y)]));
            trees.push(tree(&[(y, x), (x, v4), (v4, z)]));
            trees
        }
        [0, 3] => {
            let (x, y, z) = (v1, v4, off[0]);
            let mut trees = stars(n, terms, &[v2, v3]);
            trees.push(tree(&[(x, y), (y, v2), (v2, z)]));
            trees.push(tree(&[(x, v3), (v3, z), (z, y)]));
            trees
        }
        [1, 2] => {
            let (x, y, z) = (v2, v3, off[0]);
            let mut trees = stars(n, terms, &[v1, v4]);
            trees.push(tree(&[(x, z), (z, y)]));
            trees.push(tree(&[(x, v4), (v4, v1), (v1, y), (v1, z)]));
            trees
        }
        [0, 1, 2] => {
            let mut trees = stars(n, terms, &[v4]);
            trees.push(tree(&[(v4, v1), (v4, v2), (v1, v3)]));
            trees
        }
        [0, 1, 3] => {
            let mut trees = stars(n, terms, &[v3]);
            trees.push(tree(&[(v1, v4), (v4, v2)]));
            trees
        }
        other => unreachable!("pattern {other:?} is not canonical after reversal"),
    };
    finish(&host, t, trees, n - 3)
}

/// A graph whose generalized 3-connectivity is at most `bound`.
#[derive(Debug, Clone)]
pub struct NegativeInstance {
    pub name: &'static str,
    pub deleted: EdgeSet,
    pub graph: SimpleGraph,
    pub bound: usize,
}

/// `K_n` minus shapes outside the `n - 3` characterization, each with the
/// bound `n - 4`. Families that need more than `n` vertices are omitted.
pub fn negative_instances(n: usize) -> Vec<NegativeInstance> {
    let families: [(&'static str, &[(usize, usize)]); 8] = [
        ("3-star", &[(0, 1), (0, 2), (0, 3)]),
        ("P3+P3", &[(0, 1), (1, 2), (3, 4), (4, 5)]),
        ("C3+C3", &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]),
        ("P5", &[(0, 1), (1, 2), (2, 3), (3, 4)]),
        ("C4", &[(0, 1), (1, 2), (2, 3), (0, 3)]),
        ("P4+P2", &[(0, 1), (1, 2), (2, 3), (4, 5)]),
        ("P3+2P2", &[(0, 1), (1, 2), (3, 4), (5, 6)]),
        ("C3+2P2", &[(0, 1), (1, 2), (0, 2), (3, 4), (5, 6)]),
    ];
    if n < 4 {
        return Vec::new();
    }
    families
        .into_iter()
        .filter_map(|(name, edges)| {
            let deleted: EdgeSet = edges.iter().copied().collect();
            let graph = SimpleGraph::complete_minus(n, &deleted).ok()?;
            Some(NegativeInstance { name, deleted, graph, bound: n - 4 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{kappa3, max_internally_disjoint};

    fn all_triples(n: usize) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    #[test]
    fn complete_family_examples() {
        let p = pack_complete(4, &[0, 1, 2]).unwrap();
        assert_eq!(p.trees, vec![tree(&[(0, 1), (1, 2)]), tree(&[(0, 3), (1, 3), (2, 3)])]);
        for s in all_triples(6) {
            let p = pack_complete(6, &s).unwrap();
            assert_eq!(p.len(), 4);
            assert_eq!(max_internally_disjoint(&SimpleGraph::complete(6).unwrap(), &s).unwrap().0, 4);
        }
    }

    #[test]
    fn minus_edge_examples() {
        // u = 0, v = 1, w1 = 2, w2 = 3, w3 = 4.
        let p = pack_complete_minus_edge(5, (0, 1), &[0, 1, 2]).unwrap();
        assert_eq!(p.trees, vec![
            tree(&[(0, 2), (2, 1)]),
            tree(&[(3, 0), (3, 1), (3, 2)]),
            tree(&[(4, 0), (4, 1), (4, 2)]),
        ]);
        let p = pack_complete_minus_edge(5, (0, 1), &[2, 3, 4]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.trees.contains(&tree(&[(0, 2), (0, 3), (0, 4)])));
        assert!(p.trees.contains(&tree(&[(1, 2), (1, 3), (1, 4)])));

        let p = pack_complete_minus_edge(5, (0, 1), &[0, 2, 3]).unwrap();
        assert!(p.trees.contains(&tree(&[(0, 3), (1, 3), (1, 2)])));
        assert!(p.trees.contains(&tree(&[(0, 2), (2, 3)])));
    }

    #[test]
    fn minus_edge_argument_errors() {
        assert!(matches!(
            pack_complete_minus_edge(5, (1, 1), &[0, 2, 3]),
            Err(ConstructionError::Placement(_))
        ));
        assert!(matches!(
            pack_complete_minus_edge(5, (1, 7), &[0, 2, 3]),
            Err(ConstructionError::Placement(_))
        ));
        assert!(matches!(
            pack_complete_minus_edge(5, (0, 1), &[0, 2]),
            Err(ConstructionError::Terminals(OracleError::TerminalCount(2)))
        ));
    }

    #[test]
    fn matching_examples() {
        let m: EdgeSet = [(0, 1), (2, 3), (4, 5)].into_iter().collect();
        let p = pack_matching(6, &m, &[0, 1, 2]).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.trees.contains(&tree(&[(0, 2), (2, 1)])));

        // x, y, z = 0, 2, 4 with partners x', y', z' = 1, 3, 5.
        let p = pack_matching(6, &m, &[0, 2, 4]).unwrap();
        assert_eq!(p.trees, vec![
            tree(&[(2, 0), (0, 3), (3, 4)]),
            tree(&[(2, 1), (4, 1), (4, 0)]),
            tree(&[(4, 2), (2, 5), (5, 0)]),
        ]);
        for partner in [1, 3, 5] {
            assert!(p.trees.iter().any(|t| t.vertex_mask() >> partner & 1 == 1));
        }

        let k6m = SimpleGraph::complete_minus(6, &m).unwrap();
        assert_eq!(kappa3(&k6m).unwrap().value, 3);
    }

    #[test]
    fn matching_rejects_non_matchings() {
        let path: EdgeSet = [(0, 1), (1, 2)].into_iter().collect();
        assert_eq!(pack_matching(6, &path, &[0, 1, 2]), Err(ConstructionError::NotAMatching));
        let single: EdgeSet = [(0, 1)].into_iter().collect();
        assert_eq!(pack_matching(6, &single, &[0, 1, 2]), Err(ConstructionError::NotAMatching));
    }

    #[test]
    fn matching_on_five_vertices_drops_the_missing_fallback() {
        let m: EdgeSet = [(0, 1), (2, 3)].into_iter().collect();
        let p = pack_matching(5, &m, &[0, 2, 4]).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn c3_p2_examples() {
        let p = pack_c3_p2(6, [0, 1, 2, 3, 4], &[0, 1, 2]).unwrap();
        assert_eq!(p.trees, vec![
            tree(&[(0, 3), (1, 3), (2, 3)]),
            tree(&[(0, 4), (1, 4), (2, 4)]),
            tree(&[(0, 5), (1, 5), (2, 5)]),
        ]);
        // s = {v1, v2, u1} with v3 = 2, u2 = 4.
        let p = pack_c3_p2(7, [0, 1, 2, 3, 4], &[0, 1, 3]).unwrap();
        assert!(p.trees.contains(&tree(&[(0, 3), (1, 3)])));
        assert!(p.trees.contains(&tree(&[(0, 4), (4, 2), (3, 2), (4, 1)])));
        assert!(matches!(
            pack_c3_p2(6, [0, 1, 2, 3, 3], &[0, 1, 2]),
            Err(ConstructionError::Placement(_))
        ));
    }

    #[test]
    fn p3_p2_reuses_triangle_family() {
        let placement = [0, 1, 2, 3, 4];
        let host = DeletedShapeSpec::new(DeletedShape::P3PlusP2, placement.to_vec()).unwrap().host(6).unwrap();
        for s in all_triples(6) {
            let c3 = pack_c3_p2(6, placement, &s).unwrap();
            assert_eq!(verify_packing(&host, &s, &c3), Ok(()));
            assert_eq!(pack_p3_p2(6, placement, &s).unwrap(), c3);
        }
        assert_eq!(pack_p3_p2(6, placement, &[0, 1, 3]).unwrap().len(), 3);
        assert_eq!(kappa3(&host).unwrap().value, 3);
    }

    #[test]
    fn p4_examples() {
        for s in all_triples(4) {
            assert_eq!(pack_p4(4, [0, 1, 2, 3], &s).unwrap().len(), 1);
        }
        let p = pack_p4(6, [0, 1, 2, 3], &[1, 2, 4]).unwrap();
        assert_eq!(p.len(), 3);
        let host = DeletedShapeSpec::canonical(DeletedShape::P4).host(6).unwrap();
        assert_eq!(kappa3(&host).unwrap().value, 3);
        assert!(matches!(pack_p4(3, [0, 1, 2, 3], &[0, 1, 2]), Err(ConstructionError::OrderTooSmall { .. })));
    }

    /// Every placement (not just canonical ones) and every terminal set.
    #[test]
    fn p4_all_placements_on_six_vertices() {
        let n = 6;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let path = [a, b, c, d];
                        if distinct(&path).is_err() || a > d {
                            continue;
                        }
                        for s in all_triples(n) {
                            assert_eq!(pack_p4(n, path, &s).unwrap().len(), 3, "{path:?} {s:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shape_spec_parsing_and_validation() {
        assert_eq!("p4".parse::<DeletedShape>().unwrap(), DeletedShape::P4);
        assert_eq!("matching:3".parse::<DeletedShape>().unwrap(), DeletedShape::Matching(3));
        assert!("matching:1".parse::<DeletedShape>().is_err());
        assert!("hexagon".parse::<DeletedShape>().is_err());
        assert!(DeletedShapeSpec::new(DeletedShape::P4, vec![0, 1, 2]).is_err());
        assert!(DeletedShapeSpec::new(DeletedShape::P4, vec![0, 1, 2, 1]).is_err());
        let spec = DeletedShapeSpec::canonical(DeletedShape::Matching(3));
        assert_eq!(spec.deleted_edges().len(), 3);
        assert!(matches!(spec.host(5), Err(ConstructionError::OrderTooSmall { n: 5, min: 6 })));
        assert_eq!(spec.pack_all(6).unwrap().len(), 20);
        for shape in ["none", "edge", "matching:2", "p3p2", "c3p2", "p4"] {
            let parsed: DeletedShape = shape.parse().unwrap();
            let shown = parsed.to_string();
            assert_eq!(shown.parse::<DeletedShape>().unwrap(), parsed);
        }
    }

    #[test]
    fn negative_examples() {
        let seven = negative_instances(7);
        let names: Vec<&str> = seven.iter().map(|i| i.name).collect();
        assert!(names.contains(&"C4") && names.contains(&"3-star") && names.contains(&"C3+2P2"));
        let c4 = seven.iter().find(|i| i.name == "C4").unwrap();
        assert_eq!(c4.bound, 3);
        assert!(kappa3(&c4.graph).unwrap().value <= 3);
        let eight = negative_instances(8);
        let p4p2 = eight.iter().find(|i| i.name == "P4+P2").unwrap();
        assert_eq!(p4p2.bound, 4);
        assert!(negative_instances(5).iter().all(|i| i.deleted.vertex_mask() >> 5 == 0));
        assert!(negative_instances(3).is_empty());
    }
}
