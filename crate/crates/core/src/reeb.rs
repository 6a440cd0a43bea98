//! Reeb graphs of simple Morse functions.
//!
//! The Reeb graph is the quotient of the surface by connected components of
//! level sets, directed by increasing function value. "Simple" means every
//! critical value holds exactly one critical point, so the vertices carry a
//! strict total order — represented here by the vertex ids themselves:
//! vertex `k` is the (k+1)-th critical point from below.
//!
//! Degree-2 vertices are not legal in a Reeb graph of a closed surface, but
//! they are useful as markers for points of interest that sit on an edge (a
//! double-curve point that is regular for the restriction to one region).
//! [`validate_reeb`] reports them; decorated graphs justify them separately
//! and [`ReebGraph::smoothed`] removes them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use crate::strata::VertexId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReebError {
    VertexOutOfRange { vertex: VertexId, n: u8 },
    Disconnected,
    Invalid(Vec<ReebViolation>),
    GenusOutOfRange { genus: u32, max: u32 },
}

impl fmt::Display for ReebError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReebError::VertexOutOfRange { vertex, n } => {
                write!(f, "edge endpoint {vertex} outside vertex range 0..{n}")
            }
            ReebError::Disconnected => write!(f, "graph is disconnected"),
            ReebError::Invalid(v) => write!(f, "graph violates {} invariant(s)", v.len()),
            ReebError::GenusOutOfRange { genus, max } => {
                write!(f, "genus {genus} outside supported range 0..={max}")
            }
        }
    }
}

impl core::error::Error for ReebError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReebViolation {
    Disconnected,
    /// Vertex whose total degree is neither 1 nor 3.
    InvalidDegree { vertex: VertexId, total: usize },
    /// Edge whose source does not precede its target in the value order.
    EdgeAgainstOrder { edge: usize },
    /// Degree-3 vertex whose in/out split is not (1,2) or (2,1).
    ExtremalSaddle { vertex: VertexId, input: usize, output: usize },
}

impl fmt::Display for ReebViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReebViolation::Disconnected => write!(f, "disconnected"),
            ReebViolation::InvalidDegree { vertex, total } => {
                write!(f, "invalid vertex degree: vertex {vertex} has degree {total}")
            }
            ReebViolation::EdgeAgainstOrder { edge } => {
                write!(f, "edge against value order: edge {edge}")
            }
            ReebViolation::ExtremalSaddle { vertex, input, output } => {
                write!(
                    f,
                    "degree-3 vertex {vertex} splits ({input},{output}), expected (1,2) or (2,1)"
                )
            }
        }
    }
}

/// Directed multigraph on vertices `0..n`; the id order is the critical
/// value order. Edges are stored sorted, and the edge id is the index into
/// that list — parallel edges get consecutive ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReebGraph {
    n: u8,
    edges: Vec<(u8, u8)>,
}

impl ReebGraph {
    /// Accepts any structurally representable multigraph (violations of the
    /// Reeb invariants are reported by [`validate_reeb`], not here).
    pub fn new(n_vertices: u8, edges: &[(u8, u8)]) -> Result<Self, ReebError> {
        for &(s, t) in edges {
            for v in [s, t] {
                if v >= n_vertices {
                    return Err(ReebError::VertexOutOfRange {
                        vertex: v,
                        n: n_vertices,
                    });
                }
            }
        }
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        Ok(ReebGraph {
            n: n_vertices,
            edges: sorted,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (u8, u8) {
        self.edges[id]
    }

    pub fn in_edges(&self, v: VertexId) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(_, t))| t == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn out_edges(&self, v: VertexId) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(s, _))| s == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// (in-degree, out-degree)
    pub fn degree(&self, v: VertexId) -> (usize, usize) {
        (self.in_edges(v).len(), self.out_edges(v).len())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n as usize;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in &self.edges {
                for (a, b) in [(s, t), (t, s)] {
                    if a as usize == v && !seen[b as usize] {
                        seen[b as usize] = true;
                        stack.push(b as usize);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Copy with every (1,1)-degree vertex contracted: its in-edge and
    /// out-edge fuse into one. Vertices are renumbered to stay dense but
    /// keep their relative order.
    pub fn smoothed(&self) -> ReebGraph {
        let mut edges: Vec<(u8, u8)> = self.edges.clone();
        let mut keep: Vec<bool> = vec![true; self.n as usize];
        loop {
            let marker = (0..self.n).find(|&v| {
                keep[v as usize] && {
                    let inn: Vec<usize> = edges
                        .iter()
                        .enumerate()
                        .filter(|(_, &(_, t))| t == v)
                        .map(|(i, _)| i)
                        .collect();
                    let out: Vec<usize> = edges
                        .iter()
                        .enumerate()
                        .filter(|(_, &(s, _))| s == v)
                        .map(|(i, _)| i)
                        .collect();
                    inn.len() == 1 && out.len() == 1
                }
            });
            let Some(v) = marker else { break };
            let in_id = edges.iter().position(|&(_, t)| t == v).unwrap();
            let src = edges[in_id].0;
            let out_id = edges.iter().position(|&(s, _)| s == v).unwrap();
            let dst = edges[out_id].1;
            let mut next: Vec<(u8, u8)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != in_id && *i != out_id)
                .map(|(_, &e)| e)
                .collect();
            next.push((src, dst));
            edges = next;
            keep[v as usize] = false;
        }
        let remap: BTreeMap<u8, u8> = (0..self.n)
            .filter(|&v| keep[v as usize])
            .enumerate()
            .map(|(new, old)| (old, new as u8))
            .collect();
        let remapped: Vec<(u8, u8)> = edges
            .iter()
            .map(|&(s, t)| (remap[&s], remap[&t]))
            .collect();
        ReebGraph::new(remap.len() as u8, &remapped).expect("smoothing keeps endpoints in range")
    }
}

/// All invariant violations; the graph is a valid Reeb graph of a simple
/// Morse function iff the list is empty.
pub fn validate_reeb(r: &ReebGraph) -> Vec<ReebViolation> {
    let mut out = Vec::new();
    if !r.is_connected() {
        out.push(ReebViolation::Disconnected);
    }
    for (i, &(s, t)) in r.edges.iter().enumerate() {
        if s >= t {
            out.push(ReebViolation::EdgeAgainstOrder { edge: i });
        }
    }
    for v in 0..r.n {
        let (inn, outn) = r.degree(v);
        let total = inn + outn;
        if total != 1 && total != 3 {
            out.push(ReebViolation::InvalidDegree { vertex: v, total });
        } else if total == 3 && inn != 1 && inn != 2 {
            out.push(ReebViolation::ExtremalSaddle {
                vertex: v,
                input: inn,
                output: outn,
            });
        }
    }
    out
}

/// First Betti number |E| - |V| + 1 of a connected graph.
pub fn betti(r: &ReebGraph) -> Result<u32, ReebError> {
    if !r.is_connected() {
        return Err(ReebError::Disconnected);
    }
    Ok((r.edge_count() as u32 + 1) - r.vertex_count() as u32)
}

/// Canonical key under isomorphisms that preserve both edge direction and
/// the relative vertex order. Such a map between graphs on `0..n` is the
/// identity, so the key is just the sorted edge list.
pub fn reeb_canonical(r: &ReebGraph) -> Result<String, ReebError> {
    let violations = validate_reeb(r);
    if !violations.is_empty() {
        return Err(ReebError::Invalid(violations));
    }
    Ok(serialize_edges(r.n, &r.edges))
}

fn serialize_edges(n: u8, edges: &[(u8, u8)]) -> String {
    let parts: Vec<String> = edges.iter().map(|(s, t)| format!("{s}>{t}")).collect();
    format!("rg:{n}:[{}]", parts.join(","))
}

/// Key under direction-preserving isomorphism that may scramble the vertex
/// order: minimum serialization over all vertex bijections. Only used to
/// deduplicate generated graphs (n ≤ 8).
fn unordered_key(r: &ReebGraph) -> String {
    let n = r.n as usize;
    let mut perm: Vec<u8> = (0..r.n).collect();
    let mut best: Option<String> = None;
    // Heap's algorithm, iterative.
    let mut c = vec![0usize; n];
    let mut consider = |perm: &[u8]| {
        let mut edges: Vec<(u8, u8)> = r
            .edges
            .iter()
            .map(|&(s, t)| (perm[s as usize], perm[t as usize]))
            .collect();
        edges.sort_unstable();
        let s = serialize_edges(r.n, &edges);
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    };
    consider(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.expect("at least the identity permutation")
}

/// Side-edge slots of a degree-3 vertex: the two co-directional edges (the
/// out pair of a split, the in pair of a merge), ascending by edge id. Slot
/// `k` of the vertex means `side_edges[k]` throughout the decoration layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelOrderTag {
    pub vertex: VertexId,
    pub side_edges: [usize; 2],
}

pub fn level_order_tags(r: &ReebGraph) -> Vec<LevelOrderTag> {
    let mut out = Vec::new();
    for v in 0..r.n {
        let inn = r.in_edges(v);
        let outn = r.out_edges(v);
        if inn.len() + outn.len() != 3 {
            continue;
        }
        let pair = if inn.len() == 2 { &inn } else { &outn };
        if pair.len() != 2 {
            continue; // (0,3) and (3,0) carry no slot structure
        }
        out.push(LevelOrderTag {
            vertex: v,
            side_edges: [pair[0], pair[1]],
        });
    }
    out
}

/// All Reeb graphs of optimal Morse functions of the given genus: 2 + 2g
/// vertices, one minimum, one maximum, 2g saddles. Generated by an upward
/// sweep that tracks the open level-circle stubs, then deduplicated by
/// direction-preserving isomorphism (the vertex order is allowed to move;
/// at genus ≤ 2 the two conventions coincide). Sorted by canonical key.
pub fn enumerate_optimal_reeb(genus: u32) -> Result<Vec<ReebGraph>, ReebError> {
    const MAX_GENUS: u32 = 3;
    if genus > MAX_GENUS {
        return Err(ReebError::GenusOutOfRange {
            genus,
            max: MAX_GENUS,
        });
    }
    let n = (2 + 2 * genus) as u8;
    if genus == 0 {
        return Ok(vec![ReebGraph::new(2, &[(0, 1)]).expect("valid")]);
    }
    // saddle kind per interior vertex: true = split (+1 stub), false = merge
    let mut raw: alloc::collections::BTreeSet<Vec<(u8, u8)>> = alloc::collections::BTreeSet::new();
    let saddles = 2 * genus as usize;
    for mask in 0..(1u32 << saddles) {
        let kinds: Vec<bool> = (0..saddles).map(|i| mask >> i & 1 == 1).collect();
        if kinds.iter().filter(|&&k| k).count() != genus as usize {
            continue;
        }
        // stub count must stay positive and admit each event
        let mut open = 1i32;
        let mut ok = true;
        for &k in &kinds {
            if k {
                open += 1;
            } else {
                if open < 2 {
                    ok = false;
                    break;
                }
                open -= 1;
            }
        }
        if !ok || open != 1 {
            continue;
        }
        sweep(&kinds, n, &mut raw);
    }
    // group by unordered key, keep the ordered-minimal representative
    let mut classes: BTreeMap<String, ReebGraph> = BTreeMap::new();
    for edges in raw {
        let g = ReebGraph::new(n, &edges).expect("sweep stays in range");
        debug_assert!(validate_reeb(&g).is_empty());
        debug_assert_eq!(betti(&g), Ok(genus));
        let key = unordered_key(&g);
        classes
            .entry(key)
            .and_modify(|cur| {
                if g.edges < cur.edges {
                    *cur = g.clone();
                }
            })
            .or_insert(g);
    }
    let mut out: Vec<ReebGraph> = classes.into_values().collect();
    out.sort();
    Ok(out)
}

/// Extend partial sweeps vertex by vertex. `stubs` holds the source vertex
/// of every open level circle; choices are deduplicated by source value
/// since stubs from one source are interchangeable.
fn sweep(kinds: &[bool], n: u8, out: &mut alloc::collections::BTreeSet<Vec<(u8, u8)>>) {
    fn rec(
        kinds: &[bool],
        n: u8,
        v: u8,
        stubs: &mut Vec<u8>,
        edges: &mut Vec<(u8, u8)>,
        out: &mut alloc::collections::BTreeSet<Vec<(u8, u8)>>,
    ) {
        if (v - 1) as usize == kinds.len() {
            debug_assert_eq!(stubs.len(), 1);
            let mut all = edges.clone();
            all.push((stubs[0], n - 1));
            all.sort_unstable();
            out.insert(all);
            return;
        }
        let kind = kinds[(v - 1) as usize];
        if kind {
            // split: consume one stub, open two from v
            let mut tried: Vec<u8> = Vec::new();
            for i in 0..stubs.len() {
                let src = stubs[i];
                if tried.contains(&src) {
                    continue;
                }
                tried.push(src);
                let mut rest = stubs.clone();
                rest.remove(i);
                rest.push(v);
                rest.push(v);
                edges.push((src, v));
                rec(kinds, n, v + 1, &mut rest, edges, out);
                edges.pop();
            }
        } else {
            // merge: consume two stubs, open one from v
            let mut tried: Vec<(u8, u8)> = Vec::new();
            for i in 0..stubs.len() {
                for j in (i + 1)..stubs.len() {
                    let pair = (stubs[i].min(stubs[j]), stubs[i].max(stubs[j]));
                    if tried.contains(&pair) {
                        continue;
                    }
                    tried.push(pair);
                    let mut rest = stubs.clone();
                    rest.remove(j);
                    rest.remove(i);
                    rest.push(v);
                    edges.push((pair.0, v));
                    edges.push((pair.1, v));
                    rec(kinds, n, v + 1, &mut rest, edges, out);
                    edges.pop();
                    edges.pop();
                }
            }
        }
    }
    rec(kinds, n, 1, &mut vec![0], &mut Vec::new(), out);
}
