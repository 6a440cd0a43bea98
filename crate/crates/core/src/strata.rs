//! Dual trees of stratified sphere images, edge pairings, and
//! critical-point lower bounds.
//!
//! An immersed sphere without triple points pulls its double curves back to
//! disjoint circles, and those circles cut the sphere into regions. The dual
//! graph — one vertex per region, one edge per circle — is always a tree, and
//! each double curve contributes exactly two circles, so the tree's edges
//! carry a perfect matching into 2-blocks ([`ColoredTree`]). On top of that
//! picture this module computes the closed-up surface a region contributes
//! ([`closure_surface`]) and how few critical points any compatible Morse
//! function can have ([`min_critical_points`]), which is what rules most
//! stratifications out of the four-point classification.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type VertexId = u8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrataError {
    /// An enumeration size outside the supported window.
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    InvalidTree(&'static str),
    /// Perfect matchings need an even number of edges.
    OddEdgeCount(usize),
    InvalidPairing(&'static str),
    UnknownVertex(VertexId),
}

impl fmt::Display for StrataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrataError::OutOfRange {
                what,
                value,
                min,
                max,
            } => write!(f, "{what} = {value} outside supported range {min}..={max}"),
            StrataError::InvalidTree(msg) => write!(f, "invalid tree: {msg}"),
            StrataError::OddEdgeCount(n) => {
                write!(f, "edge count {n} is odd, cannot pair edges")
            }
            StrataError::InvalidPairing(msg) => write!(f, "invalid pairing: {msg}"),
            StrataError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
        }
    }
}

impl core::error::Error for StrataError {}

/// Finite tree on vertices `0..n`. Edges are stored `(lo, hi)`, sorted; the
/// constructor rejects anything that is not a tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    n: u8,
    edges: Vec<(u8, u8)>,
}

impl Tree {
    pub fn new(n_vertices: u8, edges: &[(u8, u8)]) -> Result<Self, StrataError> {
        if n_vertices == 0 {
            return Err(StrataError::InvalidTree("a tree has at least one vertex"));
        }
        let mut norm: Vec<(u8, u8)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(StrataError::InvalidTree("self-loop"));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(StrataError::InvalidTree("edge endpoint out of range"));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(StrataError::InvalidTree("parallel edges"));
        }
        if norm.len() != n_vertices as usize - 1 {
            return Err(StrataError::InvalidTree("edge count must be vertex count - 1"));
        }
        let t = Tree {
            n: n_vertices,
            edges: norm,
        };
        if !t.is_connected() {
            return Err(StrataError::InvalidTree("disconnected"));
        }
        Ok(t)
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

    pub fn degree(&self, v: u8) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Index into `edges()` of the edge `{a, b}`, if present.
    pub fn edge_index(&self, a: u8, b: u8) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// Indices of edges incident to `v`, ascending.
    pub fn incident(&self, v: u8) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn neighbors(&self, v: u8) -> Vec<u8> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.n as usize;
        let mut seen = vec![false; n];
        let mut stack = vec![0u8];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All vertex permutations preserving the edge set, each as the image
    /// vector `π[v]`. Backtracking on degree + adjacency; trees here have at
    /// most nine vertices.
    pub fn automorphisms(&self) -> Vec<Vec<u8>> {
        let n = self.n as usize;
        let deg: Vec<usize> = (0..n).map(|v| self.degree(v as u8)).collect();
        let mut img: Vec<u8> = vec![0; n];
        let mut used = vec![false; n];
        let mut out = Vec::new();
        self.auto_rec(0, &deg, &mut img, &mut used, &mut out);
        out
    }

    fn auto_rec(
        &self,
        v: usize,
        deg: &[usize],
        img: &mut Vec<u8>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<u8>>,
    ) {
        let n = self.n as usize;
        if v == n {
            out.push(img.clone());
            return;
        }
        'cand: for w in 0..n {
            if used[w] || deg[w] != deg[v] {
                continue;
            }
            for u in 0..v {
                let adj = self.edge_index(v as u8, u as u8).is_some();
                let adj_img = self.edge_index(w as u8, img[u]).is_some();
                if adj != adj_img {
                    continue 'cand;
                }
            }
            img[v] = w as u8;
            used[w] = true;
            self.auto_rec(v + 1, deg, img, used, out);
            used[w] = false;
        }
    }
}

/// Centers of the tree (one or two), found by stripping leaves.
fn centers(t: &Tree) -> Vec<u8> {
    let n = t.vertex_count();
    if n == 1 {
        return vec![0];
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v as u8)).collect();
    let mut removed = vec![false; n];
    let mut remaining = n;
    while remaining > 2 {
        let leaves: Vec<usize> = (0..n).filter(|&v| !removed[v] && deg[v] <= 1).collect();
        for v in leaves {
            removed[v] = true;
            remaining -= 1;
            for w in t.neighbors(v as u8) {
                if !removed[w as usize] {
                    deg[w as usize] -= 1;
                }
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).map(|v| v as u8).collect()
}

/// Rooted subtree encoding over `(` `)`: sorted child encodings wrapped in a
/// pair of parens. Equal encodings from the canonical root characterize the
/// isomorphism class exactly.
fn ahu(t: &Tree, v: u8, parent: Option<u8>) -> String {
    let mut parts: Vec<String> = t
        .neighbors(v)
        .into_iter()
        .filter(|&w| Some(w) != parent)
        .map(|w| ahu(t, w, Some(v)))
        .collect();
    parts.sort();
    let mut s = String::from("(");
    for p in parts {
        s.push_str(&p);
    }
    s.push(')');
    s
}

fn preorder_relabel(t: &Tree, root: u8, label: &mut Vec<Option<u8>>, next: &mut u8) {
    // Children visited in sorted encoding order so isomorphic inputs relabel
    // to the identical edge list.
    let mut stack = vec![(root, None::<u8>)];
    while let Some((v, parent)) = stack.pop() {
        label[v as usize] = Some(*next);
        *next += 1;
        let mut kids: Vec<(String, u8)> = t
            .neighbors(v)
            .into_iter()
            .filter(|&w| Some(w) != parent)
            .map(|w| (ahu(t, w, Some(v)), w))
            .collect();
        kids.sort();
        // reversed so the lexicographically first child is processed first
        for (_, w) in kids.into_iter().rev() {
            stack.push((w, Some(v)));
        }
    }
}

fn canonical_root(t: &Tree) -> (u8, String) {
    centers(t)
        .into_iter()
        .map(|c| (c, ahu(t, c, None)))
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(c, enc)| (c, enc))
        .expect("tree has a center")
}

/// Canonical key for a tree: two trees get equal keys iff they are
/// isomorphic, and the key is stable across runs.
pub fn tree_canonical(t: &Tree) -> String {
    let (_, enc) = canonical_root(t);
    format!("t:{enc}")
}

/// Vertex relabeling onto the canonical numbering: `map[v]` is the new id.
pub(crate) fn canonical_relabeling(t: &Tree) -> Vec<u8> {
    let (root, _) = canonical_root(t);
    let mut label: Vec<Option<u8>> = vec![None; t.vertex_count()];
    let mut next = 0u8;
    preorder_relabel(t, root, &mut label, &mut next);
    label.into_iter().map(|l| l.expect("all labeled")).collect()
}

/// The member of the isomorphism class with canonical vertex numbering.
pub(crate) fn canonical_form(t: &Tree) -> Tree {
    let map = canonical_relabeling(t);
    let edges: Vec<(u8, u8)> = t
        .edges()
        .iter()
        .map(|&(a, b)| (map[a as usize], map[b as usize]))
        .collect();
    Tree::new(t.n, &edges).expect("relabeling preserves treeness")
}

/// One tree per isomorphism class with the given edge count, grown by
/// attaching leaves to every vertex of every smaller class. Sorted by
/// canonical key.
pub fn enumerate_trees(n_edges: usize) -> Result<Vec<Tree>, StrataError> {
    if !(1..=8).contains(&n_edges) {
        return Err(StrataError::OutOfRange {
            what: "n_edges",
            value: n_edges,
            min: 1,
            max: 8,
        });
    }
    let mut current: BTreeMap<String, Tree> = BTreeMap::new();
    let seed = Tree::new(2, &[(0, 1)])?;
    current.insert(tree_canonical(&seed), canonical_form(&seed));
    for _ in 2..=n_edges {
        let mut next: BTreeMap<String, Tree> = BTreeMap::new();
        for t in current.values() {
            let n = t.n;
            for v in 0..n {
                let mut edges: Vec<(u8, u8)> = t.edges().to_vec();
                edges.push((v, n));
                let grown = Tree::new(n + 1, &edges).expect("leaf attachment keeps a tree");
                next.entry(tree_canonical(&grown))
                    .or_insert_with(|| canonical_form(&grown));
            }
        }
        current = next;
    }
    Ok(current.into_values().collect())
}

/// Tree whose edges are partitioned into 2-blocks; block k is double curve k.
/// Blocks are `(lo, hi)` pairs of indices into `tree.edges()`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredTree {
    tree: Tree,
    blocks: Vec<(usize, usize)>,
}

impl ColoredTree {
    pub fn new(tree: Tree, blocks: &[(usize, usize)]) -> Result<Self, StrataError> {
        let m = tree.edge_count();
        if m % 2 != 0 {
            return Err(StrataError::OddEdgeCount(m));
        }
        if blocks.len() != m / 2 {
            return Err(StrataError::InvalidPairing("block count must be edge count / 2"));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(blocks.len());
        let mut seen = vec![false; m];
        for &(a, b) in blocks {
            if a == b {
                return Err(StrataError::InvalidPairing("block pairs an edge with itself"));
            }
            if a >= m || b >= m {
                return Err(StrataError::InvalidPairing("edge index out of range"));
            }
            if seen[a] || seen[b] {
                return Err(StrataError::InvalidPairing("edge in more than one block"));
            }
            seen[a] = true;
            seen[b] = true;
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        Ok(ColoredTree { tree, blocks: norm })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn curve_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of_edge(&self, e: usize) -> usize {
        self.blocks
            .iter()
            .position(|&(a, b)| a == e || b == e)
            .expect("every edge is in a block")
    }

    /// Blocks with both edges incident to `v` (each glues two boundary
    /// circles of the region into a handle), ascending.
    pub fn glued_blocks_at(&self, v: u8) -> Vec<usize> {
        let inc = self.tree.incident(v);
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| inc.contains(&a) && inc.contains(&b))
            .map(|(i, _)| i)
            .collect()
    }

    /// Blocks with at least one edge incident to `v`, ascending.
    pub fn incident_blocks_at(&self, v: u8) -> Vec<usize> {
        let inc = self.tree.incident(v);
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| inc.contains(&a) || inc.contains(&b))
            .map(|(i, _)| i)
            .collect()
    }

    fn blocks_serial(blocks: &[(usize, usize)]) -> String {
        let parts: Vec<String> = blocks.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        parts.join(",")
    }

    fn map_blocks(&self, vertex_map: &[u8], target: &Tree) -> Vec<(usize, usize)> {
        let mut mapped: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .map(|&(x, y)| {
                let map_edge = |e: usize| {
                    let (a, b) = self.tree.edges()[e];
                    target
                        .edge_index(vertex_map[a as usize], vertex_map[b as usize])
                        .expect("vertex map preserves edges")
                };
                let (p, q) = (map_edge(x), map_edge(y));
                (p.min(q), p.max(q))
            })
            .collect();
        mapped.sort_unstable();
        mapped
    }

    /// Tree automorphisms that carry the pairing to itself, with the block
    /// permutation each one induces: block `i` maps to `block_map[i]`.
    pub fn color_preserving_automorphisms(&self) -> Vec<(Vec<u8>, Vec<usize>)> {
        let mut out = Vec::new();
        'auto: for auto in self.tree.automorphisms() {
            let map_edge = |e: usize| {
                let (a, b) = self.tree.edges()[e];
                self.tree
                    .edge_index(auto[a as usize], auto[b as usize])
                    .expect("automorphisms preserve edges")
            };
            let mut block_map = Vec::with_capacity(self.blocks.len());
            for &(x, y) in &self.blocks {
                let (p, q) = (map_edge(x), map_edge(y));
                let img = (p.min(q), p.max(q));
                match self.blocks.iter().position(|&b| b == img) {
                    Some(i) => block_map.push(i),
                    None => continue 'auto,
                }
            }
            out.push((auto, block_map));
        }
        out
    }

    /// Vertex maps onto the canonical labelling — every tree isomorphism,
    /// not only the pairing-preserving ones — each with the index map from
    /// this pairing's blocks into the pairing it induces over there.
    pub(crate) fn canonical_isomorphisms(&self) -> Vec<(Vec<u8>, Vec<usize>)> {
        let canon = canonical_form(&self.tree);
        let relab = canonical_relabeling(&self.tree);
        canon
            .automorphisms()
            .into_iter()
            .map(|auto| {
                let vmap: Vec<u8> = (0..self.tree.vertex_count())
                    .map(|v| auto[relab[v] as usize])
                    .collect();
                let target = self.map_blocks(&vmap, &canon);
                let map_edge = |e: usize| {
                    let (a, b) = self.tree.edges()[e];
                    canon
                        .edge_index(vmap[a as usize], vmap[b as usize])
                        .expect("isomorphisms preserve edges")
                };
                let block_map: Vec<usize> = self
                    .blocks
                    .iter()
                    .map(|&(x, y)| {
                        let (p, q) = (map_edge(x), map_edge(y));
                        let img = (p.min(q), p.max(q));
                        target
                            .binary_search(&img)
                            .expect("image block is in the induced pairing")
                    })
                    .collect();
                (vmap, block_map)
            })
            .collect()
    }

    /// Key equal iff there is a tree isomorphism matching the pairings.
    pub fn canonical_key(&self) -> String {
        let canon = canonical_form(&self.tree);
        let relab = canonical_relabeling(&self.tree);
        let best = canon
            .automorphisms()
            .into_iter()
            .map(|auto| {
                // compose: v -> relab[v] -> auto[relab[v]]
                let composed: Vec<u8> = (0..self.tree.vertex_count())
                    .map(|v| auto[relab[v] as usize])
                    .collect();
                Self::blocks_serial(&self.map_blocks(&composed, &canon))
            })
            .min()
            .expect("at least the identity");
        format!("{};p:{best}", tree_canonical(&self.tree))
    }
}

fn perfect_matchings(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            let mut blocks = acc.clone();
            blocks.sort_unstable();
            out.push(blocks);
            return;
        }
        let a = free[0];
        for i in 1..free.len() {
            let b = free[i];
            let mut rest: Vec<usize> = free.clone();
            rest.remove(i);
            rest.remove(0);
            acc.push((a, b));
            rec(&mut rest, acc, out);
            acc.pop();
        }
    }
    let mut free: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    rec(&mut free, &mut Vec::new(), &mut out);
    out
}

/// One representative per orbit of perfect matchings on the edges of `t`
/// under the automorphism group of `t`. Output sorted by blocks.
pub fn enumerate_pairings(t: &Tree) -> Result<Vec<ColoredTree>, StrataError> {
    let m = t.edge_count();
    if m % 2 != 0 {
        return Err(StrataError::OddEdgeCount(m));
    }
    let autos = t.automorphisms();
    let mut reps: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for matching in perfect_matchings(m) {
        let ct = ColoredTree::new(t.clone(), &matching)?;
        let orbit_min = autos
            .iter()
            .map(|auto| ct.map_blocks(auto, t))
            .min()
            .expect("identity exists");
        reps.insert(orbit_min);
    }
    reps.into_iter()
        .map(|blocks| ColoredTree::new(t.clone(), &blocks))
        .collect()
}

/// Genus and boundary count of the closure of the region at a tree vertex.
/// Each pairing block fully incident to the vertex glues two boundary
/// circles into a handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfacePiece {
    pub vertex: VertexId,
    pub genus: u32,
    pub boundaries: u32,
}

pub fn closure_surface(ct: &ColoredTree, v: VertexId) -> Result<SurfacePiece, StrataError> {
    if (v as usize) >= ct.tree.vertex_count() {
        return Err(StrataError::UnknownVertex(v));
    }
    let genus = ct.glued_blocks_at(v).len() as u32;
    let deg = ct.tree.degree(v) as u32;
    debug_assert!(deg >= 2 * genus);
    Ok(SurfacePiece {
        vertex: v,
        genus,
        boundaries: deg - 2 * genus,
    })
}

/// How a global budget of critical points is spread over the stratification:
/// an even count ≥ 2 per double curve plus interior points per region.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointBudget {
    /// Indexed by pairing block.
    pub per_curve: Vec<u32>,
    /// Indexed by tree vertex.
    pub per_vertex_interior: Vec<u32>,
}

impl PointBudget {
    pub fn total(&self) -> u32 {
        self.per_curve.iter().sum::<u32>() + self.per_vertex_interior.iter().sum::<u32>()
    }
}

struct ClosedVertexConstraint {
    vertex: usize,
    need: u32,
    fully_incident: Vec<usize>,
}

fn closed_constraints(ct: &ColoredTree) -> Vec<ClosedVertexConstraint> {
    (0..ct.tree.vertex_count())
        .filter_map(|v| {
            let sp = closure_surface(ct, v as u8).expect("vertex in range");
            if sp.boundaries == 0 {
                Some(ClosedVertexConstraint {
                    vertex: v,
                    need: 2 + 2 * sp.genus,
                    fully_incident: ct.glued_blocks_at(v as u8),
                })
            } else {
                None
            }
        })
        .collect()
}

fn for_each_curve_tuple(curves: usize, cap: u32, f: &mut dyn FnMut(&[u32])) {
    fn rec(i: usize, curves: usize, cap: u32, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if i == curves {
            f(buf);
            return;
        }
        let mut c = 2;
        while c <= cap {
            buf.push(c);
            rec(i + 1, curves, cap, buf, f);
            buf.pop();
            c += 2;
        }
    }
    rec(0, curves, cap, &mut Vec::new(), f);
}

/// Exact minimum of Σ per-curve + Σ interior points subject to: every curve
/// carries an even count ≥ 2, and every vertex whose closure is a closed
/// surface of genus g satisfies interior + (fully incident curves) ≥ 2 + 2g.
/// Interior points are only ever forced at closed vertices, so the optimum
/// sets them to the slack of that constraint.
pub fn min_critical_points(ct: &ColoredTree) -> u32 {
    let constraints = closed_constraints(ct);
    let gmax = (0..ct.tree.vertex_count())
        .map(|v| closure_surface(ct, v as u8).expect("in range").genus)
        .max()
        .unwrap_or(0);
    let cap = 2 + 2 * gmax;
    let mut best = u32::MAX;
    for_each_curve_tuple(ct.curve_count(), cap, &mut |tuple| {
        let interior: u32 = constraints
            .iter()
            .map(|c| {
                let carried: u32 = c.fully_incident.iter().map(|&b| tuple[b]).sum();
                c.need.saturating_sub(carried)
            })
            .sum();
        let total = tuple.iter().sum::<u32>() + interior;
        best = best.min(total);
    });
    best
}

/// All colored trees over 2 and 4 edges whose lower bound fits the budget.
/// Sorted by canonical key, then blocks.
pub fn feasible_stratifications(budget: u32) -> Vec<ColoredTree> {
    let mut out: Vec<ColoredTree> = Vec::new();
    for n_edges in [2usize, 4] {
        for t in enumerate_trees(n_edges).expect("2 and 4 are in range") {
            for ct in enumerate_pairings(&t).expect("even edge count") {
                if min_critical_points(&ct) <= budget {
                    out.push(ct);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.canonical_key()
            .cmp(&b.canonical_key())
            .then_with(|| a.blocks.cmp(&b.blocks))
    });
    out
}

/// Every way to place exactly `budget` points: even counts ≥ 2 per curve,
/// the rest as interior points, subject to the closed-vertex constraints of
/// [`min_critical_points`]. Infeasible stratifications yield an empty list.
pub fn point_distributions(ct: &ColoredTree, budget: u32) -> Vec<PointBudget> {
    let constraints = closed_constraints(ct);
    let n = ct.tree.vertex_count();
    let mut out = Vec::new();
    for_each_curve_tuple(ct.curve_count(), budget, &mut |tuple| {
        let used: u32 = tuple.iter().sum();
        if used > budget {
            return;
        }
        let rem = budget - used;
        // compositions of rem over the n vertices
        fn comps(i: usize, n: usize, left: u32, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
            if i == n {
                if left == 0 {
                    f(buf);
                }
                return;
            }
            for x in 0..=left {
                buf.push(x);
                comps(i + 1, n, left - x, buf, f);
                buf.pop();
            }
        }
        let tuple_owned = tuple.to_vec();
        comps(0, n, rem, &mut Vec::new(), &mut |interior| {
            let ok = constraints.iter().all(|c| {
                let carried: u32 = c.fully_incident.iter().map(|&b| tuple_owned[b]).sum();
                interior[c.vertex] + carried >= c.need
            });
            if ok {
                out.push(PointBudget {
                    per_curve: tuple_owned.clone(),
                    per_vertex_interior: interior.to_vec(),
                });
            }
        });
    });
    out
}
