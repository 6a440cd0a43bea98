//! Decorated Reeb graphs that distinguish functions up to fibre equivalence.
//!
//! The Reeb graph of a piece forgets where the double curves sit over it.
//! The decoration adds that data back:
//!
//! * every circle the double curves cut out on the piece is recorded through
//!   the monotone paths its arcs project to — one path for a two-point
//!   boundary circle (both arcs project identically, by a collar argument),
//!   a [`Quad`] of four arc paths for a four-point circle, and a pair of
//!   paths for a curve whose two preimage circles were glued inside the
//!   piece;
//! * at every saddle the two co-directional edges bound the two level
//!   circles just off the critical level; the [`SaddlePartition`] records
//!   which of these two *slots* each path runs through.
//!
//! Most slot data is forced: a path that traverses a side edge of a saddle
//! sits in that edge's slot. The only free choice is the slot of a path end
//! that terminates at a saddle through its lone edge. Two decorated graphs
//! describe fibrewise-equivalent functions iff they match up to permuting
//! parallel edges, swapping the two paths of a pair, and renaming circles
//! of equal kind — the group searched by [`dg_canonical`] and
//! [`dg_equivalent`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::reeb::{level_order_tags, validate_reeb, ReebGraph, ReebViolation, VertexId};

pub type PathId = usize;

/// Edge ids of the Reeb graph, traversed in ascending value order;
/// consecutive edges share the vertex between them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonotonePath {
    edges: Vec<usize>,
}

impl MonotonePath {
    pub fn new(edges: &[usize]) -> Self {
        MonotonePath {
            edges: edges.to_vec(),
        }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Lowest vertex. Edge ids must be in range for `r`.
    pub fn start(&self, r: &ReebGraph) -> VertexId {
        r.edge(self.edges[0]).0
    }

    /// Highest vertex.
    pub fn end(&self, r: &ReebGraph) -> VertexId {
        r.edge(*self.edges.last().expect("paths are non-empty")).1
    }
}

/// Four-point circle: `arcs[k]` joins the k-th and (k+1)-th point of the
/// circle's cyclic order, which is stored in normal position (see
/// [`stratum_cycle`]). `boundary` is true when the circle stayed a boundary
/// component of the piece rather than being glued inside it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Quad {
    pub arcs: [PathId; 4],
    pub boundary: bool,
}

/// Paths are stored in a fixed layout: the two members of pair `k` are
/// paths `2k, 2k+1`; the arcs of quad `j` follow as four consecutive ids;
/// the unpaired segments come last in ascending order. The `pairing` and
/// `unpaired` fields spell the layout out and are checked by
/// [`validate_distinguishing`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct PathDecoration {
    pub paths: Vec<MonotonePath>,
    pub pairing: Vec<(PathId, PathId)>,
    pub quads: Vec<Quad>,
    pub unpaired: Vec<PathId>,
}

impl PathDecoration {
    fn quad_base(&self) -> usize {
        2 * self.pairing.len()
    }

    fn segment_base(&self) -> usize {
        2 * self.pairing.len() + 4 * self.quads.len()
    }
}

/// Per-saddle slot assignment. `at[v] = [slot0, slot1]` lists the paths
/// running through each side edge's level circle, slots ordered by side
/// edge id. Within a slot: ends terminating at `v` first, then crossings,
/// each group ascending — the order carries no information.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct SaddlePartition {
    pub at: BTreeMap<VertexId, [Vec<PathId>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DistinguishingGraph {
    pub reeb: ReebGraph,
    pub decoration: PathDecoration,
    pub partitions: SaddlePartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinguishViolation {
    EmptyPath { path: PathId },
    EdgeOutOfRange { path: PathId, position: usize },
    BrokenChain { path: PathId, position: usize },
    BadLayout(&'static str),
    UnderlyingReeb(ReebViolation),
    /// Degree-two vertex that no path terminates at: nothing justifies a
    /// vertex there.
    UnanchoredMarker { vertex: VertexId },
    PairEndpointMismatch { pair: usize },
    QuadNotCyclic { quad: usize },
    /// Cyclic order of the quad's points is not in lawful normal position.
    QuadOrderLaw { quad: usize },
    /// Partition present at a non-saddle or missing at a saddle.
    PartitionDomain { vertex: VertexId },
    /// Slots don't cover the paths touching the saddle exactly once.
    SlotCoverage { vertex: VertexId },
    /// Path traverses a side edge but sits in the other slot.
    ForcedSlot { vertex: VertexId, path: PathId },
    /// Two ends joined around a circle land in the same level circle.
    CoTermination { vertex: VertexId, first: PathId, second: PathId },
    NotNormalized { vertex: VertexId },
    /// Side edge whose slot disagrees about the paths traversing it.
    EdgeMembership { edge: usize },
}

impl fmt::Display for DistinguishViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DistinguishViolation::*;
        match self {
            EmptyPath { path } => write!(f, "path {path} is empty"),
            EdgeOutOfRange { path, position } => {
                write!(f, "path {path} has an out-of-range edge at {position}")
            }
            BrokenChain { path, position } => {
                write!(f, "path {path} breaks at position {position}")
            }
            BadLayout(why) => write!(f, "decoration layout: {why}"),
            UnderlyingReeb(v) => write!(f, "underlying graph: {v}"),
            UnanchoredMarker { vertex } => {
                write!(f, "degree-2 vertex {vertex} is not a path endpoint")
            }
            PairEndpointMismatch { pair } => {
                write!(f, "pair {pair} members have different endpoints")
            }
            QuadNotCyclic { quad } => write!(f, "quad {quad} arcs do not close a circle"),
            QuadOrderLaw { quad } => {
                write!(f, "quad {quad} cyclic order violates the alternation law")
            }
            PartitionDomain { vertex } => {
                write!(f, "partition domain mismatch at vertex {vertex}")
            }
            SlotCoverage { vertex } => write!(f, "slot coverage broken at vertex {vertex}"),
            ForcedSlot { vertex, path } => {
                write!(f, "path {path} sits in the wrong slot at vertex {vertex}")
            }
            CoTermination { vertex, first, second } => write!(
                f,
                "paths {first} and {second} share a level circle at vertex {vertex}"
            ),
            NotNormalized { vertex } => {
                write!(f, "slot lists at vertex {vertex} are not in normal order")
            }
            EdgeMembership { edge } => {
                write!(f, "slot membership inconsistent along edge {edge}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinguishError {
    UnknownStratum,
    BrokenCycle { quad: usize },
    /// The cyclic order of points along a circle must alternate between
    /// local minima and maxima of the value order; on four points only the
    /// min, second-highest, second-lowest, max pattern survives.
    OrderLaw { cycle: Vec<VertexId> },
    BadRequest(&'static str),
}

impl fmt::Display for DistinguishError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistinguishError::UnknownStratum => write!(f, "no such stratum"),
            DistinguishError::BrokenCycle { quad } => {
                write!(f, "quad {quad} arcs do not close a circle")
            }
            DistinguishError::OrderLaw { cycle } => {
                write!(f, "cyclic order {cycle:?} violates the alternation law")
            }
            DistinguishError::BadRequest(why) => write!(f, "bad request: {why}"),
        }
    }
}

impl core::error::Error for DistinguishError {}

/// How a path meets a vertex: the edge arriving from below and the edge
/// leaving upward, if present. Exactly one is present at a terminating end.
fn edges_at(r: &ReebGraph, p: &MonotonePath, v: VertexId) -> (Option<usize>, Option<usize>) {
    let mut arriving = None;
    let mut leaving = None;
    for &e in p.edges() {
        let (s, t) = r.edge(e);
        if t == v {
            arriving = Some(e);
        }
        if s == v {
            leaving = Some(e);
        }
    }
    (arriving, leaving)
}

fn touches(r: &ReebGraph, p: &MonotonePath, v: VertexId) -> bool {
    let (a, l) = edges_at(r, p, v);
    a.is_some() || l.is_some()
}

fn terminates_at(r: &ReebGraph, p: &MonotonePath, v: VertexId) -> bool {
    p.start(r) == v || p.end(r) == v
}

/// Side edge the path is forced through at `v`, if any.
fn forced_side(r: &ReebGraph, p: &MonotonePath, v: VertexId, sides: [usize; 2]) -> Option<usize> {
    let (a, l) = edges_at(r, p, v);
    [a, l]
        .into_iter()
        .flatten()
        .find(|e| sides.contains(e))
}

/// Normal slot order: terminating ends first, then crossings, both ascending.
fn normalize_slot(r: &ReebGraph, paths: &[MonotonePath], v: VertexId, slot: &mut Vec<PathId>) {
    slot.sort_unstable();
    slot.sort_by_key(|&p| !terminates_at(r, &paths[p], v));
}

/// Derive the cyclic point sequence of a quad from its arcs: `cycle[k]` is
/// shared by arcs k-1 and k. Fails if consecutive arcs don't share exactly
/// one endpoint or the four points are not distinct.
fn quad_cycle(r: &ReebGraph, paths: &[MonotonePath], q: &Quad) -> Option<[VertexId; 4]> {
    let ends: Vec<[VertexId; 2]> = q
        .arcs
        .iter()
        .map(|&a| {
            let p = &paths[a];
            [p.start(r), p.end(r)]
        })
        .collect();
    let mut cycle = [0u8; 4];
    for k in 0..4 {
        let prev = ends[(k + 3) % 4];
        let cur = ends[k];
        let shared: Vec<VertexId> = cur
            .iter()
            .copied()
            .filter(|x| prev.contains(x))
            .collect();
        if shared.len() != 1 {
            return None;
        }
        cycle[k] = shared[0];
    }
    // each arc must join consecutive cycle points, and the points must be
    // pairwise distinct
    for k in 0..4 {
        let mut want = [cycle[k], cycle[(k + 1) % 4]];
        want.sort_unstable();
        let mut got = ends[k];
        got.sort_unstable();
        if want != got {
            return None;
        }
    }
    let mut seen = cycle;
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(cycle)
}

/// Normal position: starts at the circle's lowest point and runs in the
/// direction whose second point is lower; the alternation law then reads
/// `c0 < c2 < c1 < c3`.
fn lawful_normal(cycle: &[VertexId; 4]) -> bool {
    cycle[0] < cycle[2] && cycle[2] < cycle[1] && cycle[1] < cycle[3]
}

pub fn validate_distinguishing(dg: &DistinguishingGraph) -> Vec<DistinguishViolation> {
    let r = &dg.reeb;
    let d = &dg.decoration;
    let mut out = Vec::new();

    // ids and chaining; nothing else is safe to check if these fail
    for (i, p) in d.paths.iter().enumerate() {
        if p.edges.is_empty() {
            out.push(DistinguishViolation::EmptyPath { path: i });
            continue;
        }
        for (j, &e) in p.edges.iter().enumerate() {
            if e >= r.edge_count() {
                out.push(DistinguishViolation::EdgeOutOfRange { path: i, position: j });
            }
        }
        if out.iter().any(|v| matches!(v, DistinguishViolation::EdgeOutOfRange { path, .. } if *path == i)) {
            continue;
        }
        for j in 1..p.edges.len() {
            if r.edge(p.edges[j - 1]).1 != r.edge(p.edges[j]).0 {
                out.push(DistinguishViolation::BrokenChain { path: i, position: j });
            }
        }
    }
    let layout_ok = {
        let base_q = d.quad_base();
        let base_s = d.segment_base();
        let pairs_ok = d
            .pairing
            .iter()
            .enumerate()
            .all(|(k, &pr)| pr == (2 * k, 2 * k + 1));
        let quads_ok = d.quads.iter().enumerate().all(|(j, q)| {
            q.arcs == [base_q + 4 * j, base_q + 4 * j + 1, base_q + 4 * j + 2, base_q + 4 * j + 3]
        });
        let segs_ok = d.unpaired.iter().copied().eq(base_s..d.paths.len());
        if !pairs_ok {
            out.push(DistinguishViolation::BadLayout("pair k must own paths 2k, 2k+1"));
        }
        if !quads_ok {
            out.push(DistinguishViolation::BadLayout(
                "quad arcs must be consecutive after the pairs",
            ));
        }
        if !segs_ok {
            out.push(DistinguishViolation::BadLayout("segments must close the path list"));
        }
        pairs_ok && quads_ok && segs_ok
    };
    if !out.is_empty() || !layout_ok {
        return out;
    }

    // underlying graph, excusing anchored degree-2 markers
    for viol in validate_reeb(r) {
        match viol {
            ReebViolation::InvalidDegree { vertex, total: 2 } if r.degree(vertex) == (1, 1) => {
                if !d.paths.iter().any(|p| terminates_at(r, p, vertex)) {
                    out.push(DistinguishViolation::UnanchoredMarker { vertex });
                }
            }
            other => out.push(DistinguishViolation::UnderlyingReeb(other)),
        }
    }

    for (k, &(x, y)) in d.pairing.iter().enumerate() {
        let (px, py) = (&d.paths[x], &d.paths[y]);
        if px.start(r) != py.start(r) || px.end(r) != py.end(r) {
            out.push(DistinguishViolation::PairEndpointMismatch { pair: k });
        }
    }
    let mut cycles: Vec<Option<[VertexId; 4]>> = Vec::new();
    for (j, q) in d.quads.iter().enumerate() {
        match quad_cycle(r, &d.paths, q) {
            None => {
                out.push(DistinguishViolation::QuadNotCyclic { quad: j });
                cycles.push(None);
            }
            Some(c) => {
                if !lawful_normal(&c) {
                    out.push(DistinguishViolation::QuadOrderLaw { quad: j });
                }
                cycles.push(Some(c));
            }
        }
    }

    // slot structure
    let tags = level_order_tags(r);
    let tag_vertices: BTreeSet<VertexId> = tags.iter().map(|t| t.vertex).collect();
    for v in dg.partitions.at.keys() {
        if !tag_vertices.contains(v) {
            out.push(DistinguishViolation::PartitionDomain { vertex: *v });
        }
    }
    for tag in &tags {
        let v = tag.vertex;
        let Some(slots) = dg.partitions.at.get(&v) else {
            out.push(DistinguishViolation::PartitionDomain { vertex: v });
            continue;
        };
        let touching: BTreeSet<PathId> = (0..d.paths.len())
            .filter(|&i| touches(r, &d.paths[i], v))
            .collect();
        let mut assigned: Vec<PathId> = slots[0].iter().chain(slots[1].iter()).copied().collect();
        assigned.sort_unstable();
        let distinct = assigned.windows(2).all(|w| w[0] != w[1]);
        if !distinct || assigned.iter().any(|p| !touching.contains(p)) || assigned.len() != touching.len() {
            out.push(DistinguishViolation::SlotCoverage { vertex: v });
            continue;
        }
        let slot_of = |p: PathId| -> usize {
            usize::from(slots[1].contains(&p))
        };
        for &p in &touching {
            if let Some(side) = forced_side(r, &d.paths[p], v, tag.side_edges) {
                let want = usize::from(side == tag.side_edges[1]);
                if slot_of(p) != want {
                    out.push(DistinguishViolation::ForcedSlot { vertex: v, path: p });
                }
            }
        }
        for (s, slot) in slots.iter().enumerate() {
            let mut want = slot.clone();
            normalize_slot(r, &d.paths, v, &mut want);
            if *slot != want {
                out.push(DistinguishViolation::NotNormalized { vertex: v });
                let _ = s;
                break;
            }
        }
    }

    // ends joined around a circle must use different level circles
    let mut co_ends: Vec<(PathId, PathId, VertexId)> = Vec::new();
    for &(x, y) in &d.pairing {
        let px = &d.paths[x];
        co_ends.push((x, y, px.start(r)));
        co_ends.push((x, y, px.end(r)));
    }
    for (j, q) in d.quads.iter().enumerate() {
        let Some(cycle) = cycles[j] else { continue };
        for k in 0..4 {
            let a = q.arcs[k];
            let b = q.arcs[(k + 1) % 4];
            let shared = cycle[(k + 1) % 4];
            let a_starts = d.paths[a].start(r) == shared;
            let b_starts = d.paths[b].start(r) == shared;
            if a_starts == b_starts {
                co_ends.push((a, b, shared));
            }
        }
    }
    for (a, b, v) in co_ends {
        if let Some(slots) = dg.partitions.at.get(&v) {
            let sa = slots.iter().position(|s| s.contains(&a));
            let sb = slots.iter().position(|s| s.contains(&b));
            if let (Some(sa), Some(sb)) = (sa, sb) {
                if sa == sb {
                    out.push(DistinguishViolation::CoTermination { vertex: v, first: a, second: b });
                }
            }
        }
    }

    // a side edge at both of its saddles must agree about its traffic
    for tag in &tags {
        for (s, &e) in tag.side_edges.iter().enumerate() {
            let (lo, hi) = r.edge(e);
            let other = if tag.vertex == lo { hi } else { lo };
            let Some(other_tag) = tags.iter().find(|t| t.vertex == other) else {
                continue;
            };
            let Some(os) = other_tag.side_edges.iter().position(|&oe| oe == e) else {
                continue;
            };
            if tag.vertex > other {
                continue; // handled from the lower end
            }
            let here = dg.partitions.at.get(&tag.vertex);
            let there = dg.partitions.at.get(&other);
            if let (Some(here), Some(there)) = (here, there) {
                let users = |slot: &Vec<PathId>| -> BTreeSet<PathId> {
                    slot.iter()
                        .copied()
                        .filter(|&p| d.paths[p].edges.contains(&e))
                        .collect()
                };
                if users(&here[s]) != users(&there[os]) {
                    out.push(DistinguishViolation::EdgeMembership { edge: e });
                }
            }
        }
    }

    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StratumRef {
    Pair(usize),
    Quad(usize),
    Segment(usize),
}

/// Point sequence around the given circle: both endpoints for a pair or
/// segment, the four points in lawful cyclic normal position for a quad.
pub fn stratum_cycle(
    dg: &DistinguishingGraph,
    stratum: StratumRef,
) -> Result<Vec<VertexId>, DistinguishError> {
    let r = &dg.reeb;
    let d = &dg.decoration;
    match stratum {
        StratumRef::Pair(k) => {
            let &(x, _) = d.pairing.get(k).ok_or(DistinguishError::UnknownStratum)?;
            let p = &d.paths[x];
            Ok(vec![p.start(r), p.end(r)])
        }
        StratumRef::Segment(k) => {
            let &x = d.unpaired.get(k).ok_or(DistinguishError::UnknownStratum)?;
            let p = &d.paths[x];
            Ok(vec![p.start(r), p.end(r)])
        }
        StratumRef::Quad(k) => {
            let q = d.quads.get(k).ok_or(DistinguishError::UnknownStratum)?;
            let cycle =
                quad_cycle(r, &d.paths, q).ok_or(DistinguishError::BrokenCycle { quad: k })?;
            if !lawful_normal(&cycle) {
                return Err(DistinguishError::OrderLaw { cycle: cycle.to_vec() });
            }
            Ok(cycle.to_vec())
        }
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Edge-id permutations that fix every vertex: independent shuffles of each
/// run of parallel edges. `perm[old] = new`.
pub(crate) fn parallel_edge_perms(r: &ReebGraph) -> Vec<Vec<usize>> {
    let m = r.edge_count();
    let mut acc: Vec<Vec<usize>> = vec![(0..m).collect()];
    let mut i = 0;
    while i < m {
        let mut j = i + 1;
        while j < m && r.edge(j) == r.edge(i) {
            j += 1;
        }
        let len = j - i;
        if len > 1 {
            let subs = permutations(len);
            let mut next = Vec::new();
            for base in &acc {
                for sub in &subs {
                    let mut p = base.clone();
                    for (k, &v) in sub.iter().enumerate() {
                        p[i + k] = i + v;
                    }
                    next.push(p);
                }
            }
            acc = next;
        }
        i = j;
    }
    acc
}

/// One symmetry of a decorated graph: permute parallel edges, swap the two
/// paths inside chosen pairs, and permute same-kind circles.
pub(crate) fn apply_symmetry(
    dg: &DistinguishingGraph,
    edge_perm: &[usize],
    swaps: &[bool],
    pair_perm: &[usize],
    quad_perm: &[usize],
    seg_perm: &[usize],
) -> DistinguishingGraph {
    let r = &dg.reeb;
    let d = &dg.decoration;
    let np = d.pairing.len();
    let nq = d.quads.len();
    let base_q = d.quad_base();
    let base_s = d.segment_base();

    // old path id -> new path id
    let mut path_map = vec![0usize; d.paths.len()];
    for k in 0..np {
        let o = pair_perm[k];
        let (a, b) = if swaps[k] { (2 * o + 1, 2 * o) } else { (2 * o, 2 * o + 1) };
        path_map[a] = 2 * k;
        path_map[b] = 2 * k + 1;
    }
    for j in 0..nq {
        let o = quad_perm[j];
        for i in 0..4 {
            path_map[base_q + 4 * o + i] = base_q + 4 * j + i;
        }
    }
    for s in 0..d.unpaired.len() {
        let o = seg_perm[s];
        path_map[base_s + o] = base_s + s;
    }

    let mut paths = vec![MonotonePath { edges: Vec::new() }; d.paths.len()];
    for (old, p) in d.paths.iter().enumerate() {
        paths[path_map[old]] = MonotonePath {
            edges: p.edges.iter().map(|&e| edge_perm[e]).collect(),
        };
    }
    let pairing: Vec<(PathId, PathId)> = (0..np).map(|k| (2 * k, 2 * k + 1)).collect();
    let quads: Vec<Quad> = (0..nq)
        .map(|j| Quad {
            arcs: [base_q + 4 * j, base_q + 4 * j + 1, base_q + 4 * j + 2, base_q + 4 * j + 3],
            boundary: d.quads[quad_perm[j]].boundary,
        })
        .collect();
    let unpaired: Vec<PathId> = (base_s..d.paths.len()).collect();
    let decoration = PathDecoration { paths, pairing, quads, unpaired };

    let mut inverse = vec![0usize; edge_perm.len()];
    for (old, &new) in edge_perm.iter().enumerate() {
        inverse[new] = old;
    }
    let mut at = BTreeMap::new();
    for tag in level_order_tags(r) {
        let Some(old_slots) = dg.partitions.at.get(&tag.vertex) else {
            continue;
        };
        let mut new_slots: [Vec<PathId>; 2] = [Vec::new(), Vec::new()];
        for (t, &side) in tag.side_edges.iter().enumerate() {
            let old_side = inverse[side];
            let o = tag
                .side_edges
                .iter()
                .position(|&e| e == old_side)
                .expect("parallel permutations preserve the side set");
            new_slots[t] = old_slots[o].iter().map(|&p| path_map[p]).collect();
            normalize_slot(r, &decoration.paths, tag.vertex, &mut new_slots[t]);
        }
        at.insert(tag.vertex, new_slots);
    }

    DistinguishingGraph {
        reeb: dg.reeb.clone(),
        decoration,
        partitions: SaddlePartition { at },
    }
}

pub fn serialize_dg(dg: &DistinguishingGraph) -> String {
    let r = &dg.reeb;
    let d = &dg.decoration;
    let edges: Vec<String> = r.edges().iter().map(|(s, t)| format!("{s}>{t}")).collect();
    let paths: Vec<String> = d
        .paths
        .iter()
        .map(|p| {
            let ids: Vec<String> = p.edges.iter().map(|e| format!("{e}")).collect();
            format!("[{}]", ids.join(","))
        })
        .collect();
    let pairs: Vec<String> = d.pairing.iter().map(|(a, b)| format!("({a},{b})")).collect();
    let quads: Vec<String> = d
        .quads
        .iter()
        .map(|q| {
            let ids: Vec<String> = q.arcs.iter().map(|a| format!("{a}")).collect();
            format!("([{}]{})", ids.join(","), if q.boundary { 'b' } else { 'i' })
        })
        .collect();
    let segs: Vec<String> = d.unpaired.iter().map(|s| format!("{s}")).collect();
    let slots: Vec<String> = dg
        .partitions
        .at
        .iter()
        .map(|(v, s)| {
            let fmt_slot = |slot: &Vec<PathId>| -> String {
                let ids: Vec<String> = slot.iter().map(|p| format!("{p}")).collect();
                ids.join(",")
            };
            format!("{v}:({}|{})", fmt_slot(&s[0]), fmt_slot(&s[1]))
        })
        .collect();
    format!(
        "V{};E[{}];P[{}];PR[{}];Q[{}];S[{}];L[{}]",
        r.vertex_count(),
        edges.join(","),
        paths.join(","),
        pairs.join(","),
        quads.join(","),
        segs.join(","),
        slots.join(";")
    )
}

fn for_each_symmetry(dg: &DistinguishingGraph, mut f: impl FnMut(DistinguishingGraph)) {
    let np = dg.decoration.pairing.len();
    let nq = dg.decoration.quads.len();
    let ns = dg.decoration.unpaired.len();
    let edge_perms = parallel_edge_perms(&dg.reeb);
    let pair_perms = permutations(np);
    let quad_perms = permutations(nq);
    let seg_perms = permutations(ns);
    for ep in &edge_perms {
        for pp in &pair_perms {
            for qp in &quad_perms {
                for sp in &seg_perms {
                    for mask in 0..(1u32 << np) {
                        let swaps: Vec<bool> = (0..np).map(|k| mask >> k & 1 == 1).collect();
                        f(apply_symmetry(dg, ep, &swaps, pp, qp, sp));
                    }
                }
            }
        }
    }
}

/// Minimal serialization over the symmetry group, with the image realizing
/// it. Decorated graphs are equivalent iff their keys agree.
pub(crate) fn dg_canonical_rep(dg: &DistinguishingGraph) -> (String, DistinguishingGraph) {
    let mut best: Option<(String, DistinguishingGraph)> = None;
    for_each_symmetry(dg, |img| {
        let s = serialize_dg(&img);
        if best.as_ref().is_none_or(|(b, _)| s < *b) {
            best = Some((s, img));
        }
    });
    best.expect("the symmetry group contains the identity")
}

pub fn dg_canonical(dg: &DistinguishingGraph) -> String {
    dg_canonical_rep(dg).0
}

/// Direct search for a symmetry carrying `a` to `b`; independent of
/// [`dg_canonical`] so the two can cross-check each other.
pub fn dg_equivalent(a: &DistinguishingGraph, b: &DistinguishingGraph) -> bool {
    if a.reeb != b.reeb {
        return false;
    }
    let mut found = false;
    for_each_symmetry(a, |img| {
        if img == *b {
            found = true;
        }
    });
    found
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumReq {
    Pair { lo: VertexId, hi: VertexId },
    Segment { lo: VertexId, hi: VertexId },
    Quad { ranks: [VertexId; 4], boundary: bool },
}

/// All ascending edge paths from `lo` to `hi`.
fn routes(r: &ReebGraph, lo: VertexId, hi: VertexId) -> Vec<Vec<usize>> {
    fn rec(r: &ReebGraph, at: VertexId, hi: VertexId, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if at == hi {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for e in r.out_edges(at) {
            let (s, t) = r.edge(e);
            if s < t && t <= hi {
                cur.push(e);
                rec(r, t, hi, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(r, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// Every valid decoration of `r` carrying the requested circles, one
/// representative per equivalence class, sorted by canonical key. Requests
/// are grouped by kind (pairs, then quads, then segments), keeping their
/// relative order within each kind.
pub fn enumerate_decorations(
    r: &ReebGraph,
    reqs: &[StratumReq],
) -> Result<Vec<DistinguishingGraph>, DistinguishError> {
    let n = r.vertex_count() as u8;
    let mut pair_specs: Vec<(u8, u8)> = Vec::new();
    let mut quad_specs: Vec<([u8; 4], bool)> = Vec::new();
    let mut seg_specs: Vec<(u8, u8)> = Vec::new();
    for req in reqs {
        match *req {
            StratumReq::Pair { lo, hi } => {
                if lo >= hi || hi >= n {
                    return Err(DistinguishError::BadRequest("pair needs two ordered points"));
                }
                pair_specs.push((lo, hi));
            }
            StratumReq::Segment { lo, hi } => {
                if lo >= hi || hi >= n {
                    return Err(DistinguishError::BadRequest("segment needs two ordered points"));
                }
                seg_specs.push((lo, hi));
            }
            StratumReq::Quad { mut ranks, boundary } => {
                ranks.sort_unstable();
                if ranks.windows(2).any(|w| w[0] == w[1]) || ranks[3] >= n {
                    return Err(DistinguishError::BadRequest("quad needs four distinct points"));
                }
                quad_specs.push((ranks, boundary));
            }
        }
    }

    // endpoint spec of every path in layout order
    let mut specs: Vec<(u8, u8)> = Vec::new();
    for &(lo, hi) in &pair_specs {
        specs.push((lo, hi));
        specs.push((lo, hi));
    }
    for &([a, b, c, d], _) in &quad_specs {
        // normal cyclic position (a, c, b, d); arcs join consecutive points
        specs.push((a, c));
        specs.push((b, c));
        specs.push((b, d));
        specs.push((a, d));
    }
    for &(lo, hi) in &seg_specs {
        specs.push((lo, hi));
    }

    let route_sets: Vec<Vec<Vec<usize>>> =
        specs.iter().map(|&(lo, hi)| routes(r, lo, hi)).collect();
    if route_sets.iter().any(|s| s.is_empty()) {
        return Ok(Vec::new());
    }

    let tags = level_order_tags(r);
    let mut classes: BTreeMap<String, DistinguishingGraph> = BTreeMap::new();
    let mut choice = vec![0usize; specs.len()];
    loop {
        let paths: Vec<MonotonePath> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| MonotonePath { edges: route_sets[i][c].clone() })
            .collect();
        let pairing: Vec<(PathId, PathId)> =
            (0..pair_specs.len()).map(|k| (2 * k, 2 * k + 1)).collect();
        let base_q = 2 * pair_specs.len();
        let quads: Vec<Quad> = quad_specs
            .iter()
            .enumerate()
            .map(|(j, &(_, boundary))| Quad {
                arcs: [base_q + 4 * j, base_q + 4 * j + 1, base_q + 4 * j + 2, base_q + 4 * j + 3],
                boundary,
            })
            .collect();
        let base_s = base_q + 4 * quad_specs.len();
        let unpaired: Vec<PathId> = (base_s..paths.len()).collect();

        // ends free to choose a slot: terminating at a saddle via its lone edge
        let mut free: Vec<(PathId, VertexId)> = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            for v in [p.start(r), p.end(r)] {
                if let Some(tag) = tags.iter().find(|t| t.vertex == v) {
                    if forced_side(r, p, v, tag.side_edges).is_none() {
                        free.push((i, v));
                    }
                }
            }
        }

        for mask in 0..(1u32 << free.len()) {
            let mut at = BTreeMap::new();
            for tag in &tags {
                let mut slots: [Vec<PathId>; 2] = [Vec::new(), Vec::new()];
                for (i, p) in paths.iter().enumerate() {
                    if !touches(r, p, tag.vertex) {
                        continue;
                    }
                    let slot = match forced_side(r, p, tag.vertex, tag.side_edges) {
                        Some(side) => usize::from(side == tag.side_edges[1]),
                        None => {
                            let bit = free
                                .iter()
                                .position(|&(fp, fv)| fp == i && fv == tag.vertex)
                                .expect("unforced touching ends were collected above");
                            usize::from(mask >> bit & 1 == 1)
                        }
                    };
                    slots[slot].push(i);
                }
                for slot in slots.iter_mut() {
                    normalize_slot(r, &paths, tag.vertex, slot);
                }
                at.insert(tag.vertex, slots);
            }
            let dg = DistinguishingGraph {
                reeb: r.clone(),
                decoration: PathDecoration {
                    paths: paths.clone(),
                    pairing: pairing.clone(),
                    quads: quads.clone(),
                    unpaired: unpaired.clone(),
                },
                partitions: SaddlePartition { at },
            };
            if validate_distinguishing(&dg).is_empty() {
                // keep the candidate itself, not the canonical image: the
                // image may permute same-kind circles and callers rely on
                // circle k realizing request k
                classes.entry(dg_canonical(&dg)).or_insert(dg);
            }
        }

        // odometer over route choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(classes.into_values().collect());
            }
            choice[i] += 1;
            if choice[i] < route_sets[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> ReebGraph {
        ReebGraph::new(4, &[(0, 1), (1, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn torus_pair_classes() {
        let t = torus();
        let expect = [((0, 1), 1), ((0, 2), 1), ((0, 3), 2), ((1, 2), 1), ((1, 3), 1), ((2, 3), 1)];
        let mut total = 0;
        for ((lo, hi), want) in expect {
            let found = enumerate_decorations(&t, &[StratumReq::Pair { lo, hi }]).unwrap();
            assert_eq!(found.len(), want, "pair at ({lo},{hi})");
            total += found.len();
        }
        assert_eq!(total, 7);
    }

    #[test]
    fn torus_quad_classes() {
        let t = torus();
        let found =
            enumerate_decorations(&t, &[StratumReq::Quad { ranks: [0, 1, 2, 3], boundary: false }])
                .unwrap();
        assert_eq!(found.len(), 2);
        for dg in &found {
            assert_eq!(
                stratum_cycle(dg, StratumRef::Quad(0)),
                Ok(alloc::vec![0, 2, 1, 3])
            );
        }
    }

    #[test]
    fn pair_with_segment_on_torus() {
        // glued curve spanning the whole graph plus a boundary circle between
        // the saddles: covered meridian, uncovered meridian, parallel
        let t = torus();
        let found = enumerate_decorations(
            &t,
            &[StratumReq::Pair { lo: 0, hi: 3 }, StratumReq::Segment { lo: 1, hi: 2 }],
        )
        .unwrap();
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn disk_quads() {
        let y = ReebGraph::new(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let lambda = ReebGraph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let chain = ReebGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        for g in [&y, &lambda, &chain] {
            let found =
                enumerate_decorations(g, &[StratumReq::Quad { ranks: [0, 1, 2, 3], boundary: true }])
                    .unwrap();
            assert_eq!(found.len(), 1);
        }
    }

    #[test]
    fn coincident_pair_into_one_saddle_is_rejected() {
        // both members end at the merge through the same side edge
        let t = torus();
        let paths = alloc::vec![MonotonePath::new(&[0, 1]), MonotonePath::new(&[0, 1])];
        let mut at = BTreeMap::new();
        at.insert(1, [alloc::vec![0, 1], Vec::new()]);
        at.insert(2, [alloc::vec![0, 1], Vec::new()]);
        let dg = DistinguishingGraph {
            reeb: t,
            decoration: PathDecoration {
                paths,
                pairing: alloc::vec![(0, 1)],
                quads: Vec::new(),
                unpaired: Vec::new(),
            },
            partitions: SaddlePartition { at },
        };
        let viols = validate_distinguishing(&dg);
        assert!(viols
            .iter()
            .any(|v| matches!(v, DistinguishViolation::CoTermination { vertex: 2, .. })));
    }

    #[test]
    fn validator_rejects_structural_garbage() {
        let t = torus();
        let dg = DistinguishingGraph {
            reeb: t,
            decoration: PathDecoration {
                paths: alloc::vec![MonotonePath::new(&[3, 0])],
                pairing: Vec::new(),
                quads: Vec::new(),
                unpaired: alloc::vec![0],
            },
            partitions: SaddlePartition::default(),
        };
        let viols = validate_distinguishing(&dg);
        assert!(viols
            .iter()
            .any(|v| matches!(v, DistinguishViolation::BrokenChain { path: 0, position: 1 })));
    }

    #[test]
    fn order_law_rejects_sorted_cycle() {
        // four arcs tracing the circle in rank order 0,1,2,3 on a chain:
        // 1 and 2 are neither local minima nor maxima of the traversal
        let chain = ReebGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let paths = alloc::vec![
            MonotonePath::new(&[0]),
            MonotonePath::new(&[1]),
            MonotonePath::new(&[2]),
            MonotonePath::new(&[0, 1, 2]),
        ];
        let dg = DistinguishingGraph {
            reeb: chain,
            decoration: PathDecoration {
                paths,
                pairing: Vec::new(),
                quads: alloc::vec![Quad { arcs: [0, 1, 2, 3], boundary: true }],
                unpaired: Vec::new(),
            },
            partitions: SaddlePartition::default(),
        };
        assert_eq!(
            stratum_cycle(&dg, StratumRef::Quad(0)),
            Err(DistinguishError::OrderLaw { cycle: alloc::vec![0, 1, 2, 3] })
        );
        assert!(validate_distinguishing(&dg)
            .iter()
            .any(|v| matches!(v, DistinguishViolation::QuadOrderLaw { quad: 0 })));
        assert_eq!(
            stratum_cycle(&dg, StratumRef::Quad(1)),
            Err(DistinguishError::UnknownStratum)
        );
    }

    #[test]
    fn canonical_matches_direct_equivalence() {
        let t = torus();
        let mut all: Vec<DistinguishingGraph> = Vec::new();
        for (lo, hi) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            all.extend(enumerate_decorations(&t, &[StratumReq::Pair { lo, hi }]).unwrap());
        }
        all.extend(
            enumerate_decorations(&t, &[StratumReq::Quad { ranks: [0, 1, 2, 3], boundary: false }])
                .unwrap(),
        );
        for a in &all {
            assert!(validate_distinguishing(a).is_empty());
            assert!(dg_equivalent(a, a));
            for b in &all {
                assert_eq!(
                    dg_canonical(a) == dg_canonical(b),
                    dg_equivalent(a, b),
                    "canonical keys and direct search disagree"
                );
            }
        }
    }

    #[test]
    fn symmetry_images_stay_valid_and_equivalent() {
        let t = torus();
        let found = enumerate_decorations(
            &t,
            &[StratumReq::Pair { lo: 0, hi: 3 }, StratumReq::Segment { lo: 1, hi: 2 }],
        )
        .unwrap();
        let swap_mids = alloc::vec![0usize, 2, 1, 3];
        for dg in &found {
            let img = apply_symmetry(dg, &swap_mids, &[false], &[0], &[], &[0]);
            assert!(validate_distinguishing(&img).is_empty());
            assert!(dg_equivalent(dg, &img));
            assert_eq!(dg_canonical(dg), dg_canonical(&img));
        }
    }
}
