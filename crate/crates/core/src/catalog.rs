//! Full structures and their classification at the minimal point count.
//!
//! A [`MorseStructure`] ties a stratification to concrete data: where each
//! critical point lives ([`Location`]), and for every piece of the
//! complement a decorated Reeb graph together with the binding between the
//! piece's circles and the curves of the stratification.
//!
//! The classification is produced twice, on purpose. [`build_single_curve_catalog`]
//! and [`build_two_curve_catalog`] spell out every case by hand, the way the
//! case analysis derives them; [`enumerate_structures`] generates candidates
//! blindly (point placements, per-piece graphs, decorations) and filters by
//! [`validate_structure`]. [`cross_validate`] demands that the two agree
//! key for key.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::distinguish::{
    apply_symmetry, enumerate_decorations, parallel_edge_perms, serialize_dg, stratum_cycle,
    validate_distinguishing, DistinguishingGraph, MonotonePath, PathDecoration, PathId, Quad,
    SaddlePartition, StratumRef, StratumReq,
};
use crate::reeb::{betti, ReebGraph, VertexId};
use crate::strata::{
    closure_surface, feasible_stratifications, point_distributions, ColoredTree,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Location {
    /// On the double curve with this block index.
    Curve(usize),
    /// In the open region at this tree vertex.
    Interior(VertexId),
}

/// Which circle of a piece's decoration a stratum is realized by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupRef {
    Pair(usize),
    Quad(usize),
    Segment(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PieceStratum {
    pub block: usize,
    pub group: GroupRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceStructure {
    pub vertex: VertexId,
    /// Global ranks of the piece's points, ascending; position = local vertex.
    pub ranks: Vec<u8>,
    pub dg: DistinguishingGraph,
    pub strata: Vec<PieceStratum>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseStructure {
    pub stratification: ColoredTree,
    /// `locations[r]` is where the critical point of rank `r` sits.
    pub locations: Vec<Location>,
    /// One per tree vertex, in vertex order.
    pub pieces: Vec<PieceStructure>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub structure: MorseStructure,
    pub key: String,
    pub case_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    BadLocation { rank: usize },
    CurvePointCount { curve: usize, points: usize },
    PieceOrder,
    RankMismatch { vertex: VertexId },
    InvalidPiece { vertex: VertexId, violations: usize },
    GenusMismatch { vertex: VertexId },
    StrataBinding { vertex: VertexId },
    KindMismatch { vertex: VertexId, block: usize },
    EndpointMismatch { vertex: VertexId, block: usize },
    /// Interior critical points cannot be regular fold markers.
    InteriorDegree { vertex: VertexId, rank: u8 },
    /// On a planar piece a two-point boundary circle cannot end at a saddle:
    /// the level arc through the fold would have nowhere to continue.
    SegmentAtSaddle { vertex: VertexId, block: usize },
    /// Arcs of a boundary circle cover each edge 0 or 2 times (the circle's
    /// collar pairs them off level by level).
    BoundaryQuadEdge { vertex: VertexId, block: usize },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StructureViolation::*;
        match self {
            BadLocation { rank } => write!(f, "rank {rank} has an out-of-range location"),
            CurvePointCount { curve, points } => {
                write!(f, "curve {curve} carries {points} points, expected 2 or 4")
            }
            PieceOrder => write!(f, "pieces are not one-per-vertex in vertex order"),
            RankMismatch { vertex } => {
                write!(f, "piece {vertex} ranks disagree with the point locations")
            }
            InvalidPiece { vertex, violations } => {
                write!(f, "piece {vertex} decoration has {violations} violation(s)")
            }
            GenusMismatch { vertex } => {
                write!(f, "piece {vertex} graph cycles disagree with the closure genus")
            }
            StrataBinding { vertex } => {
                write!(f, "piece {vertex} strata do not bind blocks to circles bijectively")
            }
            KindMismatch { vertex, block } => {
                write!(f, "piece {vertex} binds block {block} to the wrong circle kind")
            }
            EndpointMismatch { vertex, block } => {
                write!(f, "piece {vertex} circle for block {block} misses its points")
            }
            InteriorDegree { vertex, rank } => {
                write!(f, "interior point {rank} on piece {vertex} is a fold marker")
            }
            SegmentAtSaddle { vertex, block } => {
                write!(f, "planar piece {vertex} ends boundary circle {block} at a saddle")
            }
            BoundaryQuadEdge { vertex, block } => {
                write!(f, "piece {vertex} boundary circle {block} covers an edge oddly")
            }
        }
    }
}

fn curve_rank_table(s: &MorseStructure) -> Vec<Vec<u8>> {
    let mut table = vec![Vec::new(); s.stratification.curve_count()];
    for (rank, loc) in s.locations.iter().enumerate() {
        if let Location::Curve(c) = loc {
            if *c < table.len() {
                table[*c].push(rank as u8);
            }
        }
    }
    table
}

pub fn validate_structure(s: &MorseStructure) -> Vec<StructureViolation> {
    let ct = &s.stratification;
    let t = ct.tree();
    let n = t.vertex_count();
    let mut out = Vec::new();

    for (rank, loc) in s.locations.iter().enumerate() {
        let ok = match loc {
            Location::Curve(c) => *c < ct.curve_count(),
            Location::Interior(v) => (*v as usize) < n,
        };
        if !ok {
            out.push(StructureViolation::BadLocation { rank });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let curve_ranks = curve_rank_table(s);
    for (c, pts) in curve_ranks.iter().enumerate() {
        if pts.len() != 2 && pts.len() != 4 {
            out.push(StructureViolation::CurvePointCount { curve: c, points: pts.len() });
        }
    }
    if s.pieces.len() != n || s.pieces.iter().enumerate().any(|(i, p)| p.vertex as usize != i) {
        out.push(StructureViolation::PieceOrder);
        return out;
    }

    for piece in &s.pieces {
        let v = piece.vertex;
        let mut expected: BTreeSet<u8> = s
            .locations
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Location::Interior(v))
            .map(|(r, _)| r as u8)
            .collect();
        let blocks = ct.incident_blocks_at(v);
        for &b in &blocks {
            expected.extend(curve_ranks[b].iter().copied());
        }
        let expected: Vec<u8> = expected.into_iter().collect();
        if piece.ranks != expected || piece.dg.reeb.vertex_count() != piece.ranks.len() {
            out.push(StructureViolation::RankMismatch { vertex: v });
            continue;
        }
        let dg_viols = validate_distinguishing(&piece.dg);
        if !dg_viols.is_empty() {
            out.push(StructureViolation::InvalidPiece { vertex: v, violations: dg_viols.len() });
            continue;
        }
        let surface = closure_surface(ct, v).expect("piece vertices are in range");
        if betti(&piece.dg.reeb) != Ok(surface.genus) {
            out.push(StructureViolation::GenusMismatch { vertex: v });
        }

        // block <-> circle binding must be a bijection of the right arity
        let d = &piece.dg.decoration;
        let group_total = d.pairing.len() + d.quads.len() + d.unpaired.len();
        let mut bound_blocks: Vec<usize> = piece.strata.iter().map(|st| st.block).collect();
        bound_blocks.sort_unstable();
        let mut bound_groups: Vec<GroupRef> = piece.strata.iter().map(|st| st.group).collect();
        bound_groups.sort_unstable();
        bound_groups.dedup();
        let in_range = piece.strata.iter().all(|st| match st.group {
            GroupRef::Pair(i) => i < d.pairing.len(),
            GroupRef::Quad(i) => i < d.quads.len(),
            GroupRef::Segment(i) => i < d.unpaired.len(),
        });
        if bound_blocks != blocks || bound_groups.len() != piece.strata.len()
            || piece.strata.len() != group_total || !in_range
        {
            out.push(StructureViolation::StrataBinding { vertex: v });
            continue;
        }

        let glued = ct.glued_blocks_at(v);
        for st in &piece.strata {
            let pts = &curve_ranks[st.block];
            let is_glued = glued.contains(&st.block);
            let (kind_ok, sref) = match st.group {
                GroupRef::Pair(i) => (is_glued && pts.len() == 2, StratumRef::Pair(i)),
                GroupRef::Segment(i) => (!is_glued && pts.len() == 2, StratumRef::Segment(i)),
                GroupRef::Quad(i) => (
                    pts.len() == 4
                        && d.quads[i].boundary == !is_glued,
                    StratumRef::Quad(i),
                ),
            };
            if !kind_ok {
                out.push(StructureViolation::KindMismatch { vertex: v, block: st.block });
                continue;
            }
            match stratum_cycle(&piece.dg, sref) {
                Ok(cycle) => {
                    let mut global: Vec<u8> =
                        cycle.iter().map(|&l| piece.ranks[l as usize]).collect();
                    global.sort_unstable();
                    if global != *pts {
                        out.push(StructureViolation::EndpointMismatch {
                            vertex: v,
                            block: st.block,
                        });
                    }
                }
                Err(_) => out.push(StructureViolation::EndpointMismatch {
                    vertex: v,
                    block: st.block,
                }),
            }
        }

        for (local, &rank) in piece.ranks.iter().enumerate() {
            if let Location::Interior(_) = s.locations[rank as usize] {
                let (i, o) = piece.dg.reeb.degree(local as u8);
                if i + o == 2 {
                    out.push(StructureViolation::InteriorDegree { vertex: v, rank });
                }
            }
        }
        if surface.genus == 0 {
            for st in &piece.strata {
                let GroupRef::Segment(i) = st.group else { continue };
                let p = &d.paths[d.unpaired[i]];
                for end in [p.start(&piece.dg.reeb), p.end(&piece.dg.reeb)] {
                    let (a, b) = piece.dg.reeb.degree(end);
                    if a + b == 3 {
                        out.push(StructureViolation::SegmentAtSaddle {
                            vertex: v,
                            block: st.block,
                        });
                    }
                }
            }
        }
        for st in &piece.strata {
            let GroupRef::Quad(i) = st.group else { continue };
            if !d.quads[i].boundary {
                continue;
            }
            for e in 0..piece.dg.reeb.edge_count() {
                let c = d.quads[i]
                    .arcs
                    .iter()
                    .filter(|&&a| d.paths[a].edges().contains(&e))
                    .count();
                if c != 0 && c != 2 {
                    out.push(StructureViolation::BoundaryQuadEdge { vertex: v, block: st.block });
                    break;
                }
            }
        }
    }
    out
}

/// Serialization of one piece with its circles reordered to follow the
/// (relabelled) block order, minimized over the decoration symmetries that
/// fix the binding: parallel-edge shuffles and pair-internal swaps.
fn piece_serial(piece: &PieceStructure, block_map: &[usize]) -> String {
    let d = &piece.dg.decoration;
    let (np, nq, ns) = (d.pairing.len(), d.quads.len(), d.unpaired.len());
    let mut order: Vec<(usize, GroupRef)> = piece
        .strata
        .iter()
        .map(|st| (block_map[st.block], st.group))
        .collect();
    order.sort_unstable_by_key(|&(b, _)| b);
    let mut pair_perm = Vec::new();
    let mut quad_perm = Vec::new();
    let mut seg_perm = Vec::new();
    let mut kinds = Vec::new();
    for &(nb, g) in &order {
        match g {
            GroupRef::Pair(i) => {
                kinds.push(format!("b{nb}:P"));
                pair_perm.push(i);
            }
            GroupRef::Quad(i) => {
                kinds.push(format!("b{nb}:Q"));
                quad_perm.push(i);
            }
            GroupRef::Segment(i) => {
                kinds.push(format!("b{nb}:S"));
                seg_perm.push(i);
            }
        }
    }
    if pair_perm.len() != np || quad_perm.len() != nq || seg_perm.len() != ns {
        // not a bijective binding; serialize as-is so validation can report it
        pair_perm = (0..np).collect();
        quad_perm = (0..nq).collect();
        seg_perm = (0..ns).collect();
    }
    let mut best: Option<String> = None;
    for ep in parallel_edge_perms(&piece.dg.reeb) {
        for mask in 0..(1u32 << np) {
            let swaps: Vec<bool> = (0..np).map(|k| mask >> k & 1 == 1).collect();
            let img = apply_symmetry(&piece.dg, &ep, &swaps, &pair_perm, &quad_perm, &seg_perm);
            let ser = serialize_dg(&img);
            if best.as_ref().is_none_or(|b| ser < *b) {
                best = Some(ser);
            }
        }
    }
    let ranks: Vec<String> = piece.ranks.iter().map(|r| format!("{r}")).collect();
    format!(
        "r[{}];s[{}];{}",
        ranks.join(","),
        kinds.join(","),
        best.expect("identity symmetry")
    )
}

fn serialize_under(s: &MorseStructure, vertex_map: &[u8], block_map: &[usize]) -> String {
    let locs: Vec<String> = s
        .locations
        .iter()
        .map(|l| match l {
            Location::Curve(c) => format!("c{}", block_map[*c]),
            Location::Interior(v) => format!("i{}", vertex_map[*v as usize]),
        })
        .collect();
    let mut serials = vec![String::new(); s.pieces.len()];
    for p in &s.pieces {
        serials[vertex_map[p.vertex as usize] as usize] = piece_serial(p, block_map);
    }
    format!(
        "{};L[{}];{}",
        s.stratification.canonical_key(),
        locs.join(","),
        serials.join(";")
    )
}

/// Key equal iff the structures differ by renaming tree vertices and by
/// decoration symmetries of the pieces. Serialized coordinates live on the
/// canonical labelling of the stratification, so the key survives arbitrary
/// relabelling, not just symmetries of the current one.
pub fn structure_canonical(s: &MorseStructure) -> String {
    s.stratification
        .canonical_isomorphisms()
        .iter()
        .map(|(vmap, bmap)| serialize_under(s, vmap, bmap))
        .min()
        .expect("at least one isomorphism")
}

/// Connected graphs a piece with these points can have: one source, one
/// sink, interior vertices are saddles, extrema, or — where `marker_ok`
/// allows — fold markers. Parallel multiplicity above 2 always breaks the
/// degree bounds, so it is not generated.
fn piece_graphs(points: usize, genus: u32, marker_ok: &[bool]) -> Vec<ReebGraph> {
    if points < 2 {
        return Vec::new();
    }
    let target = points - 1 + genus as usize;
    let slots: Vec<(u8, u8)> = (0..points as u8)
        .flat_map(|i| ((i + 1)..points as u8).map(move |j| (i, j)))
        .collect();
    fn rec(
        slots: &[(u8, u8)],
        i: usize,
        remaining: usize,
        edges: &mut Vec<(u8, u8)>,
        points: usize,
        marker_ok: &[bool],
        out: &mut Vec<ReebGraph>,
    ) {
        if i == slots.len() {
            if remaining != 0 {
                return;
            }
            let g = ReebGraph::new(points as u8, edges).expect("slots are in range");
            if !g.is_connected() {
                return;
            }
            for v in 0..points as u8 {
                let (inn, outn) = g.degree(v);
                let ok = if v == 0 {
                    (inn, outn) == (0, 1)
                } else if v as usize == points - 1 {
                    (inn, outn) == (1, 0)
                } else {
                    matches!((inn, outn), (0, 1) | (1, 0) | (1, 2) | (2, 1))
                        || ((inn, outn) == (1, 1) && marker_ok[v as usize])
                };
                if !ok {
                    return;
                }
            }
            out.push(g);
            return;
        }
        for m in 0..=2usize.min(remaining) {
            for _ in 0..m {
                edges.push(slots[i]);
            }
            rec(slots, i + 1, remaining - m, edges, points, marker_ok, out);
            for _ in 0..m {
                edges.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&slots, 0, target, &mut Vec::new(), points, marker_ok, &mut out);
    out
}

/// Piece-level admissibility beyond decoration validity; also enforced by
/// [`validate_structure`], duplicated here to prune the search early.
fn piece_admissible(dg: &DistinguishingGraph, genus: u32) -> bool {
    let r = &dg.reeb;
    let d = &dg.decoration;
    if genus == 0 {
        for &sp in &d.unpaired {
            let p = &d.paths[sp];
            for v in [p.start(r), p.end(r)] {
                let (a, b) = r.degree(v);
                if a + b == 3 {
                    return false;
                }
            }
        }
    }
    for q in &d.quads {
        if !q.boundary {
            continue;
        }
        for e in 0..r.edge_count() {
            let c = q.arcs.iter().filter(|&&a| d.paths[a].edges().contains(&e)).count();
            if c != 0 && c != 2 {
                return false;
            }
        }
    }
    true
}

fn rank_assignments(total: usize, slots: &[(Location, u32)]) -> Vec<Vec<Location>> {
    fn rec(
        slots: &mut Vec<(Location, u32)>,
        acc: &mut Vec<Location>,
        total: usize,
        out: &mut Vec<Vec<Location>>,
    ) {
        if acc.len() == total {
            out.push(acc.clone());
            return;
        }
        for i in 0..slots.len() {
            if slots[i].1 == 0 {
                continue;
            }
            slots[i].1 -= 1;
            acc.push(slots[i].0);
            rec(slots, acc, total, out);
            acc.pop();
            slots[i].1 += 1;
        }
    }
    let mut slots = slots.to_vec();
    let mut out = Vec::new();
    rec(&mut slots, &mut Vec::new(), total, &mut out);
    out
}

fn piece_options(
    ct: &ColoredTree,
    v: VertexId,
    locations: &[Location],
    curve_ranks: &[Vec<u8>],
) -> Vec<PieceStructure> {
    let mut point_set: BTreeSet<u8> = locations
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == Location::Interior(v))
        .map(|(r, _)| r as u8)
        .collect();
    let blocks = ct.incident_blocks_at(v);
    for &b in &blocks {
        point_set.extend(curve_ranks[b].iter().copied());
    }
    let ranks: Vec<u8> = point_set.into_iter().collect();
    let local = |r: u8| -> u8 { ranks.iter().position(|&x| x == r).unwrap() as u8 };
    let surface = closure_surface(ct, v).expect("vertex in range");
    let glued = ct.glued_blocks_at(v);
    let marker_ok: Vec<bool> = ranks
        .iter()
        .map(|&r| matches!(locations[r as usize], Location::Curve(_)))
        .collect();

    let mut reqs = Vec::new();
    let mut strata = Vec::new();
    let (mut np, mut nq, mut ns) = (0, 0, 0);
    for &b in &blocks {
        let pts = &curve_ranks[b];
        let is_glued = glued.contains(&b);
        match (pts.len(), is_glued) {
            (2, true) => {
                reqs.push(StratumReq::Pair { lo: local(pts[0]), hi: local(pts[1]) });
                strata.push(PieceStratum { block: b, group: GroupRef::Pair(np) });
                np += 1;
            }
            (2, false) => {
                reqs.push(StratumReq::Segment { lo: local(pts[0]), hi: local(pts[1]) });
                strata.push(PieceStratum { block: b, group: GroupRef::Segment(ns) });
                ns += 1;
            }
            (4, _) => {
                reqs.push(StratumReq::Quad {
                    ranks: [local(pts[0]), local(pts[1]), local(pts[2]), local(pts[3])],
                    boundary: !is_glued,
                });
                strata.push(PieceStratum { block: b, group: GroupRef::Quad(nq) });
                nq += 1;
            }
            _ => return Vec::new(),
        }
    }

    let mut out = Vec::new();
    for g in piece_graphs(ranks.len(), surface.genus, &marker_ok) {
        let Ok(dgs) = enumerate_decorations(&g, &reqs) else { continue };
        for dg in dgs {
            if !piece_admissible(&dg, surface.genus) {
                continue;
            }
            out.push(PieceStructure {
                vertex: v,
                ranks: ranks.clone(),
                dg,
                strata: strata.clone(),
            });
        }
    }
    out
}

/// Exhaustive generate-and-filter search for structures with exactly
/// `budget` critical points on the given stratification. One representative
/// per equivalence class, sorted by canonical key.
pub fn enumerate_structures(ct: &ColoredTree, budget: u32) -> Vec<MorseStructure> {
    let n = ct.tree().vertex_count();
    let mut found: BTreeMap<String, MorseStructure> = BTreeMap::new();
    for dist in point_distributions(ct, budget) {
        let mut slots: Vec<(Location, u32)> = Vec::new();
        for (c, &count) in dist.per_curve.iter().enumerate() {
            if count > 0 {
                slots.push((Location::Curve(c), count));
            }
        }
        for (v, &count) in dist.per_vertex_interior.iter().enumerate() {
            if count > 0 {
                slots.push((Location::Interior(v as u8), count));
            }
        }
        'assignment: for locations in rank_assignments(budget as usize, &slots) {
            let mut curve_ranks = vec![Vec::new(); ct.curve_count()];
            for (rank, loc) in locations.iter().enumerate() {
                if let Location::Curve(c) = loc {
                    curve_ranks[*c].push(rank as u8);
                }
            }
            let mut options: Vec<Vec<PieceStructure>> = Vec::with_capacity(n);
            for v in 0..n as u8 {
                let opts = piece_options(ct, v, &locations, &curve_ranks);
                if opts.is_empty() {
                    continue 'assignment;
                }
                options.push(opts);
            }
            let mut idx = vec![0usize; n];
            loop {
                let pieces: Vec<PieceStructure> =
                    (0..n).map(|v| options[v][idx[v]].clone()).collect();
                let s = MorseStructure {
                    stratification: ct.clone(),
                    locations: locations.clone(),
                    pieces,
                };
                if validate_structure(&s).is_empty() {
                    found.entry(structure_canonical(&s)).or_insert(s);
                }
                let mut i = 0;
                loop {
                    if i == n {
                        continue 'assignment;
                    }
                    idx[i] += 1;
                    if idx[i] < options[i].len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
            }
        }
    }
    found.into_values().collect()
}

// ---------------------------------------------------------------------
// hand-built tables

fn torus_graph() -> ReebGraph {
    ReebGraph::new(4, &[(0, 1), (1, 2), (1, 2), (2, 3)]).expect("static graph")
}

fn chain_graph() -> ReebGraph {
    ReebGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).expect("static graph")
}

fn build_dg(
    r: &ReebGraph,
    paths: &[&[usize]],
    pairs: usize,
    quad_flags: &[bool],
    slots: &[(VertexId, &[PathId], &[PathId])],
) -> DistinguishingGraph {
    let base_q = 2 * pairs;
    let base_s = base_q + 4 * quad_flags.len();
    let decoration = PathDecoration {
        paths: paths.iter().map(|e| MonotonePath::new(e)).collect(),
        pairing: (0..pairs).map(|k| (2 * k, 2 * k + 1)).collect(),
        quads: quad_flags
            .iter()
            .enumerate()
            .map(|(j, &boundary)| Quad {
                arcs: [base_q + 4 * j, base_q + 4 * j + 1, base_q + 4 * j + 2, base_q + 4 * j + 3],
                boundary,
            })
            .collect(),
        unpaired: (base_s..paths.len()).collect(),
    };
    let at = slots
        .iter()
        .map(|&(v, a, b)| (v, [a.to_vec(), b.to_vec()]))
        .collect();
    DistinguishingGraph {
        reeb: r.clone(),
        decoration,
        partitions: SaddlePartition { at },
    }
}

fn disk_piece(vertex: VertexId, block: usize, ranks: (u8, u8)) -> PieceStructure {
    let r = ReebGraph::new(2, &[(0, 1)]).expect("static graph");
    PieceStructure {
        vertex,
        ranks: vec![ranks.0, ranks.1],
        dg: build_dg(&r, &[&[0]], 0, &[], &[]),
        strata: vec![PieceStratum { block, group: GroupRef::Segment(0) }],
    }
}

/// Cylinder between two curves seen chain-on-four-points; each boundary
/// circle projects onto the sub-chain between its points.
fn cylinder_piece(vertex: VertexId, strata: [(usize, (u8, u8)); 2]) -> PieceStructure {
    let mut st = strata;
    st.sort_unstable_by_key(|s| s.0);
    let seg = |lo: u8, hi: u8| -> Vec<usize> { (lo as usize..hi as usize).collect() };
    let p0 = seg(st[0].1 .0, st[0].1 .1);
    let p1 = seg(st[1].1 .0, st[1].1 .1);
    PieceStructure {
        vertex,
        ranks: vec![0, 1, 2, 3],
        dg: build_dg(&chain_graph(), &[&p0, &p1], 0, &[], &[]),
        strata: vec![
            PieceStratum { block: st[0].0, group: GroupRef::Segment(0) },
            PieceStratum { block: st[1].0, group: GroupRef::Segment(1) },
        ],
    }
}

fn y_disk(vertex: VertexId, block: usize) -> PieceStructure {
    let r = ReebGraph::new(4, &[(0, 2), (1, 2), (2, 3)]).expect("static graph");
    PieceStructure {
        vertex,
        ranks: vec![0, 1, 2, 3],
        dg: build_dg(
            &r,
            &[&[0], &[1], &[1, 2], &[0, 2]],
            0,
            &[true],
            &[(2, &[0, 3], &[1, 2])],
        ),
        strata: vec![PieceStratum { block, group: GroupRef::Quad(0) }],
    }
}

fn lambda_disk(vertex: VertexId, block: usize) -> PieceStructure {
    let r = ReebGraph::new(4, &[(0, 1), (1, 2), (1, 3)]).expect("static graph");
    PieceStructure {
        vertex,
        ranks: vec![0, 1, 2, 3],
        dg: build_dg(
            &r,
            &[&[0, 1], &[1], &[2], &[0, 2]],
            0,
            &[true],
            &[(1, &[1, 0], &[2, 3])],
        ),
        strata: vec![PieceStratum { block, group: GroupRef::Quad(0) }],
    }
}

fn torus_quad_dg(skew: bool) -> DistinguishingGraph {
    if skew {
        build_dg(
            &torus_graph(),
            &[&[0, 2], &[1], &[2, 3], &[0, 2, 3]],
            0,
            &[false],
            &[(1, &[1], &[2, 0, 3]), (2, &[1], &[0, 2, 3])],
        )
    } else {
        build_dg(
            &torus_graph(),
            &[&[0, 2], &[1], &[2, 3], &[0, 1, 3]],
            0,
            &[false],
            &[(1, &[1, 3], &[2, 0]), (2, &[1, 3], &[0, 2])],
        )
    }
}

fn single_curve_stratification() -> ColoredTree {
    feasible_stratifications(4)
        .into_iter()
        .find(|ct| ct.curve_count() == 1)
        .expect("the one-curve stratification is feasible at the minimal budget")
}

fn two_curve_stratification(max_degree: usize) -> ColoredTree {
    feasible_stratifications(4)
        .into_iter()
        .find(|ct| {
            ct.curve_count() == 2
                && (0..ct.tree().vertex_count() as u8)
                    .map(|v| ct.tree().degree(v))
                    .max()
                    == Some(max_degree)
        })
        .expect("both two-curve stratifications are feasible at the minimal budget")
}

fn entry(structure: MorseStructure, case_label: String) -> CatalogEntry {
    let key = structure_canonical(&structure);
    CatalogEntry { structure, key, case_label }
}

type SlotSpec = (&'static [PathId], &'static [PathId]);

/// The thirteen structures with one double curve: seven with two points on
/// the curve (the torus piece carries a pair of level paths, the saddles
/// take the remaining ranks) and six with all four points on the curve (a
/// four-arc circle over the torus, and a Y- or lambda-shaped disk on each
/// side).
pub fn build_single_curve_catalog() -> Vec<CatalogEntry> {
    let ct = single_curve_stratification();
    let t = ct.tree();
    let mid = (0..3u8).find(|&v| t.degree(v) == 2).expect("path tree has a middle");
    let leaves: Vec<u8> = (0..3u8).filter(|&v| t.degree(v) == 1).collect();
    let mut entries = Vec::new();

    let pair_cases: [((u8, u8), &str, [&[usize]; 2], SlotSpec, SlotSpec); 7] = [
        ((0, 1), "", [&[0], &[0]], (&[0], &[1]), (&[], &[])),
        ((0, 2), "", [&[0, 1], &[0, 2]], (&[0], &[1]), (&[0], &[1])),
        ((0, 3), "-meridian", [&[0, 1, 3], &[0, 1, 3]], (&[0, 1], &[]), (&[0, 1], &[])),
        ((0, 3), "-parallel", [&[0, 1, 3], &[0, 2, 3]], (&[0], &[1]), (&[0], &[1])),
        ((1, 2), "", [&[1], &[2]], (&[0], &[1]), (&[0], &[1])),
        ((1, 3), "", [&[1, 3], &[2, 3]], (&[0], &[1]), (&[0], &[1])),
        ((2, 3), "", [&[3], &[3]], (&[], &[]), (&[0], &[1])),
    ];
    for ((i, j), suffix, paths, v1, v2) in pair_cases {
        let locations: Vec<Location> = (0..4u8)
            .map(|r| if r == i || r == j { Location::Curve(0) } else { Location::Interior(mid) })
            .collect();
        let dg = build_dg(
            &torus_graph(),
            &[paths[0], paths[1]],
            1,
            &[],
            &[(1, v1.0, v1.1), (2, v2.0, v2.1)],
        );
        let pieces: Vec<PieceStructure> = (0..3u8)
            .map(|v| {
                if v == mid {
                    PieceStructure {
                        vertex: v,
                        ranks: vec![0, 1, 2, 3],
                        dg: dg.clone(),
                        strata: vec![PieceStratum { block: 0, group: GroupRef::Pair(0) }],
                    }
                } else {
                    disk_piece(v, 0, (i, j))
                }
            })
            .collect();
        let structure = MorseStructure { stratification: ct.clone(), locations, pieces };
        entries.push(entry(structure, format!("single-curve/pair-{i}{j}{suffix}")));
    }

    let disk_builders: [(&str, [fn(VertexId, usize) -> PieceStructure; 2]); 3] = [
        ("YY", [y_disk, y_disk]),
        ("Y-lambda", [y_disk, lambda_disk]),
        ("lambda-lambda", [lambda_disk, lambda_disk]),
    ];
    for (shape, skew) in [("balanced", false), ("skew", true)] {
        for (disks, builders) in &disk_builders {
            let pieces: Vec<PieceStructure> = (0..3u8)
                .map(|v| {
                    if v == mid {
                        PieceStructure {
                            vertex: v,
                            ranks: vec![0, 1, 2, 3],
                            dg: torus_quad_dg(skew),
                            strata: vec![PieceStratum { block: 0, group: GroupRef::Quad(0) }],
                        }
                    } else {
                        let which = usize::from(v == leaves[1]);
                        builders[which](v, 0)
                    }
                })
                .collect();
            let structure = MorseStructure {
                stratification: ct.clone(),
                locations: vec![Location::Curve(0); 4],
                pieces,
            };
            entries.push(entry(structure, format!("single-curve/loop-{shape}/disks-{disks}")));
        }
    }
    entries
}

/// The eleven structures with two double curves: eight on the stratification
/// whose central piece is a one-holed torus (glued curve as a pair, boundary
/// curve as a straight segment) and three on the chain of three cylinders
/// (the two curves stacked, alternating, or nested in the value order).
pub fn build_two_curve_catalog() -> Vec<CatalogEntry> {
    let mut entries = spider_entries();
    entries.extend(chain_entries());
    entries
}

fn spider_entries() -> Vec<CatalogEntry> {
    let ct = two_curve_stratification(3);
    let t = ct.tree();
    let n = t.vertex_count() as u8;
    let center = (0..n).find(|&v| t.degree(v) == 3).expect("spider center");
    let mid = (0..n).find(|&v| t.degree(v) == 2).expect("spider middle");
    let x = ct.glued_blocks_at(center)[0];
    let y = 1 - x;
    let leaf_of = |block: usize| -> VertexId {
        (0..n)
            .find(|&v| {
                t.degree(v) == 1
                    && t.edge_index(center.min(v), center.max(v))
                        .is_some_and(|e| ct.block_of_edge(e) == block)
            })
            .expect("each curve owns one leaf at the center")
    };
    let (leaf_x, leaf_y) = (leaf_of(x), leaf_of(y));
    let far = (0..n)
        .find(|&v| t.degree(v) == 1 && t.edge_index(mid.min(v), mid.max(v)).is_some())
        .expect("spider far leaf");

    let cases: [((u8, u8), &str, [&[usize]; 3], SlotSpec, SlotSpec); 8] = [
        ((0, 1), "", [&[0], &[0], &[3]], (&[0], &[1]), (&[2], &[])),
        ((0, 2), "", [&[0, 1], &[0, 2], &[1, 3]], (&[2, 0], &[1]), (&[0, 2], &[1])),
        (
            (0, 3),
            "-meridian-covered",
            [&[0, 1, 3], &[0, 1, 3], &[1]],
            (&[2, 0, 1], &[]),
            (&[2, 0, 1], &[]),
        ),
        (
            (0, 3),
            "-meridian-uncovered",
            [&[0, 1, 3], &[0, 1, 3], &[2]],
            (&[0, 1], &[2]),
            (&[0, 1], &[2]),
        ),
        (
            (0, 3),
            "-parallel",
            [&[0, 1, 3], &[0, 2, 3], &[1]],
            (&[2, 0], &[1]),
            (&[2, 0], &[1]),
        ),
        ((1, 2), "", [&[1], &[2], &[0, 1, 3]], (&[0, 2], &[1]), (&[0, 2], &[1])),
        ((1, 3), "", [&[1, 3], &[2, 3], &[0, 1]], (&[0, 2], &[1]), (&[2, 0], &[1])),
        ((2, 3), "", [&[3], &[3], &[0]], (&[2], &[]), (&[0], &[1])),
    ];
    let mut entries = Vec::new();
    for ((i, j), suffix, paths, v1, v2) in cases {
        let rest: Vec<u8> = (0..4u8).filter(|r| *r != i && *r != j).collect();
        let (k, l) = (rest[0], rest[1]);
        let locations: Vec<Location> = (0..4u8)
            .map(|r| if r == i || r == j { Location::Curve(x) } else { Location::Curve(y) })
            .collect();
        let center_dg = build_dg(
            &torus_graph(),
            &[paths[0], paths[1], paths[2]],
            1,
            &[],
            &[(1, v1.0, v1.1), (2, v2.0, v2.1)],
        );
        let mut center_strata = vec![
            PieceStratum { block: x, group: GroupRef::Pair(0) },
            PieceStratum { block: y, group: GroupRef::Segment(0) },
        ];
        center_strata.sort_unstable_by_key(|st| st.block);
        let pieces: Vec<PieceStructure> = (0..n)
            .map(|v| {
                if v == center {
                    PieceStructure {
                        vertex: v,
                        ranks: vec![0, 1, 2, 3],
                        dg: center_dg.clone(),
                        strata: center_strata.clone(),
                    }
                } else if v == mid {
                    cylinder_piece(v, [(x, (i, j)), (y, (k, l))])
                } else if v == leaf_x {
                    disk_piece(v, x, (i, j))
                } else if v == leaf_y {
                    disk_piece(v, y, (k, l))
                } else {
                    debug_assert_eq!(v, far);
                    disk_piece(v, y, (k, l))
                }
            })
            .collect();
        let structure = MorseStructure { stratification: ct.clone(), locations, pieces };
        entries.push(entry(structure, format!("two-curve/spider/pair-{i}{j}{suffix}")));
    }
    entries
}

fn chain_entries() -> Vec<CatalogEntry> {
    let ct = two_curve_stratification(2);
    let t = ct.tree();
    let n = t.vertex_count() as u8;
    let leaves: Vec<u8> = (0..n).filter(|&v| t.degree(v) == 1).collect();
    let block_at = |v: VertexId| ct.block_of_edge(t.incident(v)[0]);
    let (a, b) = (block_at(leaves[0]), block_at(leaves[1]));
    debug_assert_ne!(a, b, "the chain matching separates the end curves");

    let cases: [(&str, (u8, u8), (u8, u8)); 3] = [
        ("stacked", (0, 1), (2, 3)),
        ("alternating", (0, 2), (1, 3)),
        ("nested", (0, 3), (1, 2)),
    ];
    let mut entries = Vec::new();
    for (name, ra, rb) in cases {
        let ranks_of = |block: usize| if block == a { ra } else { rb };
        let locations: Vec<Location> = (0..4u8)
            .map(|r| {
                if r == ra.0 || r == ra.1 {
                    Location::Curve(a)
                } else {
                    Location::Curve(b)
                }
            })
            .collect();
        let pieces: Vec<PieceStructure> = (0..n)
            .map(|v| {
                if t.degree(v) == 1 {
                    let blk = block_at(v);
                    disk_piece(v, blk, ranks_of(blk))
                } else {
                    let inc = t.incident(v);
                    let (b0, b1) = (ct.block_of_edge(inc[0]), ct.block_of_edge(inc[1]));
                    cylinder_piece(v, [(b0, ranks_of(b0)), (b1, ranks_of(b1))])
                }
            })
            .collect();
        let structure = MorseStructure { stratification: ct.clone(), locations, pieces };
        entries.push(entry(structure, format!("two-curve/chain/{name}")));
    }
    entries
}

// ---------------------------------------------------------------------
// cross-checking

pub const MERIDIAN_NOTE: &str = "note: the detailed two-curve table lists 8 classes over the \
one-holed-torus stratification; summaries that merge the covered and uncovered meridian cases \
report 7";

#[derive(Debug, Clone)]
pub struct StratReport {
    pub stratification: String,
    pub curves: usize,
    pub detailed: Vec<String>,
    pub searched: Vec<String>,
    pub missing_in_search: Vec<String>,
    pub unexpected_in_search: Vec<String>,
}

impl StratReport {
    pub fn matches(&self) -> bool {
        self.missing_in_search.is_empty() && self.unexpected_in_search.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct CrossReport {
    pub budget: u32,
    pub reports: Vec<StratReport>,
    pub pass: bool,
    pub note: &'static str,
}

/// Two-sided set difference of canonical keys: (in `detailed` only, in
/// `searched` only).
pub fn diff_keys(detailed: &[String], searched: &[String]) -> (Vec<String>, Vec<String>) {
    let d: BTreeSet<&String> = detailed.iter().collect();
    let s: BTreeSet<&String> = searched.iter().collect();
    (
        d.difference(&s).map(|k| (*k).clone()).collect(),
        s.difference(&d).map(|k| (*k).clone()).collect(),
    )
}

/// Compare the hand-built tables against the blind search on every feasible
/// stratification, key for key.
pub fn cross_validate(budget: u32) -> CrossReport {
    let singles = build_single_curve_catalog();
    let twos = build_two_curve_catalog();
    let mut reports = Vec::new();
    let mut pass = true;
    for ct in feasible_stratifications(budget) {
        let key = ct.canonical_key();
        let mut detailed: Vec<String> = singles
            .iter()
            .chain(twos.iter())
            .filter(|e| {
                e.structure.locations.len() as u32 == budget
                    && e.structure.stratification.canonical_key() == key
            })
            .map(|e| e.key.clone())
            .collect();
        detailed.sort();
        let searched: Vec<String> = enumerate_structures(&ct, budget)
            .iter()
            .map(structure_canonical)
            .collect();
        let (missing_in_search, unexpected_in_search) = diff_keys(&detailed, &searched);
        pass &= missing_in_search.is_empty() && unexpected_in_search.is_empty();
        reports.push(StratReport {
            stratification: key,
            curves: ct.curve_count(),
            detailed,
            searched,
            missing_in_search,
            unexpected_in_search,
        });
    }
    CrossReport { budget, reports, pass, note: MERIDIAN_NOTE }
}
