//! Versioned JSON documents for catalogs. Input parsing is strict: unknown
//! fields are rejected so fixture drift fails loudly, and a reconstructed
//! structure must reproduce its stored canonical key.

use immersed_morse::catalog::{GroupRef, Location, MorseStructure, PieceStratum, PieceStructure};
use immersed_morse::distinguish::{
    DistinguishingGraph, MonotonePath, PathDecoration, Quad, SaddlePartition,
};
use immersed_morse::reeb::ReebGraph;
use immersed_morse::strata::{closure_surface, min_critical_points, tree_canonical, ColoredTree, Tree};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDoc {
    pub version: String,
    pub budget: u32,
    pub double_curves: usize,
    pub verified: bool,
    pub stratifications: Vec<StratificationDoc>,
    pub entries: Vec<EntryDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratificationDoc {
    pub tree_key: String,
    pub pairing: Vec<[usize; 2]>,
    pub pieces: Vec<SurfaceDoc>,
    pub min_critical_points: u32,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub vertex: u8,
    pub genus: u32,
    pub boundaries: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub case_label: String,
    pub key: String,
    pub structure: StructureDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub tree_vertices: u8,
    pub tree_edges: Vec<[u8; 2]>,
    pub pairing: Vec<[usize; 2]>,
    /// "curve:N" or "interior:V", indexed by global rank.
    pub locations: Vec<String>,
    pub pieces: Vec<PieceDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub vertex: u8,
    pub ranks: Vec<u8>,
    pub graph: Vec<[u8; 2]>,
    pub paths: Vec<Vec<usize>>,
    pub pairs: Vec<[usize; 2]>,
    pub quads: Vec<QuadDoc>,
    pub segments: Vec<usize>,
    pub slots: Vec<SlotDoc>,
    pub strata: Vec<StratumDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadDoc {
    pub arcs: [usize; 4],
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotDoc {
    pub vertex: u8,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDoc {
    pub block: usize,
    /// "pair:N", "quad:N", or "segment:N".
    pub circle: String,
}

pub fn stratification_doc(ct: &ColoredTree, budget: u32, feasible: bool) -> StratificationDoc {
    StratificationDoc {
        tree_key: tree_canonical(ct.tree()),
        pairing: ct.blocks().iter().map(|&(a, b)| [a, b]).collect(),
        pieces: (0..ct.tree().vertex_count() as u8)
            .map(|v| {
                let s = closure_surface(ct, v).expect("vertex in range");
                SurfaceDoc { vertex: v, genus: s.genus, boundaries: s.boundaries }
            })
            .collect(),
        min_critical_points: min_critical_points(ct),
        feasible: feasible && budget >= min_critical_points(ct),
    }
}

fn location_str(l: &Location) -> String {
    match l {
        Location::Curve(c) => format!("curve:{c}"),
        Location::Interior(v) => format!("interior:{v}"),
    }
}

fn parse_location(s: &str) -> Result<Location, String> {
    let (kind, num) = s.split_once(':').ok_or_else(|| format!("bad location {s:?}"))?;
    match kind {
        "curve" => Ok(Location::Curve(num.parse().map_err(|e| format!("{e}"))?)),
        "interior" => Ok(Location::Interior(num.parse().map_err(|e| format!("{e}"))?)),
        _ => Err(format!("bad location kind {kind:?}")),
    }
}

fn circle_str(g: &GroupRef) -> String {
    match g {
        GroupRef::Pair(i) => format!("pair:{i}"),
        GroupRef::Quad(i) => format!("quad:{i}"),
        GroupRef::Segment(i) => format!("segment:{i}"),
    }
}

fn parse_circle(s: &str) -> Result<GroupRef, String> {
    let (kind, num) = s.split_once(':').ok_or_else(|| format!("bad circle {s:?}"))?;
    let i: usize = num.parse().map_err(|e| format!("{e}"))?;
    match kind {
        "pair" => Ok(GroupRef::Pair(i)),
        "quad" => Ok(GroupRef::Quad(i)),
        "segment" => Ok(GroupRef::Segment(i)),
        _ => Err(format!("bad circle kind {kind:?}")),
    }
}

pub fn structure_doc(s: &MorseStructure) -> StructureDoc {
    StructureDoc {
        tree_vertices: s.stratification.tree().vertex_count() as u8,
        tree_edges: s.stratification.tree().edges().iter().map(|&(a, b)| [a, b]).collect(),
        pairing: s.stratification.blocks().iter().map(|&(a, b)| [a, b]).collect(),
        locations: s.locations.iter().map(location_str).collect(),
        pieces: s.pieces.iter().map(piece_doc).collect(),
    }
}

fn piece_doc(p: &PieceStructure) -> PieceDoc {
    let d = &p.dg.decoration;
    PieceDoc {
        vertex: p.vertex,
        ranks: p.ranks.clone(),
        graph: p.dg.reeb.edges().iter().map(|&(a, b)| [a, b]).collect(),
        paths: d.paths.iter().map(|m| m.edges().to_vec()).collect(),
        pairs: d.pairing.iter().map(|&(a, b)| [a, b]).collect(),
        quads: d.quads.iter().map(|q| QuadDoc { arcs: q.arcs, boundary: q.boundary }).collect(),
        segments: d.unpaired.clone(),
        slots: p
            .dg
            .partitions
            .at
            .iter()
            .map(|(&v, slots)| SlotDoc {
                vertex: v,
                first: slots[0].clone(),
                second: slots[1].clone(),
            })
            .collect(),
        strata: p
            .strata
            .iter()
            .map(|st| StratumDoc { block: st.block, circle: circle_str(&st.group) })
            .collect(),
    }
}

pub fn structure_from_doc(d: &StructureDoc) -> Result<MorseStructure, String> {
    let edges: Vec<(u8, u8)> = d.tree_edges.iter().map(|&[a, b]| (a, b)).collect();
    let tree = Tree::new(d.tree_vertices, &edges).map_err(|e| format!("{e:?}"))?;
    let blocks: Vec<(usize, usize)> = d.pairing.iter().map(|&[a, b]| (a, b)).collect();
    let ct = ColoredTree::new(tree, &blocks).map_err(|e| format!("{e:?}"))?;
    let locations = d
        .locations
        .iter()
        .map(|s| parse_location(s))
        .collect::<Result<Vec<_>, _>>()?;
    let pieces = d.pieces.iter().map(piece_from_doc).collect::<Result<Vec<_>, _>>()?;
    Ok(MorseStructure { stratification: ct, locations, pieces })
}

fn piece_from_doc(p: &PieceDoc) -> Result<PieceStructure, String> {
    let edges: Vec<(u8, u8)> = p.graph.iter().map(|&[a, b]| (a, b)).collect();
    let reeb = ReebGraph::new(p.ranks.len() as u8, &edges).map_err(|e| format!("{e}"))?;
    let decoration = PathDecoration {
        paths: p.paths.iter().map(|e| MonotonePath::new(e)).collect(),
        pairing: p.pairs.iter().map(|&[a, b]| (a, b)).collect(),
        quads: p.quads.iter().map(|q| Quad { arcs: q.arcs, boundary: q.boundary }).collect(),
        unpaired: p.segments.clone(),
    };
    let at = p
        .slots
        .iter()
        .map(|s| (s.vertex, [s.first.clone(), s.second.clone()]))
        .collect();
    let strata = p
        .strata
        .iter()
        .map(|st| Ok(PieceStratum { block: st.block, group: parse_circle(&st.circle)? }))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(PieceStructure {
        vertex: p.vertex,
        ranks: p.ranks.clone(),
        dg: DistinguishingGraph { reeb, decoration, partitions: SaddlePartition { at } },
        strata,
    })
}
