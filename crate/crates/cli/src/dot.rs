//! DOT emitters. Output is assembled in a fixed order from already-sorted
//! data, so rendering the same object twice yields identical bytes.

use immersed_morse::catalog::{GroupRef, Location, MorseStructure};
use immersed_morse::reeb::ReebGraph;
use immersed_morse::strata::{ColoredTree, Tree};
use std::fmt::Write;

pub fn tree_dot(t: &Tree, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph stratification {{");
    let _ = writeln!(out, "  label=\"{name}\";");
    let _ = writeln!(out, "  node [shape=circle fontsize=10];");
    for v in 0..t.vertex_count() {
        let _ = writeln!(out, "  v{v};");
    }
    for &(a, b) in t.edges() {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}

pub fn colored_tree_dot(ct: &ColoredTree, name: &str) -> String {
    let t = ct.tree();
    let mut out = String::new();
    let _ = writeln!(out, "graph stratification {{");
    let _ = writeln!(out, "  label=\"{name}\";");
    let _ = writeln!(out, "  node [shape=circle fontsize=10];");
    for v in 0..t.vertex_count() {
        let _ = writeln!(out, "  v{v};");
    }
    for (e, &(a, b)) in t.edges().iter().enumerate() {
        let c = ct.block_of_edge(e);
        let _ = writeln!(out, "  v{a} -- v{b} [label=\"c{c}\"];");
    }
    out.push_str("}\n");
    out
}

/// Height increases upward: sources at the bottom, sinks at the top.
pub fn reeb_dot(r: &ReebGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph levels {{");
    let _ = writeln!(out, "  label=\"{name}\";");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle fontsize=10];");
    for v in 0..r.vertex_count() {
        let _ = writeln!(out, "  v{v} [label=\"{v}\"];");
    }
    for &(s, t) in r.edges() {
        let _ = writeln!(out, "  v{s} -> v{t};");
    }
    out.push_str("}\n");
    out
}

fn location_label(l: &Location) -> String {
    match l {
        Location::Curve(c) => format!("on curve c{c}"),
        Location::Interior(v) => format!("inside piece {v}"),
    }
}

fn circle_label(g: &GroupRef) -> String {
    match g {
        GroupRef::Pair(i) => format!("pair {i}"),
        GroupRef::Quad(i) => format!("quad {i}"),
        GroupRef::Segment(i) => format!("segment {i}"),
    }
}

/// One cluster per closed-up piece; edges carry the ids of the decorated
/// paths running through them, and each cluster label records which curve
/// circle every path group traces out.
pub fn structure_dot(s: &MorseStructure, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph structure {{");
    let _ = writeln!(out, "  label=\"{name}\";");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle fontsize=10];");
    for p in &s.pieces {
        let v = p.vertex;
        let bindings: Vec<String> = p
            .strata
            .iter()
            .map(|st| format!("c{} as {}", st.block, circle_label(&st.group)))
            .collect();
        let _ = writeln!(out, "  subgraph cluster_p{v} {{");
        let _ = writeln!(out, "    label=\"piece {v}: {}\";", bindings.join(", "));
        for (local, &rank) in p.ranks.iter().enumerate() {
            let _ = writeln!(
                out,
                "    p{v}n{local} [label=\"{rank} {}\"];",
                location_label(&s.locations[rank as usize])
            );
        }
        for (e, &(a, b)) in p.dg.reeb.edges().iter().enumerate() {
            let through: Vec<String> = p
                .dg
                .decoration
                .paths
                .iter()
                .enumerate()
                .filter(|(_, m)| m.edges().contains(&e))
                .map(|(i, _)| format!("{i}"))
                .collect();
            let _ = writeln!(out, "    p{v}n{a} -> p{v}n{b} [label=\"{}\"];", through.join(","));
        }
        let _ = writeln!(out, "  }}");
    }
    out.push_str("}\n");
    out
}
