//! JSON views and Graphviz DOT renderings of spaces, hyperplanes, configurations
//! and weight diagrams.

use std::fmt::Write;

use serde::Serialize;

use crate::contextuality::Configuration;
use crate::gf2::BitVector;
use crate::lie::{DuadLabeling, MagicVeldkampLine, WeightDiagram};
use crate::polar::{Hyperplane, PolarSpace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub parameter: String,
    pub size: usize,
    pub points: Vec<String>,
}

pub fn point_labels(space: &PolarSpace, set: &BitVector) -> Vec<String> {
    set.ones().map(|p| space.vector(p as u64).label()).collect()
}

pub fn hyperplane_json(space: &PolarSpace, h: &Hyperplane) -> HyperplaneJson {
    HyperplaneJson {
        kind: h.tag().to_string(),
        parameter: h.kind().parameter().label(),
        size: h.len(),
        points: point_labels(space, h.points()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagicLineJson {
    pub perp: HyperplaneJson,
    pub elliptic: HyperplaneJson,
    pub hyperbolic: HyperplaneJson,
    pub core: Vec<String>,
}

pub fn magic_line_json(space: &PolarSpace, line: &MagicVeldkampLine) -> MagicLineJson {
    MagicLineJson {
        perp: hyperplane_json(space, &line.perp),
        elliptic: hyperplane_json(space, &line.elliptic),
        hyperbolic: hyperplane_json(space, &line.hyperbolic),
        core: point_labels(space, &line.core),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DuadEntry {
    pub duad: String,
    pub operator: String,
}

pub fn labeling_json(labeling: &DuadLabeling) -> Vec<DuadEntry> {
    labeling
        .entries()
        .map(|(d, o)| DuadEntry {
            duad: d.to_string(),
            operator: o.to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightEdgeJson {
    pub from: usize,
    pub to: usize,
    pub root: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDiagramJson {
    pub highest: String,
    pub roots: Vec<String>,
    pub nodes: Vec<DuadEntry>,
    pub edges: Vec<WeightEdgeJson>,
}

pub fn weight_diagram_json(d: &WeightDiagram) -> WeightDiagramJson {
    WeightDiagramJson {
        highest: d.highest.label(),
        roots: d.roots.iter().map(|r| r.label()).collect(),
        nodes: d
            .nodes
            .iter()
            .map(|(duad, v)| DuadEntry {
                duad: duad.to_string(),
                operator: v.label(),
            })
            .collect(),
        edges: d
            .edges
            .iter()
            .map(|&(from, to, root)| WeightEdgeJson { from, to, root })
            .collect(),
    }
}

/// Collinearity graph of the points in `set` (all points if `None`); edges carry their line index.
pub fn space_dot(space: &PolarSpace, set: Option<&BitVector>) -> String {
    let full = space.full_set();
    let set = set.unwrap_or(&full);
    let mut out =
        String::from("graph polar_space {\n  node [shape=box, fontname=\"monospace\"];\n");
    for p in set.ones() {
        writeln!(
            out,
            "  p{p} [label=\"{}\"];",
            space.vector(p as u64).label()
        )
        .unwrap();
    }
    for (i, line) in space.lines_within(set).enumerate() {
        let [a, b, c] = *line;
        writeln!(out, "  p{a} -- p{b} [label=\"{i}\"];").unwrap();
        writeln!(out, "  p{b} -- p{c} [label=\"{i}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Point–context incidence graph; negative contexts are drawn dashed.
pub fn configuration_dot(config: &Configuration) -> String {
    let mut out = String::from("graph configuration {\n  node [fontname=\"monospace\"];\n");
    for (i, p) in config.points().iter().enumerate() {
        writeln!(out, "  p{i} [shape=box, label=\"{p}\"];").unwrap();
    }
    for (j, ctx) in config.contexts().iter().enumerate() {
        let style = if ctx.sign < 0 { "dashed" } else { "solid" };
        writeln!(
            out,
            "  c{j} [shape=circle, style={style}, label=\"{}\"];",
            if ctx.sign < 0 { "-" } else { "+" }
        )
        .unwrap();
        for &p in &ctx.points {
            writeln!(out, "  c{j} -- p{p} [style={style}];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub fn weight_diagram_dot(d: &WeightDiagram) -> String {
    let mut out = String::from("digraph weights {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, (duad, v)) in d.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\\n{duad}\"];", v.label()).unwrap();
    }
    for &(from, to, root) in &d.edges {
        writeln!(out, "  n{from} -> n{to} [label=\"α{root}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
