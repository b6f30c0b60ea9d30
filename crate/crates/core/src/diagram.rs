//! Covering relations and modified Hasse diagrams in DOT format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::context::{ElementSet, HilbertSublattice, InvariantSubspaceLattice};
use crate::error::{Error, Result};
use crate::subspace::Subspace;
use crate::valuation::{Proposition, TruthValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Marker {
    TrueSquare,
    FalseCircle,
    GapHollow,
    Unvalued,
}

impl From<TruthValue> for Marker {
    fn from(v: TruthValue) -> Self {
        match v {
            TruthValue::True => Marker::TrueSquare,
            TruthValue::False => Marker::FalseCircle,
            TruthValue::Gap => Marker::GapHollow,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vertex {
    pub index: usize,
    /// Canonical `dim-k #i` label.
    pub canonical: String,
    /// Proposition names attached to this element, first one displayed.
    pub names: Vec<String>,
    pub dim: usize,
    pub marker: Marker,
}

impl Vertex {
    pub fn label(&self) -> &str {
        self.names.first().map(String::as_str).unwrap_or(&self.canonical)
    }

    fn answers_to(&self, name: &str) -> bool {
        self.canonical == name || self.names.iter().any(|n| n == name)
    }
}

#[derive(Clone, Debug)]
pub struct HasseGraph {
    pub title: String,
    pub elements: Vec<Subspace>,
    pub vertices: Vec<Vertex>,
    /// `(lower, upper)` covering pairs.
    pub edges: Vec<(usize, usize)>,
    /// Named groups of vertex indices (one per Boolean block).
    pub blocks: Vec<(String, Vec<usize>)>,
}

/// Transitive reduction of the containment order on `elements`.
pub fn covering_relation(elements: &[Subspace], eps: f64) -> Result<Vec<(usize, usize)>> {
    let n = elements.len();
    for i in 0..n {
        for j in i + 1..n {
            if elements[i].approx_eq(&elements[j], eps) {
                return Err(Error::DuplicateElements(i, j));
            }
        }
    }
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                below[i][j] = elements[i].is_contained_in(&elements[j], eps)?;
            }
        }
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if below[u][v] && !(0..n).any(|w| below[u][w] && below[w][v]) {
                edges.push((u, v));
            }
        }
    }
    Ok(edges)
}

impl HasseGraph {
    pub fn new(title: impl Into<String>, elements: Vec<Subspace>, eps: f64) -> Result<Self> {
        let edges = covering_relation(&elements, eps)?;
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        let vertices = elements
            .iter()
            .enumerate()
            .map(|(index, e)| {
                let k = seen.entry(e.dim()).or_insert(0);
                let canonical = format!("dim-{} #{}", e.dim(), *k);
                *k += 1;
                Vertex {
                    index,
                    canonical,
                    names: Vec::new(),
                    dim: e.dim(),
                    marker: Marker::Unvalued,
                }
            })
            .collect();
        let all = (0..elements.len()).collect();
        Ok(HasseGraph {
            blocks: vec![(String::new(), all)],
            title: title.into(),
            elements,
            vertices,
            edges,
        })
    }

    pub fn from_lattice(lattice: &InvariantSubspaceLattice, eps: f64) -> Result<Self> {
        let mut g = HasseGraph::new(format!("L({})", lattice.label()), lattice.elements().to_vec(), eps)?;
        g.blocks = vec![(lattice.label().to_string(), (0..g.elements.len()).collect())];
        Ok(g)
    }

    pub fn from_sublattice(title: impl Into<String>, sub: &HilbertSublattice, eps: f64) -> Result<Self> {
        let mut g = HasseGraph::new(title, sub.elements().to_vec(), eps)?;
        g.blocks = sub.blocks().to_vec();
        Ok(g)
    }

    /// Attaches each proposition's name to the vertex with the same subspace.
    pub fn name_vertices(&mut self, props: &[Proposition], eps: f64) {
        for p in props {
            if let Some(i) = self.elements.iter().position(|e| e.approx_eq(&p.subspace, eps)) {
                if !self.vertices[i].names.contains(&p.name) {
                    self.vertices[i].names.push(p.name.clone());
                }
            }
        }
    }

    pub fn vertex(&self, name: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.answers_to(name))
    }

    /// Marks `{0}` false and `H` true.
    pub fn mark_trivials(&mut self) {
        for (v, e) in self.vertices.iter_mut().zip(&self.elements) {
            if e.is_zero() {
                v.marker = Marker::FalseCircle;
            } else if e.is_full() {
                v.marker = Marker::TrueSquare;
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Sets markers from `(name, value)` pairs; every other vertex is `Unvalued`.
pub fn annotate(graph: &HasseGraph, valuations: &[(String, TruthValue)]) -> Result<HasseGraph> {
    let mut g = graph.clone();
    for v in &mut g.vertices {
        v.marker = Marker::Unvalued;
    }
    for (name, value) in valuations {
        let i = g
            .vertices
            .iter()
            .position(|v| v.answers_to(name))
            .ok_or_else(|| Error::UnknownName(name.clone()))?;
        g.vertices[i].marker = (*value).into();
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LabelStyle {
    /// Proposition names where attached, canonical labels elsewhere.
    #[default]
    Names,
    Canonical,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DotOptions {
    /// Draw each block as a cluster; shared elements stay outside.
    pub cluster_blocks: bool,
    /// Give `{0}` and `H` their fixed markers when left unvalued.
    pub include_trivials: bool,
    pub label_style: LabelStyle,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn node_attrs(marker: Marker, label: &str) -> String {
    let l = quote(label);
    match marker {
        Marker::TrueSquare => format!("shape=square, style=filled, fillcolor=black, width=0.18, label=\"\", xlabel={l}"),
        Marker::FalseCircle => format!("shape=circle, style=filled, fillcolor=black, width=0.18, label=\"\", xlabel={l}"),
        Marker::GapHollow => format!("shape=circle, style=solid, width=0.18, label=\"\", xlabel={l}"),
        Marker::Unvalued => format!("shape=plaintext, label={l}"),
    }
}

/// Renders one graph as a DOT digraph, bottom to top by dimension.
pub fn emit_dot(graph: &HasseGraph, options: &DotOptions) -> String {
    emit_named(graph, options, "hasse")
}

fn emit_named(graph: &HasseGraph, options: &DotOptions, id: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {id} {{").unwrap();
    if graph.is_empty() {
        out.push_str("}\n");
        return out;
    }
    writeln!(out, "  label={};", quote(&graph.title)).unwrap();
    out.push_str("  labelloc=t;\n  rankdir=BT;\n  forcelabels=true;\n  edge [arrowhead=none];\n");

    let marker_of = |i: usize| {
        let m = graph.vertices[i].marker;
        let e = &graph.elements[i];
        match m {
            Marker::Unvalued if options.include_trivials && e.is_zero() => Marker::FalseCircle,
            Marker::Unvalued if options.include_trivials && e.is_full() => Marker::TrueSquare,
            m => m,
        }
    };
    let label_of = |i: usize| match options.label_style {
        LabelStyle::Names => graph.vertices[i].label().to_string(),
        LabelStyle::Canonical => graph.vertices[i].canonical.clone(),
    };
    let node = |i: usize| format!("v{i} [{}];", node_attrs(marker_of(i), &label_of(i)));

    let mut clustered = vec![false; graph.vertices.len()];
    if options.cluster_blocks {
        let mut membership = vec![0usize; graph.vertices.len()];
        for (_, idx) in &graph.blocks {
            for &i in idx {
                membership[i] += 1;
            }
        }
        for (b, (name, idx)) in graph.blocks.iter().enumerate() {
            writeln!(out, "  subgraph cluster_{b} {{").unwrap();
            writeln!(out, "    label={};", quote(name)).unwrap();
            for &i in idx.iter().filter(|&&i| membership[i] == 1) {
                writeln!(out, "    {}", node(i)).unwrap();
                clustered[i] = true;
            }
            out.push_str("  }\n");
        }
    }
    for (i, inside) in clustered.iter().enumerate() {
        if !inside {
            writeln!(out, "  {}", node(i)).unwrap();
        }
    }
    let mut by_dim: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in &graph.vertices {
        by_dim.entry(v.dim).or_default().push(v.index);
    }
    for ids in by_dim.values() {
        let names: Vec<String> = ids.iter().map(|i| format!("v{i};")).collect();
        writeln!(out, "  {{rank=same; {}}}", names.join(" ")).unwrap();
    }
    for (u, v) in &graph.edges {
        writeln!(out, "  v{u} -> v{v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Several graphs in one DOT file, named `hasse_0`, `hasse_1`, ...
pub fn emit_dot_many(graphs: &[HasseGraph], options: &DotOptions) -> String {
    graphs
        .iter()
        .enumerate()
        .map(|(i, g)| emit_named(g, options, &format!("hasse_{i}")))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::lattice_of;
    use crate::spin::{self, Axis, Sign};
    use crate::subspace::DEFAULT_EPS as EPS;

    fn sigma_z_graph() -> HasseGraph {
        HasseGraph::from_lattice(&lattice_of(&spin::context(Axis::Z, ""), EPS).unwrap(), EPS).unwrap()
    }

    #[test]
    fn qubit_lattice_is_a_diamond() {
        // elements: {0}, z+, z−, H
        assert_eq!(sigma_z_graph().edges, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn chain_has_no_shortcut() {
        let s = spin::ray(Axis::X, Sign::Plus);
        let edges = covering_relation(&[Subspace::zero(2), s, Subspace::full(2)], EPS).unwrap();
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn single_element_and_duplicates() {
        assert!(covering_relation(&[Subspace::full(2)], EPS).unwrap().is_empty());
        assert_eq!(
            covering_relation(&[Subspace::full(2), Subspace::full(2)], EPS),
            Err(Error::DuplicateElements(0, 1))
        );
    }

    #[test]
    fn annotation_by_name() {
        let mut g = sigma_z_graph();
        g.name_vertices(&[Proposition::new("P_z+", spin::ray(Axis::Z, Sign::Plus))], EPS);
        let a = annotate(&g, &[("P_z+".into(), TruthValue::True), ("dim-1 #1".into(), TruthValue::False)]).unwrap();
        assert_eq!(a.vertices[1].marker, Marker::TrueSquare);
        assert_eq!(a.vertices[2].marker, Marker::FalseCircle);
        assert_eq!(a.vertices[0].marker, Marker::Unvalued);
        assert_eq!(annotate(&g, &[("nope".into(), TruthValue::Gap)]).unwrap_err(), Error::UnknownName("nope".into()));
        let none = annotate(&g, &[]).unwrap();
        assert!(none.vertices.iter().all(|v| v.marker == Marker::Unvalued));
    }

    #[test]
    fn empty_graph_renders_empty_body() {
        let g = HasseGraph::new("", Vec::new(), EPS).unwrap();
        assert_eq!(emit_dot(&g, &DotOptions::default()), "digraph hasse {\n}\n");
    }

    #[test]
    fn dot_output_for_diamond() {
        let mut g = sigma_z_graph();
        g.mark_trivials();
        let dot = emit_dot(&g, &DotOptions::default());
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.matches("[shape=").count(), 4);
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("{rank=same; v1; v2;}"));
        assert_eq!(dot, emit_dot(&g, &DotOptions::default()));
    }
}
