//! Finite subgraphs of the Cayley graph `Γ_X` of a group.
//!
//! The Cayley graph itself is never built. A [`Subgraph`] stores a vertex
//! set and the edges it uses, each undirected edge pair once, keyed by its
//! source and a positive generator. A query for `(g, x⁻¹)` is answered by
//! looking up `(g·x⁻¹, x)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::groups::{Group, GroupElem};
use crate::words::{FTerm, Letter, Word};

/// The edge `source --x--> source·x` for a positive generator `x`, together
/// with its inverse edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: GroupElem,
    pub generator: u32,
}

impl Edge {
    pub fn target(&self, group: &Group) -> GroupElem {
        group.step(&self.source, Letter::pos(self.generator))
    }
}

/// A finite, edge-involutive subgraph of `Γ_X`.
///
/// Every stored edge has both endpoints in `vertices`. Isolated vertices
/// are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgraph {
    vertices: BTreeSet<GroupElem>,
    edges: BTreeSet<Edge>,
}

/// Rewrites `(g, x⁻¹)` to the stored form `(g·x⁻¹, x)`.
fn normalize(group: &Group, g: &GroupElem, letter: Letter) -> Edge {
    if letter.is_inverse() {
        Edge {
            source: group.step(g, letter),
            generator: letter.generator(),
        }
    } else {
        Edge {
            source: g.clone(),
            generator: letter.generator(),
        }
    }
}

impl Subgraph {
    pub fn new() -> Self {
        Subgraph::default()
    }

    pub fn from_vertices<I: IntoIterator<Item = GroupElem>>(vertices: I) -> Self {
        Subgraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<GroupElem> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of undirected edge pairs.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_vertex(&self, g: &GroupElem) -> bool {
        self.vertices.contains(g)
    }

    pub fn insert_vertex(&mut self, g: GroupElem) -> bool {
        self.vertices.insert(g)
    }

    /// Inserts the edge `g --letter--> g·letter` and both endpoints.
    /// Returns the target vertex.
    pub fn insert_edge(&mut self, group: &Group, g: &GroupElem, letter: Letter) -> GroupElem {
        let target = group.step(g, letter);
        let edge = normalize(group, g, letter);
        if !self.edges.contains(&edge) {
            self.vertices.insert(g.clone());
            self.vertices.insert(target.clone());
            self.edges.insert(edge);
        }
        target
    }

    pub fn has_edge(&self, group: &Group, g: &GroupElem, letter: Letter) -> bool {
        self.edges.contains(&normalize(group, g, letter))
    }

    /// Adds the path from `g` labeled `w`; returns its end vertex.
    pub fn add_path(&mut self, group: &Group, g: &GroupElem, w: &Word) -> GroupElem {
        self.vertices.insert(g.clone());
        let mut at = g.clone();
        for &letter in w.letters() {
            at = self.insert_edge(group, &at, letter);
        }
        at
    }

    /// Adds the journey from `g` labeled `t`; returns its end vertex.
    pub fn add_journey(&mut self, group: &Group, g: &GroupElem, t: &FTerm) -> GroupElem {
        let mut at = self.add_path(group, g, t.head());
        for (jump, path) in t.segments() {
            let landing = group.eval_from(&at, jump);
            at = self.add_path(group, &landing, path);
        }
        at
    }

    /// `⟨g·w̄⟩`, the graph spanned by the path from `g` labeled `w`.
    pub fn span_path(group: &Group, g: &GroupElem, w: &Word) -> Subgraph {
        let mut out = Subgraph::new();
        out.add_path(group, g, w);
        out
    }

    /// The graph spanned by the journey from `g` labeled `t`: the union of
    /// its constituent paths, each of which contributes at least its start
    /// vertex.
    pub fn span_journey(group: &Group, g: &GroupElem, t: &FTerm) -> Subgraph {
        let mut out = Subgraph::new();
        out.add_journey(group, g, t);
        out
    }

    /// End of the path from `g` labeled `w` if the path lies in `self`.
    pub fn trace_path(&self, group: &Group, g: &GroupElem, w: &Word) -> Option<GroupElem> {
        if !self.vertices.contains(g) {
            return None;
        }
        let mut at = g.clone();
        for &letter in w.letters() {
            if !self.has_edge(group, &at, letter) {
                return None;
            }
            at = group.step(&at, letter);
        }
        Some(at)
    }

    /// End of the journey from `g` labeled `t` if the journey lies in
    /// `self`; every jump needs both of its endpoints present.
    pub fn trace_journey(&self, group: &Group, g: &GroupElem, t: &FTerm) -> Option<GroupElem> {
        let mut at = self.trace_path(group, g, t.head())?;
        for (jump, path) in t.segments() {
            let landing = group.eval_from(&at, jump);
            at = self.trace_path(group, &landing, path)?;
        }
        Some(at)
    }

    /// `gΔ` under the left action of `G`.
    pub fn translate(&self, group: &Group, g: &GroupElem) -> Subgraph {
        Subgraph {
            vertices: self.vertices.iter().map(|v| group.mul(g, v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    source: group.mul(g, &e.source),
                    generator: e.generator,
                })
                .collect(),
        }
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    pub fn extend(&mut self, other: &Subgraph) {
        self.vertices.extend(other.vertices.iter().cloned());
        self.edges.extend(other.edges.iter().cloned());
    }

    /// Whether `other ⊆ self` on both vertices and edges.
    pub fn contains(&self, other: &Subgraph) -> bool {
        other.vertices.is_subset(&self.vertices) && other.edges.is_subset(&self.edges)
    }

    fn adjacency<'a>(&'a self, group: &Group) -> HashMap<&'a GroupElem, Vec<&'a GroupElem>> {
        let mut adj: HashMap<&GroupElem, Vec<&GroupElem>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for edge in &self.edges {
            let target = edge.target(group);
            let target = self
                .vertices
                .get(&target)
                .expect("edge target missing from vertex set");
            adj.get_mut(&edge.source)
                .expect("edge source missing from vertex set")
                .push(target);
            adj.get_mut(target).unwrap().push(&edge.source);
        }
        adj
    }

    /// Maximal connected subgraphs, ordered by their least vertex.
    pub fn components(&self, group: &Group) -> Vec<Subgraph> {
        let adj = self.adjacency(group);
        let mut label: HashMap<&GroupElem, usize> = HashMap::new();
        let mut parts: Vec<Subgraph> = Vec::new();
        for root in &self.vertices {
            if label.contains_key(root) {
                continue;
            }
            let id = parts.len();
            let mut part = Subgraph::new();
            let mut stack = vec![root];
            label.insert(root, id);
            while let Some(v) = stack.pop() {
                part.vertices.insert(v.clone());
                for &n in &adj[v] {
                    if !label.contains_key(n) {
                        label.insert(n, id);
                        stack.push(n);
                    }
                }
            }
            parts.push(part);
        }
        for edge in &self.edges {
            parts[label[&edge.source]].edges.insert(edge.clone());
        }
        parts
    }

    pub fn is_connected(&self, group: &Group) -> bool {
        self.components(group).len() <= 1
    }

    /// Graphviz rendering with nodes and arcs in sorted order.
    ///
    /// Vertices in `highlights` are drawn as double circles.
    pub fn to_dot(&self, group: &Group, highlights: &[GroupElem]) -> String {
        let ids: HashMap<&GroupElem, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut out = String::from("digraph {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if highlights.contains(v) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}\", shape={shape}];",
                escape(&group.format_elem(v))
            );
        }
        for edge in &self.edges {
            let target = edge.target(group);
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                ids[&edge.source],
                ids[&target],
                escape(group.alphabet().name(edge.generator))
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
