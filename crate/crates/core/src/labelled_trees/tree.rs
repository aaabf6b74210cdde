use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::label::{OrderLabel, Signature};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeVertex {
    pub id: u32,
    pub label: OrderLabel,
}

/// The invariant of a finite configuration: a finite tree, an order label per
/// vertex and an ordered list of marked coordinates (repetitions allowed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledTree {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<[u32; 2]>,
    pub marks: Vec<u32>,
}

/// One failed invariant, with the vertex that breaks it when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoVertices,
    DuplicateVertex {
        vertex: u32,
    },
    UnknownEdgeEndpoint {
        edge: [u32; 2],
    },
    SelfLoop {
        vertex: u32,
    },
    DuplicateEdge {
        edge: [u32; 2],
    },
    WrongEdgeCount {
        vertices: usize,
        edges: usize,
    },
    Disconnected {
        vertex: u32,
    },
    UnknownMark {
        coordinate: usize,
        vertex: u32,
    },
    UnmarkedLowDegree {
        vertex: u32,
        degree: usize,
    },
    LabelBelowDegree {
        vertex: u32,
        label: OrderLabel,
        degree: usize,
    },
    LabelOutsideSignature {
        vertex: u32,
        label: OrderLabel,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "tree has no vertices"),
            Violation::DuplicateVertex { vertex } => write!(f, "vertex {vertex} listed twice"),
            Violation::UnknownEdgeEndpoint { edge } => {
                write!(f, "edge {}-{} has an unknown endpoint", edge[0], edge[1])
            }
            Violation::SelfLoop { vertex } => write!(f, "self loop at {vertex}"),
            Violation::DuplicateEdge { edge } => {
                write!(f, "edge {}-{} listed twice", edge[0], edge[1])
            }
            Violation::WrongEdgeCount { vertices, edges } => {
                write!(f, "{edges} edges for {vertices} vertices")
            }
            Violation::Disconnected { vertex } => write!(f, "vertex {vertex} is disconnected"),
            Violation::UnknownMark { coordinate, vertex } => {
                write!(f, "mark #{coordinate} names unknown vertex {vertex}")
            }
            Violation::UnmarkedLowDegree { vertex, degree } => {
                write!(f, "unmarked vertex {vertex} has degree {degree} < 3")
            }
            Violation::LabelBelowDegree { vertex, label, degree } => {
                write!(f, "vertex {vertex} has label {label} below its degree {degree}")
            }
            Violation::LabelOutsideSignature { vertex, label } => {
                write!(f, "vertex {vertex} has label {label} outside {{1,2}} ∪ S")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&msgs.join("; "))
    }
}

impl LabelledTree {
    pub fn single(label: OrderLabel, marks: usize) -> Self {
        LabelledTree {
            vertices: vec![TreeVertex { id: 0, label }],
            edges: Vec::new(),
            marks: vec![0; marks],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arity(&self) -> usize {
        self.marks.len()
    }

    pub fn label(&self, id: u32) -> Option<OrderLabel> {
        self.vertices.iter().find(|v| v.id == id).map(|v| v.label)
    }

    pub fn labels(&self) -> BTreeMap<u32, OrderLabel> {
        self.vertices.iter().map(|v| (v.id, v.label)).collect()
    }

    /// Neighbour lists keyed by vertex id, each sorted.
    pub fn adjacency(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut adj: BTreeMap<u32, Vec<u32>> = self.vertices.iter().map(|v| (v.id, Vec::new())).collect();
        for &[a, b] in &self.edges {
            if let Some(n) = adj.get_mut(&a) {
                n.push(b);
            }
            if let Some(n) = adj.get_mut(&b) {
                n.push(a);
            }
        }
        for n in adj.values_mut() {
            n.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, id: u32) -> usize {
        self.edges.iter().filter(|e| e[0] == id || e[1] == id).count()
    }

    pub fn marked_vertices(&self) -> BTreeSet<u32> {
        self.marks.iter().copied().collect()
    }

    fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push(Violation::NoVertices);
            return out;
        }
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id) {
                out.push(Violation::DuplicateVertex { vertex: v.id });
            }
        }
        let mut seen_edges = BTreeSet::new();
        for &[a, b] in &self.edges {
            if !ids.contains(&a) || !ids.contains(&b) {
                out.push(Violation::UnknownEdgeEndpoint { edge: [a, b] });
            } else if a == b {
                out.push(Violation::SelfLoop { vertex: a });
            } else if !seen_edges.insert((a.min(b), a.max(b))) {
                out.push(Violation::DuplicateEdge { edge: [a, b] });
            }
        }
        if self.edges.len() + 1 != ids.len() {
            out.push(Violation::WrongEdgeCount {
                vertices: ids.len(),
                edges: self.edges.len(),
            });
        }
        let adj = self.adjacency();
        let start = *ids.iter().next().expect("nonempty");
        let mut reached = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[&v] {
                if reached.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out.extend(
            ids.iter()
                .filter(|id| !reached.contains(id))
                .map(|&vertex| Violation::Disconnected { vertex }),
        );
        for (coordinate, &vertex) in self.marks.iter().enumerate() {
            if !ids.contains(&vertex) {
                out.push(Violation::UnknownMark { coordinate, vertex });
            }
        }
        out
    }

    /// Fails unless the vertices and edges form a tree and every mark names a vertex.
    pub fn check_structure(&self) -> Result<()> {
        match self.structural_violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::MalformedTree(v.to_string())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedTree(e.to_string()))
    }

    /// Graphviz text; vertices and edges in id order, marks as `(#i)` suffixes.
    pub fn to_dot(&self) -> String {
        let mut marks: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &m) in self.marks.iter().enumerate() {
            marks.entry(m).or_default().push(i);
        }
        let mut vertices = self.vertices.clone();
        vertices.sort_by_key(|v| v.id);
        let mut edges: Vec<(u32, u32)> = self.edges.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        render_dot(
            "labelled_tree",
            vertices.iter().map(|v| (v.id, v.label)),
            &edges,
            &marks,
        )
    }
}

pub(crate) fn render_dot(
    name: &str,
    vertices: impl Iterator<Item = (u32, OrderLabel)>,
    edges: &[(u32, u32)],
    marks: &BTreeMap<u32, Vec<usize>>,
) -> String {
    let mut out = format!("graph {name} {{\n");
    for (id, label) in vertices {
        let mut text = format!("{id}:{label}");
        for i in marks.get(&id).into_iter().flatten() {
            let _ = write!(text, " (#{i})");
        }
        let _ = writeln!(out, "  {id} [label=\"{text}\"];");
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

/// Checks every labelled-tree invariant against `sig`. Violations are
/// reported, never raised.
pub fn validate(tree: &LabelledTree, sig: &Signature) -> ValidationReport {
    let mut violations = tree.structural_violations();
    if tree.vertices.is_empty() {
        return ValidationReport { violations };
    }
    let adj = tree.adjacency();
    let marked = tree.marked_vertices();
    for v in &tree.vertices {
        let degree = adj.get(&v.id).map_or(0, Vec::len);
        if degree <= 2 && !marked.contains(&v.id) {
            violations.push(Violation::UnmarkedLowDegree { vertex: v.id, degree });
        }
        if !v.label.admits_degree(degree) {
            violations.push(Violation::LabelBelowDegree {
                vertex: v.id,
                label: v.label,
                degree,
            });
        }
        if !sig.allows(v.label) {
            violations.push(Violation::LabelOutsideSignature {
                vertex: v.id,
                label: v.label,
            });
        }
    }
    ValidationReport { violations }
}
