//! Finite directed graphs with named vertices and edges.
//!
//! Vertices and edges are stored sorted by name, so the numeric order of
//! [`VertexId`] and [`EdgeId`] agrees with the lexicographic order of names.
//! Everything downstream that needs a deterministic choice (special edges,
//! cycle representatives, output ordering) relies on this.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// Characters that carry meaning in the element and vector text syntax.
const RESERVED: &[char] = &[
    '.', '^', '*', '+', '-', '(', ')', '[', ']', '<', '>', '/', ':', '=', ',', '|', '@', '~', '#',
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` has dangling endpoint `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("invalid name `{0}`: names must be nonempty and avoid whitespace and {RESERVED:?}")]
    InvalidName(String),
    #[error("name `{0}` is used both as a vertex and as an edge")]
    NameClash(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// JSON wire form: `{"vertices": ["u","v"], "edges": [{"name":"f","src":"u","rng":"v"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub src: String,
    pub rng: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub rng: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Sink,
    Regular,
}

/// Result of [`Graph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub sinks: Vec<String>,
    pub regular: Vec<String>,
}

fn check_name(name: &str) -> Result<(), GraphError> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
        return Err(GraphError::InvalidName(name.to_string()));
    }
    Ok(())
}

impl Graph {
    pub fn from_spec(spec: &GraphSpec) -> Result<Graph, GraphError> {
        if spec.vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut vnames = BTreeSet::new();
        for v in &spec.vertices {
            check_name(v)?;
            if !vnames.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut enames = BTreeSet::new();
        for e in &spec.edges {
            check_name(&e.name)?;
            if !enames.insert(e.name.clone()) {
                return Err(GraphError::DuplicateEdge(e.name.clone()));
            }
            if vnames.contains(&e.name) {
                return Err(GraphError::NameClash(e.name.clone()));
            }
            for end in [&e.src, &e.rng] {
                if !vnames.contains(end) {
                    return Err(GraphError::DanglingEndpoint {
                        edge: e.name.clone(),
                        vertex: end.clone(),
                    });
                }
            }
        }

        let vertices: Vec<String> = vnames.into_iter().collect();
        let vertex_index: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i)))
            .collect();
        let mut sorted_edges: Vec<&EdgeSpec> = spec.edges.iter().collect();
        sorted_edges.sort_by(|a, b| a.name.cmp(&b.name));
        let edges: Vec<Edge> = sorted_edges
            .into_iter()
            .map(|e| Edge {
                name: e.name.clone(),
                src: vertex_index[&e.src],
                rng: vertex_index[&e.rng],
            })
            .collect();
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), EdgeId(i)))
            .collect();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.src.0].push(EdgeId(i));
            in_edges[e.rng.0].push(EdgeId(i));
        }
        Ok(Graph {
            vertices,
            edges,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
        })
    }

    /// Convenience constructor: `Graph::new(&["u", "v"], &[("f", "u", "v")])`.
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph, GraphError> {
        Graph::from_spec(&GraphSpec {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(n, s, r)| EdgeSpec {
                    name: n.to_string(),
                    src: s.to_string(),
                    rng: r.to_string(),
                })
                .collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Graph::from_spec(&spec)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    name: e.name.clone(),
                    src: self.vertices[e.src.0].clone(),
                    rng: self.vertices[e.rng.0].clone(),
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut sinks = Vec::new();
        let mut regular = Vec::new();
        for v in self.vertex_ids() {
            match self.kind(v) {
                VertexKind::Sink => sinks.push(self.vertex_name(v).to_string()),
                VertexKind::Regular => regular.push(self.vertex_name(v).to_string()),
            }
        }
        ValidationReport {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            sinks,
            regular,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn rng(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].rng
    }

    /// `s^{-1}(v)`, sorted by edge name.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// `r^{-1}(v)`, sorted by edge name.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        if self.is_sink(v) {
            VertexKind::Sink
        } else {
            VertexKind::Regular
        }
    }

    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_sink(v)).collect()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = serde_json::to_string(&self.to_spec()).map_err(|_| fmt::Error)?;
        f.write_str(&json)
    }
}

/// Small graphs that recur throughout the tests and the CLI documentation.
pub mod fixtures {
    use super::Graph;

    pub fn single_vertex() -> Graph {
        Graph::new(&["v"], &[]).unwrap()
    }

    /// `u --f--> v`.
    pub fn a2() -> Graph {
        Graph::new(&["u", "v"], &[("f", "u", "v")]).unwrap()
    }

    /// One loop `e` at `v`.
    pub fn r1() -> Graph {
        Graph::new(&["v"], &[("e", "v", "v")]).unwrap()
    }

    /// Loop `e` at `u` and an edge `f: u -> v`.
    pub fn toeplitz() -> Graph {
        Graph::new(&["u", "v"], &[("e", "u", "u"), ("f", "u", "v")]).unwrap()
    }

    /// Two loops `e`, `g` at `v`.
    pub fn rose2() -> Graph {
        Graph::new(&["v"], &[("e", "v", "v"), ("g", "v", "v")]).unwrap()
    }

    /// Cycle `e1 e2 e3` through `v1 v2 v3`.
    pub fn three_cycle() -> Graph {
        Graph::new(
            &["v1", "v2", "v3"],
            &[("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v1")],
        )
        .unwrap()
    }

    /// Cycle `e1 e2 e3` with an exit `x: v1 -> w` into the sink `w`.
    pub fn three_cycle_with_exit() -> Graph {
        Graph::new(
            &["v1", "v2", "v3", "w"],
            &[
                ("e1", "v1", "v2"),
                ("e2", "v2", "v3"),
                ("e3", "v3", "v1"),
                ("x", "v1", "w"),
            ],
        )
        .unwrap()
    }

    /// Cycle of length 2: `e1: v1 -> v2`, `e2: v2 -> v1`.
    pub fn two_cycle() -> Graph {
        Graph::new(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v2", "v1")]).unwrap()
    }

    /// `u --f--> w --g--> v`.
    pub fn chain() -> Graph {
        Graph::new(&["u", "v", "w"], &[("f", "u", "w"), ("g", "w", "v")]).unwrap()
    }

    /// Two disjoint loops `e` at `u` and `g` at `w`.
    pub fn two_loops() -> Graph {
        Graph::new(&["u", "w"], &[("e", "u", "u"), ("g", "w", "w")]).unwrap()
    }

    /// `h: u -> v` feeding a loop `e` at `v` that has no exit.
    pub fn lasso() -> Graph {
        Graph::new(&["u", "v"], &[("e", "v", "v"), ("h", "u", "v")]).unwrap()
    }

    /// The seven graphs the relation and groupoid suites run over.
    pub fn suite() -> Vec<(&'static str, Graph)> {
        vec![
            ("single_vertex", single_vertex()),
            ("a2", a2()),
            ("r1", r1()),
            ("toeplitz", toeplitz()),
            ("rose2", rose2()),
            ("three_cycle_with_exit", three_cycle_with_exit()),
            ("chain", chain()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_is_a_sink() {
        let g = fixtures::single_vertex();
        let report = g.validate();
        assert_eq!(report.sinks, vec!["v"]);
        assert!(report.regular.is_empty());
    }

    #[test]
    fn a2_sinks() {
        let report = fixtures::a2().validate();
        assert_eq!(report.sinks, vec!["v"]);
        assert_eq!(report.regular, vec!["u"]);
    }

    #[test]
    fn dangling_endpoint_is_rejected() {
        let err = Graph::new(&["v"], &[("f", "u", "v")]).unwrap_err();
        assert_eq!(
            err,
            GraphError::DanglingEndpoint {
                edge: "f".into(),
                vertex: "u".into()
            }
        );
        assert!(err.to_string().contains("dangling endpoint"));
    }

    #[test]
    fn duplicates_and_bad_names() {
        assert!(matches!(
            Graph::new(&["v", "v"], &[]),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(
            Graph::new(&["v"], &[("e", "v", "v"), ("e", "v", "v")]),
            Err(GraphError::DuplicateEdge(_))
        ));
        assert!(matches!(
            Graph::new(&["v"], &[("v", "v", "v")]),
            Err(GraphError::NameClash(_))
        ));
        assert!(matches!(Graph::new(&["a.b"], &[]), Err(GraphError::InvalidName(_))));
        assert!(matches!(Graph::new(&[], &[]), Err(GraphError::NoVertices)));
    }

    #[test]
    fn ids_follow_name_order() {
        let g = Graph::new(&["z", "a"], &[("y", "z", "a"), ("b", "a", "z")]).unwrap();
        assert_eq!(g.vertex("a"), Some(VertexId(0)));
        assert_eq!(g.edge("b"), Some(EdgeId(0)));
        assert_eq!(g.src(EdgeId(1)), g.vertex("z").unwrap());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices": ["u","v"], "edges": [{"name":"f","src":"u","rng":"v"}]}"#;
        let g = Graph::from_json(text).unwrap();
        assert_eq!(g, fixtures::a2());
        let again = Graph::from_json(&g.to_string()).unwrap();
        assert_eq!(again, g);
    }
}
