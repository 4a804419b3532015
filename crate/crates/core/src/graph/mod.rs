//! Graph data model and the combinatorial machinery every curvature consumes.
//!
//! A [`Network`] is immutable once built. Vertices are dense indices
//! `0..vertex_count`; edges are indexed in insertion order. For directed
//! networks each edge is an arc `u -> v`; most enumeration routines also
//! need the underlying undirected graph, which is kept alongside.

mod io;
mod metric;
pub(crate) mod paths;

pub use io::{load_edge_list, load_faces, write_edge_list, write_faces, LoadOptions, LoadSummary};
pub use metric::{
    edge_length, shortest_path_length, shortest_path_lengths, Geometry, LengthSource,
    MetricContext,
};
pub use paths::{
    cycle_sign, enumerate_cells, enumerate_simple_paths, enumerate_triangles,
    enumerate_undirected_paths, Cell, PathRecord,
};

use std::collections::HashMap;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid network: {0}")]
    Validation(String),
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(VertexId, VertexId),
    #[error("the path-degree metric requires an undirected network")]
    PathDegreeOnDirected,
    #[error("path does not run between the endpoints of edge {0}")]
    PathMismatch(EdgeId),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A declared 2-cell: an elementary cycle of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub boundary: Vec<VertexId>,
    pub weight: f64,
    /// Number of 2-cells sharing this boundary.
    pub multiplicity: u32,
    /// Retrograde faces contribute with a negative orientation sign.
    pub retrograde: bool,
}

impl Face {
    pub fn new(boundary: Vec<VertexId>) -> Self {
        Face {
            boundary,
            weight: 1.0,
            multiplicity: 1,
            retrograde: false,
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_multiplicity(mut self, multiplicity: u32) -> Self {
        self.multiplicity = multiplicity;
        self
    }

    pub fn retrograde(mut self) -> Self {
        self.retrograde = true;
        self
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Orientation sign carried by the face itself.
    pub fn orientation(&self) -> i8 {
        if self.retrograde {
            -1
        } else {
            1
        }
    }

    /// Consecutive boundary pairs, closing the cycle.
    pub fn sides(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let n = self.boundary.len();
        (0..n).map(move |i| (self.boundary[i], self.boundary[(i + 1) % n]))
    }
}

#[derive(Debug, Clone)]
pub struct Network {
    vertex_count: usize,
    directed: bool,
    edges: Vec<(VertexId, VertexId)>,
    edge_weights: Vec<f64>,
    vertex_weights: Option<Vec<f64>>,
    faces: Option<Vec<Face>>,
    labels: Option<Vec<String>>,
    // Keyed by the arc for directed networks, by (min, max) otherwise.
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    // Underlying undirected adjacency, sorted and deduplicated.
    neighbors: Vec<Vec<VertexId>>,
    out_neighbors: Vec<Vec<VertexId>>,
    incident: Vec<Vec<EdgeId>>,
    face_incidence: HashMap<EdgeId, Vec<usize>>,
}

impl Network {
    pub fn builder(vertex_count: usize, directed: bool) -> NetworkBuilder {
        NetworkBuilder::new(vertex_count, directed)
    }

    /// Unweighted network from an edge list; panics on invalid input.
    /// Intended for fixtures and tests.
    pub fn from_edges(vertex_count: usize, directed: bool, edges: &[(usize, usize)]) -> Network {
        let mut b = NetworkBuilder::new(vertex_count, directed);
        for &(u, v) in edges {
            b.add_edge(u, v);
        }
        b.build().expect("invalid fixture network")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        self.edges.get(e).copied().ok_or(GraphError::UnknownEdge(e))
    }

    pub fn edge_weight(&self, e: EdgeId) -> f64 {
        self.edge_weights[e]
    }

    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_weights
    }

    pub fn vertex_weights(&self) -> Option<&[f64]> {
        self.vertex_weights.as_deref()
    }

    pub fn faces(&self) -> Option<&[Face]> {
        self.faces.as_deref()
    }

    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Edge id for `u -> v` (directed) or `{u, v}` (undirected).
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&self.key(u, v)).copied()
    }

    /// The arc `u -> v` in directed networks; same as [`Network::find_edge`] otherwise.
    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.find_edge(u, v).is_some()
    }

    /// Neighbors in the underlying undirected graph, sorted ascending.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v]
    }

    /// Successors along arcs (all neighbors when undirected), sorted ascending.
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_neighbors[v]
    }

    /// Degree in the underlying undirected graph.
    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors[v].len()
    }

    /// Edges touching `v` in either direction, in id order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    /// Declared faces whose boundary contains edge `e`.
    pub fn faces_on_edge(&self, e: EdgeId) -> &[usize] {
        self.face_incidence.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Id of some edge joining `a` and `b` in either direction, preferring `a -> b`.
    pub(crate) fn link(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.find_edge(a, b).or_else(|| {
            if self.directed {
                self.find_edge(b, a)
            } else {
                None
            }
        })
    }

    /// Copy with vertex `v` mapped to `perm[v]`; weights, faces and labels travel along.
    pub fn relabeled(&self, perm: &[VertexId]) -> Network {
        assert_eq!(perm.len(), self.vertex_count, "permutation size mismatch");
        let mut b = NetworkBuilder::new(self.vertex_count, self.directed);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            b.add_weighted_edge(perm[u], perm[v], self.edge_weights[e]);
        }
        if let Some(vw) = &self.vertex_weights {
            let mut moved = vec![0.0; vw.len()];
            for (v, &w) in vw.iter().enumerate() {
                moved[perm[v]] = w;
            }
            b.vertex_weights(moved);
        }
        if let Some(faces) = &self.faces {
            for f in faces {
                let mut g = f.clone();
                g.boundary = f.boundary.iter().map(|&x| perm[x]).collect();
                b.add_face(g);
            }
        }
        if let Some(labels) = &self.labels {
            let mut moved = vec![String::new(); labels.len()];
            for (v, l) in labels.iter().enumerate() {
                moved[perm[v]] = l.clone();
            }
            b.labels(moved);
        }
        b.build().expect("relabeling preserves validity")
    }

    /// Same network with the given faces declared (replacing any existing ones).
    pub fn with_faces(&self, faces: Vec<Face>) -> Result<Network, GraphError> {
        let mut b = NetworkBuilder::new(self.vertex_count, self.directed);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            b.add_weighted_edge(u, v, self.edge_weights[e]);
        }
        if let Some(vw) = &self.vertex_weights {
            b.vertex_weights(vw.clone());
        }
        if let Some(labels) = &self.labels {
            b.labels(labels.clone());
        }
        for f in faces {
            b.add_face(f);
        }
        b.build()
    }

    fn key(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        if self.directed {
            (u, v)
        } else {
            (u.min(v), u.max(v))
        }
    }
}

/// Collects edges and faces, then validates everything at once in [`NetworkBuilder::build`].
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    vertex_count: usize,
    directed: bool,
    edges: Vec<(VertexId, VertexId, f64)>,
    vertex_weights: Option<Vec<f64>>,
    faces: Vec<Face>,
    labels: Option<Vec<String>>,
}

impl NetworkBuilder {
    pub fn new(vertex_count: usize, directed: bool) -> Self {
        NetworkBuilder {
            vertex_count,
            directed,
            edges: Vec::new(),
            vertex_weights: None,
            faces: Vec::new(),
            labels: None,
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> &mut Self {
        self.add_weighted_edge(u, v, 1.0)
    }

    pub fn add_weighted_edge(&mut self, u: VertexId, v: VertexId, w: f64) -> &mut Self {
        self.edges.push((u, v, w));
        self
    }

    pub fn add_face(&mut self, face: Face) -> &mut Self {
        self.faces.push(face);
        self
    }

    pub fn vertex_weights(&mut self, weights: Vec<f64>) -> &mut Self {
        self.vertex_weights = Some(weights);
        self
    }

    pub fn labels(&mut self, labels: Vec<String>) -> &mut Self {
        self.labels = Some(labels);
        self
    }

    pub fn build(&self) -> Result<Network, GraphError> {
        let n = self.vertex_count;
        let directed = self.directed;
        let mut edge_index = HashMap::with_capacity(self.edges.len());
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut edge_weights = Vec::with_capacity(self.edges.len());
        let mut neighbors = vec![Vec::new(); n];
        let mut out_neighbors = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];

        for &(u, v, w) in &self.edges {
            if u >= n {
                return Err(GraphError::UnknownVertex(u));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::Validation(format!("self-loop at vertex {u}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(GraphError::Validation(format!(
                    "edge ({u}, {v}) has non-positive or non-finite weight {w}"
                )));
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if edge_index.contains_key(&key) {
                return Err(GraphError::Validation(format!("duplicate edge ({u}, {v})")));
            }
            let id = edges.len();
            edge_index.insert(key, id);
            edges.push((u, v));
            edge_weights.push(w);
            neighbors[u].push(v);
            neighbors[v].push(u);
            out_neighbors[u].push(v);
            if !directed {
                out_neighbors[v].push(u);
            }
            incident[u].push(id);
            incident[v].push(id);
        }
        for list in neighbors.iter_mut().chain(out_neighbors.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }

        if let Some(vw) = &self.vertex_weights {
            if vw.len() != n {
                return Err(GraphError::Validation(format!(
                    "{} vertex weights for {n} vertices",
                    vw.len()
                )));
            }
            if let Some(bad) = vw.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(GraphError::Validation(format!("vertex weight {bad} is not positive")));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(GraphError::Validation(format!("{} labels for {n} vertices", labels.len())));
            }
        }

        let mut net = Network {
            vertex_count: n,
            directed,
            edges,
            edge_weights,
            vertex_weights: self.vertex_weights.clone(),
            faces: None,
            labels: self.labels.clone(),
            edge_index,
            neighbors,
            out_neighbors,
            incident,
            face_incidence: HashMap::new(),
        };

        if !self.faces.is_empty() {
            let mut incidence: HashMap<EdgeId, Vec<usize>> = HashMap::new();
            for (fi, face) in self.faces.iter().enumerate() {
                validate_face(&net, face)?;
                for (a, b) in face.sides() {
                    let e = net.link(a, b).expect("validated face side");
                    incidence.entry(e).or_default().push(fi);
                }
            }
            net.faces = Some(self.faces.clone());
            net.face_incidence = incidence;
        }
        Ok(net)
    }
}

fn validate_face(net: &Network, face: &Face) -> Result<(), GraphError> {
    if face.boundary.len() < 3 {
        return Err(GraphError::Validation(format!(
            "face {:?} has fewer than 3 vertices",
            face.boundary
        )));
    }
    let mut seen = face.boundary.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != face.boundary.len() {
        return Err(GraphError::Validation(format!(
            "face {:?} repeats a vertex",
            face.boundary
        )));
    }
    if !(face.weight.is_finite() && face.weight > 0.0) {
        return Err(GraphError::Validation(format!("face weight {} is not positive", face.weight)));
    }
    if face.multiplicity == 0 {
        return Err(GraphError::Validation("face multiplicity must be positive".into()));
    }
    for (a, b) in face.sides() {
        if a >= net.vertex_count {
            return Err(GraphError::UnknownVertex(a));
        }
        if net.link(a, b).is_none() {
            return Err(GraphError::Validation(format!(
                "face {:?} uses missing edge ({a}, {b})",
                face.boundary
            )));
        }
    }
    Ok(())
}

/// Average local clustering coefficient over all vertices (degree < 2 counts as 0).
pub fn average_clustering(net: &Network) -> f64 {
    let n = net.vertex_count();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n)
        .map(|v| {
            let nb = net.neighbors(v);
            let k = nb.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if net.neighbors(a).binary_search(&b).is_ok() {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .sum();
    total / n as f64
}
