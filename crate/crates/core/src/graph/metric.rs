use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{EdgeId, GraphError, Network, VertexId};

/// Where edge lengths come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthSource {
    /// Every edge has length 1.
    #[default]
    Combinatorial,
    /// The stored edge weight is the length.
    EdgeWeights,
    /// `(deg(u) * deg(v))^(-1/2)`, degrees in the underlying undirected graph.
    PathDegree,
}

/// Background model geometry; only Menger curvature looks at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    #[default]
    Euclidean,
    Spherical,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MetricContext {
    pub length_source: LengthSource,
    pub geometry: Geometry,
}

impl MetricContext {
    pub fn combinatorial() -> Self {
        MetricContext::default()
    }

    pub fn weighted() -> Self {
        MetricContext {
            length_source: LengthSource::EdgeWeights,
            geometry: Geometry::Euclidean,
        }
    }

    pub fn path_degree() -> Self {
        MetricContext {
            length_source: LengthSource::PathDegree,
            geometry: Geometry::Euclidean,
        }
    }

    pub fn with_geometry(mut self, geometry: Geometry) -> Self {
        self.geometry = geometry;
        self
    }

    pub fn check(&self, net: &Network) -> Result<(), GraphError> {
        if self.length_source == LengthSource::PathDegree && net.is_directed() {
            return Err(GraphError::PathDegreeOnDirected);
        }
        Ok(())
    }

    /// Length of every edge, indexed by edge id.
    pub fn edge_lengths(&self, net: &Network) -> Result<Vec<f64>, GraphError> {
        self.check(net)?;
        Ok((0..net.edge_count())
            .map(|e| self.length_unchecked(net, e))
            .collect())
    }

    pub(crate) fn length_unchecked(&self, net: &Network, e: EdgeId) -> f64 {
        match self.length_source {
            LengthSource::Combinatorial => 1.0,
            LengthSource::EdgeWeights => net.edge_weight(e),
            LengthSource::PathDegree => {
                let (u, v) = net.edges()[e];
                let product = (net.degree(u) * net.degree(v)) as f64;
                1.0 / product.sqrt()
            }
        }
    }

    /// Length of the link between adjacent `a` and `b`, ignoring direction
    /// (the arc `a -> b` is preferred when both exist).
    pub(crate) fn step_length(&self, net: &Network, a: VertexId, b: VertexId) -> f64 {
        let e = net.link(a, b).expect("consecutive path vertices must be adjacent");
        self.length_unchecked(net, e)
    }
}

pub fn edge_length(net: &Network, ctx: &MetricContext, e: EdgeId) -> Result<f64, GraphError> {
    ctx.check(net)?;
    net.endpoints(e)?;
    Ok(ctx.length_unchecked(net, e))
}

#[derive(PartialEq)]
struct Frontier(f64, VertexId);

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance, ties broken by vertex id.
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source distances following arc direction; `None` marks unreachable vertices.
pub fn shortest_path_lengths(
    net: &Network,
    ctx: &MetricContext,
    source: VertexId,
) -> Result<Vec<Option<f64>>, GraphError> {
    ctx.check(net)?;
    if source >= net.vertex_count() {
        return Err(GraphError::UnknownVertex(source));
    }
    let n = net.vertex_count();
    let mut dist: Vec<Option<f64>> = vec![None; n];

    if ctx.length_source == LengthSource::Combinatorial {
        dist[source] = Some(0.0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in net.out_neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1.0);
                    queue.push_back(y);
                }
            }
        }
        return Ok(dist);
    }

    let mut settled = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    best[source] = 0.0;
    let mut heap = BinaryHeap::from([Frontier(0.0, source)]);
    while let Some(Frontier(d, x)) = heap.pop() {
        if settled[x] {
            continue;
        }
        settled[x] = true;
        dist[x] = Some(d);
        for &y in net.out_neighbors(x) {
            let e = net.find_edge(x, y).expect("out-neighbor implies an edge");
            let nd = d + ctx.length_unchecked(net, e);
            if nd < best[y] {
                best[y] = nd;
                heap.push(Frontier(nd, y));
            }
        }
    }
    Ok(dist)
}

/// Exact shortest-path distance from `u` to `v`; `None` when unreachable.
pub fn shortest_path_length(
    net: &Network,
    ctx: &MetricContext,
    u: VertexId,
    v: VertexId,
) -> Result<Option<f64>, GraphError> {
    if v >= net.vertex_count() {
        return Err(GraphError::UnknownVertex(v));
    }
    Ok(shortest_path_lengths(net, ctx, u)?[v])
}
