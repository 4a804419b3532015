use std::collections::VecDeque;

use serde::Serialize;

use super::{EdgeId, GraphError, MetricContext, Network, VertexId};
use crate::numeric::sorted_sum;

/// A simple path with its metric length and its orientation relative to
/// the direction `first -> last`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathRecord {
    pub vertices: Vec<VertexId>,
    pub length: f64,
    pub sign: i8,
}

impl PathRecord {
    pub fn from_vertices(net: &Network, ctx: &MetricContext, vertices: Vec<VertexId>) -> PathRecord {
        let length = path_length(net, ctx, &vertices);
        let sign = orientation_sign(net, &vertices);
        PathRecord {
            vertices,
            length,
            sign,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().expect("paths are non-empty")
    }
}

/// A 2-cell adjacent to an edge, described by its boundary minus that edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    /// Index into the declared faces; `None` for implicit cycles.
    pub face: Option<usize>,
    pub weight: f64,
    /// -1 for retrograde faces, +1 otherwise.
    pub orientation: i8,
    /// Boundary path from the edge's tail to its head.
    pub boundary: PathRecord,
}

pub(crate) fn path_length(net: &Network, ctx: &MetricContext, vertices: &[VertexId]) -> f64 {
    sorted_sum(vertices.windows(2).map(|w| ctx.step_length(net, w[0], w[1])))
}

/// +1 when every step follows an arc forward, -1 when every step runs
/// against an arc, 0 for mixed paths. Always +1 on undirected networks.
pub(crate) fn orientation_sign(net: &Network, vertices: &[VertexId]) -> i8 {
    if !net.is_directed() {
        return 1;
    }
    let steps = || vertices.windows(2);
    if steps().all(|w| net.has_arc(w[0], w[1])) {
        1
    } else if steps().all(|w| net.has_arc(w[1], w[0])) {
        -1
    } else {
        0
    }
}

/// Depth-first enumeration of simple paths from `source` to `target` with at
/// most `max_edges` edges, in lexicographic order of vertex sequences.
///
/// With `follow_arcs` the walk respects arc direction; otherwise it runs on the
/// underlying undirected graph.
pub(crate) fn visit_simple_paths<F>(
    net: &Network,
    source: VertexId,
    target: VertexId,
    max_edges: usize,
    exclude_direct: bool,
    follow_arcs: bool,
    mut visit: F,
) where
    F: FnMut(&[VertexId]),
{
    if max_edges == 0 || source == target {
        return;
    }
    // Hop distance to the target, bounded by the budget; prunes dead branches.
    let mut to_target = vec![u32::MAX; net.vertex_count()];
    to_target[target] = 0;
    let mut queue = VecDeque::from([target]);
    while let Some(x) = queue.pop_front() {
        let d = to_target[x];
        if d as usize + 1 >= max_edges {
            continue;
        }
        let preds = if follow_arcs && net.is_directed() {
            predecessors(net, x)
        } else {
            net.neighbors(x).to_vec()
        };
        for y in preds {
            if to_target[y] == u32::MAX {
                to_target[y] = d + 1;
                queue.push_back(y);
            }
        }
    }

    let mut walk = Walk {
        net,
        follow_arcs,
        target,
        max_edges,
        exclude_direct,
        to_target,
        on_path: vec![false; net.vertex_count()],
        path: Vec::with_capacity(max_edges + 1),
        visit: &mut visit,
    };
    walk.path.push(source);
    walk.on_path[source] = true;
    walk.extend();
}

struct Walk<'n, F> {
    net: &'n Network,
    follow_arcs: bool,
    target: VertexId,
    max_edges: usize,
    exclude_direct: bool,
    to_target: Vec<u32>,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
    visit: F,
}

impl<F: FnMut(&[VertexId])> Walk<'_, F> {
    fn extend(&mut self) {
        let x = *self.path.last().unwrap();
        let used = self.path.len() - 1;
        let net = self.net;
        let next = if self.follow_arcs {
            net.out_neighbors(x)
        } else {
            net.neighbors(x)
        };
        for &y in next {
            if self.on_path[y] {
                continue;
            }
            if y == self.target {
                if !(self.exclude_direct && used == 0) {
                    self.path.push(y);
                    (self.visit)(&self.path);
                    self.path.pop();
                }
                continue;
            }
            let remaining = self.to_target[y];
            if remaining == u32::MAX || used + 1 + remaining as usize > self.max_edges {
                continue;
            }
            self.on_path[y] = true;
            self.path.push(y);
            self.extend();
            self.path.pop();
            self.on_path[y] = false;
        }
    }
}

fn predecessors(net: &Network, x: VertexId) -> Vec<VertexId> {
    net.neighbors(x)
        .iter()
        .copied()
        .filter(|&y| net.has_arc(y, x))
        .collect()
}

fn collect_paths(
    net: &Network,
    ctx: &MetricContext,
    u: VertexId,
    v: VertexId,
    max_edges: usize,
    exclude_direct: bool,
    follow_arcs: bool,
) -> Result<Vec<PathRecord>, GraphError> {
    ctx.check(net)?;
    for x in [u, v] {
        if x >= net.vertex_count() {
            return Err(GraphError::UnknownVertex(x));
        }
    }
    let mut out = Vec::new();
    visit_simple_paths(net, u, v, max_edges, exclude_direct, follow_arcs, |p| {
        out.push(PathRecord::from_vertices(net, ctx, p.to_vec()));
    });
    Ok(out)
}

/// Simple paths from `u` to `v` with at most `max_edges` edges, following arc
/// direction in directed networks. Lexicographic by vertex sequence.
pub fn enumerate_simple_paths(
    net: &Network,
    ctx: &MetricContext,
    u: VertexId,
    v: VertexId,
    max_edges: usize,
    exclude_direct_edge: bool,
) -> Result<Vec<PathRecord>, GraphError> {
    collect_paths(net, ctx, u, v, max_edges, exclude_direct_edge, true)
}

/// Like [`enumerate_simple_paths`] but on the underlying undirected graph, so
/// that feed-backward and mixed paths of a directed network are included.
/// Each record's `sign` is its orientation relative to `u -> v`.
pub fn enumerate_undirected_paths(
    net: &Network,
    ctx: &MetricContext,
    u: VertexId,
    v: VertexId,
    max_edges: usize,
    exclude_direct_edge: bool,
) -> Result<Vec<PathRecord>, GraphError> {
    collect_paths(net, ctx, u, v, max_edges, exclude_direct_edge, false)
}

/// Triangles `[u, v, w]` on edge `e = (u, v)`, sorted by apex `w`.
/// Adjacency ignores direction.
pub fn enumerate_triangles(net: &Network, e: EdgeId) -> Result<Vec<[VertexId; 3]>, GraphError> {
    let (u, v) = net.endpoints(e)?;
    Ok(common_neighbors(net.neighbors(u), net.neighbors(v))
        .into_iter()
        .map(|w| [u, v, w])
        .collect())
}

fn common_neighbors(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The 2-cells adjacent to `e`.
///
/// Declared faces take precedence: each face containing `e` is returned
/// once per unit of multiplicity and `max_boundary_edges` is ignored.
/// Without declared faces every elementary cycle through `e` with at most
/// `max_boundary_edges` edges is an implicit cell.
pub fn enumerate_cells(
    net: &Network,
    ctx: &MetricContext,
    e: EdgeId,
    max_boundary_edges: usize,
) -> Result<Vec<Cell>, GraphError> {
    ctx.check(net)?;
    let (u, v) = net.endpoints(e)?;
    match net.faces() {
        Some(faces) => {
            let mut cells = Vec::new();
            for &fi in net.faces_on_edge(e) {
                let face = &faces[fi];
                let vertices = boundary_path(&face.boundary, u, v)
                    .expect("face incidence implies the edge lies on the boundary");
                let boundary = PathRecord::from_vertices(net, ctx, vertices);
                for _ in 0..face.multiplicity {
                    cells.push(Cell {
                        face: Some(fi),
                        weight: face.weight,
                        orientation: face.orientation(),
                        boundary: boundary.clone(),
                    });
                }
            }
            Ok(cells)
        }
        None => {
            let max_path = max_boundary_edges.saturating_sub(1);
            let mut cells = Vec::new();
            visit_simple_paths(net, u, v, max_path, true, false, |p| {
                cells.push(Cell {
                    face: None,
                    weight: 1.0,
                    orientation: 1,
                    boundary: PathRecord::from_vertices(net, ctx, p.to_vec()),
                });
            });
            Ok(cells)
        }
    }
}

/// Walk the cyclic `boundary` from `u` to `v` the long way round, avoiding the side `u-v`.
fn boundary_path(boundary: &[VertexId], u: VertexId, v: VertexId) -> Option<Vec<VertexId>> {
    let n = boundary.len();
    let i = boundary.iter().position(|&x| x == u)?;
    let next = boundary[(i + 1) % n];
    let prev = boundary[(i + n - 1) % n];
    let forward = if next == v {
        false
    } else if prev == v {
        true
    } else {
        return None;
    };
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let idx = if forward { (i + k) % n } else { (i + n - k) % n };
        out.push(boundary[idx]);
    }
    Some(out)
}

/// Orientation of `path` relative to the chord `e = (u, v)`: +1 feed-forward,
/// -1 feed-backward, 0 mixed; +1 on undirected networks. A path given from
/// `v` to `u` is read in reverse.
pub fn cycle_sign(net: &Network, e: EdgeId, path: &PathRecord) -> Result<i8, GraphError> {
    let (u, v) = net.endpoints(e)?;
    if path.vertices.len() < 2 {
        return Err(GraphError::PathMismatch(e));
    }
    let (s, t) = (path.source(), path.target());
    if s == u && t == v {
        Ok(orientation_sign(net, &path.vertices))
    } else if s == v && t == u {
        let reversed: Vec<_> = path.vertices.iter().rev().copied().collect();
        Ok(orientation_sign(net, &reversed))
    } else {
        Err(GraphError::PathMismatch(e))
    }
}
