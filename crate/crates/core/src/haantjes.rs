//! Haantjes curvature of paths and the network curvatures derived from it.
//!
//! The curvature of a simple path `π` subtended by a chord is
//! `κ_H(π) = sqrt((l(π) - l(chord)) / l(chord)^3)`; in the combinatorial
//! metric a path of `n` edges over an edge has `κ_H = sqrt(n - 1)`.
//!
//! Two edge curvatures are built from it:
//! - the *simple* Haantjes-Ricci curvature sums `ε(π)·κ_H(π)` over the
//!   cycles through the edge;
//! - the *strong* one sums the sectional curvatures `2π - κ_H(π)` of the
//!   2-cells on the edge (a discrete local Gauss-Bonnet).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::paths::{orientation_sign, path_length, visit_simple_paths};
use crate::graph::{
    enumerate_cells, shortest_path_lengths, Cell, EdgeId, GraphError, MetricContext, Network,
    PathRecord, VertexId,
};
use crate::numeric::sorted_sum;

const TAU: f64 = 2.0 * PI;

#[derive(Debug, Error)]
pub enum HaantjesError {
    #[error("{0}")]
    Domain(String),
    #[error("no path of at most {2} edges joins {0} and {1}")]
    Unreachable(VertexId, VertexId, usize),
    #[error("{0} is not supported on directed networks")]
    Directed(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Sum of path curvatures.
    #[default]
    Simple,
    /// Sum of Gauss-Bonnet sectional curvatures `2π - κ_H`.
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HaantjesParams {
    /// Longest cycle-closing path considered, in edges.
    pub max_path_edges: usize,
    pub variant: Variant,
    /// Paths lighter than their chord get negative curvature instead of failing.
    pub weighted_sign_rule: bool,
    /// Divide sectional curvatures by the face weight.
    pub use_face_weights: bool,
}

impl Default for HaantjesParams {
    fn default() -> Self {
        HaantjesParams {
            max_path_edges: 5,
            variant: Variant::Simple,
            weighted_sign_rule: false,
            use_face_weights: false,
        }
    }
}

impl HaantjesParams {
    pub fn with_max_path_edges(mut self, max_path_edges: usize) -> Self {
        self.max_path_edges = max_path_edges;
        self
    }

    pub fn strong() -> Self {
        HaantjesParams {
            variant: Variant::Strong,
            ..Default::default()
        }
    }
}

/// Curvature of one 2-cell relative to one of its edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellCurvature {
    pub boundary: Vec<VertexId>,
    pub kappa_h: f64,
    pub k_strong: f64,
    pub sign: i8,
}

/// Haantjes curvature of a path of length `path_length` over a chord of
/// length `chord_length`. The path may not be shorter than the chord.
pub fn haantjes_path(path_length: f64, chord_length: f64) -> Result<f64, HaantjesError> {
    if !(chord_length > 0.0 && chord_length.is_finite()) {
        return Err(HaantjesError::Domain(format!(
            "chord length {chord_length} must be positive"
        )));
    }
    if !(path_length >= chord_length && path_length.is_finite()) {
        return Err(HaantjesError::Domain(format!(
            "path length {path_length} is shorter than its chord {chord_length}; \
             use the signed weighted variant"
        )));
    }
    Ok(((path_length - chord_length) / chord_length.powi(3)).sqrt())
}

/// Variable-sign Haantjes curvature for general weights: a path lighter than
/// its chord swaps roles with it and gets a negative sign.
pub fn haantjes_weighted_signed(path_length: f64, chord_length: f64) -> Result<f64, HaantjesError> {
    for (name, x) in [("path", path_length), ("chord", chord_length)] {
        if !(x > 0.0 && x.is_finite()) {
            return Err(HaantjesError::Domain(format!("{name} length {x} must be positive")));
        }
    }
    let excess = path_length - chord_length;
    Ok(excess.signum() * (excess.abs() / chord_length.powi(3)).sqrt() * f64::from(excess != 0.0))
}

fn path_curvature(path_length: f64, chord: f64, params: &HaantjesParams) -> Result<f64, HaantjesError> {
    if params.weighted_sign_rule {
        haantjes_weighted_signed(path_length, chord)
    } else {
        haantjes_path(path_length, chord)
    }
}

/// Strong sectional curvature `2π - κ_H(π)` of a cell with boundary path `π`
/// (divided by the face weight when `use_face_weights` is set).
pub fn haantjes_strong_sectional(
    boundary: &PathRecord,
    chord_length: f64,
    face_weight: f64,
    params: &HaantjesParams,
) -> Result<CellCurvature, HaantjesError> {
    if !(face_weight > 0.0 && face_weight.is_finite()) {
        return Err(HaantjesError::Domain(format!("face weight {face_weight} must be positive")));
    }
    let kappa_h = path_curvature(boundary.length, chord_length, params)?;
    let mut k_strong = TAU - kappa_h;
    if params.use_face_weights {
        k_strong /= face_weight;
    }
    Ok(CellCurvature {
        boundary: boundary.vertices.clone(),
        kappa_h,
        k_strong,
        sign: boundary.sign,
    })
}

/// One cycle through an edge, reduced to what the curvature sums need.
struct CellTerm {
    /// Face orientation times path orientation.
    sign: i8,
    weight: f64,
    length: f64,
    edges: usize,
}

fn cell_terms(
    net: &Network,
    ctx: &MetricContext,
    e: EdgeId,
    max_path_edges: usize,
) -> Result<Vec<CellTerm>, HaantjesError> {
    ctx.check(net)?;
    let (u, v) = net.endpoints(e)?;
    if net.faces().is_some() {
        let cells: Vec<Cell> = enumerate_cells(net, ctx, e, max_path_edges + 1)?;
        return Ok(cells
            .into_iter()
            .map(|c| CellTerm {
                sign: c.orientation * c.boundary.sign,
                weight: c.weight,
                length: c.boundary.length,
                edges: c.boundary.edge_count(),
            })
            .collect());
    }
    let mut terms = Vec::new();
    let unit = ctx.length_source == crate::LengthSource::Combinatorial;
    visit_simple_paths(net, u, v, max_path_edges, true, false, |p| {
        let edges = p.len() - 1;
        terms.push(CellTerm {
            sign: orientation_sign(net, p),
            weight: 1.0,
            length: if unit { edges as f64 } else { path_length(net, ctx, p) },
            edges,
        });
    });
    Ok(terms)
}

/// Simple Haantjes-Ricci curvature: `Σ ε(π)·κ_H(π)` over the cycles through
/// `e` (declared faces when present, otherwise every simple path of at most
/// `max_path_edges` edges closing a cycle with `e`).
pub fn haantjes_ricci_simple(
    net: &Network,
    ctx: &MetricContext,
    e: EdgeId,
    params: &HaantjesParams,
) -> Result<f64, HaantjesError> {
    let chord = crate::graph::edge_length(net, ctx, e)?;
    let terms = cell_terms(net, ctx, e, params.max_path_edges)?;
    simple_sum(&terms, chord, params, usize::MAX)
}

fn simple_sum(
    terms: &[CellTerm],
    chord: f64,
    params: &HaantjesParams,
    max_edges: usize,
) -> Result<f64, HaantjesError> {
    let mut parts = Vec::with_capacity(terms.len());
    for t in terms.iter().filter(|t| t.edges <= max_edges) {
        if t.sign == 0 {
            continue;
        }
        parts.push(f64::from(t.sign) * path_curvature(t.length, chord, params)?);
    }
    Ok(sorted_sum(parts))
}

/// Simple Haantjes-Ricci curvature of `e` at every cutoff `0..=max_path_edges`
/// from a single enumeration; entry `k` equals
/// [`haantjes_ricci_simple`] with `max_path_edges = k`.
pub fn haantjes_ricci_simple_sweep(
    net: &Network,
    ctx: &MetricContext,
    e: EdgeId,
    params: &HaantjesParams,
) -> Result<Vec<f64>, HaantjesError> {
    let chord = crate::graph::edge_length(net, ctx, e)?;
    let terms = cell_terms(net, ctx, e, params.max_path_edges)?;
    if net.faces().is_some() {
        // Declared faces ignore the cutoff.
        let v = simple_sum(&terms, chord, params, usize::MAX)?;
        return Ok(vec![v; params.max_path_edges + 1]);
    }
    (0..=params.max_path_edges)
        .map(|k| simple_sum(&terms, chord, params, k))
        .collect()
}

/// Strong Haantjes-Ricci curvature: `Σ sign(c)·K(c)` over the 2-cells on `e`.
pub fn haantjes_ricci_strong(
    net: &Network,
    ctx: &MetricContext,
    e: EdgeId,
    params: &HaantjesParams,
) -> Result<f64, HaantjesError> {
    let chord = crate::graph::edge_length(net, ctx, e)?;
    let terms = cell_terms(net, ctx, e, params.max_path_edges)?;
    let mut parts = Vec::with_capacity(terms.len());
    for t in &terms {
        if t.sign == 0 {
            continue;
        }
        let mut k = TAU - path_curvature(t.length, chord, params)?;
        if params.use_face_weights {
            k /= t.weight;
        }
        parts.push(f64::from(t.sign) * k);
    }
    Ok(sorted_sum(parts))
}

/// The Haantjes-Ricci variant selected by `params.variant`.
pub fn haantjes_ricci(
    net: &Network,
    ctx: &MetricContext,
    e: EdgeId,
    params: &HaantjesParams,
) -> Result<f64, HaantjesError> {
    match params.variant {
        Variant::Simple => haantjes_ricci_simple(net, ctx, e, params),
        Variant::Strong => haantjes_ricci_strong(net, ctx, e, params),
    }
}

/// Haantjes-Ricci curvature of every edge, in edge order.
pub fn haantjes_ricci_all(
    net: &Network,
    ctx: &MetricContext,
    params: &HaantjesParams,
) -> Result<Vec<f64>, HaantjesError> {
    (0..net.edge_count()).map(|e| haantjes_ricci(net, ctx, e, params)).collect()
}

/// Haantjes-scalar curvature: the selected Ricci variant summed over edges at `v`.
pub fn haantjes_scalar(
    net: &Network,
    ctx: &MetricContext,
    v: VertexId,
    params: &HaantjesParams,
) -> Result<f64, HaantjesError> {
    if v >= net.vertex_count() {
        return Err(GraphError::UnknownVertex(v).into());
    }
    let terms = net
        .incident_edges(v)
        .iter()
        .map(|&e| haantjes_ricci(net, ctx, e, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sorted_sum(terms))
}

/// Haantjes-Ricci curvature in the direction `u -> v`.
///
/// `π_0` is the shortest of the simple paths from `u` to `v` with at most
/// `max_path_edges` edges (lexicographically first on ties). Every other
/// such path whose interior avoids `π_0` contributes
/// `sqrt((l(π_i) - l(π_0)) / l(π_0)^3)`.
pub fn haantjes_ricci_directional(
    net: &Network,
    ctx: &MetricContext,
    u: VertexId,
    v: VertexId,
    params: &HaantjesParams,
) -> Result<f64, HaantjesError> {
    ctx.check(net)?;
    for x in [u, v] {
        if x >= net.vertex_count() {
            return Err(GraphError::UnknownVertex(x).into());
        }
    }
    if u == v {
        return Err(HaantjesError::Domain("directional curvature needs two distinct vertices".into()));
    }
    let mut paths: Vec<(Vec<VertexId>, f64)> = Vec::new();
    visit_simple_paths(net, u, v, params.max_path_edges, false, true, |p| {
        paths.push((p.to_vec(), path_length(net, ctx, p)));
    });
    let mut best: Option<usize> = None;
    for (i, (_, len)) in paths.iter().enumerate() {
        if best.is_none_or(|b| *len < paths[b].1) {
            best = Some(i);
        }
    }
    let best = best.ok_or(HaantjesError::Unreachable(u, v, params.max_path_edges))?;
    let (geodesic, base) = (&paths[best].0, paths[best].1);
    let interior = &geodesic[1..geodesic.len() - 1];

    let mut parts = Vec::new();
    for (i, (p, len)) in paths.iter().enumerate() {
        if i == best || p[1..p.len() - 1].iter().any(|x| interior.contains(x)) {
            continue;
        }
        parts.push(((len - base) / base.powi(3)).sqrt());
    }
    Ok(sorted_sum(parts))
}

/// Haantjes curvature of the triangle path `u -> v -> w` over the chord `(u, w)`:
/// `sqrt((d(u,v) + d(v,w) - d(u,w)) / d(u,w)^3)`.
pub fn triangle_haantjes(d_uv: f64, d_vw: f64, d_uw: f64) -> Result<f64, HaantjesError> {
    haantjes_path(d_uv + d_vw, d_uw)
}

fn check_triple(d: [f64; 3]) -> Result<(), HaantjesError> {
    if d.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(HaantjesError::Domain(format!("distances {d:?} are not a metric triple")));
    }
    Ok(())
}

/// Excess of a triangle with distances `d(u,v)`, `d(v,w)`, `d(u,w)`: the
/// largest sum of two sides minus the third over the three apex choices.
pub fn excess(d_uv: f64, d_vw: f64, d_uw: f64) -> Result<f64, HaantjesError> {
    check_triple([d_uv, d_vw, d_uw])?;
    let at_v = d_uv + d_vw - d_uw;
    let at_u = d_uv + d_uw - d_vw;
    let at_w = d_uw + d_vw - d_uv;
    Ok(at_v.max(at_u).max(at_w))
}

/// Aspect ratio: excess divided by the triangle's diameter.
pub fn aspect_ratio(d_uv: f64, d_vw: f64, d_uw: f64) -> Result<f64, HaantjesError> {
    let exc = excess(d_uv, d_vw, d_uw)?;
    let diam = d_uv.max(d_vw).max(d_uw);
    if diam <= 0.0 {
        return Err(HaantjesError::Domain("triangle has zero diameter".into()));
    }
    Ok(exc / diam)
}

/// Max excess and min aspect ratio over all triangles of a network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleProxies {
    pub triangles: usize,
    pub max_excess: Option<f64>,
    pub min_aspect_ratio: Option<f64>,
}

/// Excess and aspect ratio of every triangle on `e`, with sides measured by
/// shortest-path distance.
fn edge_triangle_proxies(
    net: &Network,
    ctx: &MetricContext,
    e: EdgeId,
) -> Result<Vec<(VertexId, f64, f64)>, HaantjesError> {
    if net.is_directed() {
        return Err(HaantjesError::Directed("triangle excess"));
    }
    let (u, v) = net.endpoints(e)?;
    let triangles = crate::graph::enumerate_triangles(net, e)?;
    if triangles.is_empty() {
        return Ok(Vec::new());
    }
    let from_u = shortest_path_lengths(net, ctx, u)?;
    let from_v = shortest_path_lengths(net, ctx, v)?;
    let mut out = Vec::with_capacity(triangles.len());
    for [_, _, w] in triangles {
        let (d_uv, d_vw, d_uw) = (
            from_u[v].expect("adjacent"),
            from_v[w].expect("adjacent"),
            from_u[w].expect("adjacent"),
        );
        out.push((w, excess(d_uv, d_vw, d_uw)?, aspect_ratio(d_uv, d_vw, d_uw)?));
    }
    Ok(out)
}

/// Largest triangle excess over the triangles on `e`; 0 for triangle-free edges.
pub fn edge_excess(net: &Network, ctx: &MetricContext, e: EdgeId) -> Result<f64, HaantjesError> {
    Ok(edge_triangle_proxies(net, ctx, e)?
        .into_iter()
        .map(|(_, x, _)| x)
        .fold(0.0, f64::max))
}

/// Smallest aspect ratio over the triangles on `e`; 0 for triangle-free edges.
pub fn edge_aspect_ratio(net: &Network, ctx: &MetricContext, e: EdgeId) -> Result<f64, HaantjesError> {
    Ok(edge_triangle_proxies(net, ctx, e)?
        .into_iter()
        .map(|(_, _, r)| r)
        .reduce(f64::min)
        .unwrap_or(0.0))
}

pub fn triangle_proxies(net: &Network, ctx: &MetricContext) -> Result<TriangleProxies, HaantjesError> {
    let mut out = TriangleProxies {
        triangles: 0,
        max_excess: None,
        min_aspect_ratio: None,
    };
    for e in 0..net.edge_count() {
        let (u, v) = net.edges()[e];
        for (w, x, r) in edge_triangle_proxies(net, ctx, e)? {
            // Count each triangle once, from its edge between the two smallest ids.
            if w < u.max(v) {
                continue;
            }
            out.triangles += 1;
            out.max_excess = Some(out.max_excess.map_or(x, |m| m.max(x)));
            out.min_aspect_ratio = Some(out.min_aspect_ratio.map_or(r, |m| m.min(r)));
        }
    }
    Ok(out)
}
