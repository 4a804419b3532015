//! Menger curvature of metric triangles and the network curvatures built on it.
//!
//! The Euclidean value is `abc / (4·sqrt(p(p-a)(p-b)(p-c)))` with `p` the
//! half-perimeter; the spherical and hyperbolic values replace the Heron
//! factors and half-sides by their `sin`/`sinh`. The normalizing constants
//! 4 and 2 are kept, so a unit equilateral triangle has curvature √3/3.

use thiserror::Error;

use crate::graph::paths::{orientation_sign, path_length};
use crate::graph::{
    shortest_path_length, EdgeId, Geometry, GraphError, MetricContext, Network, PathRecord,
    VertexId,
};
use crate::numeric::sorted_sum;

#[derive(Debug, Error)]
pub enum MengerError {
    #[error("degenerate triangle with sides ({0}, {1}, {2}) has infinite curvature")]
    InfiniteCurvature(f64, f64, f64),
    #[error("triangle {0:?} is degenerate under the chosen metric")]
    DegenerateTriangle([VertexId; 3]),
    #[error("{0}")]
    Domain(String),
    #[error("no path joins the chord endpoints {0} and {1}")]
    Unreachable(VertexId, VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Side lengths of a metric triple of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl MetricTriangle {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        MetricTriangle { a, b, c }
    }

    pub fn equilateral(side: f64) -> Self {
        MetricTriangle::new(side, side, side)
    }

    /// Sides in ascending order.
    fn sorted(&self) -> [f64; 3] {
        let mut s = [self.a, self.b, self.c];
        s.sort_by(f64::total_cmp);
        s
    }

    pub fn half_perimeter(&self) -> f64 {
        (self.a + self.b + self.c) / 2.0
    }
}

/// Menger curvature of a triangle in the given background geometry.
///
/// Sides are sorted before evaluation so the result is bit-identical under
/// any permutation of `(a, b, c)`.
pub fn menger_triangle(t: &MetricTriangle, geometry: Geometry) -> Result<f64, MengerError> {
    let [a, b, c] = t.sorted();
    if !(a > 0.0 && c.is_finite()) {
        return Err(MengerError::Domain(format!(
            "triangle sides must be positive and finite, got ({}, {}, {})",
            t.a, t.b, t.c
        )));
    }
    let p = (a + b + c) / 2.0;
    // Gromov products, in the cancellation-free form.
    let pa = (b + c - a) / 2.0;
    let pb = (a + c - b) / 2.0;
    let pc = (a + b - c) / 2.0;
    if pc <= 0.0 {
        return Err(MengerError::InfiniteCurvature(t.a, t.b, t.c));
    }
    match geometry {
        Geometry::Euclidean => {
            let area = (p * pa * pb * pc).sqrt();
            Ok(a * b * c / (4.0 * area))
        }
        Geometry::Spherical => {
            let pi = std::f64::consts::PI;
            if c >= pi || a + b + c >= 2.0 * pi {
                return Err(MengerError::Domain(format!(
                    "spherical triangle ({}, {}, {}) needs sides < π and perimeter < 2π",
                    t.a, t.b, t.c
                )));
            }
            let num = (p.sin() * pa.sin() * pb.sin() * pc.sin()).sqrt();
            let den = 2.0 * (a / 2.0).sin() * (b / 2.0).sin() * (c / 2.0).sin();
            Ok(num / den)
        }
        Geometry::Hyperbolic => {
            let num = (p.sinh() * pa.sinh() * pb.sinh() * pc.sinh()).sqrt();
            let den = 2.0 * (a / 2.0).sinh() * (b / 2.0).sinh() * (c / 2.0).sinh();
            Ok(num / den)
        }
    }
}

fn chord_edge(net: &Network, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
    net.link(u, v).ok_or(GraphError::NotAnEdge(u, v))
}

/// `ε(T)·κ`, with `ε` the orientation of the path `u -> w -> v` relative to
/// the chord `u -> v` of `triangle = [u, v, w]`.
pub fn menger_signed(net: &Network, triangle: [VertexId; 3], kappa: f64) -> Result<f64, MengerError> {
    let [u, v, w] = triangle;
    chord_edge(net, u, v)?;
    chord_edge(net, u, w)?;
    chord_edge(net, w, v)?;
    Ok(f64::from(orientation_sign(net, &[u, w, v])) * kappa)
}

/// Menger-Ricci curvature: the signed Menger curvatures of all triangles on `e`.
pub fn menger_ricci(net: &Network, ctx: &MetricContext, e: EdgeId) -> Result<f64, MengerError> {
    ctx.check(net)?;
    let (u, v) = net.endpoints(e)?;
    let chord = ctx.length_unchecked(net, e);
    let mut terms = Vec::new();
    for w in common(net, u, v) {
        let sign = orientation_sign(net, &[u, w, v]);
        let t = MetricTriangle::new(ctx.step_length(net, u, w), ctx.step_length(net, w, v), chord);
        let kappa = menger_triangle(&t, ctx.geometry).map_err(|err| match err {
            MengerError::InfiniteCurvature(..) => MengerError::DegenerateTriangle([u, v, w]),
            other => other,
        })?;
        terms.push(f64::from(sign) * kappa);
    }
    Ok(sorted_sum(terms))
}

fn common(net: &Network, u: VertexId, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
    let nv = net.neighbors(v);
    net.neighbors(u)
        .iter()
        .copied()
        .filter(move |w| nv.binary_search(w).is_ok())
}

/// Menger-Ricci curvature of every edge, in edge order.
pub fn menger_ricci_all(net: &Network, ctx: &MetricContext) -> Result<Vec<f64>, MengerError> {
    (0..net.edge_count()).map(|e| menger_ricci(net, ctx, e)).collect()
}

/// Menger-scalar curvature: the sum of Menger-Ricci over edges at `v`
/// (each triangle at `v` is therefore seen through both of its edges at `v`).
pub fn menger_scalar(net: &Network, ctx: &MetricContext, v: VertexId) -> Result<f64, MengerError> {
    if v >= net.vertex_count() {
        return Err(GraphError::UnknownVertex(v).into());
    }
    let terms = net
        .incident_edges(v)
        .iter()
        .map(|&e| menger_ricci(net, ctx, e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sorted_sum(terms))
}

/// Menger curvature of the metric triangle `v_0 v_k v_n` cut from a path by
/// its interior vertex `v_k`.
///
/// The chord length is the edge `(v_0, v_n)` when present, otherwise the
/// shortest-path distance.
pub fn menger_path(
    net: &Network,
    ctx: &MetricContext,
    path: &PathRecord,
    k: usize,
    geometry: Geometry,
) -> Result<f64, MengerError> {
    ctx.check(net)?;
    let n = path.edge_count();
    if k == 0 || k >= n {
        return Err(MengerError::Domain(format!(
            "split index {k} must lie strictly inside a path of {n} edges"
        )));
    }
    let (first, last) = (path.source(), path.target());
    let a = path_length(net, ctx, &path.vertices[..=k]);
    let b = path_length(net, ctx, &path.vertices[k..]);
    let c = match net.link(first, last) {
        Some(e) => ctx.length_unchecked(net, e),
        None => shortest_path_length(net, ctx, first, last)?
            .ok_or(MengerError::Unreachable(first, last))?,
    };
    menger_triangle(&MetricTriangle::new(a, b, c), geometry)
}
