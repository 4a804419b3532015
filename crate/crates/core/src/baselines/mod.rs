//! Comparison measures: augmented Forman-Ricci, Ollivier-Ricci, edge
//! betweenness and Pearson correlation.

mod transport;

use std::collections::VecDeque;

use thiserror::Error;

pub use transport::{TransportProblem, TransportSolution, MASS_TOLERANCE};

use crate::graph::{enumerate_triangles, EdgeId, GraphError, Network, VertexId};
use crate::numeric::FixedSum;

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("{0} is not supported on directed networks")]
    Unsupported(&'static str),
    #[error("{0}")]
    InvalidInput(String),
    #[error("transport: {0}")]
    Transport(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Augmented Forman-Ricci curvature `4 - deg(u) - deg(v) + 3·t(e)` of a
/// combinatorial undirected edge with `t(e)` triangles.
pub fn forman_augmented(net: &Network, e: EdgeId) -> Result<f64, BaselineError> {
    if net.is_directed() {
        return Err(BaselineError::Unsupported("Forman curvature"));
    }
    let (u, v) = net.endpoints(e)?;
    let t = enumerate_triangles(net, e)?.len();
    Ok(4.0 - net.degree(u) as f64 - net.degree(v) as f64 + 3.0 * t as f64)
}

/// Hop distances from `source` up to `limit`; farther vertices stay `None`.
fn bounded_hops(net: &Network, source: VertexId, limit: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; net.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].expect("queued vertices are reached");
        if d == limit {
            continue;
        }
        for &y in net.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Ollivier-Ricci curvature `1 - W1(m_u, m_v)` with hop-distance costs.
///
/// `m_x` keeps mass `idleness` at `x` and spreads the rest uniformly over the
/// neighbors of `x`.
pub fn ollivier(net: &Network, e: EdgeId, idleness: f64) -> Result<f64, BaselineError> {
    if net.is_directed() {
        return Err(BaselineError::Unsupported("Ollivier curvature"));
    }
    if !(0.0..1.0).contains(&idleness) {
        return Err(BaselineError::InvalidInput(format!("idleness {idleness} must lie in [0, 1)")));
    }
    let (u, v) = net.endpoints(e)?;
    let (du, dv) = (net.degree(u) as f64, net.degree(v) as f64);

    // Masses are scaled by deg(u)·deg(v), which makes them integers when
    // idleness is 0 and keeps the optimal cost exact.
    let support = |x: VertexId, own: f64, each: f64| -> (Vec<VertexId>, Vec<f64>) {
        let mut pts = vec![x];
        let mut mass = vec![own];
        for &y in net.neighbors(x) {
            pts.push(y);
            mass.push(each);
        }
        (pts, mass)
    };
    let (src, supply) = support(u, idleness * du * dv, (1.0 - idleness) * dv);
    let (dst, demand) = support(v, idleness * du * dv, (1.0 - idleness) * du);

    // Every support pair is at most 3 hops apart through the edge itself.
    let cost: Vec<Vec<f64>> = src
        .iter()
        .map(|&x| {
            let hops = bounded_hops(net, x, 3);
            dst.iter()
                .map(|&y| hops[y].map_or(f64::INFINITY, |h| h as f64))
                .collect()
        })
        .collect();
    let plan = transport::min_cost_transport(&supply, &demand, &cost)?;
    Ok(1.0 - plan.cost / (du * dv))
}

/// Edge betweenness: for every edge, the number of shortest paths through
/// it, each pair's paths sharing one unit. Undirected networks count
/// unordered pairs, directed networks ordered pairs along arcs. Unweighted.
pub fn edge_betweenness(net: &Network) -> Vec<f64> {
    let n = net.vertex_count();
    let mut totals = vec![FixedSum::new(); net.edge_count()];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![FixedSum::new(); n];
    let mut order = Vec::with_capacity(n);

    for s in 0..n {
        sigma.iter_mut().for_each(|x| *x = 0.0);
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        delta.iter_mut().for_each(|x| *x = FixedSum::new());
        order.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in net.out_neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
                if dist[y] == dist[x] + 1 {
                    sigma[y] += sigma[x];
                }
            }
        }
        // Dependencies flow back from the far side of the search tree.
        for &w in order.iter().rev() {
            let carry = 1.0 + delta[w].value();
            for &x in net.neighbors(w) {
                if dist[x] == usize::MAX || dist[x] + 1 != dist[w] || !net.has_arc(x, w) {
                    continue;
                }
                let share = sigma[x] / sigma[w] * carry;
                delta[x].add(share);
                let e = net.link(x, w).expect("arc exists");
                totals[e].add(share);
            }
        }
    }
    let halve = if net.is_directed() { 1.0 } else { 0.5 };
    totals.into_iter().map(|t| t.value() * halve).collect()
}

/// Pearson product-moment correlation; `None` when either vector has zero
/// variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<Option<f64>, BaselineError> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(BaselineError::InvalidInput(format!(
            "correlation needs two vectors of equal length >= 2, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)))
}
