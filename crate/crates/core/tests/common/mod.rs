//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use netcurv::graph::{load_edge_list, LoadOptions};
use netcurv::{Network, VertexId};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn karate() -> Network {
    let text = std::fs::read_to_string(fixture("karate.txt")).unwrap();
    load_edge_list(&text, LoadOptions::default()).unwrap().0
}

/// Every sequence of distinct vertices from `s` to `t` with at most
/// `max_edges` steps, each step an arc (or edge), by brute recursion.
pub fn brute_force_paths(net: &Network, s: VertexId, t: VertexId, max_edges: usize, follow_arcs: bool) -> Vec<Vec<VertexId>> {
    fn step(net: &Network, t: VertexId, max_edges: usize, follow_arcs: bool, seq: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        let last = *seq.last().unwrap();
        if last == t {
            out.push(seq.clone());
            return;
        }
        if seq.len() > max_edges {
            return;
        }
        for next in 0..net.vertex_count() {
            if seq.contains(&next) {
                continue;
            }
            let linked = if follow_arcs {
                net.has_arc(last, next)
            } else {
                net.has_arc(last, next) || net.has_arc(next, last)
            };
            if linked {
                seq.push(next);
                step(net, t, max_edges, follow_arcs, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    step(net, t, max_edges, follow_arcs, &mut vec![s], &mut out);
    out.sort();
    out
}

/// Number of vertices adjacent to both endpoints, by scanning every vertex.
pub fn triangle_count(net: &Network, u: VertexId, v: VertexId) -> usize {
    let adjacent = |a: VertexId, b: VertexId| net.has_arc(a, b) || net.has_arc(b, a);
    (0..net.vertex_count())
        .filter(|&w| w != u && w != v && adjacent(u, w) && adjacent(v, w))
        .count()
}

/// Unweighted hop distances from `s` following out-arcs.
pub fn hops(net: &Network, s: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; net.vertex_count()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in net.out_neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dist[x].unwrap() + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Edge betweenness from all shortest paths listed explicitly.
pub fn brute_force_betweenness(net: &Network) -> Vec<f64> {
    let n = net.vertex_count();
    let mut out = vec![0.0; net.edge_count()];
    for s in 0..n {
        let ds = hops(net, s);
        for t in 0..n {
            if s == t || (!net.is_directed() && t < s) {
                continue;
            }
            let Some(d) = ds[t] else { continue };
            let paths: Vec<Vec<VertexId>> = brute_force_paths(net, s, t, d, true)
                .into_iter()
                .filter(|p| p.len() == d + 1)
                .collect();
            for p in &paths {
                for w in p.windows(2) {
                    let e = (0..net.edge_count())
                        .find(|&e| {
                            let (a, b) = net.edges()[e];
                            (a, b) == (w[0], w[1]) || (!net.is_directed() && (b, a) == (w[0], w[1]))
                        })
                        .unwrap();
                    out[e] += 1.0 / paths.len() as f64;
                }
            }
        }
    }
    out
}

/// Minimum transport cost by enumerating the vertices of the transportation
/// polytope: every spanning tree of the complete bipartite support graph
/// determines at most one basic solution, and the optimum is attained at one.
pub fn brute_force_transport(source: &[f64], target: &[f64], cost: &[Vec<f64>]) -> f64 {
    let (m, n) = (source.len(), target.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let k = m + n - 1;
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(k);
    fn subsets(cells: &[(usize, usize)], start: usize, k: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if chosen.len() == k {
            visit(chosen);
            return;
        }
        for c in start..cells.len() {
            chosen.push(c);
            subsets(cells, c + 1, k, chosen, visit);
            chosen.pop();
        }
    }
    let mut visit = |basis: &[usize]| {
        if let Some(flow) = solve_tree(source, target, &cells, basis) {
            if flow.iter().all(|&(_, f)| f >= -1e-12) {
                let c: f64 = flow.iter().map(|&(cell, f)| f * cost[cells[cell].0][cells[cell].1]).sum();
                best = best.min(c);
            }
        }
    };
    subsets(&cells, 0, k, &mut chosen, &mut visit);
    best
}

/// Flows on the basis cells by peeling leaves; `None` unless the cells form
/// a spanning tree of the rows and columns.
fn solve_tree(source: &[f64], target: &[f64], cells: &[(usize, usize)], basis: &[usize]) -> Option<Vec<(usize, f64)>> {
    let m = source.len();
    let mut residual: Vec<f64> = source.iter().chain(target).copied().collect();
    let mut open: Vec<usize> = basis.to_vec();
    let mut flow = Vec::new();
    while !open.is_empty() {
        let mut degree = vec![0usize; residual.len()];
        for &c in &open {
            degree[cells[c].0] += 1;
            degree[m + cells[c].1] += 1;
        }
        let leaf = open.iter().position(|&c| degree[cells[c].0] == 1 || degree[m + cells[c].1] == 1)?;
        let c = open.swap_remove(leaf);
        let (r, s) = (cells[c].0, m + cells[c].1);
        let f = if degree[r] == 1 { residual[r] } else { residual[s] };
        residual[r] -= f;
        residual[s] -= f;
        flow.push((c, f));
    }
    residual.iter().all(|x| x.abs() < 1e-9).then_some(flow)
}
