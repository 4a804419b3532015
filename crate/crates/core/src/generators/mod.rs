//! Random network models, lattice patches, polyhedral complexes and loaders
//! for the empirical datasets.
//!
//! Random streams come from ChaCha8 seeded with the user's 64-bit seed; each
//! model draws from its own stream (0 = ER, 1 = WS, 2 = BA) so the same seed
//! gives unrelated graphs across models but identical graphs across runs and
//! platforms.

mod datasets;
mod lattice;
mod polyhedra;

pub use datasets::{fetch_real_network, FetchedNetwork, KNOWN_DATASETS};
pub use lattice::{build_lattice, LatticeKind, LatticeSpec};
pub use polyhedra::{build_polyhedron, POLYHEDRA};

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, Network, VertexId};

/// Added to every degree in preferential attachment so isolated seed
/// vertices can still be chosen.
pub const ATTACHMENT_EPSILON: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown polyhedron `{name}`; supported: {}", supported.join(", "))]
    UnknownPolyhedron { name: String, supported: Vec<&'static str> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Model {
    /// `G(n, p)`: every vertex pair is linked independently with probability `p`.
    Er { n: usize, p: f64 },
    /// Ring lattice of degree `k`, each edge rewired with probability `beta`.
    Ws { n: usize, k: usize, beta: f64 },
    /// A path on `m0` seed vertices, then each new vertex attaches `m` edges
    /// with probability proportional to degree.
    Ba { n: usize, m0: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub model: Model,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn er(n: usize, p: f64, seed: u64) -> Self {
        GeneratorSpec { model: Model::Er { n, p }, seed }
    }

    pub fn ws(n: usize, k: usize, beta: f64, seed: u64) -> Self {
        GeneratorSpec { model: Model::Ws { n, k, beta }, seed }
    }

    pub fn ba(n: usize, m0: usize, m: usize, seed: u64) -> Self {
        GeneratorSpec { model: Model::Ba { n, m0, m }, seed }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let bad = |msg: String| Err(GeneratorError::InvalidParameter(msg));
        match self.model {
            Model::Er { p, .. } if !(0.0..=1.0).contains(&p) => bad(format!("p = {p} is not in [0, 1]")),
            Model::Ws { n, k, .. } if k % 2 != 0 || k >= n => {
                bad(format!("k = {k} must be even and smaller than n = {n}"))
            }
            Model::Ws { beta, .. } if !(0.0..=1.0).contains(&beta) => {
                bad(format!("beta = {beta} is not in [0, 1]"))
            }
            Model::Ba { n, m0, m } if !(1 <= m && m <= m0 && m0 < n) => {
                bad(format!("need 1 <= m <= m0 < n, got m = {m}, m0 = {m0}, n = {n}"))
            }
            _ => Ok(()),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(match self.model {
            Model::Er { .. } => 0,
            Model::Ws { .. } => 1,
            Model::Ba { .. } => 2,
        });
        rng
    }
}

/// Draw the network described by `spec`. Edges come out sorted as `(u, v)`
/// with `u < v`.
pub fn generate(spec: &GeneratorSpec) -> Result<Network, GeneratorError> {
    spec.validate()?;
    let mut rng = spec.rng();
    let (n, edges) = match spec.model {
        Model::Er { n, p } => (n, erdos_renyi(n, p, &mut rng)),
        Model::Ws { n, k, beta } => (n, watts_strogatz(n, k, beta, &mut rng)),
        Model::Ba { n, m0, m } => (n, barabasi_albert(n, m0, m, &mut rng)),
    };
    let mut b = Network::builder(n, false);
    for (u, v) in edges {
        b.add_edge(u, v);
    }
    Ok(b.build()?)
}

fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> BTreeSet<(VertexId, VertexId)> {
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    edges
}

fn ordered(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

fn watts_strogatz(n: usize, k: usize, beta: f64, rng: &mut ChaCha8Rng) -> BTreeSet<(VertexId, VertexId)> {
    let mut edges = BTreeSet::new();
    let mut degree = vec![0usize; n];
    for j in 1..=k / 2 {
        for u in 0..n {
            edges.insert(ordered(u, (u + j) % n));
        }
    }
    for (u, v) in &edges {
        degree[*u] += 1;
        degree[*v] += 1;
    }
    // Visit each ring edge (u, u + j) once and move its far end with probability beta.
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !edges.contains(&ordered(u, v)) || !rng.gen_bool(beta) || degree[u] >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !edges.contains(&ordered(u, w)) {
                    break w;
                }
            };
            edges.remove(&ordered(u, v));
            edges.insert(ordered(u, w));
            degree[v] -= 1;
            degree[w] += 1;
        }
    }
    edges
}

fn barabasi_albert(n: usize, m0: usize, m: usize, rng: &mut ChaCha8Rng) -> BTreeSet<(VertexId, VertexId)> {
    let mut edges = BTreeSet::new();
    let mut degree = vec![0usize; n];
    for u in 1..m0 {
        edges.insert((u - 1, u));
        degree[u - 1] += 1;
        degree[u] += 1;
    }
    let mut chosen = Vec::with_capacity(m);
    for t in m0..n {
        chosen.clear();
        while chosen.len() < m {
            let total: f64 = (0..t)
                .filter(|x| !chosen.contains(x))
                .map(|x| degree[x] as f64 + ATTACHMENT_EPSILON)
                .sum();
            let mut r = rng.gen::<f64>() * total;
            let mut pick = None;
            for x in (0..t).filter(|x| !chosen.contains(x)) {
                pick = Some(x);
                r -= degree[x] as f64 + ATTACHMENT_EPSILON;
                if r < 0.0 {
                    break;
                }
            }
            chosen.push(pick.expect("t >= m0 >= m candidates"));
        }
        for &x in &chosen {
            edges.insert((x, t));
            degree[x] += 1;
            degree[t] += 1;
        }
    }
    edges
}
