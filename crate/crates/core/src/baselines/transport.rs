//! Exact discrete optimal transport (earth mover's distance).
//!
//! Solved as a min-cost flow by successive shortest augmenting paths with
//! Dijkstra and node potentials. No regularization: with integral masses and
//! costs every intermediate quantity is an exact integer.

use super::BaselineError;

/// Tolerance on the total of each mass vector.
pub const MASS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TransportProblem {
    source: Vec<f64>,
    target: Vec<f64>,
    cost: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportSolution {
    pub cost: f64,
    /// `plan[i][j]` is the mass moved from source `i` to target `j`.
    pub plan: Vec<Vec<f64>>,
}

impl TransportProblem {
    pub fn new(source: Vec<f64>, target: Vec<f64>, cost: Vec<Vec<f64>>) -> Result<Self, BaselineError> {
        for (name, masses) in [("source", &source), ("target", &target)] {
            if masses.is_empty() {
                return Err(BaselineError::InvalidInput(format!("{name} support is empty")));
            }
            if masses.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
                return Err(BaselineError::InvalidInput(format!("{name} masses must be non-negative")));
            }
            let total: f64 = masses.iter().sum();
            if (total - 1.0).abs() > MASS_TOLERANCE {
                return Err(BaselineError::InvalidInput(format!("{name} masses sum to {total}, not 1")));
            }
        }
        if cost.len() != source.len() || cost.iter().any(|row| row.len() != target.len()) {
            return Err(BaselineError::InvalidInput(format!(
                "cost matrix must be {}x{}",
                source.len(),
                target.len()
            )));
        }
        if cost.iter().flatten().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(BaselineError::InvalidInput("costs must be non-negative and finite".into()));
        }
        Ok(TransportProblem { source, target, cost })
    }

    pub fn source(&self) -> &[f64] {
        &self.source
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn cost(&self) -> &[Vec<f64>] {
        &self.cost
    }

    pub fn solve(&self) -> Result<TransportSolution, BaselineError> {
        min_cost_transport(&self.source, &self.target, &self.cost)
    }
}

/// Minimum-cost transport between mass vectors of equal total. An infinite
/// cost marks a forbidden pair.
pub(crate) fn min_cost_transport(
    supply: &[f64],
    demand: &[f64],
    cost: &[Vec<f64>],
) -> Result<TransportSolution, BaselineError> {
    let (m, n) = (supply.len(), demand.len());
    let total: f64 = supply.iter().sum();
    let eps = 1e-12 * total.max(1.0);

    // Nodes: 0 = super source, 1..=m sources, m+1..=m+n targets, m+n+1 = sink.
    let nodes = m + n + 2;
    let sink = nodes - 1;
    let mut cap = vec![vec![0.0f64; nodes]; nodes];
    let mut arc_cost = vec![vec![0.0f64; nodes]; nodes];
    for i in 0..m {
        cap[0][1 + i] = supply[i];
        for j in 0..n {
            if cost[i][j].is_finite() {
                cap[1 + i][1 + m + j] = f64::INFINITY;
                arc_cost[1 + i][1 + m + j] = cost[i][j];
                arc_cost[1 + m + j][1 + i] = -cost[i][j];
            }
        }
    }
    for j in 0..n {
        cap[1 + m + j][sink] = demand[j];
    }
    // Antisymmetric flow: residual(a, b) = cap[a][b] - flow[a][b].
    let mut flow = vec![vec![0.0f64; nodes]; nodes];
    let mut potential = vec![0.0f64; nodes];
    let mut remaining = total;

    while remaining > eps {
        let mut dist = vec![f64::INFINITY; nodes];
        let mut prev = vec![usize::MAX; nodes];
        let mut done = vec![false; nodes];
        dist[0] = 0.0;
        loop {
            let mut a = usize::MAX;
            for x in 0..nodes {
                if !done[x] && dist[x].is_finite() && (a == usize::MAX || dist[x] < dist[a]) {
                    a = x;
                }
            }
            if a == usize::MAX {
                break;
            }
            done[a] = true;
            for b in 0..nodes {
                if done[b] || cap[a][b] - flow[a][b] <= eps {
                    continue;
                }
                let reduced = (arc_cost[a][b] + potential[a] - potential[b]).max(0.0);
                if dist[a] + reduced < dist[b] {
                    dist[b] = dist[a] + reduced;
                    prev[b] = a;
                }
            }
        }
        if !dist[sink].is_finite() {
            return Err(BaselineError::Transport(format!(
                "no feasible plan: {remaining} of {total} units cannot be routed"
            )));
        }
        for x in 0..nodes {
            if dist[x].is_finite() {
                potential[x] += dist[x];
            }
        }
        let mut bottleneck = remaining;
        let mut b = sink;
        while b != 0 {
            let a = prev[b];
            bottleneck = bottleneck.min(cap[a][b] - flow[a][b]);
            b = a;
        }
        let mut b = sink;
        while b != 0 {
            let a = prev[b];
            flow[a][b] += bottleneck;
            flow[b][a] -= bottleneck;
            b = a;
        }
        remaining -= bottleneck;
    }

    let mut plan = vec![vec![0.0; n]; m];
    let mut terms = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let f = flow[1 + i][1 + m + j];
            if f > 0.0 {
                plan[i][j] = f;
                terms.push(f * cost[i][j]);
            }
        }
    }
    Ok(TransportSolution {
        cost: crate::numeric::sorted_sum(terms),
        plan,
    })
}
