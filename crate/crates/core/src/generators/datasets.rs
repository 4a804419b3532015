//! Loading the empirical networks from user-supplied edge-list files.

use std::path::Path;

use super::GeneratorError;
use crate::graph::{load_edge_list, GraphError, LoadOptions, Network};

/// Name, directedness, vertex count and edge count of the datasets with a
/// published size.
pub const KNOWN_DATASETS: [(&str, bool, usize, usize); 3] = [
    ("karate", false, 34, 78),
    ("euroroad", false, 1174, 1417),
    ("ecoli", true, 3073, 7853),
];

#[derive(Debug, Clone)]
pub struct FetchedNetwork {
    pub network: Network,
    /// Size mismatches against the published figures, and dropped duplicates.
    pub warnings: Vec<String>,
}

/// Read `path` as an edge list. For a known dataset name the file is read
/// with that dataset's directedness and its size is checked.
pub fn fetch_real_network(name: &str, path: &Path) -> Result<FetchedNetwork, GeneratorError> {
    let known = KNOWN_DATASETS.iter().find(|d| d.0 == name);
    let directed = known.is_some_and(|d| d.1);
    let text = std::fs::read_to_string(path).map_err(GraphError::from)?;
    let (network, summary) = load_edge_list(
        &text,
        LoadOptions {
            directed,
            weighted: false,
        },
    )?;
    let mut warnings = Vec::new();
    if summary.duplicate_edges > 0 {
        warnings.push(format!("dropped {} duplicate edge lines", summary.duplicate_edges));
    }
    if let Some(&(_, _, vertices, edges)) = known {
        if network.vertex_count() != vertices {
            warnings.push(format!(
                "{name}: expected {vertices} vertices, found {}",
                network.vertex_count()
            ));
        }
        if network.edge_count() != edges {
            warnings.push(format!("{name}: expected {edges} edges, found {}", network.edge_count()));
        }
    }
    Ok(FetchedNetwork { network, warnings })
}
