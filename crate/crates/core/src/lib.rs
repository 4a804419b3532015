//! Metric curvatures for networks.
//!
//! Menger and Haantjes curvatures (sectional, Ricci and scalar forms) for
//! unweighted or weighted, undirected or directed networks, plus the usual
//! comparison measures and the generators needed to exercise them.

pub mod baselines;
pub mod generators;
pub mod graph;
pub mod haantjes;
pub mod menger;
pub mod numeric;

pub use graph::{
    Cell, EdgeId, Face, Geometry, GraphError, LengthSource, MetricContext, Network,
    NetworkBuilder, PathRecord, VertexId,
};
