//! Patches of the regular tessellations with every 2-cell declared as a face.
//!
//! Planar vertices `(i, j)` have id `j * width + i`; cubic vertices
//! `(i, j, k)` have id `(k * height + j) * width + i`. Wrapped patches close
//! up into a torus so every edge sits in the same local configuration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::GeneratorError;
use crate::graph::{Face, Network, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    Triangular,
    Square,
    /// Honeycomb, laid out as a brick wall.
    Hexagonal,
    Cubic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    /// Side lengths in vertices: two for planar kinds, three for cubic.
    pub dims: Vec<usize>,
    pub wrap: bool,
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, dims: &[usize], wrap: bool) -> Self {
        LatticeSpec {
            kind,
            dims: dims.to_vec(),
            wrap,
        }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let want = if self.kind == LatticeKind::Cubic { 3 } else { 2 };
        let bad = |msg: String| Err(GeneratorError::InvalidParameter(msg));
        if self.dims.len() != want {
            return bad(format!("{:?} lattice needs {want} dimensions", self.kind));
        }
        let min = if self.wrap { 3 } else { 2 };
        if self.dims.iter().any(|&d| d < min) {
            return bad(format!("every dimension must be at least {min}, got {:?}", self.dims));
        }
        if self.kind == LatticeKind::Hexagonal && self.wrap && self.dims.iter().any(|&d| d % 2 != 0 || d < 4) {
            return bad(format!(
                "wrapped hexagonal lattice needs even dimensions of at least 4, got {:?}",
                self.dims
            ));
        }
        Ok(())
    }
}

struct Grid {
    dims: Vec<usize>,
    wrap: bool,
}

impl Grid {
    /// Vertex at `base + offset`, or `None` when it falls off an open patch.
    fn at(&self, base: &[usize], offset: &[usize]) -> Option<VertexId> {
        let mut id = 0;
        for axis in (0..self.dims.len()).rev() {
            let mut x = base[axis] + offset[axis];
            if x >= self.dims[axis] {
                if !self.wrap {
                    return None;
                }
                x %= self.dims[axis];
            }
            id = id * self.dims[axis] + x;
        }
        Some(id)
    }

    fn cells(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for &d in &self.dims {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn polygon(&self, base: &[usize], offsets: &[&[usize]]) -> Option<Vec<VertexId>> {
        offsets.iter().map(|o| self.at(base, o)).collect()
    }
}

/// Build the patch described by `spec`.
pub fn build_lattice(spec: &LatticeSpec) -> Result<Network, GeneratorError> {
    spec.validate()?;
    let grid = Grid {
        dims: spec.dims.clone(),
        wrap: spec.wrap,
    };
    let mut faces: Vec<Vec<VertexId>> = Vec::new();
    for base in grid.cells() {
        let polygons: Vec<&[&[usize]]> = match spec.kind {
            LatticeKind::Square => vec![&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]],
            LatticeKind::Triangular => vec![&[&[0, 0], &[1, 0], &[1, 1]], &[&[0, 0], &[1, 1], &[0, 1]]],
            LatticeKind::Hexagonal if (base[0] + base[1]) % 2 == 0 => {
                vec![&[&[0, 0], &[1, 0], &[2, 0], &[2, 1], &[1, 1], &[0, 1]]]
            }
            LatticeKind::Hexagonal => vec![],
            LatticeKind::Cubic => vec![
                &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0], &[0, 1, 0]],
                &[&[0, 0, 0], &[0, 1, 0], &[0, 1, 1], &[0, 0, 1]],
                &[&[0, 0, 0], &[0, 0, 1], &[1, 0, 1], &[1, 0, 0]],
            ],
        };
        faces.extend(polygons.into_iter().filter_map(|p| grid.polygon(&base, p)));
    }

    let mut edges = BTreeSet::new();
    for f in &faces {
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    // Open patches keep boundary edges that close no cell.
    if !spec.wrap {
        for base in grid.cells() {
            let steps: Vec<&[usize]> = match spec.kind {
                LatticeKind::Square => vec![&[1, 0], &[0, 1]],
                LatticeKind::Triangular => vec![&[1, 0], &[0, 1], &[1, 1]],
                LatticeKind::Hexagonal if (base[0] + base[1]) % 2 == 0 => vec![&[1, 0], &[0, 1]],
                LatticeKind::Hexagonal => vec![&[1, 0]],
                LatticeKind::Cubic => vec![&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            };
            let a = grid.at(&base, &vec![0; base.len()]).expect("base is inside");
            for s in steps {
                if let Some(b) = grid.at(&base, s) {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
    }

    let n: usize = spec.dims.iter().product();
    let mut b = Network::builder(n, false);
    for (u, v) in edges {
        b.add_edge(u, v);
    }
    for f in faces {
        b.add_face(Face::new(f));
    }
    Ok(b.build()?)
}
