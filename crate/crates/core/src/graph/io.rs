//! Plain-text edge lists and face sidecar files.
//!
//! Edge list: one `u v [w]` per line, whitespace separated, `#` starts a
//! comment. Vertex tokens are arbitrary labels, re-indexed densely in order
//! of first appearance.
//!
//! Faces: one `F v0 v1 ... vk [w=<weight>] [m=<multiplicity>] [o=-1]` per
//! line, vertices given by label. `o=-1` marks a retrograde face.

use std::collections::HashMap;
use std::io::Write;

use super::{Face, GraphError, Network, NetworkBuilder};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    pub directed: bool,
    pub weighted: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadSummary {
    /// Repeated edge lines dropped under the keep-first policy.
    pub duplicate_edges: usize,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn load_edge_list(text: &str, options: LoadOptions) -> Result<(Network, LoadSummary), GraphError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut summary = LoadSummary::default();

    let mut intern = |tok: &str| -> usize {
        if let Some(&i) = index.get(tok) {
            return i;
        }
        let i = labels.len();
        labels.push(tok.to_string());
        index.insert(tok.to_string(), i);
        i
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let tokens: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() < 2 || tokens.len() > 3 {
            return Err(GraphError::Parse {
                line,
                message: format!("expected `u v [w]`, found {} fields", tokens.len()),
            });
        }
        let weight = match tokens.get(2) {
            Some(tok) => {
                let w: f64 = tok.parse().map_err(|_| GraphError::Parse {
                    line,
                    message: format!("weight `{tok}` is not a number"),
                })?;
                if options.weighted && !(w.is_finite() && w > 0.0) {
                    return Err(GraphError::Validation(format!(
                        "line {line}: weight {w} must be positive and finite"
                    )));
                }
                w
            }
            None => 1.0,
        };
        let weight = if options.weighted { weight } else { 1.0 };
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        if u == v {
            return Err(GraphError::Validation(format!(
                "line {line}: self-loop at `{}`",
                tokens[0]
            )));
        }
        let key = if options.directed { (u, v) } else { (u.min(v), u.max(v)) };
        if seen.insert(key, ()).is_some() {
            summary.duplicate_edges += 1;
            continue;
        }
        edges.push((u, v, weight));
    }

    let mut b = NetworkBuilder::new(labels.len(), options.directed);
    for (u, v, w) in edges {
        b.add_weighted_edge(u, v, w);
    }
    b.labels(labels);
    Ok((b.build()?, summary))
}

/// Attach faces read from sidecar text to `net`.
pub fn load_faces(net: &Network, text: &str) -> Result<Network, GraphError> {
    let index: HashMap<String, usize> = (0..net.vertex_count()).map(|v| (net.label(v), v)).collect();
    let mut faces = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let tokens: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens[0] != "F" {
            return Err(GraphError::Parse {
                line,
                message: format!("face lines start with `F`, found `{}`", tokens[0]),
            });
        }
        let mut face = Face::new(Vec::new());
        for tok in &tokens[1..] {
            let bad = |what: &str| GraphError::Parse {
                line,
                message: format!("invalid {what} `{tok}`"),
            };
            if let Some(w) = tok.strip_prefix("w=") {
                face.weight = w.parse().map_err(|_| bad("face weight"))?;
            } else if let Some(m) = tok.strip_prefix("m=") {
                face.multiplicity = m.parse().map_err(|_| bad("multiplicity"))?;
            } else if let Some(o) = tok.strip_prefix("o=") {
                face.retrograde = match o {
                    "-1" => true,
                    "1" | "+1" => false,
                    _ => return Err(bad("orientation")),
                };
            } else {
                let v = index.get(*tok).ok_or_else(|| GraphError::Parse {
                    line,
                    message: format!("unknown vertex `{tok}`"),
                })?;
                face.boundary.push(*v);
            }
        }
        faces.push(face);
    }
    net.with_faces(faces).map_err(|e| match e {
        GraphError::Validation(msg) => GraphError::Validation(format!("faces: {msg}")),
        other => other,
    })
}

pub fn write_edge_list<W: Write>(net: &Network, out: &mut W, weighted: bool) -> std::io::Result<()> {
    for (e, &(u, v)) in net.edges().iter().enumerate() {
        if weighted {
            writeln!(out, "{} {} {}", net.label(u), net.label(v), net.edge_weight(e))?;
        } else {
            writeln!(out, "{} {}", net.label(u), net.label(v))?;
        }
    }
    Ok(())
}

pub fn write_faces<W: Write>(net: &Network, out: &mut W) -> std::io::Result<()> {
    for face in net.faces().unwrap_or(&[]) {
        write!(out, "F")?;
        for &v in &face.boundary {
            write!(out, " {}", net.label(v))?;
        }
        if face.weight != 1.0 {
            write!(out, " w={}", face.weight)?;
        }
        if face.multiplicity != 1 {
            write!(out, " m={}", face.multiplicity)?;
        }
        if face.retrograde {
            write!(out, " o=-1")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
