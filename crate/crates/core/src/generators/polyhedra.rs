//! Polyhedral 2-complexes: Archimedean solids built by truncating and
//! rectifying Platonic ones, two hemipolyhedra, a polyhedron with retrograde
//! faces, and pentagon models of the Seifert-Weber and Poincaré spaces.

use std::collections::{BTreeSet, HashMap};

use super::GeneratorError;
use crate::graph::{Face, Network, VertexId};

pub const POLYHEDRA: [&str; 8] = [
    "truncated_dodecahedron",
    "truncated_octahedron",
    "truncated_icosidodecahedron",
    "tetrahemihexahedron",
    "octahemoctahedron",
    "quasi_rhombicuboctahedron",
    "seifert_weber",
    "poincare_sphere",
];

/// Build the named complex.
///
/// - `seifert_weber`, `poincare_sphere`: a pentagon whose single face has
///   multiplicity 5 and 3, so every edge lies on that many pentagonal faces.
/// - `quasi_rhombicuboctahedron`: rhombicuboctahedron combinatorics with the
///   eight triangles retrograde.
pub fn build_polyhedron(name: &str) -> Result<Network, GeneratorError> {
    let (vertex_count, faces) = match name {
        "truncated_dodecahedron" => plain(truncate(&convex_hull(&dodecahedron_points()))),
        "truncated_octahedron" => plain(truncate(&convex_hull(&octahedron_points()))),
        "truncated_icosidodecahedron" => plain(truncate(&rectify(&convex_hull(&dodecahedron_points())))),
        "tetrahemihexahedron" => tetrahemihexahedron(),
        "octahemoctahedron" => octahemoctahedron(),
        "quasi_rhombicuboctahedron" => {
            let s = rectify(&rectify(&convex_hull(&cube_points())));
            let faces = s
                .faces
                .into_iter()
                .map(|f| {
                    let tri = f.len() == 3;
                    let face = Face::new(f);
                    if tri {
                        face.retrograde()
                    } else {
                        face
                    }
                })
                .collect();
            (s.vertex_count, faces)
        }
        "seifert_weber" => (5, vec![Face::new((0..5).collect()).with_multiplicity(5)]),
        "poincare_sphere" => (5, vec![Face::new((0..5).collect()).with_multiplicity(3)]),
        _ => {
            return Err(GeneratorError::UnknownPolyhedron {
                name: name.to_string(),
                supported: POLYHEDRA.to_vec(),
            })
        }
    };
    assemble(vertex_count, faces)
}

fn plain(s: Surface) -> (usize, Vec<Face>) {
    (s.vertex_count, s.faces.into_iter().map(Face::new).collect())
}

fn assemble(vertex_count: usize, faces: Vec<Face>) -> Result<Network, GeneratorError> {
    let mut edges = BTreeSet::new();
    for f in &faces {
        for (a, b) in f.sides() {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let mut b = Network::builder(vertex_count, false);
    for (u, v) in edges {
        b.add_edge(u, v);
    }
    for f in faces {
        b.add_face(f);
    }
    Ok(b.build()?)
}

/// Closed oriented surface: each directed side appears in exactly one face.
#[derive(Debug, Clone)]
struct Surface {
    vertex_count: usize,
    faces: Vec<Vec<VertexId>>,
}

impl Surface {
    /// For each face passing `a -> v -> b`, map `(v, b)` to `a`: walking these
    /// links circles `v` against the face orientation.
    fn turns(&self) -> HashMap<(VertexId, VertexId), VertexId> {
        let mut next = HashMap::new();
        for f in &self.faces {
            let k = f.len();
            for i in 0..k {
                let (a, v, b) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
                next.insert((v, b), a);
            }
        }
        next
    }

    /// Neighbors of `v` in cyclic order.
    fn ring(&self, v: VertexId, next: &HashMap<(VertexId, VertexId), VertexId>) -> Vec<VertexId> {
        let start = next
            .keys()
            .filter(|(x, _)| *x == v)
            .map(|&(_, b)| b)
            .min()
            .expect("every vertex lies on a face");
        let mut ring = vec![start];
        let mut b = next[&(v, start)];
        while b != start {
            ring.push(b);
            b = next[&(v, b)];
        }
        ring
    }
}

/// Interns vertices of a derived surface in first-use order.
struct Interner<K> {
    ids: HashMap<K, VertexId>,
}

impl<K: std::hash::Hash + Eq> Interner<K> {
    fn new() -> Self {
        Interner { ids: HashMap::new() }
    }

    fn id(&mut self, key: K) -> VertexId {
        let n = self.ids.len();
        *self.ids.entry(key).or_insert(n)
    }
}

/// Cut every vertex off: one new vertex per directed side, each `k`-gon
/// becomes a `2k`-gon and each degree-`d` vertex a `d`-gon.
fn truncate(s: &Surface) -> Surface {
    let mut ids = Interner::new();
    let mut faces = Vec::new();
    for f in &s.faces {
        let k = f.len();
        let mut g = Vec::with_capacity(2 * k);
        for i in 0..k {
            let (a, b) = (f[i], f[(i + 1) % k]);
            g.push(ids.id((a, b)));
            g.push(ids.id((b, a)));
        }
        faces.push(g);
    }
    let next = s.turns();
    for v in 0..s.vertex_count {
        faces.push(s.ring(v, &next).into_iter().map(|b| ids.id((v, b))).collect());
    }
    Surface {
        vertex_count: ids.ids.len(),
        faces,
    }
}

/// Move vertices to edge midpoints: one new vertex per edge, each `k`-gon
/// stays a `k`-gon and each degree-`d` vertex becomes a `d`-gon.
fn rectify(s: &Surface) -> Surface {
    let mut ids = Interner::new();
    let mut key = |a: VertexId, b: VertexId| ids.id((a.min(b), a.max(b)));
    let mut faces = Vec::new();
    for f in &s.faces {
        let k = f.len();
        faces.push((0..k).map(|i| key(f[i], f[(i + 1) % k])).collect());
    }
    let next = s.turns();
    for v in 0..s.vertex_count {
        faces.push(s.ring(v, &next).into_iter().map(|b| key(v, b)).collect());
    }
    Surface {
        vertex_count: ids.ids.len(),
        faces,
    }
}

type Point = [f64; 3];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point, b: Point) -> Point {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

const EPS: f64 = 1e-9;

fn cube_points() -> Vec<Point> {
    let mut pts = Vec::new();
    for x in [-1.0, 1.0] {
        for y in [-1.0, 1.0] {
            for z in [-1.0, 1.0] {
                pts.push([x, y, z]);
            }
        }
    }
    pts
}

fn octahedron_points() -> Vec<Point> {
    vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
}

fn dodecahedron_points() -> Vec<Point> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = cube_points();
    for s in [-1.0, 1.0] {
        for t in [-1.0, 1.0] {
            let (a, b) = (s / phi, t * phi);
            pts.push([0.0, a, b]);
            pts.push([a, b, 0.0]);
            pts.push([b, 0.0, a]);
        }
    }
    pts
}

fn cuboctahedron_points() -> Vec<Point> {
    let mut pts = Vec::new();
    for s in [-1.0, 1.0] {
        for t in [-1.0, 1.0] {
            pts.push([s, t, 0.0]);
            pts.push([s, 0.0, t]);
            pts.push([0.0, s, t]);
        }
    }
    pts
}

/// Points of `pts` lying in the plane through the origin with normal `n`,
/// ordered counterclockwise about `n`.
fn planar_cycle(pts: &[Point], on: impl Fn(Point) -> bool, n: Point) -> Vec<VertexId> {
    let members: Vec<VertexId> = (0..pts.len()).filter(|&i| on(pts[i])).collect();
    let centre = members.iter().fold([0.0; 3], |c, &i| {
        [c[0] + pts[i][0], c[1] + pts[i][1], c[2] + pts[i][2]]
    });
    let centre = centre.map(|x| x / members.len() as f64);
    let e1 = sub(pts[members[0]], centre);
    let e2 = cross(n, e1);
    let mut keyed: Vec<(f64, VertexId)> = members
        .iter()
        .map(|&i| {
            let d = sub(pts[i], centre);
            (dot(d, e2).atan2(dot(d, e1)), i)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, i)| i).collect()
}

/// Faces of the convex hull of `pts` (all points must be extreme), each
/// oriented counterclockwise seen from outside.
fn convex_hull(pts: &[Point]) -> Surface {
    let n = pts.len();
    let centroid = pts
        .iter()
        .fold([0.0; 3], |c, p| [c[0] + p[0], c[1] + p[1], c[2] + p[2]])
        .map(|x| x / n as f64);
    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut normal = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if dot(normal, normal) < EPS {
                    continue;
                }
                if dot(normal, sub(pts[i], centroid)) < 0.0 {
                    normal = normal.map(|x| -x);
                }
                let height = |p: Point| dot(normal, sub(p, pts[i]));
                if pts.iter().any(|&p| height(p) > EPS) {
                    continue;
                }
                let members: BTreeSet<VertexId> = (0..n).filter(|&x| height(pts[x]).abs() <= EPS).collect();
                if !seen.insert(members.clone()) {
                    continue;
                }
                let plane: Vec<Point> = pts.iter().map(|&p| sub(p, pts[i])).collect();
                let cycle = planar_cycle(&plane, |p| dot(normal, p).abs() <= EPS, normal);
                faces.push(cycle);
            }
        }
    }
    Surface { vertex_count: n, faces }
}

/// Octahedron vertices with four alternating triangles and the three
/// equatorial squares.
fn tetrahemihexahedron() -> (usize, Vec<Face>) {
    let pts = octahedron_points();
    let axis = |c: usize| move |p: Point| p[c].abs() < EPS;
    let mut faces: Vec<Face> = convex_hull(&pts)
        .faces
        .into_iter()
        .filter(|f| {
            let negatives = f.iter().filter(|&&v| pts[v].iter().sum::<f64>() < 0.0).count();
            negatives % 2 == 0
        })
        .map(Face::new)
        .collect();
    for (c, n) in [(0, [1.0, 0.0, 0.0]), (1, [0.0, 1.0, 0.0]), (2, [0.0, 0.0, 1.0])] {
        faces.push(Face::new(planar_cycle(&pts, axis(c), n)));
    }
    (pts.len(), faces)
}

/// Cuboctahedron vertices with its eight triangles and the four equatorial
/// hexagons.
fn octahemoctahedron() -> (usize, Vec<Face>) {
    let pts = cuboctahedron_points();
    let mut faces: Vec<Face> = convex_hull(&pts)
        .faces
        .into_iter()
        .filter(|f| f.len() == 3)
        .map(Face::new)
        .collect();
    for n in [[1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0]] {
        faces.push(Face::new(planar_cycle(&pts, |p| dot(p, n).abs() < EPS, n)));
    }
    (pts.len(), faces)
}
