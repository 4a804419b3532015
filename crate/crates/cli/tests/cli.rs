use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use netcurv::generators::{generate, GeneratorSpec};
use netcurv::graph::{load_edge_list, load_faces, write_edge_list, LoadOptions};
use netcurv::haantjes::{haantjes_ricci, HaantjesParams};
use netcurv::menger::menger_ricci;
use netcurv::MetricContext;
use netcurv_cli::format_g12;
use tempfile::TempDir;

fn netcurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netcurv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = netcurv(args);
    assert!(
        out.status.success(),
        "netcurv {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data rows of a CSV report, manifest line and header dropped.
fn rows(csv: &str) -> Vec<Vec<String>> {
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# manifest: {"));
    lines.next().unwrap();
    lines.map(|l| l.split(',').map(String::from).collect()).collect()
}

fn values(csv: &str) -> Vec<f64> {
    rows(csv).iter().map(|r| r.last().unwrap().parse().unwrap()).collect()
}

const K3: &str = "a b\nb c\nc a\n";
const TREE: &str = "0 1\n0 2\n1 3\n1 4\n2 5\n";

#[test]
fn triangle_simple_haantjes_is_one() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let out = ok(&["curvature", s(&k3), "--measure", "haantjes-simple", "--max-path-len", "2"]);
    assert_eq!(out.lines().nth(1), Some("u,v,value"));
    let r = rows(&out);
    assert_eq!(r.len(), 3);
    assert!(r.iter().all(|row| row[2] == "1"));
}

#[test]
fn tree_menger_is_zero() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "tree.txt", TREE);
    let out = ok(&["curvature", s(&tree), "--measure", "menger-ricci"]);
    assert_eq!(values(&out), vec![0.0; 5]);
}

#[test]
fn wrapped_cubic_lattice_strong_haantjes() {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("cube.txt");
    ok(&["generate", "lattice", "--kind", "cubic", "--dims", "4x4x4", "--wrap", "-o", s(&edges)]);
    let faces = dir.path().join("cube.txt.faces");
    let out = ok(&[
        "curvature",
        s(&edges),
        "--faces",
        s(&faces),
        "--measure",
        "haantjes-strong",
    ]);
    let expected = 8.0 * std::f64::consts::PI - 4.0 * 2f64.sqrt();
    let v = values(&out);
    assert_eq!(v.len(), 3 * 64);
    for x in v {
        assert!((x - expected).abs() < 1e-9, "{x}");
    }
}

#[test]
fn menger_and_haantjes_agree_at_cutoff_two() {
    let dir = TempDir::new().unwrap();
    let net = generate(&GeneratorSpec::ws(200, 4, 0.3, 3)).unwrap();
    let mut text = Vec::new();
    write_edge_list(&net, &mut text, false).unwrap();
    let path = write(&dir, "ws.txt", std::str::from_utf8(&text).unwrap());
    let out = ok(&[
        "compare",
        s(&path),
        "--a",
        "menger-ricci",
        "--b",
        "haantjes-simple",
        "--max-path-len",
        "2",
    ]);
    assert_eq!(
        out.lines().nth(1),
        Some("max_path_len,n,pearson,a_mean,a_sd,a_min,a_max,b_mean,b_sd,b_min,b_max")
    );
    let r = rows(&out);
    assert_eq!(r[0][2], "1");

    let sweep = ok(&[
        "compare",
        s(&path),
        "--a",
        "menger-ricci",
        "--b",
        "haantjes-simple",
        "--sweep-max-path-len",
        "2:5",
    ]);
    let r = rows(&sweep);
    assert_eq!(r.iter().map(|row| row[0].as_str()).collect::<Vec<_>>(), ["2", "3", "4", "5"]);
    assert_eq!(r[0][2], "1");

    let same = ok(&["compare", s(&path), "--a", "forman", "--b", "forman"]);
    assert_eq!(rows(&same)[0][2], "1");
}

#[test]
fn constant_measure_has_undefined_correlation() {
    let dir = TempDir::new().unwrap();
    let tree = write(&dir, "tree.txt", TREE);
    let out = ok(&["compare", s(&tree), "--a", "menger-ricci", "--b", "forman"]);
    assert_eq!(rows(&out)[0][2], "undefined");
    let json = ok(&[
        "compare",
        s(&tree),
        "--a",
        "menger-ricci",
        "--b",
        "forman",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(doc["rows"][0]["pearson"].is_null());
}

#[test]
fn generation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        ok(&["generate", "er", "--n", "1000", "--p", "0.004", "--seed", "7", "-o", s(p)]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let stdout = ok(&["generate", "er", "--n", "1000", "--p", "0.004", "--seed", "7"]);
    assert_eq!(stdout.as_bytes(), fs::read(&a).unwrap());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.txt.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seeds"], serde_json::json!([7]));
    assert!(manifest["duration_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn triangular_torus_has_two_faces_per_edge() {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("tri.txt");
    ok(&["generate", "lattice", "--kind", "triangular", "--dims", "20x20", "--wrap", "-o", s(&edges)]);
    let (net, _) = load_edge_list(&fs::read_to_string(&edges).unwrap(), LoadOptions::default()).unwrap();
    let net = load_faces(&net, &fs::read_to_string(dir.path().join("tri.txt.faces")).unwrap()).unwrap();
    assert_eq!(net.edge_count(), 1200);
    for e in 0..net.edge_count() {
        assert_eq!(net.faces_on_edge(e).len(), 2);
    }
}

#[test]
fn truncated_octahedron_satisfies_euler() {
    let dir = TempDir::new().unwrap();
    let edges = dir.path().join("to.txt");
    ok(&["generate", "polyhedron", "--name", "truncated_octahedron", "-o", s(&edges)]);
    let (net, _) = load_edge_list(&fs::read_to_string(&edges).unwrap(), LoadOptions::default()).unwrap();
    let net = load_faces(&net, &fs::read_to_string(dir.path().join("to.txt.faces")).unwrap()).unwrap();
    let f = net.faces().unwrap().len() as i64;
    assert_eq!(net.vertex_count() as i64 - net.edge_count() as i64 + f, 2);
}

#[test]
fn histogram_of_constant_and_varied_reports() {
    let dir = TempDir::new().unwrap();
    let mut report = String::from("# manifest: {}\nu,v,value\n");
    for i in 0..100 {
        report.push_str(&format!("{i},{},0.25\n", i + 1));
    }
    let path = write(&dir, "const.csv", &report);
    let out = ok(&["histogram", s(&path), "--bins", "10"]);
    assert_eq!(out.lines().nth(1), Some("bin_low,bin_high,count"));
    let counts: Vec<usize> = rows(&out).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(counts.len(), 10);
    assert_eq!(counts.iter().filter(|&&c| c > 0).count(), 1);
    assert_eq!(counts.iter().sum::<usize>(), 100);

    let net = generate(&GeneratorSpec::ba(300, 3, 2, 5)).unwrap();
    let mut text = Vec::new();
    write_edge_list(&net, &mut text, false).unwrap();
    let graph = write(&dir, "ba.txt", std::str::from_utf8(&text).unwrap());
    let report = dir.path().join("hr.json");
    ok(&[
        "curvature",
        s(&graph),
        "--measure",
        "haantjes-simple",
        "--format",
        "json",
        "-o",
        s(&report),
    ]);
    let out = ok(&["histogram", s(&report), "--bins", "7"]);
    let counts: Vec<usize> = rows(&out).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(counts.iter().sum::<usize>(), net.edge_count());

    let empty = write(&dir, "empty.csv", "# manifest: {}\nu,v,value\n");
    assert_eq!(netcurv(&["histogram", s(&empty)]).status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let bad = write(&dir, "bad.txt", "a b c d\n");
    let missing = dir.path().join("missing.txt");

    let code = |args: &[&str]| netcurv(args).status.code();
    assert_eq!(
        code(&["curvature", s(&k3), "--measure", "haantjes-simple", "--geometry", "sph"]),
        Some(2)
    );
    assert_eq!(code(&["curvature", s(&k3), "--measure", "forman", "--scalar"]), Some(2));
    assert_eq!(
        code(&["curvature", s(&k3), "--measure", "menger-ricci", "--directed", "--metric", "pathdeg"]),
        Some(2)
    );
    assert_eq!(code(&["curvature", s(&k3), "--measure", "excess", "--directed"]), Some(2));
    assert_eq!(code(&["curvature", s(&k3), "--measure", "bogus"]), Some(2));
    assert_eq!(code(&["curvature", s(&bad), "--measure", "forman"]), Some(3));
    assert_eq!(code(&["curvature", s(&missing), "--measure", "forman"]), Some(3));
    assert_eq!(code(&["generate", "polyhedron", "--name", "nonesuch"]), Some(2));
    assert_eq!(code(&["generate", "er", "--n", "10", "--p", "1.5"]), Some(2));
    let line = write(&dir, "line.txt", "a b\nb c\n");
    let weighted = write(&dir, "w.txt", "a b 1\nb c 1\na c 2\n");
    assert_eq!(
        code(&["curvature", s(&line), "--measure", "haantjes-directional", "--max-path-len", "0"]),
        Some(4)
    );
    assert_eq!(
        code(&["curvature", s(&weighted), "--weighted", "--measure", "menger-ricci"]),
        Some(4)
    );
}

#[test]
fn reports_are_deterministic_and_thread_independent() {
    let dir = TempDir::new().unwrap();
    let net = generate(&GeneratorSpec::er(150, 0.06, 11)).unwrap();
    let mut text = Vec::new();
    write_edge_list(&net, &mut text, false).unwrap();
    let path = write(&dir, "er.txt", std::str::from_utf8(&text).unwrap());
    for measure in ["haantjes-simple", "ollivier", "betweenness", "haantjes-directional"] {
        let base = ["curvature", s(&path), "--measure", measure];
        let one = ok(&[&base[..], &["--threads", "1"]].concat());
        let again = ok(&[&base[..], &["--threads", "1"]].concat());
        let four = ok(&[&base[..], &["--threads", "4"]].concat());
        assert_eq!(one, again, "{measure}");
        assert_eq!(one, four, "{measure}");
    }
}

#[test]
fn values_match_library_calls() {
    let dir = TempDir::new().unwrap();
    let net = generate(&GeneratorSpec::ws(120, 6, 0.2, 9)).unwrap();
    let mut text = Vec::new();
    write_edge_list(&net, &mut text, false).unwrap();
    let text = String::from_utf8(text).unwrap();
    let path = write(&dir, "ws.txt", &text);
    let (net, _) = load_edge_list(&text, LoadOptions::default()).unwrap();
    let ctx = MetricContext::combinatorial();

    let out = ok(&["curvature", s(&path), "--measure", "haantjes-simple", "--max-path-len", "3"]);
    let params = HaantjesParams::default().with_max_path_edges(3);
    for (e, row) in rows(&out).iter().enumerate() {
        let (u, v) = net.edges()[e];
        assert_eq!((row[0].clone(), row[1].clone()), (net.label(u), net.label(v)));
        assert_eq!(row[2], format_g12(haantjes_ricci(&net, &ctx, e, &params).unwrap()));
    }

    let json = ok(&["curvature", s(&path), "--measure", "menger-ricci", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["manifest"]["command"], "curvature");
    for (e, row) in doc["rows"].as_array().unwrap().iter().enumerate() {
        assert_eq!(row["value"].as_f64().unwrap(), menger_ricci(&net, &ctx, e).unwrap());
    }

    let scalar = ok(&["curvature", s(&path), "--measure", "menger-ricci", "--scalar"]);
    assert_eq!(scalar.lines().nth(1), Some("vertex,value"));
    assert_eq!(rows(&scalar).len(), net.vertex_count());
}
