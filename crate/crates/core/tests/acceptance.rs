//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use netcurv::baselines::{edge_betweenness, forman_augmented, ollivier, pearson, TransportProblem};
use netcurv::generators::{build_lattice, build_polyhedron, generate, GeneratorSpec, LatticeKind, LatticeSpec};
use netcurv::haantjes::{
    aspect_ratio, edge_aspect_ratio, edge_excess, excess, haantjes_path, haantjes_ricci_simple,
    haantjes_ricci_simple_sweep, haantjes_ricci_strong, haantjes_scalar, HaantjesParams,
};
use netcurv::menger::{menger_ricci, menger_ricci_all, menger_scalar, menger_triangle, MetricTriangle};
use netcurv::{Geometry, MetricContext, Network};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn comb() -> MetricContext {
    MetricContext::combinatorial()
}

fn all_edges(net: &Network, expected: f64, tol: f64, value: impl Fn(usize) -> f64) -> Result<(), String> {
    for e in 0..net.edge_count() {
        let v = value(e);
        check(close(v, expected, tol), format!("edge {e}: got {v}, expected {expected}"))?;
    }
    Ok(())
}

fn lattice_strong_ricci() -> Outcome {
    let strong = HaantjesParams::strong();
    let started = Instant::now();
    // Some published tables list the square and hexagonal values the other way
    // round; these expectations follow from kappa_H = sqrt(n - 1) and K = 2pi - kappa_H.
    let cases = [
        (LatticeKind::Triangular, vec![20, 20], 4.0 * PI - 2.0),
        (LatticeKind::Square, vec![20, 20], 4.0 * PI - 2.0 * 2f64.sqrt()),
        (LatticeKind::Hexagonal, vec![20, 20], 4.0 * PI - 4.0),
        (LatticeKind::Cubic, vec![20, 20, 20], 8.0 * PI - 4.0 * 2f64.sqrt()),
    ];
    let mut edges = 0;
    for (kind, dims, expected) in cases {
        let net = build_lattice(&LatticeSpec::new(kind, &dims, true)).map_err(|e| e.to_string())?;
        all_edges(&net, expected, 1e-12, |e| haantjes_ricci_strong(&net, &comb(), e, &strong).unwrap())?;
        edges += net.edge_count();
    }
    let elapsed = started.elapsed();
    check(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("{edges} edges over four wrapped lattices in {elapsed:.2?}"))
}

fn polyhedra_simple_ricci() -> Outcome {
    let params = HaantjesParams::default();
    let cases = [
        ("tetrahemihexahedron", 1.0 + 2f64.sqrt()),
        ("octahemoctahedron", 3.0),
        ("seifert_weber", 5.0 * 3f64.sqrt()),
        ("poincare_sphere", 3.0 * 3f64.sqrt()),
    ];
    for (name, expected) in cases {
        let net = build_polyhedron(name).map_err(|e| e.to_string())?;
        all_edges(&net, expected, 1e-12, |e| haantjes_ricci_simple(&net, &comb(), e, &params).unwrap())
            .map_err(|m| format!("{name}: {m}"))?;
    }
    Ok("1+sqrt2, 3, 5sqrt3, 3sqrt3 on every edge".into())
}

fn menger_checks() -> Outcome {
    let s = menger_triangle(&MetricTriangle::equilateral(FRAC_PI_2), Geometry::Spherical).unwrap();
    check(close(s, 2f64.sqrt() / 2.0, 1e-12), format!("spherical right triangle: {s}"))?;
    let ratio = menger_triangle(&MetricTriangle::equilateral(1.0), Geometry::Euclidean).unwrap()
        / haantjes_path(2.0, 1.0).unwrap();
    check(close(ratio, 3f64.sqrt() / 3.0, 1e-12), format!("Menger/Haantjes ratio {ratio}"))?;
    Ok(format!("spherical {s:.15}, ratio {ratio:.15}"))
}

fn directed_strong_ricci() -> Outcome {
    let strong = HaantjesParams::strong();
    let cases: [(&str, usize, Vec<(usize, usize)>, f64); 3] = [
        ("three feed-forward triangles", 5, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)], 6.0 * PI - 3.0),
        ("one feed-forward triangle", 3, vec![(0, 1), (0, 2), (2, 1)], 2.0 * PI - 1.0),
        (
            "two triangles and a square",
            6,
            vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)],
            6.0 * PI - 2.0 - 2f64.sqrt(),
        ),
    ];
    for (name, n, arcs, expected) in cases {
        let net = Network::from_edges(n, true, &arcs);
        let r = haantjes_ricci_strong(&net, &comb(), 0, &strong).map_err(|e| e.to_string())?;
        check(close(r, expected, 1e-12), format!("{name}: {r} vs {expected}"))?;
    }
    Ok("6pi-3, 2pi-1, 6pi-2-sqrt2".into())
}

fn triangle_count_identity() -> Outcome {
    let at_two = HaantjesParams::default().with_max_path_edges(2);
    let unit = 3f64.sqrt() / 3.0;
    let mut correlated = 0;
    for seed in 0..50 {
        let net = generate(&GeneratorSpec::er(50, 0.15, seed)).unwrap();
        let mut mr = Vec::new();
        let mut hr = Vec::new();
        for e in 0..net.edge_count() {
            let (u, v) = net.edges()[e];
            let t = common::triangle_count(&net, u, v) as f64;
            let h = haantjes_ricci_simple(&net, &comb(), e, &at_two).unwrap();
            let m = menger_ricci(&net, &comb(), e).unwrap();
            check(h == t, format!("seed {seed} edge {e}: HR {h} vs {t} triangles"))?;
            check(close(m, unit * t, 1e-12), format!("seed {seed} edge {e}: MR {m} vs {}", unit * t))?;
            mr.push(m);
            hr.push(h);
        }
        if let Some(r) = pearson(&mr, &hr).unwrap() {
            check(close(r, 1.0, 1e-12), format!("seed {seed}: correlation {r}"))?;
            correlated += 1;
        }
    }
    Ok(format!("50 seeds, correlation 1 on {correlated} with nonzero variance"))
}

/// Per seed: Menger-Ricci of every edge and simple Haantjes-Ricci at cutoffs 0..=5.
struct Sample {
    mr: Vec<f64>,
    hr: Vec<Vec<f64>>,
}

fn sample(spec: GeneratorSpec) -> Sample {
    let net = generate(&spec).unwrap();
    let params = HaantjesParams::default();
    let mr = menger_ricci_all(&net, &comb()).unwrap();
    let mut hr = vec![Vec::with_capacity(net.edge_count()); params.max_path_edges + 1];
    for e in 0..net.edge_count() {
        for (k, v) in haantjes_ricci_simple_sweep(&net, &comb(), e, &params).unwrap().into_iter().enumerate() {
            hr[k].push(v);
        }
    }
    Sample { mr, hr }
}

struct Ensemble {
    name: &'static str,
    /// Seed-averaged correlation of Menger-Ricci with Haantjes-Ricci at cutoffs 2..=5.
    correlation: Vec<f64>,
    /// Seed-averaged standard deviation of Haantjes-Ricci at cutoff 5.
    spread: f64,
}

fn sample_sd(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

fn ensemble(name: &'static str, spec: impl Fn(u64) -> GeneratorSpec + Sync) -> Ensemble {
    let spec = &spec;
    let samples: Vec<Sample> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..10u64).map(|seed| scope.spawn(move || sample(spec(seed)))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let correlation = (2..=5)
        .map(|k| {
            let rs: Vec<f64> = samples.iter().filter_map(|s| pearson(&s.mr, &s.hr[k]).unwrap()).collect();
            rs.iter().sum::<f64>() / rs.len() as f64
        })
        .collect();
    let spread = samples.iter().map(|s| sample_sd(&s.hr[5])).sum::<f64>() / samples.len() as f64;
    Ensemble { name, correlation, spread }
}

fn model_ensembles() -> [Ensemble; 3] {
    [
        ensemble("WS", |seed| GeneratorSpec::ws(1000, 4, 0.5, seed)),
        ensemble("BA", |seed| GeneratorSpec::ba(1000, 5, 2, seed)),
        ensemble("ER", |seed| GeneratorSpec::er(1000, 4.0 / 999.0, seed)),
    ]
}

fn fmt_row(e: &Ensemble) -> String {
    let cols: Vec<String> = e.correlation.iter().map(|r| format!("{r:.3}")).collect();
    format!("{} [{}]", e.name, cols.join(", "))
}

fn correlation_decay(models: &[Ensemble; 3], elapsed: Duration) -> Outcome {
    let [ws, ba, er] = models;
    let rows = format!("{}; {}; {}", fmt_row(ws), fmt_row(ba), fmt_row(er));
    for m in [ws, ba] {
        for k in 1..m.correlation.len() {
            check(
                m.correlation[k] <= m.correlation[k - 1],
                format!("{} increases between cutoffs {} and {}: {rows}", m.name, k + 1, k + 2),
            )?;
        }
    }
    check(ba.correlation[3] >= 0.4, format!("BA at cutoff 5 below 0.4: {rows}"))?;
    check(er.correlation[3] < 0.25, format!("ER at cutoff 5 not below 0.25: {rows}"))?;
    check(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("{rows} in {elapsed:.1?}"))
}

fn distribution_breadth(models: &[Ensemble; 3]) -> Outcome {
    let [ws, ba, er] = models;
    let msg = format!("sd WS {:.3}, BA {:.3}, ER {:.3}", ws.spread, ba.spread, er.spread);
    check(ba.spread > ws.spread && ba.spread > er.spread, msg.clone())?;
    Ok(msg)
}

fn baseline_oracles() -> Outcome {
    let k3 = Network::from_edges(3, false, &[(0, 1), (1, 2), (2, 0)]);
    let c4 = Network::from_edges(4, false, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    let single = Network::from_edges(2, false, &[(0, 1)]);
    // Couplings between the neighbor measures, enumerated exhaustively.
    let k3_w1 = common::brute_force_transport(&[0.0, 0.5, 0.5], &[0.5, 0.0, 0.5], &[
        vec![0.0, 1.0, 1.0],
        vec![1.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0],
    ]);
    let c4_w1 = common::brute_force_transport(&[0.5, 0.5], &[0.5, 0.5], &[vec![1.0, 1.0], vec![1.0, 2.0]]);
    for (name, net, oracle) in [("K3", &k3, 1.0 - k3_w1), ("C4", &c4, 1.0 - c4_w1), ("edge", &single, 0.0)] {
        let k = ollivier(net, 0, 0.0).map_err(|e| e.to_string())?;
        check(close(k, oracle, 1e-9), format!("Ollivier {name}: {k} vs {oracle}"))?;
    }
    check(close(1.0 - k3_w1, 0.5, 1e-12) && close(1.0 - c4_w1, 0.0, 1e-12), "oracle values")?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=4);
        let masses = |rng: &mut ChaCha8Rng, k: usize| {
            let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / total).collect::<Vec<_>>()
        };
        let (a, b) = (masses(&mut rng, m), masses(&mut rng, n));
        let cost: Vec<Vec<f64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0.0..5.0)).collect()).collect();
        let exact = TransportProblem::new(a.clone(), b.clone(), cost.clone())
            .and_then(|p| p.solve())
            .map_err(|e| e.to_string())?;
        let brute = common::brute_force_transport(&a, &b, &cost);
        check(close(exact.cost, brute, 1e-9), format!("instance {trial}: {} vs {brute}", exact.cost))?;
    }

    for (name, net, expected) in [("K3", &k3, 3.0), ("C4", &c4, 0.0), ("edge", &single, 2.0)] {
        let f = forman_augmented(net, 0).unwrap();
        check(f == expected, format!("Forman {name}: {f}"))?;
    }
    let p3 = Network::from_edges(3, false, &[(0, 1), (1, 2)]);
    let s3 = Network::from_edges(4, false, &[(0, 1), (0, 2), (0, 3)]);
    for (name, net, expected) in [("P3", &p3, 2.0), ("K3", &k3, 1.0), ("S3", &s3, 3.0)] {
        let b = edge_betweenness(net);
        check(b.iter().all(|&x| x == expected), format!("betweenness {name}: {b:?}"))?;
    }
    Ok("Ollivier 1/2, 0, 0; 200 transport instances; Forman 3/0/2; betweenness 2/1/3".into())
}

fn run_property(cases: u32, strategy: impl Strategy<Value = (f64, f64, f64)>, test: impl Fn((f64, f64, f64)) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Every measure on `net`, as bit patterns (errors kept as their message).
fn fingerprint(net: &Network, weighted: bool) -> Vec<Result<u64, String>> {
    let ctx = if weighted { MetricContext::weighted() } else { comb() };
    let simple = HaantjesParams::default();
    let strong = HaantjesParams::strong();
    let bits = |r: Result<f64, String>| r.map(f64::to_bits);
    let mut out = Vec::new();
    for e in 0..net.edge_count() {
        out.push(bits(menger_ricci(net, &ctx, e).map_err(|x| x.to_string())));
        out.push(bits(haantjes_ricci_simple(net, &ctx, e, &simple).map_err(|x| x.to_string())));
        out.push(bits(haantjes_ricci_strong(net, &ctx, e, &strong).map_err(|x| x.to_string())));
        out.push(bits(edge_excess(net, &ctx, e).map_err(|x| x.to_string())));
        out.push(bits(edge_aspect_ratio(net, &ctx, e).map_err(|x| x.to_string())));
        out.push(bits(forman_augmented(net, e).map_err(|x| x.to_string())));
        out.push(bits(ollivier(net, e, 0.0).map_err(|x| x.to_string())));
    }
    out.extend(edge_betweenness(net).into_iter().map(|x| Ok(x.to_bits())));
    out
}

fn vertex_fingerprint(net: &Network, v: usize) -> Vec<u64> {
    let params = HaantjesParams::default();
    vec![
        menger_scalar(net, &comb(), v).unwrap().to_bits(),
        haantjes_scalar(net, &comb(), v, &params).unwrap().to_bits(),
    ]
}

fn property_suites() -> Outcome {
    let n = 10_000;
    run_property(n, (0.01f64..100.0, 0.0f64..100.0, 0.0f64..100.0), |(chord, extra, more)| {
        let k1 = haantjes_path(chord + extra, chord).unwrap();
        let k2 = haantjes_path(chord + extra + more, chord).unwrap();
        prop_assert!(k1 >= 0.0);
        prop_assert_eq!(k1 == 0.0, chord + extra == chord);
        if chord + extra + more > chord + extra {
            prop_assert!(k2 > k1);
        }
        Ok(())
    })?;
    let sides = (0.05f64..1.0, 0.05f64..1.0, 0.0f64..1.0).prop_map(|(a, b, t)| {
        // Third side strictly between |a - b| and a + b.
        let lo = (a - b).abs();
        (a, b, lo + (a + b - lo) * (0.02 + 0.96 * t))
    });
    run_property(n, sides, |(a, b, c)| {
        for g in [Geometry::Euclidean, Geometry::Spherical, Geometry::Hyperbolic] {
            let base = menger_triangle(&MetricTriangle::new(a, b, c), g);
            let Ok(base) = base else { continue };
            prop_assert!(base > 0.0);
            for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                prop_assert_eq!(menger_triangle(&MetricTriangle::new(x, y, z), g).unwrap(), base);
            }
        }
        let euc = menger_triangle(&MetricTriangle::new(a, b, c), Geometry::Euclidean).unwrap();
        for lambda in [0.1, 3.0, 250.0] {
            let scaled = menger_triangle(&MetricTriangle::new(lambda * a, lambda * b, lambda * c), Geometry::Euclidean).unwrap();
            prop_assert!((scaled - lambda * euc).abs() <= 1e-9 * lambda * euc);
        }
        Ok(())
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..20u64 {
        let base = generate(&GeneratorSpec::er(14, 0.3, trial)).unwrap();
        let weighted = trial % 2 == 1;
        let mut b = Network::builder(base.vertex_count(), false);
        for &(u, v) in base.edges() {
            let w = if weighted { rng.gen_range(3..=5) as f64 } else { 1.0 };
            b.add_weighted_edge(u, v, w);
        }
        let net = b.build().unwrap();
        let mut perm: Vec<usize> = (0..net.vertex_count()).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let moved = net.relabeled(&perm);
        check(fingerprint(&net, weighted) == fingerprint(&moved, weighted), format!("graph {trial}: edge measures changed"))?;
        for v in 0..net.vertex_count() {
            check(vertex_fingerprint(&net, v) == vertex_fingerprint(&moved, perm[v]), format!("graph {trial}: vertex {v}"))?;
        }
    }
    // The excess helpers themselves.
    check(excess(1.0, 1.0, 2.0).unwrap() == 2.0 && aspect_ratio(1.0, 1.0, 1.0).unwrap() == 1.0, "excess examples")?;
    Ok(format!("{n} length pairs, {n} triangles, 20 relabeled graphs bit-identical"))
}

fn karate_smoke() -> Outcome {
    let net = common::karate();
    check(net.vertex_count() == 34 && net.edge_count() == 78, "fixture size")?;
    let started = Instant::now();
    let params = HaantjesParams::default();
    for e in 0..net.edge_count() {
        menger_ricci(&net, &comb(), e).map_err(|x| x.to_string())?;
        haantjes_ricci_simple(&net, &comb(), e, &params).map_err(|x| x.to_string())?;
        forman_augmented(&net, e).map_err(|x| x.to_string())?;
        ollivier(&net, e, 0.0).map_err(|x| x.to_string())?;
    }
    edge_betweenness(&net);
    let elapsed = started.elapsed();
    check(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("five measures on 78 edges in {elapsed:.2?}"))
}

fn main() {
    let mut failed = 0;
    let mut report = |label: &str, run: &dyn Fn() -> Outcome| {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS  {label}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {label}: {detail}");
            }
        }
    };
    report("criterion 1, lattice strong Haantjes-Ricci", &lattice_strong_ricci);
    report("criterion 2, polyhedra simple Haantjes-Ricci", &polyhedra_simple_ricci);
    report("criterion 3, Menger spherical and ratio checks", &menger_checks);
    report("criterion 4, directed strong Haantjes-Ricci", &directed_strong_ricci);
    report("criterion 5, triangle-count identity", &triangle_count_identity);
    let started = Instant::now();
    let models = model_ensembles();
    let elapsed = started.elapsed();
    report("criterion 6, correlation decay with cutoff", &|| correlation_decay(&models, elapsed));
    report("criterion 7, distribution breadth", &|| distribution_breadth(&models));
    report("criterion 8, baseline oracles", &baseline_oracles);
    report("criterion 9, property suites", &property_suites);
    report("karate smoke test", &karate_smoke);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
