use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use netcurv::baselines::{edge_betweenness, forman_augmented, ollivier, pearson};
use netcurv::generators::{build_lattice, build_polyhedron, generate as generate_model, GeneratorSpec, LatticeKind, LatticeSpec};
use netcurv::graph::{load_edge_list, load_faces, write_edge_list, write_faces, LoadOptions};
use netcurv::haantjes::{
    edge_aspect_ratio, edge_excess, haantjes_ricci, haantjes_ricci_directional, haantjes_ricci_simple_sweep,
    haantjes_scalar, HaantjesParams, Variant,
};
use netcurv::menger::{menger_ricci, menger_scalar};
use netcurv::{EdgeId, Geometry, MetricContext, Network};

use crate::cli::{
    CompareArgs, CurvatureArgs, Format, GenerateArgs, GeometryArg, GraphArgs, HistogramArgs, LatticeArg, Measure,
    MeasureArgs, MetricArg, ModelArgs, OutputArgs,
};
use crate::error::{write_failed, CliError};
use crate::report::{emit, sidecar_path, Cell, RunManifest, Table};

struct Loaded {
    net: Network,
    ctx: MetricContext,
    descriptor: Value,
}

fn load_graph(args: &GraphArgs, geometry: Option<GeometryArg>) -> Result<Loaded, CliError> {
    let text = read_input(&args.input)?;
    let (mut net, summary) = load_edge_list(
        &text,
        LoadOptions {
            directed: args.directed,
            weighted: args.weighted,
        },
    )?;
    if summary.duplicate_edges > 0 {
        eprintln!("netcurv: warning: dropped {} duplicate edge lines", summary.duplicate_edges);
    }
    if let Some(path) = &args.faces {
        net = load_faces(&net, &read_input(path)?)?;
    }
    let metric = args
        .metric
        .unwrap_or(if args.weighted { MetricArg::Weights } else { MetricArg::Comb });
    if metric == MetricArg::Weights && !args.weighted {
        return Err(CliError::Usage("--metric weights requires --weighted".into()));
    }
    let ctx = match metric {
        MetricArg::Comb => MetricContext::combinatorial(),
        MetricArg::Weights => MetricContext::weighted(),
        MetricArg::Pathdeg => MetricContext::path_degree(),
    };
    let ctx = ctx.with_geometry(match geometry.unwrap_or(GeometryArg::Euc) {
        GeometryArg::Euc => Geometry::Euclidean,
        GeometryArg::Sph => Geometry::Spherical,
        GeometryArg::Hyp => Geometry::Hyperbolic,
    });
    ctx.check(&net)?;
    let descriptor = json!({
        "path": args.input.display().to_string(),
        "faces": args.faces.as_ref().map(|p| p.display().to_string()),
        "directed": net.is_directed(),
        "weighted": args.weighted,
        "vertices": net.vertex_count(),
        "edges": net.edge_count(),
    });
    Ok(Loaded { net, ctx, descriptor })
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn haantjes_params(opts: &MeasureArgs, variant: Variant) -> HaantjesParams {
    HaantjesParams {
        max_path_edges: opts.max_path_len,
        variant,
        weighted_sign_rule: opts.weighted_sign_rule,
        use_face_weights: opts.face_weights,
    }
}

fn check_measure_flags(measures: &[Measure], opts: &MeasureArgs) -> Result<(), CliError> {
    if opts.geometry.is_some() && measures.iter().any(|&m| m != Measure::MengerRicci) {
        return Err(CliError::Usage("--geometry applies to menger-ricci only".into()));
    }
    if !(0.0..1.0).contains(&opts.idleness) {
        return Err(CliError::Usage(format!("--idleness must lie in [0, 1), got {}", opts.idleness)));
    }
    Ok(())
}

fn parameters(measures: &[Measure], ctx: &MetricContext, opts: &MeasureArgs) -> Value {
    let mut p = json!({
        "measures": measures.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "metric": ctx,
    });
    if measures.iter().any(|m| m.is_haantjes()) {
        let variant = if measures.contains(&Measure::HaantjesStrong) {
            Variant::Strong
        } else {
            Variant::Simple
        };
        p["haantjes"] = json!(haantjes_params(opts, variant));
    }
    if measures.contains(&Measure::Ollivier) {
        p["idleness"] = json!(opts.idleness);
    }
    if measures.contains(&Measure::Betweenness) {
        p["normalize_betweenness"] = json!(opts.normalize_betweenness);
    }
    p
}

fn thread_pool(threads: Option<usize>) -> Result<Option<rayon::ThreadPool>, CliError> {
    match threads {
        None => Ok(None),
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(Some)
            .map_err(|e| CliError::Compute(format!("cannot start worker threads: {e}"))),
    }
}

fn in_pool<T: Send>(pool: &Option<rayon::ThreadPool>, f: impl FnOnce() -> T + Send) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

/// Evaluate `f` on every edge, in edge order.
fn per_edge<F>(net: &Network, f: F) -> Result<Vec<f64>, CliError>
where
    F: Fn(EdgeId) -> Result<f64, CliError> + Sync + Send,
{
    (0..net.edge_count()).into_par_iter().map(f).collect()
}

fn edge_values(net: &Network, ctx: &MetricContext, measure: Measure, opts: &MeasureArgs) -> Result<Vec<f64>, CliError> {
    match measure {
        Measure::MengerRicci => per_edge(net, |e| Ok(menger_ricci(net, ctx, e)?)),
        Measure::HaantjesSimple | Measure::HaantjesStrong => {
            let variant = if measure == Measure::HaantjesStrong {
                Variant::Strong
            } else {
                Variant::Simple
            };
            let params = haantjes_params(opts, variant);
            per_edge(net, |e| Ok(haantjes_ricci(net, ctx, e, &params)?))
        }
        Measure::HaantjesDirectional => {
            let params = haantjes_params(opts, Variant::Simple);
            per_edge(net, |e| {
                let (u, v) = net.endpoints(e)?;
                Ok(haantjes_ricci_directional(net, ctx, u, v, &params)?)
            })
        }
        Measure::Forman => per_edge(net, |e| Ok(forman_augmented(net, e)?)),
        Measure::Ollivier => {
            if net.is_directed() {
                // Reject up front rather than once per edge.
                ollivier(net, 0, opts.idleness)?;
            }
            per_edge(net, |e| Ok(ollivier(net, e, opts.idleness)?))
        }
        Measure::Betweenness => {
            let mut values = edge_betweenness(net);
            if opts.normalize_betweenness {
                let n = net.vertex_count() as f64;
                let pairs = if net.is_directed() { n * (n - 1.0) } else { n * (n - 1.0) / 2.0 };
                if pairs > 0.0 {
                    values.iter_mut().for_each(|b| *b /= pairs);
                }
            }
            Ok(values)
        }
        Measure::Excess => per_edge(net, |e| Ok(edge_excess(net, ctx, e)?)),
        Measure::AspectRatio => per_edge(net, |e| Ok(edge_aspect_ratio(net, ctx, e)?)),
    }
}

fn vertex_values(net: &Network, ctx: &MetricContext, measure: Measure, opts: &MeasureArgs) -> Result<Vec<f64>, CliError> {
    let vertices = 0..net.vertex_count();
    match measure {
        Measure::MengerRicci => vertices.into_par_iter().map(|v| Ok(menger_scalar(net, ctx, v)?)).collect(),
        Measure::HaantjesSimple | Measure::HaantjesStrong => {
            let variant = if measure == Measure::HaantjesStrong {
                Variant::Strong
            } else {
                Variant::Simple
            };
            let params = haantjes_params(opts, variant);
            vertices
                .into_par_iter()
                .map(|v| Ok(haantjes_scalar(net, ctx, v, &params)?))
                .collect()
        }
        other => Err(CliError::Usage(format!("--scalar is not defined for {}", other.name()))),
    }
}

fn render(table: &Table, manifest: &RunManifest, output: &OutputArgs) -> String {
    match output.format {
        Format::Csv => table.csv(manifest),
        Format::Json => table.json(manifest),
    }
}

pub fn curvature(args: CurvatureArgs) -> Result<(), CliError> {
    let start = Instant::now();
    check_measure_flags(&[args.measure], &args.options)?;
    if args.scalar && !args.measure.has_scalar() {
        return Err(CliError::Usage(format!("--scalar is not defined for {}", args.measure.name())));
    }
    let Loaded { net, ctx, descriptor } = load_graph(&args.graph, args.options.geometry)?;
    let pool = thread_pool(args.output.threads)?;

    let mut parameters = parameters(&[args.measure], &ctx, &args.options);
    parameters["scalar"] = json!(args.scalar);
    let manifest = RunManifest::new("curvature", descriptor, parameters, Vec::new());

    let table = if args.scalar {
        let values = in_pool(&pool, || vertex_values(&net, &ctx, args.measure, &args.options))?;
        let mut table = Table::new(vec!["vertex", "value"]);
        for (v, x) in values.into_iter().enumerate() {
            table.rows.push(vec![Cell::Text(net.label(v)), Cell::Number(x)]);
        }
        table
    } else {
        let values = in_pool(&pool, || edge_values(&net, &ctx, args.measure, &args.options))?;
        let mut table = Table::new(vec!["u", "v", "value"]);
        for (&(u, v), x) in net.edges().iter().zip(values) {
            table
                .rows
                .push(vec![Cell::Text(net.label(u)), Cell::Text(net.label(v)), Cell::Number(x)]);
        }
        table
    };
    let body = render(&table, &manifest, &args.output);
    emit(args.output.output.as_deref(), &body, &manifest, start.elapsed())
}

struct Summary {
    mean: f64,
    sd: Option<f64>,
    min: f64,
    max: f64,
}

fn summarize(xs: &[f64]) -> Summary {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let sd = (xs.len() > 1).then(|| (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt());
    Summary {
        mean,
        sd,
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

fn parse_range<T: std::str::FromStr>(text: &str, flag: &str) -> Result<(T, T), CliError> {
    let bad = || CliError::Usage(format!("{flag} expects `lo:hi`, got `{text}`"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

pub fn compare(args: CompareArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let measures = [args.a, args.b];
    check_measure_flags(&measures, &args.options)?;
    let cutoffs: Vec<usize> = match &args.sweep_max_path_len {
        None => vec![args.options.max_path_len],
        Some(text) => {
            let (lo, hi) = parse_range::<usize>(text, "--sweep-max-path-len")?;
            if lo > hi {
                return Err(CliError::Usage(format!("--sweep-max-path-len: {lo} > {hi}")));
            }
            (lo..=hi).collect()
        }
    };
    let Loaded { net, ctx, descriptor } = load_graph(&args.graph, args.options.geometry)?;
    if net.edge_count() < 2 {
        return Err(CliError::Input("comparison needs at least two edges".into()));
    }
    let pool = thread_pool(args.output.threads)?;
    let top = *cutoffs.last().expect("at least one cutoff");

    let mut parameters = parameters(&measures, &ctx, &args.options);
    parameters["max_path_lens"] = json!(cutoffs);
    let manifest = RunManifest::new("compare", descriptor, parameters, Vec::new());

    // Simple Haantjes at every cutoff comes from one enumeration per edge.
    let simple_sweep: Option<Vec<Vec<f64>>> = if measures.contains(&Measure::HaantjesSimple) {
        let params = haantjes_params(&args.options, Variant::Simple).with_max_path_edges(top);
        Some(in_pool(&pool, || {
            (0..net.edge_count())
                .into_par_iter()
                .map(|e| haantjes_ricci_simple_sweep(&net, &ctx, e, &params).map_err(CliError::from))
                .collect::<Result<Vec<_>, _>>()
        })?)
    } else {
        None
    };
    let mut fixed: [Option<Vec<f64>>; 2] = [None, None];
    for (slot, &m) in fixed.iter_mut().zip(&measures) {
        if !m.is_haantjes() {
            *slot = Some(in_pool(&pool, || edge_values(&net, &ctx, m, &args.options))?);
        }
    }

    let mut table = Table::new(vec![
        "max_path_len",
        "n",
        "pearson",
        "a_mean",
        "a_sd",
        "a_min",
        "a_max",
        "b_mean",
        "b_sd",
        "b_min",
        "b_max",
    ]);
    for &k in &cutoffs {
        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(2);
        for (i, &m) in measures.iter().enumerate() {
            let values = match (&fixed[i], m) {
                (Some(v), _) => v.clone(),
                (None, Measure::HaantjesSimple) => simple_sweep
                    .as_ref()
                    .expect("sweep computed")
                    .iter()
                    .map(|per_cutoff| per_cutoff[k])
                    .collect(),
                (None, _) => {
                    let opts = MeasureArgs {
                        max_path_len: k,
                        ..args.options.clone()
                    };
                    in_pool(&pool, || edge_values(&net, &ctx, m, &opts))?
                }
            };
            columns.push(values);
        }
        let r = pearson(&columns[0], &columns[1])?;
        let mut row = vec![
            Cell::Int(k),
            Cell::Int(net.edge_count()),
            r.map_or(Cell::Undefined, Cell::Number),
        ];
        for values in &columns {
            let s = summarize(values);
            row.push(Cell::Number(s.mean));
            row.push(s.sd.map_or(Cell::Undefined, Cell::Number));
            row.push(Cell::Number(s.min));
            row.push(Cell::Number(s.max));
        }
        table.rows.push(row);
    }
    let body = render(&table, &manifest, &args.output);
    emit(args.output.output.as_deref(), &body, &manifest, start.elapsed())
}

fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    text.split('x')
        .map(|d| {
            d.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--dims expects sizes like `20x20`, got `{text}`")))
        })
        .collect()
}

pub fn generate(args: GenerateArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let (net, parameters, seeds) = match &args.model {
        ModelArgs::Er { n, p, seed } => {
            let spec = GeneratorSpec::er(*n, *p, *seed);
            (generate_model(&spec)?, json!(spec), vec![*seed])
        }
        ModelArgs::Ws { n, k, beta, seed } => {
            let spec = GeneratorSpec::ws(*n, *k, *beta, *seed);
            (generate_model(&spec)?, json!(spec), vec![*seed])
        }
        ModelArgs::Ba { n, m0, m, seed } => {
            let spec = GeneratorSpec::ba(*n, *m0, *m, *seed);
            (generate_model(&spec)?, json!(spec), vec![*seed])
        }
        ModelArgs::Lattice { kind, dims, wrap } => {
            let kind = match kind {
                LatticeArg::Triangular => LatticeKind::Triangular,
                LatticeArg::Square => LatticeKind::Square,
                LatticeArg::Hexagonal => LatticeKind::Hexagonal,
                LatticeArg::Cubic => LatticeKind::Cubic,
            };
            let spec = LatticeSpec::new(kind, &parse_dims(dims)?, *wrap);
            (build_lattice(&spec)?, json!(spec), Vec::new())
        }
        ModelArgs::Polyhedron { name } => (build_polyhedron(name)?, json!({ "polyhedron": name }), Vec::new()),
    };
    let has_faces = net.faces().is_some();
    if has_faces && args.output.is_none() {
        return Err(CliError::Usage("networks with faces need --output for the faces file".into()));
    }
    let descriptor = json!({
        "vertices": net.vertex_count(),
        "edges": net.edge_count(),
        "faces": net.faces().map(<[_]>::len),
    });
    let manifest = RunManifest::new("generate", descriptor, parameters, seeds);

    let mut body = manifest.comment_line().into_bytes();
    write_edge_list(&net, &mut body, false).expect("writing to memory");
    let body = String::from_utf8(body).expect("edge list is UTF-8");
    if let (true, Some(path)) = (has_faces, &args.output) {
        let mut faces = manifest.comment_line().into_bytes();
        write_faces(&net, &mut faces).expect("writing to memory");
        let faces_path = sidecar_path(path, ".faces");
        fs::write(&faces_path, faces).map_err(|e| write_failed(&faces_path, e))?;
    }
    emit(args.output.as_deref(), &body, &manifest, start.elapsed())
}

pub fn histogram(args: HistogramArgs) -> Result<(), CliError> {
    let start = Instant::now();
    if args.bins == 0 {
        return Err(CliError::Usage("--bins must be positive".into()));
    }
    let range = match &args.range {
        None => None,
        Some(text) => {
            let (lo, hi) = parse_range::<f64>(text, "--range")?;
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(CliError::Usage(format!("--range needs finite lo < hi, got `{text}`")));
            }
            Some((lo, hi))
        }
    };
    let values = crate::report::read_values(&read_input(&args.report)?)?;
    if values.is_empty() {
        return Err(CliError::Input(format!("{} has no rows", args.report.display())));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Input(format!("{} contains non-finite values", args.report.display())));
    }
    let (lo, hi) = range.unwrap_or_else(|| {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if min == max {
            // A constant sample gets a unit-width window centred on it.
            (min - 0.5, max + 0.5)
        } else {
            (min, max)
        }
    });
    let width = (hi - lo) / args.bins as f64;
    let mut counts = vec![0usize; args.bins];
    let mut outside = 0usize;
    for &x in &values {
        if x < lo || x > hi {
            outside += 1;
            continue;
        }
        let bin = (((x - lo) / width).floor() as usize).min(args.bins - 1);
        counts[bin] += 1;
    }
    let manifest = RunManifest::new(
        "histogram",
        json!({ "path": args.report.display().to_string(), "rows": values.len(), "outside_range": outside }),
        json!({ "bins": args.bins, "range": [lo, hi] }),
        Vec::new(),
    );
    let mut table = Table::new(vec!["bin_low", "bin_high", "count"]);
    for (i, &c) in counts.iter().enumerate() {
        let high = if i + 1 == args.bins { hi } else { lo + width * (i + 1) as f64 };
        table
            .rows
            .push(vec![Cell::Number(lo + width * i as f64), Cell::Number(high), Cell::Int(c)]);
    }
    emit(args.output.as_deref(), &table.csv(&manifest), &manifest, start.elapsed())
}
