use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use trigauge::bench::{self, BenchRun};
use trigauge::genlab::{GenSpec, Model, GRAPH500_INITIATOR};
use trigauge::graph::{canonicalize, parse_edge_list, write_tsv, ParseOptions};
use trigauge::modelfit::{self, GroupBy, ModelFit};
use trigauge::tricount::{with_workers, KernelInputs, DEFAULT_ORACLE_LIMIT};
use trigauge::{Algorithm, CsrGraph};

use crate::args::{
    BenchArgs, Cli, Command, CountArgs, FitArgs, GenArgs, GenSpecArgs, GroupArg, ModelArg,
};
use crate::config::FileConfig;
use crate::error::CliError;

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let config = FileConfig::load(cli.config.as_deref())?;
    let workers = config.workers(cli.workers)?;
    match cli.command {
        Command::Count(args) => cmd_count(&args, &config, workers, out),
        Command::Gen(args) => cmd_gen(&args, &config, out),
        Command::Bench(args) => cmd_bench(&args, &config, workers, out),
        Command::Fit(args) => cmd_fit(&args, &config, out),
    }
}

/// `all`, or a comma-separated list of kernel tags.
pub fn parse_algorithms(text: &str) -> Result<Vec<Algorithm>, CliError> {
    if text.trim() == "all" {
        return Ok(Algorithm::ALL.to_vec());
    }
    let mut algos = Vec::new();
    for tag in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let a: Algorithm = tag.parse()?;
        if !algos.contains(&a) {
            algos.push(a);
        }
    }
    if algos.is_empty() {
        return Err(CliError::InvalidInput("no algorithm selected".into()));
    }
    Ok(algos)
}

/// Reads and canonicalizes an edge-list file. An empty file is the empty
/// graph.
pub fn load_graph(path: &Path) -> Result<CsrGraph, CliError> {
    let file =
        File::open(path).map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    let edges = parse_edge_list(
        BufReader::new(file),
        &ParseOptions::default().allow_empty(true),
    )
    .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(canonicalize(&edges))
}

/// All counts must match; returns the common count.
pub fn check_agreement(counts: &[(Algorithm, u64)]) -> Result<u64, CliError> {
    let Some(&(first_algo, first)) = counts.first() else {
        return Err(CliError::InvalidInput("no algorithm selected".into()));
    };
    for &(algo, n) in &counts[1..] {
        if n != first {
            return Err(CliError::Mismatch(format!(
                "{first_algo} counted {first} triangles but {algo} counted {n}"
            )));
        }
    }
    Ok(first)
}

pub fn cmd_count(
    args: &CountArgs,
    config: &FileConfig,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let algos = parse_algorithms(
        args.algo
            .as_deref()
            .or(config.algo.as_deref())
            .unwrap_or("adj2"),
    )?;
    let graph = load_graph(&args.input)?;
    let limit = args
        .oracle_limit
        .or(config.oracle_limit)
        .unwrap_or(DEFAULT_ORACLE_LIMIT);
    let inputs = KernelInputs::prepare(&graph, &algos).with_oracle_limit(limit);
    let counts = with_workers(workers, || {
        algos
            .iter()
            .map(|&a| inputs.count(a))
            .collect::<Result<Vec<_>, _>>()
    })??;
    for c in &counts {
        writeln!(
            out,
            "triangles={} algo={} n_edges={}",
            c.count,
            c.algorithm,
            graph.n_edges()
        )?;
    }
    check_agreement(
        &counts
            .iter()
            .map(|c| (c.algorithm, c.count))
            .collect::<Vec<_>>(),
    )?;
    Ok(())
}

pub fn build_spec(args: &GenSpecArgs) -> Result<GenSpec, CliError> {
    let missing =
        |flag: &str| CliError::InvalidInput(format!("--{flag} is required for this model"));
    let model = match args.model.ok_or_else(|| missing("model"))? {
        ModelArg::Er => Model::ErdosRenyi {
            n: args.n.ok_or_else(|| missing("n"))?,
            p: args.p.ok_or_else(|| missing("p"))?,
        },
        ModelArg::Kron => Model::KronPower {
            seed_graph: load_graph(
                args.seed_graph
                    .as_deref()
                    .ok_or_else(|| missing("seed-graph"))?,
            )?,
            k: args.k.ok_or_else(|| missing("k"))?,
        },
        ModelArg::Skron => {
            let initiator = match args.initiator.as_deref() {
                None => GRAPH500_INITIATOR,
                Some(&[a, b, c, d]) => [[a, b], [c, d]],
                Some(other) => {
                    return Err(CliError::InvalidInput(format!(
                        "--initiator takes 4 values, got {}",
                        other.len()
                    )))
                }
            };
            Model::StochasticKron {
                initiator,
                scale: args.scale.ok_or_else(|| missing("scale"))?,
                edge_factor: args.edge_factor.unwrap_or(16),
            }
        }
    };
    Ok(GenSpec {
        model,
        rng_seed: args.rng_seed.unwrap_or(0),
    })
}

pub fn sidecar_path(output: &Path) -> std::path::PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".meta.json");
    name.into()
}

pub fn cmd_gen(args: &GenArgs, config: &FileConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = build_spec(&config.merge_gen(&args.spec)?)?;
    let graph = spec.generate()?;
    let mut tsv = BufWriter::new(File::create(&args.output)?);
    write_tsv(&graph, &mut tsv)?;
    let meta = serde_json::to_string_pretty(&spec.metadata(&graph))
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    std::fs::write(sidecar_path(&args.output), meta + "\n")?;
    writeln!(
        out,
        "n_edges={} n_vertices={} output={}",
        graph.n_edges(),
        graph.n_vertices(),
        args.output.display()
    )?;
    Ok(())
}

/// Benchmarks each algorithm through `runner` and fails if their triangle
/// counts differ. `runner` is [`bench::run_benchmark`] outside of tests.
pub fn bench_graph<F>(
    inputs: &KernelInputs<'_>,
    graph_id: &str,
    algos: &[Algorithm],
    reps: u32,
    workers: usize,
    mut runner: F,
) -> Result<Vec<BenchRun>, CliError>
where
    F: FnMut(&KernelInputs<'_>, &str, Algorithm, u32, usize) -> Result<BenchRun, bench::BenchError>,
{
    let runs = algos
        .iter()
        .map(|&a| runner(inputs, graph_id, a, reps, workers))
        .collect::<Result<Vec<_>, _>>()?;
    check_agreement(
        &runs
            .iter()
            .map(|r| (r.record.algorithm, r.record.triangle_count))
            .collect::<Vec<_>>(),
    )?;
    Ok(runs)
}

pub fn cmd_bench(
    args: &BenchArgs,
    config: &FileConfig,
    workers: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let algos = parse_algorithms(
        args.algo
            .as_deref()
            .or(config.algo.as_deref())
            .unwrap_or("adj2,lu,incidence"),
    )?;
    let reps = args
        .reps
        .or(config.reps)
        .unwrap_or(bench::DEFAULT_REPETITIONS);
    if reps == 0 {
        return Err(CliError::InvalidInput("--reps must be at least 1".into()));
    }
    let (graph, default_id) = match &args.input {
        Some(path) => (
            load_graph(path)?,
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
        ),
        None => {
            let spec = build_spec(&config.merge_gen(&args.spec)?)?;
            (spec.generate()?, spec.label())
        }
    };
    let graph_id = args.graph_id.clone().unwrap_or(default_id);
    let limit = args
        .oracle_limit
        .or(config.oracle_limit)
        .unwrap_or(DEFAULT_ORACLE_LIMIT);
    let inputs = KernelInputs::prepare(&graph, &algos).with_oracle_limit(limit);
    let runs = bench_graph(
        &inputs,
        &graph_id,
        &algos,
        reps,
        workers,
        bench::run_benchmark,
    )?;
    let records: Vec<_> = runs.iter().map(|r| r.record.clone()).collect();
    bench::append_records(&args.records, &records)?;
    for (run, cmp) in runs.iter().zip(modelfit::compare_sota(&records)) {
        let r = &run.record;
        if run.coarse_timer {
            eprintln!(
                "warning: {} timing is within the clock resolution",
                r.algorithm
            );
        }
        writeln!(
            out,
            "graph={} algo={} n_edges={} triangles={} t_tri={:.6e}s rate={:.4e} eps vs_sota2017={:.3e} vs_sota2018={:.3e}",
            r.graph_id,
            r.algorithm,
            r.n_edges,
            r.triangle_count,
            r.t_tri_seconds,
            r.rate_eps,
            cmp.ratio_2017,
            cmp.ratio_2018
        )?;
    }
    Ok(())
}

fn group_by(args: &FitArgs, config: &FileConfig) -> Result<GroupBy, CliError> {
    let arg = match (args.group_by, &config.group_by) {
        (Some(g), _) => g,
        (None, Some(name)) => GroupArg::from_str(name, true)
            .map_err(|_| CliError::InvalidInput(format!("config: unknown group_by `{name}`")))?,
        (None, None) => GroupArg::Algorithm,
    };
    Ok(match arg {
        GroupArg::Algorithm => GroupBy::Algorithm,
        GroupArg::Graph => GroupBy::GraphId,
        GroupArg::AlgorithmWorkers => GroupBy::AlgorithmWorkers,
    })
}

pub fn cmd_fit(args: &FitArgs, config: &FileConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let records = bench::read_records_file(&args.records)?;
    if records.is_empty() {
        return Err(CliError::InvalidInput(format!(
            "{} has no records",
            args.records.display()
        )));
    }
    let by = group_by(args, config)?;
    let breakpoint = args.breakpoint.or(config.breakpoint);
    let mut fits: Vec<(String, ModelFit)> = Vec::new();
    let mut plot = Vec::new();
    for (group, points) in modelfit::points_by_group(&records, by) {
        let min_edges = args
            .min_edges
            .or(config.min_edges)
            .unwrap_or_else(|| modelfit::default_min_edges(&points));
        let pieces = modelfit::fit_piecewise(&points, min_edges, breakpoint)
            .map_err(|e| e.in_group(&group))?;
        let named: Vec<String> = match (breakpoint, pieces.len()) {
            (Some(bp), 2) => vec![format!("{group}:<{bp:e}"), format!("{group}:>={bp:e}")],
            _ => vec![group.clone()],
        };
        for (piece, (name, fit)) in named.into_iter().zip(pieces).enumerate() {
            let in_piece = |ne: f64| match breakpoint {
                None => true,
                Some(bp) => (ne >= bp) == (piece == 1),
            };
            let covered: Vec<_> = points
                .iter()
                .copied()
                .filter(|p| p.n_edges >= fit.fit_min_edges && in_piece(p.n_edges))
                .collect();
            plot.extend(modelfit::plot_rows(&name, &covered, &fit));
            fits.push((name, fit));
        }
    }
    let table = modelfit::emit_fit_table(&fits)?;
    out.write_all(table.as_bytes())?;
    if let Some(path) = &args.table {
        std::fs::write(path, &table)?;
    }
    if let Some(path) = &args.table_csv {
        modelfit::write_fit_csv(&fits, BufWriter::new(File::create(path)?))?;
    }
    if let Some(path) = &args.plot {
        modelfit::write_plot_csv(&plot, BufWriter::new(File::create(path)?))?;
    }
    if let Some(path) = &args.compare {
        modelfit::write_comparison_csv(
            &modelfit::compare_sota(&records),
            BufWriter::new(File::create(path)?),
        )?;
    }
    Ok(())
}
