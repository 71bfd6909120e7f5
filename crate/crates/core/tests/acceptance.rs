//! End-to-end acceptance checks. Run with
//! `cargo test -p trigauge --test acceptance -- --nocapture` to see one
//! PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};

use trigauge::bench::{self, BenchRecord};
use trigauge::genlab::{
    gen_erdos_renyi, gen_kron_power, gen_stochastic_kron, GenSpec, Model, GRAPH500_INITIATOR,
    UNIFORM_INITIATOR,
};
use trigauge::graph::{canonicalize, fixtures, parse_edge_list, to_tsv_string, ParseOptions};
use trigauge::modelfit::{
    compare_sota, default_min_edges, evaluate_model, fit_loglog, Beta, FitPoint, SotaLine,
};
use trigauge::tricount::{with_workers, KernelInputs};
use trigauge::{Algorithm, CsrGraph, TriangleCount};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Every labelled simple graph on `n` vertices.
fn all_graphs(n: usize) -> Vec<CsrGraph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|i| (i + 1..n as u32).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p);
            CsrGraph::from_index_pairs(n, chosen).unwrap()
        })
        .collect()
}

fn binomial3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Runs the requested kernels and checks the aggregate of each against its
/// divisor. Returns the counts in the order given.
fn counts(
    graph: &CsrGraph,
    algos: &[Algorithm],
    divisibility: &mut Divisibility,
) -> Result<Vec<u64>, String> {
    let inputs = KernelInputs::prepare(graph, algos);
    algos
        .iter()
        .map(|&a| {
            let c = inputs.count(a).map_err(|e| format!("{a}: {e}"))?;
            divisibility.record(&c);
            Ok(c.count)
        })
        .collect()
}

#[derive(Default)]
struct Divisibility {
    checked: usize,
    violations: Vec<String>,
}

impl Divisibility {
    fn record(&mut self, c: &TriangleCount) {
        self.checked += 1;
        let d = c.algorithm.divisor();
        if !c.aggregate.is_multiple_of(d) || c.aggregate != d * c.count {
            self.violations.push(format!(
                "{} aggregate {} count {}",
                c.algorithm, c.aggregate, c.count
            ));
        }
    }
}

fn two_triangles_fixture() -> Outcome {
    let edges = parse_edge_list(
        fixtures::TWO_TRIANGLES_TSV.as_bytes(),
        &ParseOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let graph = canonicalize(&edges);
    ensure!(
        (graph.n_vertices(), graph.n_edges()) == (4, 5),
        "fixture parsed to {} vertices, {} edges",
        graph.n_vertices(),
        graph.n_edges()
    );
    let inputs = KernelInputs::prepare(&graph, &Algorithm::ALL);
    // The first call pays for starting the global worker pool.
    inputs.count(Algorithm::Adj2).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let results: Vec<_> = Algorithm::ALL.iter().map(|&a| inputs.count(a)).collect();
    let elapsed = start.elapsed();
    for (a, r) in Algorithm::ALL.iter().zip(results) {
        let c = r.map_err(|e| e.to_string())?;
        ensure!(c.count == 2, "{a} counted {}", c.count);
    }
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(format!("all four kernels count 2 in {elapsed:?}"))
}

fn oracle_equivalence(div: &mut Divisibility) -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<(String, CsrGraph)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for seed in 0..8u64 {
        for step in 1..=20 {
            let p = f64::from(step) * 0.05;
            let n = rng.random_range(2..=128usize);
            let g = gen_erdos_renyi(n, p, seed).map_err(|e| e.to_string())?;
            graphs.push((format!("er n={n} p={p:.2} seed={seed}"), g));
        }
    }
    for scale in 1..=7 {
        for (name, init) in [
            ("graph500", GRAPH500_INITIATOR),
            ("uniform", UNIFORM_INITIATOR),
        ] {
            for edge_factor in [4, 16] {
                for seed in 0..3 {
                    let g = gen_stochastic_kron(&init, scale, edge_factor, seed)
                        .map_err(|e| e.to_string())?;
                    graphs.push((
                        format!("skron {name} scale={scale} ef={edge_factor} seed={seed}"),
                        g,
                    ));
                }
            }
        }
    }
    for n in 1..=4 {
        for (i, seed_graph) in all_graphs(n).into_iter().enumerate() {
            for k in 1..=3 {
                let g = gen_kron_power(&seed_graph, k).map_err(|e| e.to_string())?;
                graphs.push((format!("kron seed n={n} #{i} k={k}"), g));
            }
        }
    }
    let mut triangles = 0u64;
    for (name, g) in &graphs {
        let c = counts(g, &Algorithm::ALL, div)?;
        ensure!(
            c.iter().all(|&x| x == c[0]),
            "{name}: adj2/lu/incidence/brute = {c:?}"
        );
        triangles += c[0];
    }
    let elapsed = start.elapsed();
    ensure!(graphs.len() >= 200, "only {} graphs", graphs.len());
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "{} graphs ({triangles} triangles in total) agree with the oracle in {elapsed:.2?}",
        graphs.len()
    ))
}

fn analytic_counts(div: &mut Divisibility) -> Outcome {
    let sparse = [Algorithm::Adj2, Algorithm::Lu, Algorithm::Incidence];
    for n in 0..=20 {
        let expected = binomial3(n as u64);
        let c = counts(&fixtures::complete(n), &Algorithm::ALL, div)?;
        ensure!(
            c.iter().all(|&x| x == expected),
            "K_{n}: {c:?}, expected {expected}"
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut trees = vec![fixtures::path(50), fixtures::star(50)];
    for n in 1..=120usize {
        // Random recursive tree: each vertex attaches to an earlier one.
        let edges = (1..n as u32)
            .map(|v| (rng.random_range(0..v), v))
            .collect::<Vec<_>>();
        trees.push(CsrGraph::from_index_pairs(n, edges).unwrap());
    }
    for t in &trees {
        let c = counts(t, &Algorithm::ALL, div)?;
        ensure!(
            c.iter().all(|&x| x == 0),
            "tree on {} vertices: {c:?}",
            t.n_vertices()
        );
    }

    let mut identities = 0;
    for n in 1..=5 {
        for seed_graph in all_graphs(n) {
            let base = counts(&seed_graph, &Algorithm::ALL, div)?[0];
            for k in 1..=3u32 {
                let g = gen_kron_power(&seed_graph, k).map_err(|e| e.to_string())?;
                let expected = 6u64.pow(k - 1) * base.pow(k);
                let c = counts(&g, &sparse, div)?;
                ensure!(
                    c.iter().all(|&x| x == expected),
                    "seed {:?} k={k}: {c:?}, expected {expected}",
                    seed_graph.upper_edges().collect::<Vec<_>>()
                );
                identities += 1;
            }
        }
    }
    Ok(format!(
        "K_0..K_20, {} trees and {identities} Kronecker powers match closed forms",
        trees.len()
    ))
}

fn divisibility(div: &Divisibility) -> Outcome {
    ensure!(div.checked > 0, "no aggregates recorded");
    ensure!(
        div.violations.is_empty(),
        "{} violations, first: {}",
        div.violations.len(),
        div.violations[0]
    );
    Ok(format!(
        "{} kernel aggregates divisible by 6/2/3",
        div.checked
    ))
}

fn fit_recovery() -> Outcome {
    let grid: Vec<f64> = (0..=40)
        .map(|i| 10f64.powf(6.0 + f64::from(i) / 10.0))
        .collect();
    let lines = [
        (SotaLine::Sota2018, 1e9, Beta::ONE),
        (SotaLine::Sota2017, 1e8, Beta::FOUR_THIRDS),
    ];

    for (line, n1, beta) in lines {
        let points: Vec<FitPoint> = grid
            .iter()
            .map(|&ne| FitPoint::new(ne, evaluate_model(&line, ne)))
            .collect();
        let fit = fit_loglog(&points, default_min_edges(&points)).map_err(|e| e.to_string())?;
        let rel = (fit.n1 - n1).abs() / n1;
        ensure!(
            fit.beta_snapped == beta,
            "{}: snapped to {}",
            line.label(),
            fit.beta_snapped
        );
        ensure!(
            rel <= 1e-9,
            "{}: N1 = {:e}, relative error {rel:e}",
            line.label(),
            fit.n1
        );
    }

    let noise = LogNormal::new(0.0, 0.05).unwrap();
    let mut report = Vec::new();
    for (line, _, beta) in lines {
        let mut hits = 0;
        for trial in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(trial);
            let points: Vec<FitPoint> = grid
                .iter()
                .map(|&ne| FitPoint::new(ne, evaluate_model(&line, ne) * noise.sample(&mut rng)))
                .collect();
            let fit = fit_loglog(&points, default_min_edges(&points)).map_err(|e| e.to_string())?;
            hits += u32::from(fit.beta_snapped == beta);
        }
        ensure!(
            hits >= 95,
            "{}: beta snapped correctly in {hits}/100 noisy trials",
            line.label()
        );
        report.push(format!("{} {hits}/100", line.label()));
    }
    Ok(format!(
        "exact recovery of both lines; noisy trials {}",
        report.join(", ")
    ))
}

fn sota_evaluation() -> Outcome {
    let t2018 = evaluate_model(&SotaLine::Sota2018, 1e9);
    let t2017 = evaluate_model(&SotaLine::Sota2017, 1e8);
    ensure!(
        t2018 == 1.0 && t2017 == 1.0,
        "sota2018(1e9) = {t2018}, sota2017(1e8) = {t2017}"
    );
    Ok("sota2018(1e9) = sota2017(1e8) = 1.0 s".into())
}

fn desk_scale_throughput() -> Outcome {
    let start = Instant::now();
    let spec = GenSpec {
        model: Model::StochasticKron {
            initiator: GRAPH500_INITIATOR,
            scale: 20,
            edge_factor: 10,
        },
        rng_seed: 1,
    };
    let graph = spec.generate().map_err(|e| e.to_string())?;
    let generation = start.elapsed();
    let ne = graph.n_edges();
    ensure!(
        (5_000_000..20_000_000).contains(&ne),
        "generated {ne} edges"
    );

    let inputs = KernelInputs::prepare(&graph, &[Algorithm::Adj2]);
    let run = bench::run_benchmark(&inputs, &spec.label(), Algorithm::Adj2, 1, 0)
        .map_err(|e| e.to_string())?;
    let r = &run.record;
    ensure!(r.t_tri_seconds < 60.0, "adj2 took {:.2} s", r.t_tri_seconds);

    let n = r.n_edges as f64;
    let product = r.rate_eps * r.t_tri_seconds;
    let ulp = f64::from_bits(n.to_bits() + 1) - n;
    ensure!(
        (product - n).abs() <= ulp,
        "rate * t = {product}, n_edges = {n}"
    );

    let cmp = compare_sota(std::slice::from_ref(r));
    ensure!(
        cmp.len() == 1 && cmp[0].ratio_2017.is_finite() && cmp[0].ratio_2018.is_finite(),
        "comparison {cmp:?}"
    );
    Ok(format!(
        "Ne = {ne}, adj2 {:.2} s ({:.3e} edges/s, {} triangles), vs 2017 {:.3e}, vs 2018 {:.3e}; generation {generation:.2?}",
        r.t_tri_seconds, r.rate_eps, r.triangle_count, cmp[0].ratio_2017, cmp[0].ratio_2018
    ))
}

fn determinism() -> Outcome {
    let specs = [
        GenSpec {
            model: Model::ErdosRenyi { n: 3000, p: 0.01 },
            rng_seed: 11,
        },
        GenSpec {
            model: Model::StochasticKron {
                initiator: GRAPH500_INITIATOR,
                scale: 14,
                edge_factor: 16,
            },
            rng_seed: 3,
        },
        GenSpec {
            model: Model::KronPower {
                seed_graph: fixtures::two_triangles(),
                k: 4,
            },
            rng_seed: 0,
        },
    ];
    let sparse = [Algorithm::Adj2, Algorithm::Lu, Algorithm::Incidence];
    for spec in &specs {
        let label = spec.label();
        let tsv = |workers| -> Result<String, String> {
            let g = with_workers(workers, || spec.generate())
                .map_err(|e| e.to_string())?
                .map_err(|e| e.to_string())?;
            Ok(to_tsv_string(&g))
        };
        let (a, b, c) = (tsv(1)?, tsv(1)?, tsv(4)?);
        ensure!(
            a == b && a == c,
            "{label}: generator output differs between runs"
        );

        let graph = spec.generate().map_err(|e| e.to_string())?;
        let inputs = KernelInputs::prepare(&graph, &sparse);
        let per_workers = |workers| -> Result<Vec<u64>, String> {
            sparse
                .iter()
                .map(|&a| {
                    let run = bench::run_benchmark(&inputs, &label, a, 1, workers)
                        .map_err(|e| e.to_string())?;
                    if run.record.workers != workers {
                        return Err(format!(
                            "asked for {workers} workers, got {}",
                            run.record.workers
                        ));
                    }
                    Ok(run.record.triangle_count)
                })
                .collect()
        };
        let (one, four) = (per_workers(1)?, per_workers(4)?);
        ensure!(
            one == four,
            "{label}: counts {one:?} with 1 worker, {four:?} with 4"
        );
        ensure!(
            one.iter().all(|&x| x == one[0]),
            "{label}: kernels disagree {one:?}"
        );
    }
    let other_seed = GenSpec {
        rng_seed: 12,
        ..specs[0].clone()
    };
    ensure!(
        to_tsv_string(&other_seed.generate().unwrap())
            != to_tsv_string(&specs[0].generate().unwrap()),
        "different seeds produced the same graph"
    );
    Ok(format!(
        "{} generators byte-identical; counts equal for 1 and 4 workers",
        specs.len()
    ))
}

fn round_trips() -> Outcome {
    let reparse = |g: &CsrGraph| -> Result<CsrGraph, String> {
        let tsv = to_tsv_string(g);
        let edges = parse_edge_list(tsv.as_bytes(), &ParseOptions::default().allow_empty(true))
            .map_err(|e| e.to_string())?;
        Ok(canonicalize(&edges))
    };
    let mut graphs = vec![
        fixtures::two_triangles(),
        fixtures::complete(12),
        CsrGraph::empty(5),
        gen_erdos_renyi(200, 0.01, 5).unwrap(),
        gen_stochastic_kron(&GRAPH500_INITIATOR, 10, 8, 9).unwrap(),
    ];
    for seed in 0..20 {
        graphs.push(gen_erdos_renyi(60, 0.05, seed).unwrap());
    }
    let mut exact = 0;
    for g in &graphs {
        let once = reparse(g)?;
        let twice = reparse(&once)?;
        ensure!(once == twice, "export/parse/canonicalize not idempotent");
        let isolated = (0..g.n_vertices()).any(|v| g.degree(v) == 0);
        if !isolated {
            ensure!(
                &once == g,
                "graph without isolated vertices changed on round trip"
            );
            exact += 1;
        }
    }

    let mut records = vec![
        BenchRecord::new("two_triangles", 5, Algorithm::Adj2, 1.5e-7, 5, 2, 1),
        BenchRecord::new(
            "quoted, \"id\"",
            1 << 40,
            Algorithm::Lu,
            0.1 + 0.2,
            3,
            17,
            4,
        ),
        BenchRecord::new("tiny", 1, Algorithm::Incidence, 5e-324, 1, 0, 2),
        BenchRecord::new(
            "huge",
            u64::MAX,
            Algorithm::Brute,
            f64::MAX,
            9,
            u64::MAX,
            64,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..200 {
        let t = f64::from_bits(rng.random_range(0x3e00_0000_0000_0000u64..0x4100_0000_0000_0000));
        let a = Algorithm::ALL[i % 4];
        records.push(BenchRecord::new(
            format!("g{i}"),
            rng.random(),
            a,
            t,
            5,
            rng.random(),
            1,
        ));
    }
    let mut buf = Vec::new();
    bench::emit_records(&records, &mut buf, true).map_err(|e| e.to_string())?;
    let parsed = bench::read_records(buf.as_slice()).map_err(|e| e.to_string())?;
    ensure!(
        parsed.len() == records.len(),
        "{} of {} records read back",
        parsed.len(),
        records.len()
    );
    for (a, b) in records.iter().zip(&parsed) {
        ensure!(
            a == b
                && a.t_tri_seconds.to_bits() == b.t_tri_seconds.to_bits()
                && a.rate_eps.to_bits() == b.rate_eps.to_bits(),
            "record changed: {a:?} -> {b:?}"
        );
    }
    Ok(format!(
        "{} graphs idempotent ({exact} reproduced exactly); {} CSV records lossless",
        graphs.len(),
        records.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let mut div = Divisibility::default();
    let mut failures = Vec::new();
    let mut report = |id: u32, name: &str, outcome: Outcome| {
        match &outcome {
            Ok(detail) => println!("criterion {id} {name}: PASS: {detail}"),
            Err(detail) => println!("criterion {id} {name}: FAIL: {detail}"),
        }
        if outcome.is_err() {
            failures.push(id);
        }
    };
    report(1, "two-triangles-fixture", two_triangles_fixture());
    report(2, "oracle-equivalence", oracle_equivalence(&mut div));
    report(3, "analytic-counts", analytic_counts(&mut div));
    report(4, "divisibility", divisibility(&div));
    report(5, "fit-recovery", fit_recovery());
    report(6, "sota-evaluation", sota_evaluation());
    report(7, "desk-scale-throughput", desk_scale_throughput());
    report(8, "determinism", determinism());
    report(9, "format-round-trips", round_trips());
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
