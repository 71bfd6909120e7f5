use trigauge::bench::{self, BenchRecord, CSV_HEADER};
use trigauge::genlab::{
    gen_erdos_renyi, gen_stochastic_kron, GenSpec, Model, GRAPH500_INITIATOR, UNIFORM_INITIATOR,
};
use trigauge::modelfit::{self, compare_sota, fit_loglog, GroupBy};
use trigauge::tricount::{count_brute, KernelInputs, DEFAULT_ORACLE_LIMIT};
use trigauge::{Algorithm, CsrGraph};

fn check_against_brute(g: &CsrGraph) -> u64 {
    g.check_invariants().unwrap();
    let expected = count_brute(g, DEFAULT_ORACLE_LIMIT).unwrap().count;
    let inputs = KernelInputs::prepare(g, &Algorithm::ALL);
    for a in Algorithm::ALL {
        assert_eq!(inputs.count(a).unwrap().count, expected, "{a}");
    }
    expected
}

#[test]
fn erdos_renyi_64_quarter() {
    let g = gen_erdos_renyi(64, 0.25, 7).unwrap();
    // Expected edge count is 504; allow a wide band.
    assert!((380..630).contains(&g.n_edges()), "{}", g.n_edges());
    check_against_brute(&g);
}

#[test]
fn uniform_stochastic_kron_small() {
    for seed in 0..5 {
        let g = gen_stochastic_kron(&UNIFORM_INITIATOR, 4, 16, seed).unwrap();
        assert_eq!(g.n_vertices(), 16);
        check_against_brute(&g);
    }
}

#[test]
fn graph500_scale10_bench_records() {
    let spec = GenSpec {
        model: Model::StochasticKron {
            initiator: GRAPH500_INITIATOR,
            scale: 10,
            edge_factor: 16,
        },
        rng_seed: 42,
    };
    let g = spec.generate().unwrap();
    let triangles = check_against_brute(&g);
    assert!(triangles > 0);

    let algos = [Algorithm::Adj2, Algorithm::Lu, Algorithm::Incidence];
    let inputs = KernelInputs::prepare(&g, &algos);
    let records: Vec<BenchRecord> = algos
        .iter()
        .map(|&a| {
            bench::run_benchmark(&inputs, &spec.label(), a, 3, 1)
                .unwrap()
                .record
        })
        .collect();
    for r in &records {
        assert_eq!(r.triangle_count, triangles);
        assert_eq!(r.n_edges, g.n_edges());
        assert_eq!((r.repetitions, r.workers), (3, 1));
        assert!(r.t_tri_seconds > 0.0);
        assert_eq!(r.timed_region, "kernel");
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.csv");
    bench::append_records(&path, &records[..1]).unwrap();
    bench::append_records(&path, &records[1..]).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert_eq!(text.matches("graph_id").count(), 1);
    assert_eq!(bench::read_records_file(&path).unwrap(), records);

    for c in compare_sota(&records) {
        assert!(c.ratio_2017.is_finite() && c.ratio_2017 > 0.0);
        assert!(c.ratio_2018.is_finite() && c.ratio_2018 > 0.0);
    }
}

#[test]
fn many_records_round_trip_and_fit() {
    // 4 algorithms x 200 sizes, timings on the T = Ne / 1e9 line.
    let records: Vec<BenchRecord> = (0..800)
        .map(|i| {
            let a = Algorithm::ALL[i % 4];
            let ne = 1_000_000u64 * (1 + (i / 4) as u64);
            BenchRecord::new(
                format!("g{}", i / 4),
                ne,
                a,
                ne as f64 / 1e9,
                5,
                i as u64,
                1,
            )
        })
        .collect();
    let mut buf = Vec::new();
    bench::emit_records(&records, &mut buf, true).unwrap();
    assert_eq!(bench::read_records(buf.as_slice()).unwrap(), records);

    let groups = modelfit::points_by_group(&records, GroupBy::Algorithm);
    assert_eq!(groups.len(), 4);
    for (name, points) in groups {
        assert_eq!(points.len(), 200, "{name}");
        let fit = fit_loglog(&points, modelfit::default_min_edges(&points)).unwrap();
        assert_eq!(fit.beta_snapped, modelfit::Beta::ONE);
        assert!((fit.n1 / 1e9 - 1.0).abs() < 1e-9, "{}", fit.n1);
    }
}

#[test]
fn header_mismatch_is_rejected() {
    let text = "graph,n_edges\nx,1\n";
    assert!(matches!(
        bench::read_records(text.as_bytes()),
        Err(bench::BenchError::Header(_))
    ));
}
