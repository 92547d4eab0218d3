//! Release gate: eleven checks covering golden values, exact identities,
//! oracle dominance, desk-scale strategy comparisons, sensitivity trends,
//! and runtime scaling. Runs as one sequential test so the timing-sensitive
//! checks never compete with sibling tests for cores; prints one verdict
//! line per criterion (visible with `--nocapture`).

use busfactor::experiments::{
    run_assortativity_sweep, run_density_sweep, run_redundancy_sweep, run_scaling_bench, spearman,
    AssortativityConfig, DensityConfig, DensityDirection, RedundancyConfig, RedundancyMode,
    ScalingConfig,
};
use busfactor::generators::{
    configuration_model, fixtures, metropolis_rewire, sample_degree_sequence, uniform_bipartite,
    uniform_bipartite_covered, MetropolisConfig, PowerLawParams,
};
use busfactor::graph::{BipartiteGraph, RemovalMask, Threshold};
use busfactor::measures::{
    analyze, gauss_area, mcs_percolation, mrs_greedy, mrs_with_order, normalized_bus_factor,
    robustness_curve, NormVariant,
};
use busfactor::oracle::{exact_mcs, exact_z, CoverageAggregate, OracleLimits};
use busfactor::strategies::{degree_order, order_for, random_order, RemovalOrder, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

fn half() -> Threshold {
    Threshold::new(1, 2).unwrap()
}

fn small_thresholds() -> Vec<Threshold> {
    [(1u64, 4u64), (1, 3), (1, 2), (2, 3), (3, 4)]
        .iter()
        .map(|&(n, d)| Threshold::new(n, d).unwrap())
        .collect()
}

/// Desk-scale degree parameters: heavier people side, lighter task side.
fn desk_degrees(seed: u64) -> busfactor::generators::DegreeSequence {
    let person = PowerLawParams::new(0.2, 1.0, 100.0).unwrap();
    let task = PowerLawParams::new(0.2, 1.0, 70.0).unwrap();
    sample_degree_sequence(750, 1000, &person, &task, seed).unwrap()
}

fn desk_graph(seed: u64) -> BipartiteGraph {
    configuration_model(&desk_degrees(seed), seed ^ 0x5eed).unwrap().graph
}

/// Fig-style 9-person toy: one hub on all four tasks, plus a dedicated pair
/// per task.
fn criterion_01_toy_golden_values() -> String {
    let start = Instant::now();
    let g = fixtures::toy_project();
    let report = analyze(&g, half(), Strategy::Degree, 0).unwrap();
    assert_eq!(report.mrs_size, 8, "toy redundancy");
    assert_eq!(report.mcs_size, 7, "toy crash set under degree order");

    // Best possible decay: 8 task-steps of area over 4 * (9 - 1) available.
    let exact = busfactor::oracle::exact_robustness(&g, &OracleLimits::new(16, 9).unwrap())
        .unwrap();
    let witness = RemovalOrder::new(exact.witness.clone(), "oracle", None).unwrap();
    let optimal =
        normalized_bus_factor(&robustness_curve(&g, &witness), NormVariant::Gauss).unwrap();
    assert_eq!(optimal, 0.25, "optimal normalized robustness");
    assert_eq!(report.people_equivalent, 2.25, "people equivalent");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    format!(
        "mrs=8 mcs=7 optimal_gauss=0.25 people_equivalent=2.25 in {:.1} ms",
        elapsed.as_secs_f64() * 1e3
    )
}

/// Complete graphs are the normalization anchor: both variants must be 1.0
/// with no floating error at all.
fn criterion_02_complete_graph_normalization() -> String {
    for n in 2..=6 {
        for m in 2..=6 {
            let g = fixtures::complete(n, m);
            let order = degree_order(&g);
            let curve = robustness_curve(&g, &order);
            let gauss = normalized_bus_factor(&curve, NormVariant::Gauss).unwrap();
            let trapezoid = normalized_bus_factor(&curve, NormVariant::Trapezoid).unwrap();
            assert_eq!(gauss, 1.0, "gauss variant on K_{{{n},{m}}}");
            assert_eq!(trapezoid, 1.0, "trapezoid variant on K_{{{n},{m}}}");
        }
    }
    "both variants exactly 1.0 on all 25 complete graphs".to_string()
}

/// Worst-case removal budget and the complementary crash set are off by one:
/// exact identity on random graphs where every task has a contributor.
fn criterion_03_budget_crash_identity() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(3001);
    let limits = OracleLimits::default();
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=8);
        let edges = rng.gen_range(m..=n * m);
        let g = uniform_bipartite_covered(n, m, edges, rng.gen()).unwrap();
        for &t in &small_thresholds() {
            let budget = exact_z(&g, t, CoverageAggregate::Min, &limits).unwrap();
            let crash = exact_mcs(&g, t.complement().unwrap(), &limits).unwrap();
            assert_eq!(
                budget,
                crash.size - 1,
                "identity failed on n={n} m={m} edges={edges} t={t}"
            );
            checked += 1;
        }
    }
    format!("identity exact on {checked} graph/threshold pairs")
}

/// Star-of-stars decay: degree order pays k/2 times the optimal area.
fn criterion_04_task_tree_ratio() -> String {
    for k in [3usize, 4, 5] {
        let g = fixtures::task_tree(k).unwrap();
        let by_degree = gauss_area(&robustness_curve(&g, &degree_order(&g)));
        assert_eq!(by_degree as usize, (k * k * k + k * k) / 2, "degree area at k={k}");

        let optimal_area = if k == 3 {
            busfactor::oracle::exact_robustness(&g, &OracleLimits::default())
                .unwrap()
                .area
        } else {
            // Removing the central person first splits the graph into
            // independent stars, which is optimal.
            let mut order = vec![k];
            order.extend(0..k);
            let order = RemovalOrder::new(order, "central-first", None).unwrap();
            gauss_area(&robustness_curve(&g, &order))
        };
        assert_eq!(optimal_area as usize, k * k + k, "optimal area at k={k}");
        assert_eq!(2 * by_degree, k as u64 * optimal_area, "ratio k/2 at k={k}");
    }
    "degree/optimal area ratio is exactly k/2 for k in {3,4,5}".to_string()
}

/// Dyads-plus-clique trap: degree order burns through the whole clique while
/// the optimum only needs the dyad people.
fn criterion_05_degree_trap_gap() -> String {
    let cases = [(1u64, 4u64, 4usize, 6usize), (1, 2, 6, 9), (1, 4, 8, 13)];
    for &(num, den, m, n) in &cases {
        let t = Threshold::new(num, den).unwrap();
        let g = fixtures::degree_trap(n, m, t).unwrap();
        let dyad_people = (t.numer() as usize * m / t.denom() as usize) + 1;
        let clique_people = n - dyad_people;

        let by_degree = mcs_percolation(&g, t, &degree_order(&g)).unwrap();
        assert!(
            by_degree >= clique_people,
            "degree order found {by_degree} < clique size {clique_people}"
        );
        let exact = exact_mcs(&g, t, &OracleLimits::default()).unwrap();
        assert_eq!(exact.size, dyad_people, "optimal crash set is the dyad block");
        assert_eq!(exact.witness, (0..dyad_people).collect::<Vec<_>>());
    }
    "degree order pays the clique, the oracle picks the dyads, on all 3 traps".to_string()
}

/// No heuristic may ever beat the brute-force optimum, and the greedy cover
/// must actually cover.
fn criterion_06_oracle_dominance() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6001);
    let limits = OracleLimits::default();
    let thresholds = small_thresholds();
    for case in 0..100 {
        let n = rng.gen_range(2..=7);
        let m = rng.gen_range(2..=8);
        let edges = rng.gen_range(m..=n * m);
        let g = uniform_bipartite_covered(n, m, edges, rng.gen()).unwrap();
        let t = thresholds[case % thresholds.len()];
        let seed = rng.gen();

        let exact_crash = exact_mcs(&g, t, &limits).unwrap();
        let exact_area = busfactor::oracle::exact_robustness(&g, &limits).unwrap();
        for strategy in Strategy::ALL {
            let order = order_for(&g, strategy, seed).unwrap();
            let crash = mcs_percolation(&g, t, &order).unwrap();
            assert!(crash >= exact_crash.size, "{} crash set too small", strategy.name());
            let area = gauss_area(&robustness_curve(&g, &order));
            assert!(area >= exact_area.area, "{} area below optimum", strategy.name());
        }

        let greedy = mrs_greedy(&g, t).unwrap();
        let mask = RemovalMask::from_people(g.num_people(), &greedy.redundant);
        let covered = g.num_tasks() - g.isolated_task_count(&mask);
        assert!(covered >= t.target_count(g.num_tasks()), "greedy cover fell short");
    }
    "all strategies dominated by the oracle on 100 graphs, greedy covers valid".to_string()
}

/// The union-find replay must agree with a plain component search after
/// every single removal.
fn criterion_07_union_find_equals_component_search() -> String {
    let tau_by_components = |g: &BipartiteGraph, mask: &RemovalMask| -> usize {
        g.connected_components(mask)
            .components
            .iter()
            .map(|c| c.tasks.len())
            .max()
            .unwrap_or(0)
    };
    let mut checked = 0;
    let mut verify = |g: &BipartiteGraph, order: &RemovalOrder| {
        let curve = robustness_curve(g, order);
        for (removed, &tau) in curve.tau_values().iter().enumerate() {
            let mask = RemovalMask::from_people(g.num_people(), &order.as_slice()[..removed]);
            assert_eq!(tau, tau_by_components(g, &mask), "after {removed} removals");
            checked += 1;
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    for _ in 0..100 {
        let n = rng.gen_range(1..=50);
        let m = rng.gen_range(1..=50);
        let edges = rng.gen_range(1..=n * m);
        let g = uniform_bipartite(n, m, edges, rng.gen()).unwrap();
        verify(&g, &random_order(&g, rng.gen()));
        verify(&g, &degree_order(&g));
    }
    for g in [
        fixtures::toy_project(),
        fixtures::complete(4, 3),
        fixtures::dyads(4),
        fixtures::degree_trap(6, 4, Threshold::new(1, 4).unwrap()).unwrap(),
        fixtures::task_tree(3).unwrap(),
        fixtures::incidence_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
    ] {
        verify(&g, &random_order(&g, 99));
        verify(&g, &degree_order(&g));
    }
    format!("curves match component search at {checked} removal states")
}

/// Directional strategy comparison at desk scale: attacking hubs first must
/// shrink crash sets and decay area, and fill redundancy covers faster,
/// compared to random departures.
fn criterion_08_strategy_comparison() -> String {
    let replicas = 50;
    let mut crash_gap = 0.0;
    let mut area_gap = 0.0;
    let mut redundancy_gap = 0.0;
    let mut crash_deg = 0.0;
    let mut crash_rnd = 0.0;
    for replica in 0..replicas {
        let g = desk_graph(8000 + replica);
        let by_degree = degree_order(&g);
        let by_chance = random_order(&g, 9000 + replica);

        crash_deg += mcs_percolation(&g, half(), &by_degree).unwrap() as f64;
        crash_rnd += mcs_percolation(&g, half(), &by_chance).unwrap() as f64;
        crash_gap += mcs_percolation(&g, half(), &by_chance).unwrap() as f64
            - mcs_percolation(&g, half(), &by_degree).unwrap() as f64;
        area_gap += gauss_area(&robustness_curve(&g, &by_chance)) as f64
            - gauss_area(&robustness_curve(&g, &by_degree)) as f64;
        redundancy_gap += mrs_with_order(&g, half(), &by_degree).unwrap().size as f64
            - mrs_with_order(&g, half(), &by_chance).unwrap().size as f64;
    }
    assert!(crash_gap > 0.0, "degree crash sets not smaller than random");
    assert!(area_gap > 0.0, "degree decay area not smaller than random");
    assert!(redundancy_gap > 0.0, "degree covers not tighter than random");
    format!(
        "over {replicas} desk graphs: mean crash {:.1} (degree) vs {:.1} (random), \
         area and redundancy gaps positive",
        crash_deg / replicas as f64,
        crash_rnd / replicas as f64
    )
}

/// Sensitivity trends: densifying strengthens the project, singleton hires
/// pad redundancy but dilute normalized robustness, and assortativity moves
/// with robustness.
fn criterion_09_sensitivity_trends() -> String {
    let base = desk_graph(9100);

    // Q1: add 5000 edges in batches of 100.
    let density = run_density_sweep(
        &base,
        &DensityConfig {
            direction: DensityDirection::Add,
            batch: 100,
            total: 5000,
            threshold: half(),
            strategy: Strategy::Degree,
            master_seed: 9200,
        },
    )
    .unwrap();
    let levels: Vec<f64> = density.iter().map(|r| r.perturbation_level as f64).collect();
    let crash: Vec<f64> = density.iter().map(|r| r.mcs as f64).collect();
    let rob: Vec<f64> = density.iter().map(|r| r.robustness_gauss).collect();
    let rho_crash = spearman(&levels, &crash);
    let rho_rob = spearman(&levels, &rob);
    assert!(rho_crash > 0.9, "rho(level, crash set) = {rho_crash}");
    assert!(rho_rob > 0.9, "rho(level, robustness) = {rho_rob}");

    // Q2: hire 2000 singletons in batches of 500; compare levels against the
    // unperturbed baseline and against each other.
    let baseline = analyze(&base, half(), Strategy::Degree, 0).unwrap();
    let redundancy = run_redundancy_sweep(
        &base,
        &RedundancyConfig {
            mode: RedundancyMode::Singletons,
            batch: 500,
            total: 2000,
            threshold: half(),
            strategy: Strategy::Degree,
            master_seed: 9300,
        },
    )
    .unwrap();
    let mut mrs_path = vec![baseline.mrs_size];
    let mut mcs_path = vec![baseline.mcs_size];
    let mut rob_path = vec![baseline.robustness_gauss];
    let mut pe_path = vec![baseline.people_equivalent];
    for row in &redundancy {
        mrs_path.push(row.mrs);
        mcs_path.push(row.mcs);
        rob_path.push(row.robustness_gauss);
        pe_path.push(row.people_equivalent);
    }
    for pair in mrs_path.windows(2) {
        assert!(pair[1] > pair[0], "redundancy did not grow");
    }
    for pair in mcs_path.windows(2) {
        assert!(pair[1] > pair[0], "crash set did not grow");
    }
    for pair in rob_path.windows(2) {
        assert!(pair[1] < pair[0], "normalized robustness did not shrink");
    }
    let pe0 = pe_path[0];
    for pe in &pe_path {
        let drift = (pe - pe0).abs() / pe0;
        assert!(drift < 0.10, "people-equivalent drifted {:.1}%", drift * 100.0);
    }

    // Q3: 17 couplings spanning [-0.002, 0.002], 5 replicas each.
    let couplings: Vec<f64> = (0..17).map(|i| -0.002 + i as f64 * 0.00025).collect();
    let sweep = run_assortativity_sweep(
        &desk_degrees(9400),
        &AssortativityConfig {
            couplings: couplings.clone(),
            replicas: 5,
            sweeps: 20,
            threshold: half(),
            strategy: Strategy::Degree,
            master_seed: 9500,
        },
    )
    .unwrap();
    let mut mean_r = vec![0.0; couplings.len()];
    let mut mean_rob = vec![0.0; couplings.len()];
    for row in &sweep {
        mean_r[row.perturbation_level as usize] += row.r.unwrap() / 5.0;
        mean_rob[row.perturbation_level as usize] += row.robustness_gauss / 5.0;
    }
    let rho_mix = spearman(&mean_r, &mean_rob);
    assert!(rho_mix > 0.9, "rho(mean r, mean robustness) = {rho_mix}");
    format!(
        "density rho={rho_crash:.3}/{rho_rob:.3}, singleton trends strict, \
         assortativity rho={rho_mix:.3}"
    )
}

/// Crash-set and robustness timings may grow at most twice as fast as the
/// edge count across a 10x jump.
fn criterion_10_linear_scaling() -> String {
    let start = Instant::now();
    let rows = run_scaling_bench(&ScalingConfig {
        sizes: vec![100_000, 1_000_000],
        master_seed: 10_000,
    })
    .unwrap();
    let ms = |id: &str, level: i64| {
        rows.iter()
            .find(|r| r.experiment_id == id && r.perturbation_level == level)
            .unwrap()
            .runtime_ms
    };
    let crash_ratio = ms("scaling-mcs", 1_000_000) / ms("scaling-mcs", 100_000);
    let rob_ratio = ms("scaling-robustness", 1_000_000) / ms("scaling-robustness", 100_000);
    assert!(crash_ratio <= 20.0, "crash-set runtime ratio {crash_ratio:.1}");
    assert!(rob_ratio <= 20.0, "robustness runtime ratio {rob_ratio:.1}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 2 min");
    format!(
        "10x edges cost {crash_ratio:.1}x (crash) and {rob_ratio:.1}x (robustness), \
         bench total {:.1} s",
        elapsed.as_secs_f64()
    )
}

/// Rewiring is degree-preserving by construction, and a zero coupling makes
/// the chain accept every valid proposal.
fn criterion_11_rewiring_invariants() -> String {
    let base = desk_graph(11_000);
    for (i, coupling) in [-0.05f64, 0.0, 0.05].iter().enumerate() {
        let out = metropolis_rewire(
            &base,
            &MetropolisConfig {
                coupling: *coupling,
                sweeps: 5,
                seed: 11_100 + i as u64,
            },
        )
        .unwrap();
        assert_eq!(out.graph.person_degrees(), base.person_degrees());
        assert_eq!(out.graph.task_degrees(), base.task_degrees());
        if *coupling == 0.0 {
            assert_eq!(
                out.accepted, out.valid_proposals,
                "free chain rejected a valid swap"
            );
        }
    }
    "degrees preserved at J in {-0.05, 0, 0.05}; free chain accepted all".to_string()
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, fn() -> String)> = vec![
        ("01 toy golden values", criterion_01_toy_golden_values),
        ("02 complete-graph normalization", criterion_02_complete_graph_normalization),
        ("03 budget/crash identity", criterion_03_budget_crash_identity),
        ("04 task-tree area ratio", criterion_04_task_tree_ratio),
        ("05 degree-trap gap", criterion_05_degree_trap_gap),
        ("06 oracle dominance", criterion_06_oracle_dominance),
        ("07 union-find vs component search", criterion_07_union_find_equals_component_search),
        ("08 strategy comparison", criterion_08_strategy_comparison),
        ("09 sensitivity trends", criterion_09_sensitivity_trends),
        ("10 linear scaling", criterion_10_linear_scaling),
        ("11 rewiring invariants", criterion_11_rewiring_invariants),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(panic) => {
                let message = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "opaque panic".to_string());
                println!("criterion {name}: FAIL ({message})");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
