//! Layout arithmetic, accounting and determinism of the full pipeline.

use powercycle::graph::{Graph, GraphCollection};
use powercycle::host::{ColourPattern, HostTemplate};
use powercycle::instances::{bijective_pattern, complete_collection, random_pattern};
use powercycle::oracle::{find_coloured_hamilton_power, Outcome};
use powercycle::par::Parallelism;
use powercycle::pipeline::{
    compact_edges, plan_with_edges, solve, Layout, PipelineConfig, RunMode, SolveError, StageName,
};
use powercycle::rng::seeded;
use powercycle::verify_coloured_embedding;
use proptest::prelude::*;

fn desk(seed: u64) -> PipelineConfig {
    PipelineConfig {
        seed,
        r: Some(7),
        absorber_s: Some(1),
        slack: Some(4),
        record_timings: false,
        ..PipelineConfig::default()
    }
}

proptest! {
    #[test]
    fn layout_tiles_the_cycle(k in 1usize..4, extra in 0usize..20, r_extra in 0usize..4, paths in 0usize..4, leftovers in 0usize..4, ext in 0usize..4) {
        let m = 2 * k + extra;
        let r = k + 1 + r_extra;
        let n = m + paths * (k + r) + leftovers * (k + 1) + ext + k;
        let layout = Layout::new(n, k, m, r, paths, leftovers, ext).unwrap();
        prop_assert!(layout.is_exact_partition());
        let total: usize = layout.units.iter().map(|u| layout.unit_edges(u).len()).sum();
        prop_assert_eq!(total, k * n);
        prop_assert!(Layout::new(n + 1, k, m, r, paths, leftovers, ext).is_none());
    }

    #[test]
    fn plans_account_for_every_vertex(n in 40usize..400, s in 1usize..4, e in 1usize..20, r in 3usize..9) {
        let config = PipelineConfig { absorber_s: Some(s), slack: Some(e), r: Some(r), ..PipelineConfig::default() };
        if let Ok(p) = plan_with_edges(n, 2, &config, compact_edges(s, e)) {
            prop_assert_eq!(p.absorber_set + p.reservoir + p.free, n);
            prop_assert_eq!(p.paths * p.r + p.leftovers, p.free);
            // reservoir use: k per connector, one per extension, s left over
            prop_assert_eq!(2 * (p.paths + p.leftovers + 1) + p.extensions + p.s, p.s + p.slack);
            prop_assert!(Layout::new(n, 2, p.m, p.r, p.paths, p.leftovers, p.extensions).unwrap().is_exact_partition());
        }
    }
}

#[test]
fn complete_runs_are_verified_and_reproducible() {
    let coll = complete_collection(60, 120).unwrap();
    for seed in 0..3 {
        let pattern = bijective_pattern(HostTemplate::power_cycle(60, 2).unwrap(), &mut seeded(seed)).unwrap();
        for mode in [RunMode::Strict, RunMode::BestEffort] {
            let config = PipelineConfig { mode, ..desk(seed) };
            let (cycle, trace) = solve(&coll, &pattern, &config).unwrap();
            assert!(verify_coloured_embedding(&coll, &pattern, &cycle.vertices).unwrap().is_valid());
            let again = solve(&coll, &pattern, &config).unwrap();
            assert_eq!(again.0, cycle);
            assert_eq!(again.1.to_json(), trace.to_json());
            let connect = trace.stages.iter().find(|s| s.stage == StageName::Connect).unwrap();
            assert_eq!(connect.sizes["residue"], 1);
        }
    }
}

#[test]
fn random_patterns_on_larger_n() {
    let n = 107;
    let coll = complete_collection(n, 4).unwrap();
    let pattern = random_pattern(HostTemplate::power_cycle(n, 2).unwrap(), 4, &mut seeded(8)).unwrap();
    let config = PipelineConfig { slack: Some(11), r: Some(3), ..desk(2) };
    let (cycle, trace) = solve(&coll, &pattern, &config).unwrap();
    assert!(verify_coloured_embedding(&coll, &pattern, &cycle.vertices).unwrap().is_valid());
    assert!(trace.path_sampler.is_some());
}

#[test]
fn isolated_vertex_stops_at_the_reservoir() {
    let mut g = Graph::complete(60);
    for v in 1..60 {
        g.remove_edge(0, v);
    }
    let coll = GraphCollection::new(60, vec![g]).unwrap();
    let pattern = ColourPattern::uniform(HostTemplate::power_cycle(60, 2).unwrap(), 1).unwrap();
    let err = solve(&coll, &pattern, &PipelineConfig { max_retries: 3, ..desk(0) }).unwrap_err();
    match err.error {
        SolveError::Stage { stage, attempts, .. } => {
            assert_eq!(stage, StageName::Reservoir);
            assert_eq!(attempts, 4);
        }
        other => panic!("unexpected {other}"),
    }
    assert!(!err.trace.success);
}

#[test]
fn small_complete_instance_is_infeasible_but_exists() {
    let n = 10;
    let coll = complete_collection(n, 20).unwrap();
    let pattern = bijective_pattern(HostTemplate::power_cycle(n, 2).unwrap(), &mut seeded(1)).unwrap();
    let err = solve(&coll, &pattern, &desk(0)).unwrap_err();
    assert!(matches!(err.error, SolveError::Infeasible { .. }));
    let (out, _) = find_coloured_hamilton_power(&coll, &pattern, None, Parallelism::Parallel).unwrap();
    assert!(matches!(out, Outcome::Found(_)));
}

#[test]
fn bad_configurations_are_rejected() {
    let coll = complete_collection(60, 1).unwrap();
    let pattern = ColourPattern::uniform(HostTemplate::power_cycle(60, 2).unwrap(), 1).unwrap();
    for config in [
        PipelineConfig { gamma: 0.06, ..desk(0) },
        PipelineConfig { epsilon: 1.0, ..desk(0) },
        PipelineConfig { r: Some(2), ..desk(0) },
    ] {
        assert!(matches!(solve(&coll, &pattern, &config).unwrap_err().error, SolveError::Config(_)));
    }
    let wrong = ColourPattern::uniform(HostTemplate::power_cycle(59, 2).unwrap(), 1).unwrap();
    assert!(matches!(solve(&coll, &wrong, &desk(0)).unwrap_err().error, SolveError::BadInput(_)));
}
