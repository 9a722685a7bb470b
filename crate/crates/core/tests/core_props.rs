//! Host templates, patterns, verification and file formats.

use powercycle::graph::{Graph, GraphCollection};
use powercycle::host::{ColourPattern, HostTemplate};
use powercycle::io::{
    cycle_to_string, instance_to_string, parse_cycle, parse_instance, parse_pattern, pattern_to_string,
    read_cycle, read_instance, read_pattern, write_text,
};
use powercycle::{verify_coloured_embedding, PowerCycle};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Counts host edges straight from the definitions.
fn brute_edge_count(t: HostTemplate) -> usize {
    let order = t.order();
    let mut count = 0;
    for i in 0..order {
        for j in i + 1..order {
            let d = j - i;
            let hit = match t {
                HostTemplate::PowerPath { k, .. } => d <= k,
                HostTemplate::PowerCycle { k, .. } => d <= k || order - d <= k,
                HostTemplate::Connector { head, tail, k } => {
                    d <= k && !(j < head) && !(i >= order - tail)
                }
            };
            count += hit as usize;
        }
    }
    count
}

fn random_collection(rng: &mut ChaCha8Rng, n: usize, m: usize, p: f64) -> GraphCollection {
    let graphs = (0..m)
        .map(|_| {
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
        .collect();
    GraphCollection::new(n, graphs).unwrap()
}

#[test]
fn connector_edge_counts() {
    assert_eq!(HostTemplate::connector(2, 2, 2).unwrap().edges().unwrap().len(), 7);
    assert_eq!(HostTemplate::connector(3, 1, 3).unwrap().edges().unwrap().len(), 12);
    assert_eq!(HostTemplate::connector(1, 2, 2).unwrap().edges().unwrap().len(), 6);
}

proptest! {
    #[test]
    fn cycle_has_kn_edges(k in 1usize..5, extra in 1usize..20) {
        let n = 2 * k + extra;
        let t = HostTemplate::power_cycle(n, k).unwrap();
        prop_assert_eq!(t.edges().unwrap().len(), k * n);
        prop_assert_eq!(brute_edge_count(t), k * n);
    }

    #[test]
    fn path_and_connector_counts_match_definition(k in 1usize..5, order in 1usize..25, a in 1usize..5, b in 1usize..5) {
        let p = HostTemplate::power_path(order, k).unwrap();
        prop_assert_eq!(p.edges().unwrap().len(), brute_edge_count(p));
        let c = HostTemplate::connector(a.min(k), b.min(k), k).unwrap();
        prop_assert_eq!(c.edges().unwrap().len(), brute_edge_count(c));
    }

    #[test]
    fn relabelling_preserves_validity(seed in any::<u64>(), n in 5usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coll = random_collection(&mut rng, n, 2, 0.7);
        let host = HostTemplate::power_cycle(n, 2).unwrap();
        let pat = ColourPattern::from_fn(host, |_, _| rng.gen_range(1..=2)).unwrap();
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(&mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let before = verify_coloured_embedding(&coll, &pat, &seq).unwrap().is_valid();
        let moved: Vec<usize> = seq.iter().map(|&v| perm[v]).collect();
        let after = verify_coloured_embedding(&coll.relabel(&perm), &pat, &moved).unwrap().is_valid();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn rotation_preserves_validity(seed in any::<u64>(), n in 5usize..12, offset in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coll = random_collection(&mut rng, n, 3, 0.8);
        let host = HostTemplate::power_cycle(n, 2).unwrap();
        let pat = ColourPattern::from_fn(host, |_, _| rng.gen_range(1..=3)).unwrap();
        let offset = offset % n;
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(&mut rng);
        // position t of the rotated pattern is position t + offset of the old one
        let rotated_seq: Vec<usize> = (0..n).map(|t| seq[(t + offset) % n]).collect();
        let a = verify_coloured_embedding(&coll, &pat, &seq).unwrap().is_valid();
        let b = verify_coloured_embedding(&coll, &pat.rotated(offset), &rotated_seq).unwrap().is_valid();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn restriction_keeps_colours(seed in any::<u64>(), n in 7usize..20, start in 0usize..20, len in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let host = HostTemplate::power_cycle(n, 2).unwrap();
        let pat = ColourPattern::from_fn(host, |_, _| rng.gen_range(1..=5)).unwrap();
        let start = start % n;
        let w = pat.restrict(start, HostTemplate::power_path(len, 2).unwrap()).unwrap();
        for (i, j, c) in w.triples() {
            prop_assert_eq!(pat.colour((start + i) % n, (start + j) % n), Some(c));
        }
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), n in 5usize..15) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coll = random_collection(&mut rng, n, 3, 0.5);
        prop_assert_eq!(&parse_instance(&instance_to_string(&coll)).unwrap(), &coll);
        let host = HostTemplate::power_cycle(n, 2).unwrap();
        let pat = ColourPattern::from_fn(host, |_, _| rng.gen_range(1..=3)).unwrap();
        prop_assert_eq!(&parse_pattern(&pattern_to_string(&pat)).unwrap(), &pat);
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(&mut rng);
        let cycle = PowerCycle::new(2, seq).unwrap();
        prop_assert_eq!(parse_cycle(&cycle_to_string(&cycle)).unwrap(), cycle);
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let coll = random_collection(&mut rng, 9, 2, 0.6);
    let pat = ColourPattern::from_fn(HostTemplate::power_cycle(9, 2).unwrap(), |i, j| 1 + (i + j) % 2).unwrap();
    let cycle = PowerCycle::new(2, (0..9).rev().collect()).unwrap();
    let (fi, fp, fc) = (dir.path().join("i.json"), dir.path().join("p.json"), dir.path().join("c.json"));
    write_text(&fi, &instance_to_string(&coll)).unwrap();
    write_text(&fp, &pattern_to_string(&pat)).unwrap();
    write_text(&fc, &cycle_to_string(&cycle)).unwrap();
    assert_eq!(read_instance(&fi).unwrap(), coll);
    assert_eq!(read_pattern(&fp).unwrap(), pat);
    assert_eq!(read_cycle(&fc).unwrap(), cycle);
}

#[test]
fn malformed_files_name_the_problem() {
    let err = parse_instance("{\"n\": 3, \"m\": 2, \"graphs\": [[]]}").unwrap_err();
    assert!(err.to_string().contains('m'), "{err}");
    let err = parse_pattern("{\"host\": ").unwrap_err();
    assert!(err.to_string().contains("line"), "{err}");
}
