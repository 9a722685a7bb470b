//! The randomised path builder on partite collections.

use powercycle::host::HostTemplate;
use powercycle::instances::{complete_partite_collection, random_partite_collection, random_pattern};
use powercycle::matching::SamplerMode;
use powercycle::pathbuilder::{build_path_collection, PathError};
use powercycle::verify_coloured_embedding;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_run(r: usize, q: usize, s: usize, seed: u64, mode: SamplerMode, frac: Option<f64>) -> Result<(), PathError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (coll, parts) = match frac {
        None => complete_partite_collection(r, q, 2).unwrap(),
        Some(f) => random_partite_collection(r, q, 2, f, &mut rng).unwrap(),
    };
    let host = HostTemplate::power_path(r, 2).unwrap();
    let patterns: Vec<_> = (0..s).map(|_| random_pattern(host, 2, &mut rng).unwrap()).collect();
    let out = build_path_collection(&coll, &parts, &patterns, &mut rng, mode)?;
    assert_eq!(out.paths.len(), s);
    let mut seen = vec![false; coll.n()];
    for (p, pat) in out.paths.iter().zip(&patterns) {
        assert!(verify_coloured_embedding(&coll, pat, &p.vertices).unwrap().is_valid());
        for (j, &v) in p.vertices.iter().enumerate() {
            assert!(parts[j].contains(&v), "path position {j} leaves its part");
            assert!(!std::mem::replace(&mut seen[v], true));
        }
    }
    Ok(())
}

#[test]
fn complete_partite_runs() {
    for seed in 0..10 {
        check_run(5, 8, 7, seed, SamplerMode::Fast, None).unwrap();
        check_run(5, 6, 6, seed, SamplerMode::Exact, None).unwrap();
    }
}

#[test]
fn dense_random_partite_runs() {
    for seed in 0..10 {
        check_run(6, 10, 8, seed, SamplerMode::Fast, Some(1.0)).unwrap();
    }
}

#[test]
fn sparse_partite_aborts() {
    let err = check_run(5, 10, 9, 1, SamplerMode::Fast, Some(0.3)).unwrap_err();
    assert!(matches!(err, PathError::Abort { .. }), "{err}");
}
