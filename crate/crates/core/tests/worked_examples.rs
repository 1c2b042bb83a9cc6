use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pytharr::arrangement::build_arrangement;
use pytharr::instance::Instance;
use pytharr::pointconfig::matroid_at_infinity;
use pytharr::transport::{are_equivalent, is_parallelism_canonical, parallelism_canonicalization, Triple};

mod common;
use common::random_triple;

fn load(name: &str) -> Triple {
    let path = format!("{}/instances/{name}.json", env!("CARGO_MANIFEST_DIR"));
    Instance::read(std::path::Path::new(&path)).unwrap().triple
}

/// Four edges of the reworked theta whose directions form a four-point line,
/// so the matroid at infinity there is not graphic.
#[test]
fn reworked_theta_contains_four_point_line() {
    let t = load("theta-shape");
    let m = matroid_at_infinity(&t.config, &t.graph).unwrap();
    let s = t.graph.edge_set(&["56", "57a", "58", "67"]).unwrap();
    assert_eq!(m.rank(s), 2);
    let triples: Vec<_> = s.subsets_of_size(3).collect();
    assert_eq!(triples.len(), 4);
    assert!(triples.iter().all(|&x| m.is_circuit(x)));
}

#[test]
fn theta_canonicalizes_onto_four_points() {
    let t = load("theta");
    let canon = parallelism_canonicalization(&t).unwrap();
    assert_eq!(canon.config.len(), 4);
    assert!(is_parallelism_canonical(&canon));
    assert!(are_equivalent(&t, &canon).unwrap());
}

/// Every flat of the intersection semilattice is cut out by an independent
/// subset of the hyperplanes containing it.
#[test]
fn flats_have_independent_presentations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..60 {
        let (c, g) = random_triple(&mut rng, 1 + i % 3, 5, 6);
        let a = build_arrangement(&c, &g).unwrap();
        let m = a.normal_matroid();
        for f in a.intersection_semilattice().flats {
            let found = f.labels.subsets().any(|s| {
                m.is_independent(s) && a.flat_of(s).map(|fl| fl.same_as(&f.subspace)).unwrap_or(false)
            });
            assert!(found, "no independent presentation for {}", a.label(f.labels));
        }
    }
}
