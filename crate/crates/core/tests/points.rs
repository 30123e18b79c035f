mod common;

use common::{all_paths, random_quiver};
use proptest::prelude::*;
use quivrel_core::point::{
    check_admissible_collection, collection_ideal, decomposition_points, is_acyclic_morphism, point_relation,
};
use quivrel_core::{check_admissible, FiniteQuiver, Path, Verdict};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quiver_and_paths(acyclic: bool) -> impl Strategy<Value = (FiniteQuiver, Vec<Path>)> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quiver(&mut rng, 5, 8, acyclic);
        let paths = all_paths(&q, 4).into_iter().filter(|p| p.len() >= 2).collect();
        (q, paths)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn endpoints_are_not_decomposition_points((q, paths) in quiver_and_paths(true)) {
        for f in &paths {
            let points = decomposition_points(&q, f).unwrap();
            prop_assert!(!points.contains(&f.source()));
            prop_assert!(!points.contains(&f.target()));
            prop_assert_eq!(points.len(), f.len() - 1);
        }
    }

    #[test]
    fn points_are_interior_visits((q, paths) in quiver_and_paths(false)) {
        for f in &paths {
            let points = decomposition_points(&q, f).unwrap();
            for v in q.vertex_ids() {
                let interior = (1..f.len()).any(|k| q.vertex_at(f, k) == v);
                prop_assert_eq!(points.contains(&v), interior);
            }
        }
    }

    #[test]
    fn generated_paths_divide_f((q, paths) in quiver_and_paths(false)) {
        for f in &paths {
            for z in decomposition_points(&q, f).unwrap() {
                if !is_acyclic_morphism(&q, f, z).unwrap() {
                    prop_assert!(point_relation(&q, f, z).is_err());
                    continue;
                }
                let spec = point_relation(&q, f, z).unwrap();
                prop_assert!(!spec.generated.is_empty());
                for g in &spec.generated {
                    // f = h2 * g * h1 for some subpaths h1, h2.
                    prop_assert!(f.occurrences(g.arrows()).any(|k| q.vertex_at(f, k) == g.source()));
                    prop_assert!(decomposition_points(&q, g).unwrap().contains(&z));
                }
            }
        }
    }
}

#[test]
fn point_collections_on_acyclic_quivers_are_admissible() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    for _ in 0..80 {
        let q = random_quiver(&mut rng, 6, 9, true);
        let mut long: Vec<Path> = all_paths(&q, 5).into_iter().filter(|p| p.len() >= 2).collect();
        long.shuffle(&mut rng);
        let specs: Vec<_> = long
            .iter()
            .take(3)
            .map(|f| {
                let points: Vec<_> = decomposition_points(&q, f).unwrap().into_iter().collect();
                point_relation(&q, f, *points.choose(&mut rng).unwrap()).unwrap()
            })
            .collect();
        if specs.is_empty() {
            continue;
        }
        let report = check_admissible_collection(&specs, &q, 8, 64).unwrap();
        assert!(report.admissible);
        assert_eq!(
            check_admissible(&collection_ideal(&q, &specs, 8).unwrap(), 64)
                .unwrap()
                .verdict,
            Verdict::Admissible
        );
        checked += 1;
    }
    assert!(checked > 20);
}
