use proptest::prelude::*;

use sperner_kkm::{
    barycentric_refine, edgewise_subdivision, random_sperner_labeling, solve_barycentric, support,
    validate_labeling, BPoint, Location, Rational, SchemeParams, SchemeRegistry, Subdivision,
    ValidationMode,
};

fn generated(n: usize, m: usize, depth: usize) -> Subdivision {
    let mut sub = edgewise_subdivision(n, m).unwrap();
    for _ in 0..depth {
        sub = barycentric_refine(&sub).unwrap();
    }
    sub
}

#[test]
fn generators_pass_full_validation() {
    for n in 2..=4 {
        for m in 1..=4 {
            for depth in 0..=2 {
                if n == 4 && depth == 2 && m > 2 {
                    continue;
                }
                let sub = generated(n, m, depth);
                let report = sub.validate(ValidationMode::Full);
                assert!(
                    report.passed,
                    "n={n} m={m} depth={depth}: {:?}",
                    report.violations
                );
            }
        }
    }
}

#[test]
fn registry_matches_direct_construction() {
    let registry = SchemeRegistry::with_builtins();
    let params = SchemeParams { m: 3, depth: 2 };
    let via_registry = registry
        .get("barycentric")
        .unwrap()
        .generate(3, &params)
        .unwrap();
    assert_eq!(via_registry, generated(3, 3, 2));
    let via_registry = registry
        .get("edgewise")
        .unwrap()
        .generate(4, &params)
        .unwrap();
    assert_eq!(via_registry, generated(4, 3, 0));
}

/// A random point of the simplex with a small common denominator.
fn simplex_point(n: usize) -> impl Strategy<Value = BPoint> {
    prop::collection::vec(0i64..12, n)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x > 0))
        .prop_map(|v| {
            let total: i64 = v.iter().sum();
            BPoint::new(v.iter().map(|&x| Rational::new(x, total)).collect()).unwrap()
        })
}

/// `(n, m, depth)` together with a point of the matching simplex.
fn instance_with_point() -> impl Strategy<Value = ((usize, usize, usize), BPoint)> {
    instance().prop_flat_map(|cfg| (Just(cfg), simplex_point(cfg.0)))
}

fn instance() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..=4, 1usize..=3, 0usize..=1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn locate_is_exhaustive_and_recombines(((n, m, depth), x) in instance_with_point()) {
        let sub = generated(n, m, depth);
        let hits = sub.locate(&x).unwrap();
        prop_assert!(!hits.is_empty());

        // Independent scan over every cell.
        let naive: Vec<_> = sub
            .cells()
            .iter()
            .filter(|c| matches!(solve_barycentric(&sub.cell_points(c), &x).unwrap(), Location::Inside(_)))
            .cloned()
            .collect();
        let located: Vec<_> = hits.iter().map(|(c, _)| c.clone()).collect();
        prop_assert_eq!(&located, &naive);

        for (cell, coords) in &hits {
            let total: Rational = coords.weights().iter().sum();
            prop_assert_eq!(total, Rational::one());
            prop_assert!(coords.weights().iter().all(|w| !w.is_negative()));
            prop_assert_eq!(coords.recombine(&sub.cell_points(cell)), x.coords().to_vec());
        }
    }

    #[test]
    fn shared_points_put_no_weight_on_unshared_vertices(((n, m, depth), x) in instance_with_point()) {
        let sub = generated(n, m, depth);
        let hits = sub.locate(&x).unwrap();
        for (a, wa) in &hits {
            for (b, _) in &hits {
                for (p, v) in a.vertices().iter().enumerate() {
                    if !b.contains(*v) {
                        prop_assert!(wa.weight(p).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn random_labelings_obey_the_sperner_condition(
        (n, m, depth) in instance(),
        seed in any::<u64>(),
    ) {
        let sub = generated(n, m, depth);
        let lab = random_sperner_labeling(&sub, seed);
        prop_assert!(validate_labeling(&sub, &lab).passed);
        for (id, p) in sub.vertices().iter().enumerate() {
            prop_assert!(support(p).contains(&lab.as_slice()[id].unwrap()));
        }
        prop_assert_eq!(&lab, &random_sperner_labeling(&sub, seed));
    }
}
