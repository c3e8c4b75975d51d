use gpe::geom::ExactPoint;
use gpe::gpe::{builtin, parse_description, print_description, GpeSystem, OrbitStatus, BUILTIN_SYSTEMS};
use gpe::rational::rat;
use gpe::GpeError;
use proptest::prelude::*;

fn builtins() -> Vec<(&'static str, GpeSystem)> {
    BUILTIN_SYSTEMS
        .iter()
        .map(|(name, _)| (*name, builtin(name, &[]).unwrap()))
        .collect()
}

#[test]
fn every_builtin_is_valid_and_round_trips() {
    for (name, g) in builtins() {
        assert!(g.validate().is_valid(), "{name}");
        let text = print_description(&g);
        let back = parse_description(&text).unwrap();
        assert_eq!(back, g, "{name}");
        assert_eq!(print_description(&back), text, "{name}");
    }
}

#[test]
fn target_atoms_are_source_images() {
    for (name, g) in builtins() {
        let inv = g.inverse().unwrap();
        assert_eq!(inv.source(), g.target(), "{name}");
        assert_eq!(inv.target(), g.source(), "{name}");
        assert!(inv.validate().is_valid(), "{name}");
    }
}

#[test]
fn corrupted_description_is_caught() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/corrupted.gpe");
    let text = std::fs::read_to_string(path).unwrap();
    match parse_description(&text) {
        Ok(g) => assert!(!g.validate().is_valid()),
        Err(e) => assert!(matches!(e, GpeError::Invalid(_)), "{e:?}"),
    }
}

#[test]
fn boundary_points_are_singular() {
    let g = builtin("baker", &[]).unwrap();
    let orbit = g.evaluate(&ExactPoint::from_ratios(1, 2, 1, 3), 3).unwrap();
    assert_eq!(orbit.status, OrbitStatus::SingularHit(0));
    // 1/4 reaches the cut x = 1/2 after one step
    let orbit = g.evaluate(&ExactPoint::from_ratios(1, 4, 1, 3), 3).unwrap();
    assert_eq!(orbit.status, OrbitStatus::SingularHit(1));
    assert_eq!(orbit.itinerary, vec![0]);
    assert!(matches!(
        g.evaluate(&ExactPoint::from_ints(2, 0), 1),
        Err(GpeError::OutsideSpace)
    ));
}

fn interior_point() -> impl Strategy<Value = ExactPoint> {
    (1i64..1024, 1i64..1024).prop_map(|(x, y)| ExactPoint::from_ratios(2 * x - 1, 2048, 2 * y - 1, 2048))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inverse_undoes_each_step(x in interior_point(), k in 0usize..6) {
        for (name, g) in builtins() {
            let fwd = g.evaluate(&x, 6).unwrap();
            if fwd.points.len() <= k + 1 {
                continue;
            }
            let inv = g.inverse().unwrap();
            let back = inv.evaluate(&fwd.points[k + 1], 1).unwrap();
            if back.is_regular() {
                prop_assert_eq!(back.last(), &fwd.points[k], "{}", name);
            }
        }
    }

    #[test]
    fn baker_matches_its_formula(x in interior_point()) {
        let g = builtin("baker", &[]).unwrap();
        let orbit = g.evaluate(&x, 1).unwrap();
        prop_assume!(orbit.is_regular());
        let half = rat(1, 2);
        let want = if x.x < half {
            ExactPoint::new(&x.x * rat(2, 1), &x.y * &half)
        } else {
            ExactPoint::new(&x.x * rat(2, 1) - rat(1, 1), &x.y * &half + &half)
        };
        prop_assert_eq!(orbit.last(), &want);
    }

    #[test]
    fn exchanges_preserve_the_space(x in interior_point()) {
        for (name, g) in builtins() {
            let orbit = g.evaluate(&x, 8).unwrap();
            for p in &orbit.points {
                prop_assert!(g.space().contains_closed(p), "{}", name);
            }
        }
    }
}
