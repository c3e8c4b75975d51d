mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn clipping_twice_changes_nothing(p in convex_polygon(), (n, c) in halfplane()) {
        clip_idempotent(&p, &n, &c)?;
    }

    #[test]
    fn halfplane_split_keeps_area(p in convex_polygon(), (n, c) in halfplane()) {
        area_additive(&p, &n, &c)?;
    }

    #[test]
    fn overlay_tiles_each_input(s in segments()) {
        overlay_conserves(&s)?;
    }

    #[test]
    fn cut_partitions_satisfy_perimeter_identity(
        x in convex_polygon(),
        cuts in prop::collection::vec(halfplane(), 1..=4),
    ) {
        perimeter_skeleton(&x, &cuts)?;
    }

    #[test]
    fn clip_result_lies_inside(p in convex_polygon(), (n, c) in halfplane()) {
        if let Some(q) = gpe::geom::clip_halfplane(&p, &n, &c) {
            prop_assert!(p.contains_polygon(&q));
            prop_assert!(q.area() <= p.area());
        }
    }

    #[test]
    fn intersection_is_symmetric(p in convex_polygon(), q in convex_polygon()) {
        let a = gpe::geom::intersect_convex(&p, &q);
        let b = gpe::geom::intersect_convex(&q, &p);
        prop_assert_eq!(a, b);
    }
}
