//! Random rational geometry and the kernel properties checked on it.
#![allow(dead_code)]

use gpe::geom::{clip_halfplane, AffineMap2, ConvexPolygon, ExactPoint, Segment};
use gpe::join::{perimeter_identity_holds, JoinCell, JoinLevel};
use gpe::rational::rat;
use gpe::ExactRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

pub fn rational() -> impl Strategy<Value = ExactRational> {
    (-24i64..=24, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

pub fn point() -> impl Strategy<Value = ExactPoint> {
    (rational(), rational()).prop_map(|(x, y)| ExactPoint::new(x, y))
}

/// `normal·p ≤ offset` with a nonzero normal.
pub fn halfplane() -> impl Strategy<Value = ([ExactRational; 2], ExactRational)> {
    (rational(), rational(), rational())
        .prop_filter("nonzero normal", |(a, b, _)| !(a.is_zero() && b.is_zero()))
        .prop_map(|(a, b, c)| ([a, b], c))
}

/// A rectangle cut by up to three half-planes; the cuts that would empty it
/// are skipped.
pub fn convex_polygon() -> impl Strategy<Value = ConvexPolygon> {
    (
        rational(),
        rational(),
        1i64..=16,
        1i64..=16,
        prop::collection::vec(halfplane(), 0..=3),
    )
        .prop_map(|(x, y, w, h, cuts)| {
            let mut p = ConvexPolygon::rectangle(x.clone(), y.clone(), x + rat(w, 2), y + rat(h, 2)).unwrap();
            for (n, c) in cuts {
                if let Some(q) = clip_halfplane(&p, &n, &c) {
                    p = q;
                }
            }
            p
        })
}

/// Segments on a small integer grid, so collinear overlaps and shared
/// endpoints are common.
pub fn segments() -> impl Strategy<Value = Vec<Segment>> {
    let end = || (-4i64..=4, -4i64..=4).prop_map(|(x, y)| ExactPoint::from_ints(x, y));
    prop::collection::vec((end(), end()), 1..=8)
        .prop_map(|v| v.into_iter().filter_map(|(a, b)| Segment::new(a, b).ok()).collect())
}

fn negated(n: &[ExactRational; 2], c: &ExactRational) -> ([ExactRational; 2], ExactRational) {
    ([-&n[0], -&n[1]], -c)
}

pub fn clip_idempotent(p: &ConvexPolygon, n: &[ExactRational; 2], c: &ExactRational) -> Result<(), TestCaseError> {
    let once = clip_halfplane(p, n, c);
    let twice = once.as_ref().and_then(|q| clip_halfplane(q, n, c));
    prop_assert_eq!(once, twice);
    Ok(())
}

pub fn area_additive(p: &ConvexPolygon, n: &[ExactRational; 2], c: &ExactRational) -> Result<(), TestCaseError> {
    let (m, d) = negated(n, c);
    let area = |q: Option<ConvexPolygon>| q.map_or_else(ExactRational::zero, |q| q.area());
    let sum = area(clip_halfplane(p, n, c)) + area(clip_halfplane(p, &m, &d));
    prop_assert_eq!(sum, p.area());
    Ok(())
}

/// Position of `p` along `s` as a fraction of its length, if `p` is on the
/// line through `s`.
fn param(s: &Segment, p: &ExactPoint) -> Option<ExactRational> {
    let d = s.b.sub(&s.a);
    let w = p.sub(&s.a);
    if !d.cross(&w).is_zero() {
        return None;
    }
    Some(d.dot(&w) / d.norm_sq())
}

fn within(s: &Segment, piece: &Segment) -> Option<(ExactRational, ExactRational)> {
    let t0 = param(s, &piece.a)?;
    let t1 = param(s, &piece.b)?;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    (!lo.is_negative() && hi <= ExactRational::one()).then_some((lo, hi))
}

/// Every overlay piece lies on an input, and the pieces on each input tile
/// it exactly: disjoint interiors, no gaps.
pub fn overlay_conserves(segs: &[Segment]) -> Result<(), TestCaseError> {
    let pieces = gpe::geom::overlay_segments(segs);
    for p in &pieces {
        prop_assert!(segs.iter().any(|s| within(s, p).is_some()), "piece {} on no input", p);
    }
    for s in segs {
        let mut spans: Vec<(ExactRational, ExactRational)> = pieces.iter().filter_map(|p| within(s, p)).collect();
        spans.sort();
        let mut at = ExactRational::zero();
        for (lo, hi) in spans {
            prop_assert_eq!(&lo, &at, "gap or overlap on {}", s);
            at = hi;
        }
        prop_assert!(at.is_one(), "{} not covered", s);
    }
    Ok(())
}

/// Cuts `space` into cells by the given lines and checks
/// `Σ perim = perim(X) + 2·ℓ_interior` on the resulting partition.
pub fn perimeter_skeleton(
    space: &ConvexPolygon,
    cuts: &[([ExactRational; 2], ExactRational)],
) -> Result<(), TestCaseError> {
    let mut cells = vec![space.clone()];
    for (n, c) in cuts {
        let (m, d) = negated(n, c);
        cells = cells
            .iter()
            .flat_map(|p| [clip_halfplane(p, n, c), clip_halfplane(p, &m, &d)])
            .flatten()
            .collect();
    }
    let total: ExactRational = cells.iter().map(|c| c.area()).sum();
    prop_assert_eq!(total, space.area());
    let cells: Vec<JoinCell> = cells
        .into_iter()
        .enumerate()
        .map(|(i, region)| JoinCell {
            itinerary: vec![i],
            region,
            forward_map: AffineMap2::identity(),
        })
        .collect();
    let level = JoinLevel::from_cells(1, cells);
    prop_assert!(perimeter_identity_holds(&level, space));
    prop_assert!(level.stats.skeleton_length.hi >= space.perimeter().lo);
    Ok(())
}

fn show<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e:?}"))
}

/// Runs the four properties for `cases` instances each; returns the names
/// and outcomes.
pub fn run_geometry_suite(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let cfg = || Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut out = Vec::new();
    let mut runner = TestRunner::new(cfg());
    out.push((
        "clip_idempotence",
        show(runner.run(&(convex_polygon(), halfplane()), |(p, (n, c))| {
            clip_idempotent(&p, &n, &c)
        })),
    ));
    let mut runner = TestRunner::new(cfg());
    out.push((
        "area_additivity",
        show(runner.run(&(convex_polygon(), halfplane()), |(p, (n, c))| {
            area_additive(&p, &n, &c)
        })),
    ));
    let mut runner = TestRunner::new(cfg());
    out.push((
        "overlay_conservation",
        show(runner.run(&segments(), |s| overlay_conserves(&s))),
    ));
    let mut runner = TestRunner::new(cfg());
    out.push((
        "perimeter_skeleton_identity",
        show(runner.run(
            &(convex_polygon(), prop::collection::vec(halfplane(), 1..=4)),
            |(x, cuts)| perimeter_skeleton(&x, &cuts),
        )),
    ));
    out
}
