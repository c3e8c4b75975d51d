//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line straight to
//! stderr, so the lines show up even when the harness captures output.

mod common;

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use gpe::billiard::{
    billiard_map, billiard_map_inverse, count_itinerary_cells_series, finsler_length, singular_set, BilliardTable,
    Bounce, PhasePoint, SingularConfig, DEFAULT_BUDGET,
};
use gpe::entropy::{
    check_bounds, derivative_products, growth_rate, linear_fit, lyapunov, operator_norm_sq, power_law_fit,
    regular_sample, BoundConfig, GrowthSeries, DEFAULT_SEED, DEFAULT_WINDOW,
};
use gpe::geom::ConvexPolygon;
use gpe::gpe::{make_baker, make_rotation_exchange, make_shear_exchange, make_three_rectangle_exchange, GpeSystem};
use gpe::join::{join_sequence, JoinCaps, JoinLevel};
use gpe::oracle::{billiard_grid_itinerary_count, gpe_grid_itinerary_counts};
use gpe::rational::{rat, to_f64};
use gpe::scenario::{run, Scenario};
use gpe::ExactRational;

fn report(id: u32, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "{tag} criterion {id}: {detail}");
}

fn levels(g: &GpeSystem, n: usize) -> Vec<JoinLevel> {
    join_sequence(g, n, JoinCaps::default()).unwrap()
}

fn all_convex(levels: &[JoinLevel]) -> bool {
    levels
        .iter()
        .flat_map(|l| &l.cells)
        .all(|c| ConvexPolygon::new(c.region.vertices().to_vec()).as_ref() == Ok(&c.region))
}

#[test]
fn criterion_1_baker_exactness() {
    let start = Instant::now();
    let g = make_baker();
    let lv = levels(&g, 12);
    let counts_ok = lv.iter().all(|l| l.atom_count() == 1 << l.n);

    let counts: Vec<usize> = lv.iter().map(|l| l.atom_count()).collect();
    let h = growth_rate(&GrowthSeries::from_counts(&counts, DEFAULT_WINDOW).unwrap()).theta_tail;
    let h_ok = (h - LN_2).abs() <= 1e-9;

    let skeleton_ok = lv.iter().all(|l| {
        let e = &l.stats.skeleton_length;
        e.contains(&ExactRational::from_integer(((1i64 << l.n) + 3).into())) && to_f64(&e.width()) <= 1e-9
    });

    let sample = regular_sample(&g, 32, 12, DEFAULT_SEED);
    let lyap_ok = sample.iter().all(|x| {
        let exact = derivative_products(&g, x, 12)
            .unwrap()
            .iter()
            .enumerate()
            .all(|(k, m)| {
                let s = operator_norm_sq(m);
                s.is_exact() && s.lo == ExactRational::from_integer(4.into()).pow(k as i32 + 1)
            });
        exact && lyapunov(&g, x, 12).unwrap().iter().all(|v| (v - LN_2).abs() <= 1e-15)
    });

    let b = check_bounds(&g, 12, &sample, &BoundConfig::default()).unwrap();
    let margin = (b.h_estimate() - b.theta_estimate()).abs();
    let elapsed = start.elapsed();
    let pass = counts_ok && h_ok && skeleton_ok && lyap_ok && margin <= 1e-3 && elapsed < Duration::from_secs(60);
    report(
        1,
        pass,
        &format!(
            "counts={counts_ok} h={h:.15} skeleton={skeleton_ok} lyapunov={lyap_ok} |h-theta|={margin:.3e} t={elapsed:.2?}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_rectangle_exchange_linear_growth() {
    let start = Instant::now();
    let lv = levels(&make_three_rectangle_exchange(), 60);
    let ell: Vec<f64> = lv.iter().map(|l| l.stats.skeleton_length.mid_f64()).collect();
    let fit = linear_fit(&ell).unwrap();
    // Linear-growth constant fitted on the first half, checked on all levels.
    let c = (1..30).map(|k| (ell[k] - ell[0]) / (k + 1) as f64).fold(0.0, f64::max);
    let bound_ok = ell
        .iter()
        .enumerate()
        .all(|(k, l)| *l <= ell[0] + c * (k + 1) as f64 + 1e-12);
    let rates: Vec<f64> = lv.iter().map(|l| (l.atom_count() as f64).ln() / l.n as f64).collect();
    let rate60 = rates[59];
    let decreasing = rates[39..].windows(2).all(|w| w[1] < w[0]);
    let elapsed = start.elapsed();
    let pass =
        fit.relative_residual < 0.05 && bound_ok && rate60 <= 0.05 && decreasing && elapsed < Duration::from_secs(120);
    report(
        2,
        pass,
        &format!(
            "residual={:.4} c={c:.4} bound={bound_ok} rate60={rate60:.5} decreasing={decreasing} t={elapsed:.2?}",
            fit.relative_residual
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_hypotheses() {
    let baker = levels(&make_baker(), 12);
    let rects = levels(&make_three_rectangle_exchange(), 60);
    let b_max = baker.iter().chain(&rects).map(|l| l.stats.multiplicity).max().unwrap();
    let convex = all_convex(&baker) && all_convex(&rects);
    let pass = b_max <= 4 && convex;
    report(3, pass, &format!("max b={b_max} cells_convex={convex}"));
    assert!(pass);
}

#[test]
fn criterion_4_grid_oracle_equivalence() {
    let systems = [
        ("baker", make_baker()),
        ("rotation 2/5", make_rotation_exchange(&rat(2, 5)).unwrap()),
        ("shear", make_shear_exchange()),
    ];
    let mut detail = Vec::new();
    let mut pass = true;
    for (name, g) in &systems {
        let joined: Vec<usize> = levels(g, 4).iter().map(|l| l.atom_count()).collect();
        let grid = gpe_grid_itinerary_counts(g, 4, 256);
        pass &= joined == grid;
        detail.push(format!("{name} {joined:?} vs {grid:?}"));
    }
    report(4, pass, &detail.join("; "));
    assert!(pass);
}

struct SquareEvidence {
    oracle_ok: bool,
    counts: Vec<usize>,
    alpha: f64,
    rate20: f64,
    decreasing: bool,
    elapsed: Duration,
}

fn square_evidence() -> SquareEvidence {
    let start = Instant::now();
    let t = BilliardTable::unit_square();
    let counts = count_itinerary_cells_series(&t, 20, DEFAULT_BUDGET).unwrap();
    let oracle_ok = (1..=5).all(|n| counts[n - 1] == billiard_grid_itinerary_count(&t, n, 2000));
    let set = singular_set(&t, 20, &SingularConfig::default()).unwrap();
    let alpha = power_law_fit(&set.cumulative_lengths()).unwrap().alpha;
    let rates: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(k, c)| (*c as f64).ln() / (k + 1) as f64)
        .collect();
    let decreasing = rates.windows(2).all(|w| w[1] < w[0]);
    SquareEvidence {
        oracle_ok: oracle_ok && !set.truncated,
        counts,
        alpha,
        rate20: rates[19],
        decreasing,
        elapsed: start.elapsed(),
    }
}

/// The count-rate threshold cannot be met at `n = 20`: `|P_n|` is
/// nondecreasing with `|P_1| = 12`, so `ln|P_20|/20 ≥ ln 12/20 > 0.08`. The
/// line reports FAIL; the strict assertion is the ignored test below.
#[test]
fn criterion_5_square_billiard() {
    let e = square_evidence();
    let rate_ok = e.rate20 <= 0.08;
    let pass = e.oracle_ok && e.alpha <= 2.1 && rate_ok && e.decreasing && e.elapsed < Duration::from_secs(600);
    report(
        5,
        pass,
        &format!(
            "oracle={} alpha={:.4} rate20={:.4} (<=0.08: {rate_ok}, floor ln12/20={:.4}) decreasing={} |P_20|={} t={:.2?}",
            e.oracle_ok,
            e.alpha,
            e.rate20,
            12f64.ln() / 20.0,
            e.decreasing,
            e.counts[19],
            e.elapsed
        ),
    );
    assert!(e.oracle_ok);
    assert!(e.alpha <= 2.1);
    assert!(e.decreasing);
    assert!(e.elapsed < Duration::from_secs(600));
}

#[test]
#[ignore = "unattainable threshold: ln|P_20|/20 is at least ln 12/20"]
fn criterion_5_count_rate_threshold() {
    let e = square_evidence();
    assert!(e.rate20 <= 0.08, "ln|P_20|/20 = {}", e.rate20);
}

fn s_gap(t: &BilliardTable, a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    d.min(t.length() - d)
}

#[test]
fn criterion_6_billiard_physics() {
    let t = BilliardTable::unit_square();
    // A perpendicular shot from distance d along side i lands on side i+2
    // at distance 1 - d, still perpendicular.
    let mut p = PhasePoint::new(1.0 / 3.0, FRAC_PI_2);
    let mut period_err: f64 = 0.0;
    for _ in 0..10_000 {
        let (i, d) = t.locate(p.s);
        let Bounce::Hit(q, j) = billiard_map(&t, p).unwrap() else {
            panic!("vertex on a perpendicular orbit")
        };
        assert_eq!(j, (i + 2) % 4);
        let want = t.offset(j) + (1.0 - d);
        period_err = period_err.max(s_gap(&t, q.s, want)).max((q.theta - FRAC_PI_2).abs());
        p = q;
    }
    let drift = s_gap(&t, p.s, 1.0 / 3.0);

    let mut inv_err: f64 = 0.0;
    let mut bounces = 0;
    for start in [
        PhasePoint::new(0.3, 1.1),
        PhasePoint::new(1.7, 0.4),
        PhasePoint::new(3.2, 2.9),
    ] {
        let mut p = start;
        for _ in 0..10_000 {
            let Bounce::Hit(q, _) = billiard_map(&t, p).unwrap() else {
                break;
            };
            let Bounce::Hit(back, _) = billiard_map_inverse(&t, q).unwrap() else {
                panic!("inverse hit a vertex")
            };
            inv_err = inv_err.max(s_gap(&t, back.s, p.s)).max((back.theta - p.theta).abs());
            p = q;
            bounces += 1;
        }
    }

    let closed_forms = [
        ([PhasePoint::new(0.3, 0.2), PhasePoint::new(0.3, 1.7)], 1.5),
        ([PhasePoint::new(0.0, FRAC_PI_2), PhasePoint::new(1.0, FRAC_PI_2)], 1.0),
        ([PhasePoint::new(0.0, PI / 6.0), PhasePoint::new(2.0, PI / 6.0)], 1.0),
        (
            [PhasePoint::new(1.25, PI / 4.0), PhasePoint::new(3.25, PI / 4.0)],
            2f64.sqrt(),
        ),
        ([PhasePoint::new(2.5, 3.0), PhasePoint::new(2.5, 0.1)], 2.9),
    ];
    let finsler_err = closed_forms
        .iter()
        .map(|(c, want)| (finsler_length(c) - want).abs())
        .fold(0.0, f64::max);

    let pass = period_err <= 1e-12 && inv_err <= 1e-9 && bounces >= 10_000 && finsler_err <= 1e-12;
    report(
        6,
        pass,
        &format!("period2 err={period_err:.2e} drift after 10^4={drift:.2e} involution err={inv_err:.2e} over {bounces} bounces finsler err={finsler_err:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_7_geometry_properties() {
    let results = common::run_geometry_suite(10_000);
    let pass = results.iter().all(|(_, r)| r.is_ok());
    let detail: Vec<String> = results
        .iter()
        .map(|(name, r)| format!("{name}={}", if r.is_ok() { "ok" } else { "failed" }))
        .collect();
    report(7, pass, &format!("10000 cases each: {}", detail.join(" ")));
    for (name, r) in &results {
        assert!(r.is_ok(), "{name}: {r:?}");
    }
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn run_into(path: &Path, out: &Path) -> Vec<(String, Vec<u8>)> {
    let mut s = Scenario::from_file(path).unwrap();
    s.out = out.to_path_buf();
    // capped runs still write their partial files
    let _ = run(&s);
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(out)
        .map(|d| {
            d.flatten()
                .map(|e| {
                    (
                        e.file_name().to_string_lossy().into_owned(),
                        fs::read(e.path()).unwrap(),
                    )
                })
                .collect()
        })
        .unwrap_or_default();
    files.sort();
    files
}

#[test]
fn criterion_8_determinism() {
    let mut names: Vec<PathBuf> = fs::read_dir(scenarios_dir())
        .unwrap()
        .flatten()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "scn"))
        .collect();
    names.sort();
    let mut differing = Vec::new();
    let mut compared = 0;
    for path in &names {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let first = run_into(path, a.path());
        let second = run_into(path, b.path());
        compared += first.len();
        if first != second {
            differing.push(path.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    let pass = differing.is_empty() && compared > 0;
    report(
        8,
        pass,
        &format!(
            "{} scenarios, {compared} files compared, differing={differing:?}",
            names.len()
        ),
    );
    assert!(pass);
}
