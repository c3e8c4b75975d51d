use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entropy::{growth_rate, lyapunov, GrowthEstimate, GrowthSeries, DEFAULT_WINDOW, FINSLER_NORM};
use crate::error::EntropyError;
use crate::geom::{ExactPoint, Location};
use crate::gpe::GpeSystem;
use crate::join::{join_sequence, JoinCaps, JoinLevel};
use crate::rational::ExactRational;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_SAMPLE: usize = 32;

/// Grid resolution for regular-point sampling: coordinates are odd multiples
/// of `1/(2·GRID)` inside the bounding box of `X`.
const GRID: i64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct BoundConfig {
    pub window: f64,
    pub tol: f64,
    pub caps: JoinCaps,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            window: DEFAULT_WINDOW,
            tol: DEFAULT_TOL,
            caps: JoinCaps::default(),
        }
    }
}

/// `count` points of `X` whose orbits stay regular for `n` steps, drawn from
/// a fixed rational grid; singular draws are discarded and redrawn.
pub fn regular_sample(g: &GpeSystem, count: usize, n: usize, seed: u64) -> Vec<ExactPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = g.space().bounding_box();
    let w = &hi.x - &lo.x;
    let h = &hi.y - &lo.y;
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 1000 * count.max(1) {
        attempts += 1;
        let i: i64 = rng.gen_range(0..GRID);
        let j: i64 = rng.gen_range(0..GRID);
        let fx = ExactRational::new((2 * i + 1).into(), (2 * GRID).into());
        let fy = ExactRational::new((2 * j + 1).into(), (2 * GRID).into());
        let p = ExactPoint::new(&lo.x + &w * fx, &lo.y + &h * fy);
        if g.space().locate(&p) != Location::Interior {
            continue;
        }
        if matches!(g.evaluate(&p, n), Ok(o) if o.is_regular()) {
            out.push(p);
        }
    }
    out
}

/// Hypothesis evidence accompanying the inequality margins.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisFlags {
    /// Every cell is a convex polygon, hence connected and a disc.
    pub cells_convex: bool,
    pub b_growth_le_theta: bool,
    /// Smallest `N'` with `λ_n(x)/n ≤ ϑ + tol` for all sampled `x` and `n ≥ N'`.
    pub uniformity_n: Option<usize>,
    /// Largest cell diameter shrank to under half its level-1 value.
    pub generating_evidence: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub levels: usize,
    pub h: GrowthEstimate,
    pub theta: GrowthEstimate,
    pub b_growth: f64,
    pub b_max: usize,
    /// `max_x λ_N(x)/N` over the sample.
    pub lyapunov_sup: f64,
    pub sample_size: usize,
    pub tol: f64,
    pub flags: HypothesisFlags,
}

impl BoundReport {
    pub fn h_estimate(&self) -> f64 {
        self.h.theta_tail
    }

    pub fn theta_estimate(&self) -> f64 {
        self.theta.theta_tail
    }

    /// `ϑ − h`; nonnegative up to `tol` whenever `h(T,R) ≤ ϑ` holds.
    pub fn margin_entropy(&self) -> f64 {
        self.theta_estimate() - self.h_estimate()
    }

    /// `ϑ − sup λ_N/N` over the sample.
    pub fn margin_lyapunov(&self) -> f64 {
        self.theta_estimate() - self.lyapunov_sup
    }

    /// `h ≤ ϑ` holds if the tail margin is within `tol`, or if the count
    /// series is flagged subexponential: then `h(T,R) = 0` and the tail
    /// margin only compares polynomial degrees.
    pub fn entropy_bound_holds(&self) -> bool {
        self.h.subexponential || self.margin_entropy() >= -self.tol
    }

    pub fn violation(&self) -> bool {
        !self.entropy_bound_holds() || self.margin_lyapunov() < -self.tol
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let f = |x: f64| format!("{x:.12e}");
        let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
        vec![
            ("levels", self.levels.to_string()),
            ("h_estimate", f(self.h.theta_tail)),
            ("h_slope", f(self.h.theta_slope)),
            ("h_residual", f(self.h.residual)),
            ("theta_estimate", f(self.theta.theta_tail)),
            ("theta_slope", f(self.theta.theta_slope)),
            ("theta_residual", f(self.theta.residual)),
            ("theta_loglog_slope", f(self.theta.loglog_slope)),
            ("theta_subexponential", self.theta.subexponential.to_string()),
            ("b_max", self.b_max.to_string()),
            ("b_growth", f(self.b_growth)),
            ("lyapunov_sup", f(self.lyapunov_sup)),
            ("sample_size", self.sample_size.to_string()),
            ("finsler_norm", FINSLER_NORM.to_string()),
            ("margin_entropy", f(self.margin_entropy())),
            ("h_subexponential", self.h.subexponential.to_string()),
            ("entropy_bound_holds", self.entropy_bound_holds().to_string()),
            ("margin_lyapunov", f(self.margin_lyapunov())),
            ("tol", f(self.tol)),
            ("cells_convex", self.flags.cells_convex.to_string()),
            ("b_growth_le_theta", self.flags.b_growth_le_theta.to_string()),
            ("uniformity_n_evidence", opt(self.flags.uniformity_n)),
            ("generating_evidence", self.flags.generating_evidence.to_string()),
            ("h_is_lower_bound_proxy", (!self.flags.generating_evidence).to_string()),
            ("violation", self.violation().to_string()),
        ]
    }

    /// Flat `key=value` block, one key per line, stable key order.
    pub fn to_key_values(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.pairs() {
            writeln!(s, "{k}={v}").unwrap();
        }
        s
    }

    /// A header row of keys and one row of values.
    pub fn to_csv(&self) -> String {
        let p = self.pairs();
        let keys: Vec<&str> = p.iter().map(|(k, _)| *k).collect();
        let vals: Vec<&str> = p.iter().map(|(_, v)| v.as_str()).collect();
        format!("{}\n{}\n", keys.join(","), vals.join(","))
    }
}

/// Entropy of `T` relative to `P`: the growth rate of `|R_n|`.
pub fn relative_entropy(g: &GpeSystem, n: usize, cfg: &BoundConfig) -> Result<(f64, GrowthSeries), EntropyError> {
    let levels = join_sequence(g, n, cfg.caps)?;
    let counts: Vec<usize> = levels.iter().map(|l| l.atom_count()).collect();
    let s = GrowthSeries::from_counts(&counts, cfg.window)?;
    Ok((growth_rate(&s).theta_tail, s))
}

pub fn check_bounds(
    g: &GpeSystem,
    n: usize,
    sample: &[ExactPoint],
    cfg: &BoundConfig,
) -> Result<BoundReport, EntropyError> {
    let levels = join_sequence(g, n, cfg.caps)?;
    bounds_from_levels(g, &levels, sample, cfg)
}

/// [`check_bounds`] on precomputed join levels.
pub fn bounds_from_levels(
    g: &GpeSystem,
    levels: &[JoinLevel],
    sample: &[ExactPoint],
    cfg: &BoundConfig,
) -> Result<BoundReport, EntropyError> {
    if sample.is_empty() {
        return Err(EntropyError::EmptySample);
    }
    let n = levels.len();
    let counts: Vec<usize> = levels.iter().map(|l| l.atom_count()).collect();
    let h = growth_rate(&GrowthSeries::from_counts(&counts, cfg.window)?);
    let ell: Vec<f64> = levels.iter().map(|l| l.stats.skeleton_length.mid_f64()).collect();
    let theta = growth_rate(&GrowthSeries::new(ell, cfg.window)?);
    let bs: Vec<usize> = levels.iter().map(|l| l.stats.multiplicity.max(1)).collect();
    let b_growth = growth_rate(&GrowthSeries::from_counts(&bs, cfg.window)?).theta_tail;
    let b_max = bs.iter().copied().max().unwrap_or(0);
    let per_point: Vec<Vec<f64>> = sample
        .par_iter()
        .map(|x| lyapunov(g, x, n))
        .collect::<Result<Vec<_>, _>>()?;
    let lyapunov_sup = per_point.iter().map(|v| v[n - 1]).fold(f64::NEG_INFINITY, f64::max);
    let bound = theta.theta_tail + cfg.tol;
    // smallest N' such that every n >= N' satisfies the bound
    let mut uniformity_n = Some(1);
    for k in (0..n).rev() {
        if per_point.iter().any(|v| v[k] > bound) {
            uniformity_n = if k + 1 == n { None } else { Some(k + 2) };
            break;
        }
    }
    let d1 = &levels[0].stats.max_diameter;
    let dn = &levels[n - 1].stats.max_diameter;
    let flags = HypothesisFlags {
        cells_convex: true,
        b_growth_le_theta: b_growth <= theta.theta_tail + cfg.tol,
        uniformity_n,
        generating_evidence: dn.hi_f64() < 0.5 * d1.lo_f64(),
    };
    Ok(BoundReport {
        levels: n,
        h,
        theta,
        b_growth,
        b_max,
        lyapunov_sup,
        sample_size: sample.len(),
        tol: cfg.tol,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpe::{make_baker, make_identity_exchange, make_three_rectangle_exchange};
    use std::f64::consts::LN_2;

    #[test]
    fn baker_tight() {
        let g = make_baker();
        let sample = regular_sample(&g, 8, 10, DEFAULT_SEED);
        assert_eq!(sample.len(), 8);
        let r = check_bounds(&g, 10, &sample, &BoundConfig::default()).unwrap();
        assert!((r.h_estimate() - LN_2).abs() < 1e-9);
        assert!(r.margin_entropy() >= 0.0 && r.margin_entropy() < 2e-3);
        assert!((r.lyapunov_sup - LN_2).abs() < 1e-12);
        assert!(!r.violation());
        assert!(!r.flags.generating_evidence);
        assert_eq!(r.flags.uniformity_n, Some(1));
    }

    #[test]
    fn identity_all_zero() {
        let g = make_identity_exchange(1);
        let sample = regular_sample(&g, 4, 6, 1);
        let cfg = BoundConfig::default();
        let r = check_bounds(&g, 6, &sample, &cfg).unwrap();
        assert_eq!(r.h_estimate(), 0.0);
        assert_eq!(r.lyapunov_sup, 0.0);
        assert!(!r.violation());
        let (h, s) = relative_entropy(&g, 6, &cfg).unwrap();
        assert_eq!(h, 0.0);
        assert_eq!(s.values(), &[1.0; 6]);
    }

    #[test]
    fn euclidean_exchange_subexponential() {
        let g = make_three_rectangle_exchange();
        let sample = regular_sample(&g, 4, 20, 7);
        let r = check_bounds(&g, 20, &sample, &BoundConfig::default()).unwrap();
        assert!(r.margin_entropy() >= -1e-6);
        assert!(r.theta.subexponential);
        assert!(!r.violation());
    }

    #[test]
    fn report_serialization_is_stable() {
        let g = make_baker();
        let sample = regular_sample(&g, 4, 6, 3);
        let r = check_bounds(&g, 6, &sample, &BoundConfig::default()).unwrap();
        let kv = r.to_key_values();
        assert!(kv.starts_with("levels=6\nh_estimate="));
        assert!(kv.contains("finsler_norm=euclidean-operator-norm\n"));
        let csv = r.to_csv();
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].split(',').count(), rows[1].split(',').count());
        assert_eq!(
            kv,
            check_bounds(&g, 6, &sample, &BoundConfig::default())
                .unwrap()
                .to_key_values()
        );
    }

    #[test]
    fn empty_sample_rejected() {
        let g = make_baker();
        assert!(matches!(
            check_bounds(&g, 4, &[], &BoundConfig::default()),
            Err(EntropyError::EmptySample)
        ));
    }
}
