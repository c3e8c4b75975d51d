//! Independent brute-force oracles used to cross-check the engines.
//!
//! None of these share code paths with the routines they check: the GPE
//! oracle only calls `evaluate`, the billiard grid oracle only iterates the
//! floating phase map, and the singular-length oracle integrates vertex
//! fibres in closed form over unfolded corridors.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::billiard::{billiard_map, for_each_corridor, BilliardTable, Bounce, Corridor, PhasePoint};
use crate::error::BilliardError;
use crate::geom::{ExactPoint, Location};
use crate::gpe::GpeSystem;
use crate::rational::ExactRational;

/// Distinct length-`n` itineraries of the `grid × grid` cell centres of the
/// bounding box of `X` that stay regular for `n` steps.
pub fn gpe_grid_itinerary_count(g: &GpeSystem, n: usize, grid: usize) -> usize {
    gpe_grid_itinerary_counts(g, n, grid)[n - 1]
}

/// [`gpe_grid_itinerary_count`] for `n = 1..=n_max` from one orbit per point.
pub fn gpe_grid_itinerary_counts(g: &GpeSystem, n_max: usize, grid: usize) -> Vec<usize> {
    let (lo, hi) = g.space().bounding_box();
    let w = &hi.x - &lo.x;
    let h = &hi.y - &lo.y;
    let den = ExactRational::from_integer((2 * grid as i64).into());
    let orbits: Vec<Vec<usize>> = (0..grid)
        .into_par_iter()
        .flat_map_iter(|i| {
            let fx = ExactRational::from_integer((2 * i as i64 + 1).into()) / &den;
            let x = &lo.x + &w * fx;
            let (lo, h, den) = (&lo, &h, &den);
            (0..grid).filter_map(move |j| {
                let fy = ExactRational::from_integer((2 * j as i64 + 1).into()) / den;
                let p = ExactPoint::new(x.clone(), &lo.y + h * fy);
                if g.space().locate(&p) != Location::Interior {
                    return None;
                }
                // the itinerary prefix of length k is valid for k up to the first singular step
                g.evaluate(&p, n_max).ok().map(|o| o.itinerary)
            })
        })
        .collect();
    (1..=n_max)
        .map(|n| {
            orbits
                .iter()
                .filter(|it| it.len() >= n)
                .map(|it| &it[..n])
                .collect::<HashSet<_>>()
                .len()
        })
        .collect()
}

/// Distinct side sequences `(i_0, …, i_n)` seen from the `grid × grid` cell
/// centres of `(0, L) × (0, π)`, skipping orbits that hit a vertex.
pub fn billiard_grid_itinerary_count(t: &BilliardTable, n: usize, grid: usize) -> usize {
    let l = t.length();
    let found: HashSet<Vec<u8>> = (0..grid)
        .into_par_iter()
        .flat_map_iter(|i| {
            let s = (i as f64 + 0.5) * l / grid as f64;
            (0..grid).filter_map(move |j| {
                let theta = (j as f64 + 0.5) * std::f64::consts::PI / grid as f64;
                let mut p = PhasePoint::new(s, theta);
                let mut seq = Vec::with_capacity(n + 1);
                seq.push(t.locate(s).0 as u8);
                for _ in 0..n {
                    match billiard_map(t, p) {
                        Ok(Bounce::Hit(q, side)) => {
                            seq.push(side as u8);
                            p = q;
                        }
                        _ => return None,
                    }
                }
                Some(seq)
            })
        })
        .collect();
    found.len()
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Finsler length of the vertex fibre over `S_0` aimed at `w`, restricted to
/// footpoints whose line to `w` crosses `S_1, …, S_k` in order.
fn fibre_length(c: &Corridor, w: [f64; 2]) -> f64 {
    let f = |p: &ExactPoint| p.to_f64();
    let (a, q) = (f(&c.segments[0].0), f(&c.segments[0].1));
    let len = (q[0] - a[0]).hypot(q[1] - a[1]);
    let t = [(q[0] - a[0]) / len, (q[1] - a[1]) / len];
    let wa = sub(w, a);
    let h = cross(t, wa);
    if h <= 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, len);
    // orient(P(σ), w, X) = α − σβ must be < 0 at P_j and > 0 at Q_j
    let mut need = |x: [f64; 2], positive: bool| {
        let alpha = cross(wa, sub(x, a));
        let beta = cross(t, sub(x, w));
        if beta == 0.0 {
            if (alpha > 0.0) != positive {
                hi = lo;
            }
            return;
        }
        let root = alpha / beta;
        // α − σβ > 0 ⟺ σ < root when β > 0
        if (beta > 0.0) == positive {
            hi = hi.min(root);
        } else {
            lo = lo.max(root);
        }
    };
    for (p, q) in &c.segments[1..] {
        need(f(p), false);
        need(f(q), true);
    }
    if hi <= lo {
        return 0.0;
    }
    let along = t[0] * wa[0] + t[1] * wa[1];
    let theta = |s: f64| h.atan2(along - s);
    h * (((hi - along) / h).asinh() - ((lo - along) / h).asinh()) + (theta(hi) - theta(lo)).abs()
}

/// Finsler length of generation `k` of the singular set for `k = 0..n`, from
/// the corridors of `k + 1` sides: the piece of `T^{-k}` of the curve aimed at
/// vertex `v` is the fibre over the first side aimed at the unfolded `v`.
pub fn corridor_singular_lengths(t: &BilliardTable, n: usize, budget: usize) -> Result<Vec<f64>, BilliardError> {
    let m = t.len();
    let per_root = for_each_corridor(t, n, budget, |c, acc: &mut Vec<f64>| {
        let k = c.depth();
        if acc.len() <= k {
            acc.resize(k + 1, 0.0);
        }
        let last = *c.sides.last().unwrap();
        for v in 0..m {
            if v == last || v == (last + 1) % m {
                continue;
            }
            let w = c.isometry.apply(&t.vertices()[v]).to_f64();
            acc[k] += fibre_length(c, w);
        }
    })?;
    let mut out = vec![0.0; n];
    for v in per_root {
        for (k, x) in v.into_iter().enumerate() {
            out[k] += x;
        }
    }
    Ok(out)
}

/// `∫ sin θ ds + ∫ |dθ|` of a fibre given by `θ(s)` on a side, by the
/// composite trapezoid rule on `steps` panels.
pub fn fibre_quadrature(theta: impl Fn(f64) -> f64, len: f64, steps: usize) -> f64 {
    let h = len / steps as f64;
    let mut total = 0.0;
    let mut prev = theta(0.0);
    for i in 1..=steps {
        let cur = theta(i as f64 * h);
        total += 0.5 * h * (prev.sin() + cur.sin()) + (cur - prev).abs();
        prev = cur;
    }
    total
}
