//! The singular set `⋃_{k<n} T^{-k} ∂P` as sampled polylines.
//!
//! Each first-return curve is sampled in its side parameter `u` and every
//! sample is pushed through `k` applications of `T⁻¹ = R T R`. Adjacent
//! samples whose backward itineraries differ are bisected down to `u_tol`;
//! within a run of equal itineraries samples are inserted until the Finsler
//! gap is below `tol`. Maximal runs are the curve pieces.

use rayon::prelude::*;

use crate::billiard::{
    finsler_gap, finsler_length, first_return_partition, orbit_sides, BilliardTable, PhasePoint, ReturnCurve,
};
use crate::error::BilliardError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `T^{-k}` of the first-return curves.
    Backward,
    /// `T^{k}` of their reversal images, which is the same set reflected by `R`.
    Forward,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularConfig {
    /// Largest Finsler gap allowed between consecutive samples of a piece.
    pub tol: f64,
    pub base_samples: usize,
    /// Bisection stops once the side-parameter gap is this small.
    pub u_tol: f64,
    /// Sample budget per base curve and generation.
    pub max_samples: usize,
}

impl Default for SingularConfig {
    fn default() -> Self {
        SingularConfig {
            tol: 1e-2,
            base_samples: 64,
            u_tol: 1e-13,
            max_samples: 1 << 20,
        }
    }
}

/// One piece of `T^{-k}` applied to a first-return curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularCurve {
    pub id: usize,
    pub generation: usize,
    pub side: usize,
    pub vertex: usize,
    /// Sides visited by the `k` iterates.
    pub itinerary: Vec<usize>,
    pub samples: Vec<PhasePoint>,
}

impl SingularCurve {
    pub fn length(&self) -> f64 {
        finsler_length(&self.samples)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularSet {
    pub curves: Vec<SingularCurve>,
    /// Finsler length of generation `k`, for `k = 0..n`.
    pub generation_lengths: Vec<f64>,
    /// A sample budget ran out; lengths are then lower bounds.
    pub truncated: bool,
}

impl SingularSet {
    pub fn total_length(&self) -> f64 {
        self.generation_lengths.iter().sum()
    }

    /// Length of `⋃_{k<m} T^{-k} ∂P` for `m = 1..=n`.
    pub fn cumulative_lengths(&self) -> Vec<f64> {
        self.generation_lengths
            .iter()
            .scan(0.0, |acc, l| {
                *acc += l;
                Some(*acc)
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Sample {
    u: f64,
    image: Option<(PhasePoint, Vec<usize>)>,
}

struct Tracker<'a> {
    t: &'a BilliardTable,
    curve: ReturnCurve,
    k: usize,
    dir: Direction,
    cfg: &'a SingularConfig,
    used: usize,
    truncated: bool,
}

impl Tracker<'_> {
    fn eval(&self, u: f64) -> Result<Sample, BilliardError> {
        let p = self.curve.point(self.t, u);
        let image = match self.dir {
            Direction::Backward => orbit_sides(self.t, p, self.k, true)?,
            Direction::Forward => orbit_sides(self.t, p.reversed(), self.k, false)?,
        }
        .map(|(sides, q)| (q, sides));
        Ok(Sample { u, image })
    }

    fn needs_split(&self, a: &Sample, b: &Sample) -> bool {
        if b.u - a.u <= self.cfg.u_tol {
            return false;
        }
        match (&a.image, &b.image) {
            (Some((pa, la)), Some((pb, lb))) if la == lb => finsler_gap(*pa, *pb) > self.cfg.tol,
            _ => true,
        }
    }

    fn refine(&mut self, a: &Sample, b: &Sample, out: &mut Vec<Sample>) -> Result<(), BilliardError> {
        if !self.needs_split(a, b) {
            return Ok(());
        }
        if self.used >= self.cfg.max_samples {
            self.truncated = true;
            return Ok(());
        }
        self.used += 1;
        let m = self.eval(0.5 * (a.u + b.u))?;
        self.refine(a, &m, out)?;
        out.push(m.clone());
        self.refine(&m, b, out)
    }

    fn run(&mut self) -> Result<Vec<Sample>, BilliardError> {
        let lo = 1e-10;
        let n = self.cfg.base_samples.max(1);
        let grid: Vec<Sample> = (0..=n)
            .map(|j| self.eval(lo + (1.0 - 2.0 * lo) * j as f64 / n as f64))
            .collect::<Result<_, _>>()?;
        self.used = grid.len();
        let mut out = vec![grid[0].clone()];
        for w in grid.windows(2) {
            self.refine(&w[0], &w[1], &mut out)?;
            out.push(w[1].clone());
        }
        Ok(out)
    }
}

fn pieces(samples: Vec<Sample>, curve: ReturnCurve, k: usize) -> Vec<SingularCurve> {
    let mut out: Vec<SingularCurve> = Vec::new();
    let mut cur: Option<SingularCurve> = None;
    for s in samples {
        match s.image {
            Some((p, label)) => match &mut cur {
                Some(c) if c.itinerary == label => c.samples.push(p),
                _ => {
                    out.extend(cur.take());
                    cur = Some(SingularCurve {
                        id: 0,
                        generation: k,
                        side: curve.side,
                        vertex: curve.vertex,
                        itinerary: label,
                        samples: vec![p],
                    });
                }
            },
            None => out.extend(cur.take()),
        }
    }
    out.extend(cur);
    out.retain(|c| c.samples.len() >= 2);
    out
}

/// Singular set of `P_n` traced by sampling, generations `0..n`.
pub fn singular_set(t: &BilliardTable, n: usize, cfg: &SingularConfig) -> Result<SingularSet, BilliardError> {
    trace(t, n, cfg, Direction::Backward)
}

pub fn trace(t: &BilliardTable, n: usize, cfg: &SingularConfig, dir: Direction) -> Result<SingularSet, BilliardError> {
    let part = first_return_partition(t)?;
    let jobs: Vec<(usize, ReturnCurve)> = (0..n).flat_map(|k| part.curves.iter().map(move |c| (k, *c))).collect();
    let results: Vec<(Vec<SingularCurve>, bool)> = jobs
        .par_iter()
        .map(|&(k, curve)| {
            let mut tr = Tracker {
                t,
                curve,
                k,
                dir,
                cfg,
                used: 0,
                truncated: false,
            };
            let samples = tr.run()?;
            Ok((pieces(samples, curve, k), tr.truncated))
        })
        .collect::<Result<_, BilliardError>>()?;
    let mut curves = Vec::new();
    let mut generation_lengths = vec![0.0; n];
    let mut truncated = false;
    for (cs, tr) in results {
        truncated |= tr;
        for mut c in cs {
            c.id = curves.len();
            generation_lengths[c.generation] += c.length();
            curves.push(c);
        }
    }
    Ok(SingularSet {
        curves,
        generation_lengths,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_base_length() -> f64 {
        // 8 curves, each ∫ sinθ ds = asinh(1) plus a θ sweep of π/4
        8.0 * (1f64.asinh() + std::f64::consts::FRAC_PI_4)
    }

    #[test]
    fn generation_zero_is_the_partition() {
        let t = BilliardTable::unit_square();
        let s = singular_set(&t, 1, &SingularConfig::default()).unwrap();
        assert_eq!(s.curves.len(), 8);
        assert!((s.total_length() - square_base_length()).abs() < 1e-4);
        assert!(!s.truncated);
    }

    #[test]
    fn reversal_symmetry() {
        let t = BilliardTable::unit_square();
        let cfg = SingularConfig::default();
        let b = trace(&t, 4, &cfg, Direction::Backward).unwrap();
        let f = trace(&t, 4, &cfg, Direction::Forward).unwrap();
        for (x, y) in b.generation_lengths.iter().zip(&f.generation_lengths) {
            assert!((x - y).abs() < 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn lengths_grow() {
        let t = BilliardTable::unit_square();
        let s = singular_set(&t, 5, &SingularConfig::default()).unwrap();
        let c = s.cumulative_lengths();
        assert!(c.windows(2).all(|w| w[1] > w[0]));
        assert!(s.curves.iter().all(|c| c.itinerary.len() == c.generation));
    }

    #[test]
    fn tiny_budget_marks_truncation() {
        let t = BilliardTable::unit_square();
        let cfg = SingularConfig {
            max_samples: 10,
            ..SingularConfig::default()
        };
        assert!(singular_set(&t, 2, &cfg).unwrap().truncated);
    }
}
