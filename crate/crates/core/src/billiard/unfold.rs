//! Exact itinerary counting by unfolding.
//!
//! A side sequence `(i_0, …, i_n)` is realised by an open set of phase points
//! iff some directed line enters the table through side `i_0` and then leaves
//! the successive reflected copies through the unfolded sides `S_1, …, S_n`.
//! Writing the line as `f(p) = a·x + b·y + c = 0` with `f > 0` on its left,
//! each unfolded side `[P_j, Q_j]`, oriented with the previous copy on its
//! left, contributes `f(P_0) > 0 > f(Q_0)` or `f(P_j) < 0 < f(Q_j)`. These are
//! strict homogeneous inequalities in `(a, b, c)`, feasible iff the closed
//! cone they cut out is 3-dimensional.

use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::billiard::BilliardTable;
use crate::error::BilliardError;
use crate::geom::{AffineMap2, ExactPoint};

type Vec3 = [BigInt; 3];

fn dot(a: &Vec3, b: &Vec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn is_zero(v: &Vec3) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn primitive(v: Vec3) -> Vec3 {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if g.is_zero() || g.is_one() {
        return v;
    }
    [&v[0] / &g, &v[1] / &g, &v[2] / &g]
}

/// `sign·(x, y, 1)` scaled to a primitive integer vector.
fn row(p: &ExactPoint, positive: bool) -> Vec3 {
    let l = p.x.denom().lcm(p.y.denom());
    let x = p.x.numer() * (&l / p.x.denom());
    let y = p.y.numer() * (&l / p.y.denom());
    let v = if positive { [x, y, l] } else { [-x, -y, -l] };
    primitive(v)
}

/// Feasibility state: rows collected until three are independent, then a
/// pointed cone kept as a cyclic list of extreme rays.
#[derive(Clone, Debug)]
enum Cone {
    Pending(Vec<Vec3>),
    Rays(Vec<Vec3>),
}

impl Cone {
    fn add(self, rows: &[Vec3]) -> Option<Cone> {
        match self {
            Cone::Pending(mut have) => {
                have.extend(rows.iter().cloned());
                match simplicial(&have) {
                    None => Some(Cone::Pending(have)),
                    Some(mut rays) => {
                        for h in &have {
                            rays = clip(rays, h)?;
                        }
                        Some(Cone::Rays(rays))
                    }
                }
            }
            Cone::Rays(mut rays) => {
                for h in rows {
                    rays = clip(rays, h)?;
                }
                Some(Cone::Rays(rays))
            }
        }
    }
}

/// Generators of `{r : H r >= 0}` for the first three independent rows.
fn simplicial(rows: &[Vec3]) -> Option<Vec<Vec3>> {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let c = cross(&rows[i], &rows[j]);
            if is_zero(&c) {
                continue;
            }
            for k in j + 1..rows.len() {
                let det = dot(&c, &rows[k]);
                if det.is_zero() {
                    continue;
                }
                // columns of adj(H) are the pairwise cross products
                let s = if det.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                };
                let (a, b, e) = (&rows[i], &rows[j], &rows[k]);
                let g = [cross(b, e), cross(e, a), cross(a, b)];
                return Some(
                    g.into_iter()
                        .map(|v| primitive([&v[0] * &s, &v[1] * &s, &v[2] * &s]))
                        .collect(),
                );
            }
        }
    }
    None
}

/// Cuts the cone with `h·r >= 0`; `None` once it is no longer 3-dimensional.
fn clip(rays: Vec<Vec3>, h: &Vec3) -> Option<Vec<Vec3>> {
    let vals: Vec<BigInt> = rays.iter().map(|r| dot(h, r)).collect();
    if vals.iter().all(|v| !v.is_negative()) {
        return Some(rays);
    }
    let m = rays.len();
    let mut out: Vec<Vec3> = Vec::with_capacity(m + 1);
    for k in 0..m {
        let l = (k + 1) % m;
        let (vk, vl) = (&vals[k], &vals[l]);
        if !vk.is_negative() {
            out.push(rays[k].clone());
        }
        if (vk.is_positive() && vl.is_negative()) || (vk.is_negative() && vl.is_positive()) {
            let (ak, al) = (vk.abs(), vl.abs());
            let r = [
                &al * &rays[k][0] + &ak * &rays[l][0],
                &al * &rays[k][1] + &ak * &rays[l][1],
                &al * &rays[k][2] + &ak * &rays[l][2],
            ];
            out.push(primitive(r));
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    if full_dimensional(&out) {
        Some(out)
    } else {
        None
    }
}

fn full_dimensional(rays: &[Vec3]) -> bool {
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let c = cross(&rays[i], &rays[j]);
            if is_zero(&c) {
                continue;
            }
            return rays.iter().any(|r| !dot(&c, r).is_zero());
        }
    }
    false
}

/// A feasible corridor: the side sequence, the unfolded sides and the
/// isometry onto the last copy.
#[derive(Clone, Debug)]
pub struct Corridor {
    pub sides: Vec<usize>,
    /// Oriented unfolded sides `S_0, …, S_k`.
    pub segments: Vec<(ExactPoint, ExactPoint)>,
    /// Table → copy `k` (the copy entered through `S_k`).
    pub isometry: AffineMap2,
    cone: Cone,
}

impl Corridor {
    fn root(t: &BilliardTable, i: usize) -> Corridor {
        let (p, q) = t.side(i);
        let rows = [row(p, true), row(q, false)];
        Corridor {
            sides: vec![i],
            segments: vec![(p.clone(), q.clone())],
            isometry: AffineMap2::identity(),
            cone: Cone::Pending(Vec::new())
                .add(&rows)
                .expect("two rows are always feasible"),
        }
    }

    fn child(&self, t: &BilliardTable, j: usize) -> Option<Corridor> {
        let (v0, v1) = t.side(j);
        let (a, b) = (self.isometry.apply(v0), self.isometry.apply(v1));
        let (p, q) = if self.isometry.det().is_positive() {
            (a, b)
        } else {
            (b, a)
        };
        let rows = [row(&p, false), row(&q, true)];
        let cone = self.cone.clone().add(&rows)?;
        let refl = AffineMap2::reflection(&p, &q).expect("table sides have distinct endpoints");
        let mut sides = self.sides.clone();
        sides.push(j);
        let mut segments = self.segments.clone();
        segments.push((p, q));
        Some(Corridor {
            sides,
            segments,
            isometry: refl.compose(&self.isometry),
            cone,
        })
    }

    pub fn depth(&self) -> usize {
        self.sides.len() - 1
    }
}

/// Feasible corridors with `1..=max_sides` sides, visited depth-first from
/// each starting side; `visit` sees every corridor once.
fn walk<F: FnMut(&Corridor)>(
    t: &BilliardTable,
    c: &Corridor,
    max_sides: usize,
    nodes: &AtomicUsize,
    budget: usize,
    visit: &mut F,
) -> Result<(), BilliardError> {
    visit(c);
    if c.sides.len() == max_sides {
        return Ok(());
    }
    let last = *c.sides.last().unwrap();
    for j in 0..t.len() {
        if j == last {
            continue;
        }
        if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
            return Err(BilliardError::Budget(budget));
        }
        if let Some(ch) = c.child(t, j) {
            walk(t, &ch, max_sides, nodes, budget, visit)?;
        }
    }
    Ok(())
}

/// Runs `f` on every feasible corridor of up to `max_sides` sides, one
/// starting side per parallel task; results come back in side order.
pub fn for_each_corridor<R, F>(
    t: &BilliardTable,
    max_sides: usize,
    budget: usize,
    f: F,
) -> Result<Vec<R>, BilliardError>
where
    R: Send + Default,
    F: Fn(&Corridor, &mut R) + Sync,
{
    if !t.is_convex() {
        return Err(BilliardError::NonConvex);
    }
    let nodes = AtomicUsize::new(0);
    (0..t.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = R::default();
            let root = Corridor::root(t, i);
            walk(t, &root, max_sides, &nodes, budget, &mut |c| f(c, &mut acc))?;
            Ok(acc)
        })
        .collect()
}

pub const DEFAULT_BUDGET: usize = 50_000_000;

/// `|P_n|` for `n = 1..=n_max`: feasible side sequences of length `n + 1`.
pub fn count_itinerary_cells_series(
    t: &BilliardTable,
    n_max: usize,
    budget: usize,
) -> Result<Vec<usize>, BilliardError> {
    let per_root = for_each_corridor(t, n_max + 1, budget, |c, acc: &mut Vec<usize>| {
        let d = c.depth();
        if d >= 1 {
            if acc.len() < d {
                acc.resize(d, 0);
            }
            acc[d - 1] += 1;
        }
    })?;
    let mut out = vec![0usize; n_max];
    for v in per_root {
        for (k, c) in v.into_iter().enumerate() {
            out[k] += c;
        }
    }
    Ok(out)
}

pub fn count_itinerary_cells(t: &BilliardTable, n: usize) -> Result<usize, BilliardError> {
    if n == 0 {
        return Ok(1);
    }
    Ok(*count_itinerary_cells_series(t, n, DEFAULT_BUDGET)?.last().unwrap())
}
