use std::f64::consts::PI;

use crate::billiard::BilliardTable;
use crate::error::BilliardError;

/// A point `(s, θ)` of `X = ∂Δ × [0, π]`: footpoint arc length and the angle
/// of the inward direction measured from the forward tangent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub s: f64,
    pub theta: f64,
}

impl PhasePoint {
    pub fn new(s: f64, theta: f64) -> Self {
        PhasePoint { s, theta }
    }

    /// The reversal involution `(s, θ) ↦ (s, π − θ)`.
    pub fn reversed(self) -> Self {
        PhasePoint {
            s: self.s,
            theta: PI - self.theta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bounce {
    /// Next phase point and the side it lies on.
    Hit(PhasePoint, usize),
    /// The ray runs into this vertex (within the vertex tolerance).
    VertexHit(usize),
}

fn validate(t: &BilliardTable, p: PhasePoint) -> Result<(usize, f64), BilliardError> {
    let bad = BilliardError::Malformed { s: p.s, theta: p.theta };
    if !p.s.is_finite() || !p.theta.is_finite() || p.s < 0.0 || p.s >= t.length() {
        return Err(bad);
    }
    if p.theta <= 0.0 || p.theta >= PI {
        return Err(bad);
    }
    let (i, d) = t.locate(p.s);
    let tol = t.vertex_tol();
    if d < tol || t.side_length(i) - d < tol {
        return Err(bad);
    }
    Ok((i, d))
}

/// One bounce of the billiard ball map.
pub fn billiard_map(t: &BilliardTable, p: PhasePoint) -> Result<Bounce, BilliardError> {
    let (i, d) = validate(t, p)?;
    let (a, _) = t.side_f64(i);
    let tg = t.tangent(i);
    let nm = t.normal(i);
    let foot = [a[0] + d * tg[0], a[1] + d * tg[1]];
    let (c, s) = (p.theta.cos(), p.theta.sin());
    let dir = [c * tg[0] + s * nm[0], c * tg[1] + s * nm[1]];
    let n = t.len();
    // nearest crossing of the ray with another side
    let mut best: Option<(f64, usize, f64)> = None;
    let tol = t.vertex_tol();
    for j in 0..n {
        if j == i {
            continue;
        }
        let (q0, q1) = t.side_f64(j);
        let e = [q1[0] - q0[0], q1[1] - q0[1]];
        let den = dir[0] * e[1] - dir[1] * e[0];
        if den == 0.0 {
            continue;
        }
        let w0 = [q0[0] - foot[0], q0[1] - foot[1]];
        let u = (w0[0] * e[1] - w0[1] * e[0]) / den;
        let w = (w0[0] * dir[1] - w0[1] * dir[0]) / den;
        let slack = tol / t.side_length(j);
        if u <= 0.0 || !(-slack..=1.0 + slack).contains(&w) {
            continue;
        }
        if best.is_none_or(|(bu, _, _)| u < bu) {
            best = Some((u, j, w));
        }
    }
    let (_, j, w) = best.ok_or(BilliardError::NoHit)?;
    let len = t.side_length(j);
    let along = w.clamp(0.0, 1.0) * len;
    if along < tol {
        return Ok(Bounce::VertexHit(j));
    }
    if len - along < tol {
        return Ok(Bounce::VertexHit((j + 1) % n));
    }
    let tj = t.tangent(j);
    let nj = t.normal(j);
    let dn = dir[0] * nj[0] + dir[1] * nj[1];
    let r = [dir[0] - 2.0 * dn * nj[0], dir[1] - 2.0 * dn * nj[1]];
    let theta = (tj[0] * r[1] - tj[1] * r[0]).atan2(tj[0] * r[0] + tj[1] * r[1]);
    Ok(Bounce::Hit(PhasePoint::new(t.offset(j) + along, theta), j))
}

/// `T⁻¹ = R ∘ T ∘ R` with `R` the reversal involution.
pub fn billiard_map_inverse(t: &BilliardTable, p: PhasePoint) -> Result<Bounce, BilliardError> {
    Ok(match billiard_map(t, p.reversed())? {
        Bounce::Hit(q, j) => Bounce::Hit(q.reversed(), j),
        v => v,
    })
}

/// Iterates `T` (or `T⁻¹`) up to `n` times; returns the visited sides and the
/// final point, or `None` if a vertex is hit.
pub fn orbit_sides(
    t: &BilliardTable,
    p: PhasePoint,
    n: usize,
    backward: bool,
) -> Result<Option<(Vec<usize>, PhasePoint)>, BilliardError> {
    let mut cur = p;
    let mut sides = Vec::with_capacity(n);
    for _ in 0..n {
        let b = if backward {
            billiard_map_inverse(t, cur)?
        } else {
            billiard_map(t, cur)?
        };
        match b {
            Bounce::Hit(q, j) => {
                sides.push(j);
                cur = q;
            }
            Bounce::VertexHit(_) => return Ok(None),
        }
    }
    Ok(Some((sides, cur)))
}

/// `Σ |Δs|·(sin θ_i + sin θ_{i+1})/2 + |Δθ|` over consecutive samples.
pub fn finsler_length(curve: &[PhasePoint]) -> f64 {
    curve.windows(2).map(|w| finsler_gap(w[0], w[1])).sum()
}

pub fn finsler_gap(a: PhasePoint, b: PhasePoint) -> f64 {
    (b.s - a.s).abs() * 0.5 * (a.theta.sin() + b.theta.sin()) + (b.theta - a.theta).abs()
}
