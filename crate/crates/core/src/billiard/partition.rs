use crate::billiard::{BilliardTable, PhasePoint};
use crate::error::BilliardError;

/// Phase points on `side` whose ray is aimed at `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReturnCurve {
    pub side: usize,
    pub vertex: usize,
}

impl ReturnCurve {
    /// Angle toward the vertex from the footpoint at distance `d` along the side.
    pub fn theta_at(&self, t: &BilliardTable, d: f64) -> f64 {
        let (a, _) = t.side_f64(self.side);
        let tg = t.tangent(self.side);
        let p = [a[0] + d * tg[0], a[1] + d * tg[1]];
        let v = t.vertex_f64(self.vertex);
        let w = [v[0] - p[0], v[1] - p[1]];
        (tg[0] * w[1] - tg[1] * w[0]).atan2(tg[0] * w[0] + tg[1] * w[1])
    }

    /// The point at parameter `u ∈ (0, 1)` along the side.
    pub fn point(&self, t: &BilliardTable, u: f64) -> PhasePoint {
        let d = u * t.side_length(self.side);
        PhasePoint::new(t.offset(self.side) + d, self.theta_at(t, d))
    }
}

/// An atom of the first-return partition: rays leaving `side` that next hit `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReturnAtom {
    pub side: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstReturnPartition {
    pub curves: Vec<ReturnCurve>,
    pub atoms: Vec<ReturnAtom>,
}

/// On a convex table every vertex off side `i` is visible from all of it,
/// and the curves toward `v_{i+2}, …, v_{i-1}` cut the fibre over side `i`
/// into the atoms with targets `i+1, …, i-1`, in increasing `θ`.
pub fn first_return_partition(t: &BilliardTable) -> Result<FirstReturnPartition, BilliardError> {
    if !t.is_convex() {
        return Err(BilliardError::NonConvex);
    }
    let n = t.len();
    let mut curves = Vec::new();
    let mut atoms = Vec::new();
    for i in 0..n {
        for k in 2..n {
            curves.push(ReturnCurve {
                side: i,
                vertex: (i + k) % n,
            });
        }
        for k in 1..n {
            atoms.push(ReturnAtom {
                side: i,
                target: (i + k) % n,
            });
        }
    }
    Ok(FirstReturnPartition { curves, atoms })
}

impl FirstReturnPartition {
    /// Atom containing `p`, read off from the curve angles.
    pub fn atom_of(&self, t: &BilliardTable, p: PhasePoint) -> Option<ReturnAtom> {
        let n = t.len();
        let (i, d) = t.locate(p.s);
        let mut target = (i + 1) % n;
        for c in self.curves.iter().filter(|c| c.side == i) {
            let th = c.theta_at(t, d);
            if p.theta == th {
                return None;
            }
            if p.theta > th {
                target = c.vertex;
            }
        }
        Some(ReturnAtom { side: i, target })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::{billiard_map, Bounce};
    use std::f64::consts::PI;

    #[test]
    fn square_has_twelve_atoms() {
        let t = BilliardTable::unit_square();
        let p = first_return_partition(&t).unwrap();
        assert_eq!(p.atoms.len(), 12);
        assert_eq!(p.curves.len(), 8);
        let tri = first_return_partition(&BilliardTable::right_triangle()).unwrap();
        assert_eq!(tri.atoms.len(), 6);
        assert_eq!(tri.curves.len(), 3);
    }

    #[test]
    fn atoms_agree_with_one_bounce() {
        for t in [BilliardTable::unit_square(), BilliardTable::right_triangle()] {
            let part = first_return_partition(&t).unwrap();
            for a in 1..60 {
                for b in 1..40 {
                    let p = PhasePoint::new(t.length() * a as f64 / 60.0 + 1e-3, PI * b as f64 / 40.0);
                    if p.s >= t.length() {
                        continue;
                    }
                    let Ok(Bounce::Hit(_, j)) = billiard_map(&t, p) else {
                        continue;
                    };
                    assert_eq!(part.atom_of(&t, p).unwrap().target, j);
                }
            }
        }
    }

    #[test]
    fn curve_angles_on_square() {
        let t = BilliardTable::unit_square();
        let c = ReturnCurve { side: 0, vertex: 2 };
        assert!((c.theta_at(&t, 0.0) - PI / 4.0).abs() < 1e-15);
        assert!((c.theta_at(&t, 1.0) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn non_convex_rejected() {
        let p = crate::geom::ExactPoint::from_ints;
        let l = BilliardTable::new(vec![p(0, 0), p(2, 0), p(2, 1), p(1, 1), p(1, 2), p(0, 2)]).unwrap();
        assert_eq!(first_return_partition(&l).unwrap_err(), BilliardError::NonConvex);
    }
}
