use num_traits::{Signed, Zero};

use crate::error::BilliardError;
use crate::geom::{orient, ExactPoint};
use crate::rational::{Enclosure, ExactRational};

/// A simple polygonal table with exact vertices, stored counterclockwise.
#[derive(Clone, Debug)]
pub struct BilliardTable {
    vertices: Vec<ExactPoint>,
    fv: Vec<[f64; 2]>,
    /// Arc-length position of each vertex; `offsets[n]` is the perimeter.
    offsets: Vec<f64>,
    lengths: Vec<f64>,
    perimeter: Enclosure,
    convex: bool,
}

fn segments_touch(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint, d: &ExactPoint) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let between = |p: &ExactPoint, q: &ExactPoint, r: &ExactPoint| {
        r.x >= p.x.clone().min(q.x.clone())
            && r.x <= p.x.clone().max(q.x.clone())
            && r.y >= p.y.clone().min(q.y.clone())
            && r.y <= p.y.clone().max(q.y.clone())
    };
    if o1.is_zero() && between(a, b, c)
        || o2.is_zero() && between(a, b, d)
        || o3.is_zero() && between(c, d, a)
        || o4.is_zero() && between(c, d, b)
    {
        return true;
    }
    o1.signum() * o2.signum() < ExactRational::zero() && o3.signum() * o4.signum() < ExactRational::zero()
}

impl BilliardTable {
    /// Accepts either orientation; clockwise input is reversed.
    pub fn new(mut vertices: Vec<ExactPoint>) -> Result<Self, BilliardError> {
        let n = vertices.len();
        if n < 3 {
            return Err(BilliardError::TooFewVertices);
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(BilliardError::DuplicateVertex(i, j));
                }
            }
        }
        let twice_area: ExactRational = (0..n).map(|i| vertices[i].cross(&vertices[(i + 1) % n])).sum();
        if twice_area.is_negative() {
            vertices[1..].reverse();
        }
        for i in 0..n {
            let (p, q, r) = (&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n]);
            if orient(p, q, r).is_zero() {
                return Err(BilliardError::CollinearVertex(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
                let (c, d) = (&vertices[j], &vertices[(j + 1) % n]);
                if segments_touch(a, b, c, d) {
                    return Err(BilliardError::NotSimple(i, j));
                }
            }
        }
        let convex = (0..n).all(|i| orient(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]).is_positive());
        let fv: Vec<[f64; 2]> = vertices.iter().map(|v| v.to_f64()).collect();
        let lengths: Vec<f64> = (0..n)
            .map(|i| {
                let (a, b) = (fv[i], fv[(i + 1) % n]);
                (b[0] - a[0]).hypot(b[1] - a[1])
            })
            .collect();
        let mut offsets = vec![0.0];
        for l in &lengths {
            offsets.push(offsets.last().unwrap() + l);
        }
        let perimeter = (0..n)
            .map(|i| Enclosure::sqrt(&vertices[i].dist_sq(&vertices[(i + 1) % n])))
            .sum();
        Ok(BilliardTable {
            vertices,
            fv,
            offsets,
            lengths,
            perimeter,
            convex,
        })
    }

    pub fn unit_square() -> Self {
        let p = ExactPoint::from_ints;
        Self::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap()
    }

    /// Right isosceles triangle with unit legs.
    pub fn right_triangle() -> Self {
        let p = ExactPoint::from_ints;
        Self::new(vec![p(0, 0), p(1, 0), p(0, 1)]).unwrap()
    }

    pub fn vertices(&self) -> &[ExactPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn perimeter(&self) -> &Enclosure {
        &self.perimeter
    }

    /// Floating perimeter `L`.
    pub fn length(&self) -> f64 {
        self.offsets[self.len()]
    }

    /// Side `i` runs from vertex `i` to vertex `i+1`.
    pub fn side(&self, i: usize) -> (&ExactPoint, &ExactPoint) {
        (&self.vertices[i], &self.vertices[(i + 1) % self.len()])
    }

    pub fn side_f64(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        (self.fv[i], self.fv[(i + 1) % self.len()])
    }

    pub fn vertex_f64(&self, i: usize) -> [f64; 2] {
        self.fv[i]
    }

    pub fn side_length(&self, i: usize) -> f64 {
        self.lengths[i]
    }

    pub fn offset(&self, i: usize) -> f64 {
        self.offsets[i]
    }

    /// Unit forward tangent of side `i`.
    pub fn tangent(&self, i: usize) -> [f64; 2] {
        let (a, b) = self.side_f64(i);
        let l = self.lengths[i];
        [(b[0] - a[0]) / l, (b[1] - a[1]) / l]
    }

    /// Inward unit normal of side `i` (tangent turned left).
    pub fn normal(&self, i: usize) -> [f64; 2] {
        let t = self.tangent(i);
        [-t[1], t[0]]
    }

    /// Side containing arc-length `s ∈ [0, L)` and the distance along it.
    pub fn locate(&self, s: f64) -> (usize, f64) {
        let n = self.len();
        let k = self.offsets[1..n].partition_point(|&o| o <= s);
        (k, s - self.offsets[k])
    }

    pub fn point_at(&self, s: f64) -> [f64; 2] {
        let (i, d) = self.locate(s);
        let a = self.fv[i];
        let t = self.tangent(i);
        [a[0] + d * t[0], a[1] + d * t[1]]
    }

    /// Vertex tolerance `δ = 1e-12·L`.
    pub fn vertex_tol(&self) -> f64 {
        1e-12 * self.length()
    }
}
