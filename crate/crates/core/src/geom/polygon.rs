use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::GeomError;
use crate::geom::{orient, AffineMap2, ExactPoint, Segment};
use crate::rational::{bit_len, Enclosure, ExactRational};

/// Position of a point relative to a closed convex polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// A strictly convex polygon in canonical form: counterclockwise, no
/// collinear triples, starting at the lexicographically smallest vertex.
///
/// Empty intersections are represented by `Option::None` at call sites; a
/// `ConvexPolygon` value always has positive area.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<ExactPoint>,
}

/// Drops repeated and collinear vertices of a closed loop.
fn simplify(mut pts: Vec<ExactPoint>) -> Vec<ExactPoint> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut keep = Vec::with_capacity(n);
        let mut changed = false;
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let cur = &pts[i];
            let next = &pts[(i + 1) % n];
            if cur == prev || orient(prev, cur, next).is_zero() {
                changed = true;
                // drop at most one per sweep so neighbours stay well-defined
                keep.extend(pts[i + 1..].iter().cloned());
                break;
            }
            keep.push(cur.clone());
        }
        if !changed {
            return pts;
        }
        pts = keep;
    }
}

fn rotate_to_min(mut pts: Vec<ExactPoint>) -> Vec<ExactPoint> {
    let start = pts
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    pts.rotate_left(start);
    pts
}

impl ConvexPolygon {
    /// Builds a canonical polygon from a vertex loop in either orientation.
    pub fn new(vertices: Vec<ExactPoint>) -> Result<Self, GeomError> {
        let mut pts = simplify(vertices);
        if pts.len() < 3 {
            return Err(GeomError::Degenerate);
        }
        let a2 = twice_signed_area(&pts);
        if a2.is_zero() {
            return Err(GeomError::Degenerate);
        }
        if a2.is_negative() {
            pts.reverse();
        }
        let n = pts.len();
        for i in 0..n {
            if !orient(&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]).is_positive() {
                return Err(GeomError::NotConvex);
            }
        }
        Ok(ConvexPolygon {
            vertices: rotate_to_min(pts),
        })
    }

    /// Canonicalizes a loop already known to be convex and counterclockwise
    /// (possibly with repeated or collinear vertices). `None` if degenerate.
    fn from_ccw_loop(pts: Vec<ExactPoint>) -> Option<Self> {
        let pts = simplify(pts);
        if pts.len() < 3 || !twice_signed_area(&pts).is_positive() {
            return None;
        }
        Some(ConvexPolygon {
            vertices: rotate_to_min(pts),
        })
    }

    /// Axis-parallel rectangle `[x0,x1]×[y0,y1]`.
    pub fn rectangle(
        x0: ExactRational,
        y0: ExactRational,
        x1: ExactRational,
        y1: ExactRational,
    ) -> Result<Self, GeomError> {
        ConvexPolygon::new(vec![
            ExactPoint::new(x0.clone(), y0.clone()),
            ExactPoint::new(x1.clone(), y0),
            ExactPoint::new(x1, y1.clone()),
            ExactPoint::new(x0, y1),
        ])
    }

    pub fn unit_square() -> Self {
        use crate::rational::int;
        ConvexPolygon::rectangle(int(0), int(0), int(1), int(1)).expect("unit square")
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

    /// Edges in counterclockwise order; the interior lies to the left of each.
    pub fn edges(&self) -> impl Iterator<Item = (&ExactPoint, &ExactPoint)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn edge_segments(&self) -> Vec<Segment> {
        self.edges()
            .map(|(a, b)| Segment::new(a.clone(), b.clone()).expect("distinct vertices"))
            .collect()
    }

    /// Edge halfplanes as `(normal, offset)` with interior `normal·p <= offset`.
    pub fn halfplanes(&self) -> Vec<([ExactRational; 2], ExactRational)> {
        self.edges()
            .map(|(a, b)| {
                let dx = &b.x - &a.x;
                let dy = &b.y - &a.y;
                let off = &dy * &a.x - &dx * &a.y;
                ([dy, -dx], off)
            })
            .collect()
    }

    pub fn area(&self) -> ExactRational {
        twice_signed_area(&self.vertices) / ExactRational::from_integer(2.into())
    }

    pub fn perimeter(&self) -> Enclosure {
        self.edges().map(|(a, b)| Enclosure::sqrt(&a.dist_sq(b))).sum()
    }

    /// Squared diameter: the largest squared vertex-to-vertex distance.
    pub fn diameter_sq(&self) -> ExactRational {
        let mut best = ExactRational::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                let d = a.dist_sq(b);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    pub fn diameter(&self) -> Enclosure {
        Enclosure::sqrt(&self.diameter_sq())
    }

    pub fn locate(&self, p: &ExactPoint) -> Location {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            let o = orient(a, b, p);
            if o.is_negative() {
                return Location::Exterior;
            }
            if o.is_zero() {
                on_edge = true;
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn contains_closed(&self, p: &ExactPoint) -> bool {
        self.locate(p) != Location::Exterior
    }

    /// `other ⊆ self` as closed sets.
    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|v| self.contains_closed(v))
    }

    pub fn max_bits(&self) -> u64 {
        self.vertices
            .iter()
            .map(|p| bit_len(&p.x).max(bit_len(&p.y)))
            .max()
            .unwrap_or(0)
    }

    /// Exact centroid of the vertex set (an interior point).
    pub fn vertex_centroid(&self) -> ExactPoint {
        let n = ExactRational::from_integer((self.vertices.len() as i64).into());
        let mut sx = ExactRational::zero();
        let mut sy = ExactRational::zero();
        for v in &self.vertices {
            sx += &v.x;
            sy += &v.y;
        }
        ExactPoint::new(sx / &n, sy / n)
    }

    pub fn bounding_box(&self) -> (ExactPoint, ExactPoint) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }
}

impl fmt::Display for ConvexPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn twice_signed_area(pts: &[ExactPoint]) -> ExactRational {
    let n = pts.len();
    let mut acc = ExactRational::zero();
    for i in 0..n {
        acc += pts[i].cross(&pts[(i + 1) % n]);
    }
    acc
}

/// `{p ∈ poly : normal·p <= offset}`, or `None` when the result has zero area.
pub fn clip_halfplane(
    poly: &ConvexPolygon,
    normal: &[ExactRational; 2],
    offset: &ExactRational,
) -> Option<ConvexPolygon> {
    let slack: Vec<ExactRational> = poly
        .vertices
        .iter()
        .map(|p| offset - (&normal[0] * &p.x + &normal[1] * &p.y))
        .collect();
    if slack.iter().all(|s| !s.is_negative()) {
        return Some(poly.clone());
    }
    if slack.iter().all(|s| !s.is_positive()) {
        return None;
    }
    let n = poly.vertices.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let j = (i + 1) % n;
        let (p, q) = (&poly.vertices[i], &poly.vertices[j]);
        let (sp, sq) = (&slack[i], &slack[j]);
        if !sp.is_negative() {
            out.push(p.clone());
        }
        if (sp.is_positive() && sq.is_negative()) || (sp.is_negative() && sq.is_positive()) {
            let t = sp / (sp - sq);
            out.push(p.add(&q.sub(p).scale(&t)));
        }
    }
    ConvexPolygon::from_ccw_loop(out)
}

/// Exact intersection of two convex polygons; `None` when interiors are disjoint.
pub fn intersect_convex(p: &ConvexPolygon, q: &ConvexPolygon) -> Option<ConvexPolygon> {
    let mut cur = p.clone();
    for (normal, offset) in q.halfplanes() {
        cur = clip_halfplane(&cur, &normal, &offset)?;
    }
    Some(cur)
}

/// Image of a polygon under an invertible affine map, re-canonicalized.
pub fn apply_affine(m: &AffineMap2, poly: &ConvexPolygon) -> Result<ConvexPolygon, GeomError> {
    let det = m.det();
    if det.is_zero() {
        return Err(GeomError::Singular);
    }
    let mut pts: Vec<ExactPoint> = poly.vertices.iter().map(|v| m.apply(v)).collect();
    if det.is_negative() {
        pts.reverse();
    }
    Ok(ConvexPolygon {
        vertices: rotate_to_min(pts),
    })
}
