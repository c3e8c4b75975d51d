//! Overlay of segment sets: collinear pieces are merged, crossings and
//! T-junctions become breakpoints.
//!
//! Segments are grouped by supporting line (a primitive integer triple
//! `a·x + b·y = c`), merged as 1D intervals, then split wherever another
//! line touches them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::geom::{ExactPoint, Segment};
use crate::rational::{Enclosure, ExactRational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct LineKey {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl LineKey {
    fn through(p: &ExactPoint, q: &ExactPoint) -> LineKey {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = BigRational::from_integer(l);
        let (a, b, c) = (
            (a * &scale).to_integer(),
            (b * &scale).to_integer(),
            (c * &scale).to_integer(),
        );
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
            c = -c;
        }
        LineKey { a, b, c }
    }

    fn vertical(&self) -> bool {
        self.b.is_zero()
    }

    fn param(&self, p: &ExactPoint) -> ExactRational {
        if self.vertical() {
            p.y.clone()
        } else {
            p.x.clone()
        }
    }

    fn point(&self, t: &ExactRational) -> ExactPoint {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        let c = BigRational::from_integer(self.c.clone());
        if self.vertical() {
            ExactPoint::new(c / a, t.clone())
        } else {
            ExactPoint::new(t.clone(), (c - a * t) / b)
        }
    }

    fn meet(&self, o: &LineKey) -> Option<ExactPoint> {
        let d = &self.a * &o.b - &o.a * &self.b;
        if d.is_zero() {
            return None;
        }
        let x = BigRational::new(&self.c * &o.b - &o.c * &self.b, d.clone());
        let y = BigRational::new(&self.a * &o.c - &o.a * &self.c, d);
        Some(ExactPoint::new(x, y))
    }
}

#[derive(Clone, Debug)]
struct Span {
    t0: ExactRational,
    t1: ExactRational,
    /// Sorted parameters of all vertices on the span, endpoints included.
    breaks: Vec<ExactRational>,
}

#[derive(Clone, Debug)]
struct LineGroup {
    key: LineKey,
    spans: Vec<Span>,
}

/// Planar arrangement induced by a set of segments.
#[derive(Clone, Debug)]
pub struct Arrangement {
    groups: Vec<LineGroup>,
    index: HashMap<LineKey, usize>,
}

impl Arrangement {
    pub fn build(segs: &[Segment]) -> Arrangement {
        let mut index: HashMap<LineKey, usize> = HashMap::new();
        let mut raw: Vec<(LineKey, Vec<(ExactRational, ExactRational)>)> = Vec::new();
        for s in segs {
            let key = LineKey::through(&s.a, &s.b);
            let (mut t0, mut t1) = (key.param(&s.a), key.param(&s.b));
            if t0 > t1 {
                std::mem::swap(&mut t0, &mut t1);
            }
            let slot = *index.entry(key.clone()).or_insert_with(|| {
                raw.push((key, Vec::new()));
                raw.len() - 1
            });
            raw[slot].1.push((t0, t1));
        }
        let mut groups: Vec<LineGroup> = raw
            .into_iter()
            .map(|(key, mut ivs)| {
                ivs.sort();
                let mut spans: Vec<Span> = Vec::new();
                for (t0, t1) in ivs {
                    if let Some(last) = spans.last_mut() {
                        if t0 <= last.t1 {
                            last.breaks.push(t0);
                            last.breaks.push(t1.clone());
                            if t1 > last.t1 {
                                last.t1 = t1;
                            }
                            continue;
                        }
                    }
                    spans.push(Span {
                        breaks: vec![t0.clone(), t1.clone()],
                        t0,
                        t1,
                    });
                }
                LineGroup { key, spans }
            })
            .collect();
        add_crossings(&mut groups);
        for g in &mut groups {
            for s in &mut g.spans {
                s.breaks.sort();
                s.breaks.dedup();
            }
        }
        Arrangement { groups, index }
    }

    /// Pairwise interior-disjoint pieces, split at every vertex, sorted.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for g in &self.groups {
            for s in &g.spans {
                for w in s.breaks.windows(2) {
                    out.push(
                        Segment {
                            a: g.key.point(&w[0]),
                            b: g.key.point(&w[1]),
                        }
                        .canonical(),
                    );
                }
            }
        }
        out.sort();
        out
    }

    /// Maximal collinear pieces (not split at crossings).
    pub fn maximal_segments(&self) -> Vec<Segment> {
        let mut out: Vec<Segment> = self
            .groups
            .iter()
            .flat_map(|g| {
                g.spans.iter().map(move |s| {
                    Segment {
                        a: g.key.point(&s.t0),
                        b: g.key.point(&s.t1),
                    }
                    .canonical()
                })
            })
            .collect();
        out.sort();
        out
    }

    /// Total length of the union, each geometric piece counted once.
    pub fn length(&self) -> Enclosure {
        self.groups
            .iter()
            .flat_map(|g| {
                g.spans.iter().map(move |s| {
                    let a = g.key.point(&s.t0);
                    let b = g.key.point(&s.t1);
                    Enclosure::sqrt(&a.dist_sq(&b))
                })
            })
            .sum()
    }

    /// All arrangement vertices, sorted and deduplicated.
    pub fn vertices(&self) -> Vec<ExactPoint> {
        let mut out: Vec<ExactPoint> = self
            .groups
            .iter()
            .flat_map(|g| {
                g.spans
                    .iter()
                    .flat_map(move |s| s.breaks.iter().map(move |t| g.key.point(t)))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Arrangement vertices lying strictly inside `seg`. The segment must be
    /// contained in the arrangement.
    pub fn interior_vertices_on(&self, seg: &Segment) -> Vec<ExactPoint> {
        let key = LineKey::through(&seg.a, &seg.b);
        let Some(&gi) = self.index.get(&key) else {
            return Vec::new();
        };
        let g = &self.groups[gi];
        let (mut t0, mut t1) = (key.param(&seg.a), key.param(&seg.b));
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        // spans are sorted and disjoint; find the one containing [t0, t1]
        let idx = g.spans.partition_point(|s| s.t1 < t1);
        let Some(span) = g.spans.get(idx) else {
            return Vec::new();
        };
        let lo = span.breaks.partition_point(|t| t <= &t0);
        let hi = span.breaks.partition_point(|t| t < &t1);
        span.breaks[lo..hi.max(lo)].iter().map(|t| g.key.point(t)).collect()
    }

    pub fn line_count(&self) -> usize {
        self.groups.len()
    }
}

struct SpanBox {
    group: usize,
    span: usize,
    xmin: ExactRational,
    xmax: ExactRational,
    ymin: ExactRational,
    ymax: ExactRational,
}

fn add_crossings(groups: &mut [LineGroup]) {
    let mut boxes: Vec<SpanBox> = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        for (si, s) in g.spans.iter().enumerate() {
            let a = g.key.point(&s.t0);
            let b = g.key.point(&s.t1);
            let (xmin, xmax) = if a.x <= b.x { (a.x, b.x) } else { (b.x, a.x) };
            let (ymin, ymax) = if a.y <= b.y { (a.y, b.y) } else { (b.y, a.y) };
            boxes.push(SpanBox {
                group: gi,
                span: si,
                xmin,
                xmax,
                ymin,
                ymax,
            });
        }
    }
    boxes.sort_by(|p, q| p.xmin.cmp(&q.xmin));
    let mut active: Vec<usize> = Vec::new();
    let mut hits: Vec<(usize, usize, ExactRational)> = Vec::new();
    for i in 0..boxes.len() {
        let cur = &boxes[i];
        active.retain(|&j| boxes[j].xmax >= cur.xmin);
        for &j in &active {
            let other = &boxes[j];
            if other.group == cur.group || other.ymax < cur.ymin || cur.ymax < other.ymin {
                continue;
            }
            let (k1, k2) = (&groups[cur.group].key, &groups[other.group].key);
            let Some(p) = k1.meet(k2) else { continue };
            let s1 = &groups[cur.group].spans[cur.span];
            let s2 = &groups[other.group].spans[other.span];
            let t1 = k1.param(&p);
            let t2 = k2.param(&p);
            if s1.t0 <= t1 && t1 <= s1.t1 && s2.t0 <= t2 && t2 <= s2.t1 {
                hits.push((cur.group, cur.span, t1));
                hits.push((other.group, other.span, t2));
            }
        }
        active.push(i);
    }
    for (g, s, t) in hits {
        groups[g].spans[s].breaks.push(t);
    }
}

/// Overlay of segments: pairwise interior-disjoint pieces whose union equals
/// the union of the inputs, in canonical order.
pub fn overlay_segments(segs: &[Segment]) -> Vec<Segment> {
    Arrangement::build(segs).segments()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn seg(ax: i64, ay: i64, bx: i64, by: i64) -> Segment {
        Segment::new(ExactPoint::from_ints(ax, ay), ExactPoint::from_ints(bx, by)).unwrap()
    }

    #[test]
    fn duplicate_segments_collapse() {
        let out = overlay_segments(&[seg(0, 0, 1, 0), seg(1, 0, 0, 0)]);
        assert_eq!(out, vec![seg(0, 0, 1, 0)]);
    }

    #[test]
    fn collinear_overlap_merges() {
        let arr = Arrangement::build(&[seg(0, 0, 2, 0), seg(1, 0, 3, 0)]);
        assert_eq!(arr.length(), Enclosure::exact(int(3)));
        assert_eq!(arr.maximal_segments(), vec![seg(0, 0, 3, 0)]);
        let pieces = arr.segments();
        assert_eq!(pieces.len(), 3);
        let total: Enclosure = pieces.iter().map(|s| s.length()).sum();
        assert_eq!(total, Enclosure::exact(int(3)));
    }

    #[test]
    fn crossing_diagonals_split_at_center() {
        let arr = Arrangement::build(&[seg(0, 0, 1, 1), seg(1, 0, 0, 1)]);
        let pieces = arr.segments();
        assert_eq!(pieces.len(), 4);
        let center = ExactPoint::from_ratios(1, 2, 1, 2);
        assert!(pieces.iter().all(|s| s.a == center || s.b == center));
        let len = arr.length();
        // 2·sqrt(2)
        assert!(&len.lo * &len.lo <= int(8) && int(8) <= &len.hi * &len.hi);
    }

    #[test]
    fn t_junction_vertex_found() {
        let arr = Arrangement::build(&[seg(0, 0, 2, 0), seg(1, 0, 1, 1)]);
        let inner = arr.interior_vertices_on(&seg(0, 0, 2, 0));
        assert_eq!(inner, vec![ExactPoint::from_ints(1, 0)]);
        assert!(arr.interior_vertices_on(&seg(1, 0, 1, 1)).is_empty());
        assert_eq!(arr.segments().len(), 3);
    }
}
