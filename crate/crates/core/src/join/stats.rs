use std::collections::HashMap;

use num_traits::Zero;

use crate::geom::{Arrangement, ConvexPolygon, ExactPoint, Segment};
use crate::rational::{Enclosure, ExactRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub atom_count: usize,
    /// ℓ: union length of all cell edges, each geometric piece once.
    pub skeleton_length: Enclosure,
    /// b: the largest number of cell closures sharing a point.
    pub multiplicity: usize,
    pub max_diameter: Enclosure,
    /// Per-cell perimeter sum (shared edges counted twice).
    pub perimeter_sum: Enclosure,
    pub max_bits: u64,
}

pub struct Skeleton {
    pub arrangement: Arrangement,
    pub segments: Vec<Segment>,
    pub length: Enclosure,
}

pub fn skeleton_of(cells: &[&ConvexPolygon]) -> Skeleton {
    let edges: Vec<Segment> = cells.iter().flat_map(|c| c.edge_segments()).collect();
    let arrangement = Arrangement::build(&edges);
    let segments = arrangement.segments();
    let length = arrangement.length();
    Skeleton {
        arrangement,
        segments,
        length,
    }
}

/// Counts, for each skeleton vertex, the cells having it as a corner or on
/// an edge, and returns the maximum.
pub fn multiplicity(cells: &[&ConvexPolygon], sk: &Skeleton) -> usize {
    let mut count: HashMap<ExactPoint, usize> = HashMap::new();
    for c in cells {
        for v in c.vertices() {
            *count.entry(v.clone()).or_default() += 1;
        }
        for e in c.edge_segments() {
            for v in sk.arrangement.interior_vertices_on(&e) {
                *count.entry(v).or_default() += 1;
            }
        }
    }
    count.into_values().max().unwrap_or(0)
}

pub fn max_cell_diameter(cells: &[&ConvexPolygon]) -> Enclosure {
    let best = cells
        .iter()
        .map(|c| c.diameter_sq())
        .max()
        .unwrap_or_else(ExactRational::zero);
    Enclosure::sqrt(&best)
}

pub fn perimeter_sum(cells: &[&ConvexPolygon]) -> Enclosure {
    cells.iter().map(|c| c.perimeter()).sum()
}
