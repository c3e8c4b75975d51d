//! Iterated joins `R_n` of the source partition under a polygon exchange.
//!
//! Cells are kept in time-0 coordinates together with the composed forward
//! map, so one refinement step is a pullback of each atom through that map
//! and a convex clip.

mod csv;
mod stats;

use rayon::prelude::*;

use crate::error::{Cap, JoinError};
use crate::geom::{apply_affine, clip_halfplane, AffineMap2, ConvexPolygon, Segment};
use crate::gpe::GpeSystem;
use crate::rational::Enclosure;

pub use csv::{levels_csv, levels_csv_header, levels_csv_row};
pub use stats::{max_cell_diameter, multiplicity, perimeter_sum, skeleton_of, LevelStats, Skeleton};

/// One atom of `R_n`, labelled by its itinerary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinCell {
    pub itinerary: Vec<usize>,
    pub region: ConvexPolygon,
    /// `T_{i_{n-1}} ∘ … ∘ T_{i_0}`: `T^n` restricted to the cell.
    pub forward_map: AffineMap2,
}

impl JoinCell {
    pub fn max_bits(&self) -> u64 {
        self.region.max_bits().max(self.forward_map.max_bits())
    }
}

#[derive(Clone, Debug)]
pub struct JoinLevel {
    pub n: usize,
    pub cells: Vec<JoinCell>,
    pub skeleton: Vec<Segment>,
    pub stats: LevelStats,
}

impl JoinLevel {
    pub fn atom_count(&self) -> usize {
        self.cells.len()
    }

    pub fn from_cells(n: usize, cells: Vec<JoinCell>) -> JoinLevel {
        let regions: Vec<&ConvexPolygon> = cells.iter().map(|c| &c.region).collect();
        let sk = skeleton_of(&regions);
        let stats = LevelStats {
            atom_count: cells.len(),
            skeleton_length: sk.length.clone(),
            multiplicity: multiplicity(&regions, &sk),
            max_diameter: max_cell_diameter(&regions),
            perimeter_sum: perimeter_sum(&regions),
            max_bits: cells.iter().map(JoinCell::max_bits).max().unwrap_or(0),
        };
        JoinLevel {
            n,
            cells,
            skeleton: sk.segments,
            stats,
        }
    }

    /// Level 1: the atoms of `P` with their piece maps.
    pub fn first(g: &GpeSystem) -> JoinLevel {
        let cells = g
            .source()
            .atoms
            .iter()
            .zip(g.maps())
            .enumerate()
            .map(|(i, (a, m))| JoinCell {
                itinerary: vec![i],
                region: a.clone(),
                forward_map: m.clone(),
            })
            .collect();
        JoinLevel::from_cells(1, cells)
    }

    /// Sum of cell areas; equals the area of `X` at every level.
    pub fn total_area(&self) -> crate::rational::ExactRational {
        self.cells.iter().map(|c| c.region.area()).sum()
    }
}

/// Resource limits for join computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JoinCaps {
    pub max_cells: usize,
    pub max_bits: u64,
}

impl Default for JoinCaps {
    fn default() -> Self {
        JoinCaps {
            max_cells: 200_000,
            max_bits: 4096,
        }
    }
}

fn children(parent: &JoinCell, g: &GpeSystem) -> Vec<JoinCell> {
    let image = apply_affine(&parent.forward_map, &parent.region).expect("forward map is invertible");
    let (ilo, ihi) = image.bounding_box();
    let mut out = Vec::new();
    for (i, (atom, piece)) in g.source().atoms.iter().zip(g.maps()).enumerate() {
        let (lo, hi) = atom.bounding_box();
        if hi.x <= ilo.x || ihi.x <= lo.x || hi.y <= ilo.y || ihi.y <= lo.y {
            continue;
        }
        let mut region = Some(parent.region.clone());
        for (normal, offset) in atom.halfplanes() {
            let (n, c) = parent.forward_map.pullback_halfplane(&normal, &offset);
            region = region.and_then(|r| clip_halfplane(&r, &n, &c));
            if region.is_none() {
                break;
            }
        }
        if let Some(region) = region {
            let mut itinerary = parent.itinerary.clone();
            itinerary.push(i);
            out.push(JoinCell {
                itinerary,
                region,
                forward_map: piece.compose(&parent.forward_map),
            });
        }
    }
    out
}

/// Cells of level `n+1`, in itinerary-lexicographic order.
pub fn refine_cells(cells: &[JoinCell], g: &GpeSystem) -> Vec<JoinCell> {
    cells
        .par_iter()
        .map(|c| children(c, g))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn refine(level: &JoinLevel, g: &GpeSystem) -> JoinLevel {
    JoinLevel::from_cells(level.n + 1, refine_cells(&level.cells, g))
}

/// Levels `1..=max_level`. A cap hit returns the completed levels inside the error.
pub fn join_sequence(g: &GpeSystem, max_level: usize, caps: JoinCaps) -> Result<Vec<JoinLevel>, JoinError> {
    if max_level == 0 {
        return Err(JoinError::EmptyRequest);
    }
    let mut levels = vec![JoinLevel::first(g)];
    check_caps(&levels[0], caps).map_err(|cap| JoinError::CapExceeded {
        cap,
        attempted: 1,
        completed: Vec::new(),
    })?;
    while levels.len() < max_level {
        let last = levels.last().unwrap();
        let n = last.n + 1;
        let cells = refine_cells(&last.cells, g);
        if cells.len() > caps.max_cells {
            return Err(JoinError::CapExceeded {
                cap: Cap::Cells(caps.max_cells),
                attempted: n,
                completed: levels,
            });
        }
        let next = JoinLevel::from_cells(n, cells);
        if let Err(cap) = check_caps(&next, caps) {
            return Err(JoinError::CapExceeded {
                cap,
                attempted: n,
                completed: levels,
            });
        }
        levels.push(next);
    }
    Ok(levels)
}

fn check_caps(level: &JoinLevel, caps: JoinCaps) -> Result<(), Cap> {
    if level.cells.len() > caps.max_cells {
        return Err(Cap::Cells(caps.max_cells));
    }
    if level.stats.max_bits > caps.max_bits {
        return Err(Cap::Bits(caps.max_bits));
    }
    Ok(())
}

/// `Σ perim(cells) = perim(X) + 2·ℓ_interior`, checked as enclosures.
pub fn perimeter_identity_holds(level: &JoinLevel, space: &ConvexPolygon) -> bool {
    let px = space.perimeter();
    let l = &level.stats.skeleton_length;
    let two = crate::rational::int(2);
    // interior skeleton = ℓ − perim(X)
    let interior = Enclosure {
        lo: &l.lo - &px.hi,
        hi: &l.hi - &px.lo,
    };
    let rhs = Enclosure {
        lo: &px.lo + &interior.lo * &two,
        hi: &px.hi + &interior.hi * &two,
    };
    level.stats.perimeter_sum.overlaps(&rhs)
}

/// Every cell of `child` lies in the cell of `parent` whose itinerary is its prefix.
pub fn is_nested(parent: &JoinLevel, child: &JoinLevel) -> bool {
    child.cells.iter().all(|c| {
        let prefix = &c.itinerary[..c.itinerary.len() - 1];
        match parent.cells.binary_search_by(|p| p.itinerary.as_slice().cmp(prefix)) {
            Ok(k) => parent.cells[k].region.contains_polygon(&c.region),
            Err(_) => false,
        }
    })
}
