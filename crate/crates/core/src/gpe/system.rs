use std::fmt;

use num_traits::Zero;

use crate::error::GpeError;
use crate::geom::{apply_affine, intersect_convex, AffineMap2, ConvexPolygon, ExactPoint, Location};
use crate::rational::ExactRational;

/// Which family of piece maps a system is declared to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Invertible affine pieces.
    Affine,
    /// Pieces are Euclidean isometries (orthogonal linear part).
    Euclidean,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Affine => "affine",
            Flavor::Euclidean => "euclidean",
        }
    }

    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "affine" => Some(Flavor::Affine),
            "euclidean" => Some(Flavor::Euclidean),
            _ => None,
        }
    }
}

/// A space `X` cut into convex atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonPartition {
    pub space: ConvexPolygon,
    pub atoms: Vec<ConvexPolygon>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    AtomOutsideSpace {
        side: Side,
        atom: usize,
    },
    InteriorOverlap {
        side: Side,
        first: usize,
        second: usize,
    },
    AreaMismatch {
        side: Side,
        atoms: ExactRational,
        space: ExactRational,
    },
    NonInvertibleMap {
        piece: usize,
    },
    PieceCountMismatch {
        atoms: usize,
        pieces: usize,
    },
    NotOrthogonal {
        piece: usize,
    },
    PerimeterNotPreserved {
        piece: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::format_rational as fr;
        match self {
            Violation::AtomOutsideSpace { side, atom } => {
                write!(f, "{side} atom outside space (atom {atom})")
            }
            Violation::InteriorOverlap { side, first, second } => {
                write!(f, "{side} interior overlap (atoms {first} and {second})")
            }
            Violation::AreaMismatch { side, atoms, space } => write!(
                f,
                "{side} area deficit (atoms cover {}, space has {})",
                fr(atoms),
                fr(space)
            ),
            Violation::NonInvertibleMap { piece } => write!(f, "non-invertible piece map {piece}"),
            Violation::PieceCountMismatch { atoms, pieces } => {
                write!(f, "piece count mismatch ({pieces} maps for {atoms} atoms)")
            }
            Violation::NotOrthogonal { piece } => {
                write!(f, "euclidean piece {piece} has non-orthogonal linear part")
            }
            Violation::PerimeterNotPreserved { piece } => {
                write!(f, "euclidean piece {piece} does not preserve edge lengths")
            }
        }
    }
}

/// Every invariant violation found; empty means the system is a valid exchange.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

impl PolygonPartition {
    pub fn new(space: ConvexPolygon, atoms: Vec<ConvexPolygon>) -> Self {
        PolygonPartition { space, atoms }
    }

    /// Containment, pairwise interior-disjointness and exact area additivity.
    pub fn check(&self, side: Side) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, a) in self.atoms.iter().enumerate() {
            if !self.space.contains_polygon(a) {
                out.push(Violation::AtomOutsideSpace { side, atom: i });
            }
        }
        let boxes: Vec<_> = self.atoms.iter().map(|a| a.bounding_box()).collect();
        for i in 0..self.atoms.len() {
            for j in i + 1..self.atoms.len() {
                let (l1, h1) = &boxes[i];
                let (l2, h2) = &boxes[j];
                if h1.x <= l2.x || h2.x <= l1.x || h1.y <= l2.y || h2.y <= l1.y {
                    continue;
                }
                if intersect_convex(&self.atoms[i], &self.atoms[j]).is_some() {
                    out.push(Violation::InteriorOverlap {
                        side,
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let total: ExactRational = self
            .atoms
            .iter()
            .map(|a| a.area())
            .fold(ExactRational::zero(), |acc, x| acc + x);
        let space = self.space.area();
        if total != space {
            out.push(Violation::AreaMismatch {
                side,
                atoms: total,
                space,
            });
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    Regular,
    /// The point reached at this step lies on the boundary of the partition.
    SingularHit(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    /// `x, Tx, ..., T^k x` for every successful step `k`.
    pub points: Vec<ExactPoint>,
    pub itinerary: Vec<usize>,
    pub status: OrbitStatus,
}

impl OrbitResult {
    pub fn last(&self) -> &ExactPoint {
        self.points.last().expect("orbit starts with x")
    }

    pub fn is_regular(&self) -> bool {
        self.status == OrbitStatus::Regular
    }
}

/// A generalized polygon exchange `T : (X, P) → (X, Q)` with `Q_i = T_i(P_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GpeSystem {
    flavor: Flavor,
    source: PolygonPartition,
    maps: Vec<AffineMap2>,
    target: PolygonPartition,
}

impl GpeSystem {
    /// Builds the system and derives the target partition, without running
    /// the partition checks. Fails only if `Q` cannot be formed.
    pub fn assemble(flavor: Flavor, source: PolygonPartition, maps: Vec<AffineMap2>) -> Result<GpeSystem, GpeError> {
        let mut report = ValidationReport::default();
        if maps.len() != source.atoms.len() {
            report.violations.push(Violation::PieceCountMismatch {
                atoms: source.atoms.len(),
                pieces: maps.len(),
            });
            return Err(GpeError::Invalid(report));
        }
        for (i, m) in maps.iter().enumerate() {
            if !m.is_invertible() {
                report.violations.push(Violation::NonInvertibleMap { piece: i });
            }
        }
        if !report.is_valid() {
            return Err(GpeError::Invalid(report));
        }
        let target_atoms = source
            .atoms
            .iter()
            .zip(&maps)
            .map(|(a, m)| apply_affine(m, a))
            .collect::<Result<Vec<_>, _>>()?;
        let target = PolygonPartition::new(source.space.clone(), target_atoms);
        Ok(GpeSystem {
            flavor,
            source,
            maps,
            target,
        })
    }

    /// [`GpeSystem::assemble`] followed by [`GpeSystem::validate`].
    pub fn new(flavor: Flavor, source: PolygonPartition, maps: Vec<AffineMap2>) -> Result<GpeSystem, GpeError> {
        let g = GpeSystem::assemble(flavor, source, maps)?;
        let report = g.validate();
        if report.is_valid() {
            Ok(g)
        } else {
            Err(GpeError::Invalid(report))
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn space(&self) -> &ConvexPolygon {
        &self.source.space
    }

    pub fn source(&self) -> &PolygonPartition {
        &self.source
    }

    pub fn target(&self) -> &PolygonPartition {
        &self.target
    }

    pub fn maps(&self) -> &[AffineMap2] {
        &self.maps
    }

    pub fn atom_count(&self) -> usize {
        self.source.atoms.len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = self.source.check(Side::Source);
        violations.extend(self.target.check(Side::Target));
        if self.flavor == Flavor::Euclidean {
            for (i, m) in self.maps.iter().enumerate() {
                if !m.is_orthogonal() {
                    violations.push(Violation::NotOrthogonal { piece: i });
                    continue;
                }
                if !preserves_edge_lengths(&self.source.atoms[i], &self.target.atoms[i]) {
                    violations.push(Violation::PerimeterNotPreserved { piece: i });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Index of the atom whose interior contains `x`; `Err(true)` when `x` is
    /// on the partition boundary, `Err(false)` when outside every atom.
    pub fn locate(&self, x: &ExactPoint) -> Result<usize, bool> {
        let mut boundary = false;
        for (i, a) in self.source.atoms.iter().enumerate() {
            match a.locate(x) {
                Location::Interior => return Ok(i),
                Location::Boundary => boundary = true,
                Location::Exterior => {}
            }
        }
        Err(boundary)
    }

    /// Iterates `T` on `x` for `n` steps, stopping at the first boundary point.
    pub fn evaluate(&self, x: &ExactPoint, n: usize) -> Result<OrbitResult, GpeError> {
        if !self.space().contains_closed(x) {
            return Err(GpeError::OutsideSpace);
        }
        let mut points = vec![x.clone()];
        let mut itinerary = Vec::with_capacity(n);
        let mut cur = x.clone();
        for step in 0..n {
            match self.locate(&cur) {
                Ok(i) => {
                    cur = self.maps[i].apply(&cur);
                    itinerary.push(i);
                    points.push(cur.clone());
                }
                Err(_) => {
                    return Ok(OrbitResult {
                        points,
                        itinerary,
                        status: OrbitStatus::SingularHit(step),
                    })
                }
            }
        }
        Ok(OrbitResult {
            points,
            itinerary,
            status: OrbitStatus::Regular,
        })
    }

    /// `T^{-1}`: source and target swapped, pieces inverted, atom order kept.
    pub fn inverse(&self) -> Result<GpeSystem, GpeError> {
        let maps = self.maps.iter().map(|m| m.inverse()).collect::<Result<Vec<_>, _>>()?;
        Ok(GpeSystem {
            flavor: self.flavor,
            source: self.target.clone(),
            maps,
            target: self.source.clone(),
        })
    }
}

fn preserves_edge_lengths(p: &ConvexPolygon, q: &ConvexPolygon) -> bool {
    let mut a: Vec<ExactRational> = p.edges().map(|(u, v)| u.dist_sq(v)).collect();
    let mut b: Vec<ExactRational> = q.edges().map(|(u, v)| u.dist_sq(v)).collect();
    a.sort();
    b.sort();
    a == b
}
