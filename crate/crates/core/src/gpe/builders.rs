//! Constructors for the standard exchange families.

use crate::error::GpeError;
use crate::geom::{AffineMap2, ConvexPolygon, ExactPoint};
use crate::gpe::{Flavor, GpeSystem, PolygonPartition};
use crate::rational::{int, parse_rational, rat, ExactRational};

/// `[x0,x1]×[y0,y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisRect {
    pub x0: ExactRational,
    pub y0: ExactRational,
    pub x1: ExactRational,
    pub y1: ExactRational,
}

impl AxisRect {
    pub fn new(x0: ExactRational, y0: ExactRational, x1: ExactRational, y1: ExactRational) -> Self {
        AxisRect { x0, y0, x1, y1 }
    }

    pub fn polygon(&self) -> Result<ConvexPolygon, GpeError> {
        Ok(ConvexPolygon::rectangle(
            self.x0.clone(),
            self.y0.clone(),
            self.x1.clone(),
            self.y1.clone(),
        )?)
    }
}

/// The baker map on `[0,1]²`: `(2x, y/2)` on the left strip and
/// `(2x−1, y/2+1/2)` on the right strip.
pub fn make_baker() -> GpeSystem {
    let left = ConvexPolygon::rectangle(int(0), int(0), rat(1, 2), int(1)).unwrap();
    let right = ConvexPolygon::rectangle(rat(1, 2), int(0), int(1), int(1)).unwrap();
    let lin = [[int(2), int(0)], [int(0), rat(1, 2)]];
    let maps = vec![
        AffineMap2::new(lin.clone(), [int(0), int(0)]),
        AffineMap2::new(lin, [int(-1), rat(1, 2)]),
    ];
    GpeSystem::new(
        Flavor::Affine,
        PolygonPartition::new(ConvexPolygon::unit_square(), vec![left, right]),
        maps,
    )
    .expect("baker map is a valid exchange")
}

/// Rectangle exchange on `[0,1]²` with pieces `x ↦ x + t_i`.
pub fn make_rectangle_exchange(rects: &[AxisRect], translations: &[ExactPoint]) -> Result<GpeSystem, GpeError> {
    if rects.len() != translations.len() {
        return Err(GpeError::PieceCount(translations.len(), rects.len()));
    }
    let atoms = rects.iter().map(|r| r.polygon()).collect::<Result<Vec<_>, _>>()?;
    let maps = translations.iter().map(AffineMap2::translation).collect();
    GpeSystem::new(
        Flavor::Euclidean,
        PolygonPartition::new(ConvexPolygon::unit_square(), atoms),
        maps,
    )
}

pub fn make_affine_exchange(partition: PolygonPartition, maps: Vec<AffineMap2>) -> Result<GpeSystem, GpeError> {
    GpeSystem::new(Flavor::Affine, partition, maps)
}

/// Rejects any piece whose linear part is not exactly orthogonal.
pub fn make_euclidean_exchange(
    partition: PolygonPartition,
    isometries: Vec<AffineMap2>,
) -> Result<GpeSystem, GpeError> {
    if let Some(i) = isometries.iter().position(|m| !m.is_orthogonal()) {
        return Err(GpeError::NotOrthogonal(i));
    }
    GpeSystem::new(Flavor::Euclidean, partition, isometries)
}

fn vertical_strips(cuts: &[ExactRational]) -> Vec<AxisRect> {
    let mut xs = vec![int(0)];
    xs.extend(cuts.iter().cloned());
    xs.push(int(1));
    xs.windows(2)
        .map(|w| AxisRect::new(w[0].clone(), int(0), w[1].clone(), int(1)))
        .collect()
}

/// `T = id` on `k` vertical strips of equal width.
pub fn make_identity_exchange(k: usize) -> GpeSystem {
    assert!(k >= 1);
    let cuts: Vec<ExactRational> = (1..k).map(|i| rat(i as i64, k as i64)).collect();
    let rects = vertical_strips(&cuts);
    let t = vec![ExactPoint::origin(); k];
    make_rectangle_exchange(&rects, &t).expect("identity exchange is valid")
}

/// Two strips of widths `(α, 1−α)` swapped: a circle rotation by `1−α` in `x`.
pub fn make_rotation_exchange(alpha: &ExactRational) -> Result<GpeSystem, GpeError> {
    let rects = vertical_strips(std::slice::from_ref(alpha));
    let t = vec![
        ExactPoint::new(int(1) - alpha, int(0)),
        ExactPoint::new(-alpha.clone(), int(0)),
    ];
    make_rectangle_exchange(&rects, &t)
}

/// Three rectangles: a left strip of width 1/3 moved to the right edge, and
/// the two halves of the remaining block swapped while moving left.
pub fn make_three_rectangle_exchange() -> GpeSystem {
    let rects = vec![
        AxisRect::new(int(0), int(0), rat(1, 3), int(1)),
        AxisRect::new(rat(1, 3), int(0), int(1), rat(1, 2)),
        AxisRect::new(rat(1, 3), rat(1, 2), int(1), int(1)),
    ];
    let t = vec![
        ExactPoint::from_ratios(2, 3, 0, 1),
        ExactPoint::from_ratios(-1, 3, 1, 2),
        ExactPoint::from_ratios(-1, 3, -1, 2),
    ];
    make_rectangle_exchange(&rects, &t).expect("three-rectangle exchange is valid")
}

/// Each quadrant of `[0,1]²` rotated by 90° about its centre and moved to the
/// next quadrant counterclockwise.
pub fn make_quadrant_rotation() -> GpeSystem {
    let h = rat(1, 2);
    let quads = [
        (int(0), int(0)),
        (h.clone(), int(0)),
        (h.clone(), h.clone()),
        (int(0), h.clone()),
    ];
    let rot = [[int(0), int(-1)], [int(1), int(0)]];
    let mut atoms = Vec::new();
    let mut maps = Vec::new();
    for k in 0..4 {
        let (x0, y0) = &quads[k];
        let (x1, y1) = &quads[(k + 1) % 4];
        atoms.push(ConvexPolygon::rectangle(x0.clone(), y0.clone(), x0 + &h, y0 + &h).unwrap());
        // x ↦ R(x − c) + c'
        let c = ExactPoint::new(x0 + rat(1, 4), y0 + rat(1, 4));
        let c2 = ExactPoint::new(x1 + rat(1, 4), y1 + rat(1, 4));
        let r = AffineMap2::linear_only(rot.clone());
        let rc = r.apply(&c);
        maps.push(AffineMap2::new(rot.clone(), [&c2.x - &rc.x, &c2.y - &rc.y]));
    }
    make_euclidean_exchange(PolygonPartition::new(ConvexPolygon::unit_square(), atoms), maps)
        .expect("quadrant rotation is valid")
}

/// The two triangles of `[0,1]²` cut by the anti-diagonal, each sheared by
/// `[[1,1],[0,1]]`: the torus shear `(x+y, y) mod 1` as a polygon exchange.
pub fn make_shear_exchange() -> GpeSystem {
    let p = ExactPoint::from_ints;
    let lower = ConvexPolygon::new(vec![p(0, 0), p(1, 0), p(0, 1)]).unwrap();
    let upper = ConvexPolygon::new(vec![p(1, 0), p(1, 1), p(0, 1)]).unwrap();
    let shear = [[int(1), int(1)], [int(0), int(1)]];
    let maps = vec![
        AffineMap2::new(shear.clone(), [int(0), int(0)]),
        AffineMap2::new(shear, [int(-1), int(0)]),
    ];
    make_affine_exchange(
        PolygonPartition::new(ConvexPolygon::unit_square(), vec![lower, upper]),
        maps,
    )
    .expect("shear exchange is valid")
}

/// Names accepted by [`builtin`].
pub const BUILTIN_SYSTEMS: &[(&str, &str)] = &[
    (
        "baker",
        "baker map on the unit square (2 strips, pieces (2x, y/2) and (2x-1, y/2+1/2))",
    ),
    (
        "identity-exchange",
        "T = id; parameter atoms=<k> vertical strips (default 1)",
    ),
    (
        "rotation-exchange",
        "two strips of widths (a, 1-a) swapped; parameter alpha=<p/q> (default 2/5)",
    ),
    (
        "three-rectangle-exchange",
        "3-atom Euclidean rectangle exchange with rational translations",
    ),
    (
        "quadrant-rotation",
        "4 quadrants rotated by 90 degrees and cycled (Euclidean)",
    ),
    (
        "shear-exchange",
        "two triangles sheared by [[1,1],[0,1]] (affine, parabolic)",
    ),
];

/// Builds a named builtin system. `params` are `key=value` pairs.
pub fn builtin(name: &str, params: &[(String, String)]) -> Result<GpeSystem, String> {
    let get = |k: &str| params.iter().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
    let allow = |keys: &[&str]| -> Result<(), String> {
        for (k, _) in params {
            if !keys.contains(&k.as_str()) {
                return Err(format!("unknown parameter '{k}' for system '{name}'"));
            }
        }
        Ok(())
    };
    match name {
        "baker" => {
            allow(&[])?;
            Ok(make_baker())
        }
        "identity-exchange" => {
            allow(&["atoms"])?;
            let k = match get("atoms") {
                Some(v) => v.parse::<usize>().map_err(|_| format!("bad atoms value '{v}'"))?,
                None => 1,
            };
            if k == 0 {
                return Err("atoms must be positive".into());
            }
            Ok(make_identity_exchange(k))
        }
        "rotation-exchange" => {
            allow(&["alpha"])?;
            let alpha = match get("alpha") {
                Some(v) => parse_rational(v).ok_or_else(|| format!("bad alpha value '{v}'"))?,
                None => rat(2, 5),
            };
            if alpha <= int(0) || alpha >= int(1) {
                return Err("alpha must lie in (0, 1)".into());
            }
            make_rotation_exchange(&alpha).map_err(|e| e.to_string())
        }
        "three-rectangle-exchange" => {
            allow(&[])?;
            Ok(make_three_rectangle_exchange())
        }
        "quadrant-rotation" => {
            allow(&[])?;
            Ok(make_quadrant_rotation())
        }
        "shear-exchange" => {
            allow(&[])?;
            Ok(make_shear_exchange())
        }
        other => Err(format!("unknown system '{other}'")),
    }
}
