use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::rational::{format_rational, rat, to_f64, ExactRational};

/// A point of the plane with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactPoint {
    pub x: ExactRational,
    pub y: ExactRational,
}

impl ExactPoint {
    pub fn new(x: ExactRational, y: ExactRational) -> Self {
        ExactPoint { x, y }
    }

    /// Shorthand for `(xn/xd, yn/yd)`.
    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        ExactPoint::new(rat(xn, xd), rat(yn, yd))
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        ExactPoint::from_ratios(x, 1, y, 1)
    }

    pub fn origin() -> Self {
        ExactPoint::new(ExactRational::zero(), ExactRational::zero())
    }

    pub fn sub(&self, o: &ExactPoint) -> ExactPoint {
        ExactPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &ExactPoint) -> ExactPoint {
        ExactPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &ExactRational) -> ExactPoint {
        ExactPoint::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &ExactPoint) -> ExactRational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &ExactPoint) -> ExactRational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm_sq(&self) -> ExactRational {
        self.dot(self)
    }

    pub fn dist_sq(&self, o: &ExactPoint) -> ExactRational {
        self.sub(o).norm_sq()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }
}

/// Lexicographic order on (x, y); used for canonical forms.
impl Ord for ExactPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for ExactPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// Twice the signed area of triangle (a, b, c); positive for a left turn.
pub fn orient(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint) -> ExactRational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}
