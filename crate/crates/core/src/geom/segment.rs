use std::fmt;

use crate::error::GeomError;
use crate::geom::ExactPoint;
use crate::rational::Enclosure;

/// A closed segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub a: ExactPoint,
    pub b: ExactPoint,
}

impl Segment {
    pub fn new(a: ExactPoint, b: ExactPoint) -> Result<Self, GeomError> {
        if a == b {
            Err(GeomError::ZeroLengthSegment)
        } else {
            Ok(Segment { a, b })
        }
    }

    /// Endpoints ordered lexicographically.
    pub fn canonical(&self) -> Segment {
        if self.a <= self.b {
            self.clone()
        } else {
            Segment {
                a: self.b.clone(),
                b: self.a.clone(),
            }
        }
    }

    pub fn length(&self) -> Enclosure {
        Enclosure::sqrt(&self.a.dist_sq(&self.b))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}
