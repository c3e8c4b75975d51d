use std::fmt;

use num_traits::{One, Zero};

use crate::error::GeomError;
use crate::geom::ExactPoint;
use crate::rational::{format_rational, ExactRational};

/// `x ↦ linear · x + translation` over exact rationals.
///
/// The linear part is also the differential of the map, so products of linear
/// parts along an orbit give `DT^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap2 {
    pub linear: [[ExactRational; 2]; 2],
    pub translation: [ExactRational; 2],
}

impl AffineMap2 {
    pub fn new(linear: [[ExactRational; 2]; 2], translation: [ExactRational; 2]) -> Self {
        AffineMap2 { linear, translation }
    }

    /// Like [`AffineMap2::new`] but rejects a singular linear part.
    pub fn invertible(linear: [[ExactRational; 2]; 2], translation: [ExactRational; 2]) -> Result<Self, GeomError> {
        let m = AffineMap2::new(linear, translation);
        if m.det().is_zero() {
            Err(GeomError::Singular)
        } else {
            Ok(m)
        }
    }

    pub fn identity() -> Self {
        let o = ExactRational::one;
        let z = ExactRational::zero;
        AffineMap2::new([[o(), z()], [z(), o()]], [z(), z()])
    }

    pub fn translation(t: &ExactPoint) -> Self {
        let mut m = AffineMap2::identity();
        m.translation = [t.x.clone(), t.y.clone()];
        m
    }

    pub fn linear_only(linear: [[ExactRational; 2]; 2]) -> Self {
        AffineMap2::new(linear, [ExactRational::zero(), ExactRational::zero()])
    }

    /// Reflection across the line through `a` and `b`.
    pub fn reflection(a: &ExactPoint, b: &ExactPoint) -> Result<Self, GeomError> {
        let d = b.sub(a);
        let n2 = d.norm_sq();
        if n2.is_zero() {
            return Err(GeomError::ZeroLengthSegment);
        }
        // R = (1/|d|^2) [[dx^2 - dy^2, 2 dx dy], [2 dx dy, dy^2 - dx^2]]
        let two = ExactRational::from_integer(2.into());
        let xx = &d.x * &d.x;
        let yy = &d.y * &d.y;
        let xy = &two * &d.x * &d.y;
        let lin = [[(&xx - &yy) / &n2, &xy / &n2], [&xy / &n2, (&yy - &xx) / &n2]];
        let m = AffineMap2::linear_only(lin);
        // fix a: t = a - R a
        let ra = m.apply(a);
        Ok(AffineMap2::new(m.linear, [&a.x - &ra.x, &a.y - &ra.y]))
    }

    pub fn det(&self) -> ExactRational {
        let l = &self.linear;
        &l[0][0] * &l[1][1] - &l[0][1] * &l[1][0]
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// `LᵀL = I` exactly.
    pub fn is_orthogonal(&self) -> bool {
        let l = &self.linear;
        let c0 = &l[0][0] * &l[0][0] + &l[1][0] * &l[1][0];
        let c1 = &l[0][1] * &l[0][1] + &l[1][1] * &l[1][1];
        let c01 = &l[0][0] * &l[0][1] + &l[1][0] * &l[1][1];
        c0.is_one() && c1.is_one() && c01.is_zero()
    }

    pub fn apply(&self, p: &ExactPoint) -> ExactPoint {
        let l = &self.linear;
        ExactPoint::new(
            &l[0][0] * &p.x + &l[0][1] * &p.y + &self.translation[0],
            &l[1][0] * &p.x + &l[1][1] * &p.y + &self.translation[1],
        )
    }

    /// Applies only the linear part (maps direction vectors).
    pub fn apply_linear(&self, v: &ExactPoint) -> ExactPoint {
        let l = &self.linear;
        ExactPoint::new(&l[0][0] * &v.x + &l[0][1] * &v.y, &l[1][0] * &v.x + &l[1][1] * &v.y)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineMap2) -> AffineMap2 {
        let a = &self.linear;
        let b = &inner.linear;
        let lin = [
            [
                &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            ],
            [
                &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
            ],
        ];
        let t = self.apply(&ExactPoint::new(
            inner.translation[0].clone(),
            inner.translation[1].clone(),
        ));
        AffineMap2::new(lin, [t.x, t.y])
    }

    pub fn inverse(&self) -> Result<AffineMap2, GeomError> {
        let d = self.det();
        if d.is_zero() {
            return Err(GeomError::Singular);
        }
        let l = &self.linear;
        let lin = [[&l[1][1] / &d, -(&l[0][1] / &d)], [-(&l[1][0] / &d), &l[0][0] / &d]];
        let m = AffineMap2::linear_only(lin);
        let t = m.apply(&ExactPoint::new(
            self.translation[0].clone(),
            self.translation[1].clone(),
        ));
        Ok(AffineMap2::new(m.linear, [-t.x, -t.y]))
    }

    /// Pulls the halfplane `{y : n·y <= c}` back through this map, giving
    /// `{x : n·(Ax + b) <= c}` as `(Aᵀn, c - n·b)`.
    pub fn pullback_halfplane(
        &self,
        normal: &[ExactRational; 2],
        offset: &ExactRational,
    ) -> ([ExactRational; 2], ExactRational) {
        let l = &self.linear;
        let n = [
            &l[0][0] * &normal[0] + &l[1][0] * &normal[1],
            &l[0][1] * &normal[0] + &l[1][1] * &normal[1],
        ];
        let c = offset - (&normal[0] * &self.translation[0] + &normal[1] * &self.translation[1]);
        (n, c)
    }

    pub fn max_bits(&self) -> u64 {
        self.linear
            .iter()
            .flatten()
            .chain(self.translation.iter())
            .map(crate::rational::bit_len)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for AffineMap2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.linear;
        write!(
            f,
            "[[{}, {}], [{}, {}]] + ({}, {})",
            format_rational(&l[0][0]),
            format_rational(&l[0][1]),
            format_rational(&l[1][0]),
            format_rational(&l[1][1]),
            format_rational(&self.translation[0]),
            format_rational(&self.translation[1])
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn inverse_composes_to_identity() {
        let m = AffineMap2::invertible([[int(2), int(1)], [int(0), rat(1, 2)]], [rat(1, 3), int(-1)]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), AffineMap2::identity());
        assert_eq!(inv.compose(&m), AffineMap2::identity());
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            AffineMap2::invertible([[int(1), int(2)], [int(2), int(4)]], [int(0), int(0)]),
            Err(GeomError::Singular)
        );
    }

    #[test]
    fn reflection_is_rational_orthogonal_involution() {
        let a = ExactPoint::from_ints(0, 0);
        let b = ExactPoint::from_ints(3, 1);
        let r = AffineMap2::reflection(&a, &b).unwrap();
        assert!(r.is_orthogonal());
        assert_eq!(r.det(), int(-1));
        assert_eq!(r.compose(&r), AffineMap2::identity());
        assert_eq!(r.apply(&b), b);
    }

    #[test]
    fn pythagorean_rotation_is_orthogonal() {
        let m = AffineMap2::linear_only([[rat(3, 5), rat(-4, 5)], [rat(4, 5), rat(3, 5)]]);
        assert!(m.is_orthogonal());
        let shear = AffineMap2::linear_only([[int(1), int(1)], [int(0), int(1)]]);
        assert!(!shear.is_orthogonal());
    }
}
