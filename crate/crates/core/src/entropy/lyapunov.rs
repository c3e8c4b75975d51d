use num_traits::Zero;

use crate::error::EntropyError;
use crate::geom::ExactPoint;
use crate::gpe::{GpeSystem, OrbitStatus};
use crate::rational::{int, ln_rational, Enclosure, ExactRational};

pub type Mat2 = [[ExactRational; 2]; 2];

/// The Finsler norm used for `λ`: recorded in every bound report.
pub const FINSLER_NORM: &str = "euclidean-operator-norm";

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Squared operator norm `σ_max²` of a 2×2 matrix:
/// `(p + √(p² − 4q))/2` with `p = ‖M‖_F²`, `q = det²`.
pub fn operator_norm_sq(m: &Mat2) -> Enclosure {
    let p: ExactRational = m.iter().flatten().map(|x| x * x).sum();
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    let disc = &p * &p - int(4) * &det * &det;
    let r = Enclosure::sqrt(&disc);
    let half = ExactRational::new(1.into(), 2.into());
    Enclosure {
        lo: (&p + &r.lo) * &half,
        hi: (&p + &r.hi) * &half,
    }
}

/// `DT^k(x)` for `k = 1..=n` along the orbit of `x`.
pub fn derivative_products(g: &GpeSystem, x: &ExactPoint, n: usize) -> Result<Vec<Mat2>, EntropyError> {
    let orbit = g.evaluate(x, n)?;
    if let OrbitStatus::SingularHit(k) = orbit.status {
        return Err(EntropyError::SingularHit(k));
    }
    let mut acc: Mat2 = [[int(1), int(0)], [int(0), int(1)]];
    let mut out = Vec::with_capacity(n);
    for &i in &orbit.itinerary {
        acc = mul(&g.maps()[i].linear, &acc);
        out.push(acc.clone());
    }
    Ok(out)
}

/// `λ_k(x) = log ‖DT^k(x)‖` as an enclosure `[lo, hi]` of `½ log σ²`.
pub fn lyapunov_log_norms(g: &GpeSystem, x: &ExactPoint, n: usize) -> Result<Vec<(f64, f64)>, EntropyError> {
    Ok(derivative_products(g, x, n)?
        .iter()
        .map(|m| {
            let s = operator_norm_sq(m);
            let lo = if s.lo.is_zero() {
                f64::NEG_INFINITY
            } else {
                0.5 * ln_rational(&s.lo)
            };
            (lo, 0.5 * ln_rational(&s.hi))
        })
        .collect())
}

/// `λ_k(x)/k` for `k = 1..=n`.
pub fn lyapunov(g: &GpeSystem, x: &ExactPoint, n: usize) -> Result<Vec<f64>, EntropyError> {
    Ok(lyapunov_log_norms(g, x, n)?
        .iter()
        .enumerate()
        .map(|(k, (lo, hi))| {
            let v = if lo == hi { *lo } else { 0.5 * (lo + hi) };
            v / (k + 1) as f64
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpe::{make_baker, make_identity_exchange, make_quadrant_rotation, make_shear_exchange};
    use crate::rational::rat;

    #[test]
    fn baker_is_log_two() {
        let g = make_baker();
        let x = ExactPoint::from_ratios(1, 3, 1, 3);
        let ms = derivative_products(&g, &x, 10).unwrap();
        for (k, m) in ms.iter().enumerate() {
            let want = int(4).pow(k as i32 + 1);
            assert_eq!(operator_norm_sq(m), Enclosure::exact(want));
        }
        for v in lyapunov(&g, &x, 10).unwrap() {
            assert!((v - std::f64::consts::LN_2).abs() < 1e-15);
        }
    }

    #[test]
    fn orthogonal_is_zero() {
        let x = ExactPoint::from_ratios(1, 7, 2, 9);
        for g in [make_quadrant_rotation(), make_identity_exchange(2)] {
            assert!(lyapunov(&g, &x, 8).unwrap().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn shear_grows_slowly() {
        let g = make_shear_exchange();
        let x = ExactPoint::from_ratios(2, 7, 3, 11);
        let v = lyapunov(&g, &x, 30).unwrap();
        // ‖[[1,k],[0,1]]‖ ~ k
        let k = 30.0f64;
        let sigma = ((k * k + 2.0 + k * (k * k + 4.0).sqrt()) / 2.0).sqrt();
        assert!((v[29] - sigma.ln() / k).abs() < 1e-9);
    }

    #[test]
    fn singular_start_is_reported() {
        let g = make_baker();
        let x = ExactPoint::new(rat(1, 2), rat(1, 3));
        assert!(matches!(lyapunov(&g, &x, 3), Err(EntropyError::SingularHit(0))));
    }
}
