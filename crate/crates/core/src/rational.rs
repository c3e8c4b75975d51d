//! Exact rationals and certified rational enclosures of irrational quantities.
//!
//! Lengths in the plane are square roots of rationals. They are carried as
//! [`Enclosure`]s: a closed interval `[lo, hi]` with rational endpoints that is
//! guaranteed to contain the true value. When the square root happens to be
//! rational the enclosure collapses to a point.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// Default relative width of square-root enclosures, as a power of two.
pub const DEFAULT_REL_BITS: u32 = 40;

pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &ExactRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Bit length of the larger of numerator and denominator.
pub fn bit_len(q: &ExactRational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

pub fn to_f64(q: &ExactRational) -> f64 {
    let n = q.numer();
    let d = q.denom();
    if n.bits() < 1000 && d.bits() < 1000 {
        if let Some(v) = q.to_f64() {
            return v;
        }
    }
    let shift_n = n.bits().saturating_sub(900) as i64;
    let shift_d = d.bits().saturating_sub(900) as i64;
    let nf = (n >> shift_n as usize).to_f64().unwrap_or(0.0);
    let df = (d >> shift_d as usize).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi((shift_n - shift_d) as i32)
}

/// Natural log of a positive big integer, valid far beyond the f64 range.
pub fn ln_bigint(n: &BigInt) -> f64 {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().map(f64::ln).unwrap_or(f64::NAN)
    } else {
        let shift = bits - 64;
        (n >> shift as usize).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of a positive rational.
pub fn ln_rational(q: &ExactRational) -> f64 {
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Closed rational interval certified to contain a real quantity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl Enclosure {
    pub fn exact(q: ExactRational) -> Self {
        Enclosure { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        Self::exact(BigRational::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &ExactRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        // f64 values are dyadic rationals, so this comparison is exact.
        match BigRational::from_float(x) {
            Some(q) => self.contains(&q),
            None => false,
        }
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (to_f64(&self.lo) + to_f64(&self.hi))
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    pub fn max(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: (&self.lo).max(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    /// Enclosure of `sqrt(q)` for `q >= 0`, with the default relative width.
    pub fn sqrt(q: &ExactRational) -> Self {
        Self::sqrt_bits(q, DEFAULT_REL_BITS)
    }

    /// Enclosure of `sqrt(q)` whose relative width is at most `2^-rel_bits`.
    /// Exact whenever numerator and denominator are both perfect squares.
    pub fn sqrt_bits(q: &ExactRational, rel_bits: u32) -> Self {
        assert!(!q.is_negative(), "sqrt of negative rational");
        if q.is_zero() {
            return Self::zero();
        }
        if let (Some(a), Some(b)) = (exact_isqrt(q.numer()), exact_isqrt(q.denom())) {
            return Self::exact(BigRational::new(a, b));
        }
        let a = q.numer();
        let b = q.denom();
        // s = isqrt(floor(a * 4^k / b)) >= 2^rel_bits
        let need = 2 * rel_bits as i64 + b.bits() as i64 - a.bits() as i64 + 2;
        let k = if need > 0 { (need + 1) / 2 } else { 0 } as usize;
        let scaled = (a << (2 * k)).div_floor(b);
        let s = scaled.sqrt();
        let scale = BigInt::one() << k;
        Enclosure {
            lo: BigRational::new(s.clone(), scale.clone()),
            hi: BigRational::new(s + 1, scale),
        }
    }

    /// Natural-log enclosure of a positive enclosure, as f64 endpoints.
    pub fn ln_bounds(&self) -> (f64, f64) {
        (ln_rational(&self.lo), ln_rational(&self.hi))
    }
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl<'a> Add<&'a Enclosure> for &'a Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl AddAssign<&Enclosure> for Enclosure {
    fn add_assign(&mut self, rhs: &Enclosure) {
        self.lo += &rhs.lo;
        self.hi += &rhs.hi;
    }
}

impl Mul<&ExactRational> for &Enclosure {
    type Output = Enclosure;
    /// Scaling by a nonnegative rational.
    fn mul(self, k: &ExactRational) -> Enclosure {
        assert!(!k.is_negative());
        Enclosure {
            lo: &self.lo * k,
            hi: &self.hi * k,
        }
    }
}

impl std::iter::Sum for Enclosure {
    fn sum<I: Iterator<Item = Enclosure>>(iter: I) -> Self {
        let mut acc = Enclosure::zero();
        for e in iter {
            acc += &e;
        }
        acc
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", decimal(&self.lo, 12, Rounding::Down))
        } else {
            write!(
                f,
                "[{}, {}]",
                decimal(&self.lo, 12, Rounding::Down),
                decimal(&self.hi, 12, Rounding::Up)
            )
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// Decimal expansion of `q` with `digits` significant digits, directed rounding.
/// Integers that fit are written without a fractional part; other values use
/// positional notation when the exponent is moderate, scientific otherwise.
pub fn decimal(q: &ExactRational, digits: u32, rounding: Rounding) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let mag = q.abs();
    // exponent e with 10^e <= mag < 10^(e+1)
    let mut e = ((mag.numer().bits() as f64 - mag.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    if mag.is_integer() && e < 15 {
        return q.numer().to_string();
    }
    let pow = |e: i64| -> ExactRational {
        if e >= 0 {
            BigRational::from_integer(pow10(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    while pow(e) > mag {
        e -= 1;
    }
    while pow(e + 1) <= mag {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &mag * pow(shift);
    // magnitude rounding direction depends on sign
    let round_up = matches!((rounding, negative), (Rounding::Up, false) | (Rounding::Down, true));
    let mut m: BigInt = if round_up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    let mut shift = shift;
    if m >= pow10(digits) {
        // carried into a new digit
        m /= BigInt::from(10);
        shift -= 1;
        e += 1;
    }
    let sign = if negative { "-" } else { "" };
    let mut ds = m.to_str_radix(10);
    if shift <= 0 {
        if e < 15 {
            for _ in 0..(-shift) {
                ds.push('0');
            }
            return format!("{sign}{ds}");
        }
    } else if (-6..15).contains(&e) {
        let point = ds.len() as i64 - shift;
        let s = if point > 0 {
            let (a, b) = ds.split_at(point as usize);
            format!("{a}.{b}")
        } else {
            format!("0.{}{}", "0".repeat((-point) as usize), ds)
        };
        return format!("{sign}{s}");
    }
    let (head, tail) = ds.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}
