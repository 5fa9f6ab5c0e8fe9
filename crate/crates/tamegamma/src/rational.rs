//! Arithmetic in the field `Q(i)` of Gaussian rationals.
//!
//! Every coefficient in this crate is a Gaussian rational `a + b*i` with
//! `a`, `b` arbitrary-precision rationals.  `num_rational::BigRational`
//! keeps each part reduced with a positive denominator, so values are
//! canonical by construction and equality is structural.
//!
//! The field operations never round; conversion to `Complex<f64>` exists
//! only for the floating-point Whitney probe.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element of `Q(i)`, kept in canonical (reduced) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// The rational `num/den`.  Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when the value is a plain rational (imaginary part zero).
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|x|^2 = re^2 + im^2`, an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Rounds to a complex double.  Used only by the numerical probe.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Deterministic rational-to-double conversion (numerator and denominator
/// each rounded, then divided; values in this crate are far from overflow).
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Canonical display: `0`, `3`, `-1/2`, `i`, `-i`, `2/3*i`, `1+2*i`, `1-i`.
/// No surrounding parentheses; the polynomial printer adds them when a
/// genuinely complex value appears inside a term.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let write_im = |f: &mut fmt::Formatter<'_>, im: &BigRational, lead_sign: bool| {
            let mag = im.abs();
            let sign = if im.is_negative() {
                "-"
            } else if lead_sign {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}*i")
            }
        };
        if self.re.is_zero() {
            write_im(f, &self.im, true)
        } else {
            write!(f, "{}", self.re)?;
            write_im(f, &self.im, false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    use crate::testutil::SplitMix;

    fn random_value(rng: &mut SplitMix) -> GaussianRational {
        let den = |r: &mut SplitMix| 1 + (r.next() % 4) as i64;
        GaussianRational::new(
            BigRational::new(BigInt::from(rng.small(6)), BigInt::from(den(rng))),
            BigRational::new(BigInt::from(rng.small(6)), BigInt::from(den(rng))),
        )
    }

    #[test]
    fn basic_identities() {
        let x = g(3, -2);
        assert_eq!(&x + &GaussianRational::zero(), x);
        assert_eq!(&x * &GaussianRational::one(), x);
        assert_eq!(&x - &x, GaussianRational::zero());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), g(-1, 0));
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = SplitMix(0xc0ffee);
        for _ in 0..200 {
            let a = random_value(&mut rng);
            let b = random_value(&mut rng);
            let c = random_value(&mut rng);
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                let inv = a.inverse().unwrap();
                assert!((&a * &inv).is_one());
            }
        }
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert_eq!(GaussianRational::zero().inverse(), None);
    }

    #[test]
    fn conjugation_and_norm() {
        let x = g(3, 4);
        assert_eq!(
            x.norm_sqr(),
            BigRational::from_integer(BigInt::from(25))
        );
        assert_eq!(&x * &x.conj(), g(25, 0));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(g(3, 0).to_string(), "3");
        assert_eq!(GaussianRational::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(1, 2).to_string(), "1+2*i");
        assert_eq!(g(1, -1).to_string(), "1-i");
        let two_thirds_i = GaussianRational::new(
            BigRational::zero(),
            BigRational::new(BigInt::from(2), BigInt::from(3)),
        );
        assert_eq!(two_thirds_i.to_string(), "2/3*i");
    }

    #[test]
    fn powers() {
        assert_eq!(GaussianRational::i().pow(4), GaussianRational::one());
        assert_eq!(g(2, 0).pow(10), g(1024, 0));
    }
}
