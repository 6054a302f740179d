//! Exact arithmetic in the Gaussian integers Z[i].
//!
//! Both parts are unbounded [`BigInt`]s. Values are never normalized to a
//! canonical associate, so equality is plain componentwise equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Gaussian integer `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        GaussInt::new(re, 0)
    }

    pub fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True for the four units 1, -1, i, -i.
    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// The field norm `re² + im²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `self^exp` by binary exponentiation; `x^0 = 1` for every `x`.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = GaussInt::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies both parts by an ordinary integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        GaussInt {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    /// Returns the unique `q` with `q * divisor == self`.
    ///
    /// Fails with [`Error::DivisionNotExact`] rather than rounding when the
    /// divisor does not divide `self` in Z[i].
    pub fn exact_div(&self, divisor: &GaussInt) -> Result<GaussInt> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if divisor.im.is_zero() {
            let (qr, rr) = self.re.div_rem(&divisor.re);
            let (qi, ri) = self.im.div_rem(&divisor.re);
            if rr.is_zero() && ri.is_zero() {
                return Ok(GaussInt { re: qr, im: qi });
            }
        } else {
            // a / b = a·conj(b) / N(b)
            let norm = divisor.norm();
            let num = self * &divisor.conj();
            let (qr, rr) = num.re.div_rem(&norm);
            let (qi, ri) = num.im.div_rem(&norm);
            if rr.is_zero() && ri.is_zero() {
                return Ok(GaussInt { re: qr, im: qi });
            }
        }
        Err(Error::DivisionNotExact {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        })
    }

    /// Nearest double-precision complex value.
    pub fn to_complex(&self) -> crate::ComplexF {
        crate::ComplexF::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<i64> for GaussInt {
    fn from(v: i64) -> Self {
        GaussInt::real(v)
    }
}

impl From<BigInt> for GaussInt {
    fn from(v: BigInt) -> Self {
        GaussInt::real(v)
    }
}

/// Renders as `a+bi` / `a-bi`, always with both parts and an explicit sign.
impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &'a GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl AddAssign<&GaussInt> for GaussInt {
    fn add_assign(&mut self, rhs: &GaussInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &'a GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &'a GaussInt) -> GaussInt {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussInt::real(&self.re * &rhs.re);
        }
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        &self * &rhs
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

// JSON form: {"re": "<decimal>", "im": "<decimal>"}; strings survive any magnitude.
impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GaussInt", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("im", &self.im.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            re: String,
            im: String,
        }
        let repr = Repr::deserialize(deserializer)?;
        let re = repr.re.parse::<BigInt>().map_err(de::Error::custom)?;
        let im = repr.im.parse::<BigInt>().map_err(de::Error::custom)?;
        Ok(GaussInt { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn addition() {
        assert_eq!(&g(1, 2) + &g(3, -1), g(4, 1));
        assert_eq!(&g(0, 0) + &g(5, 7), g(5, 7));
        assert_eq!(&g(2, 3) + &g(-2, -3), GaussInt::zero());
    }

    #[test]
    fn multiplication() {
        assert_eq!(&g(1, 1) * &g(1, 1), g(0, 2));
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
        assert_eq!(&GaussInt::i() * &GaussInt::i(), g(-1, 0));
    }

    #[test]
    fn powers() {
        assert_eq!(g(0, 2).pow(2), g(-4, 0));
        assert_eq!(g(0, 2).pow(0), GaussInt::one());
        assert_eq!(GaussInt::zero().pow(0), GaussInt::one());
        assert_eq!(g(1, 1).pow(4), g(-4, 0));
        // (1+i)^4 = ((1+i)^2)^2 by repeated multiplication
        let sq = &g(1, 1) * &g(1, 1);
        assert_eq!(g(1, 1).pow(4), &sq * &sq);
    }

    #[test]
    fn conjugation() {
        assert_eq!(g(3, 4).conj(), g(3, -4));
        assert_eq!(g(5, 0).conj(), g(5, 0));
        assert_eq!(g(-2, 7).conj().conj(), g(-2, 7));
    }

    #[test]
    fn exact_division() {
        assert_eq!(g(-4, 0).exact_div(&g(0, 2)).unwrap(), g(0, 2));
        assert_eq!(g(10, 0).exact_div(&g(1, 2)).unwrap(), g(2, -4));
        assert!(matches!(
            g(3, 0).exact_div(&g(2, 0)),
            Err(Error::DivisionNotExact { .. })
        ));
        assert_eq!(
            g(3, 0).exact_div(&GaussInt::zero()),
            Err(Error::DivisionByZero)
        );
        // 1+i divides 2 but not 1
        assert_eq!(g(2, 0).exact_div(&g(1, 1)).unwrap(), g(1, -1));
        assert!(g(1, 0).exact_div(&g(1, 1)).is_err());
    }

    #[test]
    fn display_has_explicit_sign() {
        assert_eq!(g(-4, 0).to_string(), "-4+0i");
        assert_eq!(g(0, -32).to_string(), "0-32i");
        assert_eq!(g(3, 8).to_string(), "3+8i");
    }

    #[test]
    fn json_uses_decimal_strings() {
        let big = GaussInt::new(BigInt::from(2).pow(100), -7);
        let json = serde_json::to_string(&big).unwrap();
        assert_eq!(
            json,
            r#"{"re":"1267650600228229401496703205376","im":"-7"}"#
        );
        let back: GaussInt = serde_json::from_str(&json).unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<GaussInt>(r#"{"re":"1.5","im":"0"}"#).is_err());
    }

    #[test]
    fn units() {
        for u in [g(1, 0), g(-1, 0), g(0, 1), g(0, -1)] {
            assert!(u.is_unit());
        }
        assert!(!g(1, 1).is_unit());
        assert!(!GaussInt::zero().is_unit());
    }
}
