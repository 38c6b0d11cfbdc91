//! Exact rational scalar used by every planar module.
//!
//! `Rat` wraps an arbitrary-precision `BigRational`. The wrapper exists so
//! that coordinates serialize uniformly as two-element `[num, den]` integer
//! arrays and so the rest of the crate never touches a float in planar code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact rational number. Denominator is kept positive and reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Lossy conversion for SVG scaling and the bipyramid module.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = String;

    /// Parses "a/b" or "a".
    fn from_str(s: &str) -> Result<Rat, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(n.trim()).map_err(|e| e.to_string())?;
        let den = BigInt::from_str(d.trim()).map_err(|e| e.to_string())?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl<'a> Neg for &'a Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

/// Rationals serialize as `[num, den]` with both entries decimal strings when
/// they exceed i64, plain integers otherwise. Parsing accepts either form.
impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(2))?;
        for part in [self.0.numer(), self.0.denom()] {
            match num_traits::ToPrimitive::to_i64(part) {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&part.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum IntOrStr {
            Int(i64),
            Str(String),
        }
        let parts: Vec<IntOrStr> = Vec::deserialize(de)?;
        if parts.len() != 2 {
            return Err(D::Error::custom("rational must be [num, den]"));
        }
        let mut big = Vec::with_capacity(2);
        for p in parts {
            let v = match p {
                IntOrStr::Int(v) => BigInt::from(v),
                IntOrStr::Str(s) => {
                    BigInt::from_str(&s).map_err(|e| D::Error::custom(e.to_string()))?
                }
            };
            big.push(v);
        }
        let den = big.pop().unwrap();
        let num = big.pop().unwrap();
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let r = Rat::new(2, -4);
        assert_eq!(r, Rat::new(-1, 2));
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Rat::new(1, 3);
        let sum = &third + &third + third;
        assert_eq!(sum, Rat::one());
    }

    #[test]
    fn json_round_trip() {
        let r = Rat::new(-7, 12);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "[-7,12]");
        let back: Rat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn parses_fraction_strings() {
        assert_eq!("3/6".parse::<Rat>().unwrap(), Rat::new(1, 2));
        assert_eq!("-2".parse::<Rat>().unwrap(), Rat::int(-2));
        assert!("1/0".parse::<Rat>().is_err());
    }
}
