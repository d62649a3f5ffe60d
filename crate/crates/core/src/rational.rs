//! Exact rational arithmetic for curvature values.
//!
//! Every curvature in this crate is a rational number with small numerator
//! and denominator (halves, thirds and sevenths occur), and every theorem
//! verified here is an exact identity, so all arithmetic is exact. Values
//! serialize as `{"num": i64, "den": i64}` pairs, never as decimal strings.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational in canonical form: lowest terms, positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    /// Builds `num/den` in canonical form. Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Renders as `num/den` with the denominator always explicit.
    pub fn as_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational(Ratio::from_integer(n as i64))
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational(Ratio::from_integer(n as i64))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, Add::add)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Rational", 2)?;
        s.serialize_field("num", &self.numer())?;
        s.serialize_field("den", &self.denom())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RationalVisitor;

        impl<'de> Visitor<'de> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with integer fields `num` and `den`")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Rational, A::Error> {
                let mut num: Option<i64> = None;
                let mut den: Option<i64> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "num" => num = Some(map.next_value()?),
                        "den" => den = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["num", "den"])),
                    }
                }
                let num = num.ok_or_else(|| de::Error::missing_field("num"))?;
                let den = den.ok_or_else(|| de::Error::missing_field("den"))?;
                if den == 0 {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(Rational::new(num, den))
            }
        }

        deserializer.deserialize_map(RationalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), -3);
        assert_eq!(r.denom(), 2);
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rational::new(3, 2);
        let b = Rational::new(1, 6);
        assert_eq!(a + b, Rational::new(5, 3));
        assert_eq!(a - b, Rational::new(4, 3));
        assert_eq!(a * b, Rational::new(1, 4));
        assert_eq!(a / b, Rational::from(9));
    }

    #[test]
    fn json_round_trip() {
        let r = Rational::new(-7, 2);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, r#"{"num":-7,"den":2}"#);
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn display_elides_unit_denominator() {
        assert_eq!(Rational::from(9).to_string(), "9");
        assert_eq!(Rational::new(5, 2).to_string(), "5/2");
        assert_eq!(Rational::new(5, 2).as_fraction_string(), "5/2");
        assert_eq!(Rational::from(2).as_fraction_string(), "2/1");
    }
}
