use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// An element of `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfExponent {
    doubled: i64,
}

impl HalfExponent {
    pub const ZERO: HalfExponent = HalfExponent { doubled: 0 };
    pub const HALF: HalfExponent = HalfExponent { doubled: 1 };
    pub const ONE: HalfExponent = HalfExponent { doubled: 2 };

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfExponent { doubled }
    }

    pub const fn int(v: i64) -> Self {
        HalfExponent { doubled: 2 * v }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, if there is one.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.doubled / 2)
    }

    pub fn is_zero(self) -> bool {
        self.doubled == 0
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.doubled, 2)
    }

    /// Parses `3`, `-1/2`, `5/2`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().ok()?;
            match d.trim() {
                "2" => Some(HalfExponent::from_doubled(n)),
                "1" => Some(HalfExponent::int(n)),
                _ => None,
            }
        } else {
            s.parse().ok().map(HalfExponent::int)
        }
    }
}

impl fmt::Display for HalfExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl Add for HalfExponent {
    type Output = HalfExponent;
    fn add(self, rhs: Self) -> Self {
        HalfExponent::from_doubled(self.doubled + rhs.doubled)
    }
}

impl AddAssign for HalfExponent {
    fn add_assign(&mut self, rhs: Self) {
        self.doubled += rhs.doubled;
    }
}

impl Sub for HalfExponent {
    type Output = HalfExponent;
    fn sub(self, rhs: Self) -> Self {
        HalfExponent::from_doubled(self.doubled - rhs.doubled)
    }
}

impl SubAssign for HalfExponent {
    fn sub_assign(&mut self, rhs: Self) {
        self.doubled -= rhs.doubled;
    }
}

impl Neg for HalfExponent {
    type Output = HalfExponent;
    fn neg(self) -> Self {
        HalfExponent::from_doubled(-self.doubled)
    }
}

impl Mul<i64> for HalfExponent {
    type Output = HalfExponent;
    fn mul(self, rhs: i64) -> Self {
        HalfExponent::from_doubled(self.doubled * rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for d in -7..=7 {
            let h = HalfExponent::from_doubled(d);
            assert_eq!(HalfExponent::parse(&h.to_string()), Some(h));
        }
        assert_eq!(HalfExponent::HALF.to_string(), "1/2");
        assert_eq!(HalfExponent::int(-3).to_string(), "-3");
    }

    #[test]
    fn integrality() {
        assert!(HalfExponent::from_doubled(4).is_integer());
        assert!(!(HalfExponent::HALF + HalfExponent::ONE).is_integer());
        assert!((HalfExponent::HALF + HalfExponent::HALF).is_integer());
    }
}
