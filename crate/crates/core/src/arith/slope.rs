use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A rational number kept in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlopeFraction {
    num: i64,
    den: i64,
}

impl SlopeFraction {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameters("slope with zero denominator".into()));
        }
        let g = num.gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        Ok(SlopeFraction { num: s * num / g, den: s * den / g })
    }

    pub fn int(n: i64) -> Self {
        SlopeFraction { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    /// Denominator in lowest terms; this is m(lambda).
    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn canonical(self) -> Self {
        Self::new(self.num, self.den).unwrap()
    }

    pub fn neg(self) -> Self {
        SlopeFraction { num: -self.num, den: self.den }
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.num * o.den + o.num * self.den, self.den * o.den).unwrap()
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn mul_int(self, k: i64) -> Self {
        Self::new(self.num * k, self.den).unwrap()
    }

    pub fn div_int(self, k: i64) -> Result<Self> {
        Self::new(self.num, self.den * k)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(&self) -> i64 {
        -(-self.num).div_euclid(self.den)
    }
}

impl Ord for SlopeFraction {
    fn cmp(&self, o: &Self) -> Ordering {
        ((self.num as i128) * (o.den as i128)).cmp(&((o.num as i128) * (self.den as i128)))
    }
}

impl PartialOrd for SlopeFraction {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for SlopeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl core::str::FromStr for SlopeFraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(alloc::format!("cannot parse slope '{s}'"));
        match s.trim().split_once('/') {
            Some((a, b)) => Self::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => Ok(Self::int(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_ordered() {
        let a = SlopeFraction::new(4, -6).unwrap();
        assert_eq!((a.num(), a.den()), (-2, 3));
        assert_eq!(a.canonical(), a);
        assert!(a < SlopeFraction::int(0));
        assert_eq!("3/6".parse::<SlopeFraction>().unwrap(), SlopeFraction::new(1, 2).unwrap());
        assert_eq!(SlopeFraction::new(-1, 2).unwrap().floor(), -1);
        assert_eq!(SlopeFraction::new(-1, 2).unwrap().ceil(), 0);
    }
}
