//! Newton and Hodge polygons of slope sequences.

use alloc::vec::Vec;

use crate::arith::SlopeFraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonRole {
    Newton,
    Hodge,
}

/// Convex polygon from (0, 0), slopes taken in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub role: PolygonRole,
    /// Breakpoints (x, y), including both endpoints.
    pub breakpoints: Vec<(i64, SlopeFraction)>,
}

impl Polygon {
    pub fn from_slopes(role: PolygonRole, slopes: &[SlopeFraction]) -> Self {
        let mut s = slopes.to_vec();
        s.sort();
        let mut pts = alloc::vec![(0i64, SlopeFraction::int(0))];
        let mut i = 0;
        while i < s.len() {
            let mut j = i;
            while j < s.len() && s[j] == s[i] {
                j += 1;
            }
            let (x, y) = *pts.last().unwrap();
            pts.push((x + (j - i) as i64, y.add(s[i].mul_int((j - i) as i64))));
            i = j;
        }
        Polygon { role, breakpoints: pts }
    }

    pub fn endpoint(&self) -> (i64, SlopeFraction) {
        *self.breakpoints.last().unwrap()
    }

    /// Value at integer abscissa x in [0, length].
    pub fn eval(&self, x: i64) -> SlopeFraction {
        for w in self.breakpoints.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x0 <= x && x <= x1 {
                let slope = y1.sub(y0).div_int(x1 - x0).unwrap();
                return y0.add(slope.mul_int(x - x0));
            }
        }
        self.breakpoints[0].1
    }

    pub fn integral_breakpoints(&self) -> bool {
        self.breakpoints.iter().all(|(_, y)| y.den() == 1)
    }

    /// self >= other pointwise, with the same endpoints.
    pub fn lies_above(&self, other: &Polygon) -> bool {
        let (x, y) = self.endpoint();
        if other.endpoint() != (x, y) {
            return false;
        }
        (0..=x).all(|t| self.eval(t) >= other.eval(t))
    }
}
