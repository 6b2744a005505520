//! Semistable charts Spf O<x_h, ..., x_{h+d-1}> / (x_h ... x_{h+d-1} - p) attached to simplices.

use alloc::vec::Vec;

use crate::building::Simplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSpec {
    pub d: usize,
    /// Lowest lattice index of the simplex; variables are x_h, ..., x_{h+d-1}.
    pub window_start: i64,
    pub variables: Vec<i64>,
    /// Variables inverted on the chart: indices of the window absent from the simplex.
    pub inverted: Vec<i64>,
}

impl ChartSpec {
    /// Components of the special fiber {x_j = 0}, one per index present in the simplex.
    pub fn special_fiber_components(&self) -> Vec<i64> {
        self.variables.iter().copied().filter(|v| !self.inverted.contains(v)).collect()
    }

    /// The relation prod x_i = p, as text.
    pub fn relation(&self) -> alloc::string::String {
        let mut s = alloc::string::String::new();
        for (n, v) in self.variables.iter().enumerate() {
            if n > 0 {
                s.push('*');
            }
            s.push_str(&alloc::format!("x_{v}"));
        }
        s.push_str(" = p");
        s
    }
}

pub fn semistable_chart(s: &Simplex) -> ChartSpec {
    let d = s.lattices[0].d;
    let idx = s.indices();
    let h = idx[0];
    let variables: Vec<i64> = (h..h + d as i64).collect();
    let inverted = variables.iter().copied().filter(|v| !idx.contains(v)).collect();
    ChartSpec { d, window_start: h, variables, inverted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{eta, reference_chain};

    #[test]
    fn charts_of_reference_faces() {
        let full = Simplex::new(&reference_chain(3, 2).unwrap()).unwrap();
        let c = semistable_chart(&full);
        assert_eq!(c.variables, alloc::vec![0, 1]);
        assert!(c.inverted.is_empty());
        assert_eq!(c.relation(), "x_0*x_1 = p");
        let v = semistable_chart(&Simplex::new(&[eta(3, 2, 0)]).unwrap());
        assert_eq!(v.inverted, alloc::vec![1]);
        assert_eq!(v.special_fiber_components(), alloc::vec![0]);
    }
}
