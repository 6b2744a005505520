//! Equations of the local model inside (P^{d-1})^d and their chart substitution.
//!
//! T(i, j) is the j-th homogeneous coordinate on the i-th copy, i in Z/d.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalModelForm {
    /// T_j^{(i)} T_k^{(i+1)} = T_j^{(i+1)} T_k^{(i)} and T_0^{(i+1)} T_j^{(i)} = p T_j^{(i+1)} T_0^{(i)}.
    Main,
    /// T_{j-1}^{(i)} T_k^{(i+1)} = T_j^{(i+1)} T_{k-1}^{(i)} and T_j^{(i+1)} T_{d-1}^{(i)} = p T_{j-1}^{(i)} T_0^{(i+1)}.
    Shifted,
}

pub type TVar = (usize, usize);

/// lhs = p^{varpi} rhs, each side a product of two coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub family: u8,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub lhs: [TVar; 2],
    pub rhs: [TVar; 2],
    pub varpi: u32,
    pub flagged: bool,
}

impl Equation {
    pub fn render(&self) -> String {
        let t = |v: TVar| format!("T{}^({})", v.1, v.0);
        let pre = if self.varpi > 0 { "p*" } else { "" };
        format!("{}*{} = {pre}{}*{}", t(self.lhs[0]), t(self.lhs[1]), t(self.rhs[0]), t(self.rhs[1]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSet {
    pub d: usize,
    pub form: LocalModelForm,
    pub equations: Vec<Equation>,
}

/// Flagged generators: the first family with j = k + 1 for every i, and the second family
/// with j = 1 at i = 0. That is d(d - 2) + 1 = (d - 1)^2 equations.
fn is_flagged(family: u8, i: usize, j: usize, k: usize) -> bool {
    match family {
        1 => j == k + 1,
        _ => j == 1 && i == 0,
    }
}

pub fn local_model_equations(d: usize, form: LocalModelForm) -> Result<EquationSet> {
    if d < 2 {
        return Err(Error::InvalidParameters("local model equations need d >= 2".into()));
    }
    let mut equations = Vec::new();
    for i in 0..d {
        let n = (i + 1) % d;
        for j in 1..d {
            for k in 1..j {
                let (lhs, rhs) = match form {
                    LocalModelForm::Main => ([(i, j), (n, k)], [(n, j), (i, k)]),
                    LocalModelForm::Shifted => ([(i, j - 1), (n, k)], [(n, j), (i, k - 1)]),
                };
                equations.push(Equation { family: 1, i, j, k, lhs, rhs, varpi: 0, flagged: is_flagged(1, i, j, k) });
            }
        }
        for j in 1..d {
            let (lhs, rhs) = match form {
                LocalModelForm::Main => ([(n, 0), (i, j)], [(n, j), (i, 0)]),
                LocalModelForm::Shifted => ([(n, j), (i, d - 1)], [(i, j - 1), (n, 0)]),
            };
            equations.push(Equation { family: 2, i, j, k: 0, lhs, rhs, varpi: 1, flagged: is_flagged(2, i, j, 0) });
        }
    }
    Ok(EquationSet { d, form, equations })
}

/// d (C(d-1, 2) + (d - 1)).
pub fn expected_count(d: usize) -> usize {
    d * ((d - 1) * d.saturating_sub(2) / 2 + (d - 1))
}

impl EquationSet {
    pub fn flagged(&self) -> Vec<&Equation> {
        self.equations.iter().filter(|e| e.flagged).collect()
    }

    /// Coordinates relabelled so that the chart reads T_j^{(i)} = x_{i-1} ... x_j: the coordinate
    /// a of the shifted form on copy i becomes j = i - a mod d. The main form is returned as is.
    pub fn in_chart_labels(&self) -> EquationSet {
        let d = self.d;
        let re = |v: TVar| match self.form {
            LocalModelForm::Main => v,
            LocalModelForm::Shifted => (v.0, (v.0 + d - v.1) % d),
        };
        let equations = self
            .equations
            .iter()
            .map(|e| Equation { lhs: [re(e.lhs[0]), re(e.lhs[1])], rhs: [re(e.rhs[0]), re(e.rhs[1])], ..e.clone() })
            .collect();
        EquationSet { d, form: self.form, equations }
    }

    /// Equations (in chart labels) that fail to vanish after substituting
    /// T_j^{(i)} = x_{i-1} x_{i-2} ... x_j (cyclic, (i - j) mod d factors) and p = x_0 ... x_{d-1}.
    pub fn chart_failures(&self) -> Vec<Equation> {
        let d = self.d;
        let lab = self.in_chart_labels();
        let mono = |v: TVar| -> Vec<u32> {
            let (i, j) = v;
            let len = (i + d - j) % d;
            let mut e = vec![0u32; d];
            for s in 1..=len {
                e[(i + d * s - s) % d] += 1;
            }
            e
        };
        let side = |a: TVar, b: TVar, w: u32| -> Vec<u32> {
            let (x, y) = (mono(a), mono(b));
            (0..d).map(|t| x[t] + y[t] + w).collect()
        };
        lab.equations
            .into_iter()
            .filter(|e| side(e.lhs[0], e.lhs[1], 0) != side(e.rhs[0], e.rhs[1], e.varpi))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficiencyReport {
    pub d: usize,
    pub q: u64,
    pub varpi: u64,
    pub points: u64,
    /// Points where all equations vanish.
    pub on_model: u64,
    /// Points where the flagged subset and the full set disagree.
    pub mismatches: u64,
}

/// Compare the zero sets of the flagged subset and of all equations on the F_q-points of the
/// affine chart {T_0^{(i)} = 1 for all i}, with p specialized to `varpi` in F_q.
pub fn flagged_sufficiency(set: &EquationSet, q: u64, varpi: u64) -> Result<SufficiencyReport> {
    if !crate::arith::fq::is_prime(q) {
        return Err(Error::InvalidParameters("sufficiency check runs over prime fields".into()));
    }
    let d = set.d;
    let free = d * (d - 1);
    let points = q.checked_pow(free as u32).filter(|&n| n <= 10_000_000).ok_or_else(|| {
        Error::EnumerationTooLarge(format!("{q}^{free} chart points"))
    })?;
    let w = varpi % q;
    let mut t = vec![vec![0u64; d]; d];
    let holds = |e: &Equation, t: &[Vec<u64>]| {
        let l = t[e.lhs[0].0][e.lhs[0].1] * t[e.lhs[1].0][e.lhs[1].1] % q;
        let r = t[e.rhs[0].0][e.rhs[0].1] * t[e.rhs[1].0][e.rhs[1].1] % q * if e.varpi > 0 { w } else { 1 } % q;
        l == r
    };
    let mut on_model = 0;
    let mut mismatches = 0;
    for idx in 0..points {
        let mut r = idx;
        for row in t.iter_mut() {
            row[0] = 1;
            for c in row.iter_mut().skip(1) {
                *c = r % q;
                r /= q;
            }
        }
        let all = set.equations.iter().all(|e| holds(e, &t));
        let sub = set.equations.iter().filter(|e| e.flagged).all(|e| holds(e, &t));
        on_model += all as u64;
        mismatches += (all != sub) as u64;
    }
    Ok(SufficiencyReport { d, q, varpi: w, points, on_model, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for d in 2..=6 {
            for form in [LocalModelForm::Main, LocalModelForm::Shifted] {
                let s = local_model_equations(d, form).unwrap();
                assert_eq!(s.equations.len(), expected_count(d));
                assert_eq!(s.flagged().len(), (d - 1) * (d - 1));
            }
        }
        let s = local_model_equations(2, LocalModelForm::Main).unwrap();
        assert!(s.equations.iter().all(|e| e.family == 2 && e.j == 1));
    }

    #[test]
    fn shifted_form_vanishes_on_chart() {
        for d in 2..=5 {
            assert!(local_model_equations(d, LocalModelForm::Shifted).unwrap().chart_failures().is_empty());
        }
    }

    #[test]
    fn main_form_does_not() {
        let s = local_model_equations(2, LocalModelForm::Main).unwrap();
        assert!(!s.chart_failures().is_empty());
    }

    #[test]
    fn flagged_subset_small_cases() {
        for d in 2..=3 {
            let s = local_model_equations(d, LocalModelForm::Shifted).unwrap();
            for q in [2, 3] {
                for w in 0..q {
                    assert_eq!(flagged_sufficiency(&s, q, w).unwrap().mismatches, 0, "d={d} q={q} p={w}");
                }
            }
        }
    }
}
