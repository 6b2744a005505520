//! Dual complex of the special fiber over a ball: components are vertices, intersections are simplices.

use alloc::string::String;
use alloc::vec::Vec;

use crate::building::{BallGraph, Simplex};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceComplex {
    /// Component labels, one per vertex lattice.
    pub components: Vec<String>,
    /// Nonempty intersections of two or more components, with the simplex labelling each.
    pub intersections: Vec<(Vec<usize>, Simplex)>,
}

impl IncidenceComplex {
    /// Intersections of exactly k components.
    pub fn faces_of_size(&self, k: usize) -> usize {
        self.intersections.iter().filter(|(c, _)| c.len() == k).count()
    }
}

pub fn component_incidence(ball: &BallGraph) -> Result<IncidenceComplex> {
    let d = ball.vertices.first().map_or(1, |v| v.d);
    let components = ball.vertices.iter().map(|v| v.label()).collect();
    let mut intersections = Vec::new();
    for c in ball.cliques(d) {
        if c.len() < 2 {
            continue;
        }
        // the homothety representatives of a clique can be rescaled into a chain
        let chain: Vec<_> = c.iter().map(|&i| ball.vertices[i].clone()).collect();
        intersections.push((c, Simplex::from_classes(&chain)?));
    }
    Ok(IncidenceComplex { components, intersections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::ball;
    use crate::lattice::LatticeBasis;

    #[test]
    fn tree_star() {
        let b = ball(&LatticeBasis::standard(3, 2), 1).unwrap();
        let inc = component_incidence(&b).unwrap();
        assert_eq!(inc.components.len(), 5);
        assert_eq!(inc.faces_of_size(2), 4);
        assert!(inc.intersections.iter().all(|(c, _)| c.contains(&0)));
        let b0 = ball(&LatticeBasis::standard(3, 2), 0).unwrap();
        assert!(component_incidence(&b0).unwrap().intersections.is_empty());
    }

    #[test]
    fn d3_triangles() {
        let b = ball(&LatticeBasis::standard(2, 3), 1).unwrap();
        let inc = component_incidence(&b).unwrap();
        assert_eq!(inc.faces_of_size(3), 21);
        assert_eq!(inc.faces_of_size(2), b.edges.len());
    }
}
