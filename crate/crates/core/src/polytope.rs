//! Vertices of the Morse polytope, assembled cone by cone.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::cones::{enumerate_types, ConeEntry};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Hull, Point2};
use crate::rational::{int, rational_to_json};
use crate::support_fn::{mu_coeffs, ShiftConfig, VertexVector};
use crate::tropical::SupportSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorsePolytope {
    pub support: SupportSet,
    pub shift: ShiftConfig,
    /// Distinct vertices in lexicographic order.
    pub vertices: Vec<VertexVector>,
    /// Every enumerated cone with the index of its vertex.
    pub cones: Vec<(ConeEntry, usize)>,
    /// `Σ v` over any vertex.
    pub d1: i64,
    /// `Σ a·v` over any vertex.
    pub d2: i64,
}

pub fn build_polytope(support: &SupportSet, shift: ShiftConfig, max_support: usize) -> Result<MorsePolytope> {
    let cones = enumerate_types(support, max_support)?;
    assemble(support, shift, cones)
}

/// Maps already enumerated cones to vertices and checks the hyperplane constants.
pub fn assemble(support: &SupportSet, shift: ShiftConfig, cones: Vec<ConeEntry>) -> Result<MorsePolytope> {
    let images: Vec<VertexVector> = cones
        .par_iter()
        .map(|c| mu_coeffs(support, &c.ty, shift))
        .collect();
    let mut index: BTreeMap<VertexVector, usize> = images.iter().cloned().map(|v| (v, 0)).collect();
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let vertices: Vec<VertexVector> = index.keys().cloned().collect();

    let (d1, d2) = vertices
        .first()
        .map(|v| v.hyperplane_constants(support))
        .unwrap_or((0, 0));
    for (i, v) in vertices.iter().enumerate() {
        if v.hyperplane_constants(support) != (d1, d2) {
            return Err(Error::HyperplaneViolation { index: i, d1, d2 });
        }
    }
    let cones = cones
        .into_iter()
        .zip(&images)
        .map(|(c, v)| (c, index[v]))
        .collect();
    Ok(MorsePolytope {
        support: support.clone(),
        shift,
        vertices,
        cones,
        d1,
        d2,
    })
}

impl MorsePolytope {
    pub fn to_json(&self) -> serde_json::Value {
        let cones: Vec<_> = self
            .cones
            .iter()
            .map(|(c, idx)| {
                json!({
                    "W": c.ty.w,
                    "Z": c.ty.z,
                    "M": c.ty.m,
                    "witness": c.witness.values().iter().map(rational_to_json).collect::<Vec<_>>(),
                    "vertex_index": idx,
                })
            })
            .collect();
        json!({
            "A": self.support.points(),
            "shift": [self.shift.c1, self.shift.c2],
            "d1": self.d1,
            "d2": self.d2,
            "vertices": self.vertices,
            "cones": cones,
        })
    }

    /// Default projection axes: the second and third coordinates.
    pub fn default_axes(&self) -> (usize, usize) {
        (1, 2)
    }
}

/// Convex hull of the vertices after keeping only coordinates `axes`.
pub fn project_and_hull(poly: &MorsePolytope, axes: (usize, usize)) -> Result<Hull> {
    let n = poly.support.len();
    let (i, j) = axes;
    if i == j || i >= n || j >= n {
        return Err(Error::BadAxes(i, j));
    }
    let pts: Vec<Point2> = poly
        .vertices
        .iter()
        .map(|v| Point2::new(int(v.coeffs[i]), int(v.coeffs[j])))
        .collect();
    Ok(convex_hull(&pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::DEFAULT_MAX_SUPPORT;

    fn degree_four() -> MorsePolytope {
        let a = SupportSet::new(&[1, 2, 3, 4]).unwrap();
        build_polytope(&a, ShiftConfig::unit_interval(&a), DEFAULT_MAX_SUPPORT).unwrap()
    }

    #[test]
    fn degree_four_vertices() {
        let p = degree_four();
        let got: Vec<Vec<i64>> = p.vertices.iter().map(|v| v.coeffs.clone()).collect();
        let mut expected = vec![
            vec![4, 0, 0, 6],
            vec![0, 2, 8, 0],
            vec![1, 0, 9, 0],
            vec![0, 5, 2, 3],
            vec![2, 3, 0, 5],
        ];
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!((p.d1, p.d2), (10, 28));
        let mut hit = vec![false; p.vertices.len()];
        for (_, i) in &p.cones {
            hit[*i] = true;
        }
        assert!(hit.into_iter().all(|h| h));
    }

    #[test]
    fn degree_four_projection_is_a_pentagon() {
        let p = degree_four();
        let hull = project_and_hull(&p, p.default_axes()).unwrap();
        let mut got: Vec<(i64, i64)> = hull
            .vertices
            .iter()
            .map(|q| (q.x.to_integer().try_into().unwrap(), q.y.to_integer().try_into().unwrap()))
            .collect();
        got.sort();
        assert_eq!(got, vec![(0, 0), (0, 9), (2, 8), (3, 0), (5, 2)]);
        assert_eq!(project_and_hull(&p, (1, 1)), Err(Error::BadAxes(1, 1)));
        assert_eq!(project_and_hull(&p, (0, 4)), Err(Error::BadAxes(0, 4)));
    }

    #[test]
    fn single_cone_polytope() {
        let a = SupportSet::lenient(&[1, 4]).unwrap();
        let p = build_polytope(&a, ShiftConfig::zero(), DEFAULT_MAX_SUPPORT).unwrap();
        assert_eq!(p.cones.len(), 1);
        assert_eq!(p.vertices.len(), 1);
        let hull = project_and_hull(&p, (0, 1)).unwrap();
        assert_eq!(hull.vertices.len(), 1);
    }

    #[test]
    fn shift_translates_vertices() {
        let a = SupportSet::new(&[1, 2, 3, 4]).unwrap();
        let p0 = build_polytope(&a, ShiftConfig::zero(), DEFAULT_MAX_SUPPORT).unwrap();
        let p1 = build_polytope(&a, ShiftConfig::new(3, -2), DEFAULT_MAX_SUPPORT).unwrap();
        assert_eq!(p0.vertices.len(), p1.vertices.len());
        for ((c0, i0), (c1, i1)) in p0.cones.iter().zip(&p1.cones) {
            assert_eq!(c0.ty, c1.ty);
            let (v0, v1) = (&p0.vertices[*i0].coeffs, &p1.vertices[*i1].coeffs);
            assert_eq!(v1[0] - v0[0], 3);
            assert_eq!(v1[3] - v0[3], -2);
            assert_eq!(v1[1..3], v0[1..3]);
        }
    }
}
