//! Normal fans of polytopes.

use num_traits::Signed;

use super::cone::ConeH;
use super::polytope::VPolytope;
use super::rational::VecQ;
use crate::error::{Error, Result};

/// A maximal cone of a normal fan, tagged with the vertex it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanCone {
    pub vertex_index: usize,
    pub vertex: VecQ,
    pub cone: ConeH,
}

/// Maximal cones of the normal fan of a full-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient: usize,
    cones: Vec<FanCone>,
}

impl Fan {
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Indices of the maximal cones containing `v`.
    pub fn containing(&self, v: &VecQ) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| self.cones[i].cone.contains(v))
            .collect()
    }

    /// Indices of the maximal cones whose interior contains `v`.
    pub fn interior_containing(&self, v: &VecQ) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| {
                self.cones[i]
                    .cone
                    .constraints()
                    .iter()
                    .all(|a| a.dot(v).is_negative())
            })
            .collect()
    }
}

/// `σ_u = {v : ⟨u, v⟩ ≤ ⟨u', v⟩ for all vertices u'}`, one cone per vertex `u`.
pub fn normal_fan(p: &VPolytope) -> Result<Fan> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let d = p.ambient_dim();
    let verts = p.vertices();
    let cones = verts
        .iter()
        .enumerate()
        .map(|(i, u)| FanCone {
            vertex_index: i,
            vertex: u.clone(),
            cone: ConeH::new(
                d,
                verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, w)| u - w),
            ),
        })
        .collect();
    Ok(Fan { ambient: d, cones })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> VPolytope {
        VPolytope::from_points(v.iter().map(|p| VecQ::from_ints(p)).collect()).unwrap()
    }

    #[test]
    fn square_fan() {
        let fan = normal_fan(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(fan.cones().len(), 4);
        let origin_cone = &fan.cones()[0];
        assert_eq!(origin_cone.vertex, VecQ::from_ints(&[0, 0]));
        let g = origin_cone.cone.generators();
        assert_eq!(
            g.rays,
            vec![VecQ::from_ints(&[0, 1]), VecQ::from_ints(&[1, 0])]
        );
    }

    #[test]
    fn triangle_fan() {
        let fan = normal_fan(&poly(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(fan.cones().len(), 3);
        assert_eq!(fan.interior_containing(&VecQ::from_ints(&[1, 1])), vec![0]);
    }

    #[test]
    fn p112_direction_lies_in_cone_of_minimizing_vertex() {
        // ⟨u,(0,-1)⟩ over (-1,-1),(-1,1),(3,-1) is 1,-1,1
        let p = poly(&[&[-1, -1], &[-1, 1], &[3, -1]]);
        let fan = normal_fan(&p).unwrap();
        let v = VecQ::from_ints(&[0, -1]);
        let hits: Vec<VecQ> = fan
            .containing(&v)
            .into_iter()
            .map(|i| fan.cones()[i].vertex.clone())
            .collect();
        assert_eq!(hits, vec![VecQ::from_ints(&[-1, 1])]);
    }

    #[test]
    fn lower_dimensional_rejected() {
        let seg = poly(&[&[0, 0], &[1, 1]]);
        assert_eq!(normal_fan(&seg), Err(Error::NotFullDimensional));
    }
}
