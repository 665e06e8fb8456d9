//! Limits of one-parameter subgroups acting on a projectivized torus
//! representation.
//!
//! A point `[w]` is recorded by the torus weights `u_i` of its coordinates and
//! the set `I` of indices where it is nonzero. Under a cocharacter `v`, the
//! limit `t → 0` keeps exactly the coordinates minimizing `⟨u_i, v⟩` over `I`.
//! Faces are identified by the sorted weight indices lying on them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactgeom::cone::ConeH;
use crate::exactgeom::polytope::{faces_of_points, VPolytope};
use crate::exactgeom::rational::{Rational, VecQ};

/// Sorted weight indices of a face.
pub type Face = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedPoint {
    weights: Vec<VecQ>,
    support: BTreeSet<usize>,
}

impl WeightedPoint {
    pub fn new(weights: Vec<VecQ>, support: impl IntoIterator<Item = usize>) -> Result<Self> {
        let Some(first) = weights.first() else {
            return Err(Error::InvalidInput("no weights".into()));
        };
        let d = first.dim();
        if let Some(w) = weights.iter().find(|w| w.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: w.dim(),
            });
        }
        let support: BTreeSet<usize> = support.into_iter().collect();
        if support.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        if let Some(&i) = support.iter().find(|&&i| i >= weights.len()) {
            return Err(Error::InvalidInput(format!(
                "support index {i} out of range"
            )));
        }
        Ok(WeightedPoint { weights, support })
    }

    /// All coordinates nonzero.
    pub fn generic(weights: Vec<VecQ>) -> Result<Self> {
        let n = weights.len();
        Self::new(weights, 0..n)
    }

    pub fn weights(&self) -> &[VecQ] {
        &self.weights
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn dim(&self) -> usize {
        self.weights[0].dim()
    }

    fn with_support(&self, support: BTreeSet<usize>) -> Self {
        WeightedPoint {
            weights: self.weights.clone(),
            support,
        }
    }

    fn check_direction(&self, v: &VecQ) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        if v.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(())
    }

    fn pairings(&self, v: &VecQ) -> Vec<(usize, Rational)> {
        self.support
            .iter()
            .map(|&i| (i, self.weights[i].dot(v)))
            .collect()
    }
}

/// `conv{u_i : i ∈ I}` with its face lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPolytope {
    support: Face,
    faces: BTreeSet<Face>,
    hull: VPolytope,
    weights: Vec<VecQ>,
}

impl WeightPolytope {
    pub fn of(w: &WeightedPoint) -> Result<Self> {
        let support: Face = w.support.iter().copied().collect();
        let pts: Vec<VecQ> = support.iter().map(|&i| w.weights[i].clone()).collect();
        let faces = faces_of_points(&pts)
            .into_iter()
            .map(|f| f.into_iter().map(|j| support[j]).collect())
            .collect();
        Ok(WeightPolytope {
            hull: VPolytope::from_points(pts)?,
            support,
            faces,
            weights: w.weights.clone(),
        })
    }

    pub fn hull(&self) -> &VPolytope {
        &self.hull
    }

    /// Every nonempty face, the whole polytope included.
    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn full_face(&self) -> &Face {
        &self.support
    }

    pub fn is_face(&self, f: &[usize]) -> bool {
        self.faces.contains(f)
    }

    /// The face whose normal cone has `v` in its relative interior: the
    /// minimizers of `⟨·, v⟩`.
    pub fn face_for_direction(&self, v: &VecQ) -> Face {
        let vals: Vec<Rational> = self
            .support
            .iter()
            .map(|&i| self.weights[i].dot(v))
            .collect();
        let min = vals.iter().min().expect("support is nonempty");
        self.support
            .iter()
            .zip(&vals)
            .filter(|(_, x)| *x == min)
            .map(|(&i, _)| i)
            .collect()
    }
}

/// Support of the limit: the indices of `I` minimizing `⟨u_i, v⟩`.
pub fn limit_point(w: &WeightedPoint, v: &VecQ) -> Result<WeightedPoint> {
    w.check_direction(v)?;
    let vals = w.pairings(v);
    let min = vals
        .iter()
        .map(|(_, x)| x)
        .min()
        .expect("support is nonempty");
    let support = vals
        .iter()
        .filter(|(_, x)| x == min)
        .map(|(i, _)| *i)
        .collect();
    Ok(w.with_support(support))
}

/// `v` fixes `[w]` iff `⟨u_i, v⟩` is constant on the support.
pub fn is_fixed(w: &WeightedPoint, v: &VecQ) -> Result<bool> {
    w.check_direction(v)?;
    let vals = w.pairings(v);
    Ok(vals.windows(2).all(|p| p[0].1 == p[1].1))
}

/// `σ_F = {v : ⟨u, v⟩ ≤ ⟨u', v⟩ for u ∈ F, u' ∈ Q}`.
pub fn normal_cone_of_face(q: &WeightPolytope, f: &[usize]) -> Result<ConeH> {
    if !q.is_face(f) {
        return Err(Error::NotAFace(format!("{f:?}")));
    }
    let d = q.hull.ambient_dim();
    let normals = f.iter().flat_map(|&i| {
        q.support
            .iter()
            .map(move |&j| &q.weights[i] - &q.weights[j])
    });
    Ok(ConeH::new(d, normals))
}

/// `w^F`: the coordinates of `w` whose weights lie on `F`.
pub fn face_limit(w: &WeightedPoint, f: &[usize]) -> Result<WeightedPoint> {
    let q = WeightPolytope::of(w)?;
    if !q.is_face(f) {
        return Err(Error::NotAFace(format!("{f:?}")));
    }
    Ok(w.with_support(f.iter().copied().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> VecQ {
        VecQ::from_ints(c)
    }

    fn triangle() -> WeightedPoint {
        WeightedPoint::generic(vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap()
    }

    fn support(w: &WeightedPoint) -> Vec<usize> {
        w.support().iter().copied().collect()
    }

    #[test]
    fn limits_on_triangle() {
        let w = triangle();
        assert_eq!(support(&limit_point(&w, &v(&[1, 2])).unwrap()), vec![0]);
        assert_eq!(support(&limit_point(&w, &v(&[-1, 0])).unwrap()), vec![1]);
        assert_eq!(support(&limit_point(&w, &v(&[1, 1])).unwrap()), vec![0]);
        assert_eq!(support(&limit_point(&w, &v(&[0, 1])).unwrap()), vec![0, 1]);
        assert_eq!(limit_point(&w, &VecQ::zeros(2)), Err(Error::ZeroDirection));
    }

    #[test]
    fn fixed_points() {
        let w = WeightedPoint::generic(vec![v(&[0, 0]), v(&[1, 0])]).unwrap();
        assert!(is_fixed(&w, &v(&[0, 1])).unwrap());
        assert!(!is_fixed(&w, &v(&[1, 0])).unwrap());
        let single = WeightedPoint::new(vec![v(&[0, 0]), v(&[1, 0])], [1]).unwrap();
        assert!(is_fixed(&single, &v(&[3, 5])).unwrap());
    }

    #[test]
    fn normal_cones_of_triangle() {
        let q = WeightPolytope::of(&triangle()).unwrap();
        assert_eq!(q.faces().len(), 7);
        let edge = normal_cone_of_face(&q, &[0, 1]).unwrap();
        assert!(edge.relative_interior_contains(&v(&[0, 3])));
        assert_eq!(edge.dim(), 1);
        let vertex = normal_cone_of_face(&q, &[0]).unwrap();
        assert_eq!(vertex.generators().rays, vec![v(&[0, 1]), v(&[1, 0])]);
        assert!(normal_cone_of_face(&q, &[0, 1, 2]).unwrap().is_zero_cone());
        assert!(normal_cone_of_face(&q, &[1]).is_ok());
        assert!(matches!(
            normal_cone_of_face(&q, &[5]),
            Err(Error::NotAFace(_))
        ));
    }

    #[test]
    fn face_limits_of_triangle() {
        let w = triangle();
        assert_eq!(
            face_limit(&w, &[0]).unwrap(),
            limit_point(&w, &v(&[1, 2])).unwrap()
        );
        assert_eq!(
            face_limit(&w, &[0, 1]).unwrap(),
            limit_point(&w, &v(&[0, 1])).unwrap()
        );
        assert_eq!(face_limit(&w, &[0, 1, 2]).unwrap(), w);
    }

    #[test]
    fn tied_weights_share_faces() {
        let w =
            WeightedPoint::generic(vec![v(&[0, 0]), v(&[1, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap();
        let q = WeightPolytope::of(&w).unwrap();
        assert!(q.is_face(&[1, 2]));
        assert!(!q.is_face(&[1]));
        assert_eq!(support(&limit_point(&w, &v(&[-1, 0])).unwrap()), vec![1, 2]);
    }

    #[test]
    fn segment_in_the_plane() {
        // Q is lower-dimensional; its full face has a line as normal cone
        let w = WeightedPoint::generic(vec![v(&[0, 0]), v(&[2, 1])]).unwrap();
        let q = WeightPolytope::of(&w).unwrap();
        let c = normal_cone_of_face(&q, &[0, 1]).unwrap();
        assert!(c.relative_interior_contains(&v(&[1, -2])));
        assert!(is_fixed(&w, &v(&[-1, 2])).unwrap());
    }

    proptest! {
        #[test]
        fn each_direction_lies_in_exactly_one_relative_interior(
            pts in proptest::collection::vec((-3i64..=3, -3i64..=3), 2..7),
            d in (-5i64..=5, -5i64..=5),
        ) {
            prop_assume!(d != (0, 0));
            let w = WeightedPoint::generic(pts.iter().map(|&(a, b)| v(&[a, b])).collect()).unwrap();
            let q = WeightPolytope::of(&w).unwrap();
            let dir = v(&[d.0, d.1]);
            let hits: Vec<&Face> = q
                .faces()
                .iter()
                .filter(|f| normal_cone_of_face(&q, f).unwrap().relative_interior_contains(&dir))
                .collect();
            prop_assert_eq!(hits.len(), 1);
            prop_assert_eq!(hits[0], &q.face_for_direction(&dir));
            let lim = limit_point(&w, &dir).unwrap();
            prop_assert_eq!(&limit_point(&lim, &dir).unwrap(), &lim);
            prop_assert_eq!(lim, face_limit(&w, hits[0]).unwrap());
        }
    }
}
