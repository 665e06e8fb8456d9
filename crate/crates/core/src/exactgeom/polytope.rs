//! Polytopes in V- and H-representation, and the passage between them.
//!
//! All enumeration is by exhaustive `d`-subsets (facet intersections for
//! vertices, vertex hyperplanes for facets). This is quadratic-to-exponential
//! in the input size but exact, and the polytopes here have at most a few
//! dozen vertices in dimension at most 8.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::cone::ConeH;
use super::linalg::{rank_of, Matrix};
use super::rational::{Rational, VecQ};
use crate::error::{Error, Result};

/// Largest ambient dimension accepted by the subset-enumeration routines.
pub const MAX_DIM: usize = 8;

/// The half-space `⟨u, normal⟩ ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub normal: VecQ,
    pub offset: Rational,
}

impl HalfSpace {
    /// Rescales so that the normal is primitive integral. Panics on a zero
    /// normal.
    pub fn new(normal: VecQ, offset: Rational) -> Self {
        let prim = normal.primitive().expect("half-space with zero normal");
        // prim = c * normal with c > 0
        let i = (0..normal.dim()).find(|&i| !normal[i].is_zero()).unwrap();
        let c = &prim[i] / &normal[i];
        HalfSpace {
            normal: prim,
            offset: offset * c,
        }
    }

    /// `⟨u, normal⟩ − offset`, non-negative exactly on the half-space.
    pub fn slack(&self, u: &VecQ) -> Rational {
        u.dot(&self.normal) - &self.offset
    }

    pub fn contains(&self, u: &VecQ) -> bool {
        !self.slack(u).is_negative()
    }
}

/// A polytope as an intersection of half-spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    ambient: usize,
    constraints: Vec<HalfSpace>,
}

impl HPolytope {
    pub fn new(ambient: usize, constraints: Vec<HalfSpace>) -> Result<Self> {
        for c in &constraints {
            if c.normal.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: c.normal.dim(),
                });
            }
        }
        Ok(HPolytope {
            ambient,
            constraints,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn contains(&self, u: &VecQ) -> bool {
        self.constraints.iter().all(|c| c.contains(u))
    }

    /// The recession cone `{x : ⟨x, normal_i⟩ ≥ 0}` is trivial.
    pub fn is_bounded(&self) -> bool {
        let rec = ConeH::new(self.ambient, self.constraints.iter().map(|c| -&c.normal));
        rec.is_zero_cone()
    }
}

/// A polytope as the convex hull of its vertices.
///
/// Vertices are irredundant and sorted lexicographically, so `vertices()[0]`
/// is the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    vertices: Vec<VecQ>,
    dim: usize,
}

impl VPolytope {
    /// Convex hull of a finite point set; interior and repeated points are
    /// discarded.
    pub fn from_points(points: Vec<VecQ>) -> Result<Self> {
        let points: Vec<VecQ> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let Some(first) = points.first() else {
            return Err(Error::Infeasible);
        };
        let ambient = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: p.dim(),
            });
        }
        if ambient > MAX_DIM {
            return Err(Error::DimensionTooLarge(ambient));
        }
        let (dim, coords) = affine_hull_projection(&points);
        if dim == 0 {
            return Ok(VPolytope {
                vertices: points,
                dim: 0,
            });
        }
        let projected = project(&points, &coords);
        let facets = facets_of_points(&projected);
        let vertices = points
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let normals: Vec<VecQ> = facets
                    .iter()
                    .filter(|(_, members)| members.contains(i))
                    .map(|(h, _)| h.normal.clone())
                    .collect();
                rank_of(&normals, dim) == dim
            })
            .map(|(_, p)| p.clone())
            .collect();
        Ok(VPolytope { vertices, dim })
    }

    pub fn vertices(&self) -> &[VecQ] {
        &self.vertices
    }

    /// Affine dimension of the hull.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    /// `min_{u ∈ P} ⟨u, v⟩`, attained at a vertex.
    pub fn support_min(&self, v: &VecQ) -> Result<Rational> {
        self.check_direction(v)?;
        Ok(self
            .vertices
            .iter()
            .map(|u| u.dot(v))
            .min()
            .expect("polytope has vertices"))
    }

    /// Indices of the vertices minimizing `⟨·, v⟩`.
    pub fn argmin_vertices(&self, v: &VecQ) -> Vec<usize> {
        let vals: Vec<Rational> = self.vertices.iter().map(|u| u.dot(v)).collect();
        let min = vals.iter().min().unwrap();
        (0..vals.len()).filter(|&i| &vals[i] == min).collect()
    }

    /// Image under `u ↦ A u`.
    pub fn map_linear(&self, a: &Matrix) -> Result<VPolytope> {
        VPolytope::from_points(self.vertices.iter().map(|u| a.mul_vec(u)).collect())
    }

    pub fn dilate(&self, k: &Rational) -> Result<VPolytope> {
        VPolytope::from_points(self.vertices.iter().map(|u| u.scale(k)).collect())
    }

    pub fn translate(&self, t: &VecQ) -> Result<VPolytope> {
        VPolytope::from_points(self.vertices.iter().map(|u| u + t).collect())
    }

    pub(crate) fn check_direction(&self, v: &VecQ) -> Result<()> {
        if v.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.dim(),
            });
        }
        if v.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(())
    }
}

/// Vertex enumeration: intersect every `d`-subset of constraint hyperplanes.
pub fn vertices_from_facets(h: &HPolytope) -> Result<VPolytope> {
    let d = h.ambient_dim();
    if d > MAX_DIM {
        return Err(Error::DimensionTooLarge(d));
    }
    let cons = h.constraints();
    let mut found = BTreeSet::new();
    for subset in (0..cons.len()).combinations(d) {
        let rows: Vec<VecQ> = subset.iter().map(|&i| cons[i].normal.clone()).collect();
        let rhs = VecQ::new(subset.iter().map(|&i| cons[i].offset.clone()).collect());
        let Some(u) = Matrix::from_rows(&rows, d).solve(&rhs) else {
            continue;
        };
        if h.contains(&u) {
            found.insert(u);
        }
    }
    let bounded = h.is_bounded();
    if found.is_empty() {
        return Err(if bounded {
            Error::Infeasible
        } else {
            Error::Unbounded
        });
    }
    if !bounded {
        return Err(Error::Unbounded);
    }
    VPolytope::from_points(found.into_iter().collect())
}

/// Facet enumeration of a full-dimensional polytope. Normals are inner and
/// primitive integral; the list is irredundant and in canonical order.
pub fn facets_from_vertices(v: &VPolytope) -> Result<HPolytope> {
    if !v.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let facets = facets_of_points(v.vertices());
    HPolytope::new(
        v.ambient_dim(),
        facets.into_iter().map(|(h, _)| h).collect(),
    )
}

/// Builds `P = {u : ⟨u, ρ_i⟩ ≥ c_i − 1}` from complete fan rays and boundary
/// coefficients, in both representations. The H-representation keeps the
/// ray order.
pub fn dual_polytope(rays: &[VecQ], coeffs: &[Rational]) -> Result<(HPolytope, VPolytope)> {
    if rays.is_empty() {
        return Err(Error::DegenerateFan("no rays".into()));
    }
    if rays.len() != coeffs.len() {
        return Err(Error::InvalidInput(format!(
            "{} rays but {} coefficients",
            rays.len(),
            coeffs.len()
        )));
    }
    let d = rays[0].dim();
    if d == 0 {
        return Err(Error::DegenerateFan("zero-dimensional lattice".into()));
    }
    if d > MAX_DIM {
        return Err(Error::DimensionTooLarge(d));
    }
    for (i, r) in rays.iter().enumerate() {
        if r.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.dim(),
            });
        }
        if r.is_zero() {
            return Err(Error::DegenerateFan(format!("ray {i} is zero")));
        }
        if r.primitive().as_ref() != Some(r) {
            return Err(Error::DegenerateFan(format!(
                "ray {i} is not a primitive lattice vector"
            )));
        }
    }
    if rays.iter().duplicates().next().is_some() {
        return Err(Error::DegenerateFan("repeated ray".into()));
    }
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_negative() || *c >= Rational::one() {
            return Err(Error::InvalidInput(format!(
                "coefficient {i} must lie in [0, 1)"
            )));
        }
    }
    if rank_of(rays, d) < d {
        return Err(Error::DegenerateFan("rays do not span the lattice".into()));
    }
    let constraints: Vec<HalfSpace> = rays
        .iter()
        .zip(coeffs)
        .map(|(r, c)| HalfSpace::new(r.clone(), c - Rational::one()))
        .collect();
    let h = HPolytope::new(d, constraints)?;
    let v = vertices_from_facets(&h).map_err(|e| match e {
        Error::Infeasible => Error::NotFano("polytope is empty".into()),
        Error::Unbounded => Error::NotFano("polytope is unbounded".into()),
        other => other,
    })?;
    for (i, c) in h.constraints().iter().enumerate() {
        let tight: Vec<VecQ> = v
            .vertices()
            .iter()
            .filter(|u| c.slack(u).is_zero())
            .cloned()
            .collect();
        if tight.is_empty() || affine_hull_projection(&tight).0 + 1 != d {
            return Err(Error::NotFano(format!("ray {i} does not define a facet")));
        }
    }
    Ok((h, v))
}

/// Affine dimension `k` of a nonempty point set and `k` coordinate indices on
/// which the projection restricted to the affine hull is injective.
pub(crate) fn affine_hull_projection(points: &[VecQ]) -> (usize, Vec<usize>) {
    let d = points[0].dim();
    let diffs: Vec<VecQ> = points[1..].iter().map(|p| p - &points[0]).collect();
    let (_, pivots) = Matrix::from_rows(&diffs, d).rref();
    (pivots.len(), pivots)
}

pub(crate) fn project(points: &[VecQ], coords: &[usize]) -> Vec<VecQ> {
    points
        .iter()
        .map(|p| VecQ::new(coords.iter().map(|&c| p[c].clone()).collect()))
        .collect()
}

/// Facets of the hull of a full-dimensional point set in `ℚ^k`, with the
/// indices of the points lying on each facet.
pub(crate) fn facets_of_points(points: &[VecQ]) -> Vec<(HalfSpace, Vec<usize>)> {
    let k = points[0].dim();
    let mut facets: BTreeMap<HalfSpace, Vec<usize>> = BTreeMap::new();
    for subset in (0..points.len()).combinations(k) {
        let base = &points[subset[0]];
        let diffs: Vec<VecQ> = subset[1..].iter().map(|&i| &points[i] - base).collect();
        let ns = Matrix::from_rows(&diffs, k).nullspace();
        if ns.len() != 1 {
            continue;
        }
        let n = &ns[0];
        let off = base.dot(n);
        let (mut above, mut below) = (false, false);
        for p in points {
            let s = p.dot(n) - &off;
            above |= s.is_positive();
            below |= s.is_negative();
        }
        let h = match (above, below) {
            (true, false) => HalfSpace::new(n.clone(), off),
            (false, true) => HalfSpace::new(-n, -off),
            _ => continue,
        };
        if facets.contains_key(&h) {
            continue;
        }
        let members = (0..points.len())
            .filter(|&i| h.slack(&points[i]).is_zero())
            .collect();
        facets.insert(h, members);
    }
    facets.into_iter().collect()
}

/// All nonempty faces of the hull of `points` (any dimension, any ambient
/// space), each given as the sorted indices of the points lying on it. The
/// whole hull is included.
pub(crate) fn faces_of_points(points: &[VecQ]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let all: Vec<usize> = (0..points.len()).collect();
    collect_faces(points, all, &mut out);
    out
}

fn collect_faces(points: &[VecQ], idx: Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
    if out.contains(&idx) {
        return;
    }
    let sub: Vec<VecQ> = idx.iter().map(|&i| points[i].clone()).collect();
    let (k, coords) = affine_hull_projection(&sub);
    out.insert(idx.clone());
    if k == 0 {
        return;
    }
    for (_, members) in facets_of_points(&project(&sub, &coords)) {
        let face: Vec<usize> = members.iter().map(|&m| idx[m]).collect();
        collect_faces(points, face, out);
    }
}
