//! Pulling triangulations of polytopes.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::linalg::Matrix;
use super::polytope::{affine_hull_projection, facets_of_points, project, VPolytope};
use super::rational::{Rational, VecQ};
use crate::error::{Error, Result};

/// `d + 1` affinely independent points of `ℚ^d`.
pub type Simplex = Vec<VecQ>;

/// Fan triangulation from the lexicographically smallest vertex.
pub fn triangulate(p: &VPolytope) -> Result<Vec<Simplex>> {
    triangulate_from(p, 0)
}

/// Fan triangulation from vertex `apex`: the apex is coned over a
/// triangulation of every facet not containing it, recursively. Lower faces
/// are coned from their own lexicographically smallest vertex.
pub fn triangulate_from(p: &VPolytope, apex: usize) -> Result<Vec<Simplex>> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    assert!(apex < p.vertices().len(), "apex index out of range");
    let verts = p.vertices();
    let all: Vec<usize> = (0..verts.len()).collect();
    Ok(pull(verts, &all, apex)
        .into_iter()
        .map(|s| s.into_iter().map(|i| verts[i].clone()).collect())
        .collect())
}

fn pull(points: &[VecQ], idx: &[usize], apex: usize) -> Vec<Vec<usize>> {
    let sub: Vec<VecQ> = idx.iter().map(|&i| points[i].clone()).collect();
    let (k, coords) = affine_hull_projection(&sub);
    if idx.len() == k + 1 {
        return vec![idx.to_vec()];
    }
    let mut out = Vec::new();
    for (_, members) in facets_of_points(&project(&sub, &coords)) {
        let face: Vec<usize> = members.iter().map(|&m| idx[m]).collect();
        if face.contains(&apex) {
            continue;
        }
        let face_apex = *face
            .iter()
            .min_by(|&&a, &&b| points[a].cmp(&points[b]))
            .unwrap();
        for mut s in pull(points, &face, face_apex) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}

/// Signed volume factor `det(v_1 − v_0, …, v_d − v_0)`.
pub fn simplex_det(s: &[VecQ]) -> Rational {
    let d = s[0].dim();
    assert_eq!(s.len(), d + 1, "simplex needs d + 1 vertices");
    let rows: Vec<VecQ> = s[1..].iter().map(|v| v - &s[0]).collect();
    Matrix::from_rows(&rows, d).det()
}

/// Lebesgue volume `|det| / d!`.
pub fn simplex_volume(s: &[VecQ]) -> Rational {
    let d = s[0].dim();
    let fact: BigInt = (1..=d).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    simplex_det(s).abs() / Rational::from_integer(fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{q, qr};

    fn poly(v: &[&[i64]]) -> VPolytope {
        VPolytope::from_points(v.iter().map(|p| VecQ::from_ints(p)).collect()).unwrap()
    }

    #[test]
    fn triangle_is_one_simplex() {
        let t = triangulate(&poly(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(simplex_volume(&t[0]), qr(1, 2));
    }

    #[test]
    fn square_is_two_halves() {
        let t = triangulate(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| simplex_volume(s) == qr(1, 2)));
    }

    #[test]
    fn hexagon_volume_matches_shoelace() {
        let hex = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]];
        let p = poly(&hex.iter().map(|c| c.as_slice()).collect::<Vec<_>>());
        let t = triangulate(&p).unwrap();
        assert_eq!(t.len(), 4);
        let total: Rational = t.iter().map(|s| simplex_volume(s)).sum();
        // shoelace over the cyclic vertex order
        let mut twice = 0i64;
        for i in 0..hex.len() {
            let (a, b) = (hex[i], hex[(i + 1) % hex.len()]);
            twice += a[0] * b[1] - a[1] * b[0];
        }
        assert_eq!(total, qr(twice.abs(), 2));
        assert_eq!(total, q(3));
    }

    #[test]
    fn cube_triangulations_agree() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(VecQ::from_ints(&[x, y, z]));
                }
            }
        }
        let p = VPolytope::from_points(pts).unwrap();
        for apex in 0..p.vertices().len() {
            let t = triangulate_from(&p, apex).unwrap();
            let total: Rational = t.iter().map(|s| simplex_volume(s)).sum();
            assert_eq!(total, q(1));
            assert!(t.iter().all(|s| simplex_volume(s) > q(0)));
        }
    }
}
