//! Exact continuous moments of a polytope and the lattice-point series they
//! are limits of.

mod lattice;

pub use lattice::{extrapolate, lattice_series, ExtrapolationResult, LatticeSeries, SeriesRow};

use num_traits::Zero;

use crate::error::Result;
use crate::exactgeom::linalg::Matrix;
use crate::exactgeom::polytope::VPolytope;
use crate::exactgeom::rational::{q, Rational, VecQ};
use crate::exactgeom::triangulate::{simplex_volume, triangulate, Simplex};

/// Volume, barycenter `b_P` and covariance `Σ` of a full-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentData {
    pub volume: Rational,
    pub barycenter: VecQ,
    pub covariance: Matrix,
}

impl MomentData {
    /// `Σ + b bᵀ`, the uniform second moment `(1/vol) ∫ u uᵀ du`.
    pub fn raw_second_moment(&self) -> Matrix {
        let d = self.barycenter.dim();
        let mut m = self.covariance.clone();
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] += &self.barycenter[i] * &self.barycenter[j];
            }
        }
        m
    }
}

/// Moments of the union of the given simplices (disjoint interiors assumed).
///
/// Per simplex with vertices `v_0..v_d`:
/// `∫ u du = vol · (Σ v_i)/(d+1)` and
/// `∫ u uᵀ du = vol/((d+1)(d+2)) · (Σ v_i v_iᵀ + (Σ v_i)(Σ v_i)ᵀ)`.
/// Raw moments are aggregated first and recentered once at the end.
pub fn moments_of_simplices(dim: usize, simplices: &[Simplex]) -> MomentData {
    let mut volume = Rational::zero();
    let mut first = VecQ::zeros(dim);
    let mut second = Matrix::zeros(dim, dim);
    let d1 = q(dim as i64 + 1);
    let d2 = q(dim as i64 + 2);
    for s in simplices {
        let vol = simplex_volume(s);
        let sum = s.iter().fold(VecQ::zeros(dim), |acc, v| &acc + v);
        first = first.add_scaled(&(&vol / &d1), &sum);
        let w = &vol / (&d1 * &d2);
        for i in 0..dim {
            for j in 0..dim {
                let outer: Rational =
                    s.iter().map(|v| &v[i] * &v[j]).sum::<Rational>() + &sum[i] * &sum[j];
                second[(i, j)] += &w * outer;
            }
        }
        volume += vol;
    }
    let barycenter = first.scale(&volume.recip());
    let mut covariance = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            covariance[(i, j)] = &second[(i, j)] / &volume - &barycenter[i] * &barycenter[j];
        }
    }
    MomentData {
        volume,
        barycenter,
        covariance,
    }
}

pub fn moment_data(p: &VPolytope) -> Result<MomentData> {
    let t = triangulate(p)?;
    Ok(moments_of_simplices(p.ambient_dim(), &t))
}

pub fn volume(p: &VPolytope) -> Result<Rational> {
    Ok(triangulate(p)?.iter().map(|s| simplex_volume(s)).sum())
}

pub fn barycenter(p: &VPolytope) -> Result<VecQ> {
    Ok(moment_data(p)?.barycenter)
}

pub fn covariance(p: &VPolytope) -> Result<Matrix> {
    Ok(moment_data(p)?.covariance)
}

/// `min_{u ∈ P} ⟨u, v⟩`.
pub fn support_min(p: &VPolytope, v: &VecQ) -> Result<Rational> {
    p.support_min(v)
}
