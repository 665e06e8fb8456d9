//! Exact strictly convex quadratic programs over polyhedral cones.
//!
//! `min vᵀΣv  s.t.  ⟨c, v⟩ = 1,  A v ≤ 0`
//!
//! Solved by enumerating candidate active sets. For an active set `S` with
//! linearly independent rows the KKT conditions are the square linear system
//!
//! ```text
//! Σ v + A_Sᵀ y − α c = 0
//!          ⟨c, v⟩    = 1
//!            A_S v   = 0
//! ```
//!
//! and a solution is optimal iff `y ≥ 0` and `A v ≤ 0`. With `Σ` positive
//! definite the optimum is unique, so every KKT point found must coincide.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactgeom::cone::ConeH;
use crate::exactgeom::linalg::{rank_of, Matrix};
use crate::exactgeom::rational::{Rational, VecQ};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpSolution {
    pub point: VecQ,
    /// `vᵀΣv` at the optimum.
    pub value: Rational,
    /// Indices of the constraints in the certifying active set.
    pub active: Vec<usize>,
    /// Their multipliers, all non-negative.
    pub multipliers: Vec<Rational>,
}

pub fn minimize_quadratic_on_cone(sigma: &Matrix, c: &VecQ, cone: &ConeH) -> Result<QpSolution> {
    let d = c.dim();
    if !sigma.is_positive_definite() {
        return Err(Error::Certificate(
            "quadratic form is not positive definite".into(),
        ));
    }
    let rows = cone.constraints();
    let subsets: Vec<Vec<usize>> = (0..=rows.len().min(d))
        .flat_map(|k| (0..rows.len()).combinations(k))
        .collect();
    let found: Vec<QpSolution> = subsets
        .par_iter()
        .filter_map(|s| kkt_point(sigma, c, rows, s))
        .collect();
    let Some(first) = found.first() else {
        return Err(Error::InfeasibleSlice);
    };
    if let Some(other) = found.iter().find(|s| s.point != first.point) {
        return Err(Error::Certificate(format!(
            "distinct KKT points {} and {}",
            first.point, other.point
        )));
    }
    verify(sigma, c, rows, first)?;
    Ok(first.clone())
}

fn kkt_point(sigma: &Matrix, c: &VecQ, rows: &[VecQ], active: &[usize]) -> Option<QpSolution> {
    let d = c.dim();
    let k = active.len();
    let a_s: Vec<VecQ> = active.iter().map(|&i| rows[i].clone()).collect();
    if rank_of(&a_s, d) < k {
        return None;
    }
    // unknowns: v (d), y (k), α (1)
    let n = d + k + 1;
    let mut m = Matrix::zeros(n, n);
    let mut rhs = vec![Rational::zero(); n];
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = sigma[(i, j)].clone();
        }
        for (t, a) in a_s.iter().enumerate() {
            m[(i, d + t)] = a[i].clone();
            m[(d + t, i)] = a[i].clone();
        }
        m[(i, d + k)] = -c[i].clone();
        m[(d + k, i)] = c[i].clone();
    }
    rhs[d + k] = Rational::one();
    let x = m.solve(&VecQ::new(rhs))?;
    let point = VecQ::new(x.coords()[..d].to_vec());
    let multipliers = x.coords()[d..d + k].to_vec();
    if multipliers.iter().any(|y| y.is_negative()) {
        return None;
    }
    if rows.iter().any(|a| a.dot(&point).is_positive()) {
        return None;
    }
    Some(QpSolution {
        value: sigma.quad_form(&point),
        point,
        active: active.to_vec(),
        multipliers,
    })
}

/// Re-checks stationarity, feasibility and complementarity from scratch.
fn verify(sigma: &Matrix, c: &VecQ, rows: &[VecQ], s: &QpSolution) -> Result<()> {
    let v = &s.point;
    if c.dot(v) != Rational::one() {
        return Err(Error::Certificate("slice equation violated".into()));
    }
    if rows.iter().any(|a| a.dot(v).is_positive()) {
        return Err(Error::Certificate("cone constraint violated".into()));
    }
    if s.active.iter().any(|&i| !rows[i].dot(v).is_zero()) {
        return Err(Error::Certificate("active constraint not tight".into()));
    }
    // Σv + A_Sᵀy must be a non-negative multiple of c
    let mut grad = sigma.mul_vec(v);
    for (&i, y) in s.active.iter().zip(&s.multipliers) {
        grad = grad.add_scaled(y, &rows[i]);
    }
    let alpha = grad.dot(v);
    if grad != c.scale(&alpha) {
        return Err(Error::Certificate(
            "stationarity residual is nonzero".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::qr;

    fn v(c: &[i64]) -> VecQ {
        VecQ::from_ints(c)
    }

    #[test]
    fn unconstrained_slice_minimum() {
        // min x² + y² on x + y = 1
        let s =
            minimize_quadratic_on_cone(&Matrix::identity(2), &v(&[1, 1]), &ConeH::whole_space(2))
                .unwrap();
        assert_eq!(s.point, VecQ::new(vec![qr(1, 2), qr(1, 2)]));
        assert_eq!(s.value, qr(1, 2));
    }

    #[test]
    fn single_ray_cone() {
        // the ray through (1, 2)
        let cone = ConeH::new(2, [v(&[2, -1]), v(&[-2, 1]), v(&[-1, 0])]);
        let s = minimize_quadratic_on_cone(&Matrix::identity(2), &v(&[1, 1]), &cone).unwrap();
        assert_eq!(s.point, VecQ::new(vec![qr(1, 3), qr(2, 3)]));
    }

    #[test]
    fn active_bound() {
        // min x² + y² on x + y = 1 with y ≤ x/3; the optimum sits on the bound
        let cone = ConeH::new(2, [v(&[-1, 3])]);
        let s = minimize_quadratic_on_cone(&Matrix::identity(2), &v(&[1, 1]), &cone).unwrap();
        assert_eq!(s.point, VecQ::new(vec![qr(3, 4), qr(1, 4)]));
        assert_eq!(s.active, vec![0]);
        assert!(s.multipliers[0].is_positive());
    }

    #[test]
    fn unreachable_slice() {
        let cone = ConeH::new(2, [v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(
            minimize_quadratic_on_cone(&Matrix::identity(2), &v(&[1, 1]), &cone),
            Err(Error::InfeasibleSlice)
        );
    }

    #[test]
    fn indefinite_form_rejected() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 1]]);
        assert!(matches!(
            minimize_quadratic_on_cone(&m, &v(&[1, 0]), &ConeH::whole_space(2)),
            Err(Error::Certificate(_))
        ));
    }
}
