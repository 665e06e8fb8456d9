//! Polyhedral cones `{v : ⟨a_i, v⟩ ≤ 0}` and their generators.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::linalg::{rank_of, Matrix};
use super::rational::{Rational, VecQ};

/// A cone in H-representation: `v` is a member iff `⟨a, v⟩ ≤ 0` for every
/// stored normal `a`. Equalities are expressed by a `±a` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeH {
    ambient: usize,
    constraints: Vec<VecQ>,
}

/// V-representation of a cone: `cone(rays) + span(lineality)`.
///
/// Rays are primitive integral, orthogonal to the lineality space and sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<VecQ>,
    pub lineality: Vec<VecQ>,
}

impl ConeGenerators {
    pub fn is_empty(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// All generators, lineality directions included with both signs.
    pub fn all_directions(&self) -> Vec<VecQ> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(-l);
        }
        out
    }
}

impl ConeH {
    /// Normals are reduced to primitive integral form; zero normals and
    /// repeats are dropped, otherwise the given order is kept.
    pub fn new(ambient: usize, constraints: impl IntoIterator<Item = VecQ>) -> Self {
        let mut seen = BTreeSet::new();
        let constraints = constraints
            .into_iter()
            .filter_map(|a| {
                assert_eq!(a.dim(), ambient, "cone constraint of wrong dimension");
                a.primitive()
            })
            .filter(|a| seen.insert(a.clone()))
            .collect();
        ConeH {
            ambient,
            constraints,
        }
    }

    pub fn whole_space(ambient: usize) -> Self {
        ConeH {
            ambient,
            constraints: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn constraints(&self) -> &[VecQ] {
        &self.constraints
    }

    /// Same cone with the constraints listed in the order given by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> ConeH {
        assert_eq!(perm.len(), self.constraints.len());
        ConeH {
            ambient: self.ambient,
            constraints: perm.iter().map(|&i| self.constraints[i].clone()).collect(),
        }
    }

    /// Intersection with another cone in the same space.
    pub fn intersect(&self, other: &ConeH) -> ConeH {
        ConeH::new(
            self.ambient,
            self.constraints.iter().chain(&other.constraints).cloned(),
        )
    }

    pub fn contains(&self, v: &VecQ) -> bool {
        self.constraints.iter().all(|a| !a.dot(v).is_positive())
    }

    pub fn generators(&self) -> ConeGenerators {
        extreme_rays(self)
    }

    pub fn is_zero_cone(&self) -> bool {
        self.generators().is_empty()
    }

    pub fn dim(&self) -> usize {
        let g = self.generators();
        let all: Vec<VecQ> = g.rays.iter().chain(&g.lineality).cloned().collect();
        rank_of(&all, self.ambient)
    }

    /// For each constraint, whether it holds with equality on the whole cone.
    pub fn implicit_equalities(&self) -> Vec<bool> {
        let g = self.generators();
        self.constraints
            .iter()
            .map(|a| {
                g.rays
                    .iter()
                    .chain(&g.lineality)
                    .all(|x| a.dot(x).is_zero())
            })
            .collect()
    }

    /// Relative-interior membership: implicit equalities hold with equality and
    /// every other constraint holds strictly.
    pub fn relative_interior_contains(&self, v: &VecQ) -> bool {
        self.constraints
            .iter()
            .zip(self.implicit_equalities())
            .all(|(a, eq)| {
                let s = a.dot(v);
                if eq {
                    s.is_zero()
                } else {
                    s.is_negative()
                }
            })
    }

    /// Sum of the extreme rays: a point of the relative interior (0 when the
    /// cone is a linear subspace).
    pub fn interior_point(&self) -> VecQ {
        self.generators()
            .rays
            .iter()
            .fold(VecQ::zeros(self.ambient), |acc, r| &acc + r)
    }
}

/// Extreme rays and lineality basis of a cone.
///
/// The lineality space is the kernel of the constraint matrix. Extreme rays of
/// the pointed part are found by d-subset enumeration: every choice of
/// constraints that, together with the lineality equations, cuts out a line
/// gives two candidate directions, kept when they satisfy all constraints.
pub fn extreme_rays(c: &ConeH) -> ConeGenerators {
    let d = c.ambient;
    let a = Matrix::from_rows(&c.constraints, d);
    let lineality: Vec<VecQ> = a
        .nullspace()
        .into_iter()
        .map(|v| v.primitive().expect("nullspace basis vector is nonzero"))
        .collect();
    let l = lineality.len();
    if l == d {
        return ConeGenerators {
            rays: Vec::new(),
            lineality,
        };
    }
    let need = d - 1 - l;
    let mut rays = BTreeSet::new();
    for subset in (0..c.constraints.len()).combinations(need) {
        let mut rows = lineality.clone();
        rows.extend(subset.iter().map(|&i| c.constraints[i].clone()));
        let ns = Matrix::from_rows(&rows, d).nullspace();
        if ns.len() != 1 {
            continue;
        }
        for cand in [ns[0].clone(), -&ns[0]] {
            if c.contains(&cand) {
                rays.insert(cand.primitive().unwrap());
            }
        }
    }
    ConeGenerators {
        rays: rays.into_iter().collect(),
        lineality,
    }
}

/// Whether `target` is a non-negative combination of `gens` (exact, by
/// Carathéodory: some linearly independent subset suffices).
pub fn in_conic_hull(target: &VecQ, gens: &[VecQ]) -> bool {
    if target.is_zero() {
        return true;
    }
    let d = target.dim();
    for k in 1..=gens.len().min(d) {
        for subset in (0..gens.len()).combinations(k) {
            let cols: Vec<VecQ> = subset.iter().map(|&i| gens[i].clone()).collect();
            if rank_of(&cols, d) < k {
                continue;
            }
            // Solve (G^T G) x = G^T t over the chosen columns, then verify.
            let g = Matrix::from_rows(&cols, d);
            let gram = g.mul(&g.transpose());
            let Some(x) = gram.solve(&g.mul_vec(target)) else {
                continue;
            };
            let recon = (0..k).fold(VecQ::zeros(d), |acc, i| acc.add_scaled(&x[i], &cols[i]));
            if &recon == target && x.iter().all(|c| !c.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// `⟨a, v⟩` for every constraint, handy when printing certificates.
pub fn constraint_values(c: &ConeH, v: &VecQ) -> Vec<Rational> {
    c.constraints.iter().map(|a| a.dot(v)).collect()
}
