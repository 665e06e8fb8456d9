//! Stability invariants of a toric pair evaluated on torus cocharacters.
//!
//! For a cocharacter `v ∈ N`:
//!
//! * `Fut(v) = −⟨b, v⟩`
//! * `‖v‖ₘ = ⟨b, v⟩ − min_P ⟨·, v⟩`
//! * `‖v‖₂² = vᵀ Σ v`
//! * `μ(v) = (Fut/‖v‖ₘ, Fut/‖v‖₂)`
//!
//! where `b` and `Σ` are the barycenter and covariance of the moment
//! polytope `P`. The verdicts and minima computed from these range over the
//! torus only.

mod value;

pub use value::{SignedSquare, StabilityValue, TruncatedInvariant};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::fan::{normal_fan, Fan};
use crate::exactgeom::linalg::Matrix;
use crate::exactgeom::polytope::{
    dual_polytope, facets_from_vertices, vertices_from_facets, HPolytope, VPolytope,
};
use crate::exactgeom::rational::{sign_of, Rational, VecQ};
use crate::moments::{moment_data, MomentData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Semistable,
    Unstable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Semistable => "semistable",
            Verdict::Unstable => "unstable",
        }
    }
}

/// Fan rays `ρ_i` and boundary coefficients `c_i` of a toric pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    pub rays: Vec<VecQ>,
    pub coeffs: Vec<Rational>,
}

/// Everything needed to evaluate the invariants; immutable once built.
#[derive(Clone, Debug)]
pub struct StabilityContext {
    h: HPolytope,
    p: VPolytope,
    moments: MomentData,
    fan: Fan,
    fan_data: Option<FanData>,
}

impl StabilityContext {
    /// The pair `(X_Σ, Σ c_i D_i)` given by rays and coefficients in `[0, 1)`.
    pub fn from_fano(rays: Vec<VecQ>, coeffs: Vec<Rational>) -> Result<Self> {
        let (h, p) = dual_polytope(&rays, &coeffs)?;
        let mut ctx = Self::assemble(h, p)?;
        ctx.fan_data = Some(FanData { rays, coeffs });
        Ok(ctx)
    }

    /// From the moment polytope itself.
    pub fn from_polytope(p: VPolytope) -> Result<Self> {
        let h = facets_from_vertices(&p)?;
        Self::assemble(h, p)
    }

    /// From an H-representation of the moment polytope.
    pub fn from_constraints(h: HPolytope) -> Result<Self> {
        let p = vertices_from_facets(&h)?;
        if !p.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Self::assemble(facets_from_vertices(&p)?, p)
    }

    fn assemble(h: HPolytope, p: VPolytope) -> Result<Self> {
        if !p.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let moments = moment_data(&p)?;
        let fan = normal_fan(&p)?;
        Ok(StabilityContext {
            h,
            p,
            moments,
            fan,
            fan_data: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.p.ambient_dim()
    }

    pub fn polytope(&self) -> &VPolytope {
        &self.p
    }

    pub fn h_polytope(&self) -> &HPolytope {
        &self.h
    }

    pub fn moments(&self) -> &MomentData {
        &self.moments
    }

    pub fn barycenter(&self) -> &VecQ {
        &self.moments.barycenter
    }

    pub fn covariance(&self) -> &Matrix {
        &self.moments.covariance
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn fan_data(&self) -> Option<&FanData> {
        self.fan_data.as_ref()
    }

    /// The context of `kP` for a rational `k > 0`.
    pub fn dilated(&self, k: &Rational) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::InvalidInput(
                "dilation factor must be positive".into(),
            ));
        }
        Self::from_polytope(self.p.dilate(k)?)
    }

    /// The context of `U·P` for an invertible `U`; cocharacters transform by `U⁻ᵀ`.
    pub fn transformed(&self, u: &Matrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() || u.det().is_zero() {
            return Err(Error::InvalidInput(
                "transformation must be invertible".into(),
            ));
        }
        Self::from_polytope(self.p.map_linear(u)?)
    }

    pub fn futaki(&self, v: &VecQ) -> Result<Rational> {
        self.p.check_direction(v)?;
        Ok(-self.barycenter().dot(v))
    }

    pub fn min_norm(&self, v: &VecQ) -> Result<Rational> {
        Ok(self.barycenter().dot(v) - self.p.support_min(v)?)
    }

    pub fn l2_norm_sq(&self, v: &VecQ) -> Result<Rational> {
        self.p.check_direction(v)?;
        Ok(self.covariance().quad_form(v))
    }

    pub fn mu(&self, v: &VecQ) -> Result<StabilityValue> {
        let fut = self.futaki(v)?;
        let mnorm = self.min_norm(v)?;
        let qv = self.l2_norm_sq(v)?;
        Ok(StabilityValue {
            mu1: &fut / mnorm,
            mu2: SignedSquare::new(sign_of(&fut), &fut * &fut / qv),
        })
    }

    /// `(A(v), S(v)) = (−min_P⟨·,v⟩, ‖v‖ₘ)`, so that `A − S = Fut`.
    pub fn log_discrepancy_s(&self, v: &VecQ) -> Result<(Rational, Rational)> {
        let a = -self.p.support_min(v)?;
        let s = self.min_norm(v)?;
        Ok((a, s))
    }

    pub fn verdict(&self) -> Verdict {
        if self.barycenter().is_zero() {
            Verdict::Semistable
        } else {
            Verdict::Unstable
        }
    }

    /// First two coefficients of `Fut/(‖v‖ₘ + ε‖v‖₂)` in `ε`:
    /// `c0 = μ₁` and `c1 = −μ₁ ‖v‖₂/‖v‖ₘ`.
    pub fn mu_prime_trunc(&self, v: &VecQ) -> Result<TruncatedInvariant> {
        let mnorm = self.min_norm(v)?;
        let mu1 = self.futaki(v)? / &mnorm;
        let qv = self.l2_norm_sq(v)?;
        let c1 = SignedSquare::new(-sign_of(&mu1), &mu1 * &mu1 * qv / (&mnorm * &mnorm));
        Ok(TruncatedInvariant { c0: mu1, c1 })
    }

    /// `Fut(v) − M₁‖v‖ₘ`; non-negative everywhere when `M₁` is the minimum of `μ₁`.
    pub fn excess(&self, m1: &Rational, v: &VecQ) -> Result<Rational> {
        Ok(self.futaki(v)? - m1 * self.min_norm(v)?)
    }
}
