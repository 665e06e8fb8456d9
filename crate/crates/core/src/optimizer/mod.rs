//! Two-stage lexicographic minimization of `μ = (μ₁, μ₂)` over cocharacters.
//!
//! Stage 1 minimizes `μ₁` exactly by evaluating it on the extreme rays of the
//! normal fan. The directions attaining the minimum `M₁` form the cone `σ₁`.
//! Stage 2 minimizes `μ₂` on `σ₁`, which after normalizing `⟨b, v⟩ = 1` is a
//! strictly convex quadratic program with a unique rational solution.

mod qp;

pub use qp::{minimize_quadratic_on_cone, QpSolution};

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactgeom::cone::ConeH;
use crate::exactgeom::rational::{Rational, VecQ};
use crate::stability::{
    SignedSquare, StabilityContext, StabilityValue, TruncatedInvariant, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage1Result {
    /// `M₁ = min μ₁ = δ − 1`
    pub m1: Rational,
    /// Primitive fan rays attaining `M₁`, sorted.
    pub witness_rays: Vec<VecQ>,
    /// Minimum of `μ₁` on the normal cone of each vertex, keyed by vertex index.
    pub per_cone_minima: BTreeMap<usize, Rational>,
}

/// `σ₁ = {v : Fut(v) = M₁‖v‖ₘ}`, one `≤ 0` normal `M₁u_j − (1+M₁)b` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaOne {
    pub m1: Rational,
    pub cone: ConeH,
}

impl SigmaOne {
    pub fn contains(&self, v: &VecQ) -> bool {
        self.cone.contains(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DestabReport {
    pub verdict: Verdict,
    /// `M^μ`; `(0, 0)` when semistable.
    pub m_mu: StabilityValue,
    pub delta: Rational,
    /// Optimum on the slice `⟨b, v⟩ = 1`.
    pub v_star_rational: Option<VecQ>,
    /// Primitive integral vector on the same ray.
    pub v_star_primitive: Option<VecQ>,
    pub stage1: Option<Stage1Result>,
    pub sigma1: Option<SigmaOne>,
    /// Certificate of the stage-2 optimum.
    pub qp: Option<QpSolution>,
}

/// `μ₁` on the normal cone `σ_u` is `−⟨b,v⟩/⟨b−u,v⟩`, a linear-fractional
/// function with positive denominator, so its minimum over each cone is
/// attained on a generator.
pub fn minimize_mu1(ctx: &StabilityContext) -> Result<Stage1Result> {
    if ctx.verdict() == Verdict::Semistable {
        return Err(Error::Semistable);
    }
    let b = ctx.barycenter();
    let mut per_cone_minima = BTreeMap::new();
    let mut candidates: Vec<(Rational, VecQ)> = Vec::new();
    for fc in ctx.fan().cones() {
        let denom_form = b - &fc.vertex;
        let mut best: Option<Rational> = None;
        for r in fc.cone.generators().all_directions() {
            let den = denom_form.dot(&r);
            if !den.is_positive() {
                return Err(Error::Certificate(format!(
                    "minimum norm is not positive on the ray {r}"
                )));
            }
            let val = -b.dot(&r) / den;
            if best.as_ref().is_none_or(|x| val < *x) {
                best = Some(val.clone());
            }
            candidates.push((val, r));
        }
        if let Some(best) = best {
            per_cone_minima.insert(fc.vertex_index, best);
        }
    }
    let m1 = per_cone_minima
        .values()
        .min()
        .cloned()
        .ok_or_else(|| Error::Certificate("normal fan has no rays".into()))?;
    let mut witness_rays: Vec<VecQ> = candidates
        .into_iter()
        .filter(|(val, _)| *val == m1)
        .map(|(_, r)| r.primitive().unwrap())
        .collect();
    witness_rays.sort();
    witness_rays.dedup();
    Ok(Stage1Result {
        m1,
        witness_rays,
        per_cone_minima,
    })
}

/// Since `M₁ < 0`, `Fut − M₁‖·‖ₘ = max_j ⟨M₁u_j − (1+M₁)b, ·⟩`, which is
/// non-negative and vanishes exactly on the cone cut out by these normals.
pub fn build_sigma1(ctx: &StabilityContext, m1: &Rational) -> Result<SigmaOne> {
    if !m1.is_negative() {
        return Err(Error::InconsistentM1(format!("M1 = {m1} is not negative")));
    }
    let b = ctx.barycenter();
    let shift = m1 + Rational::one();
    let normals = ctx
        .polytope()
        .vertices()
        .iter()
        .map(|u| u.scale(m1).add_scaled(&-&shift, b));
    let cone = ConeH::new(ctx.dim(), normals);
    if cone.is_zero_cone() {
        return Err(Error::InconsistentM1(format!("σ₁ is {{0}} for M1 = {m1}")));
    }
    Ok(SigmaOne {
        m1: m1.clone(),
        cone,
    })
}

/// `min μ₂` on `σ₁`: minimizes `vᵀΣv` on `σ₁ ∩ {⟨b,v⟩ = 1}`, where
/// `Fut = −1` and so `μ₂ = −1/√Q`.
pub fn minimize_mu2_on_cone(
    ctx: &StabilityContext,
    sigma1: &SigmaOne,
) -> Result<(VecQ, SignedSquare, QpSolution)> {
    let sol = minimize_quadratic_on_cone(ctx.covariance(), ctx.barycenter(), &sigma1.cone)?;
    let m2 = SignedSquare::new(-1, sol.value.recip());
    Ok((sol.point.clone(), m2, sol))
}

pub fn optimal_destabilizer(ctx: &StabilityContext) -> Result<DestabReport> {
    if ctx.verdict() == Verdict::Semistable {
        return Ok(DestabReport {
            verdict: Verdict::Semistable,
            m_mu: StabilityValue::zero(),
            delta: Rational::one(),
            v_star_rational: None,
            v_star_primitive: None,
            stage1: None,
            sigma1: None,
            qp: None,
        });
    }
    let stage1 = minimize_mu1(ctx)?;
    let sigma1 = build_sigma1(ctx, &stage1.m1)?;
    if let Some(r) = stage1.witness_rays.iter().find(|r| !sigma1.contains(r)) {
        return Err(Error::InconsistentM1(format!(
            "witness ray {r} lies outside σ₁"
        )));
    }
    let (v_star, m2, qp) = minimize_mu2_on_cone(ctx, &sigma1)?;
    let m_mu = StabilityValue {
        mu1: stage1.m1.clone(),
        mu2: m2,
    };
    if ctx.mu(&v_star)? != m_mu {
        return Err(Error::Certificate(format!(
            "μ(v*) differs from M^μ at {v_star}"
        )));
    }
    let v_star_primitive = v_star.primitive().expect("slice point is nonzero");
    Ok(DestabReport {
        verdict: Verdict::Unstable,
        delta: &stage1.m1 + Rational::one(),
        m_mu,
        v_star_rational: Some(v_star),
        v_star_primitive: Some(v_star_primitive),
        stage1: Some(stage1),
        sigma1: Some(sigma1),
        qp: Some(qp),
    })
}

/// Lexicographic minimizer of `μ'_{≤2} = (c0, c1)`, computed cone by cone
/// without reference to `σ₁`.
///
/// On a vertex cone `σ_u`, `c0 = μ₁` attains its cone minimum on a face; on
/// that face `c1 = |c0| √Q(v)/⟨b−u,v⟩`, which is minimized by a quadratic
/// program on the slice `⟨b−u, v⟩ = 1`. Returns the primitive minimizer and
/// its value.
pub fn minimize_mu_prime_trunc(ctx: &StabilityContext) -> Result<(VecQ, TruncatedInvariant)> {
    if ctx.verdict() == Verdict::Semistable {
        return Err(Error::Semistable);
    }
    let b = ctx.barycenter();
    let mut best: Option<(TruncatedInvariant, VecQ)> = None;
    for fc in ctx.fan().cones() {
        let gens = fc.cone.generators().all_directions();
        let Some(c0) = gens
            .iter()
            .map(|r| ctx.mu_prime_trunc(r).map(|t| t.c0))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
        else {
            continue;
        };
        if best.as_ref().is_some_and(|(t, _)| t.c0 < c0) {
            continue;
        }
        // c0(v) = c0 on σ_u  ⇔  ⟨c0·u − (1+c0)b, v⟩ = 0
        let face_normal = fc
            .vertex
            .scale(&c0)
            .add_scaled(&-(&c0 + Rational::one()), b);
        let face = fc
            .cone
            .intersect(&ConeH::new(ctx.dim(), [face_normal.clone(), -&face_normal]));
        let sol = minimize_quadratic_on_cone(ctx.covariance(), &(b - &fc.vertex), &face)?;
        let v = sol.point.primitive().expect("slice point is nonzero");
        let t = ctx.mu_prime_trunc(&v)?;
        match &best {
            Some((bt, bv)) if *bt == t && !bv.same_ray(&v) => {
                return Err(Error::Certificate(format!(
                    "two minimizers of the truncated invariant: {bv} and {v}"
                )));
            }
            Some((bt, _)) if *bt <= t => {}
            _ => best = Some((t, v)),
        }
    }
    let (t, v) = best.ok_or_else(|| Error::Certificate("no candidate cone".into()))?;
    Ok((v, t))
}
