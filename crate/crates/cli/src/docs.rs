//! Output documents. Exact values are `"p/q"` strings (square roots as
//! `"sqrt(p/q)"`); each document carries a sibling `decimal` block that is
//! never read back.

use serde::{Deserialize, Serialize};

use toricstab_core::{
    DestabReport, ExtrapolationResult, LatticeSeries, Rational, SignedSquare, StabilityContext,
    StabilityValue, VecQ,
};

use crate::error::{CliError, CliResult};
use crate::render::{
    decimal, decimal_sqrt, decimal_vec, exact, exact_matrix, exact_vec, parse_exact,
    parse_exact_vec, parse_signed_square,
};

/// Verdicts concern product test configurations only.
pub const SCOPE: &str = "torus-equivariant";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetDoc {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub name: String,
    pub dimension: usize,
    pub vertices: Vec<Vec<String>>,
    /// `⟨u, normal⟩ ≥ offset`
    pub facets: Vec<FacetDoc>,
    pub volume: String,
    pub barycenter: Vec<String>,
    pub covariance: Vec<Vec<String>>,
    pub verdict: String,
    pub scope: String,
    pub directions: Vec<DirectionDoc>,
    pub decimal: ReportDecimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDecimal {
    pub volume: String,
    pub barycenter: Vec<String>,
    pub covariance: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionDoc {
    pub v: Vec<String>,
    pub futaki: String,
    pub min_norm: String,
    pub l2_norm_sq: String,
    pub mu: [String; 2],
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "S")]
    pub s: String,
    #[serde(rename = "A_over_S")]
    pub a_over_s: String,
    pub decimal: DirectionDecimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionDecimal {
    pub futaki: String,
    pub min_norm: String,
    pub mu: [String; 2],
    #[serde(rename = "A_over_S")]
    pub a_over_s: String,
}

impl ReportDoc {
    pub fn build(
        name: &str,
        ctx: &StabilityContext,
        dirs: &[VecQ],
        digits: u32,
    ) -> CliResult<ReportDoc> {
        let d = ctx.dim();
        let m = ctx.moments();
        let directions = dirs
            .iter()
            .map(|v| DirectionDoc::build(ctx, v, digits))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ReportDoc {
            name: name.to_string(),
            dimension: d,
            vertices: ctx.polytope().vertices().iter().map(exact_vec).collect(),
            facets: ctx
                .h_polytope()
                .constraints()
                .iter()
                .map(|h| FacetDoc {
                    normal: exact_vec(&h.normal),
                    offset: exact(&h.offset),
                })
                .collect(),
            volume: exact(&m.volume),
            barycenter: exact_vec(&m.barycenter),
            covariance: exact_matrix(&m.covariance, d),
            verdict: ctx.verdict().as_str().to_string(),
            scope: SCOPE.to_string(),
            directions,
            decimal: ReportDecimal {
                volume: decimal(&m.volume, digits),
                barycenter: decimal_vec(&m.barycenter, digits),
                covariance: (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| decimal(&m.covariance[(i, j)], digits))
                            .collect()
                    })
                    .collect(),
            },
        })
    }

    pub fn barycenter_value(&self) -> CliResult<VecQ> {
        parse_exact_vec("barycenter", &self.barycenter)
    }
}

impl DirectionDoc {
    fn build(ctx: &StabilityContext, v: &VecQ, digits: u32) -> CliResult<DirectionDoc> {
        let ctx_err = |e| CliError::from_core(&format!("--v {v}"), e);
        let fut = ctx.futaki(v).map_err(ctx_err)?;
        let mn = ctx.min_norm(v).map_err(ctx_err)?;
        let l2 = ctx.l2_norm_sq(v).map_err(ctx_err)?;
        let mu = ctx.mu(v).map_err(ctx_err)?;
        let (a, s) = ctx.log_discrepancy_s(v).map_err(ctx_err)?;
        let ratio = &a / &s;
        Ok(DirectionDoc {
            v: exact_vec(v),
            futaki: exact(&fut),
            min_norm: exact(&mn),
            l2_norm_sq: exact(&l2),
            mu: [exact(&mu.mu1), mu.mu2.to_exact_string()],
            a: exact(&a),
            s: exact(&s),
            a_over_s: exact(&ratio),
            decimal: DirectionDecimal {
                futaki: decimal(&fut, digits),
                min_norm: decimal(&mn, digits),
                mu: [decimal(&mu.mu1, digits), decimal_sqrt(&mu.mu2, digits)],
                a_over_s: decimal(&ratio, digits),
            },
        })
    }

    pub fn mu_value(&self) -> CliResult<StabilityValue> {
        parse_value("mu", &self.mu)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSquareDoc {
    pub sign: i8,
    pub square: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage1Doc {
    pub witness_rays: Vec<Vec<String>>,
    /// Minimum of `μ₁` over each vertex cone, keyed by vertex.
    pub per_cone_minima: Vec<ConeMinimumDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeMinimumDoc {
    pub vertex: Vec<String>,
    pub min: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma1Doc {
    /// `⟨a, v⟩ ≤ 0` for each listed `a`.
    pub constraints: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    /// `vᵀΣv` at the slice optimum `⟨b, v⟩ = 1`.
    pub slice_value: String,
    pub active: Vec<usize>,
    pub multipliers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabDoc {
    pub name: String,
    pub verdict: String,
    pub scope: String,
    pub delta: String,
    #[serde(rename = "M_mu")]
    pub m_mu: [String; 2],
    #[serde(rename = "M2")]
    pub m2: SignedSquareDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_star_rational: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_star_primitive: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage1: Option<Stage1Doc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma1: Option<Sigma1Doc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    pub decimal: DestabDecimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabDecimal {
    pub delta: String,
    #[serde(rename = "M_mu")]
    pub m_mu: [String; 2],
}

impl DestabDoc {
    pub fn build(name: &str, ctx: &StabilityContext, r: &DestabReport, digits: u32) -> DestabDoc {
        let vertices = ctx.polytope().vertices();
        DestabDoc {
            name: name.to_string(),
            verdict: r.verdict.as_str().to_string(),
            scope: SCOPE.to_string(),
            delta: exact(&r.delta),
            m_mu: value_strings(&r.m_mu),
            m2: SignedSquareDoc {
                sign: r.m_mu.mu2.sign(),
                square: exact(r.m_mu.mu2.square()),
            },
            v_star_rational: r.v_star_rational.as_ref().map(exact_vec),
            v_star_primitive: r.v_star_primitive.as_ref().map(exact_vec),
            stage1: r.stage1.as_ref().map(|s| Stage1Doc {
                witness_rays: s.witness_rays.iter().map(exact_vec).collect(),
                per_cone_minima: s
                    .per_cone_minima
                    .iter()
                    .map(|(&i, m)| ConeMinimumDoc {
                        vertex: exact_vec(&vertices[i]),
                        min: exact(m),
                    })
                    .collect(),
            }),
            sigma1: r.sigma1.as_ref().map(|s| {
                let g = s.cone.generators();
                Sigma1Doc {
                    constraints: s.cone.constraints().iter().map(exact_vec).collect(),
                    rays: g.rays.iter().map(exact_vec).collect(),
                    lineality: g.lineality.iter().map(exact_vec).collect(),
                }
            }),
            certificate: r.qp.as_ref().map(|qp| CertificateDoc {
                slice_value: exact(&qp.value),
                active: qp.active.clone(),
                multipliers: qp.multipliers.iter().map(exact).collect(),
            }),
            decimal: DestabDecimal {
                delta: decimal(&r.delta, digits),
                m_mu: [
                    decimal(&r.m_mu.mu1, digits),
                    decimal_sqrt(&r.m_mu.mu2, digits),
                ],
            },
        }
    }

    pub fn m_mu_value(&self) -> CliResult<StabilityValue> {
        let v = parse_value("M_mu", &self.m_mu)?;
        let square = parse_exact("M2.square", &self.m2.square)?;
        if !(-1..=1).contains(&self.m2.sign) || SignedSquare::new(self.m2.sign, square) != v.mu2 {
            return Err(CliError::Input("M2 disagrees with M_mu".into()));
        }
        Ok(v)
    }

    pub fn delta_value(&self) -> CliResult<Rational> {
        parse_exact("delta", &self.delta)
    }

    pub fn v_star_value(&self) -> CliResult<Option<VecQ>> {
        self.v_star_primitive
            .as_ref()
            .map(|v| parse_exact_vec("v_star_primitive", v))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDoc {
    pub value: [String; 2],
    pub verdict: String,
    pub members: Vec<String>,
    pub decimal: [String; 2],
}

/// Strata in strictly descending order of `M^μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumTableDoc {
    pub scope: String,
    pub strata: Vec<StratumDoc>,
}

impl StratumTableDoc {
    /// `groups` must already be sorted strictly descending.
    pub fn build(groups: &[(StabilityValue, Vec<String>)], digits: u32) -> StratumTableDoc {
        StratumTableDoc {
            scope: SCOPE.to_string(),
            strata: groups
                .iter()
                .map(|(v, members)| StratumDoc {
                    value: value_strings(v),
                    verdict: if v.mu1 == Rational::from_integer(0.into()) {
                        "semistable"
                    } else {
                        "unstable"
                    }
                    .to_string(),
                    members: members.clone(),
                    decimal: [decimal(&v.mu1, digits), decimal_sqrt(&v.mu2, digits)],
                })
                .collect(),
        }
    }

    pub fn values(&self) -> CliResult<Vec<StabilityValue>> {
        self.strata
            .iter()
            .map(|s| parse_value("value", &s.value))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRowDoc {
    pub m: u64,
    #[serde(rename = "N")]
    pub count: u64,
    /// `w_m / (m N_m)`
    pub first_moment: String,
    /// `q_m / (m² N_m)`
    pub second_moment: String,
    /// `λ_min,m / m`
    pub lambda_ratio: String,
    pub decimal: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub name: String,
    pub direction: Vec<String>,
    pub r: u64,
    pub m_max: u64,
    pub rows: Vec<OracleRowDoc>,
    #[serde(rename = "F0_est")]
    pub f0_est: String,
    #[serde(rename = "Q0_est")]
    pub q0_est: String,
    /// Richardson residuals over the last rows, first and second moment.
    pub residuals: Vec<String>,
    pub q_residuals: Vec<String>,
    pub residuals_settle: bool,
    /// `⟨b, v⟩`
    #[serde(rename = "F0_target")]
    pub f0_target: String,
    /// `vᵀ(Σ + bbᵀ)v`
    #[serde(rename = "Q0_target")]
    pub q0_target: String,
    pub support_min: String,
    /// Whether every `λ_min,m / m` equals `support_min`.
    pub lambda_exact: bool,
    pub decimal: OracleDecimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDecimal {
    #[serde(rename = "F0_est")]
    pub f0_est: String,
    #[serde(rename = "F0_target")]
    pub f0_target: String,
    #[serde(rename = "Q0_est")]
    pub q0_est: String,
    #[serde(rename = "Q0_target")]
    pub q0_target: String,
}

impl OracleDoc {
    pub fn build(
        name: &str,
        ctx: &StabilityContext,
        s: &LatticeSeries,
        x: &ExtrapolationResult,
        m_max: u64,
        digits: u32,
    ) -> CliResult<OracleDoc> {
        let v = &s.direction;
        let f0 = ctx.barycenter().dot(v);
        let q0 = ctx.moments().raw_second_moment().quad_form(v);
        let smin = ctx
            .polytope()
            .support_min(v)
            .map_err(|e| CliError::from_core("--v", e))?;
        Ok(OracleDoc {
            name: name.to_string(),
            direction: exact_vec(v),
            r: s.r,
            m_max,
            rows: s
                .rows
                .iter()
                .map(|row| {
                    let (f, qq, l) = (row.first_moment(), row.second_moment(), row.lambda_ratio());
                    OracleRowDoc {
                        m: row.m,
                        count: row.count,
                        decimal: [
                            decimal(&f, digits),
                            decimal(&qq, digits),
                            decimal(&l, digits),
                        ],
                        first_moment: exact(&f),
                        second_moment: exact(&qq),
                        lambda_ratio: exact(&l),
                    }
                })
                .collect(),
            f0_est: exact(&x.f0_est),
            q0_est: exact(&x.q0_est),
            residuals: x.residuals.iter().map(exact).collect(),
            q_residuals: x.q_residuals.iter().map(exact).collect(),
            residuals_settle: x.residuals_settle(),
            lambda_exact: s.rows.iter().all(|row| row.lambda_ratio() == smin),
            f0_target: exact(&f0),
            q0_target: exact(&q0),
            support_min: exact(&smin),
            decimal: OracleDecimal {
                f0_est: decimal(&x.f0_est, digits),
                f0_target: decimal(&f0, digits),
                q0_est: decimal(&x.q0_est, digits),
                q0_target: decimal(&q0, digits),
            },
        })
    }

    /// Whitespace-separated columns, one row per dilate.
    pub fn dump(&self, s: &LatticeSeries) -> String {
        let mut out = String::from("# m N first_moment second_moment lambda_ratio\n");
        for row in &s.rows {
            out.push_str(&format!(
                "{} {} {:.17e} {:.17e} {:.17e}\n",
                row.m,
                row.count,
                toricstab_core::to_f64(&row.first_moment()),
                toricstab_core::to_f64(&row.second_moment()),
                toricstab_core::to_f64(&row.lambda_ratio()),
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitsDoc {
    pub direction: Vec<String>,
    pub support: Vec<usize>,
    pub limit_support: Vec<usize>,
    /// Weight indices on the face `F` selected by the direction.
    pub face: Vec<usize>,
    pub face_weights: Vec<Vec<String>>,
    /// `σ_F = {v : ⟨a, v⟩ ≤ 0}` for each listed `a`.
    pub sigma_f_constraints: Vec<Vec<String>>,
    pub fixed: bool,
    pub status: String,
}

fn value_strings(v: &StabilityValue) -> [String; 2] {
    [exact(&v.mu1), v.mu2.to_exact_string()]
}

fn parse_value(field: &str, s: &[String; 2]) -> CliResult<StabilityValue> {
    Ok(StabilityValue {
        mu1: parse_exact(&format!("{field}[0]"), &s[0])?,
        mu2: parse_signed_square(&s[1]).ok_or_else(|| {
            CliError::Input(format!("{field}[1]: not a signed square: {:?}", s[1]))
        })?,
    })
}
