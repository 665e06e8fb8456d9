//! Command implementations. Each returns a serializable document; printing and
//! exit codes are handled by the caller.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use toricstab_core::{
    extrapolate, is_fixed, lattice_series, lcm_denominators, limit_point, normal_cone_of_face,
    optimal_destabilizer, StabilityValue, VecQ, WeightPolytope,
};

use crate::docs::{DestabDoc, LimitsDoc, OracleDoc, ReportDoc, StratumTableDoc};
use crate::error::{CliError, CliResult};
use crate::input::{InputSpec, PointSpec};
use crate::render::exact_vec;

pub fn report(spec: &InputSpec, dirs: &[VecQ], digits: u32) -> CliResult<ReportDoc> {
    let ctx = spec.context()?;
    ReportDoc::build(&spec.name, &ctx, dirs, digits)
}

pub fn destabilize(spec: &InputSpec, digits: u32) -> CliResult<DestabDoc> {
    let ctx = spec.context()?;
    let r = optimal_destabilizer(&ctx).map_err(|e| CliError::from_core(&spec.name, e))?;
    Ok(DestabDoc::build(&spec.name, &ctx, &r, digits))
}

/// Groups the inputs by exact `M^μ`, strictly descending. Members of a stratum
/// are listed by name; the whole batch fails if any member is invalid.
pub fn stratify(specs: &[InputSpec], digits: u32) -> CliResult<StratumTableDoc> {
    if specs.is_empty() {
        return Err(CliError::Input("stratify: no inputs".into()));
    }
    let mut sorted: Vec<&InputSpec> = specs.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let results: Vec<(String, CliResult<StabilityValue>)> = sorted
        .par_iter()
        .map(|s| {
            let value = s.context().and_then(|ctx| {
                optimal_destabilizer(&ctx)
                    .map(|r| r.m_mu)
                    .map_err(|e| CliError::from_core(&s.name, e))
            });
            (s.name.clone(), value)
        })
        .collect();
    let mut failures = Vec::new();
    let mut internal = false;
    let mut groups: BTreeMap<StabilityValue, Vec<String>> = BTreeMap::new();
    for (name, value) in results {
        match value {
            Ok(v) => groups.entry(v).or_default().push(name),
            Err(e) => {
                internal |= matches!(e, CliError::Internal(_));
                failures.push(e.to_string());
            }
        }
    }
    if !failures.is_empty() {
        let msg = format!("stratify: invalid members:\n  {}", failures.join("\n  "));
        return Err(if internal {
            CliError::Internal(msg)
        } else {
            CliError::Input(msg)
        });
    }
    let descending: Vec<(StabilityValue, Vec<String>)> = groups.into_iter().rev().collect();
    Ok(StratumTableDoc::build(&descending, digits))
}

/// `m_max` defaults to `60 r`.
pub fn oracle(
    spec: &InputSpec,
    v: &VecQ,
    m_max: Option<u64>,
    digits: u32,
) -> CliResult<(OracleDoc, String)> {
    let ctx = spec.context()?;
    let err = |e| CliError::from_core("oracle", e);
    let m_max = match m_max {
        Some(m) => m,
        None => {
            let r = lcm_denominators(ctx.polytope().vertices().iter().flat_map(|u| u.iter()));
            let r = r
                .to_u64()
                .ok_or_else(|| CliError::Input("vertex denominators too large".into()))?;
            60 * r
        }
    };
    let series = lattice_series(ctx.polytope(), v, m_max).map_err(err)?;
    let x = extrapolate(&series).map_err(err)?;
    let doc = OracleDoc::build(&spec.name, &ctx, &series, &x, m_max, digits)?;
    let dump = doc.dump(&series);
    Ok((doc, dump))
}

pub fn limits(spec: &PointSpec, v: &VecQ) -> CliResult<LimitsDoc> {
    let w = spec.point()?;
    let err = |e| CliError::from_core("limits", e);
    let lim = limit_point(&w, v).map_err(err)?;
    let fixed = is_fixed(&w, v).map_err(err)?;
    let q = WeightPolytope::of(&w).map_err(err)?;
    let face = q.face_for_direction(v);
    let cone = normal_cone_of_face(&q, &face).map_err(err)?;
    Ok(LimitsDoc {
        direction: exact_vec(v),
        support: w.support().iter().copied().collect(),
        limit_support: lim.support().iter().copied().collect(),
        face_weights: face.iter().map(|&i| exact_vec(&w.weights()[i])).collect(),
        face,
        sigma_f_constraints: cone.constraints().iter().map(exact_vec).collect(),
        fixed,
        status: if fixed { "fixed" } else { "moved" }.to_string(),
    })
}
