//! Input documents. Every field is validated before any geometry runs so that
//! diagnostics can name the offending field.

use std::path::Path;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use toricstab_core::{
    HPolytope, HalfSpace, Rational, StabilityContext, VPolytope, VecQ, WeightedPoint,
};

use crate::corpus;
use crate::error::{CliError, CliResult};
use crate::render::{parse_exact, parse_exact_vec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moment_polytope: Option<MomentPolytopeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentPolytopeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Vec<ConstraintSpec>>,
}

/// The half-space `⟨u, normal⟩ ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub normal: Vec<i64>,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub weights: Vec<Vec<i64>>,
    pub support: Vec<usize>,
}

impl InputSpec {
    pub fn context(&self) -> CliResult<StabilityContext> {
        let ctx = match (&self.rays, &self.moment_polytope) {
            (Some(rays), None) => self.fano_context(rays)?,
            (None, Some(mp)) => {
                if self.coeffs.is_some() {
                    return Err(self.err("coeffs: only allowed together with rays"));
                }
                self.polytope_context(mp)?
            }
            (Some(_), Some(_)) => {
                return Err(self.err("exactly one of rays or moment_polytope must be given"))
            }
            (None, None) => return Err(self.err("missing rays or moment_polytope")),
        };
        Ok(ctx)
    }

    fn err(&self, msg: &str) -> CliError {
        CliError::Input(format!("{}: {msg}", self.name))
    }

    fn core_err(&self, e: toricstab_core::Error) -> CliError {
        CliError::from_core(&self.name, e)
    }

    fn fano_context(&self, rays: &[Vec<i64>]) -> CliResult<StabilityContext> {
        if rays.is_empty() {
            return Err(self.err("rays: empty"));
        }
        let coeffs = match &self.coeffs {
            None => vec![Rational::from_integer(0.into()); rays.len()],
            Some(cs) => {
                if cs.len() != rays.len() {
                    return Err(self.err(&format!(
                        "coeffs: {} entries for {} rays",
                        cs.len(),
                        rays.len()
                    )));
                }
                cs.iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let field = format!("{}: coeffs[{i}]", self.name);
                        let c = parse_exact(&field, s)?;
                        if c >= Rational::one() {
                            return Err(CliError::Input(format!(
                                "{field}: coefficient must be < 1"
                            )));
                        }
                        if c.is_negative() {
                            return Err(CliError::Input(format!(
                                "{field}: coefficient must be >= 0"
                            )));
                        }
                        Ok(c)
                    })
                    .collect::<CliResult<Vec<_>>>()?
            }
        };
        let rays = rays.iter().map(|r| VecQ::from_ints(r)).collect();
        StabilityContext::from_fano(rays, coeffs).map_err(|e| self.core_err(e))
    }

    fn polytope_context(&self, mp: &MomentPolytopeSpec) -> CliResult<StabilityContext> {
        match (&mp.vertices, &mp.constraints) {
            (Some(vs), None) => {
                let pts = vs
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        parse_exact_vec(&format!("{}: moment_polytope.vertices[{i}]", self.name), v)
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let p = VPolytope::from_points(pts).map_err(|e| self.core_err(e))?;
                StabilityContext::from_polytope(p).map_err(|e| self.core_err(e))
            }
            (None, Some(cs)) => {
                let Some(first) = cs.first() else {
                    return Err(self.err("moment_polytope.constraints: empty"));
                };
                let d = first.normal.len();
                let halves = cs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let field = format!("{}: moment_polytope.constraints[{i}]", self.name);
                        if c.normal.len() != d {
                            return Err(CliError::Input(format!(
                                "{field}.normal: expected {d} entries"
                            )));
                        }
                        if c.normal.iter().all(|&x| x == 0) {
                            return Err(CliError::Input(format!("{field}.normal: zero vector")));
                        }
                        let offset = parse_exact(&format!("{field}.offset"), &c.offset)?;
                        Ok(HalfSpace::new(VecQ::from_ints(&c.normal), offset))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let h = HPolytope::new(d, halves).map_err(|e| self.core_err(e))?;
                StabilityContext::from_constraints(h).map_err(|e| self.core_err(e))
            }
            _ => {
                Err(self
                    .err("moment_polytope: exactly one of vertices or constraints must be given"))
            }
        }
    }
}

impl PointSpec {
    pub fn point(&self) -> CliResult<WeightedPoint> {
        let weights = self.weights.iter().map(|w| VecQ::from_ints(w)).collect();
        WeightedPoint::new(weights, self.support.iter().copied())
            .map_err(|e| CliError::from_core("point", e))
    }
}

/// Resolves `corpus:NAME` or reads a JSON file.
pub fn load_input(arg: &str) -> CliResult<InputSpec> {
    if let Some(name) = arg.strip_prefix("corpus:") {
        return corpus::find(name)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("no corpus entry named {name:?}")));
    }
    read_json(Path::new(arg))
}

pub fn load_point(path: &str) -> CliResult<PointSpec> {
    read_json(Path::new(path))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CliResult<StabilityContext> {
        let spec: InputSpec =
            serde_json::from_str(s).map_err(|e| CliError::Input(e.to_string()))?;
        spec.context()
    }

    fn message(r: CliResult<StabilityContext>) -> String {
        match r {
            Err(CliError::Input(m)) => m,
            other => panic!("expected input error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn coefficient_bound_is_named() {
        let m = message(parse(
            r#"{"name":"bad","rays":[[1,0],[0,1],[-1,-1]],"coeffs":["1","0","0"]}"#,
        ));
        assert!(m.contains("coefficient must be < 1"), "{m}");
        assert!(m.contains("coeffs[0]"), "{m}");
    }

    #[test]
    fn unknown_and_conflicting_fields() {
        assert!(parse(r#"{"name":"x","rayz":[[1]]}"#).is_err());
        let m = message(parse(
            r#"{"name":"x","rays":[[1,0]],"moment_polytope":{"vertices":[["0","0"]]}}"#,
        ));
        assert!(m.contains("exactly one"), "{m}");
        let m = message(parse(r#"{"name":"x"}"#));
        assert!(m.contains("missing"), "{m}");
    }

    #[test]
    fn three_encodings_agree() {
        let a = parse(r#"{"name":"a","rays":[[1,0],[0,1],[-1,-2]]}"#).unwrap();
        let b = parse(
            r#"{"name":"b","moment_polytope":{"vertices":[["-1","-1"],["3","-1"],["-1","1"]]}}"#,
        )
        .unwrap();
        let c = parse(
            r#"{"name":"c","moment_polytope":{"constraints":[
                {"normal":[1,0],"offset":"-1"},{"normal":[0,1],"offset":"-1"},
                {"normal":[-1,-2],"offset":"-1"}]}}"#,
        )
        .unwrap();
        assert_eq!(a.moments(), b.moments());
        assert_eq!(a.moments(), c.moments());
    }

    #[test]
    fn bad_rational_names_field() {
        let m = message(parse(
            r#"{"name":"v","moment_polytope":{"vertices":[["0","0"],["1","x"],["0","1"]]}}"#,
        ));
        assert!(m.contains("vertices[1][1]"), "{m}");
    }

    #[test]
    fn non_primitive_ray_rejected() {
        assert!(parse(r#"{"name":"x","rays":[[2,0],[0,1],[-1,-1]]}"#).is_err());
    }
}
