//! Exact rational linear algebra and low-dimensional polyhedral geometry.

pub mod cone;
pub mod fan;
pub mod linalg;
pub mod polytope;
pub mod rational;
pub mod triangulate;

pub use cone::{extreme_rays, ConeGenerators, ConeH};
pub use fan::{normal_fan, Fan, FanCone};
pub use linalg::Matrix;
pub use polytope::{
    dual_polytope, facets_from_vertices, vertices_from_facets, HPolytope, HalfSpace, VPolytope,
};
pub use rational::{
    format_rational, lcm_denominators, parse_rational, q, qr, to_f64, Rational, VecQ,
};
pub use triangulate::{simplex_volume, triangulate, triangulate_from, Simplex};
