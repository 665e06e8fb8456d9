//! Exact torus-equivariant stability invariants for toric log Fano pairs.
//!
//! A pair is described by its moment polytope `P`. Every invariant is a closed
//! form in `P`'s barycenter, covariance and support function, evaluated in
//! exact rational arithmetic.

pub mod error;
pub mod exactgeom;
pub mod limits;
pub mod moments;
pub mod optimizer;
pub mod stability;

pub use error::{Error, Result};
pub use exactgeom::{
    dual_polytope, format_rational, lcm_denominators, normal_fan, parse_rational, q, qr, to_f64,
    ConeH, Fan, HPolytope, HalfSpace, Matrix, Rational, VPolytope, VecQ,
};
pub use limits::{
    face_limit, is_fixed, limit_point, normal_cone_of_face, WeightPolytope, WeightedPoint,
};
pub use moments::{
    extrapolate, lattice_series, moment_data, ExtrapolationResult, LatticeSeries, MomentData,
    SeriesRow,
};
pub use optimizer::{
    build_sigma1, minimize_mu1, minimize_mu2_on_cone, minimize_mu_prime_trunc,
    optimal_destabilizer, DestabReport, SigmaOne, Stage1Result,
};
pub use stability::{SignedSquare, StabilityContext, StabilityValue, TruncatedInvariant, Verdict};
