//! Hermite–Padé approximants for systems of power series, their
//! trigonometric (cosine and sine) Hermite–Jacobi counterparts, and the
//! nonlinear Hermite–Chebyshev approximants obtained from them, with checks
//! of existence conditions and order of contact.
//!
//! Every routine is generic over [`Scalar`]: exact rationals for rigorous
//! answers or `f64` for speed.

pub mod cheb;
pub mod error;
pub mod hermite_pade;
pub mod job;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod trig;

pub use cheb::{
    cheb_first_kind, cheb_residual_order, cheb_second_kind, check_segment, full_pipeline,
    ChebApproximant, ConditionReport, Options, PipelineReport,
};
pub use error::{Error, Result};
pub use hermite_pade::{
    build_hankel, hadamard_det, jacobi_exists, qp_via_determinants, residual_determinants,
    residual_window, solve_nullspace, AlgebraicApproximant, HadamardDet, HankelSystem,
    JacobiCertificate, ResidualReport,
};
pub use scalar::{parse_rational, Rational, Scalar};
pub use series::{
    associate_series, associate_system, evaluate, series_divide, truncated_multiply,
    AnalyticityInfo, Basis, MultiIndex, SeriesSystem, TruncatedSeries, DEFAULT_GUARD,
};
pub use trig::{
    check_poles, check_radius, trig_first_kind, trig_residual_order, trig_second_kind, Kind,
    PoleCertificate, RadiusCheck, TrigApproximant,
};
