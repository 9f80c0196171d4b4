//! Curve models over Q, their discriminants and reductions, and exact point
//! enumeration over F_{p^k}.

pub mod model;
pub mod points;

pub use model::{
    Conic, CurveModel, CurveSpec, EllipticCurve, HyperellipticCurve, PlaneCubic, ReductionInfo, ReductionStatus,
    CUBIC_MONOMIALS,
};
pub use points::{count_points, enumerate_points, enumerate_reduction_points, is_on_curve, CurvePoint};
