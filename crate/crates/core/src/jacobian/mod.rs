//! Jacobian arithmetic: elliptic curves and genus-2 curves y² = f(x), deg f = 5,
//! over finite fields and exactly over Q.

pub mod cantor;
pub mod ec;
pub mod finite;
pub mod rational;

pub use cantor::{HyperJacobian, Mumford};
pub use ec::{EcGroup, EcPoint};
pub use finite::{jacobian_order, jacobian_order_over, quotient_map, FiniteJacobian, JacobianElement, QuotientMap};
pub use rational::{reduce_point, torsion_order, MordellWeilBasis, RationalJacobian, RationalPoint, TorsionGenerator};

use crate::arith::field::ExtField;
use crate::curves::CurveModel;
use crate::error::{Error, Result};

fn group_for(curve: &CurveModel, field: &ExtField, elements: &[&JacobianElement]) -> Result<FiniteJacobian> {
    let jac = FiniteJacobian::new(curve, *field)?;
    let foreign = |e: &JacobianElement| match e {
        JacobianElement::Ec(EcPoint::Identity) => false,
        JacobianElement::Ec(EcPoint::Affine { x, y }) => x.field() != field || y.field() != field,
        JacobianElement::Mumford(d) => d.u.coeffs().iter().chain(d.v.coeffs()).any(|c| c.field() != field),
    };
    if elements.iter().any(|e| foreign(e)) {
        return Err(Error::FieldMismatch);
    }
    Ok(jac)
}

/// Checked chord-tangent addition on an elliptic curve over a finite field.
pub fn ec_add(p: &JacobianElement, q: &JacobianElement, curve: &CurveModel, field: &ExtField) -> Result<JacobianElement> {
    if !matches!(curve, CurveModel::Elliptic(_)) {
        return Err(Error::UnsupportedModel("ec_add needs an elliptic curve".into()));
    }
    group_for(curve, field, &[p, q])?.checked_add(p, q)
}

/// Checked Cantor addition of Mumford divisors on a genus-2 curve.
pub fn cantor_add(d1: &JacobianElement, d2: &JacobianElement, curve: &CurveModel, field: &ExtField) -> Result<JacobianElement> {
    if curve.genus() != 2 {
        return Err(Error::UnsupportedModel("cantor_add needs a genus-2 curve".into()));
    }
    group_for(curve, field, &[d1, d2])?.checked_add(d1, d2)
}
