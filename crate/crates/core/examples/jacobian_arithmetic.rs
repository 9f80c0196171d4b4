//! Group law on E(F_p) and on Jacobians of genus-2 curves via Cantor's algorithm.

use zcs::arith::ExtField;
use zcs::curves::{enumerate_points, CurveModel, EllipticCurve, HyperellipticCurve};
use zcs::jacobian::{jacobian_order, quotient_map, FiniteJacobian};

fn main() -> zcs::Result<()> {
    let e = CurveModel::Elliptic(EllipticCurve::new(0, 1)?);
    let jac = FiniteJacobian::over_prime(&e, 5)?;
    let pts = enumerate_points(&e, &ExtField::prime(5)?)?;
    let p = jac.point_class(&pts[1])?;
    println!("y^2 = x^3 + 1 over F_5: #E = {}, P = {}, ord(P) = {}", jac.order()?, ser(&p), jac.element_order(&p));
    println!("  P + P = {}", ser(&jac.add(&p, &p)));

    let c = CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, 0, 0, 0, 0, 1])?);
    for q in [7u64, 11, 13] {
        let jac = FiniteJacobian::over_prime(&c, q)?;
        let pts = enumerate_points(&c, jac.field())?;
        let a = jac.point_class(&pts[0])?;
        let b = jac.point_class(&pts[pts.len() - 1])?;
        let s = jac.add(&a, &b);
        println!("y^2 = x^5 + 1 over F_{q}: #J = {}, D = {}, ord(D) = {}", jacobian_order(&c, q)?, ser(&s), jac.element_order(&s));
        let quo = quotient_map(&c, q, 12)?;
        println!("  J/12J has {} classes", quo.label_count());
    }
    Ok(())
}

fn ser<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).unwrap()
}
