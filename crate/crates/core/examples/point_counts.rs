//! Curve models, reduction types and point counts over finite fields.

use zcs::arith::ExtField;
use zcs::curves::{count_points, CurveModel, EllipticCurve, HyperellipticCurve, PlaneCubic};

fn main() -> zcs::Result<()> {
    let curves = [
        CurveModel::Elliptic(EllipticCurve::new(0, -2)?),
        CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, -1, 0, 0, 0, 1])?),
        CurveModel::PlaneCubic(PlaneCubic::diagonal(3, 4, 5)?),
    ];
    for curve in &curves {
        println!("{} (genus {}), bad primes {:?}", curve.kind(), curve.genus(), curve.bad_primes()?);
        for p in [7u64, 11, 13] {
            if !curve.is_good(p) {
                println!("  p={p}: bad reduction");
                continue;
            }
            let n1 = count_points(curve, &ExtField::prime(p)?)?;
            let n2 = count_points(curve, &ExtField::with_degree(p, 2)?)?;
            println!("  p={p}: #C(F_p) = {n1}, #C(F_p^2) = {n2}");
        }
    }
    Ok(())
}
