//! Index bounds from closed points and the period/index report.

use zcs::curves::{CurveModel, HyperellipticCurve, PlaneCubic};
use zcs::local::{everywhere_locally_soluble, LocalOptions};
use zcs::period::{index_upper_bound, period_report, sha_corollary_report};

fn main() -> zcs::Result<()> {
    let curves = [
        ("3x^3 + 4y^3 + 5z^3 = 0", CurveModel::PlaneCubic(PlaneCubic::diagonal(3, 4, 5)?)),
        ("y^2 = x^5 - x + 1", CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, -1, 0, 0, 0, 1])?)),
    ];
    for (name, curve) in &curves {
        let local = everywhere_locally_soluble(curve, &LocalOptions::default())?;
        let index = index_upper_bound(curve, 200);
        let report = period_report(curve, &local, &index);
        println!("{name}: index divides {}", report.index_upper_bound);
        for claim in &report.claims {
            println!("  [{:?}] {}", claim.status, claim.statement);
        }
    }
    let cor = sha_corollary_report(3, true, &[2])?;
    println!("genus 3 with Sha[2] = 0: {}", cor.claim.statement);
    Ok(())
}
