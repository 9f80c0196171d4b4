//! Solubility over R and Q_p, with Hensel witnesses and local indices.

use zcs::curves::{Conic, CurveModel, PlaneCubic};
use zcs::local::{everywhere_locally_soluble, local_index, verify_local_report, LocalOptions};

fn main() -> zcs::Result<()> {
    let selmer = CurveModel::PlaneCubic(PlaneCubic::diagonal(3, 4, 5)?);
    let report = everywhere_locally_soluble(&selmer, &LocalOptions { prime_bound: Some(41), precision: None })?;
    println!("3x^3 + 4y^3 + 5z^3: soluble everywhere = {}", report.soluble);
    for place in &report.places {
        println!("  {}: {} via {:?} (re-checked: {})", place.place, place.soluble, place.method, verify_local_report(&selmer, place));
    }

    let conic = CurveModel::Conic(Conic::new(1, 1, 3)?);
    let report = everywhere_locally_soluble(&conic, &LocalOptions::default())?;
    println!("x^2 + y^2 = 3z^2: fails at {:?}", report.failures.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    let li = local_index(&conic, 3, None)?;
    println!("  local index at 3: {} (degrees without points: {:?})", li.index, li.empty_degrees);
    Ok(())
}
