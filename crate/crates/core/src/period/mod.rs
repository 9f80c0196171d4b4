//! Period and index: upper bounds from closed points, the relations between
//! period and index, and the conditional corollary on degree-1 zero-cycles.

pub mod conic;
pub mod search;

pub use conic::{conic_has_rational_point, conic_point_search, holzer_bounds, ConicReport, HilbertEntry};
pub use search::{
    canonical_index_bound, diagonal_cubic_points, index_upper_bound, plane_cubic_points, ClosedPoint, IndexReport,
    StructuralBound,
};

use serde::Serialize;

use crate::arith::primes::prime_divisors;
use crate::curves::CurveModel;
use crate::error::{Error, Result};
use crate::local::EverywhereReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    ProvenAtDeskScale,
    Conditional,
    Informational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub status: ClaimStatus,
    pub rule: String,
}

impl Claim {
    fn new(statement: impl Into<String>, status: ClaimStatus, rule: &str) -> Self {
        Claim { statement: statement.into(), status, rule: rule.into() }
    }
}

pub const RULE_INDEX_EQUALS_PERIOD: &str = "a curve with a zero-cycle of degree 1 locally everywhere has index equal to its period";
pub const RULE_PERIOD_INDEX_CHAIN: &str = "for a torsor under an abelian variety of dimension d, P | I | P^(2d)";
pub const RULE_CANONICAL: &str = "the canonical class has degree 2g - 2, so I | 2g - 2";
pub const RULE_CONIC: &str = "a conic has index 1 or 2, and index 1 exactly when it has a rational point";
pub const RULE_RATIONAL_POINT: &str = "a rational point is a zero-cycle of degree 1";
pub const RULE_SECTION: &str = "closed points found bound the index from above";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodIndexRelation {
    pub genus: u32,
    pub everywhere_locally_soluble: bool,
    pub index_upper_bound: u64,
    /// Values established at desk scale; `None` when only bounded.
    pub index: Option<u64>,
    pub period: Option<u64>,
    /// For conics: the period of the generic point, equal to the index.
    pub generic_period: Option<u64>,
    pub claims: Vec<Claim>,
}

/// Assembles the period/index claims from local evidence and a closed-point search.
pub fn period_report(curve: &CurveModel, local: &EverywhereReport, index: &IndexReport) -> PeriodIndexRelation {
    use ClaimStatus::*;
    let g = curve.genus();
    let bound = index.index_upper_bound;
    let pointed = index.has_rational_point();
    let mut claims = vec![];
    let (mut i, mut p, mut generic) = (None, None, None);

    if let CurveModel::Conic(_) = curve {
        let value = if pointed { 1 } else { 2 };
        i = Some(value);
        generic = Some(value);
        p = Some(1);
        claims.push(Claim::new(
            format!("period = index = {value}: both lie in {{1, 2}} and equal 1 iff a rational point exists"),
            ProvenAtDeskScale,
            RULE_CONIC,
        ));
        claims.push(Claim::new(
            format!("generic period = index = {value}; the Picard period of the proper conic is 1"),
            Informational,
            "on a dense open subset of a conic the generic period equals the index",
        ));
        return PeriodIndexRelation {
            genus: g,
            everywhere_locally_soluble: local.soluble,
            index_upper_bound: bound,
            index: i,
            period: p,
            generic_period: generic,
            claims,
        };
    }

    if pointed {
        i = Some(1);
        p = Some(1);
        claims.push(Claim::new("I = P = 1", ProvenAtDeskScale, RULE_RATIONAL_POINT));
    }
    if local.soluble {
        claims.push(Claim::new("I = P", ProvenAtDeskScale, RULE_INDEX_EQUALS_PERIOD));
        if !pointed {
            claims.push(Claim::new(format!("P = I divides {bound}"), ProvenAtDeskScale, RULE_SECTION));
            if bound > 1 {
                claims.push(Claim::new(
                    format!(
                        "consistent with I = P = {bound}: no rational point up to height {}",
                        index.height_bound
                    ),
                    Conditional,
                    RULE_SECTION,
                ));
            }
        }
    } else {
        let places: Vec<String> = local.failures.iter().map(|p| p.to_string()).collect();
        claims.push(Claim::new(
            format!("no local point at {}; I = P is not concluded, I divides {bound}", places.join(", ")),
            Informational,
            RULE_SECTION,
        ));
    }
    if let Some(c) = canonical_index_bound(g) {
        claims.push(Claim::new(format!("I divides 2g - 2 = {c}"), ProvenAtDeskScale, RULE_CANONICAL));
    }
    let chain = match (p, i) {
        (Some(p), Some(i)) => format!("P | I | P^{}: {p} | {i} | {}", 2 * g, p.pow(2 * g)),
        _ => format!("P | I | P^{}", 2 * g),
    };
    claims.push(Claim::new(chain, Informational, RULE_PERIOD_INDEX_CHAIN));
    PeriodIndexRelation {
        genus: g,
        everywhere_locally_soluble: local.soluble,
        index_upper_bound: bound,
        index: i,
        period: p,
        generic_period: generic,
        claims,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub genus: u32,
    pub canonical_degree: u64,
    pub required_primes: Vec<u64>,
    pub asserted_primes: Vec<u64>,
    pub concluded: bool,
    pub claim: Claim,
}

/// Under asserted Sha(A)[p] = 0 for every prime p | 2g − 2, an everywhere
/// locally soluble curve of genus g ≥ 2 has a rational zero-cycle of degree 1.
pub fn sha_corollary_report(genus: u32, locally_soluble: bool, sha_trivial_at: &[u64]) -> Result<CorollaryReport> {
    let canonical = canonical_index_bound(genus).ok_or_else(|| Error::InvalidInput(format!("genus {genus} < 2")))?;
    if !locally_soluble {
        return Err(Error::HypothesisUnmet("the curve is not everywhere locally soluble".into()));
    }
    let required = prime_divisors(&canonical.into())?;
    let mut asserted: Vec<u64> = sha_trivial_at.to_vec();
    asserted.sort_unstable();
    asserted.dedup();
    let missing: Vec<u64> = required.iter().copied().filter(|p| !asserted.contains(p)).collect();
    let concluded = missing.is_empty();
    let list = |v: &[u64]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    let claim = if concluded {
        Claim::new(
            format!("rational 0-cycle of degree 1 exists (conditional on Sha[p] = 0 for p in {{{}}}); I = P = 1", list(&required)),
            ClaimStatus::Conditional,
            "I = P divides 2g - 2, and the period has no p-part when Sha[p] = 0",
        )
    } else {
        Claim::new(
            format!("not concluded: no assertion Sha[p] = 0 for p in {{{}}}", list(&missing)),
            ClaimStatus::Informational,
            "I = P divides 2g - 2, and the period has no p-part when Sha[p] = 0",
        )
    };
    Ok(CorollaryReport { genus, canonical_degree: canonical, required_primes: required, asserted_primes: asserted, concluded, claim })
}

/// Convenience form taking a curve and its local evidence.
pub fn sha_corollary_for_curve(curve: &CurveModel, local: &EverywhereReport, sha_trivial_at: &[u64]) -> Result<CorollaryReport> {
    sha_corollary_report(curve.genus(), local.soluble, sha_trivial_at)
}
