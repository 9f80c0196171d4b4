//! Solubility over R and Q_p, everywhere-local certificates, and local indices.

pub mod galois;
pub mod hensel;
pub mod real;

use num::integer::gcd;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::field::ExtField;
use crate::arith::primes::{is_prime, primes_between, valuation};
use crate::curves::{count_points, CurveModel};
use crate::error::{Error, Place, Result};
pub use hensel::{HenselWitness, SearchOutcome};
pub use real::{real_root_count, real_soluble};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalMethod {
    RealSign,
    Hensel,
    RationalPointAtInfinity,
}

/// Solubility verdict at one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub place: Place,
    pub soluble: bool,
    pub method: LocalMethod,
    /// Hensel precision bound used (0 at the real place).
    pub precision: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HenselWitness>,
    /// For insoluble verdicts: the level at which no primitive solution remained.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dead_level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Default precision 2·v_p(disc) + 3, capped so that p^m < 2^62.
pub fn default_precision(curve: &CurveModel, p: u64) -> u32 {
    let v = valuation(&curve.raw_discriminant(), p).min(1000);
    (2 * v + 3).min(galois::max_precision(p))
}

pub fn real_report(curve: &CurveModel) -> LocalReport {
    let (soluble, reason) = real::real_soluble_reason(curve);
    LocalReport {
        place: Place::Real,
        soluble,
        method: LocalMethod::RealSign,
        precision: 0,
        witness: None,
        dead_level: None,
        note: Some(reason),
    }
}

/// Decides solubility over Q_p by Hensel tree search at precision p^m.
pub fn qp_soluble(curve: &CurveModel, p: u64, precision: Option<u32>) -> Result<LocalReport> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let max = galois::max_precision(p);
    let m = precision.unwrap_or_else(|| default_precision(curve, p));
    if m == 0 || m > max {
        return Err(Error::InvalidInput(format!("precision must lie in 1..={max} at p={p}")));
    }
    let place = Place::Prime(p);
    let base = LocalReport {
        place,
        soluble: false,
        method: LocalMethod::Hensel,
        precision: m,
        witness: None,
        dead_level: None,
        note: None,
    };
    let outcome = hensel::search(curve, p, 1, m);
    if let SearchOutcome::Soluble(w) = outcome {
        return Ok(LocalReport { soluble: true, witness: Some(w), ..base });
    }
    if curve.has_rational_infinity() {
        return Ok(LocalReport {
            soluble: true,
            method: LocalMethod::RationalPointAtInfinity,
            note: Some("the point at infinity is rational".into()),
            ..base
        });
    }
    match outcome {
        SearchOutcome::Insoluble { level } => Ok(LocalReport { dead_level: Some(level), ..base }),
        _ => Err(Error::PrecisionExhausted { place, precision: m }),
    }
}

/// Re-checks a report independently of how it was produced.
pub fn verify_local_report(curve: &CurveModel, report: &LocalReport) -> bool {
    match (report.place, report.method) {
        (Place::Real, LocalMethod::RealSign) => real_soluble(curve) == report.soluble,
        (Place::Prime(_), LocalMethod::RationalPointAtInfinity) => report.soluble && curve.has_rational_infinity(),
        (Place::Prime(p), LocalMethod::Hensel) => match (&report.witness, report.soluble) {
            (Some(w), true) => w.degree == 1 && hensel::verify_witness(curve, p, w),
            (None, false) => {
                report.dead_level.is_some_and(|level| {
                    level >= 1
                        && level <= report.precision
                        && matches!(hensel::search(curve, p, 1, level), SearchOutcome::Insoluble { .. })
                })
            }
            _ => false,
        },
        _ => false,
    }
}

#[derive(Debug, Clone, Default)]
pub struct LocalOptions {
    /// Check good primes explicitly up to this bound (at least 4g² + 5).
    pub prime_bound: Option<u64>,
    pub precision: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EverywhereReport {
    pub soluble: bool,
    pub places: Vec<LocalReport>,
    pub bad_primes: Vec<u64>,
    pub prime_bound: u64,
    /// Good primes above `prime_bound` are soluble because the Weil bound forces
    /// a smooth F_p-point, which lifts.
    pub above_bound: String,
    /// Places without a local point, in place order.
    pub failures: Vec<Place>,
}

pub fn weil_prime_bound(genus: u32) -> u64 {
    4 * (genus as u64).pow(2) + 5
}

/// Real place, every bad prime and every good prime up to the bound.
pub fn everywhere_locally_soluble(curve: &CurveModel, opts: &LocalOptions) -> Result<EverywhereReport> {
    let floor = weil_prime_bound(curve.genus());
    let bound = opts.prime_bound.unwrap_or(floor).max(floor);
    let bad = curve.bad_primes()?;
    let mut primes = primes_between(2, bound);
    primes.extend(bad.iter().copied());
    primes.sort_unstable();
    primes.dedup();
    let results: Vec<Result<LocalReport>> = primes.par_iter().map(|&p| qp_soluble(curve, p, opts.precision)).collect();
    let mut places = vec![real_report(curve)];
    for r in results {
        places.push(r?);
    }
    let failures: Vec<Place> = places.iter().filter(|r| !r.soluble).map(|r| r.place).collect();
    Ok(EverywhereReport {
        soluble: failures.is_empty(),
        places,
        bad_primes: bad,
        prime_bound: bound,
        above_bound: format!("good primes p > {bound} are soluble by the Weil bound"),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEvidence {
    pub degree: u32,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<HenselWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralDegree {
    pub degree: u32,
    pub reason: String,
}

/// Local index at a prime: gcd of the degrees of closed points found over
/// unramified extensions, together with structural degrees of the model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalIndexReport {
    pub place: Place,
    pub index: u64,
    pub found: Vec<DegreeEvidence>,
    pub structural: Vec<StructuralDegree>,
    /// Degrees searched without finding a point.
    pub empty_degrees: Vec<u32>,
    /// Degrees not decided (precision or cost budget).
    pub undecided_degrees: Vec<u32>,
    pub max_degree: u32,
    /// Set at bad primes, where ramified extensions are not searched and the index is an upper bound.
    pub unramified_only: bool,
}

/// Residue fields larger than this are not enumerated.
pub const LOCAL_INDEX_FIELD_BUDGET: u64 = 2_000_000;

pub fn structural_degrees(curve: &CurveModel) -> Vec<StructuralDegree> {
    let s = |degree: u32, reason: &str| StructuralDegree { degree, reason: reason.into() };
    let mut out = match curve {
        CurveModel::Conic(_) => vec![s(2, "intersection with a rational line")],
        CurveModel::PlaneCubic(_) => vec![s(3, "intersection with a rational line")],
        CurveModel::Elliptic(_) => vec![],
        CurveModel::Hyperelliptic(_) => vec![s(2, "fiber of the x-coordinate map")],
    };
    if curve.has_rational_infinity() {
        out.push(s(1, "rational point at infinity"));
    }
    out
}

pub fn local_index(curve: &CurveModel, p: u64, precision: Option<u32>) -> Result<LocalIndexReport> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let structural = structural_degrees(curve);
    let max_degree = (2 * curve.genus() + 2).min(4);
    let good = curve.is_good(p);
    let mut index = structural.iter().fold(0u64, |g, s| gcd(g, s.degree as u64));
    let mut found = Vec::new();
    let mut empty_degrees = Vec::new();
    let mut undecided_degrees = Vec::new();
    for d in 1..=max_degree {
        if index == 1 {
            break;
        }
        let q = (p as u128).pow(d);
        let hit = if good {
            if q > LOCAL_INDEX_FIELD_BUDGET as u128 {
                None
            } else {
                let field = ExtField::with_degree(p, d as usize)?;
                Some((count_points(curve, &field)? > 0).then(|| DegreeEvidence {
                    degree: d,
                    method: "smooth point over the residue field".into(),
                    witness: None,
                }))
            }
        } else if q * q > LOCAL_INDEX_FIELD_BUDGET as u128 * 2 {
            None
        } else {
            let m = precision.unwrap_or_else(|| default_precision(curve, p));
            match hensel::search(curve, p, d as usize, m) {
                SearchOutcome::Soluble(w) => {
                    Some(Some(DegreeEvidence { degree: d, method: "hensel".into(), witness: Some(w) }))
                }
                SearchOutcome::Insoluble { .. } => Some(None),
                SearchOutcome::Exhausted { .. } => None,
            }
        };
        match hit {
            Some(Some(ev)) => {
                index = gcd(index, d as u64);
                found.push(ev);
            }
            Some(None) => empty_degrees.push(d),
            None => undecided_degrees.push(d),
        }
    }
    Ok(LocalIndexReport {
        place: Place::Prime(p),
        index,
        found,
        structural,
        empty_degrees,
        undecided_degrees,
        max_degree,
        unramified_only: !good,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::hilbert::hilbert_symbol_int;
    use crate::curves::{Conic, EllipticCurve, HyperellipticCurve, PlaneCubic};
    use num::BigInt;
    use proptest::prelude::*;

    fn conic(a: i64, b: i64, c: i64) -> CurveModel {
        CurveModel::Conic(Conic::new(a, b, c).unwrap())
    }

    fn selmer() -> CurveModel {
        CurveModel::PlaneCubic(PlaneCubic::diagonal(3, 4, 5).unwrap())
    }

    #[test]
    fn selmer_is_everywhere_locally_soluble() {
        let s = selmer();
        for p in [2, 3, 5] {
            let r = qp_soluble(&s, p, None).unwrap();
            assert!(r.soluble, "p={p}");
            assert!(verify_local_report(&s, &r));
        }
        let report = everywhere_locally_soluble(&s, &LocalOptions { prime_bound: Some(41), precision: None }).unwrap();
        assert!(report.soluble);
        assert_eq!(report.places.len(), 1 + primes_between(2, 41).len());
        assert!(report.places.iter().all(|r| verify_local_report(&s, r)));
    }

    #[test]
    fn conic_examples() {
        let r = qp_soluble(&conic(1, 1, 3), 3, None).unwrap();
        assert!(!r.soluble);
        assert!(verify_local_report(&conic(1, 1, 3), &r));
        let rep = everywhere_locally_soluble(&conic(1, 1, 3), &LocalOptions::default()).unwrap();
        assert!(!rep.soluble);
        assert_eq!(rep.failures, vec![Place::Prime(2), Place::Prime(3)]);
        assert!(everywhere_locally_soluble(&conic(1, 1, 2), &LocalOptions::default()).unwrap().soluble);
        let real_fail = everywhere_locally_soluble(&conic(1, 1, -1), &LocalOptions::default()).unwrap();
        assert_eq!(real_fail.failures, vec![Place::Real, Place::Prime(2)]);
    }

    #[test]
    fn insolubility_persists_at_higher_precision() {
        let c = conic(1, 1, 3);
        for m in 2..8 {
            assert!(!qp_soluble(&c, 3, Some(m)).unwrap().soluble);
        }
        // at precision 1 the tree has not died yet
        assert!(matches!(qp_soluble(&c, 3, Some(1)), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn local_indices() {
        let r = local_index(&conic(1, 1, 3), 3, None).unwrap();
        assert_eq!(r.index, 2);
        assert!(r.unramified_only);
        assert_eq!(r.empty_degrees, vec![1]);
        let e = CurveModel::Elliptic(EllipticCurve::new(0, 1).unwrap());
        assert_eq!(local_index(&e, 7, None).unwrap().index, 1);
        let h = CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![-1, 0, 0, 0, 0, 0, -1]).unwrap());
        for p in [3, 5, 7, 11] {
            let idx = local_index(&h, p, None).unwrap().index;
            assert!(2 % idx == 0);
        }
        let s = local_index(&selmer(), 5, None).unwrap();
        assert_eq!(s.index, 1);
    }

    fn relevant_primes(a: i64, b: i64, c: i64) -> Vec<u64> {
        let n = BigInt::from(2) * BigInt::from(a) * BigInt::from(b) * BigInt::from(c);
        crate::arith::primes::prime_divisors(&n).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn conic_solubility_matches_hilbert_symbols(
            a in (-50i64..=50).prop_filter("nonzero", |x| *x != 0),
            b in (-50i64..=50).prop_filter("nonzero", |x| *x != 0),
            c in (-50i64..=50).prop_filter("nonzero", |x| *x != 0),
        ) {
            let curve = conic(a, b, c);
            let CurveModel::Conic(n) = &curve else { unreachable!() };
            let ac = BigInt::from(n.a) * BigInt::from(n.c);
            let bc = BigInt::from(n.b) * BigInt::from(n.c);
            for p in relevant_primes(n.a, n.b, n.c) {
                let r = qp_soluble(&curve, p, None).unwrap();
                let h = hilbert_symbol_int(&ac, &bc, Place::Prime(p)).unwrap();
                prop_assert_eq!(r.soluble, h == 1, "p={}", p);
                prop_assert!(verify_local_report(&curve, &r));
            }
            prop_assert_eq!(real_soluble(&curve), hilbert_symbol_int(&ac, &bc, Place::Real).unwrap() == 1);
        }
    }
}
