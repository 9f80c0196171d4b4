//! The Mordell-Weil sieve: intersect the image of A(Q)/B·A(Q) with the local
//! images of C(F_p) over many good primes, and certify the result.

use std::collections::{BTreeSet, HashSet};

use num::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::coset::{CosetLattice, LatticeShape};
use crate::arith::primes::primes_between;
use crate::curves::{enumerate_points, CurveModel, CurveSpec};
use crate::error::{Error, Result};
use crate::jacobian::{reduce_point, FiniteJacobian, JacobianElement, MordellWeilBasis, QuotientMap, RationalJacobian, RationalPoint};
use crate::json::input_hash;

pub const DEFAULT_MODULUS: u64 = 12;
pub const DEFAULT_PRIME_COUNT: usize = 8;
/// Largest prime at which J(F_p) is enumerated, by genus.
pub const GENUS1_PRIME_CAP: u64 = 199;
pub const GENUS2_PRIME_CAP: u64 = 61;

pub const ASSUMPTIONS: [&str; 2] = [
    "conditional on the supplied basis generating A(Q) modulo torsion and torsion",
    "conditional on finiteness of Sha(A)",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SieveMode {
    Points,
    ZeroCycles,
}

/// The degree-1 divisor used to embed the curve: P ↦ [P − ∞] − β.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseDivisor {
    Infinity,
    Point(RationalPoint),
    /// β given directly as a class in J(Q).
    Class(RationalPoint),
}

impl BaseDivisor {
    fn offset(&self, jac: &RationalJacobian) -> RationalPoint {
        match self {
            BaseDivisor::Infinity => jac.identity(),
            BaseDivisor::Point(p) | BaseDivisor::Class(p) => p.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            BaseDivisor::Infinity => Value::from("infinity"),
            BaseDivisor::Point(p) => serde_json::json!({ "point": p.to_json() }),
            BaseDivisor::Class(p) => serde_json::json!({ "class": p.to_json() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSelection {
    List(Vec<u64>),
    Count(usize),
}

#[derive(Debug, Clone)]
pub struct SieveConfig {
    pub curve: CurveModel,
    pub basis: MordellWeilBasis,
    pub base: BaseDivisor,
    pub modulus: u64,
    pub primes: PrimeSelection,
    pub mode: SieveMode,
}

fn require_embedding(curve: &CurveModel, mode: SieveMode) -> Result<RationalJacobian> {
    match curve {
        CurveModel::Conic(_) | CurveModel::PlaneCubic(_) if mode == SieveMode::Points => Err(Error::EmbeddingUnavailable(
            format!("{} model has no rational degree-1 class supplied", curve.kind()),
        )),
        _ => RationalJacobian::new(curve),
    }
}

impl SieveConfig {
    pub fn new(curve: CurveModel, basis: MordellWeilBasis, base: BaseDivisor, modulus: u64, primes: PrimeSelection, mode: SieveMode) -> Result<Self> {
        let jac = require_embedding(&curve, mode)?;
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        match &base {
            BaseDivisor::Infinity if !curve.has_rational_infinity() => {
                return Err(Error::EmbeddingUnavailable("no rational point at infinity".into()))
            }
            BaseDivisor::Point(p) | BaseDivisor::Class(p) if !jac.contains(p) => return Err(Error::PointNotOnCurve),
            _ => {}
        }
        if primes == PrimeSelection::Count(0) || primes == PrimeSelection::List(vec![]) {
            return Err(Error::NoAdmissiblePrimes);
        }
        Ok(SieveConfig { curve, basis, base, modulus, primes, mode })
    }

    /// Parses the config file format:
    /// `{"curve", "basis", "base", "modulus", "primes" | "prime_count", "mode"}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("config must be an object".into()))?;
        const KEYS: [&str; 7] = ["curve", "basis", "base", "modulus", "primes", "prime_count", "mode"];
        if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown config key {k}")));
        }
        let spec: CurveSpec = serde_json::from_value(obj.get("curve").cloned().ok_or_else(|| Error::Parse("config lacks a curve".into()))?)
            .map_err(|e| Error::Parse(format!("curve: {e}")))?;
        let curve = CurveModel::try_from(spec)?;
        let mode = match obj.get("mode") {
            None => SieveMode::Points,
            Some(m) => serde_json::from_value(m.clone()).map_err(|e| Error::Parse(format!("mode: {e}")))?,
        };
        require_embedding(&curve, mode)?;
        let basis = match obj.get("basis") {
            None => MordellWeilBasis::empty(),
            Some(b) => MordellWeilBasis::from_json(&curve, b)?,
        };
        let base = match obj.get("base") {
            None => BaseDivisor::Infinity,
            Some(Value::String(s)) if s == "infinity" => BaseDivisor::Infinity,
            Some(Value::Object(m)) if m.len() == 1 && m.contains_key("point") => {
                let v = &m["point"];
                if !v.is_array() {
                    return Err(Error::Parse("base point must be [x, y]".into()));
                }
                BaseDivisor::Point(RationalPoint::from_json(&curve, v)?)
            }
            Some(Value::Object(m)) if m.len() == 1 && m.contains_key("class") => {
                BaseDivisor::Class(RationalPoint::from_json(&curve, &m["class"])?)
            }
            Some(other) => return Err(Error::Parse(format!("unrecognized base {other}"))),
        };
        let modulus = match obj.get("modulus") {
            None => DEFAULT_MODULUS,
            Some(m) => m.as_u64().filter(|&m| m >= 1).ok_or_else(|| Error::Parse(format!("modulus must be a positive integer, got {m}")))?,
        };
        let primes = match (obj.get("primes"), obj.get("prime_count")) {
            (Some(_), Some(_)) => return Err(Error::Parse("give either primes or prime_count".into())),
            (Some(Value::Array(ps)), None) => PrimeSelection::List(
                ps.iter()
                    .map(|p| p.as_u64().ok_or_else(|| Error::Parse(format!("bad prime {p}"))))
                    .collect::<Result<_>>()?,
            ),
            (Some(other), None) => return Err(Error::Parse(format!("primes must be a list, got {other}"))),
            (None, Some(n)) => PrimeSelection::Count(n.as_u64().ok_or_else(|| Error::Parse(format!("bad prime_count {n}")))? as usize),
            (None, None) => PrimeSelection::Count(DEFAULT_PRIME_COUNT),
        };
        SieveConfig::new(curve, basis, base, modulus, primes, mode)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::json!({
            "curve": self.curve.to_spec(),
            "basis": self.basis.to_json(),
            "base": self.base.to_json(),
            "modulus": self.modulus,
            "mode": self.mode,
        });
        match &self.primes {
            PrimeSelection::List(ps) => v["primes"] = serde_json::json!(ps),
            PrimeSelection::Count(n) => v["prime_count"] = serde_json::json!(n),
        }
        v
    }

    pub fn input_hash(&self) -> String {
        input_hash(&self.to_json())
    }

    /// Free generators first, then torsion generators.
    fn generators(&self) -> Vec<&RationalPoint> {
        self.basis.free.iter().chain(self.basis.torsion.iter().map(|t| &t.point)).collect()
    }

    pub fn shape(&self) -> LatticeShape {
        let torsion = self.basis.torsion.iter().map(|t| t.order.gcd(&self.modulus)).collect();
        LatticeShape::new(self.basis.rank(), self.modulus, torsion).expect("positive moduli")
    }

    fn prime_cap(&self) -> u64 {
        if self.curve.genus() == 1 {
            GENUS1_PRIME_CAP
        } else {
            GENUS2_PRIME_CAP
        }
    }

    /// Reason p is not admissible, or None.
    pub fn inadmissibility(&self, p: u64) -> Option<String> {
        if p < 3 || !crate::arith::primes::is_prime(p) {
            return Some("not an odd prime".into());
        }
        if !self.curve.is_good(p) {
            return Some("bad reduction".into());
        }
        if p > self.prime_cap() {
            return Some(format!("above the enumeration cap {}", self.prime_cap()));
        }
        if self.modulus.is_multiple_of(p) || self.basis.torsion.iter().any(|t| t.order % p == 0) {
            return Some("divides the modulus or a torsion order".into());
        }
        let jac = RationalJacobian::new(&self.curve).ok()?;
        let beta = self.base.offset(&jac);
        if self.generators().into_iter().chain([&beta]).any(|g| reduce_point(&self.curve, g, p).is_err()) {
            return Some("basis or base does not reduce integrally".into());
        }
        None
    }

    pub fn is_admissible(&self, p: u64) -> bool {
        self.inadmissibility(p).is_none()
    }

    /// Ascending, deduplicated list of sieving primes.
    pub fn select_primes(&self) -> Result<Vec<u64>> {
        let primes: Vec<u64> = match &self.primes {
            PrimeSelection::List(ps) => {
                if let Some(&p) = ps.iter().find(|&&p| !self.is_admissible(p)) {
                    return Err(Error::InadmissiblePrime(p));
                }
                let set: BTreeSet<u64> = ps.iter().copied().collect();
                set.into_iter().collect()
            }
            PrimeSelection::Count(n) => admissible_primes(self, *n),
        };
        if primes.is_empty() {
            return Err(Error::NoAdmissiblePrimes);
        }
        Ok(primes)
    }
}

/// The first `count` admissible primes ≥ 5.
pub fn admissible_primes(config: &SieveConfig, count: usize) -> Vec<u64> {
    primes_between(5, config.prime_cap()).into_iter().filter(|&p| config.is_admissible(p)).take(count).collect()
}

/// { [P − ∞] − β : P ∈ C(F_p) } in points mode; all of J(F_p) in zero-cycle mode.
pub fn image_set(curve: &CurveModel, p: u64, base: &BaseDivisor, mode: SieveMode) -> Result<BTreeSet<JacobianElement>> {
    let jac = FiniteJacobian::over_prime(curve, p)?;
    let beta = reduce_point(curve, &base.offset(&RationalJacobian::new(curve)?), p)?;
    image_in(&jac, &beta, mode)
}

fn image_in(jac: &FiniteJacobian, beta: &JacobianElement, mode: SieveMode) -> Result<BTreeSet<JacobianElement>> {
    match mode {
        SieveMode::ZeroCycles => Ok(jac.elements()?.into_iter().collect()),
        SieveMode::Points => enumerate_points(jac.curve(), jac.field())?
            .iter()
            .map(|pt| Ok(jac.sub(&jac.point_class(pt)?, beta)))
            .collect(),
    }
}

/// Per-prime data recorded in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub prime: u64,
    pub group_order: u64,
    pub image_size: u64,
    pub quotient_size: u64,
    pub admissible: CosetLattice,
}

/// W_p: cosets of A(Q)/B·A(Q) whose reduction lands in image + B·J(F_p).
pub fn admissible_cosets(config: &SieveConfig, p: u64) -> Result<PrimeEntry> {
    if !config.curve.is_good(p) {
        return Err(Error::BadReduction(p));
    }
    if !config.is_admissible(p) {
        return Err(Error::InadmissiblePrime(p));
    }
    let curve = &config.curve;
    let jac = FiniteJacobian::over_prime(curve, p)?;
    let quotient = QuotientMap::new(&jac, config.modulus)?;
    let rational = RationalJacobian::new(curve)?;
    let beta = reduce_point(curve, &config.base.offset(&rational), p)?;
    let image = image_in(&jac, &beta, config.mode)?;
    let image_labels: HashSet<usize> = image.iter().map(|x| quotient.label(x).expect("image lies in J(F_p)")).collect();

    let shape = config.shape();
    let radices = shape.radices();
    let reduced: Vec<JacobianElement> =
        config.generators().into_iter().map(|g| reduce_point(curve, g, p)).collect::<Result<_>>()?;
    // multiples[i][c] = c · g_i mod p
    let multiples: Vec<Vec<JacobianElement>> = reduced
        .iter()
        .zip(&radices)
        .map(|(g, &m)| {
            let mut row = vec![jac.identity()];
            for _ in 1..m {
                row.push(jac.add(row.last().unwrap(), g));
            }
            row
        })
        .collect();
    let admissible = shape.tuples().filter(|t| {
        let sum = t.iter().enumerate().fold(jac.identity(), |acc, (i, &c)| jac.add(&acc, &multiples[i][c as usize]));
        image_labels.contains(&quotient.label(&sum).expect("sum lies in J(F_p)"))
    });
    let admissible = CosetLattice::new(shape.clone(), admissible.collect::<Vec<_>>())?;
    Ok(PrimeEntry {
        prime: p,
        group_order: quotient.group_order() as u64,
        image_size: image.len() as u64,
        quotient_size: quotient.label_count() as u64,
        admissible,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionStep {
    pub prime: u64,
    pub survivors: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "cosets", rename_all = "snake_case")]
pub enum Verdict {
    Empty,
    Survivors(Vec<Vec<u64>>),
}

impl Verdict {
    pub fn is_empty(&self) -> bool {
        matches!(self, Verdict::Empty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SieveCertificate {
    pub tool_version: String,
    pub input_hash: String,
    pub config: Value,
    pub shape: LatticeShape,
    pub primes: Vec<u64>,
    pub entries: Vec<PrimeEntry>,
    pub steps: Vec<IntersectionStep>,
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
}

fn replay(shape: &LatticeShape, entries: &[&PrimeEntry]) -> Result<(Vec<IntersectionStep>, Verdict)> {
    let mut running = CosetLattice::full(shape.clone());
    let mut steps = vec![];
    for e in entries {
        running = running.intersect(&e.admissible)?;
        steps.push(IntersectionStep { prime: e.prime, survivors: running.admissible.iter().cloned().collect() });
    }
    let verdict = if running.is_empty() {
        Verdict::Empty
    } else {
        Verdict::Survivors(running.admissible.into_iter().collect())
    };
    Ok((steps, verdict))
}

/// Runs the sieve. Per-prime work runs in parallel; intersections are taken
/// in ascending prime order, so the certificate does not depend on scheduling.
pub fn sieve_run(config: &SieveConfig) -> Result<SieveCertificate> {
    let primes = config.select_primes()?;
    let entries: Vec<PrimeEntry> = primes.par_iter().map(|&p| admissible_cosets(config, p)).collect::<Result<_>>()?;
    let shape = config.shape();
    let (steps, verdict) = replay(&shape, &entries.iter().collect::<Vec<_>>())?;
    Ok(SieveCertificate {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input_hash: config.input_hash(),
        config: config.to_json(),
        shape,
        primes,
        entries,
        steps,
        verdict,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub valid: bool,
    pub first_mismatch: Option<String>,
}

impl Verification {
    fn fail(msg: impl Into<String>) -> Self {
        Verification { valid: false, first_mismatch: Some(msg.into()) }
    }
}

/// Recomputes every W_p from the echoed configuration and replays the
/// intersections. The order in which primes are listed does not matter.
pub fn verify_certificate(cert: &SieveCertificate) -> Verification {
    if cert.tool_version != env!("CARGO_PKG_VERSION") {
        return Verification::fail(format!("tool_version: produced by {}", cert.tool_version));
    }
    if cert.assumptions.iter().map(String::as_str).ne(ASSUMPTIONS) {
        return Verification::fail("assumptions");
    }
    let config = match SieveConfig::from_json(&cert.config) {
        Ok(c) => c,
        Err(e) => return Verification::fail(format!("config: {e}")),
    };
    if config.input_hash() != cert.input_hash {
        return Verification::fail("input_hash");
    }
    if config.shape() != cert.shape {
        return Verification::fail("shape");
    }
    let listed: BTreeSet<u64> = cert.primes.iter().copied().collect();
    let entry_primes: BTreeSet<u64> = cert.entries.iter().map(|e| e.prime).collect();
    if listed != entry_primes || listed.len() != cert.entries.len() || listed.len() != cert.primes.len() {
        return Verification::fail("primes");
    }
    match &config.primes {
        PrimeSelection::List(ps) if ps.iter().copied().collect::<BTreeSet<_>>() != listed => {
            return Verification::fail("primes: differ from the configured list")
        }
        PrimeSelection::Count(_) if config.select_primes().ok().map(|v| v.into_iter().collect::<BTreeSet<_>>()) != Some(listed.clone()) => {
            return Verification::fail("primes: differ from the default selection")
        }
        _ => {}
    }
    let mut entries: Vec<&PrimeEntry> = cert.entries.iter().collect();
    entries.sort_by_key(|e| e.prime);
    let recomputed: Vec<Result<PrimeEntry>> = entries.par_iter().map(|e| admissible_cosets(&config, e.prime)).collect();
    for (e, r) in entries.iter().zip(recomputed) {
        match r {
            Ok(r) if r == **e => {}
            Ok(_) => return Verification::fail(format!("entries[p={}]", e.prime)),
            Err(err) => return Verification::fail(format!("entries[p={}]: {err}", e.prime)),
        }
    }
    let (steps, verdict) = match replay(&cert.shape, &entries) {
        Ok(x) => x,
        Err(e) => return Verification::fail(format!("replay: {e}")),
    };
    let mut cert_steps = cert.steps.clone();
    cert_steps.sort_by_key(|s| s.prime);
    if let Some((i, _)) = steps.iter().zip(&cert_steps).enumerate().find(|(_, (a, b))| a != b) {
        return Verification::fail(format!("steps[p={}]", steps[i].prime));
    }
    if steps.len() != cert_steps.len() {
        return Verification::fail("steps");
    }
    if verdict != cert.verdict {
        return Verification::fail("verdict");
    }
    Verification { valid: true, first_mismatch: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{EllipticCurve, HyperellipticCurve};
    use crate::json::int;
    use serde_json::json;

    fn e_config(modulus: u64, primes: PrimeSelection) -> SieveConfig {
        let curve = CurveModel::Elliptic(EllipticCurve::new(0, -2).unwrap());
        let basis = MordellWeilBasis::from_json(&curve, &json!({"free": [{"point": [3, 5]}]})).unwrap();
        SieveConfig::new(curve, basis, BaseDivisor::Infinity, modulus, primes, SieveMode::Points).unwrap()
    }

    #[test]
    fn elliptic_example() {
        let cert = sieve_run(&e_config(2, PrimeSelection::List(vec![11, 5]))).unwrap();
        assert_eq!(cert.primes, vec![5, 11]);
        // with base ∞ the image is the whole group, so nothing is excluded
        assert_eq!(cert.verdict, Verdict::Survivors(vec![vec![0], vec![1]]));
        assert!(verify_certificate(&cert).valid);
    }

    #[test]
    fn image_set_with_identity_base_is_the_group() {
        let c = e_config(2, PrimeSelection::Count(1));
        for p in [5u64, 7, 11] {
            let image = image_set(&c.curve, p, &BaseDivisor::Infinity, SieveMode::Points).unwrap();
            assert_eq!(image.len() as u64, crate::jacobian::jacobian_order(&c.curve, p).unwrap());
        }
    }

    #[test]
    fn genus2_image_is_smaller_than_the_group() {
        let curve = CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, -1, 0, 0, 0, 1]).unwrap());
        for p in primes_between(7, 40) {
            if !curve.is_good(p) {
                continue;
            }
            let image = image_set(&curve, p, &BaseDivisor::Infinity, SieveMode::Points).unwrap();
            let points = crate::curves::count_points(&curve, &crate::arith::field::ExtField::prime(p).unwrap()).unwrap();
            assert_eq!(image.len() as u64, points);
            assert!(points < crate::jacobian::jacobian_order(&curve, p).unwrap());
        }
    }

    #[test]
    fn tampering_and_reordering() {
        let cert = sieve_run(&e_config(6, PrimeSelection::Count(4))).unwrap();
        assert!(verify_certificate(&cert).valid);
        let mut reordered = cert.clone();
        reordered.primes.reverse();
        reordered.entries.reverse();
        reordered.steps.reverse();
        assert!(verify_certificate(&reordered).valid);
        let mut tampered = cert.clone();
        let lattice = &mut tampered.entries[1].admissible;
        let t = lattice.shape.tuples().find(|t| !lattice.contains(t));
        match t {
            Some(t) => lattice.admissible.insert(t),
            None => lattice.admissible.pop_first().is_some(),
        };
        let v = verify_certificate(&tampered);
        assert!(!v.valid);
        assert_eq!(v.first_mismatch.as_deref(), Some(format!("entries[p={}]", cert.primes[1]).as_str()));
    }

    #[test]
    fn selection_and_errors() {
        let c = e_config(12, PrimeSelection::Count(8));
        let primes = c.select_primes().unwrap();
        assert_eq!(primes.len(), 8);
        assert!(primes.iter().all(|&p| p >= 5 && c.curve.is_good(p)));
        let bad = e_config(12, PrimeSelection::List(vec![3]));
        assert_eq!(bad.select_primes(), Err(Error::InadmissiblePrime(3)));
        let selmer = json!({"curve": {"type": "plane_cubic", "coeffs": [3, 0, 0, 0, 0, 0, 0, 4, 0, 5]}});
        assert!(matches!(SieveConfig::from_json(&selmer), Err(Error::EmbeddingUnavailable(_))));
    }

    #[test]
    fn zero_cycle_mode_is_unconstrained() {
        let curve = CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, 0, 0, 0, 0, 1]).unwrap());
        let jac = RationalJacobian::new(&curve).unwrap();
        let beta = jac.mul_signed(&jac.point_class(int(0), int(1)), 2);
        let config = SieveConfig::new(curve, MordellWeilBasis::empty(), BaseDivisor::Class(beta), 12, PrimeSelection::Count(6), SieveMode::ZeroCycles).unwrap();
        let cert = sieve_run(&config).unwrap();
        assert!(cert.entries.iter().all(|e| e.admissible.is_full()));
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = sieve_run(&e_config(4, PrimeSelection::Count(3))).unwrap();
        let text = crate::json::canonical_string(&cert);
        let back: SieveCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back).valid);
    }
}
