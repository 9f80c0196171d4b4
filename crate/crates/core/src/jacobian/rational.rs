//! Exact arithmetic in J(Q), reduction modulo good primes, and user-supplied
//! Mordell-Weil bases.

use num::{BigInt, BigRational, Integer};
use serde::Serialize;
use serde_json::Value;

use super::cantor::{HyperJacobian, Mumford};
use super::ec::{EcGroup, EcPoint};
use super::finite::{FiniteJacobian, JacobianElement};
use crate::arith::field::{ExtField, Field, Rationals};
use crate::arith::primes::primes_between;
use crate::curves::CurveModel;
use crate::error::{Error, Result};
use crate::json::WireRational;

/// A point of J(Q).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RationalPoint {
    Ec(EcPoint<BigRational>),
    Mumford(Mumford<BigRational>),
}

impl RationalPoint {
    /// Parses `"infinity"`, `[x, y]` or `{"u": [...], "v": [...]}` with rational
    /// entries given as integers or `[num, den]`.
    pub fn from_json(curve: &CurveModel, value: &Value) -> Result<Self> {
        let jac = RationalJacobian::new(curve)?;
        let rational = |v: &Value| -> Result<BigRational> {
            serde_json::from_value::<WireRational>(v.clone())
                .map(|w| w.0)
                .map_err(|e| Error::Parse(format!("bad rational {v}: {e}")))
        };
        let list = |v: &Value| -> Result<Vec<BigRational>> {
            v.as_array().ok_or_else(|| Error::Parse(format!("expected a list, got {v}")))?.iter().map(rational).collect()
        };
        let point = match value {
            Value::String(s) if s == "infinity" || s == "identity" => jac.identity(),
            Value::Array(xy) if xy.len() == 2 => {
                let (x, y) = (rational(&xy[0])?, rational(&xy[1])?);
                jac.point_class(x, y)
            }
            Value::Object(map) => {
                let (Some(u), Some(v)) = (map.get("u"), map.get("v")) else {
                    return Err(Error::Parse("divisor needs keys u and v".into()));
                };
                if map.len() != 2 {
                    return Err(Error::Parse("divisor has unexpected keys".into()));
                }
                let ring = crate::arith::poly::PolyRing::new(Rationals);
                match &jac {
                    RationalJacobian::Genus2(_) => {
                        RationalPoint::Mumford(Mumford { u: ring.from_coeffs(list(u)?), v: ring.from_coeffs(list(v)?) })
                    }
                    RationalJacobian::Ec(_) => return Err(Error::Parse("Mumford divisor given for an elliptic curve".into())),
                }
            }
            other => return Err(Error::Parse(format!("unrecognized point {other}"))),
        };
        if !jac.contains(&point) {
            return Err(match point {
                RationalPoint::Ec(_) => Error::PointNotOnCurve,
                RationalPoint::Mumford(_) => Error::InvalidDivisor("not a reduced divisor on this curve".into()),
            });
        }
        Ok(point)
    }

    pub fn to_json(&self) -> Value {
        let w = |q: &BigRational| serde_json::to_value(WireRational(q.clone())).expect("serializable");
        match self {
            RationalPoint::Ec(EcPoint::Identity) => Value::from("infinity"),
            RationalPoint::Ec(EcPoint::Affine { x, y }) => Value::Array(vec![w(x), w(y)]),
            RationalPoint::Mumford(d) => serde_json::json!({
                "u": d.u.coeffs().iter().map(w).collect::<Vec<_>>(),
                "v": d.v.coeffs().iter().map(w).collect::<Vec<_>>(),
            }),
        }
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// The group J(Q) for an elliptic curve or a genus-2 curve y² = f(x), deg f = 5.
#[derive(Debug, Clone)]
pub enum RationalJacobian {
    Ec(EcGroup<Rationals>),
    Genus2(HyperJacobian<Rationals>),
}

impl RationalJacobian {
    pub fn new(curve: &CurveModel) -> Result<Self> {
        match curve {
            CurveModel::Elliptic(e) => Ok(RationalJacobian::Ec(EcGroup::new(Rationals, e.a, e.b))),
            CurveModel::Hyperelliptic(h) if h.degree() == 5 => Ok(RationalJacobian::Genus2(HyperJacobian::new(Rationals, &h.f))),
            CurveModel::Hyperelliptic(_) => Err(Error::UnsupportedModel("group law needs a degree-5 model".into())),
            other => Err(Error::UnsupportedModel(format!("no Jacobian arithmetic for {} models", other.kind()))),
        }
    }

    pub fn identity(&self) -> RationalPoint {
        match self {
            RationalJacobian::Ec(_) => RationalPoint::Ec(EcPoint::Identity),
            RationalJacobian::Genus2(j) => RationalPoint::Mumford(j.identity()),
        }
    }

    /// The class of the affine point (x, y) (minus the point at infinity).
    pub fn point_class(&self, x: BigRational, y: BigRational) -> RationalPoint {
        match self {
            RationalJacobian::Ec(_) => RationalPoint::Ec(EcPoint::Affine { x, y }),
            RationalJacobian::Genus2(j) => RationalPoint::Mumford(j.point_class(&x, &y)),
        }
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        match (self, p) {
            (RationalJacobian::Ec(g), RationalPoint::Ec(pt)) => g.contains(pt),
            (RationalJacobian::Genus2(j), RationalPoint::Mumford(d)) => j.contains(d),
            _ => false,
        }
    }

    pub fn is_identity(&self, p: &RationalPoint) -> bool {
        *p == self.identity()
    }

    pub fn add(&self, a: &RationalPoint, b: &RationalPoint) -> RationalPoint {
        match (self, a, b) {
            (RationalJacobian::Ec(g), RationalPoint::Ec(p), RationalPoint::Ec(q)) => RationalPoint::Ec(g.add(p, q)),
            (RationalJacobian::Genus2(j), RationalPoint::Mumford(p), RationalPoint::Mumford(q)) => {
                RationalPoint::Mumford(j.add(p, q))
            }
            _ => panic!("element kind does not match the group"),
        }
    }

    pub fn neg(&self, a: &RationalPoint) -> RationalPoint {
        match (self, a) {
            (RationalJacobian::Ec(g), RationalPoint::Ec(p)) => RationalPoint::Ec(g.neg(p)),
            (RationalJacobian::Genus2(j), RationalPoint::Mumford(d)) => RationalPoint::Mumford(j.neg(d)),
            _ => panic!("element kind does not match the group"),
        }
    }

    pub fn mul_signed(&self, a: &RationalPoint, n: i64) -> RationalPoint {
        match (self, a) {
            (RationalJacobian::Ec(g), RationalPoint::Ec(p)) => RationalPoint::Ec(g.mul_signed(p, n)),
            (RationalJacobian::Genus2(j), RationalPoint::Mumford(d)) => RationalPoint::Mumford(j.mul_signed(d, n)),
            _ => panic!("element kind does not match the group"),
        }
    }
}

fn reduce_rational(q: &BigRational, p: u64, field: &ExtField) -> Option<crate::arith::field::FieldElement> {
    let pb = BigInt::from(p);
    if q.denom().is_multiple_of(&pb) {
        return None;
    }
    let num = field.from_bigint(q.numer());
    let den = field.from_bigint(q.denom());
    Some(field.mul(&num, &field.inv(&den).expect("denominator prime to p")))
}

/// Reduction J(Q) → J(F_p) at a good prime.
///
/// An elliptic point whose coordinates have p in the denominator lies in the
/// kernel of reduction and maps to the identity. A Mumford divisor with p in a
/// denominator gives `NonIntegralAtP`.
pub fn reduce_point(curve: &CurveModel, point: &RationalPoint, p: u64) -> Result<JacobianElement> {
    if !curve.is_good(p) {
        return Err(Error::BadReduction(p));
    }
    let field = ExtField::prime(p)?;
    let reduced = match point {
        RationalPoint::Ec(EcPoint::Identity) => JacobianElement::Ec(EcPoint::Identity),
        RationalPoint::Ec(EcPoint::Affine { x, y }) => match (reduce_rational(x, p, &field), reduce_rational(y, p, &field)) {
            (Some(x), Some(y)) => JacobianElement::Ec(EcPoint::Affine { x, y }),
            _ => JacobianElement::Ec(EcPoint::Identity),
        },
        RationalPoint::Mumford(d) => {
            let ring = crate::arith::poly::PolyRing::new(field);
            let coeffs = |poly: &crate::arith::poly::Poly<BigRational>| -> Result<Vec<_>> {
                poly.coeffs().iter().map(|c| reduce_rational(c, p, &field).ok_or(Error::NonIntegralAtP(p))).collect()
            };
            JacobianElement::Mumford(Mumford { u: ring.from_coeffs(coeffs(&d.u)?), v: ring.from_coeffs(coeffs(&d.v)?) })
        }
    };
    Ok(reduced)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionGenerator {
    pub point: RationalPoint,
    pub order: u64,
}

/// Generators of a subgroup of J(Q) supplied by the user.
///
/// Membership and torsion orders are checked exactly; free generators are
/// checked to have infinite order. Independence is taken on trust.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MordellWeilBasis {
    pub torsion: Vec<TorsionGenerator>,
    pub free: Vec<RationalPoint>,
    pub note: String,
}

const TRUST_NOTE: &str = "user-supplied; independence and saturation not verified";

impl MordellWeilBasis {
    pub fn new(curve: &CurveModel, torsion: Vec<(RationalPoint, u64)>, free: Vec<RationalPoint>) -> Result<Self> {
        let jac = RationalJacobian::new(curve)?;
        for pt in torsion.iter().map(|t| &t.0).chain(&free) {
            if !jac.contains(pt) {
                return Err(Error::InvalidBasis(format!("{} is not on the Jacobian", pt.to_json())));
            }
        }
        for (pt, n) in &torsion {
            check_exact_order(&jac, pt, *n)?;
        }
        for pt in &free {
            if !has_infinite_order(curve, &jac, pt)? {
                return Err(Error::InvalidBasis(format!("{} is torsion", pt.to_json())));
            }
        }
        Ok(MordellWeilBasis {
            torsion: torsion.into_iter().map(|(point, order)| TorsionGenerator { point, order }).collect(),
            free,
            note: TRUST_NOTE.into(),
        })
    }

    pub fn empty() -> Self {
        MordellWeilBasis { torsion: vec![], free: vec![], note: TRUST_NOTE.into() }
    }

    /// `{"torsion": [{"point": P, "order": n}], "free": [{"point": P}]}`
    pub fn from_json(curve: &CurveModel, value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("basis must be an object".into()))?;
        if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "torsion" | "free" | "note")) {
            return Err(Error::Parse(format!("unknown basis key {k}")));
        }
        let entries = |key: &str| -> Result<Vec<Value>> {
            match obj.get(key) {
                None => Ok(vec![]),
                Some(Value::Array(a)) => Ok(a.clone()),
                Some(other) => Err(Error::Parse(format!("{key} must be a list, got {other}"))),
            }
        };
        let point_of = |e: &Value| -> Result<RationalPoint> {
            let pt = e.get("point").ok_or_else(|| Error::Parse(format!("entry {e} lacks a point")))?;
            RationalPoint::from_json(curve, pt).map_err(|err| Error::InvalidBasis(format!("{pt}: {err}")))
        };
        let mut torsion = vec![];
        for e in entries("torsion")? {
            let order = e
                .get("order")
                .and_then(|o| o.as_u64())
                .filter(|&o| o >= 1)
                .ok_or_else(|| Error::Parse(format!("torsion entry {e} needs a positive order")))?;
            torsion.push((point_of(&e)?, order));
        }
        let free = entries("free")?.iter().map(point_of).collect::<Result<Vec<_>>>()?;
        MordellWeilBasis::new(curve, torsion, free)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "torsion": self.torsion.iter().map(|t| serde_json::json!({"point": t.point.to_json(), "order": t.order})).collect::<Vec<_>>(),
            "free": self.free.iter().map(|p| serde_json::json!({"point": p.to_json()})).collect::<Vec<_>>(),
        })
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }

    pub fn torsion_orders(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.order).collect()
    }

    /// Σ cᵢ·gᵢ over Q, coefficients listed free first, then torsion.
    pub fn combination(&self, jac: &RationalJacobian, coeffs: &[i64]) -> RationalPoint {
        let gens = self.free.iter().chain(self.torsion.iter().map(|t| &t.point));
        gens.zip(coeffs).fold(jac.identity(), |acc, (g, &c)| jac.add(&acc, &jac.mul_signed(g, c)))
    }
}

fn check_exact_order(jac: &RationalJacobian, pt: &RationalPoint, n: u64) -> Result<()> {
    let n_i64 = i64::try_from(n).map_err(|_| Error::InvalidBasis(format!("order {n} too large")))?;
    if !jac.is_identity(&jac.mul_signed(pt, n_i64)) {
        return Err(Error::InvalidBasis(format!("{n}·{} is not the identity", pt.to_json())));
    }
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m.is_multiple_of(q) {
            while m.is_multiple_of(q) {
                m /= q;
            }
            if jac.is_identity(&jac.mul_signed(pt, n_i64 / q as i64)) {
                return Err(Error::InvalidBasis(format!("{} has order dividing {}", pt.to_json(), n / q)));
            }
        }
        q += 1;
    }
    Ok(())
}

/// A torsion point reduces injectively at good odd primes, so two good primes
/// with different reduced orders prove infinite order. Failing that, the
/// common reduced order n is tested exactly: n·P = 0 over Q iff P is torsion.
fn has_infinite_order(curve: &CurveModel, jac: &RationalJacobian, pt: &RationalPoint) -> Result<bool> {
    if jac.is_identity(pt) {
        return Ok(false);
    }
    let mut seen: Option<u64> = None;
    let mut tried = 0;
    for p in primes_between(3, 400) {
        if tried == 6 || !curve.is_good(p) {
            continue;
        }
        let reduced = match reduce_point(curve, pt, p) {
            Ok(r) => r,
            Err(Error::NonIntegralAtP(_)) => continue,
            Err(e) => return Err(e),
        };
        let order = FiniteJacobian::over_prime(curve, p)?.element_order(&reduced);
        tried += 1;
        match seen {
            Some(o) if o != order => return Ok(true),
            _ => seen = Some(order),
        }
    }
    let n = seen.ok_or_else(|| Error::InvalidBasis("no usable prime to test the order".into()))?;
    Ok(!jac.is_identity(&jac.mul_signed(pt, n as i64)))
}

/// Smallest n ≥ 1 with n·P = 0 over Q, if P is torsion (searching up to `limit`).
pub fn torsion_order(jac: &RationalJacobian, pt: &RationalPoint, limit: u64) -> Option<u64> {
    let mut acc = pt.clone();
    for n in 1..=limit {
        if jac.is_identity(&acc) {
            return Some(n);
        }
        acc = jac.add(&acc, pt);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{EllipticCurve, HyperellipticCurve};
    use crate::json::{int, rat};
    use serde_json::json;

    fn e_minus_2() -> CurveModel {
        CurveModel::Elliptic(EllipticCurve::new(0, -2).unwrap())
    }

    fn g2() -> CurveModel {
        CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, 0, 0, 0, 0, 1]).unwrap())
    }

    #[test]
    fn reduce_examples() {
        let c = e_minus_2();
        let jac = RationalJacobian::new(&c).unwrap();
        let p = jac.point_class(int(3), int(5));
        let f5 = ExtField::prime(5).unwrap();
        assert_eq!(
            reduce_point(&c, &p, 5).unwrap(),
            JacobianElement::Ec(EcPoint::Affine { x: f5.from_u64(3), y: f5.from_u64(0) })
        );
        assert_eq!(reduce_point(&c, &jac.identity(), 5).unwrap(), JacobianElement::Ec(EcPoint::Identity));
        // 2·(3,5) = (129/100, −383/1000) lies in the kernel of reduction at 5
        let two = jac.mul_signed(&p, 2);
        assert_eq!(reduce_point(&c, &two, 5).unwrap(), JacobianElement::Ec(EcPoint::Identity));
        assert_eq!(reduce_point(&c, &p, 3), Err(Error::BadReduction(3)));
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let c = e_minus_2();
        let jac = RationalJacobian::new(&c).unwrap();
        let p = jac.point_class(int(3), int(5));
        for (m, n) in [(1, 1), (2, -1), (3, 2), (-2, 5), (4, 3)] {
            let (a, b) = (jac.mul_signed(&p, m), jac.mul_signed(&p, n));
            for prime in [5u64, 7, 11, 13, 29, 31] {
                let fj = FiniteJacobian::over_prime(&c, prime).unwrap();
                let lhs = reduce_point(&c, &jac.add(&a, &b), prime).unwrap();
                let rhs = fj.add(&reduce_point(&c, &a, prime).unwrap(), &reduce_point(&c, &b, prime).unwrap());
                assert_eq!(lhs, rhs, "m={m} n={n} p={prime}");
            }
        }
        let g = g2();
        let jac = RationalJacobian::new(&g).unwrap();
        let t1 = jac.point_class(int(0), int(1));
        let t2 = jac.point_class(int(-1), int(0));
        for prime in [3u64, 7, 11, 13] {
            let fj = FiniteJacobian::over_prime(&g, prime).unwrap();
            let lhs = reduce_point(&g, &jac.add(&t1, &t2), prime).unwrap();
            let rhs = fj.add(&reduce_point(&g, &t1, prime).unwrap(), &reduce_point(&g, &t2, prime).unwrap());
            assert_eq!(lhs, rhs);
            // torsion of order 10 reduces to an element of order dividing 10
            assert_eq!(10 % fj.element_order(&lhs), 0);
        }
    }

    #[test]
    fn basis_parsing_and_checks() {
        let c = e_minus_2();
        let b = MordellWeilBasis::from_json(&c, &json!({"free": [{"point": [3, 5]}]})).unwrap();
        assert_eq!(b.rank(), 1);
        let torsion_as_free = MordellWeilBasis::from_json(&CurveModel::Elliptic(EllipticCurve::new(0, 1).unwrap()), &json!({"free": [{"point": [2, 3]}]}));
        assert!(matches!(torsion_as_free, Err(Error::InvalidBasis(_))));
        let off = MordellWeilBasis::from_json(&c, &json!({"free": [{"point": [3, 4]}]}));
        assert!(matches!(off, Err(Error::InvalidBasis(_))));
        let rational = MordellWeilBasis::from_json(&c, &json!({"free": [{"point": [[129, 100], [-383, 1000]]}]})).unwrap();
        assert_eq!(rational.free[0], RationalJacobian::new(&c).unwrap().point_class(rat(129, 100), rat(-383, 1000)));

        let g = g2();
        let ok = MordellWeilBasis::from_json(
            &g,
            &json!({"torsion": [{"point": [0, 1], "order": 5}, {"point": {"u": [1, 1], "v": [0]}, "order": 2}]}),
        )
        .unwrap();
        assert_eq!(ok.torsion_orders(), vec![5, 2]);
        let wrong = MordellWeilBasis::from_json(&g, &json!({"torsion": [{"point": [0, 1], "order": 10}]}));
        assert!(matches!(wrong, Err(Error::InvalidBasis(_))));
        let round = MordellWeilBasis::from_json(&g, &ok.to_json()).unwrap();
        assert_eq!(round, ok);
    }

    #[test]
    fn mumford_with_denominator_is_not_integral() {
        let g = g2();
        let jac = RationalJacobian::new(&g).unwrap();
        let ring = crate::arith::poly::PolyRing::new(Rationals);
        let d = RationalPoint::Mumford(Mumford { u: ring.from_coeffs(vec![rat(-1, 3), int(1)]), v: ring.zero() });
        assert_eq!(reduce_point(&g, &d, 3).unwrap_err(), Error::NonIntegralAtP(3));
        assert!(!jac.contains(&d));
    }
}
