use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::matrix::{det_bareiss, poly_discriminant};
use crate::arith::primes::{is_prime, prime_divisors, squarefree_decompose};
use crate::error::{Error, Result};

/// aX² + bY² = cZ², stored in normalized form (squarefree, pairwise coprime).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conic {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// Coefficients as supplied.
    pub original: [i64; 3],
    /// A point (X, Y, Z) on the normalized conic maps to (mx X, my Y, mz Z) on the original.
    pub multipliers: [BigRational; 3],
}

impl Conic {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::SingularModel);
        }
        let mut coef = [a as i128, b as i128, c as i128];
        let mut mult = [BigRational::one(), BigRational::one(), BigRational::one()];
        loop {
            let mut changed = false;
            // common factor of all three scales the equation only
            let g = gcd_i128(gcd_i128(coef[0], coef[1]), coef[2]);
            if g > 1 {
                coef.iter_mut().for_each(|x| *x /= g);
                changed = true;
            }
            for i in 0..3 {
                let (free, root) = squarefree_decompose(coef[i] as i64);
                if root > 1 {
                    coef[i] = free as i128;
                    mult[i] /= BigRational::from_integer(BigInt::from(root));
                    changed = true;
                }
            }
            // a prime shared by two coefficients forces the third variable to be divisible by it
            for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                let g = gcd_i128(coef[i], coef[j]);
                if g > 1 {
                    coef[i] /= g;
                    coef[j] /= g;
                    coef[k] *= g;
                    mult[k] *= BigRational::from_integer(BigInt::from(g));
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::MalformedModel("conic coefficients too large".into()));
        Ok(Conic {
            a: narrow(coef[0])?,
            b: narrow(coef[1])?,
            c: narrow(coef[2])?,
            original: [a, b, c],
            multipliers: mult,
        })
    }

    /// Maps an integer point of the normalized conic to a primitive integer point of the original.
    pub fn to_original(&self, point: [i64; 3]) -> [BigInt; 3] {
        let scaled: Vec<BigRational> = point
            .iter()
            .zip(&self.multipliers)
            .map(|(&x, m)| BigRational::from_integer(BigInt::from(x)) * m)
            .collect();
        primitive_integer_vector(&scaled)
    }

    pub fn is_on_original(&self, p: &[BigInt; 3]) -> bool {
        let [a, b, c] = self.original.map(BigInt::from);
        a * &p[0] * &p[0] + b * &p[1] * &p[1] == c * &p[2] * &p[2]
    }
}

/// y² = x³ + a x + b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticCurve {
    pub a: i64,
    pub b: i64,
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let e = EllipticCurve { a, b };
        if e.discriminant().is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(e)
    }

    pub fn discriminant(&self) -> BigInt {
        let a = BigInt::from(self.a);
        let b = BigInt::from(self.b);
        BigInt::from(-16) * (BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b)
    }
}

/// y² = f(x) with deg f ∈ {5, 6}; coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticCurve {
    pub f: Vec<i64>,
}

impl HyperellipticCurve {
    pub fn new(mut f: Vec<i64>) -> Result<Self> {
        while f.last() == Some(&0) {
            f.pop();
        }
        let deg = f.len().saturating_sub(1);
        if deg != 5 && deg != 6 {
            return Err(Error::MalformedModel(format!("hyperelliptic f must have degree 5 or 6, got {deg}")));
        }
        let curve = HyperellipticCurve { f };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(curve)
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn leading(&self) -> i64 {
        *self.f.last().expect("nonempty")
    }

    pub fn discriminant(&self) -> BigInt {
        let f: Vec<BigInt> = self.f.iter().map(|&c| BigInt::from(c)).collect();
        poly_discriminant(&f)
    }
}

/// Exponents (X, Y, Z) of the ten cubic monomials, in lexicographic order.
pub const CUBIC_MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Ternary cubic form F(X, Y, Z) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCubic {
    pub coeffs: [i64; 10],
}

impl PlaneCubic {
    pub fn new(coeffs: [i64; 10]) -> Result<Self> {
        let cubic = PlaneCubic { coeffs };
        if cubic.discriminant().is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(cubic)
    }

    /// Diagonal cubic a X³ + b Y³ + c Z³.
    pub fn diagonal(a: i64, b: i64, c: i64) -> Result<Self> {
        PlaneCubic::new([a, 0, 0, 0, 0, 0, b, 0, 0, c])
    }

    pub fn form(&self) -> Form {
        let mut form = Form::new();
        for (mono, &c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            if c != 0 {
                form.insert(*mono, BigInt::from(c));
            }
        }
        form
    }

    /// Determinant of the coefficient matrix of the six quadrics F_X, F_Y, F_Z, H_X, H_Y, H_Z,
    /// with H the Hessian of F. It vanishes mod p (p ≥ 5) exactly when F is singular mod p.
    pub fn discriminant(&self) -> BigInt {
        let f = self.form();
        let grad: Vec<Form> = (0..3).map(|i| form_derivative(&f, i)).collect();
        let hess: Vec<Vec<Form>> = grad.iter().map(|g| (0..3).map(|j| form_derivative(g, j)).collect()).collect();
        let h = form_det3(&hess);
        let rows: Vec<Form> = grad.into_iter().chain((0..3).map(|i| form_derivative(&h, i))).collect();
        let basis: [[u32; 3]; 6] = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
        let matrix = rows
            .iter()
            .map(|q| basis.iter().map(|m| q.get(m).cloned().unwrap_or_default()).collect())
            .collect();
        det_bareiss(matrix)
    }
}

/// Sparse homogeneous polynomial over Z in X, Y, Z.
pub type Form = BTreeMap<[u32; 3], BigInt>;

fn form_add(a: &Form, b: &Form) -> Form {
    let mut out = a.clone();
    for (m, c) in b {
        *out.entry(*m).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn form_neg(a: &Form) -> Form {
    a.iter().map(|(m, c)| (*m, -c)).collect()
}

fn form_mul(a: &Form, b: &Form) -> Form {
    let mut out = Form::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
            *out.entry(m).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn form_derivative(a: &Form, var: usize) -> Form {
    let mut out = Form::new();
    for (m, c) in a {
        if m[var] > 0 {
            let mut e = *m;
            e[var] -= 1;
            *out.entry(e).or_default() += c * BigInt::from(m[var]);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn form_det3(m: &[Vec<Form>]) -> Form {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        form_add(&form_mul(&m[r1][c1], &m[r2][c2]), &form_neg(&form_mul(&m[r1][c2], &m[r2][c1])))
    };
    let t0 = form_mul(&m[0][0], &minor(1, 2, 1, 2));
    let t1 = form_mul(&m[0][1], &minor(1, 2, 0, 2));
    let t2 = form_mul(&m[0][2], &minor(1, 2, 0, 1));
    form_add(&form_add(&t0, &form_neg(&t1)), &t2)
}

/// Any of the supported curve models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveModel {
    Conic(Conic),
    Elliptic(EllipticCurve),
    Hyperelliptic(HyperellipticCurve),
    PlaneCubic(PlaneCubic),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    Good,
    Bad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionInfo {
    pub prime: u64,
    pub status: ReductionStatus,
}

impl ReductionInfo {
    pub fn is_good(&self) -> bool {
        self.status == ReductionStatus::Good
    }
}

impl CurveModel {
    pub fn genus(&self) -> u32 {
        match self {
            CurveModel::Conic(_) => 0,
            CurveModel::Elliptic(_) | CurveModel::PlaneCubic(_) => 1,
            CurveModel::Hyperelliptic(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CurveModel::Conic(_) => "conic",
            CurveModel::Elliptic(_) => "elliptic",
            CurveModel::Hyperelliptic(_) => "hyperelliptic",
            CurveModel::PlaneCubic(_) => "plane_cubic",
        }
    }

    /// Raw discriminant of the model (zero iff singular). Conics use −4abc of the normalized form.
    pub fn raw_discriminant(&self) -> BigInt {
        match self {
            CurveModel::Conic(c) => BigInt::from(-4) * BigInt::from(c.a) * BigInt::from(c.b) * BigInt::from(c.c),
            CurveModel::Elliptic(e) => e.discriminant(),
            CurveModel::Hyperelliptic(h) => h.discriminant(),
            CurveModel::PlaneCubic(p) => p.discriminant(),
        }
    }

    pub fn discriminant(&self) -> Result<BigInt> {
        let d = self.raw_discriminant();
        if d.is_zero() {
            Err(Error::SingularModel)
        } else {
            Ok(d)
        }
    }

    /// Good iff p ∤ 2·disc, and for hyperelliptic models also p ∤ lead(f).
    /// Plane cubics are additionally bad at 3, where the Hessian criterion degenerates.
    pub fn reduction_type(&self, p: u64) -> ReductionInfo {
        let pb = BigInt::from(p);
        let mut bad = p == 2 || (self.raw_discriminant() % &pb).is_zero();
        match self {
            CurveModel::Hyperelliptic(h) => bad |= h.leading().rem_euclid(p as i64) == 0,
            CurveModel::PlaneCubic(_) => bad |= p == 3,
            _ => {}
        }
        let status = if bad { ReductionStatus::Bad } else { ReductionStatus::Good };
        ReductionInfo { prime: p, status }
    }

    pub fn is_good(&self, p: u64) -> bool {
        self.reduction_type(p).is_good()
    }

    /// All primes of bad reduction, ascending.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        let mut primes = prime_divisors(&self.discriminant()?)?;
        primes.push(2);
        match self {
            CurveModel::Hyperelliptic(h) => primes.extend(prime_divisors(&BigInt::from(h.leading()))?),
            CurveModel::PlaneCubic(_) => primes.push(3),
            _ => {}
        }
        primes.sort_unstable();
        primes.dedup();
        debug_assert!(primes.iter().all(|&p| is_prime(p)));
        Ok(primes)
    }

    /// The right-hand side f (ascending) when the model has the form y² = f(x).
    pub fn weierstrass_rhs(&self) -> Option<Vec<i64>> {
        match self {
            CurveModel::Elliptic(e) => Some(vec![e.b, e.a, 0, 1]),
            CurveModel::Hyperelliptic(h) => Some(h.f.clone()),
            _ => None,
        }
    }

    /// True for models with a single rational point at infinity (odd-degree y² = f(x)).
    pub fn has_rational_infinity(&self) -> bool {
        matches!(self.weierstrass_rhs(), Some(f) if f.len() % 2 == 0)
    }

    pub fn to_spec(&self) -> CurveSpec {
        let (kind, coeffs) = match self {
            CurveModel::Conic(c) => ("conic", c.original.to_vec()),
            CurveModel::Elliptic(e) => ("elliptic", vec![e.a, e.b]),
            CurveModel::Hyperelliptic(h) => ("hyperelliptic", h.f.clone()),
            CurveModel::PlaneCubic(p) => ("plane_cubic", p.coeffs.to_vec()),
        };
        CurveSpec { kind: kind.to_string(), coeffs }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveModel::Conic(c) => {
                let [a, b, cc] = c.original;
                write!(f, "{a}X^2 + {b}Y^2 = {cc}Z^2")
            }
            CurveModel::Elliptic(e) => write!(f, "y^2 = x^3 + {}x + {}", e.a, e.b),
            CurveModel::Hyperelliptic(h) => write!(f, "y^2 = {}", format_poly(&h.f)),
            CurveModel::PlaneCubic(p) => {
                let names = ["X", "Y", "Z"];
                let terms: Vec<String> = CUBIC_MONOMIALS
                    .iter()
                    .zip(&p.coeffs)
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, c)| {
                        let mono: String = m
                            .iter()
                            .zip(names)
                            .filter(|(e, _)| **e > 0)
                            .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
                            .collect();
                        format!("{c}{mono}")
                    })
                    .collect();
                write!(f, "{} = 0", terms.join(" + "))
            }
        }
    }
}

fn format_poly(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, c)| match i {
            0 => format!("{c}"),
            1 => format!("{c}x"),
            _ => format!("{c}x^{i}"),
        })
        .collect();
    terms.join(" + ")
}

/// Curve JSON: `{"type": ..., "coeffs": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(rename = "type")]
    pub kind: String,
    pub coeffs: Vec<i64>,
}

impl TryFrom<CurveSpec> for CurveModel {
    type Error = Error;

    fn try_from(spec: CurveSpec) -> Result<Self> {
        let expect = |n: usize| {
            if spec.coeffs.len() == n {
                Ok(())
            } else {
                Err(Error::MalformedModel(format!("{} expects {n} coefficients, got {}", spec.kind, spec.coeffs.len())))
            }
        };
        match spec.kind.as_str() {
            "conic" => {
                expect(3)?;
                Ok(CurveModel::Conic(Conic::new(spec.coeffs[0], spec.coeffs[1], spec.coeffs[2])?))
            }
            "elliptic" => {
                expect(2)?;
                Ok(CurveModel::Elliptic(EllipticCurve::new(spec.coeffs[0], spec.coeffs[1])?))
            }
            "hyperelliptic" => Ok(CurveModel::Hyperelliptic(HyperellipticCurve::new(spec.coeffs)?)),
            "plane_cubic" => {
                expect(10)?;
                let mut c = [0i64; 10];
                c.copy_from_slice(&spec.coeffs);
                Ok(CurveModel::PlaneCubic(PlaneCubic::new(c)?))
            }
            other => Err(Error::MalformedModel(format!("unknown curve type {other:?}"))),
        }
    }
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Clears denominators and content of a projective rational vector, making the first nonzero entry positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> [BigInt; 3] {
    use num::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out: Vec<BigInt> = if g.is_zero() { ints } else { ints.iter().map(|x| x / &g).collect() };
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -x.clone());
    }
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_discriminants() {
        let d = |a, b| CurveModel::Elliptic(EllipticCurve { a, b }).discriminant();
        assert_eq!(d(0, 1).unwrap(), BigInt::from(-432));
        assert_eq!(d(-1, 0).unwrap(), BigInt::from(64));
        assert_eq!(d(0, 0), Err(Error::SingularModel));
        assert_eq!(EllipticCurve::new(0, 0), Err(Error::SingularModel));
    }

    #[test]
    fn reduction_types() {
        let e = CurveModel::Elliptic(EllipticCurve::new(0, 1).unwrap());
        assert!(e.reduction_type(5).is_good());
        assert!(!e.reduction_type(3).is_good());
        assert!(!e.reduction_type(2).is_good());
        assert_eq!(e.bad_primes().unwrap(), vec![2, 3]);
        let h = CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, -1, 0, 0, 0, 1]).unwrap());
        assert_eq!(h.bad_primes().unwrap(), vec![2, 19, 151]);
        let lead = CurveModel::Hyperelliptic(HyperellipticCurve::new(vec![1, 0, 0, 0, 0, 0, 7]).unwrap());
        assert!(!lead.reduction_type(7).is_good());
    }

    #[test]
    fn conic_normalization() {
        let c = Conic::new(1, 1, 3).unwrap();
        assert_eq!((c.a, c.b, c.c), (1, 1, 3));
        // 4X² + 9Y² = 2Z² → X'² + Y'² = 2Z²
        let c = Conic::new(4, 9, 2).unwrap();
        assert_eq!((c.a, c.b, c.c), (1, 1, 2));
        assert!(c.is_on_original(&c.to_original([1, 1, 1])));
        // 6X² + 10Y² = 15Z² is pairwise non-coprime
        let c = Conic::new(6, 10, 15).unwrap();
        assert_eq!(gcd_i128(c.a as i128, c.b as i128), 1);
        assert_eq!(gcd_i128(c.a as i128, c.c as i128), 1);
        assert_eq!(gcd_i128(c.b as i128, c.c as i128), 1);
        assert_eq!(Conic::new(0, 1, 1), Err(Error::SingularModel));
    }

    #[test]
    fn hyperelliptic_models() {
        let h = HyperellipticCurve::new(vec![1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(h.discriminant(), BigInt::from(3125));
        assert!(HyperellipticCurve::new(vec![1, 0, 0, 1]).is_err());
        assert_eq!(HyperellipticCurve::new(vec![0, 0, 1, 0, 0, 1]), Err(Error::SingularModel));
    }

    #[test]
    fn selmer_bad_primes() {
        let s = CurveModel::PlaneCubic(PlaneCubic::diagonal(3, 4, 5).unwrap());
        assert_eq!(s.bad_primes().unwrap(), vec![2, 3, 5]);
        // X³ + Y³ + Z³ is smooth away from 3
        let fermat = CurveModel::PlaneCubic(PlaneCubic::diagonal(1, 1, 1).unwrap());
        assert_eq!(fermat.bad_primes().unwrap(), vec![2, 3]);
        // a cone over three points is singular
        assert_eq!(PlaneCubic::new([1, 0, 0, 0, 0, 0, 1, 0, 0, 0]), Err(Error::SingularModel));
    }

    #[test]
    fn spec_round_trip() {
        let json = r#"{"type":"elliptic","coeffs":[0,0]}"#;
        let spec: CurveSpec = serde_json::from_str(json).unwrap();
        assert_eq!(CurveModel::try_from(spec), Err(Error::SingularModel));
        let spec: CurveSpec = serde_json::from_str(r#"{"type":"conic","coeffs":[4,9,2]}"#).unwrap();
        let model = CurveModel::try_from(spec.clone()).unwrap();
        assert_eq!(model.to_spec(), spec);
        assert!(serde_json::from_str::<CurveSpec>(r#"{"type":"conic","coeffs":[1,1,1],"x":1}"#).is_err());
    }
}
