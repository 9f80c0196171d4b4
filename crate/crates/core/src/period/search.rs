//! Closed points of small degree: rational points up to a height bound, and
//! the structural degree-2 and degree-3 points every model carries.

use num::integer::Roots;
use num::{BigInt, BigRational, Integer, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::conic::conic_has_rational_point;
use crate::curves::{CurveModel, CurveSpec, CUBIC_MONOMIALS};
use crate::json::{big_value, WireRational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedPoint {
    pub degree: u64,
    pub method: String,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralBound {
    pub divisor: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub curve: CurveSpec,
    pub genus: u32,
    pub height_bound: u64,
    pub found: Vec<ClosedPoint>,
    /// Rational points found by the height search (at most `POINT_LIST_LIMIT` listed).
    pub rational_points: Vec<Value>,
    pub rational_point_count: u64,
    pub index_upper_bound: u64,
    pub structural: Vec<StructuralBound>,
}

impl IndexReport {
    pub fn has_rational_point(&self) -> bool {
        self.found.iter().any(|p| p.degree == 1)
    }
}

pub const POINT_LIST_LIMIT: usize = 20;

/// 2g − 2 for g ≥ 2; nothing for g ≤ 1.
pub fn canonical_index_bound(genus: u32) -> Option<u64> {
    (genus >= 2).then(|| 2 * genus as u64 - 2)
}

fn ints(v: &[i64]) -> Value {
    json!(v)
}

/// Primitive integer solutions of a diagonal cubic aX³ + bY³ + cZ³ = 0 with
/// max(|X|, |Y|, |Z|) ≤ h, up to sign.
pub fn diagonal_cubic_points(a: i64, b: i64, c: i64, h: u64) -> Vec<[i64; 3]> {
    let h = h as i64;
    let mut pts: Vec<[i64; 3]> = (0..=h)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut out = vec![];
            let ax3 = a as i128 * (x as i128).pow(3);
            for y in -h..=h {
                if x == 0 && y < 0 {
                    continue;
                }
                let s = ax3 + b as i128 * (y as i128).pow(3);
                if s % c as i128 != 0 {
                    continue;
                }
                let t = -s / c as i128;
                let z = t.cbrt();
                if z * z * z != t || z.abs() > h as i128 {
                    continue;
                }
                let z = z as i64;
                if (x, y, z) == (0, 0, 0) || (x == 0 && y == 0 && z < 0) || x.gcd(&y).gcd(&z) != 1 {
                    continue;
                }
                out.push([x, y, z]);
            }
            out
        })
        .collect();
    pts.sort();
    pts
}

fn eval_form(coeffs: &[i64; 10], v: [i128; 3]) -> i128 {
    CUBIC_MONOMIALS
        .iter()
        .zip(coeffs)
        .map(|(m, &c)| c as i128 * v[0].pow(m[0]) * v[1].pow(m[1]) * v[2].pow(m[2]))
        .sum()
}

/// Primitive integer points of a general plane cubic with height ≤ h, up to sign.
pub fn plane_cubic_points(coeffs: &[i64; 10], h: u64) -> Vec<[i64; 3]> {
    let h = h as i64;
    let diag = coeffs.iter().enumerate().all(|(i, &c)| c == 0 || matches!(i, 0 | 6 | 9));
    if diag && coeffs[0] != 0 && coeffs[6] != 0 && coeffs[9] != 0 {
        return diagonal_cubic_points(coeffs[0], coeffs[6], coeffs[9], h as u64);
    }
    let mut pts: Vec<[i64; 3]> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut out = vec![];
            for y in -h..=h {
                for z in -h..=h {
                    let v = [x, y, z];
                    let first = v.iter().find(|&&c| c != 0);
                    if first.is_none_or(|&c| c < 0) || x.gcd(&y).gcd(&z) != 1 {
                        continue;
                    }
                    if eval_form(coeffs, [x as i128, y as i128, z as i128]) == 0 {
                        out.push(v);
                    }
                }
            }
            out
        })
        .collect();
    pts.sort();
    pts
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Affine rational points of y² = f(x), as `[x, y]` rationals: x = r/s² for
/// odd degree, x = r/s for even degree, with |r|, s ≤ h.
fn weierstrass_points(f: &[i64], h: u64) -> Vec<Value> {
    let d = f.len() - 1;
    let h = h as i64;
    let mut out = vec![];
    for s in 1..=h {
        let (den, ypow) = if d % 2 == 1 { (s * s, d as u32) } else { (s, d as u32 / 2) };
        let denb = BigInt::from(den);
        for r in -h..=h {
            if r.gcd(&s) != 1 {
                continue;
            }
            // t² = Σ f_i r^i den^(d−i), and y = t / s^ypow
            let rb = BigInt::from(r);
            let value: BigInt =
                f.iter().enumerate().map(|(i, &c)| BigInt::from(c) * rb.pow(i as u32) * denb.pow((d - i) as u32)).sum();
            if is_square(&value) {
                let t = value.sqrt();
                let x = BigRational::new(rb.clone(), denb.clone());
                for t in if t.is_zero() { vec![t] } else { vec![t.clone(), -t] } {
                    let y = BigRational::new(t, BigInt::from(s).pow(ypow));
                    out.push(json!([WireRational(x.clone()), WireRational(y)]));
                }
            }
        }
    }
    out
}

/// gcd of the degrees of closed points found, with witnesses, plus the
/// structural divisors the bound must divide.
pub fn index_upper_bound(curve: &CurveModel, height_bound: u64) -> IndexReport {
    let mut found = vec![];
    let mut structural = vec![];
    let mut rational_points: Vec<Value> = vec![];
    let mut count = 0u64;
    match curve {
        CurveModel::Conic(c) => {
            let report = conic_has_rational_point(c.original[0], c.original[1], c.original[2]).expect("valid conic");
            if let Some(w) = &report.witness {
                let w: Vec<Value> = w.iter().map(big_value).collect();
                found.push(ClosedPoint { degree: 1, method: "Hasse principle + bounded search".into(), witness: json!(w) });
                rational_points.push(json!(w));
                count = 1;
            }
            found.push(ClosedPoint {
                degree: 2,
                method: "line section Y = 0".into(),
                witness: json!({"line": "Y = 0", "equation": format!("{}X^2 = {}Z^2", c.a, c.c)}),
            });
            structural.push(StructuralBound { divisor: 2, reason: "anticanonical class has degree 2".into() });
        }
        CurveModel::Elliptic(_) => {
            found.push(ClosedPoint { degree: 1, method: "point at infinity".into(), witness: json!("infinity") });
            rational_points.push(json!("infinity"));
            let affine = weierstrass_points(&curve.weierstrass_rhs().unwrap(), height_bound);
            count = 1 + affine.len() as u64;
            rational_points.extend(affine);
        }
        CurveModel::Hyperelliptic(hc) => {
            if curve.has_rational_infinity() {
                found.push(ClosedPoint { degree: 1, method: "point at infinity".into(), witness: json!("infinity") });
                rational_points.push(json!("infinity"));
                count += 1;
            } else if is_square(&BigInt::from(hc.leading())) {
                found.push(ClosedPoint { degree: 1, method: "points at infinity (square leading coefficient)".into(), witness: json!("infinity") });
                rational_points.push(json!("infinity"));
                count += 2;
            }
            let affine = weierstrass_points(&hc.f, height_bound);
            count += affine.len() as u64;
            if let Some(p) = affine.first() {
                found.push(ClosedPoint { degree: 1, method: "height search".into(), witness: p.clone() });
            }
            rational_points.extend(affine);
            let f0 = hc.f[0];
            found.push(ClosedPoint {
                degree: if f0 == 0 || is_square(&BigInt::from(f0)) { 1 } else { 2 },
                method: "fibre of x over x = 0".into(),
                witness: json!({"x": 0, "f(x)": f0}),
            });
            structural.push(StructuralBound { divisor: 2, reason: "fibres of the hyperelliptic map x have degree 2".into() });
            structural.push(StructuralBound { divisor: 2, reason: "canonical class has degree 2g - 2 = 2".into() });
        }
        CurveModel::PlaneCubic(pc) => {
            let pts = plane_cubic_points(&pc.coeffs, height_bound);
            count = pts.len() as u64;
            if let Some(p) = pts.first() {
                found.push(ClosedPoint { degree: 1, method: "height search".into(), witness: ints(p) });
            }
            rational_points.extend(pts.iter().map(|p| ints(p)));
            let binary: Vec<i64> = CUBIC_MONOMIALS.iter().zip(&pc.coeffs).filter(|(m, _)| m[2] == 0).map(|(_, &c)| c).collect();
            found.push(ClosedPoint {
                degree: 3,
                method: "line section Z = 0".into(),
                witness: json!({"line": "Z = 0", "binary_cubic": binary}),
            });
            structural.push(StructuralBound { divisor: 3, reason: "hyperplane sections have degree 3".into() });
        }
    }
    rational_points.truncate(POINT_LIST_LIMIT);
    let bound = found.iter().fold(0u64, |g, p| g.gcd(&p.degree));
    IndexReport {
        curve: curve.to_spec(),
        genus: curve.genus(),
        height_bound,
        found,
        rational_points,
        rational_point_count: count,
        index_upper_bound: bound,
        structural,
    }
}
