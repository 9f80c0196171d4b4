use serde::Serialize;

use super::model::{CurveModel, CUBIC_MONOMIALS};
use crate::arith::field::{ExtField, Field, FieldElement};
use crate::error::{Error, Result};

/// A point of a curve model over a finite field.
///
/// Weierstrass models use affine coordinates plus points at infinity; degree-6
/// models have up to two points at infinity, distinguished by the sign of y/x³.
/// Conics and plane cubics use projective coordinates scaled so the last
/// nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Affine { x: FieldElement, y: FieldElement },
    Infinity { y: Option<FieldElement> },
    Projective([FieldElement; 3]),
}

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords = |e: &FieldElement| e.coeffs().to_vec();
        match self {
            CurvePoint::Affine { x, y } => vec![coords(x), coords(y)].serialize(s),
            CurvePoint::Infinity { y: None } => "infinity".serialize(s),
            CurvePoint::Infinity { y: Some(y) } => ("infinity", coords(y)).serialize(s),
            CurvePoint::Projective(v) => v.iter().map(coords).collect::<Vec<_>>().serialize(s),
        }
    }
}

/// Reduction of the model's integer coefficients into a finite field.
#[derive(Debug, Clone)]
pub(crate) enum ReducedModel {
    Weierstrass { f: Vec<FieldElement> },
    Conic { a: FieldElement, b: FieldElement, c: FieldElement },
    Cubic { coeffs: [FieldElement; 10] },
}

pub(crate) fn reduce_model(curve: &CurveModel, field: &ExtField) -> ReducedModel {
    match curve {
        CurveModel::Conic(c) => ReducedModel::Conic {
            a: field.from_int(c.a),
            b: field.from_int(c.b),
            c: field.from_int(c.c),
        },
        CurveModel::PlaneCubic(p) => ReducedModel::Cubic { coeffs: p.coeffs.map(|c| field.from_int(c)) },
        _ => ReducedModel::Weierstrass {
            f: curve.weierstrass_rhs().expect("weierstrass").iter().map(|&c| field.from_int(c)).collect(),
        },
    }
}

pub(crate) fn eval_poly(field: &ExtField, f: &[FieldElement], x: &FieldElement) -> FieldElement {
    f.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

pub(crate) fn eval_cubic(field: &ExtField, coeffs: &[FieldElement; 10], v: &[FieldElement; 3]) -> FieldElement {
    let powers: Vec<[FieldElement; 4]> = v
        .iter()
        .map(|x| {
            let x2 = field.mul(x, x);
            [field.one(), *x, x2, field.mul(&x2, x)]
        })
        .collect();
    CUBIC_MONOMIALS.iter().zip(coeffs).fold(field.zero(), |acc, (m, c)| {
        let term = field.mul(&field.mul(&powers[0][m[0] as usize], &powers[1][m[1] as usize]), &powers[2][m[2] as usize]);
        field.add(&acc, &field.mul(c, &term))
    })
}

impl ReducedModel {
    fn projective_zero(&self, field: &ExtField, v: &[FieldElement; 3]) -> bool {
        match self {
            ReducedModel::Conic { a, b, c } => {
                let lhs = field.add(&field.mul(a, &field.square(&v[0])), &field.mul(b, &field.square(&v[1])));
                lhs == field.mul(c, &field.square(&v[2]))
            }
            ReducedModel::Cubic { coeffs } => eval_cubic(field, coeffs, v).is_zero(),
            ReducedModel::Weierstrass { .. } => unreachable!("weierstrass models are not projective plane curves"),
        }
    }
}

/// Projective plane points with the last nonzero coordinate equal to 1.
fn projective_plane(field: &ExtField) -> impl Iterator<Item = [FieldElement; 3]> + '_ {
    let one = field.one();
    let zero = field.zero();
    let affine = field.elements().flat_map(move |x| field.elements().map(move |y| [x, y, one]));
    let line = field.elements().map(move |x| [x, one, zero]);
    affine.chain(line).chain(std::iter::once([one, zero, zero]))
}

fn collect_points(curve: &CurveModel, field: &ExtField) -> Vec<CurvePoint> {
    let model = reduce_model(curve, field);
    let mut out = Vec::new();
    match &model {
        ReducedModel::Weierstrass { f } => {
            for x in field.elements() {
                let fx = eval_poly(field, f, &x);
                if fx.is_zero() {
                    out.push(CurvePoint::Affine { x, y: fx });
                } else if let Some(y) = field.sqrt(&fx) {
                    out.push(CurvePoint::Affine { x, y });
                    out.push(CurvePoint::Affine { x, y: field.neg(&y) });
                }
            }
            out.extend(points_at_infinity(field, f));
        }
        _ => out.extend(projective_plane(field).filter(|v| model.projective_zero(field, v)).map(CurvePoint::Projective)),
    }
    out.sort_unstable();
    out
}

fn points_at_infinity(field: &ExtField, f: &[FieldElement]) -> Vec<CurvePoint> {
    let lead = f.last().expect("nonempty");
    if f.len().is_multiple_of(2) {
        return vec![CurvePoint::Infinity { y: None }];
    }
    match field.sqrt(lead) {
        Some(r) if r.is_zero() => vec![CurvePoint::Infinity { y: Some(r) }],
        Some(r) => vec![CurvePoint::Infinity { y: Some(r) }, CurvePoint::Infinity { y: Some(field.neg(&r)) }],
        None => vec![],
    }
}

fn require_good(curve: &CurveModel, field: &ExtField) -> Result<()> {
    if curve.is_good(field.p()) {
        Ok(())
    } else {
        Err(Error::BadReduction(field.p()))
    }
}

/// Number of points of the smooth model over the given field.
pub fn count_points(curve: &CurveModel, field: &ExtField) -> Result<u64> {
    require_good(curve, field)?;
    match reduce_model(curve, field) {
        ReducedModel::Weierstrass { f } => {
            let affine: i64 = field
                .elements()
                .map(|x| 1 + field.quadratic_character(&eval_poly(field, &f, &x)) as i64)
                .sum();
            Ok(affine as u64 + points_at_infinity(field, &f).len() as u64)
        }
        // a smooth conic over a finite field is a projective line
        ReducedModel::Conic { .. } => Ok(field.size() + 1),
        ReducedModel::Cubic { .. } => Ok(collect_points(curve, field).len() as u64),
    }
}

/// All points over the field, sorted, for a model with good reduction.
pub fn enumerate_points(curve: &CurveModel, field: &ExtField) -> Result<Vec<CurvePoint>> {
    require_good(curve, field)?;
    Ok(collect_points(curve, field))
}

/// Points of the reduced equation without a good-reduction check; on a bad
/// fiber this lists the solutions of the (possibly singular) reduction.
pub fn enumerate_reduction_points(curve: &CurveModel, field: &ExtField) -> Vec<CurvePoint> {
    collect_points(curve, field)
}

/// Exact membership test for a point of the reduced equation.
pub fn is_on_curve(curve: &CurveModel, field: &ExtField, point: &CurvePoint) -> bool {
    let model = reduce_model(curve, field);
    match (&model, point) {
        (ReducedModel::Weierstrass { f }, CurvePoint::Affine { x, y }) => field.square(y) == eval_poly(field, f, x),
        (ReducedModel::Weierstrass { f }, CurvePoint::Infinity { y: None }) => f.len() % 2 == 0,
        (ReducedModel::Weierstrass { f }, CurvePoint::Infinity { y: Some(y) }) => {
            f.len() % 2 == 1 && field.square(y) == *f.last().expect("nonempty")
        }
        (ReducedModel::Conic { .. } | ReducedModel::Cubic { .. }, CurvePoint::Projective(v)) => {
            !v.iter().all(|c| c.is_zero()) && model.projective_zero(field, v)
        }
        _ => false,
    }
}
