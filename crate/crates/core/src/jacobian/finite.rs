//! The finite group J(F_p): enumeration, order via the zeta function, and
//! quotients J(F_p) / B·J(F_p).

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::cantor::{HyperJacobian, Mumford};
use super::ec::{EcGroup, EcPoint};
use crate::arith::field::{ExtField, Field, FieldElement};
use crate::curves::{count_points, enumerate_points, CurveModel, CurvePoint};
use crate::error::{Error, Result};

/// An element of J(F_q): an elliptic-curve point or a genus-2 Mumford divisor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JacobianElement {
    Ec(EcPoint<FieldElement>),
    Mumford(Mumford<FieldElement>),
}

impl Serialize for JacobianElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = |e: &FieldElement| e.coeffs()[0];
        match self {
            JacobianElement::Ec(EcPoint::Identity) => "identity".serialize(s),
            JacobianElement::Ec(EcPoint::Affine { x, y }) => [c(x), c(y)].serialize(s),
            JacobianElement::Mumford(d) => {
                let u: Vec<u64> = d.u.coeffs().iter().map(c).collect();
                let v: Vec<u64> = d.v.coeffs().iter().map(c).collect();
                serde_json::json!({ "u": u, "v": v }).serialize(s)
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Group {
    Ec(EcGroup<ExtField>),
    Genus2(HyperJacobian<ExtField>),
}

/// Jacobian of a curve with good reduction, over a finite field.
#[derive(Debug, Clone)]
pub struct FiniteJacobian {
    curve: CurveModel,
    field: ExtField,
    group: Group,
}

impl FiniteJacobian {
    pub fn new(curve: &CurveModel, field: ExtField) -> Result<Self> {
        if !curve.is_good(field.p()) {
            return Err(Error::BadReduction(field.p()));
        }
        let group = match curve {
            CurveModel::Elliptic(e) => Group::Ec(EcGroup::new(field, e.a, e.b)),
            CurveModel::Hyperelliptic(h) if h.degree() == 5 => Group::Genus2(HyperJacobian::new(field, &h.f)),
            CurveModel::Hyperelliptic(_) => {
                return Err(Error::UnsupportedModel("group law needs a degree-5 model".into()))
            }
            other => {
                return Err(Error::UnsupportedModel(format!("no Jacobian arithmetic for {} models", other.kind())))
            }
        };
        Ok(FiniteJacobian { curve: curve.clone(), field, group })
    }

    pub fn over_prime(curve: &CurveModel, p: u64) -> Result<Self> {
        if !curve.is_good(p) {
            return Err(Error::BadReduction(p));
        }
        FiniteJacobian::new(curve, ExtField::prime(p)?)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn identity(&self) -> JacobianElement {
        match &self.group {
            Group::Ec(_) => JacobianElement::Ec(EcPoint::Identity),
            Group::Genus2(j) => JacobianElement::Mumford(j.identity()),
        }
    }

    pub fn contains(&self, x: &JacobianElement) -> bool {
        let in_field = |e: &FieldElement| *e.field() == self.field;
        match (&self.group, x) {
            (Group::Ec(g), JacobianElement::Ec(pt)) => {
                let fields_ok = match pt {
                    EcPoint::Identity => true,
                    EcPoint::Affine { x, y } => in_field(x) && in_field(y),
                };
                fields_ok && g.contains(pt)
            }
            (Group::Genus2(j), JacobianElement::Mumford(d)) => {
                d.u.coeffs().iter().chain(d.v.coeffs()).all(in_field) && j.contains(d)
            }
            _ => false,
        }
    }

    /// Sum of two elements already known to lie in this group.
    pub fn add(&self, a: &JacobianElement, b: &JacobianElement) -> JacobianElement {
        match (&self.group, a, b) {
            (Group::Ec(g), JacobianElement::Ec(p), JacobianElement::Ec(q)) => JacobianElement::Ec(g.add(p, q)),
            (Group::Genus2(j), JacobianElement::Mumford(p), JacobianElement::Mumford(q)) => {
                JacobianElement::Mumford(j.add(p, q))
            }
            _ => panic!("element kind does not match the group"),
        }
    }

    pub fn checked_add(&self, a: &JacobianElement, b: &JacobianElement) -> Result<JacobianElement> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(match x {
                    JacobianElement::Ec(_) => Error::PointNotOnCurve,
                    JacobianElement::Mumford(_) => Error::InvalidDivisor("not a reduced divisor on this curve".into()),
                });
            }
        }
        Ok(self.add(a, b))
    }

    pub fn neg(&self, a: &JacobianElement) -> JacobianElement {
        match (&self.group, a) {
            (Group::Ec(g), JacobianElement::Ec(p)) => JacobianElement::Ec(g.neg(p)),
            (Group::Genus2(j), JacobianElement::Mumford(d)) => JacobianElement::Mumford(j.neg(d)),
            _ => panic!("element kind does not match the group"),
        }
    }

    pub fn sub(&self, a: &JacobianElement, b: &JacobianElement) -> JacobianElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &JacobianElement, n: u64) -> JacobianElement {
        match (&self.group, a) {
            (Group::Ec(g), JacobianElement::Ec(p)) => JacobianElement::Ec(g.mul(p, n)),
            (Group::Genus2(j), JacobianElement::Mumford(d)) => JacobianElement::Mumford(j.mul(d, n)),
            _ => panic!("element kind does not match the group"),
        }
    }

    pub fn is_identity(&self, a: &JacobianElement) -> bool {
        *a == self.identity()
    }

    /// Order of an element, found by stepping (groups here are small).
    pub fn element_order(&self, a: &JacobianElement) -> u64 {
        let mut acc = a.clone();
        let mut n = 1;
        while !self.is_identity(&acc) {
            acc = self.add(&acc, a);
            n += 1;
        }
        n
    }

    /// The class [P − ∞] of a point of the curve.
    pub fn point_class(&self, pt: &CurvePoint) -> Result<JacobianElement> {
        match (&self.group, pt) {
            (_, CurvePoint::Infinity { y: None }) => Ok(self.identity()),
            (Group::Ec(_), CurvePoint::Affine { x, y }) => Ok(JacobianElement::Ec(EcPoint::Affine { x: *x, y: *y })),
            (Group::Genus2(j), CurvePoint::Affine { x, y }) => Ok(JacobianElement::Mumford(j.point_class(x, y))),
            _ => Err(Error::PointNotOnCurve),
        }
    }

    /// #J(F_q) from the zeta function of the curve.
    pub fn order(&self) -> Result<u64> {
        jacobian_order_over(&self.curve, &self.field)
    }

    /// Every element of the group, sorted.
    pub fn elements(&self) -> Result<Vec<JacobianElement>> {
        let mut out = match &self.group {
            Group::Ec(_) => enumerate_points(&self.curve, &self.field)?
                .iter()
                .map(|pt| self.point_class(pt))
                .collect::<Result<Vec<_>>>()?,
            Group::Genus2(j) => self.genus2_elements(j)?,
        };
        out.sort_unstable();
        Ok(out)
    }

    fn genus2_elements(&self, j: &HyperJacobian<ExtField>) -> Result<Vec<JacobianElement>> {
        let field = &self.field;
        let ring = &j.ring;
        let f = &j.f;
        let mut out = vec![j.identity()];
        let affine: Vec<(FieldElement, FieldElement)> = enumerate_points(&self.curve, field)?
            .into_iter()
            .filter_map(|pt| match pt {
                CurvePoint::Affine { x, y } => Some((x, y)),
                _ => None,
            })
            .collect();
        // degree 1
        out.extend(affine.iter().map(|(x, y)| j.point_class(x, y)));
        // degree 2, u split with distinct roots
        for (i, (a, ya)) in affine.iter().enumerate() {
            for (b, yb) in &affine[i + 1..] {
                if a == b {
                    continue;
                }
                let slope = field.div(&field.sub(yb, ya), &field.sub(b, a)).expect("a ≠ b");
                let v0 = field.sub(ya, &field.mul(&slope, a));
                let u = ring.mul(&ring.linear_root(a), &ring.linear_root(b));
                out.push(Mumford { u, v: ring.from_coeffs(vec![v0, slope]) });
            }
        }
        // degree 2, u = (x − a)², i.e. 2P with y(P) ≠ 0
        let fprime = ring.derivative(f);
        for (a, y0) in &affine {
            if y0.is_zero() {
                continue;
            }
            let k = field.div(&ring.eval(&fprime, a), &field.add(y0, y0)).expect("y0 ≠ 0");
            let v0 = field.sub(y0, &field.mul(&k, a));
            let u = ring.mul(&ring.linear_root(a), &ring.linear_root(a));
            out.push(Mumford { u, v: ring.from_coeffs(vec![v0, k]) });
        }
        // degree 2, u irreducible: a conjugate pair of points over F_{q²}
        if field.degree() != 1 {
            return Err(Error::UnsupportedModel("genus-2 enumeration is over prime fields only".into()));
        }
        let big = ExtField::with_degree(field.p(), 2)?;
        let embed = |e: &FieldElement| -> FieldElement { embed_into(e, &big) };
        let f_big: Vec<FieldElement> = f.coeffs().iter().map(embed).collect();
        let q = field.size();
        for alpha in big.elements() {
            let conj = big.pow(&alpha, q);
            if conj <= alpha {
                // alpha in the small field, or the pair was already visited
                continue;
            }
            let s = big.add(&alpha, &conj);
            let n = big.mul(&alpha, &conj);
            let (Some(s), Some(n)) = (restrict(&s, field), restrict(&n, field)) else {
                continue;
            };
            let u = ring.from_coeffs(vec![n, field.neg(&s), field.one()]);
            let fa = f_big.iter().rev().fold(big.zero(), |acc, c| big.add(&big.mul(&acc, &alpha), c));
            let Some(beta) = big.sqrt(&fa) else { continue };
            let betas = if beta.is_zero() { vec![beta] } else { vec![beta, big.neg(&beta)] };
            for beta in betas {
                let beta_conj = big.pow(&beta, q);
                let v1 = big.div(&big.sub(&beta, &beta_conj), &big.sub(&alpha, &conj)).expect("alpha ≠ conj");
                let v0 = big.sub(&beta, &big.mul(&v1, &alpha));
                let (Some(v0), Some(v1)) = (restrict(&v0, field), restrict(&v1, field)) else {
                    unreachable!("Frobenius-stable line has coefficients in the base field");
                };
                out.push(Mumford { u: u.clone(), v: ring.from_coeffs(vec![v0, v1]) });
            }
        }
        Ok(out.into_iter().map(JacobianElement::Mumford).collect())
    }
}

fn embed_into(e: &FieldElement, big: &ExtField) -> FieldElement {
    big.from_u64(e.coeffs()[0])
}

fn restrict(e: &FieldElement, small: &ExtField) -> Option<FieldElement> {
    e.as_prime().map(|c| small.from_u64(c))
}

/// #J(F_q): genus 1 counts points, genus 2 evaluates the zeta numerator at 1.
pub fn jacobian_order_over(curve: &CurveModel, field: &ExtField) -> Result<u64> {
    match curve.genus() {
        0 => Ok(1),
        1 => count_points(curve, field),
        _ => {
            let q = field.size() as i128;
            let n1 = count_points(curve, field)? as i128;
            let square = ExtField::with_degree(field.p(), 2 * field.degree())?;
            let n2 = count_points(curve, &square)? as i128;
            let c1 = n1 - q - 1;
            let twice_c2 = n2 - q * q - 1 + c1 * c1;
            debug_assert!(twice_c2 % 2 == 0);
            let c2 = twice_c2 / 2;
            Ok((1 + c1 + c2 + q * c1 + q * q) as u64)
        }
    }
}

pub fn jacobian_order(curve: &CurveModel, p: u64) -> Result<u64> {
    if !curve.is_good(p) {
        return Err(Error::BadReduction(p));
    }
    jacobian_order_over(curve, &ExtField::prime(p)?)
}

/// Canonical labels for J(F_p) / B·J(F_p): each element is labelled by the
/// smallest element of its coset.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub prime: u64,
    pub modulus: u64,
    elements: Vec<JacobianElement>,
    index: HashMap<JacobianElement, usize>,
    labels: Vec<usize>,
    subgroup_order: usize,
}

impl QuotientMap {
    pub fn new(jac: &FiniteJacobian, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let elements = jac.elements()?;
        let index: HashMap<JacobianElement, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let multiples: HashSet<JacobianElement> = elements.iter().map(|e| jac.mul(e, modulus)).collect();
        let multiples: Vec<JacobianElement> = multiples.into_iter().collect();
        let mut labels = vec![usize::MAX; elements.len()];
        for i in 0..elements.len() {
            if labels[i] != usize::MAX {
                continue;
            }
            for b in &multiples {
                let j = index[&jac.add(&elements[i], b)];
                labels[j] = i;
            }
        }
        Ok(QuotientMap { prime: jac.field().p(), modulus, elements, index, labels, subgroup_order: multiples.len() })
    }

    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    pub fn label_count(&self) -> usize {
        self.elements.len() / self.subgroup_order
    }

    pub fn elements(&self) -> &[JacobianElement] {
        &self.elements
    }

    /// Index (into the sorted element list) of the coset representative.
    pub fn label(&self, x: &JacobianElement) -> Option<usize> {
        self.index.get(x).map(|&i| self.labels[i])
    }

    pub fn representative(&self, x: &JacobianElement) -> Option<&JacobianElement> {
        self.label(x).map(|i| &self.elements[i])
    }
}

pub fn quotient_map(curve: &CurveModel, p: u64, modulus: u64) -> Result<QuotientMap> {
    QuotientMap::new(&FiniteJacobian::over_prime(curve, p)?, modulus)
}
