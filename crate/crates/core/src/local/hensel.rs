//! Bounded Hensel tree search for primitive points over unramified extensions of Q_p.
//!
//! A curve is covered by affine charts G(u, w) = 0 whose variables may be
//! constrained to lie in pO. Level-k nodes are solutions of G ≡ 0 mod p^k; a
//! node with min(v(G_u), v(G_w)) = e at level k ≥ 2e + 1 lifts to a genuine
//! point by Hensel's lemma in the variable attaining the minimum.

use serde::{Deserialize, Serialize};

use super::galois::{GaloisRing, GrElem};
use crate::curves::{CurveModel, CUBIC_MONOMIALS};

/// A polynomial chart G(u, w) with integer coefficients.
#[derive(Debug, Clone)]
pub struct Chart {
    pub name: &'static str,
    pub terms: Vec<(u32, u32, i128)>,
    pub u_in_p: bool,
    pub w_in_p: bool,
}

impl Chart {
    fn derivative(&self, var: usize) -> Vec<(u32, u32, i128)> {
        self.terms
            .iter()
            .filter_map(|&(i, j, c)| match var {
                0 if i > 0 => Some((i - 1, j, c * i as i128)),
                1 if j > 0 => Some((i, j - 1, c * j as i128)),
                _ => None,
            })
            .collect()
    }
}

/// Charts covering every primitive point of the curve (the point at infinity
/// of odd-degree Weierstrass models is rational and handled by the caller).
pub fn charts(curve: &CurveModel) -> Vec<Chart> {
    match curve {
        CurveModel::Conic(c) => {
            let form = vec![([2, 0, 0], c.a as i128), ([0, 2, 0], c.b as i128), ([0, 0, 2], -(c.c as i128))];
            projective_charts(&form)
        }
        CurveModel::PlaneCubic(pc) => {
            let form: Vec<([u32; 3], i128)> =
                CUBIC_MONOMIALS.iter().zip(&pc.coeffs).filter(|(_, &c)| c != 0).map(|(m, &c)| (*m, c as i128)).collect();
            projective_charts(&form)
        }
        _ => {
            let f = curve.weierstrass_rhs().expect("weierstrass model");
            let mut affine = vec![(0, 2, 1i128)];
            affine.extend(f.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, 0, -(c as i128))));
            let mut out = vec![Chart { name: "affine", terms: affine, u_in_p: false, w_in_p: false }];
            if f.len() == 7 {
                // w² = t⁶ f(1/t) near the points at infinity, t = 1/x ∈ pO
                let mut inf = vec![(0, 2, 1i128)];
                inf.extend(f.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| ((6 - i) as u32, 0, -(c as i128))));
                out.push(Chart { name: "infinity", terms: inf, u_in_p: true, w_in_p: false });
            }
            out
        }
    }
}

/// Primitive (X:Y:Z) split by the first unit coordinate.
fn projective_charts(form: &[([u32; 3], i128)]) -> Vec<Chart> {
    let restrict = |fixed: usize| -> Vec<(u32, u32, i128)> {
        form.iter()
            .map(|(e, c)| {
                let rest: Vec<u32> = (0..3).filter(|&i| i != fixed).map(|i| e[i]).collect();
                (rest[0], rest[1], *c)
            })
            .collect()
    };
    vec![
        Chart { name: "X=1", terms: restrict(0), u_in_p: false, w_in_p: false },
        Chart { name: "Y=1", terms: restrict(1), u_in_p: true, w_in_p: false },
        Chart { name: "Z=1", terms: restrict(2), u_in_p: true, w_in_p: true },
    ]
}

fn eval_terms(gr: &GaloisRing, terms: &[(u32, u32, i128)], u: &GrElem, w: &GrElem) -> GrElem {
    let max_i = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let max_j = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let mut pu = vec![gr.from_int(1)];
    for _ in 0..max_i {
        pu.push(gr.mul(pu.last().unwrap(), u));
    }
    let mut pw = vec![gr.from_int(1)];
    for _ in 0..max_j {
        pw.push(gr.mul(pw.last().unwrap(), w));
    }
    terms.iter().fold(gr.from_int(0), |acc, &(i, j, c)| {
        let t = gr.scale(&gr.mul(&pu[i as usize], &pw[j as usize]), c);
        gr.add(&acc, &t)
    })
}

/// Evidence that a chart has a point over the unramified extension of degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HenselWitness {
    pub chart: String,
    pub degree: usize,
    /// Lower coefficients of the Galois ring modulus.
    pub modulus: Vec<u64>,
    /// Coordinates (u, w) as coefficient vectors modulo p^level.
    pub u: Vec<i128>,
    pub w: Vec<i128>,
    pub level: u32,
    /// Index (0 = u, 1 = w) of the variable used for lifting.
    pub lift_variable: usize,
    pub derivative_valuation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Soluble(HenselWitness),
    /// No primitive solution modulo p^level.
    Insoluble { level: u32 },
    /// Neither certificate reached at this precision or within the node budget.
    Exhausted { level: u32 },
}

/// Per-chart node budget for the tree search.
pub const NODE_BUDGET: usize = 400_000;

fn search_chart(gr: &GaloisRing, chart: &Chart) -> SearchOutcome {
    let p = gr.p();
    let du = chart.derivative(0);
    let dw = chart.derivative(1);
    let residues = gr.residues();
    let zero = gr.from_int(0);
    let starts_u: Vec<GrElem> = if chart.u_in_p { vec![zero] } else { residues.clone() };
    let starts_w: Vec<GrElem> = if chart.w_in_p { vec![zero] } else { residues.clone() };
    if starts_u.len() * starts_w.len() > NODE_BUDGET * 10 {
        return SearchOutcome::Exhausted { level: 0 };
    }
    let mut nodes: Vec<(GrElem, GrElem)> = Vec::new();
    for u in &starts_u {
        for w in &starts_w {
            if gr.valuation(&eval_terms(gr, &chart.terms, u, w)) >= 1 {
                nodes.push((*u, *w));
            }
        }
    }
    let mut level = 1;
    loop {
        if nodes.is_empty() {
            return SearchOutcome::Insoluble { level };
        }
        for (u, w) in &nodes {
            let vu = gr.valuation(&eval_terms(gr, &du, u, w));
            let vw = gr.valuation(&eval_terms(gr, &dw, u, w));
            let (var, e) = if vu <= vw { (0, vu) } else { (1, vw) };
            if 2 * e < level {
                let pk = (p as i128).pow(level);
                let trunc = |x: &GrElem| x[..gr.degree()].iter().map(|c| c % pk).collect();
                return SearchOutcome::Soluble(HenselWitness {
                    chart: chart.name.to_string(),
                    degree: gr.degree(),
                    modulus: gr.modulus(),
                    u: trunc(u),
                    w: trunc(w),
                    level,
                    lift_variable: var,
                    derivative_valuation: e,
                });
            }
        }
        if level >= gr.precision() || nodes.len() * residues.len() * residues.len() > NODE_BUDGET * 10 {
            return SearchOutcome::Exhausted { level };
        }
        let mut next = Vec::new();
        for (u, w) in &nodes {
            for s in &residues {
                let nu = gr.lift(u, level, s);
                for t in &residues {
                    let nw = gr.lift(w, level, t);
                    if gr.valuation(&eval_terms(gr, &chart.terms, &nu, &nw)) > level {
                        next.push((nu, nw));
                    }
                }
            }
            if next.len() > NODE_BUDGET {
                return SearchOutcome::Exhausted { level };
            }
        }
        nodes = next;
        level += 1;
    }
}

/// Searches all charts; soluble as soon as one chart yields a witness, insoluble
/// only if every chart dies (reporting the deepest level needed).
pub fn search(curve: &CurveModel, p: u64, degree: usize, precision: u32) -> SearchOutcome {
    let gr = GaloisRing::new(p, degree, precision);
    let mut deepest = 0;
    let mut exhausted = None;
    for chart in charts(curve) {
        match search_chart(&gr, &chart) {
            SearchOutcome::Soluble(w) => return SearchOutcome::Soluble(w),
            SearchOutcome::Insoluble { level } => deepest = deepest.max(level),
            SearchOutcome::Exhausted { level } => exhausted = Some(exhausted.unwrap_or(level).max(level)),
        }
    }
    match exhausted {
        Some(level) => SearchOutcome::Exhausted { level },
        None => SearchOutcome::Insoluble { level: deepest },
    }
}

/// Independent re-check of a witness against the curve's chart equations.
pub fn verify_witness(curve: &CurveModel, p: u64, witness: &HenselWitness) -> bool {
    let Some(chart) = charts(curve).into_iter().find(|c| c.name == witness.chart) else {
        return false;
    };
    let d = witness.degree;
    if !(1..=4).contains(&d) || witness.level == 0 || witness.level > super::galois::max_precision(p) {
        return false;
    }
    if witness.modulus != super::galois::irreducible_modulus(p, d) {
        return false;
    }
    let gr = GaloisRing::new(p, d, witness.level);
    if !gr.is_valid(&witness.u) || !gr.is_valid(&witness.w) || witness.lift_variable > 1 {
        return false;
    }
    let mut u = [0; 4];
    let mut w = [0; 4];
    u[..d].copy_from_slice(&witness.u);
    w[..d].copy_from_slice(&witness.w);
    if (chart.u_in_p && gr.valuation(&u) == 0) || (chart.w_in_p && gr.valuation(&w) == 0) {
        return false;
    }
    if gr.valuation(&eval_terms(&gr, &chart.terms, &u, &w)) < witness.level {
        return false;
    }
    let e = witness.derivative_valuation;
    let partial = eval_terms(&gr, &chart.derivative(witness.lift_variable), &u, &w);
    2 * e < witness.level && gr.valuation(&partial) == e
}
