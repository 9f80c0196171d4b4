use num::{BigRational, Signed};

use crate::arith::field::Rationals;
use crate::arith::poly::{Poly, PolyRing};
use crate::curves::CurveModel;

/// Number of distinct real roots of a nonzero integer polynomial (Sturm's theorem).
pub fn real_root_count(f: &[i64]) -> usize {
    let ring = PolyRing::new(Rationals);
    let p0 = ring.from_i64s(f);
    if p0.deg0() == 0 {
        return 0;
    }
    let mut seq = vec![p0.clone(), ring.derivative(&p0)];
    loop {
        let n = seq.len();
        let r = ring.rem(&seq[n - 2], &seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(ring.neg(&r));
    }
    let sign_at = |p: &Poly<BigRational>, plus: bool| -> i32 {
        let lead = p.leading().expect("nonzero");
        let s = if lead.is_positive() { 1 } else { -1 };
        if plus || p.deg0().is_multiple_of(2) {
            s
        } else {
            -s
        }
    };
    let changes = |plus: bool| seq.windows(2).filter(|w| sign_at(&w[0], plus) != sign_at(&w[1], plus)).count();
    changes(false) - changes(true)
}

/// Whether the curve has a point over R, with a short reason.
pub fn real_soluble_reason(curve: &CurveModel) -> (bool, String) {
    match curve {
        CurveModel::Conic(c) => {
            let signs = [c.a.signum(), c.b.signum(), -c.c.signum()];
            let definite = signs.iter().all(|&s| s == signs[0]);
            (!definite, if definite { "definite form".into() } else { "indefinite form".into() })
        }
        CurveModel::Elliptic(_) => (true, "rational point at infinity".into()),
        CurveModel::PlaneCubic(_) => (true, "odd degree: every real line meets the curve".into()),
        CurveModel::Hyperelliptic(h) => {
            if h.degree() % 2 == 1 {
                (true, "rational point at infinity".into())
            } else if h.leading() > 0 {
                (true, "f positive for large |x|".into())
            } else if real_root_count(&h.f) > 0 {
                (true, "f has a real root".into())
            } else {
                (false, "f negative on all of R".into())
            }
        }
    }
}

pub fn real_soluble(curve: &CurveModel) -> bool {
    real_soluble_reason(curve).0
}
