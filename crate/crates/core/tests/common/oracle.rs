//! Naive reference implementation of the sieve over F_p, written from the
//! definitions with plain u64 arithmetic. Reads the raw config JSON and
//! shares nothing with the library beyond serde_json.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde_json::{json, Value};

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn md(a: i128, p: u64) -> u64 {
    a.rem_euclid(p as i128) as u64
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pw(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    pw(a, p - 2, p)
}

/// A rational number read as integer or [num, den], reduced mod p; None if p | den.
fn rat_mod(v: &Value, p: u64) -> Option<u64> {
    let (n, d) = match v {
        Value::Array(nd) => (nd[0].as_i64().unwrap() as i128, nd[1].as_i64().unwrap() as i128),
        other => (other.as_i64().unwrap() as i128, 1),
    };
    let d = md(d, p);
    (d != 0).then(|| mul(md(n, p), inv(d, p), p))
}

// Polynomials over F_p, ascending coefficients, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn padd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

fn pneg(a: &Poly, p: u64) -> Poly {
    a.iter().map(|&c| (p - c) % p).collect()
}

fn psub(a: &Poly, b: &Poly, p: u64) -> Poly {
    padd(a, &pneg(b, p), p)
}

fn pmul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mul(x, y, p)) % p;
        }
    }
    trim(r)
}

fn pdivrem(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let b = trim(b.clone());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let li = inv(*b.last().unwrap(), p);
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mul(*r.last().unwrap(), li, p);
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - mul(c, bc, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(a: &Poly, p: u64) -> Poly {
    let li = inv(*a.last().unwrap(), p);
    a.iter().map(|&c| mul(c, li, p)).collect()
}

/// (g, s, t) with g = s a + t b, g monic (or zero).
fn xgcd(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1) = (vec![1], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        (r0, r1, s0, s1, t0, t1) = (r1, r, s1, s2, t1, t2);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let li = inv(*r0.last().unwrap(), p);
    let sc = |x: &Poly| trim(x.iter().map(|&c| mul(c, li, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn peval(f: &Poly, x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mul(acc, x, p) + c) % p)
}

fn sqrt_all(a: u64, p: u64) -> Vec<u64> {
    (0..p).filter(|&y| mul(y, y, p) == a).collect()
}

/// A group element in a canonical, comparable form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum El {
    Inf,
    Pt(u64, u64),
    Mum(Poly, Poly),
}

#[derive(Debug, Clone)]
pub enum Group {
    /// y² = x³ + a x + b
    Ec { p: u64, a: u64, b: u64 },
    /// y² = f(x), deg f = 5
    G2 { p: u64, f: Poly },
}

impl Group {
    pub fn new(curve: &Value, p: u64) -> Group {
        let coeffs: Vec<i64> = curve["coeffs"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
        match curve["type"].as_str().unwrap() {
            "elliptic" => Group::Ec { p, a: md(coeffs[0] as i128, p), b: md(coeffs[1] as i128, p) },
            "hyperelliptic" => {
                assert_eq!(coeffs.len(), 6, "oracle handles degree-5 models only");
                Group::G2 { p, f: trim(coeffs.iter().map(|&c| md(c as i128, p)).collect()) }
            }
            other => panic!("oracle does not handle {other}"),
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            Group::Ec { p, .. } | Group::G2 { p, .. } => *p,
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            Group::Ec { .. } => 1,
            Group::G2 { .. } => 2,
        }
    }

    pub fn is_good(&self) -> bool {
        match self {
            Group::Ec { p, a, b } => {
                *p >= 5 && !(4 * mul(mul(*a, *a, *p), *a, *p) + 27 * mul(*b, *b, *p)).is_multiple_of(*p)
            }
            Group::G2 { p, f } => {
                if *p < 3 || f.len() != 6 {
                    return false;
                }
                let df: Poly = trim(f.iter().enumerate().skip(1).map(|(i, &c)| mul(c, i as u64 % p, *p)).collect());
                xgcd(f, &df, *p).0.len() == 1
            }
        }
    }

    pub fn zero(&self) -> El {
        match self {
            Group::Ec { .. } => El::Inf,
            Group::G2 { .. } => El::Mum(vec![1], vec![]),
        }
    }

    /// Affine points of the curve.
    pub fn points(&self) -> Vec<(u64, u64)> {
        let p = self.p();
        let rhs = |x: u64| match self {
            Group::Ec { a, b, .. } => (mul(mul(x, x, p), x, p) + mul(*a, x, p) + b) % p,
            Group::G2 { f, .. } => peval(f, x, p),
        };
        (0..p).flat_map(|x| sqrt_all(rhs(x), p).into_iter().map(move |y| (x, y))).collect()
    }

    /// The class [P − ∞].
    pub fn point_class(&self, x: u64, y: u64) -> El {
        match self {
            Group::Ec { .. } => El::Pt(x, y),
            Group::G2 { p, .. } => El::Mum(vec![(p - x) % p, 1], trim(vec![y])),
        }
    }

    /// Every element, by direct enumeration of the definition.
    pub fn elements(&self) -> Vec<El> {
        let mut out = vec![self.zero()];
        match self {
            Group::Ec { .. } => out.extend(self.points().into_iter().map(|(x, y)| El::Pt(x, y))),
            Group::G2 { p, f } => {
                let p = *p;
                out.extend(self.points().into_iter().map(|(x, y)| self.point_class(x, y)));
                // u = x² + b x + c, v = v1 x + v0 with u | f − v²
                for b in 0..p {
                    for c in 0..p {
                        let u = vec![c, b, 1];
                        let r = pdivrem(f, &u, p).1;
                        let (r0, r1) = (*r.first().unwrap_or(&0), *r.get(1).unwrap_or(&0));
                        for v1 in 0..p {
                            let s = mul(v1, v1, p);
                            for v0 in 0..p {
                                // (v1 x + v0)² mod u
                                let e1 = (2 * mul(v1, v0, p) % p + p - mul(b, s, p)) % p;
                                let e0 = (mul(v0, v0, p) + p - mul(c, s, p)) % p;
                                if e1 == r1 && e0 == r0 {
                                    out.push(El::Mum(u.clone(), trim(vec![v0, v1])));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn neg(&self, a: &El) -> El {
        let p = self.p();
        match a {
            El::Inf => El::Inf,
            El::Pt(x, y) => El::Pt(*x, (p - y) % p),
            El::Mum(u, v) => El::Mum(u.clone(), pneg(v, p)),
        }
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        match self {
            Group::Ec { p, a: ca, .. } => {
                let p = *p;
                match (a, b) {
                    (El::Inf, q) | (q, El::Inf) => q.clone(),
                    (El::Pt(x1, y1), El::Pt(x2, y2)) => {
                        let lambda = if x1 != x2 {
                            mul((y2 + p - y1) % p, inv((x2 + p - x1) % p, p), p)
                        } else if (y1 + y2) % p == 0 {
                            return El::Inf;
                        } else {
                            mul((3 * mul(*x1, *x1, p) + ca) % p, inv(2 * y1 % p, p), p)
                        };
                        let x3 = (mul(lambda, lambda, p) + 2 * p - x1 - x2) % p;
                        let y3 = (mul(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
                        El::Pt(x3, y3)
                    }
                    _ => unreachable!(),
                }
            }
            Group::G2 { p, f } => {
                let p = *p;
                let (El::Mum(u1, v1), El::Mum(u2, v2)) = (a, b) else { unreachable!() };
                let (d1, e1, e2) = xgcd(u1, u2, p);
                let (d, c1, c2) = xgcd(&d1, &padd(v1, v2, p), p);
                let (s1, s2, s3) = (pmul(&c1, &e1, p), pmul(&c1, &e2, p), c2);
                let d2 = pmul(&d, &d, p);
                let mut u = pdivrem(&pmul(u1, u2, p), &d2, p).0;
                let num = padd(
                    &padd(&pmul(&pmul(&s1, u1, p), v2, p), &pmul(&pmul(&s2, u2, p), v1, p), p),
                    &pmul(&s3, &padd(&pmul(v1, v2, p), f, p), p),
                    p,
                );
                let mut v = pdivrem(&pdivrem(&num, &d, p).0, &u, p).1;
                while u.len() > 3 {
                    u = pdivrem(&psub(f, &pmul(&v, &v, p), p), &u, p).0;
                    v = pdivrem(&pneg(&v, p), &u, p).1;
                }
                let u = monic(&u, p);
                let v = pdivrem(&v, &u, p).1;
                El::Mum(u, v)
            }
        }
    }

    pub fn times(&self, a: &El, n: u64) -> El {
        let mut r = self.zero();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = self.add(&r, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        r
    }

    /// Reduction of a rational point or divisor given in config JSON; None if
    /// a Mumford coefficient has p in its denominator.
    pub fn reduce(&self, v: &Value) -> Option<El> {
        let p = self.p();
        match v {
            Value::String(_) => Some(self.zero()),
            Value::Array(xy) => match self {
                Group::Ec { .. } => Some(match (rat_mod(&xy[0], p), rat_mod(&xy[1], p)) {
                    (Some(x), Some(y)) => El::Pt(x, y),
                    _ => El::Inf,
                }),
                Group::G2 { .. } => Some(self.point_class(rat_mod(&xy[0], p)?, rat_mod(&xy[1], p)?)),
            },
            Value::Object(m) => {
                let list = |k: &str| -> Option<Poly> {
                    Some(trim(m[k].as_array().unwrap().iter().map(|c| rat_mod(c, p)).collect::<Option<Vec<_>>>()?))
                };
                Some(El::Mum(list("u")?, list("v")?))
            }
            other => panic!("unrecognized point {other}"),
        }
    }

    /// Parses a group element from the library's JSON rendering.
    pub fn from_library_json(&self, v: &Value) -> El {
        let nums = |v: &Value| -> Poly { trim(v.as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect()) };
        match v {
            Value::String(s) if s == "identity" => self.zero(),
            Value::Array(xy) => El::Pt(xy[0].as_u64().unwrap(), xy[1].as_u64().unwrap()),
            Value::Object(m) => El::Mum(nums(&m["u"]), nums(&m["v"])),
            other => panic!("unrecognized element {other}"),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generators in coordinate order (free, then torsion) and coordinate moduli.
fn generators(config: &Value) -> (Vec<Value>, Vec<u64>, Vec<u64>) {
    let b = config.get("modulus").and_then(Value::as_u64).unwrap_or(12);
    let basis = config.get("basis").cloned().unwrap_or(json!({}));
    let list = |k: &str| basis.get(k).and_then(Value::as_array).cloned().unwrap_or_default();
    let free = list("free");
    let torsion = list("torsion");
    let mut gens: Vec<Value> = free.iter().map(|g| g["point"].clone()).collect();
    gens.extend(torsion.iter().map(|g| g["point"].clone()));
    let mut radices = vec![b; free.len()];
    let orders: Vec<u64> = torsion.iter().map(|g| g["order"].as_u64().unwrap()).collect();
    radices.extend(orders.iter().map(|&n| gcd(n, b)));
    (gens, radices, orders)
}

fn base_value(config: &Value) -> Value {
    match config.get("base") {
        None => json!("infinity"),
        Some(Value::String(_)) => json!("infinity"),
        Some(Value::Object(m)) => m.values().next().unwrap().clone(),
        Some(other) => panic!("bad base {other}"),
    }
}

/// Sieving primes chosen from the definition of admissibility.
pub fn primes(config: &Value) -> Vec<u64> {
    if let Some(list) = config.get("primes") {
        let mut ps: Vec<u64> = list.as_array().unwrap().iter().map(|p| p.as_u64().unwrap()).collect();
        ps.sort_unstable();
        ps.dedup();
        return ps;
    }
    let count = config.get("prime_count").and_then(Value::as_u64).unwrap_or(8) as usize;
    let b = config.get("modulus").and_then(Value::as_u64).unwrap_or(12);
    let (gens, _, orders) = generators(config);
    let base = base_value(config);
    (5..)
        .filter(|&p| is_prime(p))
        .take_while(|&p| p <= if config["curve"]["type"] == "elliptic" { 199 } else { 61 })
        .filter(|&p| {
            let g = Group::new(&config["curve"], p);
            g.is_good()
                && !b.is_multiple_of(p)
                && orders.iter().all(|n| n % p != 0)
                && gens.iter().chain([&base]).all(|v| g.reduce(v).is_some())
        })
        .take(count)
        .collect()
}

/// W_p as a sorted list of coset tuples.
pub fn admissible(config: &Value, p: u64) -> Vec<Vec<u64>> {
    let g = Group::new(&config["curve"], p);
    let b = config.get("modulus").and_then(Value::as_u64).unwrap_or(12);
    let (gens, radices, _) = generators(config);
    let gens: Vec<El> = gens.iter().map(|v| g.reduce(v).unwrap()).collect();
    let beta = g.reduce(&base_value(config)).unwrap();
    let all = g.elements();
    let zero_cycles = config.get("mode").and_then(Value::as_str) == Some("zero_cycles");
    let image: Vec<El> = if zero_cycles {
        all.clone()
    } else {
        let mut im = vec![g.neg(&beta)];
        im.extend(g.points().into_iter().map(|(x, y)| g.add(&g.point_class(x, y), &g.neg(&beta))));
        im
    };
    let bj: HashSet<El> = all.iter().map(|x| g.times(x, b)).collect();
    let target: HashSet<El> = image.iter().flat_map(|c| bj.iter().map(move |y| (c, y))).map(|(c, y)| g.add(c, y)).collect();
    let mut out = vec![];
    let mut t = vec![0u64; radices.len()];
    loop {
        let s = t.iter().zip(&gens).fold(g.zero(), |acc, (&c, gen)| g.add(&acc, &g.times(gen, c)));
        if target.contains(&s) {
            out.push(t.clone());
        }
        let mut i = t.len();
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < radices[i] {
                break;
            }
            t[i] = 0;
        }
    }
}

/// The whole sieve: {"primes", "admissible": {p: W_p}, "verdict": survivors}.
pub fn sieve(config: &Value) -> Value {
    let ps = primes(config);
    let mut per_prime = BTreeMap::new();
    let mut running: Option<BTreeSet<Vec<u64>>> = None;
    for &p in ps.iter().rev() {
        let w = admissible(config, p);
        let set: BTreeSet<Vec<u64>> = w.iter().cloned().collect();
        running = Some(match running {
            None => set,
            Some(r) => r.intersection(&set).cloned().collect(),
        });
        per_prime.insert(p.to_string(), json!(w));
    }
    let survivors: Vec<Vec<u64>> = running.unwrap_or_default().into_iter().collect();
    json!({"primes": ps, "admissible": per_prime, "survivors": survivors})
}

/// Number of reduced divisors found by exhaustive enumeration.
pub fn group_order(curve: &Value, p: u64) -> usize {
    Group::new(curve, p).elements().len()
}
