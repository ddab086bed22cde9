//! Solution triples (ε, η, A) and residuals of every equation family.

use crate::group::{Elem, GroupError, GroupSpec};
use crate::phase::Phase;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use thiserror::Error;

/// Default acceptance tolerance for residual checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SolutionError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("{what}: deviation {deviation:.3e}")]
    Inconsistent { what: String, deviation: f64 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub source: String,
}

/// The data (ε_h(g), η_g, A_g(h,k)).
///
/// `epsilon[h*n+g] = ε_h(g)`, `eta[g]` is the exponent of η_g = exp(2πi e/3),
/// `a[(g*n+h)*n+k] = A_g(h,k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionTriple {
    pub group: GroupSpec,
    pub epsilon: Vec<i8>,
    pub eta: Vec<u8>,
    pub a: Vec<Complex64>,
    pub meta: Meta,
}

#[derive(Serialize, Deserialize)]
struct JsonComplex {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct SolutionFile {
    group: GroupSpec,
    epsilon: Vec<Vec<i8>>,
    eta: Vec<u8>,
    #[serde(rename = "A")]
    a: Vec<Vec<Vec<JsonComplex>>>,
    #[serde(default)]
    meta: Meta,
}

impl SolutionTriple {
    pub fn new(
        group: GroupSpec,
        epsilon: Vec<i8>,
        eta: Vec<u8>,
        a: Vec<Complex64>,
    ) -> Result<SolutionTriple, SolutionError> {
        let n = group.order();
        if epsilon.len() != n * n || eta.len() != n || a.len() != n * n * n {
            return Err(SolutionError::Shape(format!(
                "expected ε {}x{}, η {}, A {}^3; got {}, {}, {}",
                n,
                n,
                n,
                n,
                epsilon.len(),
                eta.len(),
                a.len()
            )));
        }
        if let Some(e) = epsilon.iter().find(|&&e| e != 1 && e != -1) {
            return Err(SolutionError::InvalidValue(format!("ε entry {e} is not ±1")));
        }
        if let Some(e) = eta.iter().find(|&&e| e > 2) {
            return Err(SolutionError::InvalidValue(format!("η exponent {e} not in 0..3")));
        }
        Ok(SolutionTriple { group, epsilon, eta, a, meta: Meta::default() })
    }

    pub fn with_meta(mut self, name: &str, source: &str) -> Self {
        self.meta = Meta { name: name.into(), source: source.into() };
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn d(&self) -> f64 {
        self.group.dimension()
    }

    #[inline]
    pub fn eps(&self, h: Elem, g: Elem) -> i8 {
        self.epsilon[h * self.n() + g]
    }

    #[inline]
    pub fn epsf(&self, h: Elem, g: Elem) -> f64 {
        self.eps(h, g) as f64
    }

    #[inline]
    pub fn eta_phase(&self, g: Elem) -> Phase {
        Phase::new(self.eta[g] as i64, 3)
    }

    #[inline]
    pub fn eta_c(&self, g: Elem) -> Complex64 {
        eta_value(self.eta[g])
    }

    #[inline]
    pub fn idx(&self, g: Elem, h: Elem, k: Elem) -> usize {
        let n = self.n();
        (g * n + h) * n + k
    }

    #[inline]
    pub fn amp(&self, g: Elem, h: Elem, k: Elem) -> Complex64 {
        self.a[self.idx(g, h, k)]
    }

    pub fn set_amp(&mut self, g: Elem, h: Elem, k: Elem, v: Complex64) {
        let i = self.idx(g, h, k);
        self.a[i] = v;
    }

    /// Whether every amplitude is nonzero (beyond `tol`).
    pub fn all_amplitudes_nonzero(&self, tol: f64) -> bool {
        self.a.iter().all(|z| z.norm() > tol)
    }

    pub fn max_amplitude_distance(&self, o: &SolutionTriple) -> f64 {
        self.a.iter().zip(&o.a).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let n = self.n();
        let file = SolutionFile {
            group: self.group.clone(),
            epsilon: (0..n).map(|h| (0..n).map(|g| self.eps(h, g)).collect()).collect(),
            eta: self.eta.clone(),
            a: (0..n)
                .map(|g| {
                    (0..n)
                        .map(|h| {
                            (0..n)
                                .map(|k| {
                                    let z = self.amp(g, h, k);
                                    JsonComplex { re: z.re, im: z.im }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            meta: self.meta.clone(),
        };
        serde_json::to_value(file).expect("solution serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("solution serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<SolutionTriple, SolutionError> {
        let f: SolutionFile = serde_json::from_value(v)?;
        let n = f.group.order();
        if f.epsilon.len() != n || f.epsilon.iter().any(|r| r.len() != n) {
            return Err(SolutionError::Shape(format!("epsilon must be {n}x{n}")));
        }
        if f.a.len() != n || f.a.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(SolutionError::Shape(format!("A must be {n}x{n}x{n}")));
        }
        let epsilon = f.epsilon.into_iter().flatten().collect();
        let a = f
            .a
            .into_iter()
            .flatten()
            .flatten()
            .map(|c| Complex64::new(c.re, c.im))
            .collect();
        let mut s = SolutionTriple::new(f.group, epsilon, f.eta, a)?;
        s.meta = f.meta;
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<SolutionTriple, SolutionError> {
        Self::from_json_value(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<SolutionTriple, SolutionError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), SolutionError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[inline]
pub fn eta_value(e: u8) -> Complex64 {
    match e % 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(-0.5, 0.75f64.sqrt()),
        _ => Complex64::new(-0.5, -(0.75f64.sqrt())),
    }
}

/// Equation families reported by the residual checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "cocycle")]
    Cocycle,
    R1,
    O1,
    O2,
    #[serde(rename = "2hshift")]
    TwoHShift,
    CC,
    R2,
    #[serde(rename = "hkshift")]
    HkShift,
    AAA,
    I,
    O3,
    Deg1,
    Deg2,
    Deg3,
    #[serde(rename = "|A|1")]
    AbsA1,
    #[serde(rename = "|A|")]
    AbsA,
    #[serde(rename = "AA-AA")]
    AaAa,
}

impl Family {
    pub const SYSTEM: [Family; 11] = [
        Family::Cocycle,
        Family::R1,
        Family::O1,
        Family::O2,
        Family::TwoHShift,
        Family::CC,
        Family::R2,
        Family::HkShift,
        Family::AAA,
        Family::I,
        Family::O3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Cocycle => "cocycle",
            Family::R1 => "R1",
            Family::O1 => "O1",
            Family::O2 => "O2",
            Family::TwoHShift => "2hshift",
            Family::CC => "CC",
            Family::R2 => "R2",
            Family::HkShift => "hkshift",
            Family::AAA => "AAA",
            Family::I => "I",
            Family::O3 => "O3",
            Family::Deg1 => "Deg1",
            Family::Deg2 => "Deg2",
            Family::Deg3 => "Deg3",
            Family::AbsA1 => "|A|1",
            Family::AbsA => "|A|",
            Family::AaAa => "AA-AA",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residuals: BTreeMap<Family, f64>,
    pub epsilon_signs_ok: bool,
    pub eta_cube_roots_ok: bool,
    pub overall: f64,
    pub tol: f64,
}

impl ResidualReport {
    fn from_map(residuals: BTreeMap<Family, f64>, tol: f64) -> ResidualReport {
        let overall = residuals.values().cloned().fold(0.0, f64::max);
        ResidualReport { residuals, epsilon_signs_ok: true, eta_cube_roots_ok: true, overall, tol }
    }

    pub fn passes(&self) -> bool {
        self.epsilon_signs_ok && self.eta_cube_roots_ok && self.overall < self.tol
    }

    pub fn get(&self, f: Family) -> f64 {
        self.residuals.get(&f).copied().unwrap_or(0.0)
    }

    /// Families whose residual exceeds the tolerance.
    pub fn failing(&self) -> Vec<Family> {
        self.residuals.iter().filter(|(_, &v)| !(v < self.tol)).map(|(&f, _)| f).collect()
    }
}

struct Acc(f64);

impl Acc {
    #[inline]
    fn push(&mut self, v: f64) {
        if !(v <= self.0) {
            self.0 = v;
        }
    }
}

/// Evaluates every instance of every equation family.
pub fn evaluate_residuals(s: &SolutionTriple, tol: f64) -> ResidualReport {
    let g = &s.group;
    let n = g.order();
    let d = s.d();
    let e = |h: Elem, x: Elem| s.epsf(h, x);
    let et = |x: Elem| s.eta_c(x);
    let a = |x: Elem, h: Elem, k: Elem| s.amp(x, h, k);
    let add = |x: Elem, y: Elem| g.add(x, y);
    let sub = |x: Elem, y: Elem| g.sub(x, y);
    let neg = |x: Elem| g.neg(x);
    let delta = |x: Elem| if x == 0 { 1.0 } else { 0.0 };
    let mut map = BTreeMap::new();

    let mut r = Acc(0.0);
    for x in 0..n {
        for h in 0..n {
            r.push((e(h, 0) - 1.0).abs());
            for k in 0..n {
                r.push((e(add(h, k), x) - e(h, x) * e(k, add(x, g.double(h)))).abs());
            }
        }
    }
    map.insert(Family::Cocycle, r.0);

    let mut r = Acc(0.0);
    for x in 0..n {
        for h in 0..n {
            r.push((et(add(x, g.double(h))) - et(x)).norm());
        }
    }
    map.insert(Family::R1, r.0);

    let mut r = Acc(0.0);
    for x in 0..n {
        let sum: Complex64 = (0..n).map(|h| a(x, h, 0)).sum();
        r.push((sum + et(x).conj() / d).norm());
    }
    map.insert(Family::O1, r.0);

    let mut r = Acc(0.0);
    for x in 0..n {
        for y in 0..n {
            for k in 0..n {
                let sum: Complex64 =
                    (0..n).map(|h| a(x, sub(h, x), k) * a(y, sub(h, y), k).conj()).sum();
                let rhs = delta(sub(x, y)) - et(x).conj() * et(y) * delta(k) / d;
                r.push((sum - rhs).norm());
            }
        }
    }
    map.insert(Family::O2, r.0);

    let mut r = Acc(0.0);
    for x in 0..n {
        for h in 0..n {
            let t = add(x, g.double(h));
            for p in 0..n {
                for q in 0..n {
                    let sign = e(h, x) * e(h, add(x, p)) * e(h, add(x, q)) * e(h, add(add(x, p), q));
                    r.push((a(t, p, q) - sign * a(x, p, q)).norm());
                }
            }
        }
    }
    map.insert(Family::TwoHShift, r.0);

    let mut r_cc = Acc(0.0);
    let mut r_r2 = Acc(0.0);
    let mut r_hk = Acc(0.0);
    let mut r_i = Acc(0.0);
    for x in 0..n {
        for h in 0..n {
            for k in 0..n {
                let v = a(x, h, k);
                r_cc.push((a(x, k, h) - v.conj()).norm());
                let xh = add(x, h);
                let xk = add(x, k);
                let xhk = add(xh, k);
                let mk = neg(k);
                let mh = neg(h);
                let s1 = e(mk, xh) * e(mk, xk) * e(mk, xhk);
                r_r2.push((v - a(x, mk, sub(h, k)) * et(x) * s1).norm());
                let s2 = e(mh, xh) * e(mh, xk) * e(mh, xhk);
                r_r2.push((v - a(x, sub(k, h), mh) * et(x).conj() * s2).norm());
                let c1 = et(x) * et(xk) * et(xh).conj() * et(xhk).conj() * e(h, x) * e(h, xk);
                r_hk.push((v - a(xh, h, k) * c1).norm());
                let c2 = (et(x) * et(xh)).conj() * et(xk) * et(xhk) * e(k, x) * e(k, xh);
                r_hk.push((v - a(xk, h, k) * c2).norm());
                let c3 = e(h, xk) * e(k, xh) * e(add(h, k), x) * et(xh) * et(xk).conj();
                r_i.push((v - a(xhk, h, k) * c3).norm());
            }
        }
    }
    map.insert(Family::CC, r_cc.0);
    map.insert(Family::R2, r_r2.0);
    map.insert(Family::HkShift, r_hk.0);
    map.insert(Family::I, r_i.0);

    map.insert(Family::AAA, aaa_residual(s));

    let mut r = Acc(0.0);
    for x0 in 0..n {
        for p in 0..n {
            for q in 0..n {
                for x in 0..n {
                    let u = add(sub(x0, p), x);
                    let w = sub(x0, q);
                    let sum: Complex64 =
                        (0..n).map(|l| a(u, neg(x), add(l, p)) * a(w, x, add(l, q))).sum();
                    let rhs = delta(add(sub(p, q), x)) * et(add(x0, q)).conj()
                        * e(x, sub(sub(x0, p), x))
                        - delta(x) * et(add(x0, p)) * et(add(x0, q)) / d;
                    r.push((sum - rhs).norm());
                }
            }
        }
    }
    map.insert(Family::O3, r.0);

    let mut rep = ResidualReport::from_map(map, tol);
    rep.epsilon_signs_ok = s.epsilon.iter().all(|&v| v == 1 || v == -1);
    rep.eta_cube_roots_ok = s.eta.iter().all(|&v| v < 3);
    rep
}

/// Max residual of the AAA family over all (g,p,q,x,y).
pub fn aaa_residual(s: &SolutionTriple) -> f64 {
    let g = &s.group;
    let n = g.order();
    let d = s.d();
    let e = |h: Elem, x: Elem| s.epsf(h, x);
    let et = |x: Elem| s.eta_c(x);
    let a = |x: Elem, h: Elem, k: Elem| s.amp(x, h, k);
    let add = |x: Elem, y: Elem| g.add(x, y);
    let sub = |x: Elem, y: Elem| g.sub(x, y);
    let mut r = Acc(0.0);
    for x0 in 0..n {
        for p in 0..n {
            for q in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let xy = add(x, y);
                        let u = add(sub(x0, p), x);
                        let w = add(sub(x0, q), xy);
                        let lhs: Complex64 = (0..n)
                            .map(|l| a(x0, xy, l) * a(u, g.neg(x), add(l, p)) * a(w, g.neg(y), add(l, q)))
                            .sum();
                        let etas = et(x0) * et(add(add(x0, q), x)) * et(add(add(x0, p), add(q, y)))
                            * (et(add(x0, p)) * et(add(x0, xy)) * et(add(add(x0, q), xy))).conj();
                        let signs = e(p, add(sub(x0, p), x))
                            * e(add(p, x), add(sub(x0, p), add(q, y)))
                            * e(q, add(sub(x0, q), xy))
                            * e(add(q, y), add(sub(x0, q), x));
                        let mut rhs = a(x0, add(p, x), add(q, xy)) * a(sub(x0, p), add(q, y), add(p, xy))
                            * etas
                            * signs;
                        if x == 0 && y == 0 {
                            rhs -= et(x0) * et(add(x0, p)) * et(add(x0, q)) / d;
                        }
                        r.push((lhs - rhs).norm());
                    }
                }
            }
        }
    }
    r.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSystemFlags {
    pub q1: bool,
    pub q2: bool,
}

/// A_g(h,0) = δ_{h,0} − 1/(d−1), at g=0 (q1) and for all g (q2).
pub fn check_qsystem(s: &SolutionTriple, tol: f64) -> QSystemFlags {
    let n = s.n();
    let d = s.d();
    let ok = |g: Elem| {
        (0..n).all(|h| {
            let target = if h == 0 { 1.0 } else { 0.0 } - 1.0 / (d - 1.0);
            (s.amp(g, h, 0) - target).norm() < tol
        })
    };
    let q1 = ok(0);
    let q2 = q1 && (0..n).all(ok);
    QSystemFlags { q1, q2 }
}

/// Real table x_{g,h}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XTable {
    pub group: GroupSpec,
    /// `values[g*n+h] = x_{g,h}`.
    pub values: Vec<f64>,
}

impl XTable {
    #[inline]
    pub fn get(&self, g: Elem, h: Elem) -> f64 {
        self.values[g * self.group.order() + h]
    }

    /// Largest violation of x_{g,h}=x_{g+2l,h}=x_{g+h,h}.
    pub fn shift_violation(&self) -> f64 {
        let g = &self.group;
        let mut m = 0.0f64;
        for x in g.elements() {
            for h in g.elements() {
                m = m.max((self.get(x, h) - self.get(g.add(x, h), h)).abs());
                for l in g.elements() {
                    m = m.max((self.get(x, h) - self.get(g.add(x, g.double(l)), h)).abs());
                }
            }
        }
        m
    }

    pub fn max_distance(&self, o: &XTable) -> f64 {
        self.values.iter().zip(&o.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// x_{g,h} = ε_{−h}(g)A_g(−h,−h) = η_g A_g(h,0) = conj(η_g)A_g(0,h), checked at `DEFAULT_TOL`.
pub fn x_table(s: &SolutionTriple) -> Result<XTable, SolutionError> {
    x_table_with_tol(s, DEFAULT_TOL)
}

pub fn x_table_with_tol(s: &SolutionTriple, tol: f64) -> Result<XTable, SolutionError> {
    let g = &s.group;
    let n = g.order();
    let mut values = vec![0.0; n * n];
    let mut dev = 0.0f64;
    for x in 0..n {
        for h in 0..n {
            let mh = g.neg(h);
            let v1 = s.epsf(mh, x) * s.amp(x, mh, mh);
            let v2 = s.eta_c(x) * s.amp(x, h, 0);
            let v3 = s.eta_c(x).conj() * s.amp(x, 0, h);
            dev = dev.max((v1 - v2).norm()).max((v1 - v3).norm()).max(v1.im.abs());
            values[x * n + h] = v1.re;
        }
    }
    if dev > tol {
        return Err(SolutionError::Inconsistent { what: "x-table expressions disagree".into(), deviation: dev });
    }
    Ok(XTable { group: g.clone(), values })
}

/// Residuals of (Deg1)–(Deg3).
pub fn check_degenerate(x: &XTable, tol: f64) -> ResidualReport {
    let g = &x.group;
    let n = g.order();
    let d = g.dimension();
    let mut map = BTreeMap::new();
    let mut r = Acc(0.0);
    for a in 0..n {
        let sum: f64 = (0..n).map(|l| x.get(a, l)).sum();
        r.push((sum + 1.0 / d).abs());
    }
    map.insert(Family::Deg1, r.0);
    let mut r = Acc(0.0);
    for a in 0..n {
        for b in 0..n {
            let sum: f64 = (0..n).map(|l| x.get(a, g.sub(l, a)) * x.get(b, g.sub(l, b))).sum();
            let rhs = if a == b { 1.0 } else { 0.0 } - 1.0 / d;
            r.push((sum - rhs).abs());
        }
    }
    map.insert(Family::Deg2, r.0);
    let mut r = Acc(0.0);
    for a in 0..n {
        for h in 0..n {
            let sum: f64 =
                (0..n).map(|l| x.get(a, l).powi(2) * x.get(g.sub(a, h), g.add(l, h))).sum();
            r.push((sum - x.get(a, h).powi(2) + 1.0 / d).abs());
        }
    }
    map.insert(Family::Deg3, r.0);
    ResidualReport::from_map(map, tol)
}

/// |A_g(h,k)|² predicted from the x-table: Σ_l x_{g,l}x_{g−h,l+h}x_{g−k,l+k} + 1/d.
pub fn magnitude_from_x(x: &XTable, a: Elem, h: Elem, k: Elem) -> f64 {
    let g = &x.group;
    let n = g.order();
    let s: f64 = (0..n)
        .map(|l| x.get(a, l) * x.get(g.sub(a, h), g.add(l, h)) * x.get(g.sub(a, k), g.add(l, k)))
        .sum();
    s + 1.0 / g.dimension()
}

/// Max deviation of (|A|1), and of (|A|) when the triple satisfies (Q2).
pub fn check_amplitude_magnitudes(s: &SolutionTriple, tol: f64) -> f64 {
    let g = &s.group;
    let n = g.order();
    let xs = match x_table_with_tol(s, f64::INFINITY) {
        Ok(x) => x,
        Err(_) => return f64::INFINITY,
    };
    let mut m = 0.0f64;
    for a in 0..n {
        for h in 0..n {
            for k in 0..n {
                m = m.max((magnitude_from_x(&xs, a, h, k) - s.amp(a, h, k).norm_sqr()).abs());
            }
        }
    }
    if check_qsystem(s, tol).q2 {
        m = m.max(abs_a_qsystem_residual(s));
    }
    m
}

/// Residual of (|A|): |A_g(p,q)|² = δδ − (δ_{p0}+δ_{q0}+δ_{pq})/(d−1) + d/(d−1)².
pub fn abs_a_qsystem_residual(s: &SolutionTriple) -> f64 {
    let n = s.n();
    let d = s.d();
    let del = |b: bool| if b { 1.0 } else { 0.0 };
    let mut m = 0.0f64;
    for g in 0..n {
        for p in 0..n {
            for q in 0..n {
                let rhs = del(p == 0 && q == 0) - (del(p == 0) + del(q == 0) + del(p == q)) / (d - 1.0)
                    + d / (d - 1.0).powi(2);
                m = m.max((s.amp(g, p, q).norm_sqr() - rhs).abs());
            }
        }
    }
    m
}

/// Residual of (AA-AA), meaningful when (Q2) holds.
pub fn aa_aa_residual(s: &SolutionTriple) -> f64 {
    let g = &s.group;
    let n = g.order();
    let d = s.d();
    let e = |h: Elem, x: Elem| s.epsf(h, x);
    let mut m = 0.0f64;
    for x0 in 0..n {
        for p in 0..n {
            for q in 0..n {
                for x in 0..n {
                    let mx = g.neg(x);
                    let t1 = s.amp(x0, mx, p) * s.amp(x0, x, q) * e(x, g.sub(x0, x))
                        * e(x, g.sub(g.add(x0, p), x));
                    let t2 = s.amp(x0, g.add(p, x), q) * s.amp(x0, g.sub(q, x), p)
                        * e(x, g.sub(g.add(x0, q), x))
                        * e(x, g.sub(g.add(g.add(x0, p), q), x));
                    let mut rhs = 0.0;
                    if g.add(g.sub(p, q), x) == 0 {
                        rhs += e(x, g.add(x0, p)) / (d - 1.0);
                    }
                    if x == 0 {
                        rhs -= 1.0 / (d - 1.0);
                    }
                    m = m.max((t1 - t2 - rhs).norm());
                }
            }
        }
    }
    m
}

/// χ_g(z) = ε_z(g) for z ∈ G_2, as a sign vector over the listed two-torsion elements.
pub fn two_torsion_character(s: &SolutionTriple, g: Elem, two_torsion: &[Elem]) -> Vec<i8> {
    two_torsion.iter().map(|&z| s.eps(z, g)).collect()
}
