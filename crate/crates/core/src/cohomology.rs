//! T-valued 2-cocycles on finite abelian groups.
//!
//! Representatives of H²(G,T) are built from bicharacter twists between pairs
//! of cyclic factors and then normalized so that ω(g,h)ω(h,g)=1 and
//! ω(g,h)·conj(ω(−g,−h))=1. All entries are exact roots of unity.

use crate::group::{Elem, GroupMap, GroupSpec};
use crate::phase::Phase;
use num_complex::Complex64;
use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    group: GroupSpec,
    table: Vec<Phase>,
}

impl Cocycle2 {
    pub fn trivial(g: &GroupSpec) -> Cocycle2 {
        Cocycle2 { group: g.clone(), table: vec![Phase::ONE; g.order() * g.order()] }
    }

    pub fn from_phases(g: &GroupSpec, table: Vec<Phase>) -> Result<Cocycle2, CohomologyError> {
        if table.len() != g.order() * g.order() {
            return Err(CohomologyError::Precondition("table size mismatch".into()));
        }
        Ok(Cocycle2 { group: g.clone(), table })
    }

    /// ∂f(g,h) = f(g)f(h)conj(f(g+h)).
    pub fn coboundary(g: &GroupSpec, f: &[Phase]) -> Cocycle2 {
        let n = g.order();
        let mut table = vec![Phase::ONE; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = f[a] + f[b] - f[g.add(a, b)];
            }
        }
        Cocycle2 { group: g.clone(), table }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    #[inline]
    pub fn phase(&self, g: Elem, h: Elem) -> Phase {
        self.table[g * self.group.order() + h]
    }

    #[inline]
    pub fn value(&self, g: Elem, h: Elem) -> Complex64 {
        self.phase(g, h).to_complex()
    }

    pub fn table(&self) -> &[Phase] {
        &self.table
    }

    pub fn mul(&self, o: &Cocycle2) -> Cocycle2 {
        let table = self.table.iter().zip(&o.table).map(|(&a, &b)| a + b).collect();
        Cocycle2 { group: self.group.clone(), table }
    }

    pub fn is_trivial_table(&self) -> bool {
        self.table.iter().all(|p| p.is_one())
    }

    pub fn is_cocycle(&self) -> bool {
        let g = &self.group;
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.add(a, b);
                for c in g.elements() {
                    let lhs = self.phase(a, b) + self.phase(ab, c);
                    let rhs = self.phase(b, c) + self.phase(a, g.add(b, c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// ω(g,0)=ω(0,g)=ω(g,−g)=1.
    pub fn is_normalized(&self) -> bool {
        let g = &self.group;
        g.elements().all(|a| {
            self.phase(a, 0).is_one() && self.phase(0, a).is_one() && self.phase(a, g.neg(a)).is_one()
        })
    }

    /// ω(g,h)ω(h,g)=1 and ω(g,h)conj(ω(−g,−h))=1.
    pub fn is_antisym_normalized(&self) -> bool {
        let g = &self.group;
        self.is_normalized()
            && g.elements().all(|a| {
                g.elements().all(|b| {
                    (self.phase(a, b) + self.phase(b, a)).is_one()
                        && (self.phase(a, b) - self.phase(g.neg(a), g.neg(b))).is_one()
                })
            })
    }

    /// The cocycle (g,h) ↦ ω(θ⁻¹g, θ⁻¹h).
    pub fn pushforward(&self, theta: &GroupMap) -> Cocycle2 {
        let n = self.group.order();
        let mut table = vec![Phase::ONE; n * n];
        for a in 0..n {
            for b in 0..n {
                table[theta.apply(a) * n + theta.apply(b)] = self.phase(a, b);
            }
        }
        Cocycle2 { group: self.group.clone(), table }
    }
}

/// Antisymmetric bicharacter b_ω(g,h) = ω(g,h)·conj(ω(h,g)), exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    pub order: usize,
    pub table: Vec<Phase>,
}

impl Bicharacter {
    pub fn phase(&self, g: Elem, h: Elem) -> Phase {
        self.table[g * self.order + h]
    }

    pub fn value(&self, g: Elem, h: Elem) -> Complex64 {
        self.phase(g, h).to_complex()
    }
}

pub fn bicharacter_of(w: &Cocycle2) -> Bicharacter {
    let n = w.group.order();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(w.phase(a, b) - w.phase(b, a));
        }
    }
    Bicharacter { order: n, table }
}

/// A ±1 function μ with μ(2h)=ω(h,h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuDiagonal {
    pub values: Vec<i8>,
}

impl MuDiagonal {
    pub fn trivial(n: usize) -> MuDiagonal {
        MuDiagonal { values: vec![1; n] }
    }

    #[inline]
    pub fn get(&self, g: Elem) -> f64 {
        self.values[g] as f64
    }
}

/// μ on 2G from the diagonal of ω; +1 on elements outside 2G.
pub fn mu_of(w: &Cocycle2) -> Result<MuDiagonal, CohomologyError> {
    let g = &w.group;
    let mut vals: Vec<Option<i8>> = vec![None; g.order()];
    vals[0] = Some(1);
    for h in g.elements() {
        let s = w.phase(h, h).as_sign().ok_or_else(|| {
            CohomologyError::Precondition(format!("ω({h},{h}) = {} is not ±1", w.phase(h, h)))
        })?;
        let t = g.double(h);
        match vals[t] {
            None => vals[t] = Some(s),
            Some(prev) if prev != s => {
                return Err(CohomologyError::Precondition(format!(
                    "ω(h,h) is not a function of 2h at 2h={t}"
                )))
            }
            _ => {}
        }
    }
    Ok(MuDiagonal { values: vals.into_iter().map(|v| v.unwrap_or(1)).collect() })
}

/// One antisym-normalized representative per class of H²(G,T); trivial first.
pub fn h2_representatives(g: &GroupSpec) -> Vec<Cocycle2> {
    let r = g.rank();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let m = g.factors()[i].gcd(&g.factors()[j]);
            if m > 1 {
                pairs.push((i, j, m));
            }
        }
    }
    let total: usize = pairs.iter().map(|p| p.2).product();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut coeffs = Vec::with_capacity(pairs.len());
        for &(_, _, m) in &pairs {
            coeffs.push(idx % m);
            idx /= m;
        }
        let beta = pair_twist(g, &pairs, &coeffs);
        out.push(antisym_normalize(&beta).expect("normalization of a bicharacter twist"));
    }
    out
}

/// Number of classes Π_{i<j} gcd(d_i, d_j).
pub fn h2_order(g: &GroupSpec) -> usize {
    let f = g.factors();
    let mut k = 1;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            k *= f[i].gcd(&f[j]);
        }
    }
    k
}

fn pair_twist(g: &GroupSpec, pairs: &[(usize, usize, usize)], coeffs: &[usize]) -> Cocycle2 {
    let n = g.order();
    let coords: Vec<Vec<usize>> = g.elements().map(|x| g.coords(x)).collect();
    let mut table = vec![Phase::ONE; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut p = Phase::ONE;
            for (&(i, j, m), &c) in pairs.iter().zip(coeffs) {
                p = p + Phase::new((c * coords[a][i] * coords[b][j]) as i64, m as i64);
            }
            table[a * n + b] = p;
        }
    }
    Cocycle2 { group: g.clone(), table }
}

/// Turns a cocycle with ω(g,0)=ω(0,g)=1 into a cohomologous one satisfying
/// ω(g,h)ω(h,g)=1 and ω(g,h)conj(ω(−g,−h))=1.
pub fn antisym_normalize(w: &Cocycle2) -> Result<Cocycle2, CohomologyError> {
    let g = &w.group;
    let n = g.order();
    if !w.is_cocycle() {
        return Err(CohomologyError::Precondition("input is not a cocycle".into()));
    }
    // first make ω(g,−g)=1 with a cochain f satisfying f(g)f(−g)=conj ω(g,−g)
    let mut f = vec![Phase::ONE; n];
    for a in 0..n {
        let b = g.neg(a);
        if a == b {
            f[a] = (-w.phase(a, a)).sqrt();
        } else if a < b {
            f[a] = -w.phase(a, b);
        }
    }
    let w1 = w.mul(&Cocycle2::coboundary(g, &f));
    if !w1.is_normalized() {
        return Err(CohomologyError::Internal("normalization step failed".into()));
    }
    // symmetric part s(g,h)=ω(g,h)ω(h,g) equals ∂μ; find μ by solving on generators
    let mu = symmetric_potential(&w1)?;
    // make μ trivial on G_2 by a character extending μ|G_2
    let g2: Vec<Elem> = g.elements().filter(|&x| g.double(x) == 0).collect();
    let chi = g
        .elements()
        .find(|&c| g2.iter().all(|&z| g.pairing_phase(c, z) == mu[z]))
        .ok_or_else(|| CohomologyError::Internal("μ on G_2 is not a character".into()))?;
    let mu: Vec<Phase> = (0..n).map(|x| mu[x] - g.pairing_phase(chi, x)).collect();
    let mut half = vec![Phase::ONE; n];
    for a in 0..n {
        let b = g.neg(a);
        if a < b {
            half[a] = mu[a].sqrt();
            half[b] = -half[a];
        }
    }
    let out = w1.mul(&Cocycle2::coboundary(g, &half.iter().map(|&p| -p).collect::<Vec<_>>()));
    if !out.is_antisym_normalized() || !out.is_cocycle() {
        return Err(CohomologyError::Internal("antisymmetric normalization failed".into()));
    }
    Ok(out)
}

/// Finds μ with ω(g,h)ω(h,g) = μ(g)μ(h)conj(μ(g+h)), μ(0)=1.
fn symmetric_potential(w: &Cocycle2) -> Result<Vec<Phase>, CohomologyError> {
    let g = &w.group;
    let n = g.order();
    let s = |a: Elem, b: Elem| w.phase(a, b) + w.phase(b, a);
    // μ(g+e_i) = μ(g)μ(e_i)conj(s(g,e_i)); μ(e_i)^{d_i} is forced by walking around the cycle
    let mut mu: Vec<Option<Phase>> = vec![None; n];
    mu[0] = Some(Phase::ONE);
    for i in 0..g.rank() {
        let e = g.generator(i);
        let d = g.factors()[i] as i64;
        // walking e,2e,…,de=0: μ(ke) = μ(e)^k · Π_{j<k} conj s(je,e)
        let mut acc = Phase::ONE;
        let mut x = e;
        for _ in 1..d {
            acc = acc - s(x, e);
            x = g.add(x, e);
        }
        // μ(e)^d · acc = μ(0) = 1
        let target = -acc;
        let (num, den) = target.exponent();
        let base = Phase::new(num, den * d);
        // extend over the subgroup generated so far
        let known: Vec<Elem> = (0..n).filter(|&y| mu[y].is_some()).collect();
        for &y in &known {
            let mut cur = y;
            let mut val = mu[y].unwrap();
            for _ in 1..d {
                val = val + base - s(cur, e);
                cur = g.add(cur, e);
                if mu[cur].is_none() {
                    mu[cur] = Some(val);
                }
            }
        }
    }
    let mu: Vec<Phase> = mu
        .into_iter()
        .map(|m| m.ok_or_else(|| CohomologyError::Internal("μ not defined everywhere".into())))
        .collect::<Result<_, _>>()?;
    for a in 0..n {
        for b in 0..n {
            if s(a, b) != mu[a] + mu[b] - mu[g.add(a, b)] {
                return Err(CohomologyError::Internal("symmetric part is not ∂μ".into()));
            }
        }
    }
    Ok(mu)
}

/// Index of the representative in `reps` cohomologous to `w` (matched by bicharacter).
pub fn class_index(reps: &[Cocycle2], w: &Cocycle2) -> Option<usize> {
    let b = bicharacter_of(w);
    reps.iter().position(|r| bicharacter_of(r) == b)
}
