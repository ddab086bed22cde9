//! Formal rewriting in Cuntz-type algebras.
//!
//! Elements are finite linear combinations of reduced words in the isometries
//! S, T_g (one Cuntz family), V0, V1 (a second family) and R0 = ρ(V0),
//! R1 = ρ(V1) (a third), followed by a unitary λ_l of a crossed product.
//! The relation 1 = Σ X X* is not used as a rewrite; [`defect`] decides
//! equalities by resolving the identity along the words.

use crate::group::{Elem, GroupSpec};
use crate::solution::SolutionTriple;
use num_complex::Complex64;
use std::collections::BTreeMap;
use thiserror::Error;

pub const DROP_TOL: f64 = 1e-13;
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum FormalError {
    #[error("resource bound exceeded: {0} terms")]
    Resource(usize),
    #[error("no image under ρ for generator {0}")]
    Unsupported(String),
    #[error("word mixes families across a starred/unstarred junction; identity resolution cannot decide")]
    Undecidable,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    S,
    T(Elem),
    V0,
    V1,
    /// ρ(V0)
    R0,
    /// ρ(V1)
    R1,
}

const K_S: u16 = 0;
const K_V0: u16 = 200;
const K_V1: u16 = 201;
const K_R0: u16 = 202;
const K_R1: u16 = 203;

fn kind_of(g: Generator) -> u16 {
    match g {
        Generator::S => K_S,
        Generator::T(x) => 1 + x as u16,
        Generator::V0 => K_V0,
        Generator::V1 => K_V1,
        Generator::R0 => K_R0,
        Generator::R1 => K_R1,
    }
}

fn gen_of(kind: u16) -> Generator {
    match kind {
        K_S => Generator::S,
        K_V0 => Generator::V0,
        K_V1 => Generator::V1,
        K_R0 => Generator::R0,
        K_R1 => Generator::R1,
        k => Generator::T(k as usize - 1),
    }
}

#[inline]
fn letter(kind: u16, star: bool) -> u16 {
    kind << 1 | star as u16
}
#[inline]
fn kind(l: u16) -> u16 {
    l >> 1
}
#[inline]
fn starred(l: u16) -> bool {
    l & 1 == 1
}
#[inline]
fn family(l: u16) -> u8 {
    match kind(l) {
        K_V0 | K_V1 => 1,
        K_R0 | K_R1 => 2,
        _ => 0,
    }
}

/// A reduced word followed by λ_lambda (λ_0 = 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<u16>,
    lambda: Elem,
}

impl Word {
    pub fn len(&self) -> usize {
        self.letters.len()
    }
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty() && self.lambda == 0
    }
    pub fn lambda(&self) -> Elem {
        self.lambda
    }
    pub fn letters(&self) -> impl Iterator<Item = (Generator, bool)> + '_ {
        self.letters.iter().map(|&l| (gen_of(kind(l)), starred(l)))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FormalElement {
    terms: BTreeMap<Word, Complex64>,
}

impl FormalElement {
    pub fn zero() -> Self {
        FormalElement::default()
    }
    pub fn scalar(c: Complex64) -> Self {
        let mut e = FormalElement::zero();
        e.add_term(Word { letters: vec![], lambda: 0 }, c);
        e
    }
    pub fn one() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }
    pub fn gen(g: Generator) -> Self {
        Self::word(&[(g, false)], 0)
    }
    pub fn gen_star(g: Generator) -> Self {
        Self::word(&[(g, true)], 0)
    }
    pub fn lambda(l: Elem) -> Self {
        Self::word(&[], l)
    }
    /// A single word; letters must already be reduced.
    pub fn word(letters: &[(Generator, bool)], lambda: Elem) -> Self {
        let mut e = FormalElement::zero();
        let ls = letters.iter().map(|&(g, s)| letter(kind_of(g), s)).collect();
        e.add_term(Word { letters: ls, lambda }, Complex64::new(1.0, 0.0));
        e
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Complex64)> {
        self.terms.iter()
    }
    fn add_term(&mut self, w: Word, c: Complex64) {
        *self.terms.entry(w).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
    fn pruned(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() >= DROP_TOL);
        self
    }
    pub fn scale(&self, c: Complex64) -> Self {
        FormalElement { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }.pruned()
    }
    pub fn add(&self, other: &FormalElement) -> Self {
        let mut e = self.clone();
        for (w, c) in &other.terms {
            e.add_term(w.clone(), *c);
        }
        e.pruned()
    }
    pub fn sub(&self, other: &FormalElement) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }
    /// Coefficient of the empty word.
    pub fn constant(&self) -> Complex64 {
        self.terms.get(&Word { letters: vec![], lambda: 0 }).copied().unwrap_or_default()
    }
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.letters.len()).max().unwrap_or(0)
    }
}

/// Concatenates two reduced letter strings, reducing at the junction;
/// None when a reduction produces zero.
fn join(a: &[u16], b: &[u16]) -> Option<Vec<u16>> {
    let mut i = a.len();
    let mut j = 0;
    while i > 0 && j < b.len() {
        let (x, y) = (a[i - 1], b[j]);
        if starred(x) && !starred(y) && family(x) == family(y) {
            if kind(x) != kind(y) {
                return None;
            }
            i -= 1;
            j += 1;
        } else {
            break;
        }
    }
    let mut out = Vec::with_capacity(i + b.len() - j);
    out.extend_from_slice(&a[..i]);
    out.extend_from_slice(&b[j..]);
    Some(out)
}

/// The group, the action α on the Cuntz generators (through ε) that also
/// governs commuting λ to the right, and the family sizes.
#[derive(Clone, Debug)]
pub struct FormalAlgebra {
    pub group: GroupSpec,
    eps: Vec<i8>,
}

impl FormalAlgebra {
    /// α_h(T_g) = ε_h(g) T_{g+2h}; α fixes S, V_i and R_i.
    pub fn new(group: GroupSpec, eps: Vec<i8>) -> Self {
        FormalAlgebra { group, eps }
    }

    pub fn from_solution(s: &SolutionTriple) -> Self {
        Self::new(s.group.clone(), s.epsilon.clone())
    }

    fn alpha_letter(&self, h: Elem, l: u16) -> (f64, u16) {
        let k = kind(l);
        if h == 0 || k == K_S || k >= K_V0 {
            return (1.0, l);
        }
        let g = k as usize - 1;
        let n = self.group.order();
        let sign = self.eps[h * n + g] as f64;
        let t = self.group.add(g, self.group.double(h));
        (sign, letter(1 + t as u16, starred(l)))
    }

    fn alpha_letters(&self, h: Elem, ls: &[u16]) -> (f64, Vec<u16>) {
        let mut sign = 1.0;
        let mut out = Vec::with_capacity(ls.len());
        for &l in ls {
            let (s, m) = self.alpha_letter(h, l);
            sign *= s;
            out.push(m);
        }
        (sign, out)
    }

    /// α_h applied to an element (λ's are fixed since G is abelian).
    pub fn alpha(&self, h: Elem, x: &FormalElement) -> FormalElement {
        let mut e = FormalElement::zero();
        for (w, c) in &x.terms {
            let (s, ls) = self.alpha_letters(h, &w.letters);
            e.add_term(Word { letters: ls, lambda: w.lambda }, c * s);
        }
        e
    }

    /// The dual action on the crossed product: λ_l ↦ ⟨χ, l⟩ λ_l.
    pub fn dual_action(&self, chi: Elem, x: &FormalElement) -> FormalElement {
        let mut e = FormalElement::zero();
        for (w, c) in &x.terms {
            e.add_term(w.clone(), c * self.group.pairing_phase(chi, w.lambda).to_complex());
        }
        e
    }

    pub fn multiply(&self, a: &FormalElement, b: &FormalElement) -> Result<FormalElement, FormalError> {
        let mut e = FormalElement::zero();
        for (w1, c1) in &a.terms {
            for (w2, c2) in &b.terms {
                let (s, moved) = self.alpha_letters(w1.lambda, &w2.letters);
                if let Some(ls) = join(&w1.letters, &moved) {
                    e.add_term(Word { letters: ls, lambda: self.group.add(w1.lambda, w2.lambda) }, c1 * c2 * s);
                }
            }
            if e.terms.len() > MAX_TERMS {
                return Err(FormalError::Resource(e.terms.len()));
            }
        }
        Ok(e.pruned())
    }

    pub fn product(&self, xs: &[&FormalElement]) -> Result<FormalElement, FormalError> {
        let mut acc = FormalElement::one();
        for x in xs {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// (w λ_l)* = α_{−l}(w*) λ_{−l}.
    pub fn adjoint(&self, x: &FormalElement) -> FormalElement {
        let mut e = FormalElement::zero();
        for (w, c) in &x.terms {
            let rev: Vec<u16> = w.letters.iter().rev().map(|&l| l ^ 1).collect();
            let ml = self.group.neg(w.lambda);
            let (s, ls) = self.alpha_letters(ml, &rev);
            e.add_term(Word { letters: ls, lambda: ml }, c.conj() * s);
        }
        e
    }

    /// Σ X X* over one family: {S, T_g}, {V0, V1} or {R0, R1}.
    pub fn resolve_identity(&self, fam: Generator) -> FormalElement {
        let mut e = FormalElement::zero();
        for k in self.family_kinds(family(letter(kind_of(fam), false))) {
            e.add_term(Word { letters: vec![letter(k, false), letter(k, true)], lambda: 0 }, Complex64::new(1.0, 0.0));
        }
        e
    }

    fn family_kinds(&self, fam: u8) -> Vec<u16> {
        match fam {
            0 => (0..=self.group.order() as u16).collect(),
            1 => vec![K_V0, K_V1],
            _ => vec![K_R0, K_R1],
        }
    }

    /// Largest coefficient left after resolving the identity along every
    /// word: zero iff the element vanishes in the algebra.
    pub fn defect(&self, x: &FormalElement) -> Result<f64, FormalError> {
        let mut per_lambda: BTreeMap<Elem, Vec<Aligned>> = BTreeMap::new();
        for (w, c) in &x.terms {
            let split = w.letters.iter().position(|&l| starred(l)).unwrap_or(w.letters.len());
            if w.letters[split..].iter().any(|&l| !starred(l)) {
                return Err(FormalError::Undecidable);
            }
            let a = w.letters[..split].to_vec();
            let b: Vec<u16> = w.letters[split..].iter().rev().map(|&l| l ^ 1).collect();
            per_lambda.entry(w.lambda).or_default().push(Aligned { a, b, pos: 0, c: *c });
        }
        let mut worst = 0.0f64;
        for (_, terms) in per_lambda {
            worst = worst.max(self.defect_rec(terms)?);
        }
        Ok(worst)
    }

    fn defect_rec(&self, terms: Vec<Aligned>) -> Result<f64, FormalError> {
        let open: Vec<&Aligned> = terms.iter().filter(|t| t.pos < t.b.len()).collect();
        let unstarred_defect = |ts: &[Aligned], extra: Option<u16>| {
            let mut m: BTreeMap<Vec<u16>, Complex64> = BTreeMap::new();
            for t in ts.iter().filter(|t| t.pos == t.b.len()) {
                let mut a = t.a.clone();
                a.extend(extra);
                *m.entry(a).or_default() += t.c;
            }
            m.values().fold(0.0f64, |w, c| w.max(c.norm()))
        };
        if open.is_empty() {
            return Ok(unstarred_defect(&terms, None));
        }
        let fam = family(open[0].b[open[0].pos]);
        if open.iter().any(|t| family(t.b[t.pos]) != fam) {
            return Err(FormalError::Undecidable);
        }
        let mut worst = 0.0f64;
        let mut untouched = false;
        for k in self.family_kinds(fam) {
            let f = letter(k, false);
            if !open.iter().any(|t| t.b[t.pos] == f) {
                untouched = true;
                continue;
            }
            let next: Vec<Aligned> = terms
                .iter()
                .filter_map(|t| {
                    if t.pos == t.b.len() {
                        let mut a = t.a.clone();
                        a.push(f);
                        Some(Aligned { a, b: vec![], pos: 0, c: t.c })
                    } else if t.b[t.pos] == f {
                        Some(Aligned { a: t.a.clone(), b: t.b.clone(), pos: t.pos + 1, c: t.c })
                    } else {
                        None
                    }
                })
                .collect();
            worst = worst.max(self.defect_rec(next)?);
        }
        if untouched {
            worst = worst.max(unstarred_defect(&terms, None));
        }
        Ok(worst)
    }

    pub fn is_zero(&self, x: &FormalElement, tol: f64) -> Result<bool, FormalError> {
        Ok(self.defect(x)? < tol)
    }

    /// The scalar c with x = c·1, if x is one.
    pub fn as_scalar(&self, x: &FormalElement, tol: f64) -> Result<Option<Complex64>, FormalError> {
        let c = x.constant();
        let rest = x.sub(&FormalElement::scalar(c));
        Ok(self.is_zero(&rest, tol)?.then_some(c))
    }
}

#[derive(Clone, Debug)]
struct Aligned {
    a: Vec<u16>,
    /// starred part, reversed and unstarred (b = b_1 … b_k for b*)
    b: Vec<u16>,
    pos: usize,
    c: Complex64,
}

/// The endomorphism ρ determined by a solution, extended by ρ(V_i) = R_i and
/// ρ(λ_l) = λ_{−l}.
#[derive(Clone, Debug)]
pub struct Rho {
    images: BTreeMap<u16, FormalElement>,
}

impl Rho {
    pub fn new(alg: &FormalAlgebra, s: &SolutionTriple) -> Rho {
        let g = &s.group;
        let n = g.order();
        let d = s.d();
        let sd = d.sqrt();
        let one = Complex64::new(1.0, 0.0);
        let mut images = BTreeMap::new();
        // ρ(S) = S/d + (1/√d) Σ T_g T_g
        let mut rs = FormalElement::gen(Generator::S).scale(one / d);
        for x in 0..n {
            rs = rs.add(&FormalElement::word(&[(Generator::T(x), false), (Generator::T(x), false)], 0).scale(one / sd));
        }
        images.insert(letter(K_S, false), rs);
        for k in 0..n {
            // ρ(T_k) = ε_k(−k) · α_gρ(T_g) with g = −k
            let gg = g.neg(k);
            let eta = s.eta_c(gg);
            let mut e = FormalElement::word(
                &[(Generator::T(gg), false), (Generator::S, false), (Generator::S, true)],
                0,
            )
            .scale(eta);
            e = e.add(&FormalElement::word(&[(Generator::S, false), (Generator::T(gg), true)], 0).scale(eta.conj() / sd));
            for h in 0..n {
                for kk in 0..n {
                    let a = s.amp(gg, h, kk);
                    if a.norm() < DROP_TOL {
                        continue;
                    }
                    let w = FormalElement::word(
                        &[
                            (Generator::T(g.add(gg, h)), false),
                            (Generator::T(g.add(g.add(gg, h), kk)), false),
                            (Generator::T(g.add(gg, kk)), true),
                        ],
                        0,
                    );
                    e = e.add(&w.scale(a));
                }
            }
            let sign = s.eps(k, gg) as f64;
            images.insert(letter(1 + k as u16, false), e.scale(one * sign));
        }
        images.insert(letter(K_V0, false), FormalElement::gen(Generator::R0));
        images.insert(letter(K_V1, false), FormalElement::gen(Generator::R1));
        let starred_images: Vec<(u16, FormalElement)> =
            images.iter().map(|(&l, e)| (l | 1, alg.adjoint(e))).collect();
        images.extend(starred_images);
        Rho { images }
    }

    pub fn apply(&self, alg: &FormalAlgebra, x: &FormalElement) -> Result<FormalElement, FormalError> {
        let g = &alg.group;
        let mut out = FormalElement::zero();
        for (w, c) in &x.terms {
            let mut acc = FormalElement::scalar(*c);
            for &l in &w.letters {
                let img = self
                    .images
                    .get(&l)
                    .ok_or_else(|| FormalError::Unsupported(format!("{:?}", gen_of(kind(l)))))?;
                acc = alg.multiply(&acc, img)?;
            }
            if w.lambda != 0 {
                acc = alg.multiply(&acc, &FormalElement::lambda(g.neg(w.lambda)))?;
            }
            out = out.add(&acc);
            if out.terms.len() > MAX_TERMS {
                return Err(FormalError::Resource(out.terms.len()));
            }
        }
        Ok(out)
    }
}

/// ρ applied to x for the algebra and ρ of a solution.
pub fn apply_rho(x: &FormalElement, s: &SolutionTriple) -> Result<FormalElement, FormalError> {
    let alg = FormalAlgebra::from_solution(s);
    Rho::new(&alg, s).apply(&alg, x)
}

#[derive(Clone, Debug)]
pub struct IntertwinerReport {
    /// max defect of ρ²(x)S − Sx over generators x and their adjoints
    pub s_defect: f64,
    /// per g: max defect of ρ²(x)T_g − T_g α_gρ(x)
    pub t_defects: Vec<f64>,
    pub tol: f64,
}

impl IntertwinerReport {
    pub fn passes(&self) -> bool {
        self.s_defect < self.tol && self.t_defects.iter().all(|&t| t < self.tol)
    }
}

fn cuntz_generators(n: usize) -> Vec<FormalElement> {
    let mut xs = vec![FormalElement::gen(Generator::S), FormalElement::gen_star(Generator::S)];
    for g in 0..n {
        xs.push(FormalElement::gen(Generator::T(g)));
        xs.push(FormalElement::gen_star(Generator::T(g)));
    }
    xs
}

/// Checks S ∈ (id, ρ²) and T_g ∈ (α_gρ, ρ²) by rewriting.
pub fn verify_intertwiners(s: &SolutionTriple, tol: f64) -> Result<IntertwinerReport, FormalError> {
    let alg = FormalAlgebra::from_solution(s);
    let rho = Rho::new(&alg, s);
    let n = s.group.order();
    let xs = cuntz_generators(n);
    let mut rho1 = Vec::new();
    let mut rho2 = Vec::new();
    for x in &xs {
        let r = rho.apply(&alg, x)?;
        rho2.push(rho.apply(&alg, &r)?);
        rho1.push(r);
    }
    let sgen = FormalElement::gen(Generator::S);
    let mut s_defect = 0.0f64;
    for (x, r2) in xs.iter().zip(&rho2) {
        let diff = alg.multiply(r2, &sgen)?.sub(&alg.multiply(&sgen, x)?);
        s_defect = s_defect.max(alg.defect(&diff)?);
    }
    let mut t_defects = Vec::with_capacity(n);
    for g in 0..n {
        let t = FormalElement::gen(Generator::T(g));
        let mut worst = 0.0f64;
        for (r1, r2) in rho1.iter().zip(&rho2) {
            let lhs = alg.multiply(r2, &t)?;
            let rhs = alg.multiply(&t, &alg.alpha(g, r1))?;
            worst = worst.max(alg.defect(&lhs.sub(&rhs))?);
        }
        t_defects.push(worst);
    }
    Ok(IntertwinerReport { s_defect, t_defects, tol })
}

#[derive(Clone, Debug)]
pub struct QsystemIsometryReport {
    /// defect of W*W − 1
    pub isometry_defect: f64,
    /// max over generators x (and adjoints) of the defect of Wγ(x) − γ²(x)W
    pub intertwiner_defect: f64,
    pub tol: f64,
}

impl QsystemIsometryReport {
    pub fn passes(&self) -> bool {
        self.isometry_defect < self.tol && self.intertwiner_defect < self.tol
    }
}

/// The isometry W ∈ (γ, γ²) for γ(x) = V0 x V0* + V1 ρ(x) V1*.
pub fn qsystem_isometry(s: &SolutionTriple, alg: &FormalAlgebra) -> Result<FormalElement, FormalError> {
    let d = s.d();
    let c = |v: f64| Complex64::new(v, 0.0);
    let (v0, v1) = (Generator::V0, Generator::V1);
    let (r0, r1) = (Generator::R0, Generator::R1);
    let w1 = FormalElement::gen(v0).scale(c(1.0 / (d + 1.0).sqrt()));
    let w2 = FormalElement::word(&[(v1, false), (r0, false), (v1, true)], 0).scale(c(1.0 / (d + 1.0).sqrt()));
    let w3 = FormalElement::word(&[(v1, false), (r1, false), (Generator::S, false), (v0, true)], 0)
        .scale(c((d / (d + 1.0)).sqrt()));
    let w4 = FormalElement::word(&[(v1, false), (r1, false), (Generator::T(0), false), (v1, true)], 0)
        .scale(c(((d - 1.0) / (d + 1.0)).sqrt()));
    let _ = alg;
    Ok(w1.add(&w2).add(&w3).add(&w4))
}

fn gamma(alg: &FormalAlgebra, rho: &Rho, x: &FormalElement) -> Result<FormalElement, FormalError> {
    let v0 = FormalElement::gen(Generator::V0);
    let v0s = FormalElement::gen_star(Generator::V0);
    let v1 = FormalElement::gen(Generator::V1);
    let v1s = FormalElement::gen_star(Generator::V1);
    let a = alg.product(&[&v0, x, &v0s])?;
    let r = rho.apply(alg, x)?;
    let b = alg.product(&[&v1, &r, &v1s])?;
    Ok(a.add(&b))
}

/// Builds W formally and checks W*W = 1 and Wγ(x) = γ²(x)W on generators.
pub fn verify_qsystem_isometry(s: &SolutionTriple, tol: f64) -> Result<QsystemIsometryReport, FormalError> {
    if !crate::solution::check_qsystem(s, 1e-8).q1 {
        return Err(FormalError::Precondition("the triple does not satisfy the Q-system condition (Q1)".into()));
    }
    let alg = FormalAlgebra::from_solution(s);
    let rho = Rho::new(&alg, s);
    let w = qsystem_isometry(s, &alg)?;
    let wsw = alg.multiply(&alg.adjoint(&w), &w)?;
    let isometry_defect = alg.defect(&wsw.sub(&FormalElement::one()))?;
    let mut intertwiner_defect = 0.0f64;
    for x in cuntz_generators(s.group.order()) {
        let g1 = gamma(&alg, &rho, &x)?;
        let g2 = gamma(&alg, &rho, &g1)?;
        let diff = alg.multiply(&w, &g1)?.sub(&alg.multiply(&g2, &w)?);
        intertwiner_defect = intertwiner_defect.max(alg.defect(&diff)?);
    }
    Ok(QsystemIsometryReport { isometry_defect, intertwiner_defect, tol })
}
