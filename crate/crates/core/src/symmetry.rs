//! Gauge transformations and the action of Γ = (H²(G,T) × G/2G) ⋊ Aut(G).

use crate::cohomology::{class_index, h2_representatives, mu_of, Cocycle2, CohomologyError, MuDiagonal};
use crate::group::{automorphism_group_bounded, subgroup_data, Elem, GroupError, GroupMap, GroupSpec, DEFAULT_AUT_BOUND};
use crate::phase::Phase;
use crate::solution::{evaluate_residuals, SolutionTriple};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Signs δ_g with δ_0 = +1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GaugeVector {
    pub delta: Vec<i8>,
}

impl GaugeVector {
    pub fn identity(n: usize) -> GaugeVector {
        GaugeVector { delta: vec![1; n] }
    }

    /// The gauge vector whose bit i (from element 1 on) is −1.
    pub fn from_bits(n: usize, bits: u64) -> GaugeVector {
        let mut delta = vec![1i8; n];
        for (g, d) in delta.iter_mut().enumerate().skip(1) {
            if bits >> (g - 1) & 1 == 1 {
                *d = -1;
            }
        }
        GaugeVector { delta }
    }

    pub fn new(delta: Vec<i8>) -> Result<GaugeVector, SymmetryError> {
        if delta.first() != Some(&1) || delta.iter().any(|&x| x != 1 && x != -1) {
            return Err(SymmetryError::Precondition("gauge vector needs ±1 entries with δ_0=+1".into()));
        }
        Ok(GaugeVector { delta })
    }
}

pub fn gauge_apply(s: &SolutionTriple, dv: &GaugeVector) -> SolutionTriple {
    let g = &s.group;
    let n = g.order();
    let dl = &dv.delta;
    let mut out = s.clone();
    for h in 0..n {
        for x in 0..n {
            out.epsilon[h * n + x] = dl[x] * dl[g.add(x, g.double(h))] * s.eps(h, x);
        }
    }
    for x in 0..n {
        for h in 0..n {
            for k in 0..n {
                let sg = dl[x] * dl[g.add(x, h)] * dl[g.add(x, k)] * dl[g.add(g.add(x, h), k)];
                let i = s.idx(x, h, k);
                out.a[i] = if sg < 0 { -s.a[i] } else { s.a[i] };
            }
        }
    }
    out
}

/// Whether `gauge_apply(s1, δ)` matches `s2` (ε, η exactly, A within tol).
fn gauge_matches(s1: &SolutionTriple, s2: &SolutionTriple, dl: &[i8], tol: f64) -> bool {
    let g = &s1.group;
    let n = g.order();
    for h in 0..n {
        for x in 0..n {
            if dl[x] * dl[g.add(x, g.double(h))] * s1.eps(h, x) != s2.eps(h, x) {
                return false;
            }
        }
    }
    for x in 0..n {
        for h in 0..n {
            let xh = g.add(x, h);
            for k in 0..n {
                let sg = (dl[x] * dl[xh] * dl[g.add(x, k)] * dl[g.add(xh, k)]) as f64;
                let i = s1.idx(x, h, k);
                if (s1.a[i] * sg - s2.a[i]).norm() > tol {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive search for δ with gauge_apply(s1, δ) = s2.
pub fn gauge_equivalent(
    s1: &SolutionTriple,
    s2: &SolutionTriple,
    tol: f64,
) -> Result<Option<GaugeVector>, SymmetryError> {
    if s1.group != s2.group {
        return Err(SymmetryError::Shape(format!(
            "group mismatch: {} vs {}",
            s1.group.name(),
            s2.group.name()
        )));
    }
    if s1.eta != s2.eta {
        return Ok(None);
    }
    let n = s1.n();
    for bits in 0..(1u64 << (n - 1)) {
        let dv = GaugeVector::from_bits(n, bits);
        if gauge_matches(s1, s2, &dv.delta, tol) {
            return Ok(Some(dv));
        }
    }
    Ok(None)
}

/// Distance to the gauge class: min over δ of the max entry distance, or ∞
/// when ε or η cannot be matched.
pub fn gauge_distance(s1: &SolutionTriple, s2: &SolutionTriple) -> f64 {
    if s1.group != s2.group || s1.eta != s2.eta {
        return f64::INFINITY;
    }
    let g = &s1.group;
    let n = g.order();
    let mut best = f64::INFINITY;
    'outer: for bits in 0..(1u64 << (n - 1)) {
        let dl = GaugeVector::from_bits(n, bits).delta;
        for h in 0..n {
            for x in 0..n {
                if dl[x] * dl[g.add(x, g.double(h))] * s1.eps(h, x) != s2.eps(h, x) {
                    continue 'outer;
                }
            }
        }
        let mut m: f64 = 0.0;
        for x in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let sg = (dl[x] * dl[g.add(x, h)] * dl[g.add(x, k)] * dl[g.add(g.add(x, h), k)]) as f64;
                    let i = s1.idx(x, h, k);
                    m = m.max((s1.a[i] * sg - s2.a[i]).norm());
                }
            }
        }
        best = best.min(m);
    }
    best
}

/// Canonical gauge-class key: the lexicographically minimal image over all
/// gauge vectors, comparing the ε table and then A rounded at 1e−7.
pub fn gauge_class_key(s: &SolutionTriple) -> (Vec<i8>, Vec<u8>, Vec<(i64, i64)>) {
    let n = s.n();
    let round = |v: f64| (v * 1e7).round() as i64;
    (0..(1u64 << (n - 1)))
        .map(|bits| {
            let t = gauge_apply(s, &GaugeVector::from_bits(n, bits));
            let a = t.a.iter().map(|z| (round(z.re), round(z.im))).collect();
            (t.epsilon, t.eta, a)
        })
        .min()
        .expect("at least one gauge vector")
}

fn sign_of(p: Phase, what: &str) -> Result<i8, SymmetryError> {
    p.as_sign().ok_or_else(|| SymmetryError::Internal(format!("{what} = {p} is not ±1")))
}

/// The H²(G,T) action for an antisym-normalized ω and μ(2h)=ω(h,h).
pub fn act_h2(s: &SolutionTriple, w: &Cocycle2, mu: &MuDiagonal) -> Result<SolutionTriple, SymmetryError> {
    if !w.is_antisym_normalized() {
        return Err(SymmetryError::Precondition("ω is not antisym-normalized".into()));
    }
    let g = &s.group;
    if w.group() != g {
        return Err(SymmetryError::Shape("cocycle lives on a different group".into()));
    }
    let n = g.order();
    for h in 0..n {
        let expect = w.phase(h, h).as_sign();
        if expect != Some(mu.values[g.double(h)]) {
            return Err(SymmetryError::Precondition(format!("μ(2·{h}) differs from ω({h},{h})")));
        }
    }
    let mu_p = |x: Elem| Phase::from_sign(mu.values[x]);
    let mut out = s.clone();
    for h in 0..n {
        for x in 0..n {
            let ph = mu_p(x) + mu_p(g.add(x, g.double(h))) - w.phase(h, x) - w.phase(g.add(x, h), h);
            out.epsilon[h * n + x] = s.eps(h, x) * sign_of(ph, "ε′ factor")?;
        }
    }
    for x in 0..n {
        for h in 0..n {
            for k in 0..n {
                let xh = g.add(x, h);
                let xk = g.add(x, k);
                let ph = mu_p(xk) + mu_p(x) + mu_p(g.add(xh, k)) + mu_p(xh) - w.phase(xk, h) - w.phase(h, x);
                let i = s.idx(x, h, k);
                out.a[i] = s.a[i] * ph.to_complex();
            }
        }
    }
    Ok(out)
}

/// The character χ_p(z) = ε_z(p) on G_2, as phases.
fn chi_p_matches(s: &SolutionTriple, chi: Elem, p: Elem, two_torsion: &[Elem]) -> bool {
    two_torsion
        .iter()
        .all(|&z| s.group.pairing_phase(chi, z) == Phase::from_sign(s.eps(z, p)))
}

/// Translation data: the extending character χ (as a dual index) and ν.
pub fn translation_data(s: &SolutionTriple, p: Elem) -> Result<(Elem, Vec<Phase>), SymmetryError> {
    let g = &s.group;
    let sub = subgroup_data(g);
    let chi = g
        .elements()
        .find(|&c| chi_p_matches(s, c, p, &sub.two_torsion))
        .ok_or_else(|| SymmetryError::Internal(format!("χ_{p} has no extension to G")))?;
    let chi_ph = |x: Elem| g.pairing_phase(chi, x);
    let mut nu: Vec<Option<Phase>> = vec![None; g.order()];
    let base = chi_ph(p).sqrt();
    for h in g.elements() {
        let v = chi_ph(h) + Phase::from_sign(s.eps(h, p)) + base;
        let t = g.add(p, g.double(h));
        match nu[t] {
            None => nu[t] = Some(v),
            Some(prev) if prev != v => {
                return Err(SymmetryError::Internal(format!("ν is not well defined at {t}")))
            }
            _ => {}
        }
    }
    let nu = nu
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.unwrap_or_else(|| chi_ph(x).sqrt()))
        .collect();
    Ok((chi, nu))
}

/// Re-reading the data for α_p ρ in place of ρ.
pub fn act_translation(s: &SolutionTriple, p: Elem) -> Result<SolutionTriple, SymmetryError> {
    let g = &s.group;
    let n = g.order();
    if p >= n {
        return Err(SymmetryError::Precondition(format!("element {p} out of range")));
    }
    let (chi, nu) = translation_data(s, p)?;
    let chi_ph = |x: Elem| g.pairing_phase(chi, x);
    let mut out = s.clone();
    for h in 0..n {
        for x in 0..n {
            let px = g.add(p, x);
            let ph = nu[g.add(px, g.double(h))] - nu[px] - chi_ph(h);
            out.epsilon[h * n + x] = s.eps(h, px) * sign_of(ph, "ε′ factor")?;
        }
    }
    for x in 0..n {
        out.eta[x] = s.eta[g.add(p, x)];
    }
    for x in 0..n {
        let px = g.add(p, x);
        for h in 0..n {
            for k in 0..n {
                let ph = nu[g.add(g.add(px, h), k)] + nu[g.add(px, h)] - nu[g.add(px, k)] - nu[px] - chi_ph(h);
                out.a[s.idx(x, h, k)] = s.amp(px, h, k) * ph.to_complex();
            }
        }
    }
    Ok(out)
}

/// Relabeling by θ: ε′_h(g)=ε_{θ⁻¹h}(θ⁻¹g), η′_g=η_{θ⁻¹g}, A′_g(h,k)=A_{θ⁻¹g}(θ⁻¹h,θ⁻¹k).
pub fn act_automorphism(s: &SolutionTriple, theta: &GroupMap) -> Result<SolutionTriple, SymmetryError> {
    if !theta.is_automorphism {
        return Err(SymmetryError::Precondition("map is not bijective".into()));
    }
    let inv = theta.inverse()?;
    let n = s.n();
    let t = |x: Elem| inv.apply(x);
    let mut out = s.clone();
    for h in 0..n {
        for x in 0..n {
            out.epsilon[h * n + x] = s.eps(t(h), t(x));
        }
    }
    for x in 0..n {
        out.eta[x] = s.eta[t(x)];
        for h in 0..n {
            for k in 0..n {
                out.a[s.idx(x, h, k)] = s.amp(t(x), t(h), t(k));
            }
        }
    }
    Ok(out)
}

/// Precomputed pieces of Γ for one group.
#[derive(Clone, Debug)]
pub struct GammaContext {
    pub group: GroupSpec,
    pub h2: Vec<Cocycle2>,
    pub mus: Vec<MuDiagonal>,
    /// Coset representatives of G/2G.
    pub cosets: Vec<Elem>,
    coset_index: Vec<usize>,
    pub auts: Vec<GroupMap>,
    /// For each automorphism and class, the class of the pushed-forward cocycle.
    push: Vec<Vec<usize>>,
}

/// An element (ω-class, p + 2G, θ) acting as H_ω ∘ T_p ∘ A_θ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GammaElement {
    pub omega_class: usize,
    pub translation: Elem,
    pub aut_index: usize,
    pub aut: Vec<Elem>,
}

impl GammaContext {
    pub fn new(g: &GroupSpec) -> Result<GammaContext, SymmetryError> {
        Self::with_aut_bound(g, DEFAULT_AUT_BOUND.max(512))
    }

    pub fn with_aut_bound(g: &GroupSpec, bound: usize) -> Result<GammaContext, SymmetryError> {
        let h2 = h2_representatives(g);
        let mus = h2.iter().map(mu_of).collect::<Result<Vec<_>, _>>()?;
        let sub = subgroup_data(g);
        let auts = automorphism_group_bounded(g, bound)?;
        let mut push = Vec::with_capacity(auts.len());
        for a in &auts {
            let row = h2
                .iter()
                .map(|w| {
                    class_index(&h2, &w.pushforward(a))
                        .ok_or_else(|| SymmetryError::Internal("pushforward class not found".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            push.push(row);
        }
        Ok(GammaContext {
            group: g.clone(),
            h2,
            mus,
            cosets: sub.quotient_by_doubled.clone(),
            coset_index: sub.coset_index,
            auts,
            push,
        })
    }

    pub fn order(&self) -> usize {
        self.h2.len() * self.cosets.len() * self.auts.len()
    }

    fn h2_mul(&self, i: usize, j: usize) -> usize {
        let w = self.h2[i].mul(&self.h2[j]);
        class_index(&self.h2, &w).expect("H² is closed under products")
    }

    pub fn element(&self, omega_class: usize, coset: usize, aut_index: usize) -> GammaElement {
        GammaElement {
            omega_class,
            translation: self.cosets[coset],
            aut_index,
            aut: self.auts[aut_index].table().to_vec(),
        }
    }

    pub fn elements(&self) -> Vec<GammaElement> {
        let mut v = Vec::with_capacity(self.order());
        for a in 0..self.auts.len() {
            for p in 0..self.cosets.len() {
                for w in 0..self.h2.len() {
                    v.push(self.element(w, p, a));
                }
            }
        }
        v
    }

    pub fn identity(&self) -> GammaElement {
        self.element(0, 0, 0)
    }

    /// (ω₁, p₁, θ₁)(ω₂, p₂, θ₂) = (ω₁·θ₁ω₂, p₁+θ₁p₂, θ₁θ₂).
    pub fn multiply(&self, x: &GammaElement, y: &GammaElement) -> GammaElement {
        let t1 = &self.auts[x.aut_index];
        let w = self.h2_mul(x.omega_class, self.push[x.aut_index][y.omega_class]);
        let p = self.coset_index[self.group.add(x.translation, t1.apply(y.translation))];
        let comp = t1.compose(&self.auts[y.aut_index]);
        let a = self
            .auts
            .iter()
            .position(|m| m.table() == comp.table())
            .expect("Aut(G) is closed");
        self.element(w, p, a)
    }

    pub fn apply(&self, s: &SolutionTriple, x: &GammaElement) -> Result<SolutionTriple, SymmetryError> {
        let t = act_automorphism(s, &self.auts[x.aut_index])?;
        let t = act_translation(&t, x.translation)?;
        act_h2(&t, &self.h2[x.omega_class], &self.mus[x.omega_class])
    }
}

#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub orbit: Vec<SolutionTriple>,
    pub stabilizer: Vec<GammaElement>,
    pub stabilizer_order: usize,
    pub gamma_order: usize,
    /// Whether every A_g(h,k) is nonzero, so the stabilizer is Out(C).
    pub amplitudes_nonzero: bool,
    pub stabilizer_name: String,
}

pub const ORBIT_TOL: f64 = 1e-6;

/// Γ-orbit of the gauge class of `s` together with its stabilizer.
///
/// Γ is small for the groups in reach, so every element is applied directly.
pub fn gamma_orbit(s: &SolutionTriple) -> Result<OrbitResult, SymmetryError> {
    let ctx = GammaContext::new(&s.group)?;
    gamma_orbit_with(&ctx, s, 1e-8)
}

pub fn gamma_orbit_with(ctx: &GammaContext, s: &SolutionTriple, tol: f64) -> Result<OrbitResult, SymmetryError> {
    let rep = evaluate_residuals(s, tol);
    if !rep.passes() {
        return Err(SymmetryError::Precondition(format!(
            "input is not a solution (max residual {:.3e})",
            rep.overall
        )));
    }
    let elems = ctx.elements();
    let images: Vec<SolutionTriple> =
        elems.par_iter().map(|x| ctx.apply(s, x)).collect::<Result<Vec<_>, _>>()?;
    let mut orbit: Vec<SolutionTriple> = vec![s.clone()];
    let mut stabilizer = Vec::new();
    for (x, img) in elems.iter().zip(&images) {
        if gauge_equivalent(s, img, ORBIT_TOL)?.is_some() {
            stabilizer.push(x.clone());
            continue;
        }
        let mut found = false;
        for o in &orbit {
            if gauge_equivalent(o, img, ORBIT_TOL)?.is_some() {
                found = true;
                break;
            }
        }
        if !found {
            orbit.push(img.clone());
        }
    }
    if stabilizer.len() * orbit.len() != ctx.order() {
        return Err(SymmetryError::Internal(format!(
            "orbit-stabilizer mismatch: {}·{} ≠ {}",
            orbit.len(),
            stabilizer.len(),
            ctx.order()
        )));
    }
    let name = identify_small_group(ctx, &stabilizer);
    Ok(OrbitResult {
        stabilizer_order: stabilizer.len(),
        orbit,
        stabilizer,
        gamma_order: ctx.order(),
        amplitudes_nonzero: s.all_amplitudes_nonzero(1e-9),
        stabilizer_name: name,
    })
}

/// Multiplication table of a subset closed under the product of Γ, or None.
pub fn multiplication_table(ctx: &GammaContext, elems: &[GammaElement]) -> Option<Vec<Vec<usize>>> {
    let mut t = vec![vec![0; elems.len()]; elems.len()];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let p = ctx.multiply(x, y);
            t[i][j] = elems.iter().position(|e| *e == p)?;
        }
    }
    Some(t)
}

/// Orders of the elements of a finite group given by its table.
pub fn element_orders(table: &[Vec<usize>]) -> Vec<usize> {
    let n = table.len();
    let e = (0..n).find(|&i| (0..n).all(|j| table[i][j] == j)).expect("identity");
    (0..n)
        .map(|i| {
            let (mut x, mut k) = (i, 1);
            while x != e {
                x = table[x][i];
                k += 1;
            }
            k
        })
        .collect()
}

/// Whether the group has a subgroup of the given order (brute force over
/// subgroups generated by at most two elements, enough for orders ≤ 24).
pub fn has_subgroup_of_order(table: &[Vec<usize>], order: usize) -> bool {
    let n = table.len();
    let close = |gens: &[usize]| {
        let mut set = vec![false; n];
        let mut list = Vec::new();
        let e = (0..n).find(|&i| (0..n).all(|j| table[i][j] == j)).expect("identity");
        set[e] = true;
        list.push(e);
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let y = table[list[i]][g];
                if !set[y] {
                    set[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.len()
    };
    (0..n).any(|a| (a..n).any(|b| close(&[a, b]) == order))
}

fn is_abelian(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    (0..n).all(|i| (0..n).all(|j| table[i][j] == table[j][i]))
}

/// A name for small stabilizers, by order, commutativity and element orders.
pub fn identify_small_group(ctx: &GammaContext, elems: &[GammaElement]) -> String {
    let Some(table) = multiplication_table(ctx, elems) else {
        return "not closed".into();
    };
    name_from_table(&table)
}

pub fn name_from_table(table: &[Vec<usize>]) -> String {
    let n = table.len();
    let orders = element_orders(table);
    let count = |k: usize| orders.iter().filter(|&&o| o == k).count();
    let max = orders.iter().copied().max().unwrap_or(1);
    let abelian = is_abelian(table);
    if n == 1 {
        return "trivial".into();
    }
    if max == n {
        return format!("Z{n}");
    }
    if abelian {
        if max == 2 {
            return format!("Z2^{}", n.trailing_zeros());
        }
        return format!("abelian of order {n}, exponent {max}");
    }
    match n {
        6 => "S3".into(),
        8 if count(4) == 6 => "Q8".into(),
        8 => "D4".into(),
        12 if count(3) == 8 && count(2) == 3 && !has_subgroup_of_order(table, 6) => "A4".into(),
        24 if count(3) == 8 && count(2) == 9 && count(4) == 6 => "S4".into(),
        _ => format!("nonabelian of order {n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_solution, z2x2};

    fn klein_perm(p: [usize; 4]) -> GroupMap {
        GroupMap::from_permutation(&GroupSpec::new(&[2, 2]).unwrap(), &p).unwrap()
    }

    #[test]
    fn gauge_flip_of_b_negates_z() {
        let s = z2x2(1, 0).unwrap();
        let t = gauge_apply(&s, &GaugeVector::new(vec![1, -1, 1, 1]).unwrap());
        let target = z2x2(1, 2).unwrap();
        assert!(t.max_amplitude_distance(&target) < 1e-12);
        assert_eq!(t.epsilon, target.epsilon);
    }

    #[test]
    fn gauge_involution_and_witness() {
        let s = catalog_solution("Z4-qsystem").unwrap();
        let dv = GaugeVector::new(vec![1, -1, -1, 1]).unwrap();
        let t = gauge_apply(&s, &dv);
        assert_eq!(gauge_apply(&t, &dv), s);
        let w = gauge_equivalent(&s, &t, 1e-12).unwrap().unwrap();
        assert!(gauge_apply(&s, &w).max_amplitude_distance(&t) < 1e-12);
    }

    #[test]
    fn distinct_classes_are_not_gauge_equivalent() {
        assert!(gauge_equivalent(&z2x2(1, 0).unwrap(), &z2x2(-1, 0).unwrap(), 1e-8).unwrap().is_none());
        let h = catalog_solution("Z3-haagerup").unwrap();
        let a = catalog_solution("Z3-accompanying").unwrap();
        assert!(gauge_equivalent(&h, &a, 1e-8).unwrap().is_none());
    }

    #[test]
    fn odd_permutation_swaps_s_and_conjugates_z() {
        let s = z2x2(1, 1).unwrap();
        // transposition of b and c
        let t = act_automorphism(&s, &klein_perm([0, 1, 3, 2])).unwrap();
        let target = z2x2(-1, 3).unwrap();
        assert!(gauge_equivalent(&t, &target, 1e-8).unwrap().is_some());
    }

    #[test]
    fn three_cycle_fixes_the_klein_solution() {
        let s = z2x2(1, 0).unwrap();
        let t = act_automorphism(&s, &klein_perm([0, 2, 3, 1])).unwrap();
        assert!(gauge_equivalent(&s, &t, 1e-8).unwrap().is_some());
    }

    #[test]
    fn h2_action_on_klein_solution() {
        let g = GroupSpec::new(&[2, 2]).unwrap();
        let reps = h2_representatives(&g);
        let mu = mu_of(&reps[1]).unwrap();
        let s = z2x2(1, 0).unwrap();
        let t = act_h2(&s, &reps[1], &mu).unwrap();
        assert!(gauge_equivalent(&t, &z2x2(-1, 1).unwrap(), 1e-8).unwrap().is_some());
        let b = crate::cohomology::bicharacter_of(&reps[1]);
        for z in 0..4 {
            for x in 0..4 {
                let expect = s.epsf(z, x) * b.value(x, z).re;
                assert_eq!(t.epsf(z, x), expect);
            }
        }
    }

    #[test]
    fn translations_act_trivially_on_klein_solution() {
        let s = z2x2(1, 0).unwrap();
        for p in 0..4 {
            let t = act_translation(&s, p).unwrap();
            assert!(evaluate_residuals(&t, 1e-9).passes());
            assert!(gauge_equivalent(&s, &t, 1e-8).unwrap().is_some(), "p={p}");
        }
    }

    #[test]
    fn doubled_translation_is_inner() {
        let s = catalog_solution("Z4-qsystem").unwrap();
        let t = act_translation(&s, 2).unwrap();
        assert!(gauge_equivalent(&s, &t, 1e-8).unwrap().is_some());
    }

    #[test]
    fn klein_stabilizer_is_a4() {
        let r = gamma_orbit(&z2x2(1, 0).unwrap()).unwrap();
        assert_eq!(r.orbit.len(), 4);
        assert_eq!(r.stabilizer_order, 12);
        assert_eq!(r.stabilizer_name, "A4");
        assert!(r.amplitudes_nonzero);
    }

    #[test]
    fn z3_and_z2_orbits() {
        // g ↦ −g sends y to conj(y) and no gauge vector undoes that for odd G,
        // so the orbit is the conjugate pair and the stabilizer is trivial
        let r = gamma_orbit(&catalog_solution("Z3-haagerup").unwrap()).unwrap();
        assert_eq!((r.orbit.len(), r.stabilizer_order), (2, 1));
        let conj = catalog_solution("Z3-haagerup-conj").unwrap();
        assert!(gauge_equivalent(&r.orbit[1], &conj, 1e-8).unwrap().is_some());
        let r = gamma_orbit(&catalog_solution("Z2-a7").unwrap()).unwrap();
        assert_eq!(r.orbit.len(), 1);
        assert_eq!(r.stabilizer_order, r.gamma_order);
    }

    #[test]
    fn product_law_matches_actions() {
        let s = z2x2(1, 1).unwrap();
        let ctx = GammaContext::new(&s.group).unwrap();
        let el = ctx.elements();
        for x in el.iter().step_by(5) {
            for y in el.iter().step_by(7) {
                let lhs = ctx.apply(&s, &ctx.multiply(x, y)).unwrap();
                let rhs = ctx.apply(&ctx.apply(&s, y).unwrap(), x).unwrap();
                assert!(gauge_equivalent(&lhs, &rhs, 1e-8).unwrap().is_some(), "{x:?} {y:?}");
            }
        }
    }
}
