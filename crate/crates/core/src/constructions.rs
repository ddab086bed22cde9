//! Accompanying solutions, orbifold fusion data and dual-graph counts.

use crate::cuntz_formal::{FormalAlgebra, FormalElement, FormalError, Generator, Rho};
use crate::group::{automorphism_group, subgroup_data, Elem, GroupMap, GroupSpec};
use crate::solution::{check_qsystem, eta_value, evaluate_residuals, SolutionTriple};
use crate::symmetry::{act_automorphism, gauge_equivalent, SymmetryError};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("triple is not invariant under the automorphism: {0:?}")]
    NotInvariant(Vec<String>),
    #[error("construction produced an invalid triple: {0}")]
    Internal(String),
    #[error(transparent)]
    Formal(#[from] FormalError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

const TOL: f64 = 1e-8;

/// Whether two triples agree up to an automorphism of G and a gauge transformation.
pub fn equivalent_up_to_aut(s1: &SolutionTriple, s2: &SolutionTriple, tol: f64) -> Result<bool, SymmetryError> {
    if s1.group != s2.group {
        return Ok(false);
    }
    for theta in automorphism_group(&s1.group)? {
        if gauge_equivalent(&act_automorphism(s1, &theta)?, s2, tol)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn require_residuals(s: &SolutionTriple, tol: f64) -> Result<(), ConstructionError> {
    let r = evaluate_residuals(s, tol);
    if r.passes() {
        Ok(())
    } else {
        Err(ConstructionError::Precondition(format!("input fails {:?}", r.failing())))
    }
}

/// The accompanying solution of an odd-group solution with respect to G:
/// Â(χ1,χ2) = (1/|G|) Σ A(2h,2k) ⟨h,χ2⟩ conj⟨k,χ1⟩, same η, characters
/// identified with elements through the standard pairing.
pub fn accompany_odd(s: &SolutionTriple) -> Result<SolutionTriple, ConstructionError> {
    let g = &s.group;
    let n = g.order();
    if !g.is_odd() {
        return Err(ConstructionError::Precondition(format!("group {} has even order", g.name())));
    }
    require_residuals(s, TOL)?;
    if s.eta.iter().any(|&e| e != s.eta[0]) {
        return Err(ConstructionError::Precondition("η is not constant".into()));
    }
    for x in 0..n {
        for h in 0..n {
            for k in 0..n {
                if (s.amp(x, h, k) - s.amp(0, h, k)).norm() > TOL {
                    return Err(ConstructionError::Precondition("A depends on g".into()));
                }
            }
        }
    }
    let pair = |chi: Elem, x: Elem| g.pairing_phase(chi, x).to_complex();
    let mut ahat = vec![Complex64::new(0.0, 0.0); n * n];
    for c1 in 0..n {
        for c2 in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for h in 0..n {
                for k in 0..n {
                    acc += s.amp(0, g.double(h), g.double(k)) * pair(c2, h) * pair(c1, k).conj();
                }
            }
            ahat[c1 * n + c2] = acc / n as f64;
        }
    }
    let mut a = Vec::with_capacity(n * n * n);
    for _ in 0..n {
        a.extend_from_slice(&ahat);
    }
    let out = SolutionTriple::new(g.clone(), vec![1; n * n], s.eta.clone(), a)
        .map_err(|e| ConstructionError::Internal(e.to_string()))?;
    let r = evaluate_residuals(&out, TOL);
    if !r.passes() {
        return Err(ConstructionError::Internal(format!("output fails {:?}", r.failing())));
    }
    Ok(out)
}

fn zeta(k: i64, m: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k.rem_euclid(m) as f64 / m as f64)
}

/// The hatted isometries T̂_b in the crossed product by Z_{2m}.
pub fn hatted_isometries(s: &SolutionTriple) -> Vec<FormalElement> {
    let n = s.group.order();
    let m = n / 2;
    let sm = (m as f64).sqrt();
    let mut out = vec![FormalElement::zero(); n];
    for a in 0..m {
        let mut even = FormalElement::zero();
        let mut odd = FormalElement::zero();
        for k in 0..m {
            let w = FormalElement::word(&[(Generator::T(2 * k), false)], 2 * k);
            even = even.add(&w.scale(zeta((a * k) as i64, m as i64) / sm));
            let w = FormalElement::word(&[(Generator::T(1 + 2 * k), false)], 2 * k + 1);
            let c = zeta((2 * a + 1) as i64, 4 * m as i64) * zeta(((2 * a + 1) * k) as i64, 2 * m as i64)
                * s.epsf(k, 1)
                / sm;
            odd = odd.add(&w.scale(c));
        }
        out[2 * a] = even;
        out[2 * a + 1] = odd;
    }
    out
}

/// The accompanying solution of a Z_{2m} solution with nontrivial ε, computed
/// in the crossed product M ⋊ Z_{2m} with ρ̃(λ_l) = λ_{−l}.
pub fn accompany_even(s: &SolutionTriple) -> Result<SolutionTriple, ConstructionError> {
    let g = &s.group;
    let n = g.order();
    if g.factors().len() != 1 || n % 2 != 0 {
        return Err(ConstructionError::Precondition(format!("group {} is not cyclic of even order", g.name())));
    }
    let m = n / 2;
    if s.eps(m, 1) != -1 {
        return Err(ConstructionError::Precondition("ε is trivial (ε_m(1) = 1)".into()));
    }
    require_residuals(s, TOL)?;
    let alg = FormalAlgebra::from_solution(s);
    let rho = Rho::new(&alg, s);
    let th = hatted_isometries(s);
    let ths: Vec<FormalElement> = th.iter().map(|t| alg.adjoint(t)).collect();
    let scalar = |x: &FormalElement, what: &str| -> Result<Complex64, ConstructionError> {
        alg.as_scalar(x, 1e-10)?.ok_or_else(|| ConstructionError::Internal(format!("{what} is not a scalar")))
    };
    let mut eps = vec![1i8; n * n];
    for h in 0..n {
        for b in 0..n {
            let v = alg.multiply(&ths[g.add(b, g.double(h))], &alg.dual_action(h, &th[b]))?;
            let c = scalar(&v, "ε̂")?;
            if (c.re.abs() - 1.0).abs() > 1e-9 || c.im.abs() > 1e-9 {
                return Err(ConstructionError::Internal(format!("ε̂_{h}({b}) = {c}")));
            }
            eps[h * n + b] = if c.re > 0.0 { 1 } else { -1 };
        }
    }
    let mut eta = vec![0u8; n];
    let mut a = vec![Complex64::new(0.0, 0.0); n * n * n];
    let sd = s.d().sqrt();
    let sgen = FormalElement::gen(Generator::S);
    for b in 0..n {
        let x = alg.dual_action(b, &rho.apply(&alg, &th[b])?);
        let j2 = alg.multiply(&alg.adjoint(&x), &sgen)?.scale(Complex64::new(sd, 0.0));
        let e = scalar(&alg.multiply(&ths[b], &j2)?, "η̂")?;
        eta[b] = (0..3u8)
            .find(|&k| (eta_value(k) - e).norm() < 1e-8)
            .ok_or_else(|| ConstructionError::Internal(format!("η̂_{b} = {e} is not a cube root of unity")))?;
        for h in 0..n {
            for k in 0..n {
                let left = alg.multiply(&ths[g.add(g.add(b, h), k)], &ths[g.add(b, h)])?;
                let v = alg.product(&[&left, &x, &th[g.add(b, k)]])?;
                a[(b * n + h) * n + k] = scalar(&v, "Â")?;
            }
        }
    }
    let out = SolutionTriple::new(g.clone(), eps, eta, a).map_err(|e| ConstructionError::Internal(e.to_string()))?;
    let r = evaluate_residuals(&out, TOL);
    if !r.passes() {
        return Err(ConstructionError::Internal(format!("output fails {:?}", r.failing())));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Decomposition {
    pub object: String,
    pub terms: Vec<(String, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionSummary {
    /// Group of invertible objects (quotient or dual group data).
    pub group_label: String,
    /// (label, dimension)
    pub objects: Vec<(String, f64)>,
    /// [ρ̃²] as label → multiplicity.
    pub rho_square: Vec<(String, usize)>,
    /// Further fusion products among the non-ρ objects.
    pub products: Vec<Decomposition>,
    pub q_system_preserved: bool,
    /// (g, ε_z(g)) over a transversal of G/{0,z}, for de-equivariantization.
    pub obstruction_sign_pattern: Option<Vec<(Elem, i8)>>,
}

impl FusionSummary {
    pub fn dimension(&self, label: &str) -> Option<f64> {
        self.objects.iter().find(|(l, _)| l == label).map(|(_, d)| *d)
    }

    /// Largest |Σ mult·dim − dim²| over the listed decompositions.
    pub fn dimension_defect(&self, rho_dim: f64) -> f64 {
        let check = |terms: &[(String, usize)], target: f64| {
            let s: f64 = terms.iter().map(|(l, m)| *m as f64 * self.dimension(l).unwrap_or(f64::NAN)).sum();
            (s - target).abs()
        };
        let mut worst = check(&self.rho_square, rho_dim * rho_dim);
        for p in &self.products {
            let d = self.dimension(&p.object).unwrap_or(f64::NAN);
            worst = worst.max(check(&p.terms, d * d));
        }
        worst
    }
}

/// Fusion data of the de-equivariantization by {0, z}.
pub fn deequivariantize(s: &SolutionTriple, z: Elem) -> Result<FusionSummary, ConstructionError> {
    let g = &s.group;
    let n = g.order();
    if z >= n {
        return Err(ConstructionError::Precondition(format!("z = {z} is not an element of {}", g.name())));
    }
    if z == 0 {
        return Err(ConstructionError::Precondition("z ≠ 0 required".into()));
    }
    if g.double(z) != 0 {
        return Err(ConstructionError::Precondition(format!("2z = 0 fails for z = {z}")));
    }
    if s.eps(z, z) != 1 {
        return Err(ConstructionError::Precondition(format!("ε_z(z) = 1 fails: ε_{z}({z}) = -1")));
    }
    for x in 0..n {
        for y in 0..n {
            if s.eps(z, g.add(x, y)) != s.eps(z, x) * s.eps(z, y) {
                return Err(ConstructionError::Precondition(format!(
                    "g ↦ ε_z(g) is not a character (fails at g = {x}, h = {y})"
                )));
            }
        }
    }
    let transversal: Vec<Elem> = g.elements().filter(|&x| x < g.add(x, z)).collect();
    let d = s.d();
    let label = |x: Elem, with_rho: bool| -> String {
        let base = if x == 0 {
            String::new()
        } else if transversal.len() == 2 {
            "α̃".to_string()
        } else {
            format!("α̃_{x}")
        };
        match (with_rho, base.is_empty()) {
            (true, true) => "ρ̃".into(),
            (true, false) => format!("{base}ρ̃"),
            (false, true) => "id".into(),
            (false, false) => base,
        }
    };
    let mut objects = Vec::new();
    for &x in &transversal {
        objects.push((label(x, false), 1.0));
    }
    for &x in &transversal {
        objects.push((label(x, true), d));
    }
    let mut rho_square = vec![("id".to_string(), 1)];
    for &x in &transversal {
        rho_square.push((label(x, true), 2));
    }
    Ok(FusionSummary {
        group_label: format!("{}/{{0,{z}}}", g.name()),
        objects,
        rho_square,
        products: Vec::new(),
        q_system_preserved: check_qsystem(s, 1e-8).q1,
        obstruction_sign_pattern: Some(transversal.iter().map(|&x| (x, s.eps(z, x))).collect()),
    })
}

/// Entries where s differs from its relabeling by θ.
pub fn invariance_violations(s: &SolutionTriple, theta: &GroupMap, tol: f64) -> Vec<String> {
    let n = s.group.order();
    let t = |x: Elem| theta.apply(x);
    let mut v = Vec::new();
    for h in 0..n {
        for x in 0..n {
            if s.eps(t(h), t(x)) != s.eps(h, x) {
                v.push(format!("ε_{h}({x})"));
            }
        }
    }
    for x in 0..n {
        if s.eta[t(x)] != s.eta[x] {
            v.push(format!("η_{x}"));
        }
        for h in 0..n {
            for k in 0..n {
                if (s.amp(t(x), t(h), t(k)) - s.amp(x, h, k)).norm() > tol {
                    v.push(format!("A_{x}({h},{k})"));
                }
            }
        }
    }
    v
}

/// Irreducible characters of Γ = Ĝ ⋊ Z_m, indexed by (orbit, k < l_i), as
/// values on pairs (χ, a).
struct DualCharacters {
    n: usize,
    m: usize,
    /// (orbit index, k, values over χ·m + a)
    chars: Vec<(usize, usize, Vec<Complex64>)>,
}

fn dual_characters(g: &GroupSpec, orbits: &[Vec<Elem>], m: usize) -> DualCharacters {
    let n = g.order();
    let mut chars = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        let size = o.len();
        let l = m / size;
        for k in 0..l {
            let mut vals = vec![Complex64::new(0.0, 0.0); n * m];
            for chi in 0..n {
                for a in (0..m).step_by(size) {
                    let psi = zeta((k * (a / size)) as i64, l as i64);
                    let sum: Complex64 = o.iter().map(|&x| g.pairing_phase(chi, x).to_complex()).sum();
                    vals[chi * m + a] = sum * psi;
                }
            }
            chars.push((i, k, vals));
        }
    }
    DualCharacters { n, m, chars }
}

impl DualCharacters {
    fn fusion(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let order = (self.n * self.m) as f64;
        let mut out = Vec::new();
        for (z, (_, _, vz)) in self.chars.iter().enumerate() {
            let s: Complex64 = (0..self.n * self.m)
                .map(|i| self.chars[x].2[i] * self.chars[y].2[i] * vz[i].conj())
                .sum();
            let mult = (s.re / order).round() as usize;
            if mult > 0 {
                out.push((z, mult));
            }
        }
        out
    }
}

/// Fusion data of the equivariantization by an automorphism θ fixing s.
pub fn equivariantize(s: &SolutionTriple, theta: &GroupMap) -> Result<FusionSummary, ConstructionError> {
    let g = &s.group;
    let n = g.order();
    if !theta.is_automorphism {
        return Err(ConstructionError::Precondition("θ is not an automorphism".into()));
    }
    let viol = invariance_violations(s, theta, TOL);
    if !viol.is_empty() {
        return Err(ConstructionError::NotInvariant(viol));
    }
    let m = theta.order();
    let mut orbits: Vec<Vec<Elem>> = Vec::new();
    let mut seen = vec![false; n];
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut o = vec![x];
        seen[x] = true;
        let mut y = theta.apply(x);
        while y != x {
            seen[y] = true;
            o.push(y);
            y = theta.apply(y);
        }
        orbits.push(o);
    }
    let total: usize = orbits.iter().map(|o| (m / o.len()) * o.len() * o.len()).sum();
    if total != m * n {
        return Err(ConstructionError::Internal(format!("Σ l_i|O_i|² = {total} ≠ m|G| = {}", m * n)));
    }
    let dc = dual_characters(g, &orbits, m);
    let p = orbits.len() - 1;
    let sigma = |i: usize| -> String {
        match (i, p) {
            (0, _) => String::new(),
            (_, 1) => "σ̃".into(),
            _ => format!("σ̃_{i}"),
        }
    };
    let beta = |k: usize| -> String {
        match k {
            0 => String::new(),
            1 => "β̂".into(),
            _ => format!("β̂^{k}"),
        }
    };
    let name = |c: usize, with_rho: bool| -> String {
        let (i, k, _) = dc.chars[c];
        let mut s = format!("{}{}", beta(k), sigma(i));
        if with_rho {
            s.push_str("ρ̃");
        }
        if s.is_empty() {
            s = "id".into();
        }
        s
    };
    let d = s.d();
    let mut objects = Vec::new();
    for (c, (i, _, _)) in dc.chars.iter().enumerate() {
        objects.push((name(c, false), orbits[*i].len() as f64));
    }
    for (c, (i, _, _)) in dc.chars.iter().enumerate() {
        objects.push((name(c, true), orbits[*i].len() as f64 * d));
    }
    let mut rho_square = vec![("id".to_string(), 1)];
    for (c, (_, k, _)) in dc.chars.iter().enumerate() {
        if *k == 0 {
            rho_square.push((name(c, true), 1));
        }
    }
    let mut products = Vec::new();
    for (c, (i, k, _)) in dc.chars.iter().enumerate() {
        if *k == 0 && *i > 0 {
            let terms = dc.fusion(c, c).into_iter().map(|(z, mlt)| (name(z, false), mlt)).collect();
            products.push(Decomposition { object: name(c, false), terms });
        }
    }
    Ok(FusionSummary {
        group_label: format!("Rep({}^ ⋊ Z{m})", g.name()),
        objects,
        rho_square,
        products,
        q_system_preserved: check_qsystem(s, 1e-8).q1,
        obstruction_sign_pattern: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualGraphData {
    pub group: String,
    /// G_2, labelling the objects ρ̂β_z
    pub beta: Vec<Elem>,
    /// J0: one of g, −g for each pair in G∖G_2 (smaller index), labelling π_g
    pub j0: Vec<Elem>,
    /// |J1|: number of objects σ_j, each with multiplicity n_j = 1
    pub j1_count: usize,
    pub d_rho_hat: f64,
    pub d_iota: f64,
    pub d_kappa: f64,
    pub d_pi: f64,
    pub d_sigma: f64,
}

impl DualGraphData {
    /// |d(ῑκ) − (|G_2| d + |J0|(d+1) + |J1|(d−1))|
    pub fn dimension_balance(&self) -> f64 {
        let lhs = self.d_iota * self.d_kappa;
        let rhs = self.beta.len() as f64 * self.d_rho_hat
            + self.j0.len() as f64 * self.d_pi
            + self.j1_count as f64 * self.d_sigma;
        (lhs - rhs).abs()
    }
}

pub fn dual_graph_data(g: &GroupSpec) -> DualGraphData {
    let sub = subgroup_data(g);
    let d = g.dimension();
    let j0: Vec<Elem> = g.elements().filter(|&x| !sub.in_two_torsion(x) && x < g.neg(x)).collect();
    let j1_count = (g.order() - sub.two_torsion.len()) / 2;
    DualGraphData {
        group: g.name(),
        beta: sub.two_torsion.clone(),
        j0,
        j1_count,
        d_rho_hat: d,
        d_iota: (d + 1.0).sqrt(),
        d_kappa: (d - 1.0) * (d + 1.0).sqrt(),
        d_pi: d + 1.0,
        d_sigma: d - 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_solution, z2x2};

    fn grp(f: &[usize]) -> GroupSpec {
        GroupSpec::new(f).unwrap()
    }

    #[test]
    fn odd_accompanying_pairs_up_the_z3_solutions() {
        let h = catalog_solution("Z3-haagerup").unwrap();
        let acc = catalog_solution("Z3-accompanying").unwrap();
        let a = accompany_odd(&h).unwrap();
        assert!(equivalent_up_to_aut(&a, &acc, 1e-8).unwrap());
        let back = accompany_odd(&a).unwrap();
        assert!(equivalent_up_to_aut(&back, &h, 1e-8).unwrap());
    }

    #[test]
    fn odd_accompanying_rejects_even_groups() {
        let s = catalog_solution("Z4-qsystem").unwrap();
        assert!(matches!(accompany_odd(&s), Err(ConstructionError::Precondition(_))));
    }

    #[test]
    fn trivial_group_is_a_fixed_point() {
        let g = GroupSpec::trivial();
        let d = g.dimension();
        let s = SolutionTriple::new(g, vec![1], vec![0], vec![Complex64::new(-1.0 / d, 0.0)]).unwrap();
        assert!(evaluate_residuals(&s, 1e-12).passes());
        let a = accompany_odd(&s).unwrap();
        assert!(a.max_amplitude_distance(&s) < 1e-12);
    }

    #[test]
    fn even_accompanying_swaps_the_z4_classes() {
        let q = catalog_solution("Z4-qsystem").unwrap();
        let acc = catalog_solution("Z4-accompanying").unwrap();
        let a = accompany_even(&q).unwrap();
        assert!(equivalent_up_to_aut(&a, &acc, 1e-8).unwrap());
        let b = accompany_even(&acc).unwrap();
        assert!(equivalent_up_to_aut(&b, &q, 1e-8).unwrap());
    }

    #[test]
    fn hatted_sign_rule_wraps_with_a_minus_sign() {
        let s = catalog_solution("Z4-qsystem").unwrap();
        let alg = FormalAlgebra::from_solution(&s);
        let th = hatted_isometries(&s);
        // α̂_1(T̂_1) = T̂_3 and α̂_1(T̂_3) = −T̂_1
        assert!(alg.is_zero(&alg.dual_action(1, &th[1]).sub(&th[3]), 1e-12).unwrap());
        assert!(alg.is_zero(&alg.dual_action(1, &th[3]).add(&th[1]), 1e-12).unwrap());
        // T̂_b are isometries with orthogonal ranges
        for a in 0..4 {
            for b in 0..4 {
                let p = alg.multiply(&alg.adjoint(&th[a]), &th[b]).unwrap();
                let c = alg.as_scalar(&p, 1e-12).unwrap().unwrap();
                assert!((c - if a == b { 1.0 } else { 0.0 }).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn even_accompanying_preconditions() {
        let s = catalog_solution("Z2x2").unwrap();
        assert!(matches!(accompany_even(&s), Err(ConstructionError::Precondition(_))));
        let s = catalog_solution("Z3-haagerup").unwrap();
        assert!(matches!(accompany_even(&s), Err(ConstructionError::Precondition(_))));
    }

    #[test]
    fn deequivariantize_z4() {
        let s = catalog_solution("Z4-qsystem").unwrap();
        let f = deequivariantize(&s, 2).unwrap();
        let expect: Vec<(String, usize)> = vec![("id".into(), 1), ("ρ̃".into(), 2), ("α̃ρ̃".into(), 2)];
        assert_eq!(f.rho_square, expect);
        assert!(f.q_system_preserved);
        assert!(f.obstruction_sign_pattern.as_ref().unwrap().contains(&(1, -1)));
        assert!(f.dimension_defect(s.d()) < 1e-9);
        let err = deequivariantize(&s, 1).unwrap_err().to_string();
        assert!(err.contains("2z = 0"), "{err}");
        assert!(deequivariantize(&s, 0).unwrap_err().to_string().contains("z ≠ 0"));
    }

    #[test]
    fn deequivariantize_names_the_failed_sign_condition() {
        let s = catalog_solution("Z2x2").unwrap();
        let bad: Vec<Elem> = (1..4).filter(|&z| s.eps(z, z) == -1).collect();
        assert!(!bad.is_empty());
        for z in bad {
            let err = deequivariantize(&s, z).unwrap_err().to_string();
            assert!(err.contains("ε_z(z)"), "{err}");
        }
    }

    #[test]
    fn equivariantize_klein_by_three_cycle() {
        let s = catalog_solution("Z2x2").unwrap();
        let g = s.group.clone();
        let theta = GroupMap::from_permutation(&g, &[0, 2, 3, 1]).unwrap();
        let f = equivariantize(&s, &theta).unwrap();
        let rs: Vec<(String, usize)> = vec![("id".into(), 1), ("ρ̃".into(), 1), ("σ̃ρ̃".into(), 1)];
        assert_eq!(f.rho_square, rs);
        let sq = &f.products[0];
        assert_eq!(sq.object, "σ̃");
        let expect: Vec<(String, usize)> =
            vec![("id".into(), 1), ("β̂".into(), 1), ("β̂^2".into(), 1), ("σ̃".into(), 2)];
        assert_eq!(sq.terms, expect);
        assert!(f.q_system_preserved);
        assert!(f.dimension_defect(s.d()) < 1e-9);
    }

    #[test]
    fn equivariantize_identity_gives_the_group_fusion() {
        let s = catalog_solution("Z3-haagerup").unwrap();
        let f = equivariantize(&s, &GroupMap::identity(&s.group)).unwrap();
        assert_eq!(f.rho_square.len(), 1 + 3);
        assert!(f.rho_square.iter().all(|(_, m)| *m == 1));
        assert!(f.dimension_defect(s.d()) < 1e-9);
    }

    #[test]
    fn equivariantize_rejects_a_breaking_transposition() {
        let s = z2x2(1, 0).unwrap();
        let theta = GroupMap::from_permutation(&s.group, &[0, 2, 1, 3]).unwrap();
        match equivariantize(&s, &theta) {
            Err(ConstructionError::NotInvariant(v)) => assert!(!v.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dual_graph_examples() {
        let z3 = dual_graph_data(&grp(&[3]));
        assert_eq!((z3.beta.len(), z3.j0.len(), z3.j1_count), (1, 1, 1));
        assert_eq!(z3.j0, vec![1]);
        let z6 = dual_graph_data(&grp(&[6]));
        assert_eq!((z6.beta.len(), z6.j0.len(), z6.j1_count), (2, 2, 2));
        assert_eq!(z6.j0, vec![1, 2]);
        let k = dual_graph_data(&grp(&[2, 2]));
        assert_eq!((k.beta.len(), k.j0.len(), k.j1_count), (4, 0, 0));
        for f in [&[3usize][..], &[6], &[2, 2], &[5], &[4], &[2, 4]] {
            assert!(dual_graph_data(&grp(f)).dimension_balance() < 1e-9, "{f:?}");
        }
    }
}
