//! Finite abelian groups as products of cyclic factors.
//!
//! Elements are dense indices `0..order` in mixed-radix order with the first
//! factor varying fastest. Index 0 is the identity.

use crate::phase::Phase;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub type Elem = usize;

/// Default ceiling for exhaustive automorphism enumeration.
pub const DEFAULT_AUT_BOUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    Invalid(String),
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    Capability { order: usize, bound: usize },
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct GroupSpec {
    factors: Vec<usize>,
    order: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    invariant_factors: Vec<usize>,
}

impl TryFrom<GroupRepr> for GroupSpec {
    type Error = GroupError;
    fn try_from(r: GroupRepr) -> Result<Self, GroupError> {
        if r.invariant_factors.is_empty() {
            Ok(GroupSpec::trivial())
        } else {
            GroupSpec::new(&r.invariant_factors)
        }
    }
}

impl From<GroupSpec> for GroupRepr {
    fn from(g: GroupSpec) -> Self {
        GroupRepr { invariant_factors: g.factors }
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({})", self.name())
    }
}

/// Builds the group `Z_{d1} × … × Z_{dr}`.
pub fn construct_group(factors: &[usize]) -> Result<GroupSpec, GroupError> {
    GroupSpec::new(factors)
}

impl GroupSpec {
    pub fn new(factors: &[usize]) -> Result<GroupSpec, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::Invalid("empty factor list".into()));
        }
        if let Some(f) = factors.iter().find(|&&f| f < 2) {
            return Err(GroupError::Invalid(format!("factor {f} < 2")));
        }
        Ok(Self::build(factors.to_vec()))
    }

    /// The trivial group (no factors, one element).
    pub fn trivial() -> GroupSpec {
        Self::build(Vec::new())
    }

    fn build(factors: Vec<usize>) -> GroupSpec {
        let order: usize = factors.iter().product();
        let mut g = GroupSpec { factors, order, add: Vec::new(), neg: Vec::new() };
        let coords: Vec<Vec<usize>> = (0..order).map(|i| g.coords(i)).collect();
        let mut add = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let c: Vec<usize> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .zip(&g.factors)
                    .map(|((x, y), d)| (x + y) % d)
                    .collect();
                add[a * order + b] = g.index(&c);
            }
        }
        let neg = (0..order)
            .map(|a| {
                let c: Vec<usize> =
                    coords[a].iter().zip(&g.factors).map(|(x, d)| (d - x) % d).collect();
                g.index(&c)
            })
            .collect();
        g.add = add;
        g.neg = neg;
        g
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_odd(&self) -> bool {
        self.order % 2 == 1
    }

    /// Human-readable name such as `Z2xZ2`.
    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "Z1".into();
        }
        self.factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn coords(&self, mut i: Elem) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&d| {
                let c = i % d;
                i /= d;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> Elem {
        let mut idx = 0;
        let mut stride = 1;
        for (c, d) in coords.iter().zip(&self.factors) {
            idx += (c % d) * stride;
            stride *= d;
        }
        idx
    }

    /// The generator of the `i`-th cyclic factor.
    pub fn generator(&self, i: usize) -> Elem {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        self.index(&c)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b])
    }

    #[inline]
    pub fn double(&self, a: Elem) -> Elem {
        self.add(a, a)
    }

    /// `k·a` for an integer `k`.
    pub fn mul(&self, k: i64, a: Elem) -> Elem {
        let c: Vec<usize> = self
            .coords(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (k.rem_euclid(d as i64) as usize * x) % d)
            .collect();
        self.index(&c)
    }

    pub fn sum(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(0, |acc, &x| self.add(acc, x))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Dimension `d = (n + √(n²+4))/2` attached to the group.
    pub fn dimension(&self) -> f64 {
        let n = self.order as f64;
        (n + (n * n + 4.0).sqrt()) / 2.0
    }

    /// Exact pairing `⟨g, χ⟩ = exp(2πi Σ g_j χ_j / d_j)`.
    pub fn pairing_phase(&self, chi: Elem, g: Elem) -> Phase {
        let cg = self.coords(g);
        let cc = self.coords(chi);
        cg.iter()
            .zip(&cc)
            .zip(&self.factors)
            .fold(Phase::ONE, |acc, ((&x, &y), &d)| acc + Phase::new((x * y) as i64, d as i64))
    }

    pub fn parse_factors(s: &str) -> Result<GroupSpec, GroupError> {
        let factors: Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        let factors = factors.map_err(|e| GroupError::Invalid(format!("bad factor list {s:?}: {e}")))?;
        GroupSpec::new(&factors)
    }
}

/// `exp(2πi Σ_j g_j χ_j / d_j)`, with Ĝ enumerated like G.
pub fn dual_pairing(g: &GroupSpec, chi: Elem, x: Elem) -> Complex64 {
    g.pairing_phase(chi, x).to_complex()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupData {
    pub two_torsion: Vec<Elem>,
    pub doubled: Vec<Elem>,
    /// Coset representatives of G/2G (smallest index in each coset).
    pub quotient_by_doubled: Vec<Elem>,
    /// For each element, the position of its coset in `quotient_by_doubled`.
    pub coset_index: Vec<usize>,
}

impl SubgroupData {
    pub fn coset_rep(&self, g: Elem) -> Elem {
        self.quotient_by_doubled[self.coset_index[g]]
    }

    pub fn in_doubled(&self, g: Elem) -> bool {
        self.doubled.binary_search(&g).is_ok()
    }

    pub fn in_two_torsion(&self, g: Elem) -> bool {
        self.two_torsion.binary_search(&g).is_ok()
    }
}

pub fn subgroup_data(g: &GroupSpec) -> SubgroupData {
    let two_torsion: Vec<Elem> = g.elements().filter(|&x| g.double(x) == 0).collect();
    let mut doubled: Vec<Elem> = g.elements().map(|x| g.double(x)).collect();
    doubled.sort_unstable();
    doubled.dedup();
    let mut coset_index = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_index[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &t in &doubled {
            coset_index[g.add(x, t)] = idx;
        }
    }
    SubgroupData { two_torsion, doubled, quotient_by_doubled: reps, coset_index }
}

/// A homomorphism G → G given by the images of the factor generators.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupMap {
    pub images: Vec<Elem>,
    pub is_automorphism: bool,
    table: Vec<Elem>,
    gens: Vec<Elem>,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupMap{:?}", self.table)
    }
}

impl GroupMap {
    pub fn identity(g: &GroupSpec) -> GroupMap {
        GroupMap {
            images: (0..g.rank()).map(|i| g.generator(i)).collect(),
            is_automorphism: true,
            table: g.elements().collect(),
            gens: (0..g.rank()).map(|i| g.generator(i)).collect(),
        }
    }

    pub fn from_generator_images(g: &GroupSpec, images: &[Elem]) -> Result<GroupMap, GroupError> {
        if images.len() != g.rank() {
            return Err(GroupError::Invalid(format!(
                "expected {} generator images, got {}",
                g.rank(),
                images.len()
            )));
        }
        for (i, (&x, &d)) in images.iter().zip(g.factors()).enumerate() {
            if x >= g.order() {
                return Err(GroupError::Invalid(format!("image {x} out of range")));
            }
            if g.mul(d as i64, x) != 0 {
                return Err(GroupError::Invalid(format!(
                    "image of generator {i} has order not dividing {d}"
                )));
            }
        }
        let table: Vec<Elem> = g
            .elements()
            .map(|e| {
                g.coords(e)
                    .iter()
                    .zip(images)
                    .fold(0, |acc, (&c, &x)| g.add(acc, g.mul(c as i64, x)))
            })
            .collect();
        let mut seen = vec![false; g.order()];
        for &t in &table {
            seen[t] = true;
        }
        let is_automorphism = seen.iter().all(|&s| s);
        let gens = (0..g.rank()).map(|i| g.generator(i)).collect();
        Ok(GroupMap { images: images.to_vec(), is_automorphism, table, gens })
    }

    /// Builds a map from a full permutation of element indices, checking additivity.
    pub fn from_permutation(g: &GroupSpec, perm: &[Elem]) -> Result<GroupMap, GroupError> {
        if perm.len() != g.order() {
            return Err(GroupError::Invalid(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                g.order()
            )));
        }
        let images: Vec<Elem> = (0..g.rank()).map(|i| perm[g.generator(i)]).collect();
        let m = GroupMap::from_generator_images(g, &images)?;
        if m.table != perm {
            return Err(GroupError::NotAutomorphism("permutation does not respect addition".into()));
        }
        Ok(m)
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn inverse(&self) -> Result<GroupMap, GroupError> {
        if !self.is_automorphism {
            return Err(GroupError::NotAutomorphism("not bijective".into()));
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        let images = self.gens.iter().map(|&e| inv[e]).collect();
        Ok(GroupMap { images, is_automorphism: true, table: inv, gens: self.gens.clone() })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        let table: Vec<Elem> = other.table.iter().map(|&x| self.table[x]).collect();
        let images = other.images.iter().map(|&x| self.table[x]).collect();
        GroupMap {
            images,
            is_automorphism: self.is_automorphism && other.is_automorphism,
            table,
            gens: self.gens.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Order as a permutation.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }
}

pub fn automorphism_group(g: &GroupSpec) -> Result<Vec<GroupMap>, GroupError> {
    automorphism_group_bounded(g, DEFAULT_AUT_BOUND)
}

/// All automorphisms by brute force over generator images; identity first.
pub fn automorphism_group_bounded(g: &GroupSpec, bound: usize) -> Result<Vec<GroupMap>, GroupError> {
    if g.order() > bound {
        return Err(GroupError::Capability { order: g.order(), bound });
    }
    let candidates: Vec<Vec<Elem>> = g
        .factors()
        .iter()
        .map(|&d| g.elements().filter(|&x| g.mul(d as i64, x) == 0).collect())
        .collect();
    let mut out = vec![GroupMap::identity(g)];
    let mut choice = vec![0usize; g.rank()];
    if g.rank() == 0 {
        return Ok(out);
    }
    loop {
        let images: Vec<Elem> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let m = GroupMap::from_generator_images(g, &images)?;
        if m.is_automorphism && !m.is_identity() {
            out.push(m);
        }
        let mut pos = 0;
        loop {
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
            if pos == choice.len() {
                return Ok(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_and_cyclic_differ() {
        let z4 = GroupSpec::new(&[4]).unwrap();
        let v = GroupSpec::new(&[2, 2]).unwrap();
        assert_eq!(subgroup_data(&z4).two_torsion.len(), 2);
        assert_eq!(subgroup_data(&v).two_torsion.len(), 4);
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(GroupSpec::new(&[1]).is_err());
        assert!(GroupSpec::new(&[]).is_err());
    }

    #[test]
    fn subgroups() {
        let z4 = GroupSpec::new(&[4]).unwrap();
        let s = subgroup_data(&z4);
        assert_eq!(s.two_torsion, vec![0, 2]);
        assert_eq!(s.doubled, vec![0, 2]);
        assert_eq!(s.quotient_by_doubled.len(), 2);
        let z3 = GroupSpec::new(&[3]).unwrap();
        let s = subgroup_data(&z3);
        assert_eq!(s.two_torsion, vec![0]);
        assert_eq!(s.doubled.len(), 3);
        assert_eq!(s.quotient_by_doubled, vec![0]);
        let v = GroupSpec::new(&[2, 2]).unwrap();
        let s = subgroup_data(&v);
        assert_eq!(s.doubled, vec![0]);
        assert_eq!(s.quotient_by_doubled.len(), 4);
    }

    #[test]
    fn automorphism_counts() {
        let count = |f: &[usize]| automorphism_group(&GroupSpec::new(f).unwrap()).unwrap().len();
        assert_eq!(count(&[2, 2]), 6);
        assert_eq!(count(&[4]), 2);
        assert_eq!(count(&[3]), 2);
        assert_eq!(count(&[2]), 1);
        assert_eq!(count(&[2, 4]), 8);
        assert_eq!(count(&[2, 2, 2]), 168);
    }

    #[test]
    fn automorphisms_identity_first_and_closed() {
        let g = GroupSpec::new(&[2, 2]).unwrap();
        let auts = automorphism_group(&g).unwrap();
        assert!(auts[0].is_identity());
        for a in &auts {
            for b in &auts {
                let c = a.compose(b);
                assert!(auts.iter().any(|m| m.table() == c.table()));
            }
            let inv = a.inverse().unwrap();
            assert!(a.compose(&inv).is_identity());
        }
    }

    #[test]
    fn automorphism_bound() {
        let g = GroupSpec::new(&[5, 13]).unwrap();
        assert!(matches!(automorphism_group(&g), Err(GroupError::Capability { .. })));
    }

    #[test]
    fn pairing_examples() {
        let z3 = GroupSpec::new(&[3]).unwrap();
        let w = dual_pairing(&z3, 1, 1);
        assert!((w - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)).norm() < 1e-12);
        let v = GroupSpec::new(&[2, 2]).unwrap();
        let chi = v.index(&[1, 0]);
        let g = v.index(&[1, 1]);
        assert!((dual_pairing(&v, chi, g) + 1.0).norm() < 1e-12);
        for x in v.elements() {
            assert!((dual_pairing(&v, 0, x) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let g = GroupSpec::new(&[2, 4]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"invariant_factors":[2,4]}"#);
        let back: GroupSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
