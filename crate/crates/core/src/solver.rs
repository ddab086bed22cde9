//! Staged numerical solver: the degenerate x-system first, then amplitudes
//! with magnitudes pinned by the x-table, then classification up to Γ.

use crate::group::{automorphism_group_bounded, subgroup_data, Elem, GroupError, GroupSpec};
use crate::lm::{minimize, LmOptions};
use crate::solution::{
    check_degenerate, check_qsystem, evaluate_residuals, magnitude_from_x, x_table_with_tol, SolutionTriple,
    XTable,
};
use crate::symmetry::{gamma_orbit_with, gauge_distance, GammaContext, SymmetryError};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

pub const DEFAULT_MAX_GROUP_ORDER: usize = 8;
/// Upper bound on the number of ε classes enumerated.
pub const MAX_EPSILON_CLASSES: usize = 4096;
const DEDUPE_TOL: f64 = 1e-6;
const EMPTY_BATCHES_TO_STOP: usize = 3;
const MAX_BATCHES: usize = 12;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("group of order {order} exceeds the solver bound {bound}")]
    Capability { order: usize, bound: usize },
    #[error("{0} ε classes exceed the enumeration cap")]
    TooManyClasses(usize),
    #[error("invalid options: {0}")]
    Options(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveOptions {
    pub restarts: usize,
    pub seed: u64,
    pub tol_accept: f64,
    pub tol_polish: f64,
    pub require_qsystem: bool,
    pub max_group_order: usize,
    /// Use the reduced odd-group system when ε is trivial.
    pub odd_fast_path: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            restarts: 200,
            seed: 0,
            tol_accept: 1e-9,
            tol_polish: 1e-10,
            require_qsystem: false,
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
            odd_fast_path: true,
        }
    }
}

impl SolveOptions {
    fn validate(&self, g: &GroupSpec) -> Result<(), SolverError> {
        if self.tol_polish > self.tol_accept {
            return Err(SolverError::Options("tol_polish must not exceed tol_accept".into()));
        }
        if self.restarts == 0 {
            return Err(SolverError::Options("restarts must be positive".into()));
        }
        if g.order() > self.max_group_order {
            return Err(SolverError::Capability { order: g.order(), bound: self.max_group_order });
        }
        Ok(())
    }
}

fn rng_for(seed: u64, branch: u64, idx: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(branch.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0x5bd1);
    r.set_word_pos(idx as u128 * 1024);
    r
}

/// Runs batches of restarts until `EMPTY_BATCHES_TO_STOP` consecutive
/// batches add nothing new; `attempt` returns a candidate or None and
/// `is_new` decides membership in the accumulated list.
fn run_batches<T: Send, A, N>(opts: &SolveOptions, branch: u64, attempt: A, mut is_new: N) -> Vec<T>
where
    A: Fn(&mut ChaCha8Rng) -> Option<T> + Sync,
    N: FnMut(&T, &[T]) -> bool,
{
    let mut found: Vec<T> = Vec::new();
    let mut empty = 0;
    for b in 0..MAX_BATCHES {
        let base = (b * opts.restarts) as u64;
        let cands: Vec<Option<T>> = (0..opts.restarts as u64)
            .into_par_iter()
            .map(|i| attempt(&mut rng_for(opts.seed, branch, base + i)))
            .collect();
        let mut added = false;
        for c in cands.into_iter().flatten() {
            if is_new(&c, &found) {
                found.push(c);
                added = true;
            }
        }
        if added {
            empty = 0;
        } else {
            empty += 1;
            if empty >= EMPTY_BATCHES_TO_STOP {
                break;
            }
        }
    }
    found
}

// ---------------------------------------------------------------------------
// Real polynomial systems (degenerate stage)

#[derive(Clone, Debug)]
struct RTerm {
    c: f64,
    v: [u32; 3],
    len: u8,
}

#[derive(Clone, Debug, Default)]
struct REq {
    c0: f64,
    terms: Vec<RTerm>,
}

fn eval_real(eqs: &[REq], p: &[f64], r: &mut Vec<f64>, mut jac: Option<&mut DMatrix<f64>>) {
    r.clear();
    for (row, e) in eqs.iter().enumerate() {
        let mut v = e.c0;
        for t in &e.terms {
            let vals: [f64; 3] = [p[t.v[0] as usize], p[t.v[1] as usize], p[t.v[2] as usize]];
            let k = t.len as usize;
            let prod: f64 = vals[..k].iter().product();
            v += t.c * prod;
            if let Some(j) = jac.as_deref_mut() {
                for i in 0..k {
                    let others: f64 = (0..k).filter(|&m| m != i).map(|m| vals[m]).product();
                    j[(row, t.v[i] as usize)] += t.c * others;
                }
            }
        }
        r.push(v);
    }
}

struct DegSystem {
    n: usize,
    var: Vec<u32>,
    nvars: usize,
    eqs: Vec<REq>,
}

impl DegSystem {
    fn new(g: &GroupSpec) -> DegSystem {
        let n = g.order();
        let sub = subgroup_data(g);
        let mut var = vec![u32::MAX; n * n];
        let mut nvars = 0u32;
        for h in 0..n {
            // K_h = 2G + ⟨h⟩
            let mut k: Vec<Elem> = Vec::new();
            for &t in &sub.doubled {
                let mut m = t;
                loop {
                    if !k.contains(&m) {
                        k.push(m);
                    }
                    m = g.add(m, h);
                    if m == t {
                        break;
                    }
                }
            }
            for x in 0..n {
                if var[x * n + h] != u32::MAX {
                    continue;
                }
                for &m in &k {
                    var[g.add(x, m) * n + h] = nvars;
                }
                nvars += 1;
            }
        }
        let d = g.dimension();
        let xv = |a: Elem, h: Elem| var[a * n + h];
        let term = |c: f64, v: &[u32]| {
            let mut arr = [0u32; 3];
            arr[..v.len()].copy_from_slice(v);
            RTerm { c, v: arr, len: v.len() as u8 }
        };
        let mut eqs = Vec::new();
        for a in 0..n {
            eqs.push(REq { c0: 1.0 / d, terms: (0..n).map(|l| term(1.0, &[xv(a, l)])).collect() });
        }
        for a in 0..n {
            for b in a..n {
                let terms = (0..n).map(|l| term(1.0, &[xv(a, g.sub(l, a)), xv(b, g.sub(l, b))])).collect();
                let c0 = -(if a == b { 1.0 } else { 0.0 }) + 1.0 / d;
                eqs.push(REq { c0, terms });
            }
        }
        for a in 0..n {
            for h in 0..n {
                let mut terms: Vec<RTerm> = (0..n)
                    .map(|l| term(1.0, &[xv(a, l), xv(a, l), xv(g.sub(a, h), g.add(l, h))]))
                    .collect();
                terms.push(term(-1.0, &[xv(a, h), xv(a, h)]));
                eqs.push(REq { c0: 1.0 / d, terms });
            }
        }
        DegSystem { n, var, nvars: nvars as usize, eqs }
    }

    fn table(&self, g: &GroupSpec, p: &[f64]) -> XTable {
        XTable { group: g.clone(), values: (0..self.n * self.n).map(|i| p[self.var[i] as usize]).collect() }
    }
}

fn x_image(x: &XTable, theta_inv: &[Elem], p: Elem) -> XTable {
    let g = &x.group;
    let n = g.order();
    let mut values = vec![0.0; n * n];
    for a in 0..n {
        for h in 0..n {
            values[a * n + h] = x.get(g.add(p, theta_inv[a]), theta_inv[h]);
        }
    }
    XTable { group: g.clone(), values }
}

/// All images of x under automorphisms and translations x_{g,h} ↦ x_{p+g,h}.
pub fn x_images(x: &XTable) -> Vec<XTable> {
    let g = &x.group;
    let auts = automorphism_group_bounded(g, usize::MAX).unwrap_or_default();
    let mut out: Vec<XTable> = Vec::new();
    for a in &auts {
        let inv = a.inverse().expect("automorphism");
        for p in g.elements() {
            let y = x_image(x, inv.table(), p);
            if !out.iter().any(|o| o.max_distance(&y) < DEDUPE_TOL) {
                out.push(y);
            }
        }
    }
    out
}

/// All real solutions of the degenerate system, one per class under
/// automorphisms and translations.
pub fn solve_degenerate(g: &GroupSpec, opts: &SolveOptions) -> Result<Vec<XTable>, SolverError> {
    opts.validate(g)?;
    let sys = DegSystem::new(g);
    let lm = LmOptions::default();
    let attempt = |rng: &mut ChaCha8Rng| -> Option<XTable> {
        let p0: Vec<f64> = (0..sys.nvars).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let out = minimize(|p, r, j| eval_real(&sys.eqs, p, r, j), p0, &lm);
        if out.max_residual > 1e-10 {
            return None;
        }
        let x = sys.table(g, &out.params);
        check_degenerate(&x, 1e-10).passes().then_some(x)
    };
    let found = run_batches(opts, u64::MAX, attempt, |x, found| {
        let imgs = x_images(x);
        !found.iter().any(|f| imgs.iter().any(|y| y.max_distance(f) < DEDUPE_TOL))
    });
    let mut found = found;
    for x in &mut found {
        canonical_x(x);
    }
    found.sort_by(|a, b| b.get(0, 0).partial_cmp(&a.get(0, 0)).unwrap_or(std::cmp::Ordering::Equal));
    Ok(found)
}

/// Replace x by its lexicographically largest image (deterministic output).
fn canonical_x(x: &mut XTable) {
    let key = |t: &XTable| t.values.iter().map(|v| (v * 1e6).round() as i64).collect::<Vec<_>>();
    if let Some(best) = x_images(x).into_iter().max_by_key(key) {
        *x = best;
    }
}

// ---------------------------------------------------------------------------
// ε classes

type Bits = Vec<u64>;

fn bit(v: &Bits, i: usize) -> bool {
    v[i / 64] >> (i % 64) & 1 == 1
}

fn flip(v: &mut Bits, i: usize) {
    v[i / 64] ^= 1 << (i % 64);
}

fn xor(a: &mut Bits, b: &Bits) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn lowest(v: &Bits) -> Option<usize> {
    v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Row-reduced basis over F2 keyed by pivot (lowest set bit).
#[derive(Clone, Debug, Default)]
struct F2Basis {
    rows: Vec<(usize, Bits)>,
}

impl F2Basis {
    fn reduce(&self, v: &mut Bits) {
        for (p, r) in &self.rows {
            if bit(v, *p) {
                xor(v, r);
            }
        }
    }

    /// Inserts v; returns false if dependent.
    fn insert(&mut self, mut v: Bits) -> bool {
        self.reduce(&mut v);
        let Some(p) = lowest(&v) else { return false };
        for (_, r) in self.rows.iter_mut() {
            if bit(r, p) {
                xor(r, &v);
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonClass {
    /// `epsilon[h*n+g] = ε_h(g)`.
    pub epsilon: Vec<i8>,
    /// χ_g(z) = ε_z(g) for g over coset representatives of G/2G (rows) and
    /// z over G_2 (columns).
    pub chi: Vec<Vec<i8>>,
    /// ε_z(g) for the first z ∈ G_2∖{0} and first g ∉ 2G, when both exist
    /// (for Z4: ε_2(1), the sign of the standard ansatz).
    pub ansatz_sign: Option<i8>,
}

fn null_space_f2(eqs: &[Bits], nbits: usize) -> Vec<Bits> {
    // Gaussian elimination to reduced row echelon form, then read off the kernel.
    let words = nbits.div_ceil(64);
    let mut rows: Vec<Bits> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for e in eqs {
        let mut v = e.clone();
        for (r, &p) in rows.iter().zip(&pivots) {
            if bit(&v, p) {
                xor(&mut v, r);
            }
        }
        if let Some(p) = lowest(&v) {
            for r in rows.iter_mut() {
                if bit(r, p) {
                    xor(r, &v);
                }
            }
            rows.push(v);
            pivots.push(p);
        }
    }
    let mut kernel = Vec::new();
    for free in 0..nbits {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; words];
        flip(&mut v, free);
        for (r, &p) in rows.iter().zip(&pivots) {
            if bit(r, free) {
                flip(&mut v, p);
            }
        }
        kernel.push(v);
    }
    kernel
}

struct EpsilonSpace {
    n: usize,
    coboundaries: F2Basis,
    complement: Vec<Bits>,
}

fn epsilon_space(g: &GroupSpec) -> EpsilonSpace {
    let n = g.order();
    let nb = n * n;
    let words = nb.div_ceil(64);
    let var = |h: Elem, x: Elem| h * n + x;
    let mut eqs = Vec::new();
    for h in 0..n {
        let mut e = vec![0u64; words];
        flip(&mut e, var(h, 0));
        eqs.push(e);
        for k in 0..n {
            for x in 0..n {
                let mut e = vec![0u64; words];
                flip(&mut e, var(g.add(h, k), x));
                flip(&mut e, var(h, x));
                flip(&mut e, var(k, g.add(x, g.double(h))));
                eqs.push(e);
            }
        }
    }
    let z = null_space_f2(&eqs, nb);
    let sub = subgroup_data(g);
    let mut b = F2Basis::default();
    for x in 0..n {
        if sub.in_doubled(x) {
            continue;
        }
        let mut v = vec![0u64; words];
        for h in 0..n {
            for a in 0..n {
                let hit = (a == x) as u8 + (g.add(a, g.double(h)) == x) as u8;
                if hit % 2 == 1 {
                    flip(&mut v, var(h, a));
                }
            }
        }
        b.insert(v);
    }
    let mut span = b.clone();
    let mut complement = Vec::new();
    for v in z {
        if span.insert(v.clone()) {
            let mut c = v;
            b.reduce(&mut c);
            complement.push(c);
        }
    }
    EpsilonSpace { n, coboundaries: b, complement }
}

impl EpsilonSpace {
    fn to_signs(&self, v: &Bits) -> Vec<i8> {
        (0..self.n * self.n).map(|i| if bit(v, i) { -1 } else { 1 }).collect()
    }

    fn key(&self, eps: &[i8]) -> Bits {
        let words = (self.n * self.n).div_ceil(64);
        let mut v = vec![0u64; words];
        for (i, &e) in eps.iter().enumerate() {
            if e < 0 {
                flip(&mut v, i);
            }
        }
        self.coboundaries.reduce(&mut v);
        v
    }
}

fn epsilon_class(g: &GroupSpec, eps: Vec<i8>) -> EpsilonClass {
    let n = g.order();
    let sub = subgroup_data(g);
    let chi = sub
        .quotient_by_doubled
        .iter()
        .map(|&x| sub.two_torsion.iter().map(|&z| eps[z * n + x]).collect())
        .collect();
    let z = sub.two_torsion.iter().copied().find(|&z| z != 0);
    let x = g.elements().find(|&x| !sub.in_doubled(x));
    let ansatz_sign = z.zip(x).map(|(z, x)| eps[z * n + x]);
    EpsilonClass { epsilon: eps, chi, ansatz_sign }
}

/// Every ε satisfying the cocycle identity with ε_h(0)=1, one per class
/// modulo gauge coboundaries; trivial class first.
pub fn enumerate_epsilon(g: &GroupSpec) -> Result<Vec<EpsilonClass>, SolverError> {
    let sp = epsilon_space(g);
    let m = sp.complement.len();
    if m >= 63 || (1usize << m) > MAX_EPSILON_CLASSES {
        return Err(SolverError::TooManyClasses(if m >= 63 { usize::MAX } else { 1 << m }));
    }
    let words = (sp.n * sp.n).div_ceil(64);
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0..(1u64 << m) {
        let mut v = vec![0u64; words];
        for (i, c) in sp.complement.iter().enumerate() {
            if mask >> i & 1 == 1 {
                xor(&mut v, c);
            }
        }
        sp.coboundaries.reduce(&mut v);
        out.push(epsilon_class(g, sp.to_signs(&v)));
    }
    Ok(out)
}

/// Representatives of the ε classes up to the Γ action (which acts on ε alone).
pub fn epsilon_gamma_representatives(
    ctx: &GammaContext,
    classes: &[EpsilonClass],
) -> Result<Vec<EpsilonClass>, SolverError> {
    let g = &ctx.group;
    let n = g.order();
    let sp = epsilon_space(g);
    let keys: Vec<Bits> = classes.iter().map(|c| sp.key(&c.epsilon)).collect();
    let mut seen = vec![false; classes.len()];
    let mut reps = Vec::new();
    let elems = ctx.elements();
    for i in 0..classes.len() {
        if seen[i] {
            continue;
        }
        reps.push(classes[i].clone());
        let dummy = SolutionTriple::new(
            g.clone(),
            classes[i].epsilon.clone(),
            vec![0; n],
            vec![Complex64::new(0.0, 0.0); n * n * n],
        )
        .expect("well-shaped");
        for x in &elems {
            let img = ctx.apply(&dummy, x)?;
            let k = sp.key(&img.epsilon);
            if let Some(j) = keys.iter().position(|kk| *kk == k) {
                seen[j] = true;
            }
        }
    }
    Ok(reps)
}

/// η assignments: constant on cosets of 2G, forced to 1 where x_{g,0} ≠ 0.
pub fn eta_assignments(x: &XTable) -> Vec<Vec<u8>> {
    let g = &x.group;
    let sub = subgroup_data(g);
    let m = sub.quotient_by_doubled.len();
    let forced: Vec<bool> = (0..m)
        .map(|c| g.elements().any(|a| sub.coset_index[a] == c && x.get(a, 0).abs() > 1e-8))
        .collect();
    let free: Vec<usize> = (0..m).filter(|&c| !forced[c]).collect();
    let mut out = Vec::new();
    for code in 0..3usize.pow(free.len() as u32) {
        let mut per = vec![0u8; m];
        let mut c = code;
        for &f in &free {
            per[f] = (c % 3) as u8;
            c /= 3;
        }
        out.push(g.elements().map(|a| per[sub.coset_index[a]]).collect());
    }
    out
}

// ---------------------------------------------------------------------------
// Amplitude parameterization

#[derive(Clone, Copy, Debug)]
struct Factor {
    e: u32,
    conj: bool,
}

#[derive(Clone, Debug)]
struct CTerm {
    c: Complex64,
    f: [Factor; 3],
    len: u8,
}

#[derive(Clone, Debug, Default)]
struct CEq {
    c0: Complex64,
    terms: Vec<CTerm>,
}

fn fa(e: usize) -> Factor {
    Factor { e: e as u32, conj: false }
}

fn fc(e: usize) -> Factor {
    Factor { e: e as u32, conj: true }
}

fn cterm(c: Complex64, fs: &[Factor]) -> CTerm {
    let mut f = [fa(0); 3];
    f[..fs.len()].copy_from_slice(fs);
    CTerm { c, f, len: fs.len() as u8 }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum RootState {
    Free,
    Line(Complex64),
    Zero,
}

fn conj_if(z: Complex64, c: bool) -> Complex64 {
    if c {
        z.conj()
    } else {
        z
    }
}

fn intersect(a: RootState, b: RootState) -> RootState {
    match (a, b) {
        (RootState::Zero, _) | (_, RootState::Zero) => RootState::Zero,
        (RootState::Free, x) | (x, RootState::Free) => x,
        (RootState::Line(d1), RootState::Line(d2)) => {
            if (d1 / d2).im.abs() < 1e-9 {
                RootState::Line(d1)
            } else {
                RootState::Zero
            }
        }
    }
}

/// Union-find over amplitude entries with relations A_u = c·σ(A_parent).
struct PhaseUf {
    parent: Vec<usize>,
    coef: Vec<Complex64>,
    conj: Vec<bool>,
    state: Vec<RootState>,
}

impl PhaseUf {
    fn new(n: usize) -> PhaseUf {
        PhaseUf {
            parent: (0..n).collect(),
            coef: vec![Complex64::new(1.0, 0.0); n],
            conj: vec![false; n],
            state: vec![RootState::Free; n],
        }
    }

    /// (root, c, σ) with A_u = c·σ(A_root).
    fn find(&mut self, u: usize) -> (usize, Complex64, bool) {
        let p = self.parent[u];
        if p == u {
            return (u, Complex64::new(1.0, 0.0), false);
        }
        let (r, c2, s2) = self.find(p);
        let c = self.coef[u] * conj_if(c2, self.conj[u]);
        let s = self.conj[u] ^ s2;
        self.parent[u] = r;
        self.coef[u] = c;
        self.conj[u] = s;
        (r, c, s)
    }

    /// Imposes A_u = k·σ_e(A_v).
    fn relate(&mut self, u: usize, v: usize, k: Complex64, e: bool) {
        let (ru, a, sa) = self.find(u);
        let (rv, b, sb) = self.find(v);
        // A_ru = σ_a(k σ_e(b) / a) · σ_a σ_e σ_b (A_rv)
        let c = conj_if(k * conj_if(b, e) / a, sa);
        let s = sa ^ e ^ sb;
        if ru == rv {
            let st = if s {
                // z = c·conj(z): a real line through a square root of c
                RootState::Line(c.sqrt())
            } else if (c - 1.0).norm() < 1e-9 {
                RootState::Free
            } else {
                RootState::Zero
            };
            self.state[ru] = intersect(self.state[ru], st);
            return;
        }
        // move ru under rv; translate its state: z_ru = t d ⇒ z_rv = σ(t d / c) = t σ(d/c)
        let moved = match self.state[ru] {
            RootState::Line(d) => RootState::Line(conj_if(d / c, s)),
            other => other,
        };
        self.state[rv] = intersect(self.state[rv], moved);
        self.parent[ru] = rv;
        self.coef[ru] = c;
        self.conj[ru] = s;
    }
}

#[derive(Clone, Copy, Debug)]
enum RootKind {
    Fixed(Complex64),
    Free { m: f64, param: usize },
    Line { dir: Complex64, m: f64, param: usize },
}

/// A parameterized family of amplitude tables.
struct Param {
    root: Vec<usize>,
    coef: Vec<Complex64>,
    conj: Vec<bool>,
    kinds: Vec<RootKind>,
    nparams: usize,
    lines: Vec<(usize, f64)>,
}

struct Infeasible;

struct Constraints {
    nentries: usize,
    edges: Vec<(usize, usize, Complex64, bool)>,
    pins: Vec<(usize, Complex64)>,
    magnitudes: Vec<f64>,
}

fn build_param(c: &Constraints) -> Result<Param, Infeasible> {
    let mut uf = PhaseUf::new(c.nentries);
    for &(u, v, k, e) in &c.edges {
        uf.relate(u, v, k, e);
    }
    let mut pins: Vec<Option<Complex64>> = vec![None; c.nentries];
    let mut mag: Vec<Option<f64>> = vec![None; c.nentries];
    let tol = 1e-7;
    for u in 0..c.nentries {
        let (r, _, _) = uf.find(u);
        let m = c.magnitudes[u];
        match mag[r] {
            None => mag[r] = Some(m),
            Some(m0) if (m0 - m).abs() > tol => return Err(Infeasible),
            _ => {}
        }
    }
    for &(u, val) in &c.pins {
        let (r, k, s) = uf.find(u);
        let z = conj_if(val / k, s);
        match pins[r] {
            None => pins[r] = Some(z),
            Some(z0) if (z0 - z).norm() > tol => return Err(Infeasible),
            _ => {}
        }
    }
    let mut kinds = Vec::new();
    let mut root_slot = vec![usize::MAX; c.nentries];
    let mut nparams = 0;
    let mut lines = Vec::new();
    for u in 0..c.nentries {
        let (r, _, _) = uf.find(u);
        if root_slot[r] != usize::MAX {
            continue;
        }
        let m = mag[r].unwrap_or(0.0);
        let st = uf.state[r];
        let kind = if let Some(z) = pins[r] {
            if (z.norm() - m).abs() > tol {
                return Err(Infeasible);
            }
            match st {
                RootState::Zero if z.norm() > tol => return Err(Infeasible),
                RootState::Line(d) if (z / d).im.abs() > tol => return Err(Infeasible),
                _ => {}
            }
            RootKind::Fixed(z)
        } else if m < 1e-9 {
            RootKind::Fixed(Complex64::new(0.0, 0.0))
        } else {
            match st {
                RootState::Zero => return Err(Infeasible),
                RootState::Free => {
                    nparams += 1;
                    RootKind::Free { m, param: nparams - 1 }
                }
                RootState::Line(d) => {
                    nparams += 1;
                    lines.push((nparams - 1, m));
                    RootKind::Line { dir: d / d.norm(), m, param: nparams - 1 }
                }
            }
        };
        root_slot[r] = kinds.len();
        kinds.push(kind);
    }
    let mut root = vec![0; c.nentries];
    let mut coef = vec![Complex64::new(1.0, 0.0); c.nentries];
    let mut conj = vec![false; c.nentries];
    for u in 0..c.nentries {
        let (r, k, s) = uf.find(u);
        root[u] = root_slot[r];
        coef[u] = k;
        conj[u] = s;
    }
    Ok(Param { root, coef, conj, kinds, nparams, lines })
}

impl Param {
    fn random_start(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut p = vec![0.0; self.nparams];
        for k in &self.kinds {
            match *k {
                RootKind::Free { param, .. } => p[param] = rng.gen_range(0.0..2.0 * PI),
                RootKind::Line { m, param, .. } => p[param] = if rng.gen::<bool>() { m } else { -m },
                RootKind::Fixed(_) => {}
            }
        }
        p
    }

    /// Entry values, derivatives and the parameter each depends on.
    fn entries(&self, p: &[f64]) -> (Vec<Complex64>, Vec<Complex64>, Vec<usize>) {
        let roots: Vec<(Complex64, Complex64, usize)> = self
            .kinds
            .iter()
            .map(|k| match *k {
                RootKind::Fixed(z) => (z, Complex64::new(0.0, 0.0), usize::MAX),
                RootKind::Free { m, param } => {
                    let z = Complex64::from_polar(m, p[param]);
                    (z, Complex64::i() * z, param)
                }
                RootKind::Line { dir, param, .. } => (dir * p[param], dir, param),
            })
            .collect();
        let n = self.root.len();
        let mut v = Vec::with_capacity(n);
        let mut dv = Vec::with_capacity(n);
        let mut pi = Vec::with_capacity(n);
        for u in 0..n {
            let (z, dz, par) = roots[self.root[u]];
            v.push(self.coef[u] * conj_if(z, self.conj[u]));
            dv.push(self.coef[u] * conj_if(dz, self.conj[u]));
            pi.push(par);
        }
        (v, dv, pi)
    }
}

fn eval_complex(
    prm: &Param,
    eqs: &[CEq],
    p: &[f64],
    r: &mut Vec<f64>,
    mut jac: Option<&mut DMatrix<f64>>,
) {
    let (v, dv, pi) = prm.entries(p);
    r.clear();
    let val = |f: Factor| conj_if(v[f.e as usize], f.conj);
    for (row, e) in eqs.iter().enumerate() {
        let mut acc = e.c0;
        for t in &e.terms {
            let k = t.len as usize;
            let fs = &t.f[..k];
            let vals: [Complex64; 3] = [
                val(fs[0]),
                if k > 1 { val(fs[1]) } else { Complex64::new(1.0, 0.0) },
                if k > 2 { val(fs[2]) } else { Complex64::new(1.0, 0.0) },
            ];
            acc += t.c * vals[0] * vals[1] * vals[2];
            if let Some(j) = jac.as_deref_mut() {
                for i in 0..k {
                    let par = pi[fs[i].e as usize];
                    if par == usize::MAX {
                        continue;
                    }
                    let mut others = t.c;
                    for (m, w) in vals.iter().enumerate().take(k) {
                        if m != i {
                            others *= w;
                        }
                    }
                    let dvi = conj_if(dv[fs[i].e as usize], fs[i].conj);
                    let contrib = others * dvi;
                    j[(2 * row, par)] += contrib.re;
                    j[(2 * row + 1, par)] += contrib.im;
                }
            }
        }
        r.push(acc.re);
        r.push(acc.im);
    }
    let base = 2 * eqs.len();
    for (i, &(par, m)) in prm.lines.iter().enumerate() {
        let t = p[par];
        r.push(t * t - m * m);
        if let Some(j) = jac.as_deref_mut() {
            j[(base + i, par)] += 2.0 * t;
        }
    }
}

// ---------------------------------------------------------------------------
// Equation builders

struct Ctx<'a> {
    g: &'a GroupSpec,
    n: usize,
    eps: &'a [i8],
    eta: &'a [u8],
    d: f64,
}

impl Ctx<'_> {
    fn e(&self, h: Elem, x: Elem) -> f64 {
        self.eps[h * self.n + x] as f64
    }
    fn et(&self, x: Elem) -> Complex64 {
        crate::solution::eta_value(self.eta[x])
    }
    fn idx(&self, x: Elem, h: Elem, k: Elem) -> usize {
        (x * self.n + h) * self.n + k
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.g.add(a, b)
    }
    fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.g.sub(a, b)
    }
    fn neg(&self, a: Elem) -> Elem {
        self.g.neg(a)
    }
}

fn general_constraints(c: &Ctx, x: &XTable) -> Result<Constraints, Infeasible> {
    let n = c.n;
    let one = Complex64::new(1.0, 0.0);
    let mut edges = Vec::new();
    for a in 0..n {
        for h in 0..n {
            for k in 0..n {
                let u = c.idx(a, h, k);
                edges.push((c.idx(a, k, h), u, one, true));
                let (ah, ak) = (c.add(a, h), c.add(a, k));
                let ahk = c.add(ah, k);
                let (mk, mh) = (c.neg(k), c.neg(h));
                let s1 = c.e(mk, ah) * c.e(mk, ak) * c.e(mk, ahk);
                edges.push((u, c.idx(a, mk, c.sub(h, k)), c.et(a) * s1, false));
                let s2 = c.e(mh, ah) * c.e(mh, ak) * c.e(mh, ahk);
                edges.push((u, c.idx(a, c.sub(k, h), mh), c.et(a).conj() * s2, false));
                let c1 = c.et(a) * c.et(ak) * (c.et(ah) * c.et(ahk)).conj() * c.e(h, a) * c.e(h, ak);
                edges.push((u, c.idx(ah, h, k), c1, false));
                let c2 = (c.et(a) * c.et(ah)).conj() * c.et(ak) * c.et(ahk) * c.e(k, a) * c.e(k, ah);
                edges.push((u, c.idx(ak, h, k), c2, false));
                for l in 0..n {
                    let t = c.add(a, c.g.double(l));
                    let sg = c.e(l, a) * c.e(l, ah) * c.e(l, ak) * c.e(l, ahk);
                    edges.push((c.idx(t, h, k), u, one * sg, false));
                }
            }
        }
    }
    let mut pins = Vec::new();
    let mut magnitudes = vec![0.0; n * n * n];
    for a in 0..n {
        for h in 0..n {
            let xv = Complex64::new(x.get(a, h), 0.0);
            pins.push((c.idx(a, h, 0), c.et(a).conj() * xv));
            pins.push((c.idx(a, 0, h), c.et(a) * xv));
            let mh = c.neg(h);
            pins.push((c.idx(a, mh, mh), xv * c.e(mh, a)));
            for k in 0..n {
                let m2 = magnitude_from_x(x, a, h, k);
                if m2 < -1e-8 {
                    return Err(Infeasible);
                }
                magnitudes[c.idx(a, h, k)] = m2.max(0.0).sqrt();
            }
        }
    }
    Ok(Constraints { nentries: n * n * n, edges, pins, magnitudes })
}

fn o2_eqs(c: &Ctx) -> Vec<CEq> {
    let n = c.n;
    let mut eqs = Vec::new();
    for a in 0..n {
        for b in a..n {
            for k in 0..n {
                let terms = (0..n)
                    .map(|h| {
                        cterm(Complex64::new(1.0, 0.0), &[fa(c.idx(a, c.sub(h, a), k)), fc(c.idx(b, c.sub(h, b), k))])
                    })
                    .collect();
                let mut rhs = -c.et(a).conj() * c.et(b) * if k == 0 { 1.0 / c.d } else { 0.0 };
                if a == b {
                    rhs += 1.0;
                }
                eqs.push(CEq { c0: -rhs, terms });
            }
        }
    }
    eqs
}

fn aaa_eq(c: &Ctx, x0: Elem, p: Elem, q: Elem, x: Elem, y: Elem) -> CEq {
    let n = c.n;
    let xy = c.add(x, y);
    let u = c.add(c.sub(x0, p), x);
    let w = c.add(c.sub(x0, q), xy);
    let mut terms: Vec<CTerm> = (0..n)
        .map(|l| {
            cterm(
                Complex64::new(1.0, 0.0),
                &[fa(c.idx(x0, xy, l)), fa(c.idx(u, c.neg(x), c.add(l, p))), fa(c.idx(w, c.neg(y), c.add(l, q)))],
            )
        })
        .collect();
    let etas = c.et(x0) * c.et(c.add(c.add(x0, q), x)) * c.et(c.add(c.add(x0, p), c.add(q, y)))
        * (c.et(c.add(x0, p)) * c.et(c.add(x0, xy)) * c.et(c.add(c.add(x0, q), xy))).conj();
    let signs = c.e(p, c.add(c.sub(x0, p), x))
        * c.e(c.add(p, x), c.add(c.sub(x0, p), c.add(q, y)))
        * c.e(q, c.add(c.sub(x0, q), xy))
        * c.e(c.add(q, y), c.add(c.sub(x0, q), x));
    terms.push(cterm(
        -etas * signs,
        &[fa(c.idx(x0, c.add(p, x), c.add(q, xy))), fa(c.idx(c.sub(x0, p), c.add(q, y), c.add(p, xy)))],
    ));
    let c0 = if x == 0 && y == 0 { c.et(x0) * c.et(c.add(x0, p)) * c.et(c.add(x0, q)) / c.d } else { Complex64::new(0.0, 0.0) };
    CEq { c0, terms }
}

fn aaa_eqs(c: &Ctx, full: bool) -> Vec<CEq> {
    let n = c.n;
    let mut eqs = Vec::new();
    for x0 in 0..n {
        for p in 0..n {
            for q in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        if full || p == 0 || (x == 0 && y == 0) {
                            eqs.push(aaa_eq(c, x0, p, q, x, y));
                        }
                    }
                }
            }
        }
    }
    eqs
}

fn aa_aa_eqs(c: &Ctx) -> Vec<CEq> {
    let n = c.n;
    let mut eqs = Vec::new();
    for x0 in 0..n {
        for p in 0..n {
            for q in 0..n {
                for x in 0..n {
                    let mx = c.neg(x);
                    let s1 = c.e(x, c.sub(x0, x)) * c.e(x, c.sub(c.add(x0, p), x));
                    let s2 = c.e(x, c.sub(c.add(x0, q), x)) * c.e(x, c.sub(c.add(c.add(x0, p), q), x));
                    let terms = vec![
                        cterm(Complex64::new(s1, 0.0), &[fa(c.idx(x0, mx, p)), fa(c.idx(x0, x, q))]),
                        cterm(
                            Complex64::new(-s2, 0.0),
                            &[fa(c.idx(x0, c.add(p, x), q)), fa(c.idx(x0, c.sub(q, x), p))],
                        ),
                    ];
                    let mut rhs = 0.0;
                    if c.add(c.sub(p, q), x) == 0 {
                        rhs += c.e(x, c.add(x0, p)) / (c.d - 1.0);
                    }
                    if x == 0 {
                        rhs -= 1.0 / (c.d - 1.0);
                    }
                    eqs.push(CEq { c0: Complex64::new(-rhs, 0.0), terms });
                }
            }
        }
    }
    eqs
}

// Reduced odd-group system in A(h,k) with ε ≡ 1 and constant η.

fn reduced_constraints(g: &GroupSpec, eta: Complex64, x: &XTable) -> Result<Constraints, Infeasible> {
    let n = g.order();
    let id = |h: Elem, k: Elem| h * n + k;
    let one = Complex64::new(1.0, 0.0);
    let mut edges = Vec::new();
    let mut magnitudes = vec![0.0; n * n];
    for h in 0..n {
        for k in 0..n {
            let u = id(h, k);
            edges.push((id(k, h), u, one, true));
            edges.push((u, id(g.neg(k), g.sub(h, k)), eta, false));
            edges.push((u, id(g.sub(k, h), g.neg(h)), eta.conj(), false));
            let m2 = magnitude_from_x(x, 0, h, k);
            if m2 < -1e-8 {
                return Err(Infeasible);
            }
            magnitudes[u] = m2.max(0.0).sqrt();
        }
    }
    let mut pins = Vec::new();
    for h in 0..n {
        let xv = Complex64::new(x.get(0, h), 0.0);
        pins.push((id(h, 0), eta.conj() * xv));
        pins.push((id(0, h), eta * xv));
        pins.push((id(g.neg(h), g.neg(h)), xv));
    }
    Ok(Constraints { nentries: n * n, edges, pins, magnitudes })
}

fn reduced_eqs(g: &GroupSpec) -> Vec<CEq> {
    let n = g.order();
    let d = g.dimension();
    let id = |h: Elem, k: Elem| h * n + k;
    let one = Complex64::new(1.0, 0.0);
    let mut eqs = Vec::new();
    for a in 0..n {
        for b in a..n {
            for k in 0..n {
                let terms =
                    (0..n).map(|h| cterm(one, &[fa(id(g.sub(h, a), k)), fc(id(g.sub(h, b), k))])).collect();
                let rhs = (a == b) as u8 as f64 - if k == 0 { 1.0 / d } else { 0.0 };
                eqs.push(CEq { c0: Complex64::new(-rhs, 0.0), terms });
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let xy = g.add(x, y);
                    let mut terms: Vec<CTerm> = (0..n)
                        .map(|l| {
                            cterm(one, &[fa(id(xy, l)), fa(id(g.neg(x), g.add(l, p))), fa(id(g.neg(y), g.add(l, q)))])
                        })
                        .collect();
                    terms.push(cterm(-one, &[fa(id(g.add(p, x), g.add(q, xy))), fa(id(g.add(q, y), g.add(p, xy)))]));
                    let c0 = if x == 0 && y == 0 { one / d } else { Complex64::new(0.0, 0.0) };
                    eqs.push(CEq { c0, terms });
                }
            }
        }
    }
    eqs
}

/// Lifts a reduced odd-group amplitude table to the full triple.
pub fn lift_reduced(g: &GroupSpec, eta: u8, a: &[Complex64]) -> SolutionTriple {
    let n = g.order();
    let mut full = Vec::with_capacity(n * n * n);
    for _ in 0..n {
        full.extend_from_slice(a);
    }
    SolutionTriple::new(g.clone(), vec![1; n * n], vec![eta; n], full).expect("well-shaped")
}

// ---------------------------------------------------------------------------

/// Whether the x-table is compatible with (Q1) at g=0 and (Q2) for every g.
fn x_qsystem_flags(x: &XTable, eta: &[u8]) -> (bool, bool) {
    let g = &x.group;
    let d = g.dimension();
    let ok = |a: Elem| {
        eta[a] == 0
            && g.elements().all(|h| {
                let t = if h == 0 { 1.0 } else { 0.0 } - 1.0 / (d - 1.0);
                (x.get(a, h) - t).abs() < 1e-8
            })
    };
    let q1 = ok(0);
    (q1, q1 && g.elements().all(ok))
}

/// Solutions with the given ε, η and x-table, deduplicated up to gauge.
pub fn solve_amplitudes(
    g: &GroupSpec,
    eps: &EpsilonClass,
    eta: &[u8],
    x: &XTable,
    opts: &SolveOptions,
) -> Result<Vec<SolutionTriple>, SolverError> {
    solve_amplitudes_tagged(g, eps, eta, x, opts, 0)
}

fn solve_amplitudes_tagged(
    g: &GroupSpec,
    eps: &EpsilonClass,
    eta: &[u8],
    x: &XTable,
    opts: &SolveOptions,
    branch: u64,
) -> Result<Vec<SolutionTriple>, SolverError> {
    opts.validate(g)?;
    let n = g.order();
    let (xq1, xq2) = x_qsystem_flags(x, eta);
    if opts.require_qsystem && !xq1 {
        return Ok(Vec::new());
    }
    let trivial_eps = eps.epsilon.iter().all(|&e| e == 1);
    let reduced = opts.odd_fast_path && g.is_odd() && trivial_eps && eta.iter().all(|&e| e == eta[0]);
    let c = Ctx { g, n, eps: &eps.epsilon, eta, d: g.dimension() };
    let (cons, stage1, full_eqs) = if reduced {
        let Ok(cons) = reduced_constraints(g, crate::solution::eta_value(eta[0]), x) else {
            return Ok(Vec::new());
        };
        let eqs = reduced_eqs(g);
        (cons, eqs, None)
    } else {
        let Ok(cons) = general_constraints(&c, x) else {
            return Ok(Vec::new());
        };
        let full = n.pow(5) <= 4096;
        let mut eqs = o2_eqs(&c);
        eqs.extend(aaa_eqs(&c, full));
        let mut full_eqs = None;
        if !full {
            let mut f = o2_eqs(&c);
            f.extend(aaa_eqs(&c, true));
            full_eqs = Some(f);
        }
        if opts.require_qsystem && xq2 {
            eqs.extend(aa_aa_eqs(&c));
        }
        (cons, eqs, full_eqs)
    };
    let Ok(prm) = build_param(&cons) else {
        return Ok(Vec::new());
    };
    let build = |p: &[f64]| -> SolutionTriple {
        let (v, _, _) = prm.entries(p);
        if reduced {
            lift_reduced(g, eta[0], &v)
        } else {
            SolutionTriple::new(g.clone(), eps.epsilon.clone(), eta.to_vec(), v).expect("well-shaped")
        }
    };
    let lm = LmOptions::default();
    let attempt = |rng: &mut ChaCha8Rng| -> Option<SolutionTriple> {
        let p0 = prm.random_start(rng);
        let mut out = minimize(|p, r, j| eval_complex(&prm, &stage1, p, r, j), p0, &lm);
        if out.max_residual > 1e-6 {
            return None;
        }
        let mut s = build(&out.params);
        if !evaluate_residuals(&s, opts.tol_polish).passes() {
            let eqs = full_eqs.as_ref()?;
            out = minimize(|p, r, j| eval_complex(&prm, eqs, p, r, j), out.params, &lm);
            s = build(&out.params);
            if !evaluate_residuals(&s, opts.tol_polish).passes() {
                return None;
            }
        }
        if opts.require_qsystem && !check_qsystem(&s, opts.tol_accept).q1 {
            return None;
        }
        Some(s)
    };
    let found = run_batches(opts, branch, attempt, |s, found| {
        !found.iter().any(|f| gauge_distance(f, s) < DEDUPE_TOL)
    });
    Ok(found)
}

/// One Γ-orbit of solutions.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub representative: SolutionTriple,
    pub q1: bool,
    pub q2: bool,
    pub stabilizer_order: usize,
    pub stabilizer_name: String,
    /// Number of gauge classes in the Γ-orbit.
    pub orbit_size: usize,
    pub amplitudes_nonzero: bool,
    pub epsilon_chi: Vec<Vec<i8>>,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub group: GroupSpec,
    pub classes: Vec<ClassRecord>,
    pub degenerate_solutions: usize,
    pub epsilon_classes: usize,
    pub epsilon_orbits: usize,
    pub branches: usize,
    pub gauge_classes_found: usize,
    pub seed: u64,
}

/// Degenerate solutions × ε classes × η assignments → amplitudes → Γ-orbits.
pub fn classify(g: &GroupSpec, opts: &SolveOptions) -> Result<ClassifyReport, SolverError> {
    opts.validate(g)?;
    let ctx = GammaContext::with_aut_bound(g, usize::MAX)?;
    let xs = solve_degenerate(g, opts)?;
    let all_eps = enumerate_epsilon(g)?;
    let eps_reps = epsilon_gamma_representatives(&ctx, &all_eps)?;
    let mut xs_all: Vec<XTable> = Vec::new();
    for x in &xs {
        for y in x_images(x) {
            if !xs_all.iter().any(|o| o.max_distance(&y) < DEDUPE_TOL) {
                xs_all.push(y);
            }
        }
    }
    let mut branches = Vec::new();
    for e in &eps_reps {
        for x in &xs_all {
            for eta in eta_assignments(x) {
                branches.push((e, x, eta));
            }
        }
    }
    let mut solutions: Vec<SolutionTriple> = Vec::new();
    for (i, (e, x, eta)) in branches.iter().enumerate() {
        for s in solve_amplitudes_tagged(g, e, eta, x, opts, i as u64)? {
            if !solutions.iter().any(|f| gauge_distance(f, &s) < DEDUPE_TOL) {
                solutions.push(s);
            }
        }
    }
    let mut classes: Vec<(ClassRecord, Vec<SolutionTriple>)> = Vec::new();
    for s in &solutions {
        let known = classes.iter().any(|(_, orbit)| orbit.iter().any(|o| gauge_distance(o, s) < DEDUPE_TOL));
        if known {
            continue;
        }
        let orbit = gamma_orbit_with(&ctx, s, opts.tol_accept)?;
        let flags = check_qsystem(s, 1e-8);
        let rec = ClassRecord {
            representative: s.clone(),
            q1: flags.q1,
            q2: flags.q2,
            stabilizer_order: orbit.stabilizer_order,
            stabilizer_name: orbit.stabilizer_name.clone(),
            orbit_size: orbit.orbit.len(),
            amplitudes_nonzero: orbit.amplitudes_nonzero,
            epsilon_chi: epsilon_class(g, s.epsilon.clone()).chi,
        };
        classes.push((rec, orbit.orbit));
    }
    // Q-system classes first, then by |A_0(0,0)| descending, for stable output.
    classes.sort_by(|a, b| {
        b.0.q1.cmp(&a.0.q1).then(
            b.0.representative.amp(0, 0, 0).re.partial_cmp(&a.0.representative.amp(0, 0, 0).re).unwrap(),
        )
    });
    Ok(ClassifyReport {
        group: g.clone(),
        classes: classes.into_iter().map(|(r, _)| r).collect(),
        degenerate_solutions: xs.len(),
        epsilon_classes: all_eps.len(),
        epsilon_orbits: eps_reps.len(),
        branches: branches.len(),
        gauge_classes_found: solutions.len(),
        seed: opts.seed,
    })
}

/// All gauge classes of solutions found (no Γ reduction), over every ε class.
pub fn solve(g: &GroupSpec, opts: &SolveOptions) -> Result<Vec<SolutionTriple>, SolverError> {
    opts.validate(g)?;
    let xs = solve_degenerate(g, opts)?;
    let eps = enumerate_epsilon(g)?;
    let mut out: Vec<SolutionTriple> = Vec::new();
    let mut branch = 0u64;
    for e in &eps {
        for x0 in &xs {
            for x in x_images(x0) {
                for eta in eta_assignments(&x) {
                    for s in solve_amplitudes_tagged(g, e, &eta, &x, opts, branch)? {
                        if !out.iter().any(|f| gauge_distance(f, &s) < DEDUPE_TOL) {
                            out.push(s);
                        }
                    }
                    branch += 1;
                }
            }
        }
    }
    Ok(out)
}

/// The x-table of a verified solution, for use as a solver branch.
pub fn x_of(s: &SolutionTriple) -> Option<XTable> {
    x_table_with_tol(s, 1e-8).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_solution, z4_epsilon};

    fn grp(f: &[usize]) -> GroupSpec {
        GroupSpec::new(f).unwrap()
    }

    #[test]
    fn epsilon_counts() {
        assert_eq!(enumerate_epsilon(&grp(&[3])).unwrap().len(), 1);
        let z2 = enumerate_epsilon(&grp(&[2])).unwrap();
        assert_eq!(z2.len(), 2);
        assert!(z2[0].epsilon.iter().all(|&e| e == 1));
        assert_eq!(z2[1].epsilon, vec![1, 1, 1, -1]);
        let z4 = enumerate_epsilon(&grp(&[4])).unwrap();
        assert_eq!(z4.len(), 2);
        let sp = epsilon_space(&grp(&[4]));
        assert_eq!(sp.key(&z4_epsilon(1)), sp.key(&z4[0].epsilon));
        assert_eq!(sp.key(&z4_epsilon(-1)), sp.key(&z4[1].epsilon));
        assert_eq!(z4[1].ansatz_sign, Some(-1));
    }

    #[test]
    fn every_enumerated_epsilon_is_a_cocycle() {
        for f in [&[2usize][..], &[4], &[2, 2], &[6], &[2, 4]] {
            let g = grp(f);
            let n = g.order();
            for c in enumerate_epsilon(&g).unwrap() {
                for h in 0..n {
                    assert_eq!(c.epsilon[h * n], 1);
                    for k in 0..n {
                        for x in 0..n {
                            let lhs = c.epsilon[g.add(h, k) * n + x];
                            let rhs = c.epsilon[h * n + x] * c.epsilon[k * n + g.add(x, g.double(h))];
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn catalog_x_tables_solve_the_degenerate_system() {
        for name in crate::catalog::catalog_list() {
            let s = catalog_solution(name).unwrap();
            let x = x_of(&s).unwrap();
            assert!(check_degenerate(&x, 1e-10).passes(), "{name}");
            let sys = DegSystem::new(&s.group);
            let p: Vec<f64> = (0..sys.nvars)
                .map(|v| {
                    let i = sys.var.iter().position(|&w| w as usize == v).unwrap();
                    x.values[i]
                })
                .collect();
            let mut r = Vec::new();
            eval_real(&sys.eqs, &p, &mut r, None);
            assert!(r.iter().all(|v| v.abs() < 1e-10), "{name}");
        }
    }

    #[test]
    fn catalog_triples_fit_the_parameterization() {
        for name in ["Z2-a7", "Z3-haagerup", "Z4-qsystem", "Z4-accompanying", "Z2x2"] {
            let s = catalog_solution(name).unwrap();
            let g = s.group.clone();
            let x = x_of(&s).unwrap();
            let c = Ctx { g: &g, n: g.order(), eps: &s.epsilon, eta: &s.eta, d: g.dimension() };
            let cons = general_constraints(&c, &x).ok().unwrap();
            for &(u, v, k, e) in &cons.edges {
                assert!((s.a[u] - k * conj_if(s.a[v], e)).norm() < 1e-10, "{name}");
            }
            assert!(build_param(&cons).is_ok(), "{name}");
        }
    }
}
