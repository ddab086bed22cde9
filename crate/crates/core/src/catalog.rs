//! Explicit solutions for Z2, Z3, Z4 and Z2×Z2 as constructible data.
//!
//! Constants are evaluated in double precision from their closed forms; the
//! closed forms are kept as documentation strings on each entry.

use crate::group::GroupSpec;
use crate::solution::SolutionTriple;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {name:?}; known entries: {known}")]
    Unknown { name: String, known: String },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// Expected structural flags of an entry.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedFlags {
    pub q1: bool,
    pub q2: bool,
    pub class_note: &'static str,
    pub locus: &'static str,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub group: GroupSpec,
    /// (parameter, closed form) pairs.
    pub closed_forms: Vec<(&'static str, &'static str)>,
    pub expected: ExpectedFlags,
    pub notes: &'static str,
    build: fn() -> SolutionTriple,
}

impl CatalogEntry {
    pub fn construct(&self) -> SolutionTriple {
        (self.build)()
    }
}

const NAMES: [&str; 7] = [
    "Z2-a7",
    "Z3-haagerup",
    "Z3-haagerup-conj",
    "Z3-accompanying",
    "Z4-qsystem",
    "Z4-accompanying",
    "Z2x2",
];

pub fn catalog_list() -> Vec<&'static str> {
    NAMES.to_vec()
}

pub fn catalog_get(name: &str) -> Result<CatalogEntry, CatalogError> {
    let flags = |q1, q2, class_note, locus| ExpectedFlags { q1, q2, class_note, locus };
    let e = match name {
        "Z2-a7" => CatalogEntry {
            name: "Z2-a7",
            group: cyclic(2),
            closed_forms: vec![
                ("d", "1+sqrt(2)"),
                ("epsilon_h(g)", "(-1)^(gh)"),
                ("eta", "1"),
                ("A_0", "[[d-2,-1],[-1,-1]]/(d-1)"),
                ("A_1", "[[d-2,-1],[-1,1]]/(d-1)"),
            ],
            expected: flags(true, true, "unique class", "Z2 classification, even part of A7"),
            notes: "",
            build: z2_a7,
        },
        "Z3-haagerup" | "Z3-haagerup-conj" => CatalogEntry {
            name: if name == "Z3-haagerup" { "Z3-haagerup" } else { "Z3-haagerup-conj" },
            group: cyclic(3),
            closed_forms: vec![
                ("d", "(3+sqrt(13))/2"),
                ("x0", "(d-2)/(d-1)"),
                ("x1 = x2", "-1/(d-1)"),
                ("y", "(1 ± i sqrt(4d-1))/(2(d-1))"),
                ("A", "[[x0,x1,x2],[x1,x2,y],[x2,conj y,x1]] for every g"),
            ],
            expected: flags(true, true, "the Q-system class; both signs of y are Aut-related", "Z3 classification"),
            notes: if name == "Z3-haagerup" { "y with + sign" } else { "y with - sign" },
            build: if name == "Z3-haagerup" { z3_haagerup } else { z3_haagerup_conj },
        },
        "Z3-accompanying" => CatalogEntry {
            name: "Z3-accompanying",
            group: cyclic(3),
            closed_forms: vec![
                ("x0", "(2-sqrt(13))/3"),
                ("x1", "(5-sqrt(13)+sqrt(6(1+sqrt(13))))/12"),
                ("x2", "(5-sqrt(13)-sqrt(6(1+sqrt(13))))/12"),
                ("y", "-x1 x2/(x1+x2) = (1+sqrt(13))/6"),
            ],
            expected: flags(false, false, "the class without a Q-system", "Z3 classification"),
            notes: "y is derived from y^2 = 1-x1^2-x2^2 and y = -x1x2/(x1+x2); the commonly quoted value \
                    (1+sqrt(13))/2 fails both relations",
            build: z3_accompanying,
        },
        "Z4-qsystem" => CatalogEntry {
            name: "Z4-qsystem",
            group: cyclic(4),
            closed_forms: vec![
                ("d", "2+sqrt(5)"),
                ("epsilon", "epsilon_1(3)=epsilon_3(1)=-1, epsilon_2(g)=(-1)^g, else 1"),
                ("eta", "1"),
                ("z", "-(1+sqrt(5))/2 + i sqrt((1+sqrt(5))/2)"),
                ("y = A_0(1,2)", "z/(d-1)"),
            ],
            expected: flags(true, true, "the Q-system class, index 3+sqrt(5)", "Z4 classification"),
            notes: "",
            build: z4_qsystem,
        },
        "Z4-accompanying" => CatalogEntry {
            name: "Z4-accompanying",
            group: cyclic(4),
            closed_forms: vec![
                ("x0", "(2-sqrt(5))/2"),
                ("x1", "(1-sqrt(5)+sqrt(2(-1+sqrt(5))))/4"),
                ("x2", "1/2"),
                ("x3", "(1-sqrt(5)-sqrt(2(-1+sqrt(5))))/4"),
                ("y", "-1/2"),
                ("epsilon", "-1 in the Z4 ansatz"),
            ],
            expected: flags(false, false, "the class without a Q-system", "Z4 classification"),
            notes: "",
            build: z4_accompanying,
        },
        "Z2x2" => CatalogEntry {
            name: "Z2x2",
            group: GroupSpec::new(&[2, 2]).expect("valid group"),
            closed_forms: vec![
                ("d", "2+sqrt(5)"),
                ("x_{g,0}", "(d-2)/(d-1) = (5-sqrt(5))/4"),
                ("x_{g,h}, h != 0", "-1/(d-1) = (1-sqrt(5))/4"),
                ("chi(h,g) = epsilon_h(g)", "[[1,1,1,1],[1,-1,s,-s],[1,-s,-1,s],[1,s,-s,-1]]"),
                ("s", "±1 (default +1)"),
                ("z", "one of sqrt(d), -sqrt(d), i sqrt(d), -i sqrt(d) (default sqrt(d))"),
            ],
            expected: flags(true, true, "one class; Out is A4", "Z2xZ2 classification"),
            notes: "element order 0,a,b,c with a=(1,0), b=(0,1), c=(1,1)",
            build: || z2x2(1, 0).expect("default parameters"),
        },
        _ => {
            return Err(CatalogError::Unknown { name: name.into(), known: NAMES.join(", ") })
        }
    };
    Ok(e)
}

/// Shortcut: construct a catalog triple by name.
pub fn catalog_solution(name: &str) -> Result<SolutionTriple, CatalogError> {
    Ok(catalog_get(name)?.construct())
}

fn cyclic(n: usize) -> GroupSpec {
    GroupSpec::new(&[n]).expect("valid group")
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn from_rows(group: GroupSpec, epsilon: Vec<i8>, rows: Vec<Vec<Vec<Complex64>>>, name: &str) -> SolutionTriple {
    let n = group.order();
    let a: Vec<Complex64> = rows.into_iter().flatten().flatten().collect();
    SolutionTriple::new(group, epsilon, vec![0; n], a)
        .expect("catalog data is well-shaped")
        .with_meta(name, "catalog")
}

fn z2_a7() -> SolutionTriple {
    let g = cyclic(2);
    let d = g.dimension();
    let s = 1.0 / (d - 1.0);
    let eps = vec![1, 1, 1, -1];
    let a0 = vec![vec![c((d - 2.0) * s), c(-s)], vec![c(-s), c(-s)]];
    let a1 = vec![vec![c((d - 2.0) * s), c(-s)], vec![c(-s), c(s)]];
    from_rows(g, eps, vec![a0, a1], "Z2-a7")
}

fn z3_from(x: [f64; 3], y: Complex64, name: &str) -> SolutionTriple {
    let g = cyclic(3);
    let m = vec![
        vec![c(x[0]), c(x[1]), c(x[2])],
        vec![c(x[1]), c(x[2]), y],
        vec![c(x[2]), y.conj(), c(x[1])],
    ];
    from_rows(g, vec![1; 9], vec![m.clone(), m.clone(), m], name)
}

fn z3_haagerup_with(sign: f64, name: &str) -> SolutionTriple {
    let d = cyclic(3).dimension();
    let y = Complex64::new(1.0, sign * (4.0 * d - 1.0).sqrt()) / (2.0 * (d - 1.0));
    z3_from([(d - 2.0) / (d - 1.0), -1.0 / (d - 1.0), -1.0 / (d - 1.0)], y, name)
}

fn z3_haagerup() -> SolutionTriple {
    z3_haagerup_with(1.0, "Z3-haagerup")
}

fn z3_haagerup_conj() -> SolutionTriple {
    z3_haagerup_with(-1.0, "Z3-haagerup-conj")
}

fn z3_accompanying() -> SolutionTriple {
    let r13 = 13f64.sqrt();
    let root = (6.0 * (1.0 + r13)).sqrt();
    let x1 = (5.0 - r13 + root) / 12.0;
    let x2 = (5.0 - r13 - root) / 12.0;
    let y = -x1 * x2 / (x1 + x2);
    z3_from([(2.0 - r13) / 3.0, x1, x2], c(y), "Z3-accompanying")
}

/// ε for Z4 in the ansatz ε_1(3)=ε_3(1)=e, ε_2(g)=e^g, 1 otherwise.
pub fn z4_epsilon(e: i8) -> Vec<i8> {
    let mut eps = vec![1i8; 16];
    eps[4 + 3] = e;
    eps[3 * 4 + 1] = e;
    eps[2 * 4 + 1] = e;
    eps[2 * 4 + 3] = e;
    eps
}

/// The generic Z4 shape with `x = (x0..x3)`, `y = A_0(1,2)` and ansatz sign `e`.
fn z4_from(x: [f64; 4], y: Complex64, e: i8, name: &str) -> SolutionTriple {
    let ef = e as f64;
    let yb = y.conj();
    let col0 = || vec![c(x[0]), c(x[1]), c(x[2]), c(x[3])];
    let a0 = vec![
        col0(),
        vec![c(x[1]), c(x[3]), y, y * ef],
        vec![c(x[2]), yb, c(x[2]), y],
        vec![c(x[3]), yb * ef, yb, c(x[1])],
    ];
    let a1 = vec![
        col0(),
        vec![c(x[1]), c(x[3]), y, y],
        vec![c(x[2]), yb, c(ef * x[2]), y * ef],
        vec![c(x[3]), yb, yb * ef, c(ef * x[1])],
    ];
    let a2 = vec![
        col0(),
        vec![c(x[1]), c(x[3]), y * ef, y],
        vec![c(x[2]), yb * ef, c(x[2]), y * ef],
        vec![c(x[3]), yb, yb * ef, c(x[1])],
    ];
    let a3 = vec![
        col0(),
        vec![c(x[1]), c(ef * x[3]), y * ef, y],
        vec![c(x[2]), yb * ef, c(ef * x[2]), y],
        vec![c(x[3]), yb, yb, c(x[1])],
    ];
    // row 0 of each A_g is (x0, x1, x2, x3) by Hermitian symmetry
    from_rows(cyclic(4), z4_epsilon(e), vec![a0, a1, a2, a3], name)
}

fn z4_qsystem() -> SolutionTriple {
    let d = cyclic(4).dimension();
    let z = Complex64::new(-(d - 1.0) / 2.0, ((d - 1.0) / 2.0).sqrt());
    let x = [(d - 2.0) / (d - 1.0), -1.0 / (d - 1.0), -1.0 / (d - 1.0), -1.0 / (d - 1.0)];
    z4_from(x, z / (d - 1.0), -1, "Z4-qsystem")
}

fn z4_accompanying() -> SolutionTriple {
    let r5 = 5f64.sqrt();
    let root = (2.0 * (r5 - 1.0)).sqrt();
    let x = [(2.0 - r5) / 2.0, (1.0 - r5 + root) / 4.0, 0.5, (1.0 - r5 - root) / 4.0];
    z4_from(x, c(-0.5), -1, "Z4-accompanying")
}

/// The Z2×Z2 family with `s ∈ {±1}` and `z = i^z_index · √d`.
pub fn z2x2(s: i8, z_index: usize) -> Result<SolutionTriple, CatalogError> {
    if s != 1 && s != -1 {
        return Err(CatalogError::Parameter(format!("s must be ±1, got {s}")));
    }
    if z_index > 3 {
        return Err(CatalogError::Parameter(format!("z index must be 0..4, got {z_index}")));
    }
    let g = GroupSpec::new(&[2, 2]).expect("valid group");
    let d = g.dimension();
    let sf = s as f64;
    let chi: [[f64; 4]; 4] = [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, -1.0, sf, -sf],
        [1.0, -sf, -1.0, sf],
        [1.0, sf, -sf, -1.0],
    ];
    let rot = [c(1.0), Complex64::i(), c(-1.0), -Complex64::i()][z_index];
    let z = rot * d.sqrt();
    let zb = z.conj();
    let (a, b, cc) = (1, 2, 3);
    let k = |v: f64| c(v);
    let head = || vec![k(d - 2.0), k(-1.0), k(-1.0), k(-1.0)];
    let m0 = vec![
        head(),
        vec![k(-1.0), k(-1.0), z, zb],
        vec![k(-1.0), zb, k(-1.0), z],
        vec![k(-1.0), z, zb, k(-1.0)],
    ];
    let ma = vec![
        head(),
        vec![k(-1.0), k(1.0), z * chi[a][b], zb * chi[a][cc]],
        vec![k(-1.0), zb * chi[a][b], k(-chi[b][a]), -z],
        vec![k(-1.0), z * chi[a][cc], -zb, k(-chi[cc][a])],
    ];
    let mb = vec![
        head(),
        vec![k(-1.0), k(-chi[a][b]), z * chi[b][a], -zb],
        vec![k(-1.0), zb * chi[b][a], k(1.0), z * chi[b][cc]],
        vec![k(-1.0), -z, zb * chi[b][cc], k(-chi[cc][b])],
    ];
    let mc = vec![
        head(),
        vec![k(-1.0), k(-chi[a][cc]), -z, zb * chi[cc][a]],
        vec![k(-1.0), -zb, k(-chi[b][cc]), z * chi[cc][b]],
        vec![k(-1.0), z * chi[cc][a], zb * chi[cc][b], k(1.0)],
    ];
    let scale = 1.0 / (d - 1.0);
    let rows: Vec<Vec<Vec<Complex64>>> = [m0, ma, mb, mc]
        .into_iter()
        .map(|m| m.into_iter().map(|r| r.into_iter().map(|v| v * scale).collect()).collect())
        .collect();
    let mut eps = vec![1i8; 16];
    for h in 0..4 {
        for gg in 0..4 {
            eps[h * 4 + gg] = chi[h][gg] as i8;
        }
    }
    let name = format!("Z2x2(s={s},z={})", ["sqrt(d)", "i sqrt(d)", "-sqrt(d)", "-i sqrt(d)"][z_index]);
    Ok(from_rows(g, eps, rows, &name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{check_qsystem, evaluate_residuals, x_table};

    #[test]
    fn every_entry_is_a_solution() {
        for name in catalog_list() {
            let s = catalog_solution(name).unwrap();
            let r = evaluate_residuals(&s, 1e-10);
            assert!(r.passes(), "{name}: {:?}", r.failing());
        }
        for s in [1, -1] {
            for zi in 0..4 {
                let t = z2x2(s, zi).unwrap();
                assert!(evaluate_residuals(&t, 1e-10).passes(), "s={s} z={zi}");
            }
        }
    }

    #[test]
    fn flags_match_expectations() {
        for name in catalog_list() {
            let e = catalog_get(name).unwrap();
            let f = check_qsystem(&e.construct(), 1e-9);
            assert_eq!(f.q1, e.expected.q1, "{name}");
            assert_eq!(f.q2, e.expected.q2, "{name}");
        }
    }

    #[test]
    fn z2_a7_matrix() {
        let s = catalog_solution("Z2-a7").unwrap();
        let d = 1.0 + 2f64.sqrt();
        assert!((s.amp(0, 0, 0).re - (d - 2.0) / (d - 1.0)).abs() < 1e-15);
        assert!((s.amp(0, 1, 1).re + 1.0 / (d - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn z4_qsystem_a3_sign() {
        let s = catalog_solution("Z4-qsystem").unwrap();
        let d = 2.0 + 5f64.sqrt();
        assert!((s.amp(3, 1, 1) - c(1.0 / (d - 1.0))).norm() < 1e-14);
    }

    #[test]
    fn z3_accompanying_y() {
        let s = catalog_solution("Z3-accompanying").unwrap();
        let y = s.amp(0, 1, 2).re;
        assert!((y - (1.0 + 13f64.sqrt()) / 6.0).abs() < 1e-12);
        assert!((y - (1.0 + 13f64.sqrt()) / 2.0).abs() > 1.0);
    }

    #[test]
    fn z2x2_x_values() {
        let s = catalog_solution("Z2x2").unwrap();
        let x = x_table(&s).unwrap();
        let r5 = 5f64.sqrt();
        for g in 0..4 {
            // equals 1 - 1/(d-1); the decimal form (√5−1)/2 sometimes quoted for it is off
            assert!((x.get(g, 0) - (5.0 - r5) / 4.0).abs() < 1e-12);
            for h in 1..4 {
                assert!((x.get(g, h) - (1.0 - r5) / 4.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unknown_name_lists_entries() {
        let err = catalog_get("Z5").unwrap_err().to_string();
        assert!(err.contains("Z3-haagerup"));
    }
}
