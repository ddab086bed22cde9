//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use ghcat_core::constructions::{
    accompany_even, accompany_odd, deequivariantize, dual_graph_data, equivalent_up_to_aut, equivariantize,
    FusionSummary,
};
use ghcat_core::cuntz_formal::{verify_intertwiners, verify_qsystem_isometry};
use ghcat_core::solution::{abs_a_qsystem_residual, check_amplitude_magnitudes, Family};
use ghcat_core::solver::{classify, solve_degenerate, x_images, ClassifyReport, SolveOptions};
use ghcat_core::symmetry::{act_automorphism, act_h2, act_translation, gamma_orbit, gauge_apply, GaugeVector};
use ghcat_core::{
    catalog_get, catalog_list, catalog_solution, check_qsystem, evaluate_residuals, GroupMap, GroupSpec,
    SolutionTriple, XTable,
};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn group(f: &[usize]) -> GroupSpec {
    GroupSpec::new(f).unwrap()
}

fn sol(name: &str) -> SolutionTriple {
    catalog_solution(name).unwrap()
}

fn max_residual(s: &SolutionTriple) -> f64 {
    evaluate_residuals(s, 1e-10).residuals.values().cloned().fold(0.0, f64::max)
}

fn c1_catalog() -> Outcome {
    let t = Instant::now();
    for name in catalog_list() {
        let e = catalog_get(name).map_err(|e| e.to_string())?;
        let s = e.construct();
        let r = max_residual(&s);
        ensure(r < 1e-10, format!("{name}: residual {r:e}"))?;
        let q = check_qsystem(&s, 1e-8);
        ensure(q.q1 == e.expected.q1 && q.q2 == e.expected.q2, format!("{name}: flags {q:?}"))?;
    }
    for (name, q1) in [("Z3-haagerup", true), ("Z3-accompanying", false), ("Z4-qsystem", true)] {
        ensure(check_qsystem(&sol(name), 1e-8).q1 == q1, format!("{name}: q1 != {q1}"))?;
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(1), format!("took {el:?}"))?;
    Ok(format!("{} entries, {el:.2?}", catalog_list().len()))
}

fn timed_classify(f: &[usize], seed: u64) -> Result<(ClassifyReport, Duration), String> {
    let t = Instant::now();
    let r = classify(&group(f), &SolveOptions { seed, ..SolveOptions::default() }).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    ensure(el < Duration::from_secs(300), format!("{f:?} took {el:?}"))?;
    Ok((r, el))
}

fn c2_classify() -> Outcome {
    let mut notes = Vec::new();
    for seed in [0u64, 1, 2] {
        let (z3, t3) = timed_classify(&[3], seed)?;
        ensure(z3.classes.len() == 2, format!("Z3 seed {seed}: {} classes", z3.classes.len()))?;
        ensure(
            z3.classes.iter().map(|c| c.q1).collect::<Vec<_>>() == vec![true, false],
            "Z3: expected one Q-system class and one non-Q-system class",
        )?;

        let (z4, t4) = timed_classify(&[4], seed)?;
        ensure(z4.classes.len() == 2, format!("Z4 seed {seed}: {} classes", z4.classes.len()))?;
        for c in &z4.classes {
            let s = &c.representative;
            ensure(s.eta.iter().all(|&e| e == 0), "Z4: η is not identically 1")?;
            ensure(s.eps(2, 1) == -1, "Z4: ε_2(1) != −1")?;
        }

        let (z2, t2) = timed_classify(&[2], seed)?;
        ensure(z2.classes.len() == 1, format!("Z2 seed {seed}: {} classes", z2.classes.len()))?;

        let (k4, tk) = timed_classify(&[2, 2], seed)?;
        ensure(k4.classes.len() == 1, format!("Z2xZ2 seed {seed}: {} orbits", k4.classes.len()))?;
        ensure(k4.classes[0].orbit_size == 4, format!("Z2xZ2: orbit of {} gauge classes", k4.classes[0].orbit_size))?;
        notes.push(format!("seed {seed}: Z3 {t3:.1?} Z4 {t4:.1?} Z2 {t2:.1?} Z2xZ2 {tk:.1?}"));
    }
    Ok(notes.join("; "))
}

fn constant_rows(g: &GroupSpec, row: &[f64]) -> XTable {
    let n = g.order();
    XTable { group: g.clone(), values: (0..n * n).map(|i| row[i % n]).collect() }
}

fn c3_degenerate() -> Outcome {
    let s5 = 5f64.sqrt();
    let s13 = 13f64.sqrt();
    let cases: Vec<(Vec<usize>, Vec<Vec<f64>>)> = vec![
        (
            vec![3],
            vec![
                vec![(7.0 - s13) / 6.0, (1.0 - s13) / 6.0, (1.0 - s13) / 6.0],
                vec![
                    (2.0 - s13) / 3.0,
                    (5.0 - s13 + (6.0 * (1.0 + s13)).sqrt()) / 12.0,
                    (5.0 - s13 - (6.0 * (1.0 + s13)).sqrt()) / 12.0,
                ],
                vec![0.0, (3.0 - s13 + (2.0 * (s13 - 1.0)).sqrt()) / 4.0, (3.0 - s13 - (2.0 * (s13 - 1.0)).sqrt()) / 4.0],
            ],
        ),
        (
            vec![4],
            vec![
                vec![(5.0 - s5) / 4.0, (1.0 - s5) / 4.0, (1.0 - s5) / 4.0, (1.0 - s5) / 4.0],
                vec![(2.0 - s5) / 2.0, (1.0 - s5 + (2.0 * (s5 - 1.0)).sqrt()) / 4.0, 0.5, (1.0 - s5 - (2.0 * (s5 - 1.0)).sqrt()) / 4.0],
            ],
        ),
        (vec![2, 2], vec![vec![(5.0 - s5) / 4.0, (1.0 - s5) / 4.0, (1.0 - s5) / 4.0, (1.0 - s5) / 4.0]]),
    ];
    let mut counts = Vec::new();
    for (f, rows) in cases {
        let g = group(&f);
        let found = solve_degenerate(&g, &SolveOptions::default()).map_err(|e| e.to_string())?;
        ensure(found.len() == rows.len(), format!("{}: {} solutions", g.name(), found.len()))?;
        for row in &rows {
            let want = constant_rows(&g, row);
            ensure(
                found.iter().any(|x| x_images(x).iter().any(|y| y.max_distance(&want) < 1e-8)),
                format!("{}: no solution matches {row:?}", g.name()),
            )?;
        }
        counts.push(format!("{} → {}", g.name(), found.len()));
    }
    Ok(counts.join(", "))
}

fn c4_out_group() -> Outcome {
    let o = gamma_orbit(&sol("Z2x2")).map_err(|e| e.to_string())?;
    ensure(o.stabilizer_order == 12, format!("stabilizer order {}", o.stabilizer_order))?;
    ensure(o.stabilizer_name == "A4", format!("stabilizer {}", o.stabilizer_name))?;
    Ok(format!("|Γ| = {}, stabilizer {} of order 12", o.gamma_order, o.stabilizer_name))
}

fn c5_accompany() -> Outcome {
    let h = sol("Z3-haagerup");
    let acc = accompany_odd(&h).map_err(|e| e.to_string())?;
    ensure(max_residual(&acc) < 1e-8, "accompanying Z3 solution fails the equations")?;
    ensure(equivalent_up_to_aut(&acc, &sol("Z3-accompanying"), 1e-8).unwrap(), "Z3: image is not the accompanying class")?;
    let back = accompany_odd(&acc).map_err(|e| e.to_string())?;
    ensure(equivalent_up_to_aut(&back, &h, 1e-8).unwrap(), "Z3: not an involution")?;

    let q = sol("Z4-qsystem");
    let a = sol("Z4-accompanying");
    let qa = accompany_even(&q).map_err(|e| e.to_string())?;
    ensure(equivalent_up_to_aut(&qa, &a, 1e-8).unwrap(), "Z4: Q-system class not sent to the other class")?;
    let aq = accompany_even(&a).map_err(|e| e.to_string())?;
    ensure(equivalent_up_to_aut(&aq, &q, 1e-8).unwrap(), "Z4: other class not sent back")?;
    Ok("Z3 round trip and Z4 swap".into())
}

fn c6_properties() -> Outcome {
    let mut checked = 0;
    for name in catalog_list() {
        let s = sol(name);
        let g = s.group.clone();
        let base = max_residual(&s);
        for bits in 0..(1u64 << (s.n() - 1)) {
            let mut delta = GaugeVector::from_bits(s.n(), bits).delta;
            for h in g.elements() {
                delta[g.double(h)] = 1;
            }
            let t = gauge_apply(&s, &GaugeVector::new(delta).unwrap());
            ensure((max_residual(&t) - base).abs() < 1e-12, format!("{name}: gauge changes residuals"))?;
            checked += 1;
        }
        let mut images = Vec::new();
        for p in g.elements() {
            images.push(act_translation(&s, p).map_err(|e| e.to_string())?);
        }
        for theta in ghcat_core::group::automorphism_group(&g).unwrap() {
            images.push(act_automorphism(&s, &theta).map_err(|e| e.to_string())?);
        }
        for w in ghcat_core::cohomology::h2_representatives(&g) {
            let mu = ghcat_core::cohomology::mu_of(&w).unwrap();
            images.push(act_h2(&s, &w, &mu).map_err(|e| e.to_string())?);
        }
        for t in &images {
            ensure(max_residual(t) < 1e-9, format!("{name}: symmetry image residual {:e}", max_residual(t)))?;
            checked += 1;
        }
        let r = evaluate_residuals(&s, 1e-9);
        ensure(r.get(Family::I) < 1e-9 && r.get(Family::O3) < 1e-9, format!("{name}: I/O3"))?;
        ensure(check_amplitude_magnitudes(&s, 1e-9) < 1e-9, format!("{name}: |A|1"))?;
        if check_qsystem(&s, 1e-8).q2 {
            ensure(abs_a_qsystem_residual(&s) < 1e-9, format!("{name}: |A|"))?;
        }
    }
    Ok(format!("{checked} transformed triples"))
}

fn c7_formal() -> Outcome {
    let t = Instant::now();
    for name in ["Z3-haagerup", "Z3-accompanying", "Z4-qsystem", "Z4-accompanying"] {
        let r = verify_intertwiners(&sol(name), 1e-9).map_err(|e| e.to_string())?;
        ensure(r.passes(), format!("{name}: intertwiner defects {r:?}"))?;
    }
    for name in ["Z3-haagerup", "Z4-qsystem"] {
        let r = verify_qsystem_isometry(&sol(name), 1e-10).map_err(|e| e.to_string())?;
        ensure(r.passes(), format!("{name}: {r:?}"))?;
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(30), format!("took {el:?}"))?;
    Ok(format!("{el:.2?}"))
}

fn multiplicities(f: &FusionSummary) -> Vec<(String, usize)> {
    let mut v = f.rho_square.clone();
    v.sort();
    v
}

fn sorted(v: &[(&str, usize)]) -> Vec<(String, usize)> {
    let mut v: Vec<_> = v.iter().map(|(s, m)| (s.to_string(), *m)).collect();
    v.sort();
    v
}

fn c8_orbifold() -> Outcome {
    let deq = deequivariantize(&sol("Z4-qsystem"), 2).map_err(|e| e.to_string())?;
    ensure(
        multiplicities(&deq) == sorted(&[("id", 1), ("ρ̃", 2), ("α̃ρ̃", 2)]),
        format!("deq ρ̃² = {:?}", deq.rho_square),
    )?;
    ensure(deq.q_system_preserved, "deq: Q-system not preserved")?;
    let signs = deq.obstruction_sign_pattern.clone().unwrap_or_default();
    ensure(signs.contains(&(1, -1)), format!("deq: ε_2(1) pattern {signs:?}"))?;

    let s = sol("Z2x2");
    let theta = GroupMap::from_permutation(&s.group, &[0, 2, 3, 1]).unwrap();
    let eqv = equivariantize(&s, &theta).map_err(|e| e.to_string())?;
    ensure(
        multiplicities(&eqv) == sorted(&[("id", 1), ("ρ̃", 1), ("σ̃ρ̃", 1)]),
        format!("eqv ρ̃² = {:?}", eqv.rho_square),
    )?;
    let sigma = eqv.products.iter().find(|p| p.object == "σ̃").ok_or("eqv: no σ̃² decomposition")?;
    let mut terms = sigma.terms.clone();
    terms.sort();
    ensure(
        terms == sorted(&[("id", 1), ("β̂", 1), ("β̂^2", 1), ("σ̃", 2)]),
        format!("eqv σ̃² = {:?}", sigma.terms),
    )?;

    for (f, want) in [(vec![3], (1, 1, 1)), (vec![6], (2, 2, 2)), (vec![2, 2], (4, 0, 0))] {
        let d = dual_graph_data(&group(&f));
        let got = (d.beta.len(), d.j0.len(), d.j1_count);
        ensure(got == want, format!("dual graph {}: {got:?}", d.group))?;
        ensure(d.dimension_balance() < 1e-9, format!("dual graph {}: dimensions unbalanced", d.group))?;
    }
    Ok("deq, eqv and dual graph census".into())
}

fn main() {
    // libtest arguments such as --nocapture are accepted and ignored.
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 catalog residuals and flags", c1_catalog),
        ("2 classify Z3/Z4/Z2/Z2xZ2", c2_classify),
        ("3 degenerate closed forms", c3_degenerate),
        ("4 out-group of Z2xZ2 is A4", c4_out_group),
        ("5 accompanying solutions", c5_accompany),
        ("6 symmetry and identity properties", c6_properties),
        ("7 formal intertwiners and isometry", c7_formal),
        ("8 orbifold data", c8_orbifold),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS criterion {name} ({:.2?}): {msg}", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({:.2?}): {msg}", t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
