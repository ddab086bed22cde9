use clap::{Args, Parser, Subcommand};
use ghcat_core::constructions::{
    accompany_even, accompany_odd, deequivariantize, dual_graph_data, equivariantize, ConstructionError,
};
use ghcat_core::cuntz_formal::{verify_intertwiners, verify_qsystem_isometry, FormalError};
use ghcat_core::solver::{classify, solve, SolveOptions, SolverError, DEFAULT_MAX_GROUP_ORDER};
use ghcat_core::symmetry::gamma_orbit;
use ghcat_core::{catalog_get, catalog_list, check_qsystem, evaluate_residuals, GroupMap, GroupSpec, SolutionTriple};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "ghcat", version, about = "Generalized Haagerup category toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write JSON output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SolverFlags {
    /// Group as comma-separated invariant factors, e.g. "2,2"
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    restarts: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    require_qsystem: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every equation family on a solution file
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also check the intertwiner relations by formal rewriting
        #[arg(long)]
        formal: bool,
    },
    /// All gauge classes of solutions for a group
    Solve(SolverFlags),
    /// Solutions up to the full symmetry group, with Q-system flags
    Classify(SolverFlags),
    /// Γ-orbit and stabilizer of a solution
    Orbit { file: PathBuf },
    /// Outer automorphism group (stabilizer) of a solution
    OutGroup { file: PathBuf },
    /// Accompanying solution (odd groups or Z_2m with nontrivial ε)
    Accompany { file: PathBuf },
    /// De-equivariantization fusion data for an element z of order 2
    Deq {
        file: PathBuf,
        #[arg(long)]
        z: usize,
    },
    /// Equivariantization fusion data for an automorphism given as images "0,2,3,1"
    Eqv {
        file: PathBuf,
        #[arg(long)]
        aut: String,
    },
    /// Dual principal-graph census for a group
    DualGraph {
        #[arg(long)]
        group: String,
    },
    /// Built-in solutions
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
    /// Write the entry as JSON; FILE is an alternative to --out
    Export { name: String, file: Option<PathBuf> },
}

enum Failure {
    Usage(String),
    Verification(Value),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_group(s: &str) -> Result<GroupSpec, Failure> {
    GroupSpec::parse_factors(s).map_err(|e| Failure::Usage(format!("bad --group {s:?}: {e}")))
}

fn read_solution(p: &Path) -> Result<SolutionTriple, Failure> {
    SolutionTriple::read(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn max_group_order() -> Result<usize, Failure> {
    match std::env::var("GHC_MAX_GROUP_ORDER") {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("GHC_MAX_GROUP_ORDER={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_GROUP_ORDER),
    }
}

fn options(f: &SolverFlags) -> Result<SolveOptions, Failure> {
    Ok(SolveOptions {
        restarts: f.restarts,
        seed: f.seed,
        tol_accept: f.tol,
        tol_polish: f.tol.min(1e-10),
        require_qsystem: f.require_qsystem,
        max_group_order: max_group_order()?,
        ..SolveOptions::default()
    })
}

fn solver_err(e: SolverError) -> Failure {
    Failure::Usage(e.to_string())
}

fn construction_err(e: ConstructionError) -> Failure {
    Failure::Usage(e.to_string())
}

fn verify(file: &Path, tol: f64, formal: bool) -> Result<Value, Failure> {
    let s = read_solution(file)?;
    let report = evaluate_residuals(&s, tol);
    let flags = check_qsystem(&s, tol.max(1e-8));
    let mut out = json!({
        "group": s.group.name(),
        "passes": report.passes(),
        "residuals": report,
        "q1": flags.q1,
        "q2": flags.q2,
    });
    let mut ok = report.passes();
    if formal {
        let inter = verify_intertwiners(&s, 1e-9)?;
        ok &= inter.passes();
        out["formal"] = json!({
            "s_in_id_rho2_defect": inter.s_defect,
            "t_in_alpha_rho_rho2_defects": inter.t_defects,
            "passes": inter.passes(),
        });
        match verify_qsystem_isometry(&s, 1e-10) {
            Ok(q) => {
                ok &= q.passes();
                out["formal"]["qsystem_isometry"] = json!({
                    "isometry_defect": q.isometry_defect,
                    "intertwiner_defect": q.intertwiner_defect,
                    "passes": q.passes(),
                });
            }
            Err(FormalError::Precondition(m)) => out["formal"]["qsystem_isometry"] = json!({ "skipped": m }),
            Err(e) => return Err(e.into()),
        }
    }
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn orbit_json(s: &SolutionTriple) -> Result<Value, Failure> {
    let o = gamma_orbit(s)?;
    Ok(json!({
        "orbit_size": o.orbit.len(),
        "stabilizer_order": o.stabilizer_order,
        "gamma_order": o.gamma_order,
        "name": o.stabilizer_name,
        "amplitudes_nonzero": o.amplitudes_nonzero,
    }))
}

fn run(cli: Cli) -> Result<Value, Failure> {
    match cli.command {
        Command::Verify { file, tol, formal } => verify(&file, tol, formal),
        Command::Solve(f) => {
            let g = parse_group(&f.group)?;
            let sols = solve(&g, &options(&f)?).map_err(solver_err)?;
            Ok(json!({
                "group": g.name(),
                "seed": f.seed,
                "solutions": sols.iter().map(|s| s.to_json_value()).collect::<Vec<_>>(),
            }))
        }
        Command::Classify(f) => {
            let g = parse_group(&f.group)?;
            let r = classify(&g, &options(&f)?).map_err(solver_err)?;
            let classes: Vec<Value> = r
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "q1": c.q1,
                        "q2": c.q2,
                        "stabilizer_order": c.stabilizer_order,
                        "stabilizer_name": c.stabilizer_name,
                        "gauge_classes_in_orbit": c.orbit_size,
                        "amplitudes_nonzero": c.amplitudes_nonzero,
                        "epsilon_characters": c.epsilon_chi,
                        "representative": c.representative.to_json_value(),
                    })
                })
                .collect();
            Ok(json!({
                "group": g.name(),
                "seed": r.seed,
                "class_count": r.classes.len(),
                "degenerate_solutions": r.degenerate_solutions,
                "epsilon_classes": r.epsilon_classes,
                "epsilon_orbits": r.epsilon_orbits,
                "branches": r.branches,
                "gauge_classes_found": r.gauge_classes_found,
                "classes": classes,
            }))
        }
        Command::Orbit { file } => orbit_json(&read_solution(&file)?),
        Command::OutGroup { file } => {
            let s = read_solution(&file)?;
            let o = gamma_orbit(&s)?;
            Ok(json!({
                "stabilizer_order": o.stabilizer_order,
                "name": o.stabilizer_name,
                "equals_out_group": o.amplitudes_nonzero,
            }))
        }
        Command::Accompany { file } => {
            let s = read_solution(&file)?;
            let a = if s.group.is_odd() { accompany_odd(&s) } else { accompany_even(&s) }.map_err(construction_err)?;
            Ok(a.to_json_value())
        }
        Command::Deq { file, z } => {
            let s = read_solution(&file)?;
            Ok(serde_json::to_value(deequivariantize(&s, z).map_err(construction_err)?)?)
        }
        Command::Eqv { file, aut } => {
            let s = read_solution(&file)?;
            let perm: Vec<usize> = aut
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("bad --aut {aut:?}: expected comma-separated images")))?;
            let theta = GroupMap::from_permutation(&s.group, &perm)?;
            Ok(serde_json::to_value(equivariantize(&s, &theta).map_err(construction_err)?)?)
        }
        Command::DualGraph { group } => {
            let g = parse_group(&group)?;
            Ok(serde_json::to_value(dual_graph_data(&g))?)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => Ok(json!(catalog_list()
                .iter()
                .map(|n| {
                    let e = catalog_get(n).expect("listed");
                    json!({ "name": n, "group": e.group.name(), "q1": e.expected.q1, "q2": e.expected.q2 })
                })
                .collect::<Vec<_>>())),
            CatalogAction::Show { name } => {
                let e = catalog_get(&name)?;
                Ok(json!({
                    "name": e.name,
                    "group": e.group.name(),
                    "closed_forms": e.closed_forms,
                    "q1": e.expected.q1,
                    "q2": e.expected.q2,
                    "class_note": e.expected.class_note,
                    "notes": e.notes,
                }))
            }
            CatalogAction::Export { name, file } => {
                let s = catalog_get(&name)?.construct();
                match file {
                    Some(p) => {
                        s.write(&p)?;
                        Ok(json!({ "name": name, "written": p }))
                    }
                    None => Ok(s.to_json_value()),
                }
            }
        },
    }
}

fn emit(v: &Value, out: &Option<PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).expect("json");
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(v) => match emit(&v, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Verification(v)) => {
            let _ = emit(&v, &out);
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
