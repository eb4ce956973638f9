use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use imw_core::constructions::{
    almost_action_from_f_inverse, crossed_product, f_product, factor_system_from_almost_action,
    factor_system_from_extension, gluing, gluing_map_from_clifford,
};
use imw_core::corpus::{
    enumerate_almost_actions, enumerate_gluing_maps, enumerate_inverse_monoids, enumerate_semilattices,
    group_by_name, small_groups, DEFAULT_BUDGET,
};
use imw_core::docs::{
    parse_almost_action, parse_factor_system, parse_gluing_map, AlmostActionDoc, FactorSystemDoc, GluingDoc,
};
use imw_core::extension::{build_canonical_extension, cosplit_retraction, is_weakly_schreier};
use imw_core::inverse::is_f_inverse;
use imw_core::iso::{brute_force_iso, DEFAULT_MAX_ISO_N};
use imw_core::mtab::{parse_mtab, write_mtab};
use imw_core::report::{analyze, emit_report, to_sorted_json, Format};
use imw_core::suite::{run_suite, SuiteConfig, SUITE_MAX_ISO_N};
use imw_core::{Error, FiniteMonoid, InverseMonoid};

/// Finite inverse monoid workbench.
///
/// Exit codes: 0 all checks pass, 1 a property verdict is false, 2 input,
/// validation or usage error.
#[derive(Parser)]
#[command(name = "imw", version)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Search budget for enumerations.
    #[arg(long, global = true, env = "IMW_BUDGET")]
    budget: Option<u64>,
    /// Largest size for brute-force isomorphism search.
    #[arg(long, global = true)]
    max_iso_n: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a monoid: inverse, E-unitary, F-inverse, Clifford, weakly Schreier.
    Check { file: PathBuf },
    /// Build the canonical extension E(M) -> M -> M/sigma and search for a splitting.
    Extension { file: PathBuf },
    /// Recover the almost action, factor system and (if Clifford) gluing map of an F-inverse monoid.
    Decompose { file: PathBuf },
    /// Build a monoid from a JSON almost action, gluing map or factor system.
    Construct {
        #[arg(value_enum)]
        what: ConstructKind,
        file: PathBuf,
    },
    /// Search for an isomorphism between two monoids.
    Iso { a: PathBuf, b: PathBuf },
    /// Enumerate small structures.
    Enumerate {
        #[arg(long, value_enum)]
        kind: EnumKind,
        #[arg(long)]
        max_n: usize,
        /// Acting group for almost actions and gluing maps (Z1..Z6, V4, S3).
        #[arg(long, default_value = "Z2")]
        group: String,
    },
    /// Run the full acceptance suite.
    Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Fproduct,
    Gluing,
    Crossed,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Semilattice,
    InverseMonoid,
    Group,
    AlmostAction,
    GluingMap,
}

/// Failure carrying the exit code: 1 for a false verdict, 2 for bad input.
struct Failure(u8, String);

fn bad_input(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn load_monoid(path: &Path) -> Result<FiniteMonoid, Failure> {
    parse_mtab(&read(path)?).map_err(|e| bad_input(format!("{}: {e}", path.display())))
}

fn load_inverse(path: &Path) -> Result<InverseMonoid, Failure> {
    InverseMonoid::new(load_monoid(path)?).map_err(|e| bad_input(format!("{}: not inverse: {e}", path.display())))
}

fn instance_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure(code, msg)) => {
            if code == 1 {
                print!("{msg}");
            } else {
                eprintln!("imw: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let max_iso_n = cli.max_iso_n.unwrap_or(DEFAULT_MAX_ISO_N);
    let format = if cli.json { Format::Json } else { Format::Human };
    match &cli.command {
        Command::Check { file } => {
            let m = load_monoid(file)?;
            let report = analyze(&instance_name(file), &m).map_err(bad_input)?;
            let text = emit_report(&report, format);
            if report.all_hold() {
                Ok(text)
            } else {
                Err(Failure(1, text))
            }
        }
        Command::Extension { file } => extension(file, cli.json),
        Command::Decompose { file } => decompose(file, cli.json, max_iso_n),
        Command::Construct { what, file } => {
            let text = read(file)?;
            let m = match what {
                ConstructKind::Fproduct => {
                    let aa = parse_almost_action(&text).map_err(bad_input)?;
                    f_product(&aa).map_err(bad_input)?.monoid.into_monoid()
                }
                ConstructKind::Gluing => {
                    let gm = parse_gluing_map(&text).map_err(bad_input)?;
                    gluing(&gm).map_err(bad_input)?.monoid.into_monoid()
                }
                ConstructKind::Crossed => {
                    let fs = parse_factor_system(&text).map_err(bad_input)?;
                    crossed_product(&fs).map_err(bad_input)?.monoid
                }
            };
            Ok(write_mtab(&m))
        }
        Command::Iso { a, b } => {
            let (ma, mb) = (load_monoid(a)?, load_monoid(b)?);
            match brute_force_iso(&ma, &mb, max_iso_n).map_err(bad_input)? {
                Some(w) => Ok(if cli.json {
                    to_sorted_json(&json!({
                        "schema": 1,
                        "isomorphic": true,
                        "forward": w.forward.values(),
                        "backward": w.backward.values(),
                    }))
                } else {
                    let pairs: Vec<String> =
                        ma.elements().map(|x| format!("{} -> {}", ma.label(x), mb.label(w.forward.apply(x)))).collect();
                    format!("isomorphic\n{}\n", pairs.join("\n"))
                }),
                None => Err(Failure(
                    1,
                    if cli.json {
                        to_sorted_json(&json!({"schema": 1, "isomorphic": false}))
                    } else {
                        "NotIsomorphic\n".into()
                    },
                )),
            }
        }
        Command::Enumerate { kind, max_n, group } => enumerate(*kind, *max_n, group, budget, cli.json),
        Command::Suite => {
            let cfg = SuiteConfig { budget, max_iso_n: cli.max_iso_n.unwrap_or(SUITE_MAX_ISO_N) };
            let report = run_suite(cfg).map_err(bad_input)?;
            let text = if cli.json { report.to_json() } else { report.to_human() };
            if report.pass {
                Ok(text)
            } else {
                Err(Failure(1, text))
            }
        }
    }
}

fn extension(file: &Path, as_json: bool) -> Result<String, Failure> {
    let m = load_inverse(file)?;
    let ext = match build_canonical_extension(&m) {
        Ok(ext) => ext,
        Err(Error::KernelMismatch(x)) => {
            let msg = format!("KernelMismatch: {} is sigma-related to 1 but not idempotent", m.monoid().label(x));
            return Err(Failure(
                1,
                if as_json {
                    to_sorted_json(&json!({"schema": 1, "extension": null, "error": "KernelMismatch", "witness": [x]}))
                } else {
                    format!("no canonical extension\n{msg}\n")
                },
            ));
        }
        Err(e) => return Err(bad_input(e)),
    };
    let cos = cosplit_retraction(&m).map_err(bad_input)?;
    let split = is_weakly_schreier(&ext);
    let mut doc = json!({
        "schema": 1,
        "kernel_size": ext.kernel.len(),
        "quotient_size": ext.quotient.len(),
        "k": ext.k.values(),
        "q": ext.q.values(),
        "cosplitting": {"ell": cos.ell.values(), "is_homomorphism": cos.is_homomorphism},
    });
    let label = |x: usize| m.monoid().label(x);
    let mut text = format!(
        "E(M) -> M -> M/sigma with |E(M)| = {}, |M/sigma| = {}\nk: {}\nq: {}\ncosplitting l(m) = m m^-1 is {}a homomorphism\n",
        ext.kernel.len(),
        ext.quotient.len(),
        ext.k.values().iter().map(|&x| label(x)).collect::<Vec<_>>().join(" "),
        ext.q.values().iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
        if cos.is_homomorphism { "" } else { "not " },
    );
    match split {
        Ok(s) => {
            doc["weakly_schreier"] = json!({"holds": true, "splitting": s.section.values()});
            let images: Vec<String> = s.section.values().iter().map(|&x| label(x)).collect();
            text.push_str(&format!("weakly Schreier: yes, s = ({})\n", images.join(", ")));
            Ok(if as_json { to_sorted_json(&doc) } else { text })
        }
        Err(Error::EmptyCandidateFiber { class, fiber }) => {
            doc["weakly_schreier"] = json!({
                "holds": false,
                "witness": {"error": "EmptyCandidateFiber", "class": class, "fiber": fiber},
            });
            let members: Vec<String> = fiber.iter().map(|&x| label(x)).collect();
            text.push_str(&format!(
                "weakly Schreier: no\nEmptyCandidateFiber: class {class}, fiber {{{}}}\n",
                members.join(", ")
            ));
            Err(Failure(1, if as_json { to_sorted_json(&doc) } else { text }))
        }
        Err(e) => Err(bad_input(e)),
    }
}

fn decompose(file: &Path, as_json: bool, max_iso_n: usize) -> Result<String, Failure> {
    let m = load_inverse(file)?;
    if let Err(w) = is_f_inverse(&m) {
        return Err(Failure(1, format!("not F-inverse: {w}\n")));
    }
    let (aa, _) = almost_action_from_f_inverse(&m, max_iso_n).map_err(bad_input)?;
    let fs_action = factor_system_from_almost_action(&aa).map_err(bad_input)?;
    let ext = build_canonical_extension(&m).map_err(bad_input)?;
    let split = is_weakly_schreier(&ext).map_err(bad_input)?;
    let (fs_ext, _) = factor_system_from_extension(&ext, &split, max_iso_n).map_err(bad_input)?;
    let gm = gluing_map_from_clifford(&m).ok().map(|cg| GluingDoc::from_map(&cg.map));
    let doc = json!({
        "schema": 1,
        "almost_action": AlmostActionDoc::from_action(&aa),
        "factor_system": FactorSystemDoc::from_system(&fs_action),
        "extension_factor_system": FactorSystemDoc::from_system(&fs_ext),
        "gluing_map": gm,
    });
    if as_json {
        return Ok(to_sorted_json(&doc));
    }
    let mut text = String::new();
    for key in ["almost_action", "factor_system", "extension_factor_system", "gluing_map"] {
        let body = if doc[key].is_null() {
            "none (not Clifford)".to_string()
        } else {
            serde_json::to_string(&doc[key]).expect("json value")
        };
        text.push_str(&format!("{key}: {body}\n"));
    }
    Ok(text)
}

fn enumerate(kind: EnumKind, max_n: usize, group: &str, budget: u64, as_json: bool) -> Result<String, Failure> {
    let monoids: Vec<FiniteMonoid> = match kind {
        EnumKind::Semilattice => enumerate_semilattices(max_n)
            .map_err(bad_input)?
            .into_iter()
            .map(|y| y.monoid().clone())
            .collect(),
        EnumKind::InverseMonoid => enumerate_inverse_monoids(max_n)
            .map_err(bad_input)?
            .into_iter()
            .map(InverseMonoid::into_monoid)
            .collect(),
        EnumKind::Group => small_groups().into_iter().map(|(_, g)| g).filter(|g| g.len() <= max_n).collect(),
        EnumKind::AlmostAction | EnumKind::GluingMap => {
            let g = group_by_name(group).ok_or_else(|| bad_input(format!("unknown group {group:?}")))?;
            let mut docs = Vec::new();
            for y in enumerate_semilattices(max_n).map_err(bad_input)? {
                if matches!(kind, EnumKind::AlmostAction) {
                    for aa in enumerate_almost_actions(&g, &y, budget).map_err(bad_input)? {
                        docs.push(serde_json::to_value(AlmostActionDoc::from_action(&aa)).expect("json"));
                    }
                } else {
                    for gm in enumerate_gluing_maps(&g, &y, budget).map_err(bad_input)? {
                        docs.push(serde_json::to_value(GluingDoc::from_map(&gm)).expect("json"));
                    }
                }
            }
            return Ok(if as_json {
                to_sorted_json(&docs)
            } else {
                docs.iter().map(|d| format!("{d}\n")).collect()
            });
        }
    };
    Ok(if as_json {
        let docs: Vec<_> = monoids.iter().map(imw_core::docs::TableDoc::from_monoid).collect();
        to_sorted_json(&docs)
    } else {
        monoids.iter().map(write_mtab).collect::<Vec<_>>().join("\n")
    })
}
