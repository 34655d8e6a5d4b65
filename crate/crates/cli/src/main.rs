use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fpp_core::geometry::{
    format_rational, hirzebruch_jung, quotient_preset, reider_filter, ReiderMode, ReiderWitness,
};
use fpp_core::picard::{lookup_in, registry, FppDescriptor};
use fpp_core::simquot::{exact_sequence_ii_check, ActionRecord, SimplicialAction, SimplicialComplex};
use fpp_core::suite::{self, SuiteConfig, DEFAULT_SEED};
use fpp_core::vanishing::{bicanonical_verdict, run_vanishing};
use fpp_core::Strategy;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "fpp-verify", version, about = "Verify the finite computations behind the bicanonical embedding of fake projective planes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Read the surface registry from a JSON file instead of the built-in one.
    #[arg(long, global = true, value_name = "FILE")]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every acceptance check.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run checks one after another instead of in parallel.
        #[arg(long)]
        sequential: bool,
        /// Only run checks whose names start with this prefix (repeatable).
        #[arg(long, value_name = "PREFIX")]
        only: Vec<String>,
    },
    /// Effectivity deductions for the degree-one classes of one surface.
    Vanish {
        label: String,
        /// Print the proof chain of every class.
        #[arg(long)]
        explain: bool,
    },
    /// Hirzebruch-Jung resolution of the singularity 1/n(1,q).
    Resolve { n: i64, q: i64 },
    /// Invariants of the resolved quotient by C3, C3xC3, C7 or G21.
    Quotient { group: String },
    /// Reider alternatives for K + L with L = degree · generator.
    Reider {
        #[arg(long, default_value_t = 9)]
        l2: i64,
        #[arg(long, default_value_t = 1)]
        generator_square: i64,
        #[arg(long, default_value_t = 3)]
        degree: i64,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// H1 of a simplicial complex and, with an action, of its quotient.
    Homology {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        action: Option<PathBuf>,
        /// Treat the listed simplices as facets and add all their faces.
        #[arg(long)]
        close: bool,
    },
    /// Write a JSON artifact.
    Export {
        what: Artifact,
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Print the derivation behind one named check.
    Explain {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(alias = "bp")]
    Basepoint,
    #[value(alias = "sep")]
    Separation,
}

#[derive(Clone, Copy, ValueEnum)]
enum Artifact {
    Registry,
    Report,
}

fn load_registry(path: Option<&Path>) -> Result<Vec<FppDescriptor>> {
    match path {
        None => Ok(registry().to_vec()),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing registry {}", p.display()))
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let reg = load_registry(cli.registry.as_deref())?;
    let json = cli.json;
    match cli.command {
        Command::Verify { seed, sequential, only } => {
            let mut cfg = SuiteConfig::new(&reg, seed);
            if sequential {
                cfg.strategy = Strategy::Sequential;
            }
            let report = suite::run_matching(&cfg, &only);
            if json {
                println!("{}", pretty(&report)?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.exit_code() as u8)
        }
        Command::Vanish { label, explain } => {
            let surface = lookup_in(&reg, &label)?;
            let rep = run_vanishing(surface)?;
            if json {
                let bic = bicanonical_verdict(surface)?;
                println!("{}", pretty(&serde_json::json!({ "vanishing": rep, "bicanonical": bic.verdict }))?);
                return Ok(0);
            }
            println!("{} (H1 = {}, Aut = {})", surface.label, surface.h1, surface.aut_type);
            println!(
                "{} classes: {} proved non-effective, {} undetermined",
                rep.candidates.len(),
                rep.proved_noneffective.len(),
                rep.undetermined.len()
            );
            for c in &rep.candidates {
                let status = if rep.is_proved(c) { "non-effective" } else { "undetermined" };
                println!("  L0 + {}: {status}", c.torsion);
                if explain {
                    for line in rep.explain(c) {
                        println!("    {line}");
                    }
                }
            }
            for o in &rep.undetermined_orbits {
                let names: Vec<String> = o.iter().map(|c| c.torsion.to_string()).collect();
                println!("undetermined orbit: {{{}}}", names.join(", "));
            }
            if !rep.undetermined.is_empty() {
                println!("at most {} simultaneously effective", rep.max_simultaneously_effective);
            }
            for n in &rep.notes {
                println!("note: {n}");
            }
            let bic = bicanonical_verdict(surface)?;
            println!("bicanonical verdict: {}", serde_json::to_value(&bic.verdict)?["verdict"].as_str().unwrap_or("?"));
            Ok(0)
        }
        Command::Resolve { n, q } => {
            let g = hirzebruch_jung(n, q)?;
            if json {
                println!("{}", pretty(&g)?);
            } else {
                let d: Vec<String> = g.discrepancies.iter().map(format_rational).collect();
                println!("1/{n}(1,{q}): chain {:?}", g.hj);
                println!("self-intersections {:?}", g.self_intersections);
                println!("discrepancies ({})", d.join(", "));
                println!("K^2 correction per point {}", format_rational(&g.k_squared_correction()));
                println!("du Val: {}", g.is_du_val());
            }
            Ok(0)
        }
        Command::Quotient { group } => {
            let p = quotient_preset(&group)?;
            let q = p.invariants()?;
            if json {
                println!("{}", pretty(&serde_json::json!({ "preset": p, "invariants": q }))?);
            } else {
                println!("{} (order {}, {} fixed points)", p.name, p.group_order, p.fixed_points);
                for (s, r) in q.singularities.iter().zip(&q.resolutions) {
                    println!("  {} x 1/{}(1,{}): chain {:?}", s.count, s.n, s.q, r.hj);
                }
                println!("K^2 = {}, e = {}, chi = {}", q.k2_resolution, q.euler_resolution, q.chi);
                println!("{}", p.description);
            }
            Ok(0)
        }
        Command::Reider { l2, generator_square, degree, mode } => {
            let modes: Vec<(&str, ReiderMode)> = match mode {
                Some(Mode::Basepoint) => vec![("basepoint", ReiderMode::Basepoint)],
                Some(Mode::Separation) => vec![("separation", ReiderMode::Separation)],
                None => vec![("basepoint", ReiderMode::Basepoint), ("separation", ReiderMode::Separation)],
            };
            let mut out = serde_json::Map::new();
            for (name, m) in modes {
                let w = reider_filter(l2, generator_square, degree, m)?;
                if !json {
                    println!("{name}: {}", describe_witnesses(&w));
                }
                out.insert(name.into(), serde_json::to_value(&w)?);
            }
            if json {
                println!("{}", pretty(&Value::Object(out))?);
            }
            Ok(0)
        }
        Command::Homology { file, action, close } => homology(&file, action.as_deref(), close, json),
        Command::Export { what, path, seed } => {
            let text = match what {
                Artifact::Registry => pretty(&reg)?,
                Artifact::Report => pretty(&suite::run_all(&SuiteConfig::new(&reg, seed)))?,
            };
            fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            if !json {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::Explain { name, seed } => {
            let text = suite::explain(&name, &SuiteConfig::new(&reg, seed))?;
            print!("{text}");
            Ok(0)
        }
    }
}

fn describe_witnesses(w: &[ReiderWitness]) -> String {
    if w.is_empty() {
        return "no case survives".into();
    }
    w.iter()
        .map(|x| {
            let extra =
                x.derived.map(|d| format!(", K.D = {}, p_a = {}", d.k_dot_d, d.arithmetic_genus)).unwrap_or_default();
            format!("{:?} with D = {}·H (D^2 = {}, D.L = {}{extra})", x.case, x.m, x.d_squared, x.d_dot_l)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(serde::Deserialize)]
struct RawComplex {
    vertices: Vec<u32>,
    simplices: Vec<Vec<u32>>,
}

fn homology(file: &Path, action: Option<&Path>, close: bool, json: bool) -> Result<u8> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let complex = if close {
        let raw: RawComplex = serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))?;
        SimplicialComplex::from_facets(raw.vertices, raw.simplices)?
    } else {
        serde_json::from_str::<SimplicialComplex>(&text).with_context(|| format!("parsing {}", file.display()))?
    };
    let h = complex.h1();
    let Some(path) = action else {
        if json {
            println!("{}", pretty(&serde_json::json!({ "euler_characteristic": complex.euler_characteristic(), "h1": h }))?);
        } else {
            println!("vertices {}, dimension {}, Euler characteristic {}", complex.num_vertices(), complex.dimension(), complex.euler_characteristic());
            println!("H1 = {}", h.group);
        }
        return Ok(0);
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let record: ActionRecord = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let act = SimplicialAction::from_record(&complex, &record)?;
    let s = exact_sequence_ii_check(&complex, &act)?;
    if json {
        println!("{}", pretty(&s)?);
    } else {
        println!("H1 = {}; acting group of order {}", s.h1, s.group_order);
        if s.subdivisions > 0 {
            println!("barycentric subdivisions applied: {}", s.subdivisions);
        }
        println!("H1 coinvariants = {}", s.coinvariants);
        println!("H1 of quotient = {}", s.h1_quotient);
        println!("stabilizers generate the group: {}", s.stabilizers_generate);
        println!("(G/K)^ab = {}", s.g_mod_k_ab);
        println!("coinvariant map onto: {}, kernel {}, cokernel {}", s.coinvariant_map_surjective, s.kernel, s.cokernel);
        println!("sequence exact: {}", s.exact);
        if s.pointwise_fixed_simplices > 0 {
            println!("warning: {} higher simplices fixed pointwise", s.pointwise_fixed_simplices);
        }
    }
    if !s.exact {
        bail!("exact sequence check failed");
    }
    Ok(0)
}
