use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use genlat::ingestion::{emit_dot, load_with, DotMode, LoadOptions, DEFAULT_MAX_GENERATORS};
use genlat::minors::{minor_count, MinorTable};
use genlat::properties::{check, check_all, has_no_parallels, is_geometric, lifts_join_irreducibles};
use genlat::zipping::{zipping_sequence, MapSpec, ZipOptions};
use genlat::{
    canonical_strong_map, cd_index, product_law, rank_gen, GenLattice, LatticeSpec, MinorPoset, ProductKind,
    Property, RankGenMethod,
};

#[derive(Parser)]
#[command(name = "genlat", version, about = "Minor posets of generator-enriched lattices")]
struct Cli {
    /// Largest number of minors any command may enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u128,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest number of generators accepted on input.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GENERATORS)]
    max_generators: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, generators, irreducibles and structural flags.
    Show { input: PathBuf },
    /// Number of minors, optionally listing them.
    Minors {
        input: PathBuf,
        #[arg(long)]
        list: bool,
    },
    /// The minor poset as poset JSON.
    Poset { input: PathBuf },
    /// Rank generating function of the minor poset.
    Rankgen {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
    },
    /// cd-index of the minor poset.
    Cdindex { input: PathBuf },
    /// Property reports; exits with 1 when a property fails.
    Check {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PropertyArg::All)]
        property: PropertyArg,
    },
    /// Zipping sequence of the canonical map, or of a strong map file.
    ZipTrace {
        input: Option<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Checks that a lattice construction matches the poset product.
    Product {
        input: PathBuf,
        other: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = KindArg::Cartesian)]
        kind: KindArg,
    },
    /// Graphviz rendering of the diagram or Hasse diagram.
    Dot {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = DotArg::Diagram)]
        mode: DotArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Geometric,
    NoParallels,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    All,
    NoParallels,
    Jilp,
    Geometric,
    Lattice,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Cartesian,
    AdjoinMax,
    Pyramid,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotArg {
    Diagram,
    Hasse,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    PropertyFalse,
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn lattice(cli: &Cli, path: &Path) -> anyhow::Result<GenLattice> {
    let spec = LatticeSpec::from_json_str(&read_input(path)?)?;
    Ok(load_with(&spec, LoadOptions { max_generators: cli.max_generators })?)
}

fn run(cli: &Cli, out: &mut impl Write) -> anyhow::Result<Status> {
    let budget = cli.budget;
    match &cli.command {
        Command::Show { input } => {
            let lat = lattice(cli, input)?;
            let (irr, minimal) = lat.irreducibles();
            let irr: Vec<Vec<usize>> = irr.iter().map(|&e| lat.closed_set(e).to_one_based()).collect();
            let flags = [
                ("no-parallels", has_no_parallels(&lat).verdict),
                ("jilp", lifts_join_irreducibles(&lat).verdict),
                ("geometric", is_geometric(&lat).verdict),
            ];
            if cli.json {
                let flags: serde_json::Map<String, serde_json::Value> =
                    flags.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                let v = json!({
                    "elements": lat.len(),
                    "generators": lat.n(),
                    "irreducibles": irr,
                    "generators_are_irreducibles": minimal,
                    "flags": flags,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "elements: {}", lat.len())?;
                writeln!(out, "generators: {}", lat.n())?;
                writeln!(out, "irreducibles: {irr:?}")?;
                writeln!(out, "generators are the irreducibles: {minimal}")?;
                for (k, v) in flags {
                    writeln!(out, "{k}: {v}")?;
                }
            }
        }
        Command::Minors { input, list } => {
            let lat = lattice(cli, input)?;
            let count = minor_count(&lat);
            let listing: Vec<String> = if *list {
                MinorTable::new(&lat, budget)?.iter().map(|m| m.display(&lat).to_string()).collect()
            } else {
                Vec::new()
            };
            if cli.json {
                let mut v = json!({ "count": count.to_string() });
                if *list {
                    v["minors"] = json!(listing);
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{count}")?;
                for m in listing {
                    writeln!(out, "{m}")?;
                }
            }
        }
        Command::Poset { input } => {
            let lat = lattice(cli, input)?;
            let mp = MinorPoset::build(&lat, budget)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&mp.poset().to_json())?)?;
        }
        Command::Rankgen { input, method } => {
            let lat = lattice(cli, input)?;
            let methods: &[(&str, RankGenMethod)] = &[
                ("direct", RankGenMethod::Direct),
                ("geometric", RankGenMethod::Geometric),
                ("no-parallels", RankGenMethod::NoParallels),
            ];
            let chosen: Vec<(&str, RankGenMethod)> = match method {
                MethodArg::Direct => vec![methods[0]],
                MethodArg::Geometric => vec![methods[1]],
                MethodArg::NoParallels => vec![methods[2]],
                MethodArg::All => methods.to_vec(),
            };
            let all = chosen.len() > 1;
            let mut results = Vec::new();
            for (name, m) in chosen {
                match rank_gen(&lat, m) {
                    Ok(p) => results.push((name, Ok(p))),
                    Err(e @ genlat::Error::MethodInapplicable(_)) if all => results.push((name, Err(e))),
                    Err(e) => return Err(e.into()),
                }
            }
            let values: Vec<_> = results.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
            if values.windows(2).any(|w| w[0] != w[1]) {
                bail!(genlat::Error::Invariant("rank generating methods disagree".into()));
            }
            if cli.json {
                let v: serde_json::Map<String, serde_json::Value> = results
                    .iter()
                    .map(|(name, r)| {
                        let value = match r {
                            Ok(p) => json!(p.to_string()),
                            Err(e) => json!({ "inapplicable": e.to_string() }),
                        };
                        (name.to_string(), value)
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else if !all {
                writeln!(out, "{}", values[0])?;
            } else {
                for (name, r) in &results {
                    match r {
                        Ok(p) => writeln!(out, "{name}: {p}")?,
                        Err(e) => writeln!(out, "{name}: {e}")?,
                    }
                }
            }
        }
        Command::Cdindex { input } => {
            let lat = lattice(cli, input)?;
            let psi = cd_index(MinorPoset::build(&lat, budget)?.poset())?;
            if cli.json {
                writeln!(out, "{}", json!({ "cd_index": psi.to_string() }))?;
            } else {
                writeln!(out, "{psi}")?;
            }
        }
        Command::Check { input, property } => {
            let lat = lattice(cli, input)?;
            let reports = match property {
                PropertyArg::All => check_all(&lat, budget)?,
                PropertyArg::NoParallels => vec![check(&lat, Property::NoParallels, budget)?],
                PropertyArg::Jilp => vec![check(&lat, Property::Jilp, budget)?],
                PropertyArg::Geometric => vec![check(&lat, Property::Geometric, budget)?],
                PropertyArg::Lattice => vec![check(&lat, Property::Lattice, budget)?],
            };
            if let Some(r) = reports.iter().find(|r| !r.consistent()) {
                bail!(genlat::Error::Invariant(format!("criteria for {} disagree", r.property)));
            }
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
            } else {
                for r in &reports {
                    writeln!(out, "{}: {}", r.property, r.verdict)?;
                    if let Some(w) = &r.witness {
                        writeln!(out, "  witness: {w}")?;
                    }
                }
            }
            if reports.iter().any(|r| !r.verdict) {
                return Ok(Status::PropertyFalse);
            }
        }
        Command::ZipTrace { input, map } => {
            let f = match (map, input) {
                (Some(path), _) => serde_json::from_str::<MapSpec>(&read_input(path)?)
                    .context("parsing map file")?
                    .load()?,
                (None, Some(path)) => canonical_strong_map(&Arc::new(lattice(cli, path)?))?,
                (None, None) => bail!(genlat::Error::Parse("zip-trace needs a lattice or --map".into())),
            };
            let trace = zipping_sequence(&f, ZipOptions { budget, track_cd: true })?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&trace)?)?;
            } else {
                let psi = |p: &Option<genlat::CdPolynomial>| p.as_ref().map(|p| p.to_string()).unwrap_or_default();
                writeln!(out, "start: {} elements, {}", trace.initial_size, psi(&trace.initial_psi))?;
                for s in &trace.steps {
                    let [x, y, z] = &s.zipper;
                    writeln!(out, "map {}: zip {x}, {y}, {z} -> {} elements, {}", s.map_index, s.size, psi(&s.psi))?;
                }
                writeln!(out, "checks pass: {}", trace.all_checks_pass())?;
            }
            if !trace.all_checks_pass() {
                bail!(genlat::Error::Invariant("zipping sequence failed its checks".into()));
            }
        }
        Command::Product { input, other, kind } => {
            let lat = lattice(cli, input)?;
            let other = other.as_deref().map(|p| lattice(cli, p)).transpose()?;
            let kind = match kind {
                KindArg::Cartesian => ProductKind::Cartesian,
                KindArg::AdjoinMax => ProductKind::AdjoinMax,
                KindArg::Pyramid => ProductKind::Pyramid,
            };
            let law = product_law(kind, &lat, other.as_ref(), budget)?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&law)?)?;
            } else {
                writeln!(out, "{}: {} ({} elements)", law.law, law.holds, law.size)?;
            }
            if !law.holds {
                bail!(genlat::Error::Invariant(format!("{} fails", law.law)));
            }
        }
        Command::Dot { input, mode } => {
            let lat = lattice(cli, input)?;
            let mode = match mode {
                DotArg::Diagram => DotMode::Diagram,
                DotArg::Hasse => DotMode::Hasse,
            };
            write!(out, "{}", emit_dot(&lat, mode))?;
        }
    }
    Ok(Status::Ok)
}

/// Variant name of a library error, or a generic kind for I/O and JSON.
fn error_kind(e: &anyhow::Error) -> String {
    match e.downcast_ref::<genlat::Error>() {
        Some(err) => {
            let debug = format!("{err:?}");
            debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
        }
        None if e.downcast_ref::<io::Error>().is_some() => "Io".into(),
        None if e.downcast_ref::<serde_json::Error>().is_some() => "Json".into(),
        None => "Error".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::PropertyFalse) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            let v = json!({ "error": error_kind(&e), "message": format!("{e:#}") });
            eprintln!("{v}");
            ExitCode::from(2)
        }
    }
}
