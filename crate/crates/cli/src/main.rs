//! `amorphic`: build translation schemes, store them, and check them.
//!
//! Exit codes: 0 everything passed, 1 a verification failed, 2 the command
//! line or an input file could not be parsed, 3 a precondition failed
//! (invalid construction parameters, class index out of range, ...).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amorphic::constructions::Construction;
use amorphic::group::all_character_sums;
use amorphic::quadratic::FormType;
use amorphic::scheme::FusionPartition;
use amorphic::{verify, AmorphyMode, Error, PdsMode, SchemeFile, VerifyOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "amorphic", version, about = "Construct and certify amorphic association schemes")]
struct Cli {
    /// Log progress to standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a scheme and write it as a scheme file.
    Construct {
        #[arg(value_enum)]
        name: Family,
        #[command(flatten)]
        params: Params,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Verify every class, the scheme axioms and amorphy.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "both")]
        amorphy: AmorphyArg,
        /// Also write the report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = amorphic::scheme::DEFAULT_FUSION_CAP)]
        fusion_cap: usize,
    },
    /// Merge classes: "1|2,3,4" keeps class 1 and fuses classes 2 to 4.
    Fuse {
        path: PathBuf,
        partition: String,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Write the Cayley graph of one class as an edge list "u v", u < v.
    Export {
        path: PathBuf,
        /// 1-based class index.
        class: usize,
        /// Defaults to standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print every character sum over one class.
    Charsum {
        path: PathBuf,
        /// 1-based class index.
        class: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cyclotomic,
    FourClass,
    LiftedFourClass,
    Chain,
    HamiltonFusion,
    Rotation,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Differences,
    Characters,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmorphyArg {
    Exhaustive,
    Vandam,
    Both,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Elliptic,
    Hyperbolic,
}

#[derive(clap::Args)]
struct Params {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    ell: Option<usize>,
    /// Divisor chain of m, e.g. "4,2,1".
    #[arg(long, value_delimiter = ',')]
    chain: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value = "elliptic")]
    form: FormArg,
}

enum Failure {
    Verification,
    Parse(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SchemeFile(_) => Failure::Parse(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Precondition(format!("{}: {e}", path.display()))
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Parse(format!("{family} requires --{flag}")))
}

fn construction(family: Family, a: &Params) -> Result<Construction, Failure> {
    let form = match a.form {
        FormArg::Elliptic => FormType::Elliptic,
        FormArg::Hyperbolic => FormType::Hyperbolic,
    };
    Ok(match family {
        Family::Cyclotomic => Construction::Cyclotomic {
            p: need(a.p, "p", "cyclotomic")?,
            s: need(a.s, "s", "cyclotomic")?,
            e: need(a.e, "e", "cyclotomic")?,
        },
        Family::FourClass => Construction::FourClass { ell: need(a.ell, "ell", "four-class")? },
        Family::LiftedFourClass => Construction::LiftedFourClass { ell: need(a.ell, "ell", "lifted-four-class")? },
        Family::Chain | Family::HamiltonFusion => {
            let name = if matches!(family, Family::Chain) { "chain" } else { "hamilton-fusion" };
            let (q, m, ell) = (need(a.q, "q", name)?, need(a.m, "m", name)?, need(a.ell, "ell", name)?);
            let chain = need(a.chain.clone(), "chain", name)?;
            if matches!(family, Family::Chain) {
                Construction::Chain { q, m, ell, chain, form }
            } else {
                Construction::HamiltonFusion { q, m, ell, chain, form }
            }
        }
        Family::Rotation => Construction::Rotation { q: need(a.q, "q", "rotation")?, ell: need(a.ell, "ell", "rotation")? },
    })
}

fn class_index(file: &SchemeFile, class: usize) -> Result<usize, Failure> {
    let d = file.classes.len();
    if class == 0 || class > d {
        return Err(Failure::Precondition(format!("class {class} out of range: the scheme has classes 1 to {d}")));
    }
    Ok(class - 1)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_failure(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { name, params, out } => {
            let c = construction(name, &params)?.build()?;
            for w in &c.warnings {
                eprintln!("warning: {w}");
            }
            SchemeFile::from_constructed(&c).write(&out)?;
            let sizes: Vec<String> = c.scheme.class_sizes().iter().map(|s| s.to_string()).collect();
            println!(
                "wrote {}: {}, group {:?}, {} classes of sizes {}",
                out.display(),
                c.descriptor,
                c.scheme.group().factors(),
                c.scheme.class_count(),
                sizes.join("/")
            );
            Ok(())
        }
        Command::Verify { path, mode, amorphy, report, fusion_cap } => {
            let file = SchemeFile::read(&path)?;
            let pds = match mode {
                ModeArg::Differences => PdsMode::Differences,
                ModeArg::Characters => PdsMode::Characters,
                ModeArg::Both => PdsMode::Both,
            };
            let amorphy = match amorphy {
                AmorphyArg::Exhaustive => AmorphyMode::Exhaustive,
                AmorphyArg::Vandam => AmorphyMode::Vandam,
                AmorphyArg::Both => AmorphyMode::Both,
                AmorphyArg::None => AmorphyMode::None,
            };
            let r = verify(&file, VerifyOptions { pds, amorphy, fusion_cap })?;
            println!("{r}");
            if let Some(p) = report {
                let text = serde_json::to_string_pretty(&r).expect("report serializes");
                std::fs::write(&p, text + "\n").map_err(|e| io_failure(&p, e))?;
            }
            if r.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Fuse { path, partition, out } => {
            let file = SchemeFile::read(&path)?;
            let partition: FusionPartition = partition.parse().map_err(|e: Error| Failure::Parse(e.to_string()))?;
            let fused = file.to_scheme()?.fuse(&partition)?;
            let provenance = json!({ "fused_from": file.provenance, "partition": partition.to_string() });
            SchemeFile::from_scheme(&fused, Some(provenance)).write(&out)?;
            let sizes: Vec<String> = fused.class_sizes().iter().map(|s| s.to_string()).collect();
            println!("wrote {}: {} classes of sizes {}", out.display(), fused.class_count(), sizes.join("/"));
            Ok(())
        }
        Command::Export { path, class, out } => {
            let file = SchemeFile::read(&path)?;
            let s = &file.classes[class_index(&file, class)?];
            let g = &file.group;
            let mut w = output(out.as_deref())?;
            let mut edges = 0usize;
            for u in 0..g.order() {
                for x in s.iter_ranks() {
                    let v = g.add_ranks(u, x);
                    if u < v {
                        writeln!(w, "{u} {v}").map_err(|e| Failure::Precondition(e.to_string()))?;
                        edges += 1;
                    }
                }
            }
            w.flush().map_err(|e| Failure::Precondition(e.to_string()))?;
            if let Some(p) = out {
                println!("wrote {}: {edges} edges", p.display());
            }
            Ok(())
        }
        Command::Charsum { path, class } => {
            let file = SchemeFile::read(&path)?;
            let s = &file.classes[class_index(&file, class)?];
            let sums = all_character_sums(s);
            let mut w = output(None)?;
            let mut distinct: Vec<(String, usize)> = Vec::new();
            for (r, z) in sums.iter().enumerate() {
                let label = file.group.unrank(r)?;
                let text = z.to_string();
                writeln!(w, "{label} {text}").map_err(|e| Failure::Precondition(e.to_string()))?;
                if r > 0 {
                    match distinct.iter_mut().find(|(t, _)| *t == text) {
                        Some((_, n)) => *n += 1,
                        None => distinct.push((text, 1)),
                    }
                }
            }
            let summary: Vec<String> = distinct.iter().map(|(t, n)| format!("{t} (x{n})")).collect();
            writeln!(w, "# nonprincipal values: {}", summary.join(", ")).map_err(|e| Failure::Precondition(e.to_string()))?;
            w.flush().map_err(|e| Failure::Precondition(e.to_string()))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose { log::LevelFilter::Debug } else { log::LevelFilter::Off })
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
