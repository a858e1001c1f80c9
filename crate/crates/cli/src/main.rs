use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use credal_core::compose::{compose_variant, Variant};
use credal_core::credal::{abs_continuous, is_projective, marginalize, vacuous_extend};
use credal_core::io::{
    emit_credal, emit_empty, emit_halfspaces, emit_trace, parse_credal, Content, Document,
    EmitOptions,
};
use credal_core::polytope::{euclidean_project, minimal_h};
use credal_core::{CredalSet, Distribution, Error, Scope, Variable};

#[derive(Parser)]
#[command(name = "credal", version, about = "Exact composition of credal sets")]
struct Cli {
    /// Write rounded decimals with this many digits instead of exact fractions.
    #[arg(long, global = true, value_name = "N")]
    digits: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose A with B.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the intermediate results as JSON.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Generate candidates from equal-marginal vertex pairs only.
        #[arg(long)]
        verbatim: bool,
    },
    /// Marginalize A onto a subset of its variables.
    Marginalize {
        a: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        onto: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Vacuous extension of A to a larger set of variables.
    Extend {
        a: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        onto: Vec<String>,
        /// Levels of a new variable, as NAME=l1,l2,... (default: binary).
        #[arg(long = "var", value_name = "NAME=LEVELS")]
        vars: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Test a relation between two files; prints true or false.
    Check {
        relation: Relation,
        a: PathBuf,
        b: PathBuf,
    },
    /// Convert A to a vertex or half-space representation.
    Convert {
        a: PathBuf,
        #[arg(long)]
        to: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Nearest point of A to the single vertex in POINTFILE.
    Project {
        point: PathBuf,
        a: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Projective,
    Equal,
    Abscont,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    H,
    V,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {e:#}", error_code(&e));
            ExitCode::from(3)
        }
    }
}

fn error_code(e: &anyhow::Error) -> &'static str {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return err.code();
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return "io";
        }
    }
    "invalid-input"
}

fn read_doc(path: &Path) -> Result<Document> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    parse_credal(&bytes).with_context(|| format!("in {}", path.display()))
}

fn read_set(path: &Path) -> Result<CredalSet> {
    read_doc(path)?
        .into_credal_set()
        .with_context(|| format!("in {}", path.display()))
}

fn read_singleton(path: &Path) -> Result<Distribution> {
    let m = read_set(path)?;
    if !m.is_singleton() {
        bail!("{} must contain exactly one vertex", path.display());
    }
    let p = m.vertices().next().expect("singleton has a vertex");
    Ok(p)
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_var(spec: &str) -> Result<Variable> {
    let (name, levels) = spec
        .split_once('=')
        .ok_or_else(|| anyhow!("--var expects NAME=l1,l2,..., got {spec:?}"))?;
    Ok(Variable::new(
        name,
        levels.split(',').map(String::from).collect(),
    )?)
}

fn run(cli: Cli) -> Result<bool> {
    let opts = cli
        .digits
        .map_or(EmitOptions::exact(), EmitOptions::rounded);
    match cli.command {
        Command::Compose {
            a,
            b,
            output,
            trace,
            verbatim,
        } => {
            let (m1, m2) = (read_set(&a)?, read_set(&b)?);
            let variant = if verbatim {
                Variant::Verbatim
            } else {
                Variant::Symmetric
            };
            let t = compose_variant(&m1, &m2, variant)?;
            if let Some(path) = trace {
                let text = emit_trace(&t, &m1, &m2, opts)?;
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            write_out(output.as_deref(), &emit_credal(&t.result, opts))?;
        }
        Command::Marginalize { a, onto, output } => {
            let m = read_set(&a)?;
            let names: Vec<&str> = onto.iter().map(String::as_str).collect();
            let target = m.scope().select(&names)?;
            write_out(
                output.as_deref(),
                &emit_credal(&marginalize(&m, &target)?, opts),
            )?;
        }
        Command::Extend {
            a,
            onto,
            vars,
            output,
        } => {
            let doc = read_doc(&a)?;
            let extra = vars
                .iter()
                .map(|s| parse_var(s))
                .collect::<Result<Vec<_>>>()?;
            let variables = onto
                .iter()
                .map(|name| {
                    extra
                        .iter()
                        .find(|v| v.name() == name)
                        .or_else(|| doc.variable(name))
                        .cloned()
                        .unwrap_or_else(|| Variable::binary(name))
                })
                .collect();
            let target = Scope::new(variables)?;
            let m = doc.into_credal_set()?;
            write_out(
                output.as_deref(),
                &emit_credal(&vacuous_extend(&m, &target)?, opts),
            )?;
        }
        Command::Check { relation, a, b } => {
            let holds = match relation {
                Relation::Projective => is_projective(&read_set(&a)?, &read_set(&b)?)?,
                Relation::Equal => read_set(&a)?.set_eq(&read_set(&b)?)?,
                Relation::Abscont => abs_continuous(&read_singleton(&a)?, &read_singleton(&b)?)?,
            };
            println!("{holds}");
            return Ok(holds);
        }
        Command::Convert { a, to, output } => {
            let doc = read_doc(&a)?;
            let scope = doc.scope.clone();
            if matches!(doc.content, Content::Empty) {
                return write_out(output.as_deref(), &emit_empty(&scope)).map(|_| true);
            }
            let text = match doc.into_credal_set() {
                Err(Error::Empty) => emit_empty(&scope),
                Err(e) => return Err(e.into()),
                Ok(m) => match to {
                    Target::V => emit_credal(&m, opts),
                    Target::H => emit_halfspaces(&scope, &minimal_h(&m.to_h())?, opts),
                },
            };
            write_out(output.as_deref(), &text)?;
        }
        Command::Project { point, a, output } => {
            let m = read_set(&a)?;
            let p = CredalSet::singleton(read_singleton(&point)?).reorder(m.scope())?;
            let nearest = euclidean_project(&p.hull().points()[0], m.hull())?;
            let q = Distribution::new(m.scope().clone(), nearest)?;
            write_out(
                output.as_deref(),
                &emit_credal(&CredalSet::singleton(q), opts),
            )?;
        }
    }
    Ok(true)
}
