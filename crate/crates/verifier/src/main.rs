use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use steenrod_core::milnor::{antipode, coproduct, MilnorElement, MilnorMonomial};
use steenrod_core::module::GradedModule;
use steenrod_core::stable::{self, Limits, Verdict};
use steenrod_core::{parse_algebra, HopfAlgebra};
use steenrod_verifier::jobs::{run_job, Job, JobKind};

#[derive(Parser)]
#[command(name = "steenrod", version, about = "Milnor-basis arithmetic, modules over finite sub-Hopf algebras, and stable-category checks")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two elements, optionally reduced in an algebra.
    Mul {
        a: String,
        b: String,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Coproduct of an element.
    Comul { a: String },
    /// Antipode of an element.
    Antipode { a: String },
    /// Algebra queries.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Module operations. Modules are read from and written as JSON files.
    #[command(subcommand)]
    Module(ModuleCommand),
    /// The stable class σ(m)Ω^l(k) over an algebra.
    Picard {
        #[arg(long, default_value = "A:1")]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        l: i32,
        #[arg(long, default_value_t = Limits::default().max_dim)]
        max_dim: usize,
    },
    /// Run a batch verification job.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum AlgebraCommand {
    Info { algebra: String },
    Basis { algebra: String },
    Topclass { algebra: String },
}

#[derive(Args)]
struct Cap {
    #[arg(long, default_value_t = Limits::default().max_dim)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Check a module file and re-emit it in canonical form.
    Validate { file: PathBuf },
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    Dual { file: PathBuf },
    Restrict {
        file: PathBuf,
        #[arg(long)]
        to: String,
    },
    /// Z-invariants as a module over H//Z.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        sub: String,
    },
    Omega {
        file: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        cap: Cap,
    },
    Minrep { file: PathBuf },
    Isfree { file: PathBuf },
    Endotrivial {
        file: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    StablyIso { a: PathBuf, b: PathBuf },
    /// Free module on generators in the given degrees.
    Free {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        shifts: Vec<i32>,
    },
    /// `H / H·(relators)`.
    Cyclic {
        #[arg(long)]
        algebra: String,
        #[arg(long = "relator")]
        relators: Vec<String>,
    },
    Trivial {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    kind: JobKind,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long, default_value_t = Limits::default().max_dim)]
    max_dim: usize,
    #[arg(long)]
    time_cap_sec: Option<u64>,
}

/// Normal output plus the exit status it implies.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            if !out.text.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn element(text: &str) -> Result<MilnorElement> {
    text.parse().with_context(|| format!("parsing element {text:?}"))
}

fn read_module(path: &Path) -> Result<GradedModule> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GradedModule::from_file_str(&text).with_context(|| format!("loading {}", path.display()))
}

fn emit(m: &GradedModule) -> Outcome {
    Outcome::ok(m.to_file_string())
}

fn predicate(json: bool, key: &str, value: bool) -> Outcome {
    let text = if json {
        json!({ key: value }).to_string()
    } else {
        value.to_string()
    };
    Outcome { text, ok: value }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let json = cli.json;
    Ok(match &cli.command {
        Command::Mul { a, b, algebra } => {
            let p = &element(a)? * &element(b)?;
            let p = match algebra {
                None => p,
                Some(d) => {
                    let h = parse_algebra(d)?;
                    h.to_element(&h.element(&p)?)
                }
            };
            text_or_json(json, "product", p.to_string())
        }
        Command::Comul { a } => {
            let mut terms: Vec<(MilnorMonomial, MilnorMonomial)> = Vec::new();
            for m in element(a)?.iter() {
                for t in coproduct(m) {
                    match terms.iter().position(|x| *x == t) {
                        Some(k) => {
                            terms.remove(k);
                        }
                        None => terms.push(t),
                    }
                }
            }
            let shown: Vec<String> = terms.iter().map(|(x, y)| format!("{x}⊗{y}")).collect();
            let text = if shown.is_empty() { "0".to_string() } else { shown.join(" + ") };
            text_or_json(json, "coproduct", text)
        }
        Command::Antipode { a } => text_or_json(json, "antipode", antipode(&element(a)?).to_string()),
        Command::Algebra(c) => algebra_command(json, c)?,
        Command::Module(c) => module_command(json, c)?,
        Command::Picard { algebra, m, l, max_dim } => {
            let h = parse_algebra(algebra)?;
            let c = stable::picard_element(&h, *m, *l, &Limits { max_dim: *max_dim })?;
            Outcome::ok(c.to_json())
        }
        Command::Verify(v) => {
            let job = Job {
                kind: v.kind,
                n: v.n,
                i: v.i,
                bound: v.bound,
                seed: v.seed,
                max_dim: v.max_dim,
                time_cap: v.time_cap_sec.map(Duration::from_secs),
            };
            let report = run_job(&job)?;
            let text = if json { report.to_json() } else { report.to_text() };
            Outcome { text, ok: report.passed() }
        }
    })
}

fn text_or_json(json: bool, key: &str, text: String) -> Outcome {
    if json {
        Outcome::ok(json!({ key: text }).to_string())
    } else {
        Outcome::ok(text)
    }
}

fn algebra_command(json: bool, c: &AlgebraCommand) -> Result<Outcome> {
    let describe = |h: &HopfAlgebra, i: usize| -> String {
        if h.is_quotient() {
            format!("[{}]", h.monomial(i))
        } else {
            h.monomial(i).to_string()
        }
    };
    Ok(match c {
        AlgebraCommand::Info { algebra } => {
            let h = parse_algebra(algebra)?;
            let top = describe(&h, h.top());
            let dims = h.grading().blocks().iter().map(|b| (b.degree, b.range.len())).collect::<Vec<_>>();
            if json {
                Outcome::ok(
                    json!({
                        "name": h.name(),
                        "profile": h.profile().map(|p| p.to_string()),
                        "dimension": h.dim(),
                        "top_degree": h.top_degree(),
                        "top_class": top,
                        "graded_dims": dims,
                    })
                    .to_string(),
                )
            } else {
                let mut s = format!(
                    "algebra {}\ndimension {}\ntop degree {}\ntop class {}\n",
                    h.name(),
                    h.dim(),
                    h.top_degree(),
                    top
                );
                if let Some(p) = h.profile() {
                    s.push_str(&format!("profile {p}\n"));
                }
                Outcome::ok(s)
            }
        }
        AlgebraCommand::Basis { algebra } => {
            let h = parse_algebra(algebra)?;
            let basis: Vec<(String, i32)> = (0..h.dim()).map(|i| (describe(&h, i), h.degree(i))).collect();
            if json {
                Outcome::ok(serde_json::to_string(&basis)?)
            } else {
                Outcome::ok(basis.iter().map(|(m, d)| format!("{d} {m}\n")).collect())
            }
        }
        AlgebraCommand::Topclass { algebra } => {
            let h = parse_algebra(algebra)?;
            text_or_json(json, "top_class", describe(&h, h.top()))
        }
    })
}

fn module_command(json: bool, c: &ModuleCommand) -> Result<Outcome> {
    Ok(match c {
        ModuleCommand::Validate { file } => {
            let m = read_module(file)?;
            let coverage = m.validate()?;
            eprintln!("valid ({coverage:?}), dimension {}", m.dim());
            emit(&m)
        }
        ModuleCommand::Tensor { a, b, cap } => {
            let (a, b) = (read_module(a)?, read_module(b)?);
            emit(&a.tensor(&b, cap.max_dim)?)
        }
        ModuleCommand::Dual { file } => emit(&read_module(file)?.dual()),
        ModuleCommand::Restrict { file, to } => emit(&read_module(file)?.restrict(&parse_algebra(to)?)?),
        ModuleCommand::Invariants { file, sub } => emit(&read_module(file)?.invariants(&parse_algebra(sub)?)?),
        ModuleCommand::Omega { file, inverse, cap } => {
            let m = read_module(file)?;
            let limits = Limits { max_dim: cap.max_dim };
            emit(&if *inverse {
                stable::omega_inverse(&m, &limits)?
            } else {
                stable::omega(&m, &limits)?
            })
        }
        ModuleCommand::Minrep { file } => emit(&stable::minimal_representative(&read_module(file)?)?),
        ModuleCommand::Isfree { file } => predicate(json, "free", stable::is_free(&read_module(file)?)),
        ModuleCommand::Endotrivial { file, cap } => {
            let m = read_module(file)?;
            predicate(json, "endotrivial", stable::is_endotrivial(&m, &Limits { max_dim: cap.max_dim })?)
        }
        ModuleCommand::StablyIso { a, b } => {
            let v = stable::stably_iso(&read_module(a)?, &read_module(b)?)?;
            let word = match v {
                Verdict::Yes => "yes",
                Verdict::No => "no",
                Verdict::Unknown => "unknown",
            };
            let text = if json {
                json!({ "stably_isomorphic": v }).to_string()
            } else {
                word.to_string()
            };
            Outcome {
                text,
                ok: v == Verdict::Yes,
            }
        }
        ModuleCommand::Free { algebra, shifts } => emit(&GradedModule::free(&parse_algebra(algebra)?, shifts)),
        ModuleCommand::Cyclic { algebra, relators } => {
            let rel = relators.iter().map(|r| element(r)).collect::<Result<Vec<_>>>()?;
            emit(&GradedModule::cyclic(&parse_algebra(algebra)?, &rel)?)
        }
        ModuleCommand::Trivial { algebra } => emit(&GradedModule::trivial(&parse_algebra(algebra)?)),
    })
}
