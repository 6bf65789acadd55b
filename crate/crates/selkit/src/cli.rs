//! The `selkit` command line.
//!
//! Exit codes: 0 success or consistent, 1 inconsistent (EL¬) or not
//! satisfied (`eval`), 2 unknown (SEL search bound reached), 64 usage error,
//! 65 malformed or unsuitable input, 66 unreadable input, 74 unwritable
//! output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use selkit_core::elneg::{decide_elneg, eliminate_types, ElnegVerdict};
use selkit_core::normalform::normalize;
use selkit_core::reduction::{reduce_with, Embedding};
use selkit_core::selsearch::{find_model_with, SearchBudget, SelVerdict, StopReason};
use selkit_core::semantics::{trivial_el_model, Interpretation, ViolationDetail};
use selkit_core::Ontology;

use crate::gen::{gen_random, GenFragment, GenParams};
use crate::model::{read_model, write_model};
use crate::text::{parse_ontology_with, print_ontology, Names};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INCONSISTENT: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_NO_INPUT: u8 = 66;
pub const EXIT_IO: u8 = 74;

#[derive(Debug, Parser)]
#[command(name = "selkit", version, about = "Reasoning for EL, EL with atomic negation and Statistical EL")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an ontology and summarize it
    Parse { ontology: PathBuf },
    /// Print an ontology in canonical form
    Print { ontology: PathBuf },
    /// Print the size of an ontology
    Size { ontology: PathBuf },
    /// Rewrite an EL or EL¬ ontology into normal form
    Normalize {
        ontology: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the definitions of the introduced names
        #[arg(long)]
        names: Option<PathBuf>,
    },
    /// Build the one-element model of an EL ontology
    CheckEl {
        ontology: PathBuf,
        #[arg(long)]
        emit_model: Option<PathBuf>,
    },
    /// Decide consistency of an EL¬ ontology
    CheckElneg {
        ontology: PathBuf,
        #[arg(long)]
        emit_model: Option<PathBuf>,
    },
    /// Search for a model of a Statistical EL ontology up to a domain size
    CheckSel {
        ontology: PathBuf,
        #[arg(long)]
        max_domain: usize,
        /// Cap on search nodes
        #[arg(long)]
        nodes: Option<u64>,
        /// Wall-clock limit in seconds
        #[arg(long)]
        time: Option<f64>,
        #[arg(long)]
        emit_model: Option<PathBuf>,
    },
    /// Reduce an EL¬ ontology to a Statistical EL ontology
    Reduce {
        ontology: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the decorated-name table
        #[arg(long)]
        sig: Option<PathBuf>,
        /// Write translated GCIs as [1,1] conditionals
        #[arg(long)]
        as_conditionals: bool,
    },
    /// Turn a model of an EL¬ ontology into a model of its reduction
    LiftModel {
        model: PathBuf,
        ontology: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a model of the reduction back into a model of the EL¬ ontology
    ProjectModel {
        model: PathBuf,
        ontology: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a model against an ontology
    Eval { model: PathBuf, ontology: PathBuf },
    /// Generate a random ontology
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        concepts: usize,
        #[arg(long, default_value_t = 1)]
        roles: usize,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        axioms: u64,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = FragmentArg::Elneg)]
        fragment: FragmentArg,
        #[arg(long)]
        normal_form: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FragmentArg {
    El,
    Elneg,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        let code = match e {
            crate::Error::Io { .. } => EXIT_IO,
            _ => EXIT_DATA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<selkit_core::Error> for Failure {
    fn from(e: selkit_core::Error) -> Self {
        crate::Error::from(e).into()
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_NO_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

/// `file:line:column: message` for syntax errors, `file: message` otherwise.
fn located(path: &Path, e: crate::Error) -> Failure {
    let sep = if matches!(e, crate::Error::Syntax { .. }) { ":" } else { ": " };
    Failure {
        code: EXIT_DATA,
        message: format!("{}{sep}{e}", path.display()),
    }
}

fn load_ontology(path: &Path, names: Names) -> Result<Ontology, Failure> {
    let text = read_text(path)?;
    parse_ontology_with(&text, names).map_err(|e| located(path, e))
}

fn load_model(path: &Path) -> Result<Interpretation, Failure> {
    let text = read_text(path)?;
    read_model(&text).map_err(|e| located(path, e))
}

fn store(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content).map_err(|source| {
        crate::Error::Io {
            path: path.to_path_buf(),
            source,
        }
        .into()
    })
}

/// Writes `content` to `path`, or to standard output without one.
fn emit(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => store(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn violations_report(m: &Interpretation, o: &Ontology) -> (bool, String) {
    let verdict = m.satisfies_ontology(o);
    let mut out = format!("satisfied: {}\n", yes_no(verdict.satisfied()));
    for v in &verdict.violations {
        let ax = &o.axioms()[v.axiom];
        match v.detail {
            ViolationDetail::Gci { uncovered, .. } => {
                writeln!(out, "violation: axiom {} ({ax}): {uncovered} element(s) outside the right-hand side", v.axiom + 1)
            }
            ViolationDetail::Conditional { joint, given } => {
                writeln!(out, "violation: axiom {} ({ax}): ratio {joint}/{given}", v.axiom + 1)
            }
        }
        .unwrap();
    }
    (verdict.satisfied(), out)
}

fn execute(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Parse { ontology } => {
            let o = load_ontology(&ontology, Names::Generated)?;
            let sig = o.signature();
            let join = |it: Vec<String>| it.join(" ");
            println!("axioms: {}", o.len());
            println!("fragment: {}", o.fragment());
            println!("size: {}", o.size());
            println!("concepts: {}", join(sig.concepts.iter().map(|c| c.to_string()).collect()));
            println!("roles: {}", join(sig.roles.iter().map(|r| r.to_string()).collect()));
        }
        Command::Print { ontology } => {
            print!("{}", print_ontology(&load_ontology(&ontology, Names::Generated)?));
        }
        Command::Size { ontology } => {
            println!("size: {}", load_ontology(&ontology, Names::Generated)?.size());
        }
        Command::Normalize { ontology, output, names } => {
            let o = load_ontology(&ontology, Names::Strict)?;
            let (nf, map) = normalize(&o)?;
            emit(output.as_deref(), &print_ontology(&nf))?;
            if let Some(path) = names {
                let text: String = map.iter().map(|(n, c)| format!("{n} = {c}\n")).collect();
                store(&path, &text)?;
            }
        }
        Command::CheckEl { ontology, emit_model } => {
            let o = load_ontology(&ontology, Names::Generated)?;
            let m = trivial_el_model(&o)?;
            println!("consistent: yes");
            println!("domain_size: {}", m.size());
            if let Some(path) = emit_model {
                store(&path, &write_model(&m))?;
            }
        }
        Command::CheckElneg { ontology, emit_model } => {
            let o = load_ontology(&ontology, Names::Strict)?;
            let (nf, _) = normalize(&o)?;
            let elim = eliminate_types(&nf)?;
            println!("types: {}", elim.types.len());
            println!("rounds: {}", elim.rounds());
            match decide_elneg(&o)? {
                ElnegVerdict::Consistent(m) => {
                    println!("consistent: yes");
                    println!("domain_size: {}", m.size());
                    if let Some(path) = emit_model {
                        store(&path, &write_model(&m))?;
                    }
                }
                ElnegVerdict::Inconsistent => {
                    println!("consistent: no");
                    return Ok(EXIT_INCONSISTENT);
                }
            }
        }
        Command::CheckSel {
            ontology,
            max_domain,
            nodes,
            time,
            emit_model,
        } => {
            let o = load_ontology(&ontology, Names::Generated)?;
            let mut budget = SearchBudget::new(max_domain);
            if let Some(n) = nodes {
                budget = budget.with_nodes(n);
            }
            if let Some(secs) = time {
                let limit = Duration::try_from_secs_f64(secs).map_err(|e| Failure {
                    code: EXIT_USAGE,
                    message: format!("--time: {e}"),
                })?;
                budget.time_ceiling = Some(limit);
            }
            let start = Instant::now();
            let ceiling = budget.time_ceiling;
            let mut out_of_time = || ceiling.is_some_and(|c| start.elapsed() >= c);
            let outcome = find_model_with(&o, budget, &mut out_of_time)?;
            println!("nodes: {}", outcome.nodes);
            match outcome.verdict {
                SelVerdict::Found(m) => {
                    println!("status: found");
                    println!("domain_size: {}", m.size());
                    let text = write_model(&m);
                    match emit_model {
                        Some(path) => store(&path, &text)?,
                        None => print!("{text}"),
                    }
                }
                SelVerdict::NoModelUpTo(n) => {
                    println!("status: unknown");
                    println!("refuted_up_to: {n}");
                    println!("no model with at most {n} elements; larger models were not searched");
                    return Ok(EXIT_UNKNOWN);
                }
                SelVerdict::BudgetExhausted(p) => {
                    let reason = match p.reason {
                        StopReason::NodeCeiling => "node ceiling",
                        StopReason::Interrupted => "time limit",
                    };
                    println!("status: unknown");
                    println!("refuted_up_to: {}", p.refuted_up_to);
                    println!("stopped_at: {}", p.domain_size);
                    println!("reason: {reason}");
                    return Ok(EXIT_UNKNOWN);
                }
            }
        }
        Command::Reduce {
            ontology,
            output,
            sig,
            as_conditionals,
        } => {
            let o = load_ontology(&ontology, Names::Strict)?;
            let embedding = if as_conditionals {
                Embedding::Conditional
            } else {
                Embedding::Gci
            };
            let red = reduce_with(&o, embedding)?;
            if let Some(path) = sig {
                let s = &red.sig;
                let mut text = format!("{} = {} {}\n", s.marker(), s.real_plus(), s.real_minus());
                for a in s.base() {
                    writeln!(text, "{a} = {} {}", s.plus(a), s.minus(a)).unwrap();
                }
                for (n, c) in red.names.iter() {
                    writeln!(text, "# {n} abbreviates {c}").unwrap();
                }
                store(&path, &text)?;
            }
            let printed = print_ontology(&red.o_red);
            match output {
                Some(path) => {
                    store(&path, &printed)?;
                    println!("source_size: {}", red.source.size());
                    println!("reduced_axioms: {}", red.o_red.len());
                    println!("reduced_size: {}", red.o_red.size());
                }
                None => print!("{printed}"),
            }
        }
        Command::LiftModel { model, ontology, output } => {
            let o = load_ontology(&ontology, Names::Strict)?;
            let i = load_model(&model)?;
            let red = reduce_with(&o, Embedding::Gci)?;
            if let Some(axiom) = i.satisfies_ontology(&o).first_violation() {
                return Err(selkit_core::Error::PreconditionViolated { axiom, against: "source" }.into());
            }
            let j = red.lift(&red.names.extend_model(&i))?;
            emit(output.as_deref(), &write_model(&j))?;
            if output.is_some() {
                println!("domain_size: {}", j.size());
                println!("verified: yes");
            }
        }
        Command::ProjectModel { model, ontology, output } => {
            let o = load_ontology(&ontology, Names::Strict)?;
            let j = load_model(&model)?;
            let red = reduce_with(&o, Embedding::Gci)?;
            let i = red.project(&j)?.restrict(&o.signature());
            if let Some(axiom) = i.satisfies_ontology(&o).first_violation() {
                return Err(selkit_core::Error::ConstructionFailed { axiom, against: "input" }.into());
            }
            emit(output.as_deref(), &write_model(&i))?;
            if output.is_some() {
                println!("domain_size: {}", i.size());
                println!("verified: yes");
            }
        }
        Command::Eval { model, ontology } => {
            let o = load_ontology(&ontology, Names::Generated)?;
            let m = load_model(&model)?;
            let (ok, report) = violations_report(&m, &o);
            print!("{report}");
            if !ok {
                return Ok(EXIT_INCONSISTENT);
            }
        }
        Command::Gen {
            seed,
            concepts,
            roles,
            axioms,
            depth,
            fragment,
            normal_form,
            output,
        } => {
            let p = GenParams {
                seed,
                n_concepts: concepts,
                n_roles: roles,
                n_axioms: axioms as usize,
                max_depth: depth,
                fragment: match fragment {
                    FragmentArg::El => GenFragment::El,
                    FragmentArg::Elneg => GenFragment::ElNeg,
                },
                normal_form,
            };
            emit(output.as_deref(), &print_ontology(&gen_random(&p)))?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the subcommand, returning
/// the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
