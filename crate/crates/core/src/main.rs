//! Command-line front end. Every subcommand prints one JSON document and
//! exits nonzero when an exact check fails.

use std::io::Write;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cn_mkdv::arith::Rat;
use cn_mkdv::generation::{audit_generation, generate_family, is_fertile, is_generic, max_residual, GenSequence};
use cn_mkdv::json::{
    CriticalJson, FlowJson, KdvJson, MatrixDumpJson, NamedMatrix, OperJson, CellFlowJson, TupleJson,
};
use cn_mkdv::lie::{generator, lambda_power, GenKind};
use cn_mkdv::miura::mu_j;
use cn_mkdv::verify::{kdv_check, mkdv_field, oper_at, route_comparison, verify_cell_flow};

/// Largest Bethe residual accepted by `verify-critical`.
const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "cn-mkdv", version, about = "Critical points, Miura opers and mKdV flows of type C_n^(1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FamilyArgs {
    /// Rank n >= 2.
    #[arg(long)]
    n: usize,
    /// Generating directions, comma separated; empty for the trivial tuple.
    #[arg(long = "J", value_delimiter = ',', num_args = 0..)]
    js: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the tuple of a degree-increasing sequence.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Parameter values such as `1/2,3`; symbolic when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Option<Vec<Rat>>,
    },
    /// Exact fertility and numeric Bethe residuals at a point.
    VerifyCritical {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<Rat>,
    },
    /// The Miura oper of the family, symbolic or at a point.
    Miura {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Option<Vec<Rat>>,
    },
    /// The r-th mKdV vector field at a point.
    Flow {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<Rat>,
        #[arg(long)]
        r: u32,
    },
    /// Extract the polynomial vector field realizing the r-th flow.
    #[command(name = "check-theorem81", visible_alias = "check-cell-flow")]
    CheckCellFlow {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        r: u32,
        /// Zero-field samples when r exceeds twice the sequence length.
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Compare the tangent Miura image of the flow with the KdV right-hand side.
    KdvCheck {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<Rat>,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        i: usize,
    },
    /// Print the shift element powers or the Chevalley generators.
    DumpMatrices {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: DumpKind,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        r: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpKind {
    Lambda,
    Generators,
}

fn emit<T: Serialize>(doc: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, doc)?;
    writeln!(out)?;
    Ok(())
}

fn family_of(args: &FamilyArgs) -> Result<cn_mkdv::generation::GeneratedFamily> {
    let seq = GenSequence::new(args.n, &args.js).with_context(|| format!("sequence {:?}", args.js))?;
    Ok(generate_family(&seq)?)
}

fn check_point(m: usize, c: &[Rat]) -> Result<()> {
    ensure!(c.len() == m, "expected {m} parameter values, got {}", c.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { family, c } => {
            let fam = family_of(&family)?;
            if let Some(c) = &c {
                check_point(fam.m(), c)?;
            }
            let exact = audit_generation(&fam)?.iter().all(|s| s.passed());
            emit(&TupleJson::new(&fam, c.as_deref(), exact))?;
            ensure!(exact, "a generation step failed its Wronskian check");
        }
        Command::VerifyCritical { family, c } => {
            let fam = family_of(&family)?;
            check_point(fam.m(), &c)?;
            let y = fam.tuple().specialize(&c);
            let fertile = is_fertile(&y)?;
            let residual = max_residual(&y)?;
            emit(&CriticalJson {
                n: family.n,
                js: family.js.clone(),
                c: c.clone(),
                degrees: y.degrees().0,
                fertile,
                generic: is_generic(&y),
                max_residual: residual,
                residual_tolerance: RESIDUAL_TOLERANCE,
            })?;
            ensure!(fertile, "tuple is not fertile");
        }
        Command::Miura { family, c } => {
            let fam = family_of(&family)?;
            let (v, routes_agree) = match &c {
                Some(c) => {
                    check_point(fam.m(), c)?;
                    let l = oper_at(&fam, c)?;
                    (l.v().to_vec(), Some(route_comparison(&fam, c)?.all_equal()))
                }
                None => (mu_j(&fam)?.v().to_vec(), None),
            };
            emit(&OperJson {
                n: family.n,
                js: family.js.clone(),
                c,
                v: v.iter().map(|e| e.to_string()).collect(),
                routes_agree,
            })?;
            ensure!(routes_agree != Some(false), "the three constructions of the oper disagree");
        }
        Command::Flow { family, c, r } => {
            let fam = family_of(&family)?;
            check_point(fam.m(), &c)?;
            let field = mkdv_field(&fam, &c, r)?;
            let doc = FlowJson::from(&field);
            emit(&doc)?;
            ensure!(doc.tangent, "flow field is not tangent to the Miura locus");
        }
        Command::CheckCellFlow { family, r, samples, seed } => {
            let fam = family_of(&family)?;
            if fam.m() == 0 {
                bail!("empty generating sequence");
            }
            let rep = verify_cell_flow(&fam, r, samples, seed)?;
            emit(&CellFlowJson::new(family.n, &rep))?;
            ensure!(rep.verified, "flow is not realized by a polynomial vector field");
        }
        Command::KdvCheck { family, c, r, i } => {
            let fam = family_of(&family)?;
            check_point(fam.m(), &c)?;
            let rep = kdv_check(&fam, &c, r, i)?;
            emit(&KdvJson::new(family.n, &family.js, &c, &rep))?;
            ensure!(rep.equal, "Miura map does not intertwine the flows");
        }
        Command::DumpMatrices { n, what, r } => {
            let (what, r, matrices) = match what {
                DumpKind::Lambda => {
                    let m = lambda_power(r, n)?;
                    ("lambda", Some(r), vec![NamedMatrix { name: format!("Lambda^{r}"), entries: m.to_dump() }])
                }
                DumpKind::Generators => {
                    let mut out = Vec::new();
                    for i in 0..=n {
                        for (kind, name) in [(GenKind::E, "e"), (GenKind::F, "f"), (GenKind::H, "h")] {
                            let m = generator(kind, i, n)?;
                            out.push(NamedMatrix { name: format!("{name}_{i}"), entries: m.to_dump() });
                        }
                    }
                    ("generators", None, out)
                }
            };
            emit(&MatrixDumpJson { n, what: what.into(), r, matrices })?;
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run(Cli::parse())
}
