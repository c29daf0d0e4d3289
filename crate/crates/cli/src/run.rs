//! Command-line definitions and dispatch.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use segalkit::adjunction::{k_shriek, k_upper_exact, k_upper_truncated, t_shriek, t_upper};
use segalkit::bisimplicial::{diagonal, disc_nerve, generator_f, generator_g, generator_i};
use segalkit::homology::integral_homology;
use segalkit::homotopy::core;
use segalkit::lifting::{
    boundaries, has_rlp, horns, inner_horns, is_kan, is_quasi_category, is_trivial_fibration, Generator,
};
use segalkit::nerve::Nerve;
use segalkit::presheaf::{
    adiagram_of_bisimplicial, check_adiagram, presheaf_to_bisimplicial, sectionwise_apply, SectionFunctor,
    Sectionwise,
};
use segalkit::segal::{check_complete, check_segal};
use segalkit::standard::{boundary, horn, standard, to_terminal};
use segalkit::suites::{run_suite, SUITES};
use segalkit::weq::Strategy;
use segalkit::{FiniteCategory, SimplicialMap, Status, Truncated, Verdict};

use crate::builtin;
use crate::document::{parse, serialize, Document, Truncation};
use crate::report::{Report, SuiteRecord, VerdictRecord};

pub const USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "segalkit", version, about = "Finite simplicial and bisimplicial sets, nerves and Segal conditions")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Include wall-clock time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a standard object as a document.
    Build(BuildArgs),
    /// Apply a construction to a document.
    Apply(ApplyArgs),
    /// Run a checker on a document.
    Check(CheckArgs),
    /// Corpus suites and builtin inputs.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    Simplex,
    Boundary,
    Horn,
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    #[value(name = "I")]
    I,
    Nerve,
    Chaotic,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    pub kind: BuildKind,
    /// Dimensions, or a category name for `nerve`.
    pub args: Vec<String>,
    /// Truncation for nerves.
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Category document for `nerve`.
    #[arg(long)]
    pub input: Option<String>,
    /// Build `Disc(B C)` instead of `B C`.
    #[arg(long)]
    pub disc: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    KShriek,
    KUpper,
    TShriek,
    TUpper,
    #[value(name = "core-J")]
    CoreJ,
    Diagonal,
    Homology,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    pub construction: Construction,
    #[arg(long)]
    pub input: String,
    #[arg(long)]
    pub max_dim: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Checker {
    Kan,
    Qcat,
    TrivFib,
    Segal,
    Complete,
    Lifting,
    Adiagram,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Horns,
    InnerHorns,
    Boundaries,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub checker: Checker,
    #[arg(long)]
    pub input: String,
    #[arg(long, value_parser = parse_strategy)]
    pub strategy: Option<Strategy>,
    /// Dimension bound for lifting problems and Segal degrees.
    #[arg(long, default_value_t = 3)]
    pub bound: usize,
    /// Generating family for `check lifting`.
    #[arg(long, value_enum, default_value = "horns")]
    pub family: Family,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

#[derive(Subcommand, Debug)]
pub enum CorpusCommand {
    /// Run a named suite, or `all`.
    Run {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List suites and builtin inputs.
    List,
}

/// Everything a command produces: standard output and an exit status.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: USAGE }
    }

    fn failed(msg: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: 1 }
    }

    fn document(doc: &Document) -> Self {
        Outcome { stdout: serialize(doc), stderr: String::new(), code: 0 }
    }
}

pub fn run(cli: &Cli, echo: &str) -> Outcome {
    let start = Instant::now();
    let result = match &cli.command {
        Command::Build(a) => build(a),
        Command::Apply(a) => apply(a, echo),
        Command::Check(a) => check(a, echo),
        Command::Corpus(c) => corpus(c, echo),
    };
    match result {
        Ok(Produced::Document(d)) => {
            let mut out = Outcome::document(&d);
            // documents stay byte-identical; timing goes to stderr
            if cli.timing {
                out.stderr = format!("elapsed {} ms\n", start.elapsed().as_millis());
            }
            out
        }
        Ok(Produced::Report(mut r)) => {
            if cli.timing {
                r.elapsed_ms = Some(start.elapsed().as_millis());
            }
            let stdout = match cli.format {
                Format::Text => r.render_text(),
                Format::Machine => r.render_machine(),
            };
            Outcome { stdout, stderr: String::new(), code: r.exit_code() }
        }
        Err(o) => o,
    }
}

enum Produced {
    Document(Document),
    Report(Report),
}

type Step<T> = Result<T, Outcome>;

fn read_input(name: &str) -> Step<Document> {
    let path = Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{name}: {e}")))?;
        return parse(&text).map_err(|e| Outcome::usage(format!("{name}: {e}")));
    }
    builtin::lookup(name).ok_or_else(|| Outcome::usage(format!("{name}: no such file or builtin input")))
}

fn need_max_dim(m: Option<usize>, what: &str) -> Step<usize> {
    m.ok_or_else(|| Outcome::usage(format!("{what} needs an explicit --max-dim")))
}

fn wrong_kind(doc: &Document, what: &str) -> Outcome {
    Outcome::usage(format!("{what} does not accept a {} document", doc.kind()))
}

fn dims(args: &[String], count: usize, what: &str) -> Step<Vec<usize>> {
    if args.len() != count {
        return Err(Outcome::usage(format!("{what} takes {count} argument(s)")));
    }
    args.iter()
        .map(|a| a.parse().map_err(|_| Outcome::usage(format!("{what}: `{a}` is not a number"))))
        .collect()
}

fn lib<T>(r: segalkit::Result<T>) -> Step<T> {
    r.map_err(|e| Outcome::failed(e.to_string()))
}

fn build(a: &BuildArgs) -> Step<Produced> {
    let simplicial = |x| Ok(Produced::Document(Document::Simplicial(Arc::new(x), None)));
    match a.kind {
        BuildKind::Simplex => simplicial(standard(dims(&a.args, 1, "simplex")?[0])),
        BuildKind::Boundary => simplicial(lib(boundary(dims(&a.args, 1, "boundary")?[0]))?),
        BuildKind::Horn => {
            let d = dims(&a.args, 2, "horn")?;
            simplicial(lib(horn(d[0], d[1]))?)
        }
        BuildKind::F => {
            let k = dims(&a.args, 1, "F")?[0];
            Ok(Produced::Document(Document::Bisimplicial(Arc::new(generator_f(k)), None)))
        }
        BuildKind::G => {
            let n = dims(&a.args, 1, "G")?[0];
            Ok(Produced::Document(Document::Bisimplicial(generator_g(n).source().clone(), None)))
        }
        BuildKind::I => {
            let n = dims(&a.args, 1, "I")?[0];
            let (t, _) = generator_i(n);
            Ok(Produced::Document(truncated_bisimplicial(t)))
        }
        BuildKind::Nerve | BuildKind::Chaotic => {
            let n = need_max_dim(a.max_dim, "nerve")?;
            let c = match (a.kind, &a.input) {
                (BuildKind::Chaotic, _) => FiniteCategory::chaotic(dims(&a.args, 1, "chaotic")?[0]),
                (_, Some(input)) => match read_input(input)? {
                    Document::Category(c) => c,
                    other => return Err(wrong_kind(&other, "nerve")),
                },
                (_, None) => {
                    let [name] = a.args.as_slice() else {
                        return Err(Outcome::usage("nerve takes a category name or --input"));
                    };
                    match builtin::lookup(name) {
                        Some(Document::Category(c)) => c,
                        _ => return Err(Outcome::usage(format!("{name}: not a builtin category"))),
                    }
                }
            };
            if a.disc {
                return Ok(Produced::Document(truncated_bisimplicial(disc_nerve(&c, n))));
            }
            let nv = Nerve::new(&Arc::new(c), n);
            let t = Truncation { bound: n, exact: nv.exact };
            Ok(Produced::Document(Document::Simplicial(nv.complex, Some(t))))
        }
    }
}

fn truncated_bisimplicial(t: Truncated<segalkit::BisimplicialSet>) -> Document {
    Document::Bisimplicial(Arc::new(t.value), Some(Truncation { bound: t.bound, exact: t.exact }))
}

fn simplicial_doc(t: Truncated<Arc<segalkit::SimplicialSet>>) -> Document {
    Document::Simplicial(t.value, Some(Truncation { bound: t.bound, exact: t.exact }))
}

fn homology_values(x: &segalkit::SimplicialSet) -> Vec<(String, String)> {
    integral_homology(x).iter().enumerate().map(|(n, h)| (format!("H{n}"), h.to_string())).collect()
}

fn apply(a: &ApplyArgs, echo: &str) -> Step<Produced> {
    let doc = read_input(&a.input)?;
    let name = format!("{:?}", a.construction).to_lowercase();
    if let Document::Presheaf(p) = &doc {
        let functor = match a.construction {
            Construction::KShriek => SectionFunctor::KShriek { bound: need_max_dim(a.max_dim, "k-shriek")? },
            Construction::KUpper => SectionFunctor::KUpper { bound: need_max_dim(a.max_dim, "k-upper")? },
            Construction::CoreJ => SectionFunctor::CoreJ,
            Construction::Homology => SectionFunctor::Homology,
            _ => return Err(wrong_kind(&doc, &name)),
        };
        return match lib(sectionwise_apply(p, &functor))? {
            Sectionwise::Presheaf(q) => Ok(Produced::Document(Document::Presheaf(q))),
            Sectionwise::Values(v) => {
                let mut r = Report::new(echo.to_string());
                r.values = p.index.objects().iter().cloned().zip(v).collect();
                Ok(Produced::Report(r))
            }
        };
    }
    let out = match (a.construction, &doc) {
        (Construction::KShriek, Document::Simplicial(x, _)) => {
            simplicial_doc(k_shriek(x, need_max_dim(a.max_dim, "k-shriek")?).value)
        }
        (Construction::KUpper, Document::Simplicial(x, _)) => {
            simplicial_doc(k_upper_truncated(x, need_max_dim(a.max_dim, "k-upper")?).value)
        }
        (Construction::KUpper, Document::Category(c)) => {
            let nv = Nerve::new(&Arc::new(c.clone()), need_max_dim(a.max_dim, "k-upper")?);
            simplicial_doc(k_upper_exact(&nv).value)
        }
        (Construction::TShriek, Document::Bisimplicial(x, _)) => {
            let t = t_shriek(x, need_max_dim(a.max_dim, "t-shriek")?);
            Document::Simplicial(Arc::new(t.value), Some(Truncation { bound: t.bound, exact: t.exact }))
        }
        (Construction::TUpper, Document::Category(c)) => {
            let n = need_max_dim(a.max_dim, "t-upper")?;
            truncated_bisimplicial(t_upper(c, n, n))
        }
        (Construction::CoreJ, Document::Simplicial(x, t)) => Document::Simplicial(Arc::new(lib(core(x))?), *t),
        (Construction::Diagonal, Document::Bisimplicial(x, t)) => Document::Simplicial(Arc::new(diagonal(x)), *t),
        (Construction::Homology, Document::Simplicial(x, _)) => {
            let mut r = Report::new(echo.to_string());
            r.values = homology_values(x);
            return Ok(Produced::Report(r));
        }
        _ => return Err(wrong_kind(&doc, &name)),
    };
    Ok(Produced::Document(out))
}

/// Truncation to pass to lifting checks: only non-exact truncations limit them.
fn probe_limit(t: Option<Truncation>) -> Option<usize> {
    t.filter(|t| !t.exact).map(|t| t.bound)
}

fn as_map(doc: &Document, what: &str) -> Step<(SimplicialMap, Option<usize>)> {
    match doc {
        Document::Map(m) => Ok((m.clone(), None)),
        Document::Simplicial(x, t) => Ok((to_terminal(x), probe_limit(*t))),
        other => Err(wrong_kind(other, what)),
    }
}

fn as_bisimplicial(doc: &Document, what: &str) -> Step<Truncated<segalkit::BisimplicialSet>> {
    match doc {
        Document::Bisimplicial(x, t) => Ok(Truncated {
            value: (**x).clone(),
            bound: t.map_or(x.max_degree()[0], |t| t.bound),
            exact: t.is_none_or(|t| t.exact),
        }),
        Document::Presheaf(p) => {
            let x = lib(presheaf_to_bisimplicial(p))?;
            let bound = x.max_degree()[0];
            Ok(Truncated { value: x, bound, exact: false })
        }
        other => Err(wrong_kind(other, what)),
    }
}

fn check(a: &CheckArgs, echo: &str) -> Step<Produced> {
    let doc = read_input(&a.input)?;
    let name = format!("{:?}", a.checker).to_lowercase();
    let strategy = a.strategy.unwrap_or(Strategy::Iso);
    let verdict: Verdict = match a.checker {
        Checker::Kan | Checker::Qcat => {
            let Document::Simplicial(x, t) = &doc else { return Err(wrong_kind(&doc, &name)) };
            if a.checker == Checker::Kan {
                is_kan(x, a.bound, probe_limit(*t))
            } else {
                is_quasi_category(x, a.bound, probe_limit(*t))
            }
        }
        Checker::TrivFib => {
            let (f, t) = as_map(&doc, &name)?;
            is_trivial_fibration(&f, a.bound, t)
        }
        Checker::Lifting => {
            let (f, t) = as_map(&doc, &name)?;
            let family: Vec<Generator> = match a.family {
                Family::Horns => horns(a.bound),
                Family::InnerHorns => inner_horns(a.bound),
                Family::Boundaries => boundaries(a.bound),
            };
            has_rlp(&f, &family, a.bound, t)
        }
        Checker::Segal => check_segal(&as_bisimplicial(&doc, &name)?, strategy, a.bound),
        Checker::Complete => check_complete(&as_bisimplicial(&doc, &name)?, strategy, a.bound),
        Checker::Adiagram => {
            let x = as_bisimplicial(&doc, &name)?;
            let n = a.bound.min(x.bound.max(x.value.max_degree()[0]));
            let d = adiagram_of_bisimplicial(&x.value, n);
            match check_adiagram(&d) {
                Ok(()) => Verdict::new(Status::Holds, "adiagram", n, "all laws hold"),
                Err(v) => Verdict::new(Status::Fails, "adiagram", n, v.to_string()),
            }
        }
    };
    let mut r = Report::new(echo.to_string());
    r.verdicts.push(VerdictRecord::new(&name, &verdict));
    Ok(Produced::Report(r))
}

fn corpus(c: &CorpusCommand, echo: &str) -> Step<Produced> {
    match c {
        CorpusCommand::List => {
            let mut r = Report::new(echo.to_string());
            r.values.extend(SUITES.iter().map(|s| ("suite".to_string(), s.to_string())));
            r.values.extend(builtin::names().into_iter().map(|n| ("input".to_string(), n)));
            Ok(Produced::Report(r))
        }
        CorpusCommand::Run { suite, jobs } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(Outcome::usage(format!("unknown suite {suite}; one of {} or all", SUITES.join(", "))));
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads((*jobs).max(1))
                .build()
                .map_err(|e| Outcome::failed(e.to_string()))?;
            let reports: Vec<_> = pool.install(|| names.par_iter().map(|n| run_suite(n).expect("known suite")).collect());
            let mut r = Report::new(echo.to_string());
            r.suites = reports
                .into_iter()
                .map(|s| SuiteRecord {
                    suite: s.name.to_string(),
                    passed: s.passed,
                    checked: s.checked,
                    failures: s.failures,
                    notes: s.notes,
                })
                .collect();
            Ok(Produced::Report(r))
        }
    }
}
