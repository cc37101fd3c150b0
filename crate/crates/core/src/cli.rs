//! The `ars` command line. Lives in the library so it can be driven from
//! tests without spawning a process.
//!
//! Exit codes: 0 success or property holds, 1 property fails or a
//! counterexample was found, 2 usage or parse error, 3 precondition
//! violation, 4 fuel exhausted. Failures print one line on stderr:
//! `error: <kind>: <reason>`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::catalog::{fixture, fixtures, verify_catalog, Infinite, System, FIXTURE_NAMES};
use crate::document::{to_dot, ArsDocument};
use crate::error::{Error, Precondition};
use crate::lambda::{beta_step_enum, is_beta_nf, normalize, parse_term, NormalizeResult, Strategy};
use crate::properties::{join_pair, Analysis, CofinalityWitness, ElementProfile, GlobalProperty, Peak, Property};
use crate::relation::{path_between, ElementId, FiniteArs};
use crate::testkit::{fuzz_implications, GenConfig};
use crate::theorems::{
    ample_fuel, cofinality_join, generalized_newman_join_in, newman_join_in, normalize_finite, wn_un_join_in,
    JoinMethod,
};
use crate::wellfounded::{wf_equivalence_report, WfCounterexample, DEFAULT_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_FUEL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ars",
    version,
    about = "Decide and witness properties of abstract rewriting systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Newman,
    Gnewman,
    Wnun,
    Cp,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LambdaAction {
    Parse,
    Steps,
    Nf,
    Normalize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Lo,
    First,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Profile of one element, or of the whole system.
    Check {
        file: PathBuf,
        #[arg(long)]
        element: Option<String>,
        /// Exit 1 unless this property holds (at the element, or globally).
        #[arg(long)]
        property: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Join the peak LEFT <-* APEX ->* RIGHT.
    Join {
        file: PathBuf,
        apex: String,
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        fuel: Option<usize>,
    },
    /// Reduce a strongly normalizing element to its normal form.
    Normalize {
        file: PathBuf,
        element: String,
        #[arg(long)]
        fuel: Option<usize>,
    },
    /// Compare the notions of well-foundedness (steps read as "is below").
    Wf {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// List fixtures, print one, or verify them all.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Check the implication claims on random systems.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long = "density")]
        densities: Vec<f64>,
    },
    /// Print the system as a DOT digraph.
    Dot { file: PathBuf },
    /// Lambda terms under beta reduction.
    Lambda {
        #[arg(value_enum)]
        action: LambdaAction,
        term: String,
        #[arg(long, value_enum, default_value = "lo")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 1000)]
        fuel: usize,
        /// Names of free variables, innermost first, separated by commas.
        #[arg(long)]
        context: Option<String>,
    },
}

/// JSON shape of `check --element NAME --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementReport {
    pub element: String,
    pub properties: BTreeMap<String, bool>,
    pub wn_witness: Option<Vec<String>>,
    pub cp_witness: Option<CofinalityReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofinalityReport {
    pub stem: Vec<String>,
    pub cycle: Vec<String>,
    /// Reduct name to (sequence index, path from the reduct to that entry).
    pub coverage: BTreeMap<String, (usize, Vec<String>)>,
}

/// JSON shape of `check --json` without an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalReport {
    pub global: BTreeMap<String, bool>,
    pub inc_witness: Option<BTreeMap<String, usize>>,
    pub elements: Vec<ElementReport>,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

type Outcome = Result<i32, Failure>;

fn failure(e: Error, ars: Option<&FiniteArs>) -> Failure {
    let (code, kind) = match &e {
        Error::PreconditionFailed(_) => (EXIT_PRECONDITION, "precondition"),
        Error::FuelExhausted { .. } => (EXIT_FUEL, "fuel"),
        Error::Parse { .. } | Error::UnboundName { .. } => (EXIT_USAGE, "parse"),
        Error::CapacityExceeded { .. } => (EXIT_USAGE, "capacity"),
        _ => (EXIT_USAGE, "input"),
    };
    let message = match (&e, ars) {
        (Error::PreconditionFailed(p), Some(a)) => format!("{}: {}", p.tag(), p.describe(a)),
        _ => e.to_string(),
    };
    Failure { code, kind, message }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        kind: "usage",
        message: message.into(),
    }
}

fn load(path: &PathBuf) -> Result<FiniteArs, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        kind: "io",
        message: format!("{}: {e}", path.display()),
    })?;
    let doc = ArsDocument::parse(&text).map_err(|e| failure(e, None))?;
    doc.to_ars().map_err(|e| failure(e, None))
}

fn element(ars: &FiniteArs, name: &str) -> Result<ElementId, Failure> {
    ars.lookup(name)
        .ok_or_else(|| failure(Error::UnknownName(name.to_string()), None))
}

fn names(ars: &FiniteArs, nodes: &[ElementId]) -> Vec<String> {
    nodes.iter().map(|&e| ars.name(e).to_string()).collect()
}

fn cofinality_report(ars: &FiniteArs, w: &CofinalityWitness) -> CofinalityReport {
    CofinalityReport {
        stem: names(ars, w.sequence.stem()),
        cycle: names(ars, w.sequence.cycle()),
        coverage: w
            .coverage
            .iter()
            .map(|(y, c)| (ars.name(*y).to_string(), (c.index, names(ars, c.path.nodes()))))
            .collect(),
    }
}

/// The `check --element` JSON report for one profile.
pub fn element_report(ars: &FiniteArs, p: &ElementProfile) -> ElementReport {
    ElementReport {
        element: ars.name(p.element).to_string(),
        properties: Property::ALL
            .into_iter()
            .map(|q| (q.label().to_string(), p.get(q)))
            .collect(),
        wn_witness: p.wn_witness.as_ref().map(|w| names(ars, w.nodes())),
        cp_witness: p.cp_witness.as_ref().map(|w| cofinality_report(ars, w)),
    }
}

fn global_properties() -> impl Iterator<Item = GlobalProperty> {
    Property::ALL
        .into_iter()
        .map(GlobalProperty::All)
        .chain(GlobalProperty::EXTRA)
}

/// The `check` JSON report for the whole system.
pub fn global_report(ars: &FiniteArs) -> GlobalReport {
    let an = Analysis::new(ars);
    let profiles = an.profiles();
    let g = an.global_from(&profiles);
    GlobalReport {
        global: global_properties().map(|q| (q.label().to_string(), g.get(q))).collect(),
        inc_witness: g.inc_witness.as_ref().map(|w| {
            ars.elements()
                .map(|e| (ars.name(e).to_string(), w[e.index()]))
                .collect()
        }),
        elements: profiles.iter().map(|p| element_report(ars, p)).collect(),
    }
}

fn json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn check(out: &mut dyn Write, file: &PathBuf, el: Option<&str>, property: Option<&str>, as_json: bool) -> Outcome {
    let ars = load(file)?;
    let an = Analysis::new(&ars);
    let profiles = an.profiles();
    let verdict = match el {
        Some(name) => {
            let x = element(&ars, name)?;
            let p = &profiles[x.index()];
            if as_json {
                let _ = writeln!(out, "{}", json(&element_report(&ars, p)));
            } else {
                let _ = writeln!(out, "element {name}");
                for q in Property::ALL {
                    let _ = writeln!(out, "  {:<15} {}", q.label(), p.get(q));
                }
                if let Some(w) = &p.wn_witness {
                    let _ = writeln!(out, "  WN witness: {}", ars.render_path(w));
                }
                if let Some(w) = &p.cp_witness {
                    let seq = ars.render_nodes(w.sequence.stem());
                    let _ = writeln!(
                        out,
                        "  CP witness: {seq}, then {} forever",
                        ars.render_nodes(w.sequence.cycle())
                    );
                }
            }
            match property {
                None => None,
                Some(label) => {
                    let q = Property::from_label(label)
                        .ok_or_else(|| usage(format!("unknown element property `{label}`")))?;
                    Some(p.get(q))
                }
            }
        }
        None => {
            let g = an.global_from(&profiles);
            if as_json {
                let report = global_report(&ars);
                let _ = writeln!(out, "{}", json(&report));
            } else {
                let _ = writeln!(out, "global");
                for q in global_properties() {
                    let _ = writeln!(out, "  {:<15} {}", q.label(), g.get(q));
                }
                if let Some(w) = &g.inc_witness {
                    let shown: Vec<String> = ars
                        .elements()
                        .map(|e| format!("{}={}", ars.name(e), w[e.index()]))
                        .collect();
                    let _ = writeln!(out, "  Inc witness: {}", shown.join(" "));
                }
                let _ = writeln!(out, "elements");
                for p in &profiles {
                    let holding: Vec<&str> = p.holding().map(Property::label).collect();
                    let _ = writeln!(out, "  {}: {}", ars.name(p.element), holding.join(" "));
                }
            }
            match property {
                None => None,
                Some(label) => {
                    let q = GlobalProperty::from_label(label)
                        .or_else(|| Property::from_label(label).map(GlobalProperty::All))
                        .ok_or_else(|| usage(format!("unknown property `{label}`")))?;
                    Some(g.get(q))
                }
            }
        }
    };
    Ok(if verdict == Some(false) { EXIT_FAILS } else { EXIT_OK })
}

fn join(
    out: &mut dyn Write,
    file: &PathBuf,
    apex: &str,
    left: &str,
    right: &str,
    method: MethodArg,
    fuel: Option<usize>,
) -> Outcome {
    let ars = load(file)?;
    let (a, l, r) = (element(&ars, apex)?, element(&ars, left)?, element(&ars, right)?);
    let fail = |e| failure(e, Some(&ars));
    let unreachable = [l, r].into_iter().find(|&to| path_between(&ars, a, to).is_none());
    if let Some(to) = unreachable {
        return Err(fail(Error::PreconditionFailed(Precondition::NotReachable {
            from: a,
            to,
        })));
    }
    let peak = Peak::between(&ars, a, l, r).expect("both sides reachable");
    let an = Analysis::new(&ars);
    let fuel = fuel.unwrap_or_else(|| ample_fuel(&ars));
    let method = match method {
        MethodArg::Newman => JoinMethod::Newman,
        MethodArg::Gnewman => JoinMethod::GeneralizedNewman,
        MethodArg::Wnun => JoinMethod::WnUn,
        MethodArg::Cp => JoinMethod::Cofinality,
        MethodArg::Exhaustive => JoinMethod::Exhaustive,
        MethodArg::Auto => {
            let global = an.global();
            if an.is_sn(a) && an.reducts(a).all(|y| an.is_wcr(y)) {
                JoinMethod::Newman
            } else if global.all(Property::Wcr) && an.is_sm(a) {
                JoinMethod::GeneralizedNewman
            } else if global.all(Property::Wn) && global.all(Property::UnRed) {
                JoinMethod::WnUn
            } else if an.cofinality_witness(a).is_some() {
                JoinMethod::Cofinality
            } else {
                JoinMethod::Exhaustive
            }
        }
    };
    let joined = match method {
        JoinMethod::Newman => newman_join_in(&an, &peak, fuel),
        JoinMethod::GeneralizedNewman => generalized_newman_join_in(&an, &peak, fuel),
        JoinMethod::WnUn => wn_un_join_in(&an, &peak),
        JoinMethod::Cofinality => match an.cofinality_witness(a) {
            Some(w) => cofinality_join(&ars, &w, &peak),
            None => Err(Error::PreconditionFailed(Precondition::NotConfluent {
                element: a,
                left: l,
                right: r,
            })),
        },
        JoinMethod::Exhaustive => match join_pair(&ars, l, r) {
            Some(j) => Ok(j),
            None => {
                let _ = writeln!(out, "not joinable: {left} and {right} have no common reduct");
                return Ok(EXIT_FAILS);
            }
        },
    }
    .map_err(fail)?;
    let _ = writeln!(out, "join at {} (method {})", ars.name(joined.target), method.label());
    let _ = writeln!(out, "  left:  {}", ars.render_path(&joined.from_left));
    let _ = writeln!(out, "  right: {}", ars.render_path(&joined.from_right));
    Ok(EXIT_OK)
}

fn normalize_cmd(out: &mut dyn Write, file: &PathBuf, name: &str, fuel: Option<usize>) -> Outcome {
    let ars = load(file)?;
    let a = element(&ars, name)?;
    let fuel = fuel.unwrap_or_else(|| ample_fuel(&ars));
    let path = normalize_finite(&ars, a, fuel).map_err(|e| failure(e, Some(&ars)))?;
    let _ = writeln!(out, "normal form {}", ars.name(path.target()));
    let _ = writeln!(out, "  path: {}", ars.render_path(&path));
    Ok(EXIT_OK)
}

fn wf(out: &mut dyn Write, file: &PathBuf, limit: usize) -> Outcome {
    let ars = load(file)?;
    let report = wf_equivalence_report(&ars, limit).map_err(|e| failure(e, Some(&ars)))?;
    for (notion, v) in &report.verdicts {
        let shown = match &v.counterexample {
            None => String::new(),
            Some(WfCounterexample::Predicate(p)) => format!("  counterexample {}", p.render(&ars)),
            Some(WfCounterexample::Decreasing(l)) => {
                format!("  decreasing sequence {}", ars.render_cycle(l))
            }
        };
        let _ = writeln!(out, "{:<7} {}{shown}", notion.label(), v.holds);
    }
    let _ = writeln!(out, "agreement {}", report.agreement);
    let _ = writeln!(out, "acyclic {}", report.acyclic);
    let b = &report.bridges;
    let _ = writeln!(
        out,
        "bridges Rdec={} FB={} MPseq={} corDNE={} accDNE={} accCor={}",
        b.rdec, b.fb, b.mp_seq, b.cor_dne, b.acc_dne, b.acc_cor
    );
    if !b.acc_cor_witness.is_empty() {
        let shown: Vec<String> = b
            .acc_cor_witness
            .iter()
            .map(|(x, y)| format!("{} <- {}", ars.name(*x), ars.name(*y)))
            .collect();
        let _ = writeln!(out, "accCor witness {}", shown.join(", "));
    }
    let _ = writeln!(out, "diagram violations {}", report.edge_violations.len());
    for e in &report.edge_violations {
        let _ = writeln!(out, "  {} => {}", e.from.label(), e.to.label());
    }
    Ok(if report.well_founded() { EXIT_OK } else { EXIT_FAILS })
}

fn catalog(out: &mut dyn Write, err: &mut dyn Write, name: Option<&str>, verify: bool) -> Outcome {
    if verify {
        let report = verify_catalog();
        let mismatches: Vec<_> = report
            .mismatches
            .iter()
            .filter(|m| name.is_none_or(|n| m.fixture.eq_ignore_ascii_case(n)))
            .collect();
        let _ = writeln!(
            out,
            "fixtures {} checks {} witnesses {} mismatches {}",
            report.fixtures,
            report.checks,
            report.witnesses,
            mismatches.len()
        );
        for m in &mismatches {
            let _ = writeln!(out, "mismatch {m}");
        }
        for n in &report.notes {
            let _ = writeln!(out, "note {n}");
        }
        return Ok(if mismatches.is_empty() { EXIT_OK } else { EXIT_FAILS });
    }
    match name {
        None => {
            for fx in fixtures() {
                let shape = match &fx.system {
                    System::Finite(a) => format!("{} elements, {} steps", a.size(), a.step_count()),
                    System::Infinite(_) => "infinite".to_string(),
                };
                let _ = writeln!(out, "{:<11} {shape}", fx.name);
            }
            Ok(EXIT_OK)
        }
        Some(n) => {
            let canonical = FIXTURE_NAMES
                .iter()
                .find(|k| k.eq_ignore_ascii_case(n))
                .copied()
                .unwrap_or(n);
            let fx = fixture(canonical)
                .ok_or_else(|| usage(format!("unknown fixture `{n}`; known: {}", FIXTURE_NAMES.join(", "))))?;
            match &fx.system {
                System::Finite(a) => {
                    let _ = writeln!(out, "{}", ArsDocument::from_ars(a).to_json());
                }
                System::Infinite(sys) => {
                    let shape = match sys {
                        Infinite::Ce6 => "f_i -> f_{i+1}, f_i -> n (i >= 0)",
                        Infinite::Ce7 => "f_i -> f_{i+1}, f_i -> n_i (i >= 0)",
                    };
                    let _ = writeln!(out, "{}: {shape}", fx.name);
                }
            }
            for note in &fx.notes {
                let _ = writeln!(err, "note {note}");
            }
            Ok(EXIT_OK)
        }
    }
}

fn fuzz(out: &mut dyn Write, seed: u64, count: usize, max_size: usize, densities: Vec<f64>) -> Outcome {
    let mut cfg = GenConfig::new(seed, count, max_size);
    if !densities.is_empty() {
        cfg.edge_probabilities = densities;
    }
    let report = fuzz_implications(&cfg).map_err(|e| failure(e, None))?;
    let _ = writeln!(
        out,
        "instances {} evaluations {} witnesses {} violations {}",
        report.instances,
        report.evaluations,
        report.witnesses_checked,
        report.violations.len()
    );
    for (label, v) in &report.violations {
        let doc = ArsDocument::from_ars(&v.shrunk);
        let _ = writeln!(
            out,
            "violation {label}: {} instances, first #{}, shrunk {}",
            v.count,
            v.first_instance,
            serde_json::to_string(&doc).expect("serializes")
        );
    }
    for (label, check) in &report.non_implications {
        let _ = writeln!(out, "counterexample {label}: {check:?}");
    }
    Ok(if report.clean() { EXIT_OK } else { EXIT_FAILS })
}

fn lambda(
    out: &mut dyn Write,
    action: LambdaAction,
    text: &str,
    strategy: StrategyArg,
    fuel: usize,
    context: Option<&str>,
) -> Outcome {
    let ctx: Vec<String> = context
        .unwrap_or("")
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    let t = parse_term(text, &ctx).map_err(|e| failure(e, None))?;
    let show = |t: &crate::lambda::Term| t.display_with(&ctx).to_string();
    match action {
        LambdaAction::Parse => {
            let _ = writeln!(out, "{}", show(&t));
            let _ = writeln!(out, "{t:?}");
            Ok(EXIT_OK)
        }
        LambdaAction::Steps => {
            for r in beta_step_enum(&t) {
                let _ = writeln!(out, "{}", show(&r));
            }
            Ok(EXIT_OK)
        }
        LambdaAction::Nf => {
            let nf = is_beta_nf(&t);
            let _ = writeln!(out, "{}", if nf { "normal form" } else { "not a normal form" });
            Ok(if nf { EXIT_OK } else { EXIT_FAILS })
        }
        LambdaAction::Normalize => {
            let strategy = match strategy {
                StrategyArg::Lo => Strategy::LeftmostOutermost,
                StrategyArg::First => Strategy::FirstEnumerated,
            };
            match normalize(&t, strategy, fuel) {
                NormalizeResult::NormalForm { term, path } => {
                    for p in &path {
                        let _ = writeln!(out, "{}", show(p));
                    }
                    let _ = writeln!(out, "normal form {} after {} steps", show(&term), path.len() - 1);
                    Ok(EXIT_OK)
                }
                NormalizeResult::FuelExhausted { steps, .. } => Err(failure(Error::FuelExhausted { steps }, None)),
            }
        }
    }
}

/// Run one command. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "error: usage: {first}");
            return EXIT_USAGE;
        }
    };
    let outcome = match cli.command {
        Command::Check {
            file,
            element,
            property,
            json,
        } => check(out, &file, element.as_deref(), property.as_deref(), json),
        Command::Join {
            file,
            apex,
            left,
            right,
            method,
            fuel,
        } => join(out, &file, &apex, &left, &right, method, fuel),
        Command::Normalize { file, element, fuel } => normalize_cmd(out, &file, &element, fuel),
        Command::Wf { file, limit } => wf(out, &file, limit),
        Command::Catalog { name, verify } => catalog(out, err, name.as_deref(), verify),
        Command::Fuzz {
            seed,
            count,
            max_size,
            densities,
        } => fuzz(out, seed, count, max_size, densities),
        Command::Dot { file } => load(&file).map(|a| {
            let _ = write!(out, "{}", to_dot(&a));
            EXIT_OK
        }),
        Command::Lambda {
            action,
            term,
            strategy,
            fuel,
            context,
        } => lambda(out, action, &term, strategy, fuel, context.as_deref()),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}: {}", f.kind, f.message);
            f.code
        }
    }
}
