//! The `argkb` command line. [`run`] takes the arguments and two writers and
//! returns the exit status, so it can be driven from tests.
//!
//! Exit status: 0 when the query holds (or the base is consistent), 1 when
//! it fails, 2 on any error, 3 when a resource cap was hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::flat::{FlatReasoner, FlatRelation};
use crate::kbfile::{self, KbFile};
use crate::logic::{parse_formula, Clause, Formula};
use crate::merge::{am_holds_with, SourceSet};
use crate::para::{BiWeight, ParaBase};
use crate::stratified::{StratifiedKb, StratifiedReasoner, StratifiedRelation};
use crate::subsets::{Argument, SubsetRef};
use crate::weight::Weight;
use crate::Limits;

#[derive(Debug, Parser)]
#[command(
    name = "argkb",
    version,
    about = "Query inconsistent propositional knowledge bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,

    /// Cap on consistency checks per subset enumeration
    #[arg(long, global = true, value_name = "N")]
    max_subsets: Option<u64>,

    /// Cap on atoms in truth tables and model enumeration
    #[arg(long, global = true, value_name = "N")]
    max_atoms: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report consistency and the inconsistency level
    Check { kb: PathBuf },
    /// Decide a goal under one consequence relation
    Query {
        kb: PathBuf,
        /// Goal formula; omit when using --queries
        goal: Option<String>,
        #[arg(long, value_enum, default_value_t = RelationArg::Arg)]
        relation: RelationArg,
        /// File with one goal per line
        #[arg(long, value_name = "FILE")]
        queries: Option<PathBuf>,
        /// Extra sources for `--relation am`
        #[arg(long, value_name = "FILE")]
        source: Vec<PathBuf>,
    },
    /// Print the maximal consistent subsets
    Mcs { kb: PathBuf },
    /// Print the minimal inconsistent subsets
    Mus { kb: PathBuf },
    /// Print the formulas involved in no conflict
    Freebase { kb: PathBuf },
    /// Print the argumentative prime implicates
    PrimeImplicates { kb: PathBuf },
    /// Print the biweighted base and its saturation
    Para { kb: PathBuf },
    /// Answer queries against several sources
    Merge {
        /// A source base; repeat for each source
        #[arg(long, value_name = "FILE", required = true)]
        source: Vec<PathBuf>,
        /// File with one query per line
        #[arg(long, value_name = "FILE")]
        queries: Option<PathBuf>,
        /// Queries given inline
        query: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    Free,
    Universal,
    Lex,
    Exists,
    Arg,
    Pi,
    Pifree,
    Pref,
    Lexs,
    Args,
    Para,
    Am,
}

impl RelationArg {
    fn name(self) -> &'static str {
        match self {
            RelationArg::Free => "free",
            RelationArg::Universal => "universal",
            RelationArg::Lex => "lex",
            RelationArg::Exists => "exists",
            RelationArg::Arg => "arg",
            RelationArg::Pi => "pi",
            RelationArg::Pifree => "pifree",
            RelationArg::Pref => "pref",
            RelationArg::Lexs => "lexs",
            RelationArg::Args => "args",
            RelationArg::Para => "para",
            RelationArg::Am => "am",
        }
    }
}

/// One formula-backed argument as reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgumentReport {
    pub indices: Vec<usize>,
    pub formulas: Vec<String>,
    /// 1-based layer of each formula, for stratified bases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Weight>,
    /// Source the argument comes from, for multi-source queries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

/// The answer to one query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryReport {
    pub query: String,
    pub relation: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Weight>,
    pub arguments_for: Vec<ArgumentReport>,
    pub arguments_against: Vec<ArgumentReport>,
    pub caps_hit: bool,
    /// Derived biweights, for `para` queries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub biweights: Option<Vec<BiWeight>>,
}

#[derive(Debug, Serialize)]
struct SubsetReport {
    indices: Vec<usize>,
    formulas: Vec<String>,
}

#[derive(Debug, Serialize)]
struct CheckReport {
    formulas: usize,
    layers: usize,
    consistent: bool,
    inconsistency_level: Weight,
    pi_layers: usize,
}

#[derive(Debug, Serialize)]
struct ParaEntry {
    clause: String,
    certainty: Weight,
    counter: Weight,
    sources: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct MergedEntry {
    formula: String,
    weight: Weight,
}

enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<crate::ParseError> for Failure {
    fn from(e: crate::ParseError) -> Self {
        Failure::Engine(e.into())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs one command line (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            2
        }
        Err(Failure::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_cap() {
                3
            } else {
                2
            }
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = cli.max_subsets {
        l.max_subset_checks = n;
    }
    if let Some(n) = cli.max_atoms {
        l.max_atoms = n;
    }
    l
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load(path: &Path) -> Result<KbFile, Failure> {
    Ok(kbfile::parse(&read(path)?)?)
}

fn load_source(path: &Path) -> Result<StratifiedKb, Failure> {
    let text = read(path)?;
    Ok(if kbfile::is_stratified(&text) {
        kbfile::parse_source(&text)?
    } else {
        StratifiedKb::from_flat(&kbfile::parse_flat(&text)?)
    })
}

fn read_queries(path: &Path) -> Result<Vec<String>, Failure> {
    Ok(read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}").map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))
}

fn say(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))
}

fn subset_report(formulas: &[Formula], s: &SubsetRef) -> SubsetReport {
    SubsetReport {
        indices: s.indices().to_vec(),
        formulas: s.iter().map(|i| formulas[i].to_string()).collect(),
    }
}

fn render_subset(formulas: &[Formula], s: &SubsetRef) -> String {
    let items: Vec<String> = s.iter().map(|i| formulas[i].to_string()).collect();
    format!("{s}  {}", items.join(", "))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let limits = limits(cli);
    match &cli.command {
        Command::Check { kb } => check(load(kb)?, &limits, cli.json, out),
        Command::Query {
            kb,
            goal,
            relation,
            queries,
            source,
        } => {
            let mut goals: Vec<String> = goal.iter().cloned().collect();
            if let Some(q) = queries {
                goals.extend(read_queries(q)?);
            }
            if goals.is_empty() {
                return Err(Failure::Usage("give a goal or --queries FILE".into()));
            }
            if !source.is_empty() && *relation != RelationArg::Am {
                return Err(Failure::Usage(
                    "--source only applies to --relation am".into(),
                ));
            }
            query(
                kb,
                source,
                &goals,
                *relation,
                &limits,
                cli.json,
                goal.is_some() && queries.is_none(),
                out,
            )
        }
        Command::Mcs { kb } | Command::Mus { kb } => {
            let flat = load(kb)?.into_stratified().to_flat();
            let r = FlatReasoner::with_limits(&flat, &limits);
            let sets = if matches!(cli.command, Command::Mcs { .. }) {
                r.maximal_consistent_subsets()?
            } else {
                r.minimal_inconsistent_subsets()?
            };
            if cli.json {
                let rows: Vec<SubsetReport> = sets
                    .iter()
                    .map(|s| subset_report(flat.formulas(), s))
                    .collect();
                emit(out, &serde_json::json!({ "subsets": rows }))?;
            } else {
                for s in &sets {
                    say(out, &format!("{}\n", render_subset(flat.formulas(), s)))?;
                }
            }
            Ok(0)
        }
        Command::Freebase { kb } => {
            let flat = load(kb)?.into_stratified().to_flat();
            let free = FlatReasoner::with_limits(&flat, &limits).free_base()?;
            if cli.json {
                emit(out, &subset_report(flat.formulas(), &free))?;
            } else {
                say(out, &format!("{}\n", render_subset(flat.formulas(), &free)))?;
            }
            Ok(0)
        }
        Command::PrimeImplicates { kb } => {
            let flat = load(kb)?.into_stratified().to_flat();
            let pis = FlatReasoner::with_limits(&flat, &limits).prime_implicates()?;
            let rows: Vec<String> = pis.iter().map(Formula::to_string).collect();
            if cli.json {
                emit(out, &serde_json::json!({ "prime_implicates": rows }))?;
            } else {
                for r in rows {
                    say(out, &format!("{r}\n"))?;
                }
            }
            Ok(0)
        }
        Command::Para { kb } => {
            let skb = load(kb)?.into_stratified();
            let base = ParaBase::from_stratified(&skb, &limits)?;
            let saturated = base.saturate(&limits)?;
            if cli.json {
                let rows = |pb: &ParaBase| -> Vec<ParaEntry> {
                    pb.entries()
                        .into_iter()
                        .map(|e| ParaEntry {
                            sources: pb
                                .provenance(&e)
                                .map(|s| s.indices().to_vec())
                                .unwrap_or_default(),
                            clause: e.clause.to_string(),
                            certainty: e.weight.certainty,
                            counter: e.weight.counter,
                        })
                        .collect()
                };
                emit(
                    out,
                    &serde_json::json!({ "base": rows(&base), "saturated": rows(&saturated) }),
                )?;
            } else {
                say(
                    out,
                    &format!(
                        "# biweighted base\n{}# saturated\n{}",
                        base.to_text(),
                        saturated.to_text()
                    ),
                )?;
            }
            Ok(0)
        }
        Command::Merge {
            source,
            queries,
            query,
        } => {
            let mut goals = query.clone();
            if let Some(q) = queries {
                goals.extend(read_queries(q)?);
            }
            if goals.is_empty() {
                return Err(Error::NoQueries.into());
            }
            let set = load_sources(source)?;
            let mut reports = Vec::new();
            let mut merged = Vec::new();
            for g in &goals {
                let r = am_report(&set, g, &limits)?;
                if r.holds {
                    merged.push(MergedEntry {
                        formula: r.query.clone(),
                        weight: r.weight.expect("accepted queries carry a weight"),
                    });
                }
                reports.push(r);
            }
            if cli.json {
                emit(
                    out,
                    &serde_json::json!({ "reports": reports, "merged": merged }),
                )?;
            } else {
                for r in &reports {
                    say(out, &render_report(r))?;
                }
                say(out, "merged\n")?;
                for m in &merged {
                    say(out, &format!("  {} @ {}\n", m.formula, m.weight))?;
                }
            }
            Ok(0)
        }
    }
}

fn check(file: KbFile, limits: &Limits, json: bool, out: &mut dyn Write) -> Outcome {
    let stratified = matches!(file, KbFile::Stratified(_));
    let skb = file.into_stratified();
    let r = StratifiedReasoner::with_limits(&skb, limits);
    let level = r.inconsistency_level()?;
    let report = CheckReport {
        formulas: skb.len(),
        layers: skb.num_layers(),
        consistent: level.is_zero(),
        inconsistency_level: level,
        pi_layers: r.pi_level()?,
    };
    if json {
        emit(out, &report)?;
    } else {
        let mut text = format!("formulas    {}\n", report.formulas);
        if stratified {
            text.push_str(&format!("layers      {}\n", report.layers));
        }
        if report.consistent {
            text.push_str("consistent\n");
        } else {
            text.push_str(&format!(
                "inconsistent at level {}\n",
                report.inconsistency_level
            ));
            if stratified {
                text.push_str(&format!(
                    "consistent prefix: {} of {} layers\n",
                    report.pi_layers, report.layers
                ));
            }
        }
        say(out, &text)?;
    }
    Ok(if report.consistent { 0 } else { 1 })
}

fn load_sources(paths: &[PathBuf]) -> Result<SourceSet, Failure> {
    let mut sources = Vec::with_capacity(paths.len());
    for p in paths {
        sources.push((p.display().to_string(), load_source(p)?));
    }
    Ok(SourceSet::new(sources)?)
}

fn argument_report(
    formulas: &[Formula],
    skb: Option<&StratifiedKb>,
    a: &Argument,
    source: Option<&str>,
) -> ArgumentReport {
    ArgumentReport {
        indices: a.support.indices().to_vec(),
        formulas: a.support.iter().map(|i| formulas[i].to_string()).collect(),
        layers: skb.map(|k| a.support.iter().map(|i| k.layer_of(i) + 1).collect()),
        weight: a.weight,
        source: source.map(str::to_string),
    }
}

fn empty_report(goal: &str, relation: &str) -> QueryReport {
    QueryReport {
        query: goal.to_string(),
        relation: relation.to_string(),
        holds: false,
        weight: None,
        arguments_for: Vec::new(),
        arguments_against: Vec::new(),
        caps_hit: false,
        biweights: None,
    }
}

fn am_report(set: &SourceSet, goal: &str, limits: &Limits) -> Result<QueryReport, Failure> {
    let g = parse_formula(goal)?;
    let v = am_holds_with(set, &g, limits)?;
    let mut r = empty_report(goal, "am");
    r.holds = v.holds;
    r.weight = v.weight;
    let arg = |i: usize, a: &Option<Argument>| {
        let s = &set.sources()[i];
        a.as_ref()
            .map(|a| argument_report(s.kb.formulas(), Some(&s.kb), a, Some(&s.name)))
    };
    if let Some(i) = v.winner {
        r.arguments_for.extend(arg(i, &v.per_source[i].for_goal));
    }
    if let Some((i, _)) = v.strongest_against {
        r.arguments_against
            .extend(arg(i, &v.per_source[i].against_goal));
    }
    Ok(r)
}

enum Engine<'a> {
    Flat(FlatReasoner<'a>, FlatRelation),
    Stratified(StratifiedReasoner<'a>, StratifiedRelation),
    Para(ParaBase),
    Merge(SourceSet),
}

fn flat_relation(r: RelationArg) -> Option<FlatRelation> {
    r.name().parse().ok()
}

fn stratified_relation(r: RelationArg) -> Option<StratifiedRelation> {
    r.name().parse().ok()
}

#[allow(clippy::too_many_arguments)]
fn query(
    kb: &Path,
    extra_sources: &[PathBuf],
    goals: &[String],
    relation: RelationArg,
    limits: &Limits,
    json: bool,
    single: bool,
    out: &mut dyn Write,
) -> Outcome {
    let skb = if relation == RelationArg::Am {
        load_source(kb)?
    } else {
        load(kb)?.into_stratified()
    };
    let flat = skb.to_flat();
    let started = Instant::now();
    let engine = if let Some(rel) = flat_relation(relation) {
        Ok(Engine::Flat(FlatReasoner::with_limits(&flat, limits), rel))
    } else if let Some(rel) = stratified_relation(relation) {
        Ok(Engine::Stratified(
            StratifiedReasoner::with_limits(&skb, limits),
            rel,
        ))
    } else if relation == RelationArg::Para {
        ParaBase::from_stratified(&skb, limits)
            .and_then(|b| b.saturate(limits))
            .map(Engine::Para)
    } else {
        let mut paths = vec![kb.to_path_buf()];
        paths.extend(extra_sources.iter().cloned());
        Ok(Engine::Merge(load_sources(&paths)?))
    };

    let mut reports = Vec::with_capacity(goals.len());
    let mut code = 0;
    for goal in goals {
        let result = match &engine {
            Ok(e) => evaluate(e, &skb, goal, relation, limits),
            Err(e) => Err(Failure::Engine(e.clone())),
        };
        let report = match result {
            Ok(r) => r,
            Err(Failure::Engine(e)) if e.is_cap() => {
                code = 3;
                let mut r = empty_report(goal, relation.name());
                r.caps_hit = true;
                r
            }
            Err(f) => return Err(f),
        };
        if !report.holds && code == 0 {
            code = 1;
        }
        reports.push(report);
    }

    if json {
        if single {
            emit(out, &reports[0])?;
        } else {
            emit(out, &reports)?;
        }
    } else {
        for r in &reports {
            say(out, &render_report(r))?;
        }
        say(
            out,
            &format!("elapsed {:.1} ms\n", started.elapsed().as_secs_f64() * 1e3),
        )?;
    }
    Ok(code)
}

fn evaluate(
    engine: &Engine<'_>,
    skb: &StratifiedKb,
    goal: &str,
    relation: RelationArg,
    limits: &Limits,
) -> Result<QueryReport, Failure> {
    let g = parse_formula(goal)?;
    let formulas = skb.formulas();
    let mut report = empty_report(goal, relation.name());
    match engine {
        Engine::Flat(r, rel) => {
            let v = r.holds(&g, *rel)?;
            report.holds = v.holds;
            report.arguments_for = v
                .arguments_for
                .iter()
                .map(|a| argument_report(formulas, None, a, None))
                .collect();
            report.arguments_against = v
                .arguments_against
                .iter()
                .map(|a| argument_report(formulas, None, a, None))
                .collect();
        }
        Engine::Stratified(r, rel) => {
            let v = r.holds(&g, *rel)?;
            report.holds = v.holds;
            report.weight = v.weight;
            report.arguments_for = v
                .arguments_for
                .iter()
                .map(|a| argument_report(formulas, Some(skb), a, None))
                .collect();
            report.arguments_against = v
                .arguments_against
                .iter()
                .map(|a| argument_report(formulas, Some(skb), a, None))
                .collect();
        }
        Engine::Para(saturated) => {
            let clause = Clause::from_formula(&g)?;
            let frontier = saturated.get(&clause);
            // Fully blurred conclusions (certainty equal to the counter-weight) do not count.
            report.holds = frontier.iter().any(|w| w.certainty > w.counter);
            report.weight = frontier.iter().map(|w| w.certainty).max();
            for w in &frontier {
                let entry = crate::para::BiWeightedClause {
                    clause: clause.clone(),
                    weight: *w,
                };
                let support = saturated.provenance(&entry).cloned().unwrap_or_default();
                report.arguments_for.push(ArgumentReport {
                    indices: support.indices().to_vec(),
                    formulas: support.iter().map(|i| formulas[i].to_string()).collect(),
                    layers: Some(support.iter().map(|i| skb.layer_of(i) + 1).collect()),
                    weight: Some(w.certainty),
                    source: None,
                });
            }
            report.biweights = Some(frontier);
        }
        Engine::Merge(set) => return am_report(set, goal, limits),
    }
    Ok(report)
}

fn render_argument(a: &ArgumentReport) -> String {
    let mut s = String::new();
    if let Some(src) = &a.source {
        s.push_str(&format!("{src}: "));
    }
    if a.indices.is_empty() {
        s.push_str("[] no premises needed");
    } else {
        let idx: Vec<String> = a.indices.iter().map(usize::to_string).collect();
        s.push_str(&format!(
            "[{}] {{{}}}",
            idx.join(", "),
            a.formulas.join(", ")
        ));
    }
    if let Some(w) = a.weight {
        s.push_str(&format!(" @ {w}"));
    }
    s
}

fn render_report(r: &QueryReport) -> String {
    let mut s = format!(
        "{} under {}: {}",
        r.query,
        r.relation,
        if r.holds { "holds" } else { "fails" }
    );
    if let Some(w) = r.weight {
        s.push_str(&format!(" (weight {w})"));
    }
    if r.caps_hit {
        s.push_str(" (resource cap hit)");
    }
    s.push('\n');
    if let Some(bw) = &r.biweights {
        let items: Vec<String> = bw.iter().map(|w| format!("({w})")).collect();
        s.push_str(&format!(
            "  biweights {}\n",
            if items.is_empty() {
                "none".into()
            } else {
                items.join(" ")
            }
        ));
    }
    for (label, list) in [("for", &r.arguments_for), ("against", &r.arguments_against)] {
        if list.is_empty() {
            s.push_str(&format!("  {label:<8} none\n"));
        }
        for a in list {
            s.push_str(&format!("  {label:<8} {}\n", render_argument(a)));
        }
    }
    s
}
