//! `elw`: command-line front end for the workbench.
//!
//! Exit codes: 0 when the requested check passes, 1 when it ran and
//! failed (rejected script, refuted formula, missing countermodel,
//! disagreeing crosscheck), 2 for usage errors. All output for a given
//! input is byte-identical across runs.

use clap::{Args, Parser, Subcommand};
use elw_core::ipc::kripke::countermodel_for;
use elw_core::ipc::{ipc_consequence, ipc_valid, KripkeModel};
use elw_core::kernel::{check_proof, parse_script, CheckOptions, LogicId, SchemeName};
use elw_core::model::{
    embedding_crosscheck, enumerate_models_with, find_countermodel, model_from_json, model_to_json,
    validate_el_model, validate_iel_model, Assignment, EnumeratedModel, SearchBudget,
    ValidationOptions,
};
use elw_core::repro::{self, ReproOptions};
use elw_core::{parse, Formula};
use serde_json::json;
use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "elw",
    version,
    about = "Workbench for modal-epistemic logics over intuitionistic truth"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a formula and print its canonical rendering
    Parse { formula: String },
    /// Decide intuitionistic validity (or consequence, with premises);
    /// refutations print a countermodel and exit 1
    Ipc {
        formula: String,
        /// Comma-separated premises for a consequence query
        #[arg(long, value_delimiter = ',')]
        premises: Vec<String>,
    },
    /// Check a derivation script file against a logic; rejection exits 1
    CheckProof {
        file: PathBuf,
        /// L3, EL3-, EL3, EL4, EL5, IEL-, IEL
        #[arg(long)]
        logic: String,
    },
    /// Search enumerated models of a class for one refuting the formula;
    /// exits 1 when none is found within budget
    FindCountermodel {
        formula: String,
        /// EL3-, EL3, EL4, EL5, IEL-, IEL
        #[arg(long)]
        logic: String,
        /// Write the model JSON to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Validate a model file against the class it records; rejection exits 1
    ValidateModel { file: PathBuf },
    /// Enumerate every validated model of a class and print the census
    Enumerate {
        /// EL3-, EL3, EL4, EL5, IEL-, IEL
        #[arg(long)]
        logic: String,
        /// Print each model in canonical JSON instead of the census
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Cross-check a propositional consequence against model search over
    /// boxed translations; disagreement exits 1
    EmbedTest {
        /// Comma-separated premise formulas (may be empty)
        #[arg(long, value_delimiter = ',')]
        phi: Vec<String>,
        /// Conclusion formula
        #[arg(long)]
        chi: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the full reproduction suite; any failing item exits 1
    Reproduce {
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Trials for the randomized property items
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Random formulas for the embedding crosscheck
        #[arg(long, default_value_t = 100)]
        embed_samples: usize,
        /// Random non-theorem pairs for the disjunction probe
        #[arg(long, default_value_t = 50)]
        dp_pairs: usize,
        /// Random substitution-scheme instances
        #[arg(long, default_value_t = 200)]
        sp_instances: usize,
        /// Directory holding the shipped model fixtures
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Sensitivity switch: let necessitation target any line
        #[arg(long)]
        allow_an_anywhere: bool,
        /// Sensitivity switch: treat a scheme as absent from every logic
        /// (repeatable)
        #[arg(long, value_name = "SCHEME")]
        drop_scheme: Vec<String>,
        /// Sensitivity switch: skip the belief-reflection model condition
        #[arg(long)]
        skip_reflection_condition: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest base poset size for model enumeration
    #[arg(long, default_value_t = 3)]
    max_poset: usize,
    /// Wall-clock cap in seconds
    #[arg(long, default_value_t = 30)]
    time_cap: u64,
    /// Cap on yielded models
    #[arg(long, default_value_t = 100_000)]
    max_models: usize,
    /// Cap on candidate operation tables examined
    #[arg(long, default_value_t = 10_000_000)]
    max_tables: usize,
}

impl BudgetArgs {
    fn to_budget(&self) -> SearchBudget {
        SearchBudget {
            max_poset_size: self.max_poset,
            max_models: self.max_models,
            max_op_tables: self.max_tables,
            time_cap: Duration::from_secs(self.time_cap),
        }
    }
}

enum CliError {
    Usage(String),
    /// A check ran and failed: exit 1.
    Failed,
    /// Downstream closed the pipe; stop quietly.
    Pipe,
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> CliError {
        if e.kind() == io::ErrorKind::BrokenPipe {
            CliError::Pipe
        } else {
            CliError::Usage(format!("stdout: {e}"))
        }
    }
}

const FORMULA_GRAMMAR: &str = "formula grammar: f := 'false' | 'true' | x<N> | '~' f | 'box' f \
| 'K' f | f '&' f | f '|' f | f '->' f | f '<->' f | f '==' f; parentheses group; \
'->' associates to the right";

fn parse_formula(text: &str) -> Result<Formula, CliError> {
    parse(text).map_err(|e| CliError::Usage(format!("cannot parse '{text}': {e}\n{FORMULA_GRAMMAR}")))
}

fn parse_formulas(texts: &[String]) -> Result<Vec<Formula>, CliError> {
    texts.iter().map(|t| parse_formula(t)).collect()
}

fn parse_logic(name: &str) -> Result<LogicId, CliError> {
    LogicId::from_str(name)
        .map_err(|e| CliError::Usage(format!("{e}; expected L3, EL3-, EL3, EL4, EL5, IEL- or IEL")))
}

fn model_logic(name: &str) -> Result<LogicId, CliError> {
    let logic = parse_logic(name)?;
    if logic == LogicId::L3 {
        return Err(CliError::Usage(
            "L3 names no model class; pick EL3-, EL3, EL4, EL5, IEL- or IEL".into(),
        ));
    }
    Ok(logic)
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn kripke_json(k: &KripkeModel) -> serde_json::Value {
    let order: Vec<[usize; 2]> = (0..k.worlds)
        .flat_map(|i| (0..k.worlds).filter(move |&j| i != j && k.leq[i][j]).map(move |j| [i, j]))
        .collect();
    let valuation: BTreeMap<String, Vec<usize>> = k
        .valuation
        .iter()
        .map(|(v, row)| {
            let worlds = (0..k.worlds).filter(|&w| row[w]).collect();
            (format!("x{v}"), worlds)
        })
        .collect();
    json!({
        "worlds": k.worlds,
        "root": k.root,
        "order": order,
        "valuation": valuation,
    })
}

fn write_kripke(out: &mut impl Write, k: &KripkeModel) -> io::Result<()> {
    writeln!(out, "countermodel: {} worlds, root {}", k.worlds, k.root)?;
    let mut pairs = Vec::new();
    for i in 0..k.worlds {
        for j in 0..k.worlds {
            if i != j && k.leq[i][j] {
                pairs.push(format!("{i}<={j}"));
            }
        }
    }
    if !pairs.is_empty() {
        writeln!(out, "  order: {}", pairs.join(", "))?;
    }
    for (v, row) in &k.valuation {
        let at: Vec<String> = (0..k.worlds).filter(|&w| row[w]).map(|w| w.to_string()).collect();
        let listed = if at.is_empty() { "(nowhere)".to_string() } else { at.join(", ") };
        writeln!(out, "  x{v} holds at: {listed}")?;
    }
    Ok(())
}

fn assignment_json(g: &Assignment) -> serde_json::Value {
    let map: BTreeMap<String, usize> = g.0.iter().map(|(v, e)| (format!("x{v}"), *e)).collect();
    json!(map)
}

fn write_assignment(out: &mut impl Write, g: &Assignment) -> io::Result<()> {
    writeln!(out, "assignment:")?;
    for (v, e) in &g.0 {
        writeln!(out, "  x{v} = {e}")?;
    }
    Ok(())
}

fn model_json_value(m: &EnumeratedModel) -> serde_json::Value {
    serde_json::from_str(&model_to_json(m)).expect("canonical model JSON parses")
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Parse { formula } => {
            let f = parse_formula(formula)?;
            if cli.json {
                let vars: Vec<String> = f.vars().iter().map(|v| format!("x{v}")).collect();
                writeln!(
                    out,
                    "{}",
                    json!({"formula": f.render(), "variables": vars, "size": f.size()})
                )?;
            } else {
                writeln!(out, "{f}")?;
            }
            Ok(())
        }
        Cmd::Ipc { formula, premises } => {
            let chi = parse_formula(formula)?;
            let phi = parse_formulas(premises)?;
            let holds = if phi.is_empty() {
                ipc_valid(&chi)
            } else {
                ipc_consequence(&phi, &chi)
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let counter = if holds {
                None
            } else {
                countermodel_for(&phi, &chi).map_err(|e| CliError::Usage(e.to_string()))?
            };
            if cli.json {
                let verdict = if phi.is_empty() { "valid" } else { "consequence" };
                writeln!(
                    out,
                    "{}",
                    json!({
                        verdict: holds,
                        "countermodel": counter.as_ref().map(kripke_json),
                    })
                )?;
            } else if holds {
                writeln!(out, "{}", if phi.is_empty() { "valid" } else { "consequence holds" })?;
            } else {
                writeln!(out, "{}", if phi.is_empty() { "invalid" } else { "consequence fails" })?;
                if let Some(k) = &counter {
                    write_kripke(out, k)?;
                }
            }
            if holds {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Cmd::CheckProof { file, logic } => {
            let logic = parse_logic(logic)?;
            let text = read_file(file)?;
            let script = parse_script(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
            let verdict = check_proof(logic, &script, &CheckOptions::default());
            if cli.json {
                writeln!(out, "{}", json!({"logic": logic.to_string(), "verdict": verdict}))?;
            } else {
                writeln!(out, "{verdict}")?;
            }
            if verdict.is_accepted() {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Cmd::FindCountermodel {
            formula,
            logic,
            out: out_file,
            budget,
        } => {
            let f = parse_formula(formula)?;
            let logic = model_logic(logic)?;
            let outcome = find_countermodel(&f, logic, &budget.to_budget());
            match &outcome.found {
                Some((m, g)) => {
                    let rendered = model_to_json(m);
                    if cli.json {
                        writeln!(
                            out,
                            "{}",
                            json!({
                                "found": true,
                                "model": model_json_value(m),
                                "assignment": assignment_json(g),
                            })
                        )?;
                    } else {
                        writeln!(out, "countermodel found ({logic}, carrier {})", m.carrier_size())?;
                        match out_file {
                            Some(path) => {
                                std::fs::write(path, &rendered).map_err(|e| {
                                    CliError::Usage(format!("{}: {e}", path.display()))
                                })?;
                                writeln!(out, "model written to {}", path.display())?;
                            }
                            None => write!(out, "{rendered}")?,
                        }
                        write_assignment(out, g)?;
                    }
                    Ok(())
                }
                None => {
                    if cli.json {
                        writeln!(
                            out,
                            "{}",
                            json!({"found": false, "budget_exhausted": outcome.budget_exhausted})
                        )?;
                    } else {
                        writeln!(out, "none found within budget")?;
                    }
                    Err(CliError::Failed)
                }
            }
        }
        Cmd::ValidateModel { file } => {
            let text = read_file(file)?;
            let model = model_from_json(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
            let verdict = match &model {
                EnumeratedModel::El(m) => validate_el_model(m),
                EnumeratedModel::Iel(m) => validate_iel_model(m),
            };
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "class": model.class().to_string(),
                        "carrier": model.carrier_size(),
                        "verdict": verdict,
                    })
                )?;
            } else if verdict.is_accepted() {
                writeln!(out, "accepted ({}, carrier {})", model.class(), model.carrier_size())?;
            } else {
                writeln!(out, "{verdict}")?;
            }
            if verdict.is_accepted() {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Cmd::Enumerate { logic, dump, budget } => {
            let logic = model_logic(logic)?;
            let stream =
                enumerate_models_with(logic, &budget.to_budget(), &ValidationOptions::default());
            if *dump {
                for m in &stream.models {
                    write!(out, "{}", model_to_json(m))?;
                    writeln!(out, "---")?;
                }
                return Ok(());
            }
            let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
            for m in &stream.models {
                *by_size.entry(m.carrier_size()).or_insert(0) += 1;
            }
            if cli.json {
                let sizes: BTreeMap<String, usize> =
                    by_size.iter().map(|(k, v)| (k.to_string(), *v)).collect();
                writeln!(
                    out,
                    "{}",
                    json!({
                        "logic": logic.to_string(),
                        "total": stream.models.len(),
                        "by_carrier": sizes,
                        "budget_exhausted": stream.budget_exhausted,
                    })
                )?;
            } else {
                writeln!(
                    out,
                    "{logic}: {} validated models (poset size <= {})",
                    stream.models.len(),
                    budget.max_poset
                )?;
                for (size, count) in &by_size {
                    writeln!(out, "  carrier {size}: {count}")?;
                }
                if stream.budget_exhausted {
                    writeln!(out, "budget exhausted: stream truncated")?;
                }
            }
            Ok(())
        }
        Cmd::EmbedTest { phi, chi, budget } => {
            let premises = parse_formulas(phi)?;
            let chi = parse_formula(chi)?;
            let report = embedding_crosscheck(&premises, &chi, &budget.to_budget())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "consequence": report.consequence,
                        "agrees": report.agrees,
                        "refutation": report.pipeline_refutation.as_ref().map(|(m, g)| json!({
                            "model": model_json_value(&EnumeratedModel::El(m.clone())),
                            "assignment": assignment_json(g),
                        })),
                    })
                )?;
            } else {
                writeln!(
                    out,
                    "{}",
                    if report.consequence { "consequence holds" } else { "consequence fails" }
                )?;
                if let Some((m, g)) = &report.pipeline_refutation {
                    writeln!(out, "refuting model (carrier {}):", m.algebra.size)?;
                    write!(out, "{}", model_to_json(&EnumeratedModel::El(m.clone())))?;
                    write_assignment(out, g)?;
                }
                writeln!(out, "crosscheck: {}", if report.agrees { "agree" } else { "DISAGREE" })?;
            }
            if report.agrees {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Cmd::Reproduce {
            seed,
            trials,
            embed_samples,
            dp_pairs,
            sp_instances,
            fixtures,
            allow_an_anywhere,
            drop_scheme,
            skip_reflection_condition,
            budget,
        } => {
            let mut dropped = Vec::new();
            for name in drop_scheme {
                let scheme = SchemeName::from_str(name).map_err(CliError::Usage)?;
                dropped.push(scheme);
            }
            let mut opts = ReproOptions {
                budget: budget.to_budget(),
                trials: *trials,
                embed_samples: *embed_samples,
                dp_pairs: *dp_pairs,
                sp_instances: *sp_instances,
                seed: *seed,
                an_axioms_only: !*allow_an_anywhere,
                dropped_schemes: dropped,
                enforce_viii: !*skip_reflection_condition,
                ..ReproOptions::default()
            };
            if let Some(dir) = fixtures {
                opts.fixtures_dir = dir.clone();
            }
            let report = repro::run(&opts);
            if cli.json {
                let text =
                    serde_json::to_string_pretty(&report).expect("report serializes");
                writeln!(out, "{text}")?;
            } else {
                write!(out, "{}", report.render())?;
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let result = match out.flush() {
        Ok(()) => result,
        Err(e) => result.and(Err(CliError::from(e))),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Pipe) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
