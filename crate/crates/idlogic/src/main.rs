//! Command-line front end: parse/check/evaluate/transform workflows over
//! theory and structure files.
//!
//! Exit codes are a stable contract: 0 success (total / satisfied /
//! certified), 1 parse or input error, 2 semantic error (vocabulary,
//! domain, missing interpretation), 3 negative verdict (not total,
//! unsatisfied, no models, certificate unknown), 4 budget exceeded.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use idlogic::checker;
use idlogic::engine::{self, WfPair};
use idlogic::error::Error;
use idlogic::ground::{ground_definition, GroundingMode};
use idlogic::structure::{structure_from_json, Structure};
use idlogic::syntax::{parse_theory, Definition, Formula, Theory};
use idlogic::transform::{
    certify_reduction_partition, circumscription, completion, make_partition, pos_ind,
    Certification,
};
use idlogic::Budget;

#[derive(Parser)]
#[command(name = "idlogic", version, about = "Finite-model engine for logic with inductive definitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFiles {
    /// Theory file (`-` for stdin)
    theory: String,
    /// Structure file, JSON (`-` for stdin)
    structure: String,
    /// Machine-readable JSON output (schema v1)
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the well-founded bounds of a definition and report totality
    Wfm {
        #[command(flatten)]
        files: CommonFiles,
        /// Index among the theory's definitions
        #[arg(long = "def", default_value_t = 0)]
        def_index: usize,
        /// Print the stage-by-stage bounds
        #[arg(long)]
        trace: bool,
    },
    /// Check satisfaction of the full theory in the structure
    Check {
        #[command(flatten)]
        files: CommonFiles,
    },
    /// Enumerate models of the theory over free predicates
    Models {
        #[command(flatten)]
        files: CommonFiles,
        /// Comma-separated predicates to vary (default: all uninterpreted)
        #[arg(long)]
        free: Option<String>,
        /// List at most this many models
        #[arg(long)]
        max: Option<usize>,
    },
    /// Translate definitions to classical logic and print the theory
    Transform {
        /// Theory file (`-` for stdin)
        theory: String,
        /// Translation to apply to each definition
        #[arg(long, value_parser = ["complete", "posind", "circ"])]
        op: String,
    },
    /// Certify a grouping of the defined predicates as a reduction partition
    Partition {
        #[command(flatten)]
        files: CommonFiles,
        /// Parts separated by `/`, predicates by `,` — e.g. `E/O`
        #[arg(long)]
        groups: String,
        /// Index among the theory's definitions
        #[arg(long = "def", default_value_t = 0)]
        def_index: usize,
    },
    /// Dump the ground rule bodies, or the dependency graph as DOT
    Ground {
        #[command(flatten)]
        files: CommonFiles,
        #[arg(long = "def", default_value_t = 0)]
        def_index: usize,
        /// Emit the dependency graph in DOT format instead of rule bodies
        #[arg(long)]
        dot: bool,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_)
        | Error::Syntax { .. }
        | Error::Arity { .. }
        | Error::UndeclaredSymbol { .. }
        | Error::StructureFile(_) => 1,
        Error::BudgetExceeded { .. } | Error::DomainTooLarge { .. } => 4,
        Error::NotTotal(_) => 3,
        _ => 2,
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn budget_from_env() -> Budget {
    let mut budget = Budget::default();
    if let Ok(text) = std::env::var("IDLOGIC_BUDGET") {
        if let Ok(n) = text.trim().parse::<u64>() {
            budget.candidates = n as u128;
            budget.atoms = usize::try_from(n).unwrap_or(usize::MAX);
        }
    }
    budget
}

fn load_theory(path: &str) -> Result<Theory, Error> {
    parse_theory(&read_input(path)?)
}

fn load_structure(path: &str, theory: &Theory) -> Result<Structure, Error> {
    structure_from_json(&read_input(path)?, &theory.vocab)
}

fn pick_definition(theory: &Theory, index: usize) -> Result<Definition, Error> {
    let defs = theory.definitions();
    defs.get(index).map(|d| (*d).clone()).ok_or_else(|| {
        Error::FreeSymbolOutsideVocab(format!(
            "definition {index} (theory has {} definitions)",
            defs.len()
        ))
    })
}

fn atom_names(s: &Structure, preds: &BTreeSet<String>) -> Vec<String> {
    s.true_atoms()
        .iter()
        .filter(|a| preds.contains(&a.pred))
        .map(|a| a.display(s.domain()))
        .collect()
}

fn tuple_text(s: &Structure, tuple: &[idlogic::structure::Elem]) -> String {
    let names: Vec<&str> = tuple.iter().map(|e| s.domain().name(*e)).collect();
    if names.len() == 1 {
        names[0].to_string()
    } else {
        format!("({})", names.join(","))
    }
}

fn run_wfm(files: &CommonFiles, def_index: usize, trace: bool) -> Result<u8, Error> {
    let theory = load_theory(&files.theory)?;
    let structure = load_structure(&files.structure, &theory)?;
    let def = pick_definition(&theory, def_index)?;
    let pair = engine::well_founded(&def, &structure, trace)?;
    let defined: BTreeSet<String> = def.defined_symbols();

    if files.json {
        println!("{}", wfm_json(&pair, &defined));
    } else {
        print_wfm(&pair, &def, &defined);
    }
    Ok(if pair.total() { 0 } else { 3 })
}

fn print_wfm(pair: &WfPair, def: &Definition, defined: &BTreeSet<String>) {
    println!("total: {}", if pair.total() { "yes" } else { "no" });
    if pair.total() {
        for pred in defined {
            let rel = pair.lb.rel(pred).expect("defined predicate");
            if def.head_arity(pred) == Some(0) {
                println!("{pred} = {}", if !rel.is_empty() { "true" } else { "false" });
            } else {
                let tuples: Vec<String> =
                    rel.tuples().map(|t| tuple_text(&pair.lb, t)).collect();
                println!("{pred} = {{{}}}", tuples.join(", "));
            }
        }
    } else {
        for pred in defined {
            let lbr = pair.lb.rel(pred).expect("defined");
            let ubr = pair.ub.rel(pred).expect("defined");
            if def.head_arity(pred) != Some(0) {
                let lbs: Vec<String> = lbr.tuples().map(|t| tuple_text(&pair.lb, t)).collect();
                let ubs: Vec<String> = ubr.tuples().map(|t| tuple_text(&pair.ub, t)).collect();
                println!("lb: {pred} = {{{}}}", lbs.join(", "));
                println!("ub: {pred} = {{{}}}", ubs.join(", "));
            }
        }
        for atom in pair.undefined_atoms() {
            println!("{}: undefined", atom.display(pair.lb.domain()));
        }
    }
    if let Some(stages) = &pair.trace {
        for (k, (i, j)) in stages.iter().enumerate() {
            println!(
                "stage {k}: I = {{{}}}, J = {{{}}}",
                atom_names(i, defined).join(", "),
                atom_names(j, defined).join(", ")
            );
        }
    }
}

fn wfm_json(pair: &WfPair, defined: &BTreeSet<String>) -> Value {
    let mut preds = serde_json::Map::new();
    for pred in defined {
        let lbr = pair.lb.rel(pred).expect("defined");
        let ubr = pair.ub.rel(pred).expect("defined");
        let tuples = |s: &Structure, rel: &idlogic::structure::Relation, filter: &dyn Fn(&[idlogic::structure::Elem]) -> bool| -> Vec<Value> {
            rel.tuples()
                .filter(|t| filter(t))
                .map(|t| {
                    Value::Array(
                        t.iter()
                            .map(|e| Value::String(s.domain().name(*e).to_string()))
                            .collect(),
                    )
                })
                .collect()
        };
        let truths = tuples(&pair.lb, lbr, &|_| true);
        let undef = tuples(&pair.ub, ubr, &|t| !lbr.contains(t));
        preds.insert(pred.clone(), json!({ "true": truths, "undefined": undef }));
    }
    let mut out = json!({
        "schema": "v1",
        "command": "wfm",
        "total": pair.total(),
        "predicates": Value::Object(preds),
    });
    if let Some(stages) = &pair.trace {
        let all: BTreeSet<String> = defined.clone();
        let trace: Vec<Value> = stages
            .iter()
            .map(|(i, j)| {
                json!({
                    "lb": atom_names(i, &all),
                    "ub": atom_names(j, &all),
                })
            })
            .collect();
        out["trace"] = Value::Array(trace);
    }
    out
}

fn run_check(files: &CommonFiles) -> Result<u8, Error> {
    let theory = load_theory(&files.theory)?;
    let structure = load_structure(&files.structure, &theory)?;
    let budget = budget_from_env();
    let ok = checker::satisfies_theory(&structure, &theory, &budget)?;
    if files.json {
        println!("{}", json!({ "schema": "v1", "command": "check", "satisfied": ok }));
    } else {
        println!("satisfied: {}", if ok { "yes" } else { "no" });
    }
    Ok(if ok { 0 } else { 3 })
}

fn run_models(files: &CommonFiles, free: &Option<String>, max: Option<usize>) -> Result<u8, Error> {
    let theory = load_theory(&files.theory)?;
    let structure = load_structure(&files.structure, &theory)?;
    let budget = budget_from_env();
    let free_preds: BTreeSet<String> = match free {
        Some(spec) => spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => theory
            .vocab
            .predicates()
            .filter(|(n, _)| structure.rel(n).is_none())
            .map(|(n, _)| n.to_string())
            .collect(),
    };
    let models = checker::enumerate_models(&theory, &structure, &free_preds, &budget)?;
    let limit = max.unwrap_or(usize::MAX);

    if files.json {
        let listed: Vec<Value> = models
            .iter()
            .take(limit)
            .map(|m| Value::Array(atom_names(m, &free_preds).into_iter().map(Value::String).collect()))
            .collect();
        println!(
            "{}",
            json!({
                "schema": "v1",
                "command": "models",
                "count": models.len(),
                "truncated": models.len() > limit,
                "models": listed,
            })
        );
    } else {
        println!("models: {}", models.len());
        for (k, m) in models.iter().take(limit).enumerate() {
            println!("model {}: {{{}}}", k + 1, atom_names(m, &free_preds).join(", "));
        }
        if models.len() > limit {
            println!("... {} more", models.len() - limit);
        }
    }
    Ok(if models.is_empty() { 3 } else { 0 })
}

fn run_transform(theory_path: &str, op: &str) -> Result<u8, Error> {
    let theory = load_theory(theory_path)?;
    let translate = |d: &Definition| -> Formula {
        match op {
            "complete" => completion(d),
            "posind" => pos_ind(d),
            _ => circumscription(d),
        }
    };
    let axioms = theory
        .axioms
        .iter()
        .map(|a| match a {
            Formula::Def(d) => translate(d),
            other => other.clone(),
        })
        .collect();
    let out = Theory { vocab: theory.vocab.clone(), axioms };
    print!("{out}");
    Ok(0)
}

fn run_partition(files: &CommonFiles, groups: &str, def_index: usize) -> Result<u8, Error> {
    let theory = load_theory(&files.theory)?;
    let structure = load_structure(&files.structure, &theory)?;
    let def = pick_definition(&theory, def_index)?;
    let budget = budget_from_env();

    let mut grouping: BTreeMap<String, usize> = BTreeMap::new();
    for (i, part) in groups.split('/').enumerate() {
        for pred in part.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            grouping.insert(pred.to_string(), i);
        }
    }
    let partition = make_partition(&def, &grouping)?;

    let mut totals = Vec::new();
    for part in partition.parts() {
        totals.push(engine::is_total(part, &structure, &budget)?);
    }
    let cert = certify_reduction_partition(&def, &partition, &structure, &budget)?;

    if files.json {
        let witness = match &cert {
            Certification::Certified => vec![],
            Certification::Unknown { witness } => witness
                .iter()
                .map(|a| Value::String(a.display(structure.domain())))
                .collect(),
        };
        println!(
            "{}",
            json!({
                "schema": "v1",
                "command": "partition",
                "status": if cert.is_certified() { "certified" } else { "unknown" },
                "parts_total": totals,
                "witness": witness,
            })
        );
    } else {
        for (k, (part, total)) in partition.parts().iter().zip(&totals).enumerate() {
            let heads: Vec<String> = part.defined_symbols().into_iter().collect();
            println!(
                "part {}: defines {}; {}",
                k + 1,
                heads.join(", "),
                if *total { "total" } else { "not total" }
            );
        }
        match &cert {
            Certification::Certified => println!("reduction partition: certified"),
            Certification::Unknown { witness } => {
                println!("reduction partition: unknown");
                let atoms: Vec<String> =
                    witness.iter().map(|a| a.display(structure.domain())).collect();
                println!("cycle: {}", atoms.join(", "));
            }
        }
    }
    Ok(if cert.is_certified() { 0 } else { 3 })
}

fn run_ground(files: &CommonFiles, def_index: usize, dot: bool) -> Result<u8, Error> {
    let theory = load_theory(&files.theory)?;
    let structure = load_structure(&files.structure, &theory)?;
    let def = pick_definition(&theory, def_index)?;
    let budget = budget_from_env();
    let defined: Vec<String> = def.defined_symbols().into_iter().collect();
    let base = structure.without_preds(defined.iter().map(|s| s.as_str()));
    let g = ground_definition(&def, &base, GroundingMode::FoldOpens, &budget)?;
    if dot {
        print!("{}", g.dependency_graph().to_dot());
    } else {
        print!("{}", g.dump());
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Wfm { files, def_index, trace } => run_wfm(files, *def_index, *trace),
        Command::Check { files } => run_check(files),
        Command::Models { files, free, max } => run_models(files, free, *max),
        Command::Transform { theory, op } => run_transform(theory, op),
        Command::Partition { files, groups, def_index } => run_partition(files, groups, *def_index),
        Command::Ground { files, def_index, dot } => run_ground(files, *def_index, *dot),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
