use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use windex_core::classify::{classify, ClassificationReport, WeakAltIndex};
use windex_core::dot::{automaton_to_dot, tree_to_dot};
use windex_core::format::{
    parse_automaton, parse_det_automaton, parse_regular_tree, serialize_automaton, serialize_automaton_with_comments,
    serialize_det_automaton, serialize_regular_tree,
};
use windex_core::patterns::PatternAnalysis;
use windex_core::semantics::{alt_accepts, bounded_equiv, skurczynski, EquivOutcome, SamplerParams, SkurczynskiSpec};
use windex_core::transform::weaken;
use windex_core::{catalog, Error, IndexPair};

const OK: u8 = 0;
const FALSE: u8 = 1;
const USAGE: u8 = 2;
const INVALID: u8 = 3;
const UNSUPPORTED: u8 = 4;
const NON_WEAK: u8 = 5;

#[derive(Parser)]
#[command(name = "windex", version, about = "Borel rank and weak index of deterministic tree automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Borel class, deterministic and weak indices of a deterministic automaton
    Classify {
        path: PathBuf,
        /// Print the patterns behind each negative answer
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build an equivalent weak alternating automaton of minimal index
    Weaken {
        path: PathBuf,
        /// Output file; standard output if absent
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Decide whether an automaton accepts a regular tree
    Member { automaton: PathBuf, tree: PathBuf },
    /// Compare two automata on sampled regular trees
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Maximum number of nodes per sampled tree
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// Loop ranks, replication and flowers of the trimmed automaton
    Patterns { path: PathBuf },
    /// Emit a fixture automaton
    Fixture {
        kind: FixtureKind,
        /// Index such as `0,2` for skurczynski, a name for catalog
        arg: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of an automaton or a regular tree
    Dot { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureKind {
    Skurczynski,
    Catalog,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedGapConstruction { .. } => UNSUPPORTED,
            Error::NonWeaklyRecognizable { .. } => NON_WEAK,
            _ => INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| failure(INVALID, format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| failure(INVALID, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_json(r: &ClassificationReport) -> Value {
    let weak_alt = match &r.weak_alt_index {
        WeakAltIndex::Indices(v) => json!(v.iter().map(|i| i.to_string()).collect::<Vec<_>>()),
        WeakAltIndex::NonWeaklyRecognizable => Value::Null,
    };
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|e| {
            json!({
                "claim": e.claim,
                "pattern": e.witness.title(),
                "detail": e.witness.render(&r.trimmed),
                "witness": e.witness,
            })
        })
        .collect();
    json!({
        "borel": r.borel.name(),
        "det_index": r.det_index.to_string(),
        "weak_det_index": r.weak_det_index.map(|i| i.to_string()),
        "weak_alt_index": weak_alt,
        "witnesses": witnesses,
    })
}

fn cmd_classify(path: &Path, witnesses: bool, as_json: bool) -> Outcome {
    let a = parse_det_automaton(&read(path)?)?;
    let report = classify(&a)?;
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report_json(&report)).expect("reports serialize"));
    } else {
        print!("{}", report.render(witnesses));
        eprintln!(
            "trim {:.3}s, analysis {:.3}s",
            report.trim_time.as_secs_f64(),
            report.analysis_time.as_secs_f64()
        );
    }
    Ok(OK)
}

fn cmd_weaken(path: &Path, out: Option<&Path>) -> Outcome {
    let a = parse_det_automaton(&read(path)?)?;
    let (b, trace) = weaken(&a)?;
    write_or_print(out, &serialize_automaton_with_comments(&b, &trace.comments()))?;
    if let Some(p) = out {
        println!("wrote {}: {} states, index {}", p.display(), b.num_states(), b.index());
    }
    Ok(OK)
}

fn cmd_member(automaton: &Path, tree: &Path) -> Outcome {
    let a = parse_automaton(&read(automaton)?)?;
    let t = parse_regular_tree(&read(tree)?)?;
    if alt_accepts(&a, &t)? {
        println!("member");
        Ok(OK)
    } else {
        println!("not a member");
        Ok(FALSE)
    }
}

fn cmd_compare(a: &Path, b: &Path, seed: u64, samples: usize, size: usize) -> Outcome {
    let x = parse_automaton(&read(a)?)?;
    let y = parse_automaton(&read(b)?)?;
    let params = SamplerParams::new(seed, size, x.alphabet(), samples)?;
    match bounded_equiv(&x, &y, &params)? {
        EquivOutcome::Pass { checked } => {
            println!("pass: {checked} trees agree");
            Ok(OK)
        }
        EquivOutcome::Counterexample(t) => {
            println!("counterexample:");
            print!("{}", serialize_regular_tree(&t));
            Ok(FALSE)
        }
    }
}

fn cmd_patterns(path: &Path) -> Outcome {
    let a = parse_det_automaton(&read(path)?)?;
    let report = classify(&a)?;
    let t = &report.trimmed;
    let an = PatternAnalysis::new(t);
    println!("loop ranks:");
    for q in t.states() {
        let ranks: Vec<String> = an.loop_ranks()[q.0].iter().map(|r| r.to_string()).collect();
        println!("  {} (rank {}): {{{}}}", t.name(q), t.rank(q), ranks.join(", "));
    }
    let replicated: Vec<&str> = an.replicated_states().into_iter().map(|q| t.name(q)).collect();
    println!("replicated by accepting loops: {{{}}}", replicated.join(", "));
    let shown = |found: bool| if found { "present" } else { "absent" };
    for k in 1..=4 {
        for i in IndexPair::level(k) {
            println!(
                "{i}: flower {}, weak flower {}, replicated flower {}, replicated weak flower {}",
                shown(an.find_flower(i).is_some()),
                shown(an.find_weak_flower(i).is_some()),
                shown(an.find_replicated_flower(i, false).is_some()),
                shown(an.find_replicated_flower(i, true).is_some()),
            );
        }
    }
    match an.find_split() {
        Some(w) => println!("split: {}", windex_core::Witness::Split(w).render(t)),
        None => println!("split: absent"),
    }
    Ok(OK)
}

fn parse_index(arg: &str) -> Option<IndexPair> {
    let inner = arg.trim().trim_start_matches('(').trim_end_matches(')');
    let (i, k) = inner.split_once(',')?;
    IndexPair::new(i.trim().parse().ok()?, k.trim().parse().ok()?).ok()
}

fn cmd_fixture(kind: FixtureKind, arg: &str, out: Option<&Path>) -> Outcome {
    let text = match kind {
        FixtureKind::Skurczynski => {
            let i = parse_index(arg).ok_or_else(|| failure(USAGE, format!("`{arg}` is not an index like 0,2")))?;
            serialize_automaton(&skurczynski(SkurczynskiSpec::new(i)?))
        }
        FixtureKind::Catalog => {
            let a = catalog::by_name(arg).ok_or_else(|| {
                failure(USAGE, format!("unknown catalog automaton `{arg}`; known: {}", catalog::NAMES.join(", ")))
            })?;
            serialize_det_automaton(&a)
        }
    };
    write_or_print(out, &text)?;
    Ok(OK)
}

fn is_tree_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| matches!(l.split_whitespace().next(), Some("arity" | "root" | "node")))
}

fn cmd_dot(path: &Path) -> Outcome {
    let text = read(path)?;
    if is_tree_text(&text) {
        print!("{}", tree_to_dot(&parse_regular_tree(&text)?));
    } else {
        print!("{}", automaton_to_dot(&parse_automaton(&text)?));
    }
    Ok(OK)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Classify { path, witnesses, json } => cmd_classify(&path, witnesses, json),
        Command::Weaken { path, out } => cmd_weaken(&path, out.as_deref()),
        Command::Member { automaton, tree } => cmd_member(&automaton, &tree),
        Command::Compare { a, b, seed, samples, size } => cmd_compare(&a, &b, seed, samples, size),
        Command::Patterns { path } => cmd_patterns(&path),
        Command::Fixture { kind, arg, out } => cmd_fixture(kind, &arg, out.as_deref()),
        Command::Dot { path } => cmd_dot(&path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
