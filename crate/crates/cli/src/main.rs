use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ambiguity_core::cpm::{check_dist_mixtures, contrast_with_dist, find_anomalies, smallest_pure_from_mixed};
use ambiguity_core::monads::MonadTag;
use ambiguity_core::pregroup::{load_lexicon, PregroupType};
use ambiguity_core::relate::search_counterexample;
use ambiguity_core::report::Report;
use ambiguity_core::suite::{self, Base, Suite, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "ambiguity", version, about = "Law suites and sentence semantics for enriched models of ambiguity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run law suites and print one block per report.
    Laws {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Restrict to these models (repeatable); all five by default.
        #[arg(long = "model", value_parser = parse_model)]
        models: Vec<MonadTag>,
        #[arg(long, default_value = "rel", value_parser = parse_base)]
        base: Base,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        seed: u64,
        /// Seeded instances per law.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Also write the reports as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse a sentence and print its meaning.
    Meaning {
        #[arg(long)]
        lexicon: PathBuf,
        /// Pregroup type to reduce to, e.g. "s" or "n".
        #[arg(long, default_value = "s")]
        target: String,
        /// Read the lexicon in another model.
        #[arg(long, value_parser = parse_model)]
        model: Option<MonadTag>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Search functional relations for a non-uniform e∘e.
    Counterexample {
        /// Largest carrier size searched.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=6))]
        size: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate CPM(Rel) states and their mixing anomalies.
    Cpm {
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        seed: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_model(s: &str) -> Result<MonadTag, String> {
    s.parse::<MonadTag>().map_err(|e| e.to_string())
}

fn parse_base(s: &str) -> Result<Base, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn write_json(path: &Path, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn print_reports(reports: &[Report]) {
    print!("{}", suite::summarize(reports));
}

fn reports_json(command: &str, reports: &[Report]) -> Value {
    json!({
        "command": command,
        "passed": reports.iter().all(Report::passed),
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    })
}

fn finish(command: &str, reports: &[Report], out: Option<&Path>) -> Result<bool, String> {
    print_reports(reports);
    if let Some(path) = out {
        write_json(path, &reports_json(command, reports))?;
    }
    Ok(reports.iter().all(Report::passed))
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Laws { suite, models, base, seed, samples, out } => {
            let config = SuiteConfig {
                models: if models.is_empty() { MonadTag::ALL.to_vec() } else { models },
                base,
                seed,
                samples: samples as usize,
            };
            let reports = suite::run(suite, &config);
            finish("laws", &reports, out.as_deref())
        }
        Command::Meaning { lexicon, target, model, out, words } => {
            let text = fs::read_to_string(&lexicon)
                .map_err(|e| format!("cannot read {}: {e}", lexicon.display()))?;
            let lex = load_lexicon(&text).map_err(|e| format!("{}: {e}", lexicon.display()))?;
            let lex = match model {
                Some(tag) => lex.convert(tag).map_err(|e| e.to_string())?,
                None => lex,
            };
            let target: PregroupType = target.parse().map_err(|e| format!("--target: {e}"))?;
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let (text, state) = lex.meaning(&refs, &target).map_err(|e| e.to_string())?;
            println!("{text}");
            if let Some(path) = out {
                write_json(
                    &path,
                    &json!({
                        "command": "meaning",
                        "sentence": words,
                        "target": target.to_string(),
                        "model": lex.tag().name(),
                        "base": lex.base_name(),
                        "meaning": text,
                        "state": state,
                    }),
                )?;
            }
            Ok(true)
        }
        Command::Counterexample { size, out } => {
            let reports = [search_counterexample(size as usize)];
            finish("counterexample", &reports, out.as_deref())
        }
        Command::Cpm { size, seed, samples, out } => {
            let anomalies = find_anomalies(size).map_err(|e| e.to_string())?;
            let mut main = anomalies.report();
            if anomalies.pure_from_mixed.is_empty() {
                let smallest = smallest_pure_from_mixed(ambiguity_core::cpm::MAX_CARRIER)
                    .map_err(|e| e.to_string())?;
                main.note(match smallest {
                    Some(n) => format!("smallest carrier with a pure-from-mixed witness: {n}"),
                    None => "no pure-from-mixed witness on any carrier up to the bound".into(),
                });
            }
            let mut reports = vec![main];
            if let Some(w) = anomalies.pure_from_mixed.first() {
                reports.push(contrast_with_dist(&w.mixed.0, &w.mixed.1));
            }
            let nonempty = |r: &ambiguity_core::base::RelMorphism| r.bits().iter().any(|b| *b);
            let pure_pair = anomalies
                .pure_from_pure
                .iter()
                .find(|w| nonempty(&w.left) && nonempty(&w.right))
                .or(anomalies.pure_from_pure.first());
            if let Some(w) = pure_pair {
                reports.push(contrast_with_dist(&w.left, &w.right));
            }
            reports.push(check_dist_mixtures(samples as usize, seed));
            finish("cpm", &reports, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
