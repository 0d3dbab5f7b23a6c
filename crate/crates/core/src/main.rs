use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use redip::alphabet::{Alphabet, Valuation};
use redip::dot::export_dot;
use redip::error::{Error, Result};
use redip::lang::{dirac_prior, infer, parse_guard, parse_with, pretty, translate, Program};
use redip::oracle::{compare, mc_sample, PgaSampler, PriorSampler};
use redip::pga::Pga;
use redip::query::{guard_probability, marginal, parse_valuation, QueryKind, QueryResult};
use redip::rational::{format_fraction, to_decimal, ExtRational, Rational};

const EXIT_INPUT: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_ORACLE: u8 = 4;
const EXIT_ANALYSIS: u8 = 5;

#[derive(Parser)]
#[command(name = "redip", version, about = "Exact inference for loop-free discrete probabilistic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Program source (`.redip`).
    file: PathBuf,
    /// Prior as a PGA JSON file; defaults to all variables at 0.
    #[arg(long)]
    prior: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Significant digits of decimal renderings.
    #[arg(long, default_value_t = 6)]
    digits: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, desugar and pretty-print a program.
    Parse {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the posterior, its normalizing constant and optional queries.
    Infer {
        #[command(flatten)]
        common: Common,
        /// Report the marginal of this variable.
        #[arg(long, requires = "upto")]
        marginal: Option<String>,
        /// Largest value of the marginal to report.
        #[arg(long)]
        upto: Option<u64>,
        /// Probability of a guard, e.g. "r >= 1". Repeatable.
        #[arg(long)]
        query: Vec<String>,
        /// Answer queries on the unnormalized posterior.
        #[arg(long)]
        unnormalized: bool,
        /// Write the posterior automaton as PGA JSON.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Posterior probability of a guard or posterior coefficient at a valuation.
    Query {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "at", required_unless_present = "at")]
        guard: Option<String>,
        /// Valuation such as "x=2,r=0"; unnamed variables are 0.
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        unnormalized: bool,
    },
    /// Mass and PGA verdict of a PGA JSON file or of a translated program.
    Check {
        file: PathBuf,
        #[arg(long)]
        prior: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Write the posterior automaton (or a PGA JSON file) as Graphviz DOT.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        prior: Option<PathBuf>,
        /// Output path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        unnormalized: bool,
    },
    /// Cross-check the pipeline against the operational semantics.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Mode::Enumerate)]
        mode: Mode,
        /// Largest sampled value enumerated per distribution.
        #[arg(long, default_value_t = 40)]
        trunc: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Guard whose conditional frequency is reported in mc mode. Repeatable.
        #[arg(long)]
        query: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Enumerate,
    Mc,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Lang(_)
        | Error::Format(_)
        | Error::UnknownVariable(_)
        | Error::InvalidParameter(_)
        | Error::CustomMassNotOne(_)
        | Error::CustomNotNormalized(_) => EXIT_INPUT,
        Error::InfeasibleObservation => EXIT_INFEASIBLE,
        Error::Io { .. } => EXIT_IO,
        Error::UnsupportedIid | Error::PriorNotFinite => EXIT_ORACLE,
        Error::InfiniteMass | Error::ZeroMass | Error::AlphabetMismatch { .. } => EXIT_ANALYSIS,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn load_pga(path: &Path) -> Result<Pga> {
    Ok(redip::json::deserialize(&read(path)?)?)
}

/// Program, its alphabet (extended by the prior's variables) and the prior over that alphabet.
fn load(file: &Path, prior: Option<&Path>) -> Result<(Program, Alphabet, Pga)> {
    let src = read(file)?;
    let prior = prior.map(load_pga).transpose()?;
    let extra = prior.as_ref().map_or_else(|| Alphabet::new(Vec::<String>::new()), |p| p.alphabet().clone());
    let (program, alphabet) = parse_with(&src, &extra)?;
    let base = file.parent().unwrap_or(Path::new(""));
    let program = program.with_custom_base(base);
    let prior = match prior {
        Some(p) => p.extend_alphabet(&alphabet)?,
        None => dirac_prior(&alphabet),
    };
    Ok((program, alphabet, prior))
}

fn show(r: &Rational, digits: usize) -> String {
    let exact = r.to_string();
    let dec = to_decimal(r, digits);
    if dec == exact {
        exact
    } else {
        format!("{exact} (~{dec})")
    }
}

fn print_results(results: &[QueryResult], digits: usize) {
    for q in results {
        for v in &q.values {
            println!("{} = {}", v.label, show(&v.value, digits));
        }
    }
}

fn cmd_parse(file: &Path, as_json: bool) -> Result<u8> {
    let (p, a) = redip::lang::parse(&read(file)?)?;
    let text = pretty(&p, &a);
    if as_json {
        let out = json!({"alphabet": a.names(), "size": p.size(), "program": text});
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("// variables: {}", a.names().join(", "));
        println!("// size: {}", p.size());
        println!("{text}");
    }
    Ok(0)
}

fn cmd_infer(
    c: &Common,
    marginal_var: Option<&str>,
    upto: Option<u64>,
    queries: &[String],
    unnormalized: bool,
    save: Option<&Path>,
) -> Result<u8> {
    let (p, alphabet, prior) = load(&c.file, c.prior.as_deref())?;
    let report = infer(&p, &prior)?;
    let target = if unnormalized { &report.unnormalized } else { &report.posterior };
    let d = Some(c.digits);
    let mut results = vec![
        QueryResult::single(QueryKind::NormalizingConstant, "normalizing constant", report.normalizing_constant.clone(), d),
        QueryResult::single(QueryKind::Mass, "violation mass", report.violation_mass.clone(), d),
    ];
    for q in queries {
        let g = parse_guard(q, &alphabet)?;
        results.push(QueryResult::single(QueryKind::GuardProbability, format!("P({q})"), guard_probability(target, &g)?, d));
    }
    if let (Some(name), Some(k)) = (marginal_var, upto) {
        let x = alphabet.var(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let values = marginal(target, x, k)?;
        let labelled = values.into_iter().enumerate().map(|(i, r)| (format!("P({name} = {i})"), r));
        results.push(QueryResult::new(QueryKind::Marginal, labelled, d));
    }
    if let Some(path) = save {
        write(path, &redip::json::serialize(target))?;
    }
    if c.json {
        println!("{}", serde_json::to_string_pretty(&results).expect("serializable"));
    } else {
        print_results(&results, c.digits);
    }
    Ok(0)
}

fn cmd_query(c: &Common, guard: Option<&str>, at: Option<&str>, unnormalized: bool) -> Result<u8> {
    let (p, alphabet, prior) = load(&c.file, c.prior.as_deref())?;
    let report = infer(&p, &prior)?;
    let target = if unnormalized { &report.unnormalized } else { &report.posterior };
    let d = Some(c.digits);
    let result = match (guard, at) {
        (Some(g), _) => {
            let phi = parse_guard(g, &alphabet)?;
            QueryResult::single(QueryKind::GuardProbability, format!("P({g})"), guard_probability(target, &phi)?, d)
        }
        (None, Some(text)) => {
            let sigma = parse_valuation(text, &alphabet)?;
            let label = format!("P({})", sigma.display(&alphabet));
            QueryResult::single(QueryKind::Coefficient, label, target.coefficient(&sigma)?, d)
        }
        (None, None) => unreachable!("clap requires one of --guard and --at"),
    };
    if c.json {
        println!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
    } else {
        print_results(&[result], c.digits);
    }
    Ok(0)
}

fn automaton_for(file: &Path, prior: Option<&Path>, unnormalized: bool) -> Result<Pga> {
    if is_json(file) {
        return load_pga(file);
    }
    let (p, _, prior) = load(file, prior)?;
    if unnormalized {
        translate(&p, &prior)
    } else {
        Ok(infer(&p, &prior)?.posterior)
    }
}

fn cmd_check(file: &Path, prior: Option<&Path>, as_json: bool) -> Result<u8> {
    let a = automaton_for(file, prior, true)?;
    let v = a.validate();
    if as_json {
        let mass = match &v.mass {
            ExtRational::Finite(m) => format_fraction(m),
            ExtRational::Infinity => "inf".to_string(),
        };
        let out = json!({"mass": mass, "is_pga": v.is_pga, "states": a.num_states(), "size": a.size(), "issues": v.issues});
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!("mass = {}, PGA: {}", v.mass, if v.is_pga { "yes" } else { "no" });
        println!("states = {}, size = {}", a.num_states(), a.size());
        for issue in &v.issues {
            println!("{issue}");
        }
    }
    Ok(0)
}

fn cmd_export_dot(file: &Path, prior: Option<&Path>, output: Option<&Path>, unnormalized: bool) -> Result<u8> {
    let a = automaton_for(file, prior, unnormalized)?;
    let dot = export_dot(&a);
    match output {
        Some(path) => write(path, &dot)?,
        None => print!("{dot}"),
    }
    Ok(0)
}

fn cmd_oracle(c: &Common, mode: Mode, trunc: u64, samples: u64, seed: u64, queries: &[String]) -> Result<u8> {
    let (p, alphabet, prior) = load(&c.file, c.prior.as_deref())?;
    match mode {
        Mode::Enumerate => {
            let v = compare(&p, &prior, trunc)?;
            let verdict = if v.pass { "PASS" } else { "FAIL" };
            if c.json {
                let out = json!({
                    "verdict": verdict,
                    "checked": v.checked,
                    "worst_discrepancy": format_fraction(&v.worst_discrepancy),
                    "residual": format_fraction(&v.residual),
                    "configurations": v.enumeration.configurations,
                    "failures": v.failures,
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                println!("{verdict}: {} quantities checked over {} configurations", v.checked, v.enumeration.configurations);
                println!("worst discrepancy = {}", to_decimal(&v.worst_discrepancy, c.digits));
                println!("truncation residual = {}", to_decimal(&v.residual, c.digits));
                for f in &v.failures {
                    eprintln!("{f}");
                }
            }
            Ok(if v.pass { 0 } else { EXIT_ORACLE })
        }
        Mode::Mc => {
            let sampler = if c.prior.is_some() { PriorSampler::Pga(PgaSampler::new(&prior)?) } else { PriorSampler::Dirac };
            let r = mc_sample(&p, &alphabet, &sampler, seed, samples.max(1))?;
            let mut estimates = Vec::new();
            for q in queries {
                let g = parse_guard(q, &alphabet)?;
                estimates.push((format!("P({q} | no violation)"), r.conditional_probability(&g)));
            }
            let mut top: Vec<(&Valuation, &u64)> = r.terminal.iter().collect();
            top.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
            top.truncate(10);
            if c.json {
                let out = json!({
                    "samples": r.samples,
                    "seed": seed,
                    "violation_frequency": r.violation_frequency(),
                    "estimates": estimates.iter().map(|(l, e)| json!({"label": l, "value": e})).collect::<Vec<_>>(),
                    "most_frequent": top.iter().map(|(s, n)| json!({"valuation": s.display(&alphabet).to_string(), "count": n})).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                println!("samples = {}, seed = {seed}", r.samples);
                println!("violation frequency = {:.*}", c.digits, r.violation_frequency());
                for (label, e) in &estimates {
                    match e {
                        Some(v) => println!("{label} = {v:.*}", c.digits),
                        None => println!("{label} undefined: every run violated an observation"),
                    }
                }
                for (s, n) in top {
                    println!("{} : {n}", s.display(&alphabet));
                }
            }
            Ok(0)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Parse { file, json } => cmd_parse(&file, json),
        Command::Infer { common, marginal, upto, query, unnormalized, save } => {
            cmd_infer(&common, marginal.as_deref(), upto, &query, unnormalized, save.as_deref())
        }
        Command::Query { common, guard, at, unnormalized } => {
            cmd_query(&common, guard.as_deref(), at.as_deref(), unnormalized)
        }
        Command::Check { file, prior, json } => cmd_check(&file, prior.as_deref(), json),
        Command::ExportDot { file, prior, output, unnormalized } => {
            cmd_export_dot(&file, prior.as_deref(), output.as_deref(), unnormalized)
        }
        Command::Oracle { common, mode, trunc, samples, seed, query } => {
            cmd_oracle(&common, mode, trunc, samples, seed, &query)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
