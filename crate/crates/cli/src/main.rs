use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use multisect::number_theory::{DEFAULT_BUDGET, DEFAULT_SEED};
use multisect::plot::slope_label;
use multisect::{
    bisector_vector, extend_sequence, msect, parse_sequence, parse_vector, pow2_sectable,
    render_svg, verify_sequence, Budget, EquisectorSequence, Error, IntVector, MsectOptions,
    PlotSpec, SearchConfig, SectorStatus,
};
use serde::Serialize;
use serde_json::Value;

mod report;

use report::{BisectorReport, Pow2Report, SectableReport, SequenceReport, VerifyReport};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "multisect",
    version,
    about = "Exact angle multisection of integer vectors"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized factoring.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Work budget for factoring and root search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Accept chains that end at a negative multiple of the second vector.
    #[arg(long, global = true)]
    allow_antiparallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the angle between A and B splits into M equal integer parts.
    Sectable {
        #[arg(short)]
        m: u32,
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        a: IntVector,
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        b: IntVector,
    },
    /// Integer bisector of the angle between A and B.
    Bisector {
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        a: IntVector,
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        b: IntVector,
    },
    /// Decide 2^E-sectability through the half-angle cosine chain.
    Pow2 {
        #[arg(short)]
        e: u32,
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        a: IntVector,
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        b: IntVector,
    },
    /// Extend the chain C0, C1 by K reflections.
    Extend {
        #[arg(short)]
        k: usize,
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        c0: IntVector,
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        c1: IntVector,
    },
    /// Check an equal-angle chain, given as one vector per line or as a JSON report.
    Verify {
        file: PathBuf,
        /// Required endpoint, up to a positive multiple.
        #[arg(long, value_parser = vector_arg, allow_hyphen_values = true)]
        expect: Option<IntVector>,
    },
    /// Draw a planar chain as an SVG fan of lines.
    Plot {
        /// Vectors to draw, in order. Options must come before them.
        #[arg(value_parser = vector_arg, allow_hyphen_values = true)]
        vectors: Vec<IntVector>,
        /// Read the chain from a file instead.
        #[arg(long, conflicts_with = "vectors")]
        file: Option<PathBuf>,
        /// Extend the chain by K reflections before drawing.
        #[arg(short, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 520)]
        width: u32,
        #[arg(long, default_value_t = 520)]
        height: u32,
        #[arg(long)]
        no_labels: bool,
        /// Write the SVG here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn vector_arg(s: &str) -> Result<IntVector, String> {
    parse_vector(s).map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_)
            | Error::Dependent
            | Error::BudgetExhausted
            | Error::IncompleteFactorization
            | Error::TooManyDivisors { .. } => EXIT_UNKNOWN,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("multisect: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Sectable { m, a, b } => cmd_sectable(cli, *m, a, b),
        Command::Bisector { a, b } => cmd_bisector(cli, a, b),
        Command::Pow2 { e, a, b } => cmd_pow2(cli, *e, a, b),
        Command::Extend { k, c0, c1 } => cmd_extend(cli, *k, c0, c1),
        Command::Verify { file, expect } => cmd_verify(cli, file, expect.as_ref()),
        Command::Plot {
            vectors,
            file,
            k,
            width,
            height,
            no_labels,
            out,
        } => {
            let base = match file {
                Some(path) => load_chains(path)?
                    .sequences
                    .into_iter()
                    .next()
                    .ok_or_else(|| usage(format!("{} contains no sequence", path.display())))?,
                None => vectors.clone(),
            };
            let spec = PlotSpec {
                vectors: extend_chain(base, *k)?,
                width: *width,
                height: *height,
                scale: PlotSpec::DEFAULT_SCALE,
                labels: !no_labels,
            };
            cmd_plot(&spec, out.as_deref())
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn search(cli: &Cli) -> SearchConfig {
    SearchConfig {
        budget: cli.budget,
        seed: cli.seed,
        ..SearchConfig::default()
    }
}

fn join(vs: &[IntVector]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_sectable(cli: &Cli, m: u32, a: &IntVector, b: &IntVector) -> Outcome {
    let opts = MsectOptions {
        search: search(cli),
        allow_antiparallel: cli.allow_antiparallel,
    };
    let d = msect(a, b, m, &opts)?;
    if d.budget_exhausted {
        eprintln!(
            "multisect: work budget exhausted after {} units",
            cli.budget
        );
    }
    if cli.json {
        print_json(&SectableReport::new(a, b, &d));
    } else {
        println!("status: {}", d.status);
        println!("m: {m}");
        println!(
            "p: {}  |a|^2: {}  |b|^2: {}  s^2: {}",
            d.gram.p, d.gram.na, d.gram.nb, d.gram.s2
        );
        if let Some(f) = &d.polynomial {
            println!("polynomial: {f}");
        }
        if d.status != SectorStatus::Indeterminate {
            let roots: Vec<String> = d.roots.iter().map(|t| t.to_string()).collect();
            if roots.is_empty() {
                println!("roots: none");
            } else {
                println!("roots: {}", roots.join(" "));
            }
        }
        for s in &d.sequences {
            println!("sequence: {}", join(&s.vectors));
        }
        for (t, s) in &d.rejected_antiparallel {
            println!("antiparallel (t = {t}): {}", join(&s.vectors));
        }
    }
    Ok(match d.status {
        SectorStatus::Sectable => EXIT_YES,
        SectorStatus::NotSectable => EXIT_NO,
        SectorStatus::Indeterminate => EXIT_UNKNOWN,
    })
}

fn cmd_bisector(cli: &Cli, a: &IntVector, b: &IntVector) -> Outcome {
    let c = bisector_vector(a, b, &Budget::new(cli.budget), cli.seed)?;
    if cli.json {
        print_json(&BisectorReport {
            exists: c.is_some(),
            bisector: c.as_ref().map(report::vector),
        });
    } else {
        match &c {
            Some(c) => println!("bisector: {c}"),
            None => println!("no integer bisector"),
        }
    }
    Ok(if c.is_some() { EXIT_YES } else { EXIT_NO })
}

fn cmd_pow2(cli: &Cli, e: u32, a: &IntVector, b: &IntVector) -> Outcome {
    let chain = pow2_sectable(a, b, e)?;
    if cli.json {
        print_json(&Pow2Report::from(&chain));
    } else {
        println!("{}", chain.holds);
        let cos: Vec<String> = chain.cosines.iter().map(|q| q.to_string()).collect();
        println!("cosines: {}", cos.join(" "));
    }
    Ok(if chain.holds { EXIT_YES } else { EXIT_NO })
}

fn extend_chain(vectors: Vec<IntVector>, k: usize) -> Result<Vec<IntVector>, Failure> {
    if k == 0 {
        return Ok(vectors);
    }
    if vectors.len() < 2 {
        return Err(usage("extending needs at least two vectors"));
    }
    let seq = EquisectorSequence {
        vectors,
        verified: false,
    };
    Ok(extend_sequence(&seq, k)?.vectors)
}

fn cmd_extend(cli: &Cli, k: usize, c0: &IntVector, c1: &IntVector) -> Outcome {
    let vectors = extend_chain(vec![c0.clone(), c1.clone()], k)?;
    if cli.json {
        print_json(&SequenceReport {
            sequence: vectors.iter().map(report::vector).collect(),
        });
    } else {
        for v in &vectors {
            println!("{v}");
        }
    }
    Ok(EXIT_YES)
}

struct Chains {
    sequences: Vec<Vec<IntVector>>,
    endpoint: Option<IntVector>,
}

fn json_vector(v: &Value) -> Result<IntVector, Failure> {
    let entries = v
        .as_array()
        .ok_or_else(|| usage("vector must be a JSON array"))?
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(usage("vector entries must be integers or integer strings")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    parse_sequence(&entries.join(","))?
        .pop()
        .ok_or_else(|| usage("empty vector"))
}

fn json_sequence(v: &Value) -> Result<Vec<IntVector>, Failure> {
    v.as_array()
        .ok_or_else(|| usage("sequence must be a JSON array"))?
        .iter()
        .map(json_vector)
        .collect()
}

/// Reads either a plain chain or a JSON report with `sequences` or `sequence`.
fn load_chains(path: &Path) -> Result<Chains, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    if !text.trim_start().starts_with('{') {
        return Ok(Chains {
            sequences: vec![parse_sequence(&text)?],
            endpoint: None,
        });
    }
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let sequences = if let Some(all) = doc.get("sequences") {
        all.as_array()
            .ok_or_else(|| usage("\"sequences\" must be an array"))?
            .iter()
            .map(json_sequence)
            .collect::<Result<Vec<_>, _>>()?
    } else if let Some(one) = doc.get("sequence") {
        vec![json_sequence(one)?]
    } else {
        return Err(usage(format!(
            "{}: expected a \"sequences\" or \"sequence\" field",
            path.display()
        )));
    };
    let endpoint = doc.get("b").map(json_vector).transpose()?;
    Ok(Chains {
        sequences,
        endpoint,
    })
}

fn cmd_verify(cli: &Cli, file: &Path, expect: Option<&IntVector>) -> Outcome {
    let chains = load_chains(file)?;
    let endpoint = expect.or(chains.endpoint.as_ref());
    let results: Vec<_> = chains
        .sequences
        .iter()
        .map(|s| verify_sequence(s, endpoint))
        .collect();
    let summary = VerifyReport::new(&results);
    if cli.json {
        print_json(&summary);
    } else if let Some(f) = &summary.failure {
        if chains.sequences.len() > 1 {
            println!(
                "invalid: sequence {} vector {}: {}",
                f.sequence, f.index, f.kind
            );
        } else {
            println!("invalid: vector {}: {}", f.index, f.kind);
        }
    } else {
        println!("valid ({} sequence(s))", summary.checked);
    }
    Ok(if summary.valid { EXIT_YES } else { EXIT_NO })
}

fn cmd_plot(spec: &PlotSpec, out: Option<&Path>) -> Outcome {
    if let Some(v) = spec.vectors.iter().find(|v| v.dim() != 2) {
        return Err(Failure {
            code: EXIT_UNKNOWN,
            message: format!(
                "plot draws planar chains only; {v} has dimension {}",
                v.dim()
            ),
        });
    }
    let svg = render_svg(spec)?;
    match out {
        Some(path) => {
            fs::write(path, &svg)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            let labels: Vec<String> = spec.vectors.iter().map(slope_label).collect();
            eprintln!(
                "wrote {} lines to {}: {}",
                spec.vectors.len(),
                path.display(),
                labels.join(", ")
            );
        }
        None => print!("{svg}"),
    }
    Ok(EXIT_YES)
}
