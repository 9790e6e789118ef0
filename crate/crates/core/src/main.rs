use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use symplectic_vo::fock::parse_vector;
use symplectic_vo::lattice::check_quasi_cocycle_axioms;
use symplectic_vo::verify::{
    check_all_identities, check_identity1, check_identity2, check_identity3, check_ope_factors, check_qpow,
    CheckConfig, Relation, VerificationReport, Verifier,
};
use symplectic_vo::vertex::{parse_operators, Realization};
use symplectic_vo::Error;

/// Exact checks of the level-one vertex-operator realization of U_q(C_n^(1)).
#[derive(Parser, Debug)]
#[command(name = "symplectic-vo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Zero all timings so that repeated runs give identical reports.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    Ope,
    Qpow,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The q-power, combinatorial and OPE identities.
    Identities {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// The cocycle table and the quasi-cocycle axioms.
    Cocycle {
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Sweeps of the Drinfeld relations in mode form.
    Relations {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value = "all", value_parser = parse_relation)]
        relation: Relation,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        mode_min: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        mode_max: i64,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
        /// Test vector literal; repeat to give several. Replaces the default set.
        #[arg(long)]
        vector: Vec<String>,
    },
    /// Highest weight vectors and the Lemma.
    Hwv {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        mode_max: i64,
    },
    /// Applies an operator product to a vector; the rightmost factor acts first.
    Act {
        /// Inferred from the vector when omitted.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        op: String,
        #[arg(long)]
        vector: String,
    },
}

fn parse_relation(s: &str) -> Result<Relation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A usage or parse problem, reported with exit code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn annotate(literal: &str, e: Error) -> Usage {
    match e {
        Error::Parse { pos, .. } => Usage(format!("{e}\n  {literal}\n  {}^", " ".repeat(pos))),
        other => Usage(other.to_string()),
    }
}

fn check_rank(n: usize) -> Result<(), Usage> {
    if n < 2 {
        Err(Usage(format!("rank must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(String, bool), Usage> {
    let report = match &cli.command {
        Command::Identities { which } => match which {
            Which::One => check_identity1(),
            Which::Two => check_identity2(),
            Which::Three => check_identity3(),
            Which::Ope => check_ope_factors(),
            Which::Qpow => check_qpow(),
            Which::All => check_all_identities(),
        },
        Command::Cocycle { rank } => {
            check_rank(*rank)?;
            check_quasi_cocycle_axioms(*rank)?
        }
        Command::Relations {
            rank,
            relation,
            mode_min,
            mode_max,
            max_level,
            vector,
        } => {
            check_rank(*rank)?;
            let mut cfg = CheckConfig::new(*rank).with_window(*mode_min, *mode_max).with_relation(*relation);
            cfg.max_level = *max_level;
            if !vector.is_empty() {
                let vs = vector
                    .iter()
                    .map(|s| parse_vector(s, Some(*rank)).map_err(|e| annotate(s, e)))
                    .collect::<Result<Vec<_>, _>>()?;
                cfg = cfg.with_vectors(vs);
            }
            Verifier::new(&cfg)?.relations()?
        }
        Command::Hwv { rank, mode_max } => {
            check_rank(*rank)?;
            let cfg = CheckConfig::new(*rank).with_window(-1, (*mode_max).max(-1));
            let v = Verifier::new(&cfg)?;
            let mut rep = v.hwv()?;
            rep.merge(v.lemma()?);
            rep
        }
        Command::Act { rank, op, vector } => return act(*rank, op, vector, cli.out.format),
    };
    Ok(render(report, &cli.out))
}

fn render(mut report: VerificationReport, out: &OutputArgs) -> (String, bool) {
    if out.no_timing {
        report.strip_timing();
    }
    let text = match out.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    (text, report.passed())
}

fn act(rank: Option<usize>, op: &str, vector: &str, format: Format) -> Result<(String, bool), Usage> {
    if let Some(n) = rank {
        check_rank(n)?;
    }
    let ops = parse_operators(op).map_err(|e| annotate(op, e))?;
    let v = parse_vector(vector, rank).map_err(|e| annotate(vector, e))?;
    let n = match (rank, v.rank()) {
        (Some(n), _) | (None, Some(n)) => n,
        (None, None) => return Err(Usage("the zero vector needs --rank".into())),
    };
    check_rank(n)?;
    let real = Realization::new(n)?;
    let result = real.apply_product(&ops, &v)?;
    let text = match format {
        Format::Text => format!("{result}\n"),
        Format::Json => {
            let doc = json!({
                "command": "act",
                "rank": n,
                "op": op,
                "vector": v.to_string(),
                "result": result.to_string(),
                "terms": result.term_strings(),
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, passed)) => {
            print!("{text}");
            if let Some(path) = &cli.out.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
