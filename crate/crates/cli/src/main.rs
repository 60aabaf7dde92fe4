//! `schubert`: chain counts, finite-field verification, Pieri checks and tables.

mod args;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use schubert_core::combinat::{count_chains, CoverLabel, GrassIndex, SchubertIndex, Space};
use schubert_core::error::CAPACITY_LIMIT;
use schubert_core::ffalg::PrimeField;
use schubert_core::geometry::TorusWeights;
use schubert_core::verifier::{pieri_limit_check, verify, Mode, ProblemSpec, Verdict};
use schubert_core::{Error, Result};

use args::{build_space, parse_index, parse_list, parse_range, Format, SpaceKind};

#[derive(Parser, Debug)]
#[command(
    name = "schubert",
    version,
    about = "Schubert-problem chain counts and finite-field verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SpaceArgs {
    #[arg(long, value_enum)]
    space: SpaceKind,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Degree bound of the quantum Grassmannian.
    #[arg(long)]
    q: Option<usize>,
    /// Flag dimensions, e.g. 1,2.
    #[arg(long)]
    steps: Option<String>,
    /// Family of each condition, e.g. 1,1,2.
    #[arg(long)]
    labels: Option<String>,
}

impl SpaceArgs {
    fn space(&self) -> Result<Space> {
        build_space(self.space, self.r, self.n, self.q, self.steps.as_deref())
    }

    fn labels(&self) -> Result<Option<Vec<CoverLabel>>> {
        self.labels
            .as_deref()
            .map(|s| {
                Ok(parse_list::<usize>(s)?
                    .into_iter()
                    .map(CoverLabel)
                    .collect())
            })
            .transpose()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count saturated chains from the bottom to an index.
    Count {
        #[command(flatten)]
        space: SpaceArgs,
        /// Target index (default: the top element).
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Solve a random instance exhaustively over prime fields and certify it.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value = "5,7,11")]
        primes: String,
        #[arg(long, default_value = "independent")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        max_attempts: usize,
        /// Solve inside the Schubert variety of this index.
        #[arg(long)]
        restrict: Option<String>,
        /// Torus weights for family mode, e.g. 1,2,3,4.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the Pieri limit identity for one index of G(r, n) over F_p.
    Pieri {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        prime: u32,
    },
    /// Tabulate top-element chain counts over ranges of parameters (CSV).
    Table {
        #[arg(long, value_enum)]
        space: SpaceKind,
        /// N or A..B
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        steps: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn emit(output: Option<&PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|_| {
                    if content.ends_with('\n') {
                        Ok(())
                    } else {
                        out.write_all(b"\n")
                    }
                })
                .map_err(|e| Error::InvalidInput(format!("stdout: {e}")))
        }
    }
}

fn count_json(
    space: &Space,
    target: &SchubertIndex,
    labels: &[CoverLabel],
    count: &BigUint,
) -> String {
    let value = serde_json::json!({
        "space": space.to_string(),
        "index": target.to_string(),
        "rank": target.rank().to_string(),
        "labels": labels.iter().map(|l| l.0).collect::<Vec<_>>(),
        "count": count.to_string(),
    });
    serde_json::to_string_pretty(&value).expect("json")
}

fn cmd_count(
    space_args: &SpaceArgs,
    w: Option<&str>,
    format: Format,
    output: Option<&PathBuf>,
) -> Result<ExitCode> {
    let space = space_args.space()?;
    let target = match w {
        Some(s) => parse_index(&space, s)?,
        None => space.top(),
    };
    let labels = space_args
        .labels()?
        .unwrap_or_else(|| vec![CoverLabel(1); target.rank()]);
    let count = count_chains(&target, &labels)?;
    let json = count_json(&space, &target, &labels, &count);
    match format {
        Format::Json => emit(None, &json)?,
        Format::Text | Format::Csv => println!("{count}"),
    }
    if let Some(path) = output {
        emit(Some(path), &json)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    space_args: &SpaceArgs,
    primes: &str,
    mode: &str,
    seed: u64,
    max_attempts: usize,
    restrict: Option<&str>,
    weights: Option<&str>,
    format: Format,
    output: Option<&PathBuf>,
) -> Result<ExitCode> {
    let space = space_args.space()?;
    let mut spec = ProblemSpec::new(space.clone(), mode.parse::<Mode>()?);
    if let Some(labels) = space_args.labels()? {
        spec = spec.with_labels(labels);
    }
    if let Some(w) = restrict {
        spec = spec.with_restriction(parse_index(&space, w)?);
    }
    if let Some(w) = weights {
        spec = spec.with_weights(TorusWeights::new(parse_list(w)?)?);
    }
    let primes: Vec<u32> = parse_list(primes)?;
    let report = verify(&spec, &primes, seed, max_attempts)?;
    let json = report.to_json();
    if let Some(path) = output {
        emit(Some(path), &json)?;
    }
    match format {
        Format::Json => emit(None, &json)?,
        Format::Text | Format::Csv => {
            let verdict = serde_json::to_value(report.verdict).expect("json");
            println!(
                "{}: {} over F_{}: {} solution(s), expected {}, {} attempt(s)",
                verdict.as_str().unwrap_or("?"),
                report.space,
                report.prime,
                report.solution_count(),
                report.expected,
                report.attempts.len()
            );
        }
    }
    Ok(if report.verdict == Verdict::Confirmed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_pieri(r: usize, n: usize, alpha: &str, prime: u32) -> Result<ExitCode> {
    let field = PrimeField::new(prime)?;
    let alpha = GrassIndex::new(n, parse_list(alpha)?)?;
    let ok = pieri_limit_check(r, n, &alpha, field)?;
    println!("{ok}");
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn range_or(s: Option<&str>, flag: &str) -> Result<Option<std::ops::RangeInclusive<usize>>> {
    s.map(parse_range)
        .transpose()
        .map_err(|e| Error::InvalidInput(format!("--{flag}: {e}")))
}

fn cmd_table(
    kind: SpaceKind,
    r: Option<&str>,
    n: Option<&str>,
    q: Option<&str>,
    steps: Option<&str>,
    output: Option<&PathBuf>,
) -> Result<ExitCode> {
    let rs = range_or(r, "r")?;
    let ns = range_or(n, "n")?;
    let qs = range_or(q, "q")?.unwrap_or(0..=0);
    let missing = |flag: &str| Error::InvalidInput(format!("--{flag} is required for this table"));
    let mut spaces = Vec::new();
    match kind {
        SpaceKind::Grass | SpaceKind::Quantum => {
            let rs = rs.ok_or_else(|| missing("r"))?;
            let ns = ns.ok_or_else(|| missing("n"))?;
            for r in rs {
                for n in ns.clone() {
                    if r == 0 || r >= n {
                        continue;
                    }
                    if kind == SpaceKind::Grass {
                        spaces.push(Space::Grassmannian { r, n });
                    } else {
                        for q in qs.clone() {
                            spaces.push(Space::Quantum { r, n, q });
                        }
                    }
                }
            }
        }
        SpaceKind::Og => {
            for r in rs.ok_or_else(|| missing("r"))? {
                if r > 0 {
                    spaces.push(Space::Orthogonal { r });
                }
            }
        }
        SpaceKind::Flag => {
            let steps: Vec<usize> = parse_list(steps.ok_or_else(|| missing("steps"))?)?;
            for n in ns.ok_or_else(|| missing("n"))? {
                if steps.last().is_some_and(|&s| s < n) {
                    spaces.push(Space::Flag {
                        steps: steps.clone(),
                        n,
                    });
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(["space", "r", "n", "q", "steps", "rank", "count"])
        .map_err(csv_err)?;
    for space in spaces {
        let (r, n, q, st) = match &space {
            Space::Grassmannian { r, n } => {
                (r.to_string(), n.to_string(), String::new(), String::new())
            }
            Space::Quantum { r, n, q } => {
                (r.to_string(), n.to_string(), q.to_string(), String::new())
            }
            Space::Orthogonal { r } => (
                r.to_string(),
                (2 * r + 1).to_string(),
                String::new(),
                String::new(),
            ),
            Space::Flag { steps, n } => (
                String::new(),
                n.to_string(),
                String::new(),
                steps
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
        };
        let top = space.top();
        let count = if space.element_count() > BigUint::from(CAPACITY_LIMIT) {
            "skipped".to_string()
        } else {
            count_chains(&top, &vec![CoverLabel(1); top.rank()])?.to_string()
        };
        w.write_record([
            space.to_string(),
            r,
            n,
            q,
            st,
            top.rank().to_string(),
            count,
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    emit(output, &String::from_utf8(bytes).expect("utf-8"))?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Count {
            space,
            w,
            format,
            output,
        } => cmd_count(&space, w.as_deref(), format, output.as_ref()),
        Command::Verify {
            space,
            primes,
            mode,
            seed,
            max_attempts,
            restrict,
            weights,
            format,
            output,
        } => cmd_verify(
            &space,
            &primes,
            &mode,
            seed,
            max_attempts,
            restrict.as_deref(),
            weights.as_deref(),
            format,
            output.as_ref(),
        ),
        Command::Pieri { r, n, alpha, prime } => cmd_pieri(r, n, &alpha, prime),
        Command::Table {
            space,
            r,
            n,
            q,
            steps,
            output,
        } => cmd_table(
            space,
            r.as_deref(),
            n.as_deref(),
            q.as_deref(),
            steps.as_deref(),
            output.as_ref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
