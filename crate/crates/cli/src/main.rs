use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quandle_flag::diagram::{parse_gauss, parse_pd, planarize_gauss, DiagramError, KnotDiagram};
use quandle_flag::flag::{alexander_from_basis, dense_to_poly, determinant_of, flag_invariant, FlagReport, RelationConvention};
use quandle_flag::polyring::MonomialOrder;
use quandle_flag::presentation::{knot_presentation, AxiomSet, Budget, CompletionResult, Strategy};
use quandle_flag::table::{
    regress, Expectations, KnotTable, RunOptions, FLAG1_EXPECTED_JSON, QUOTIENTS_EXPECTED_JSON,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "knotq", version, about = "Quotient quandles and FLAG invariants of knot diagrams")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Variable precedence of the graded reverse lexicographic order.
    #[arg(long, global = true, default_value = "sinv>tinv>s>t")]
    order: String,
    /// Leave timings out of reports so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a diagram and print it.
    Parse(Input),
    /// Complete the knot quandle presentation under extra axioms.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Comma-separated axioms, e.g. `involutory,anti-abelian` or `n-quandle=4`.
        #[arg(long, default_value = "quandle")]
        axioms: String,
        /// Cut arcs at virtual crossings and add the v operator.
        #[arg(long = "virtual")]
        is_virtual: bool,
        #[arg(long, default_value_t = Budget::default().max_generators)]
        max_gens: usize,
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Zero selection: row-major, column-major, most-constrained-row or diagonal.
        #[arg(long, default_value = "row-major")]
        strategy: String,
    },
    /// FLAG_k Gröbner basis with its Alexander specialization.
    Flag {
        #[command(flatten)]
        input: Input,
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "right-under")]
        convention: String,
    },
    /// Alexander polynomial and determinant, read off FLAG_1.
    Alexander {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "right-under")]
        convention: String,
    },
    /// Recompute an expectation table and compare.
    Regress {
        /// Expectation file; the bundled FLAG_1 table by default.
        #[arg(long, conflicts_with = "bundled")]
        table: Option<PathBuf>,
        /// Which bundled expectation table to use.
        #[arg(long, value_enum)]
        bundled: Option<Bundled>,
        /// Knot table to look names up in; the bundled one by default.
        #[arg(long)]
        knots: Option<PathBuf>,
        #[arg(long, default_value = "right-under")]
        convention: String,
        #[arg(long, default_value_t = Budget::default().max_generators)]
        max_gens: usize,
        /// Zero selection: row-major, column-major, most-constrained-row or diagonal.
        #[arg(long, default_value = "row-major")]
        strategy: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Bundled {
    Flag,
    Quotients,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// PD code, e.g. `PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]`.
    #[arg(long)]
    pd: Option<String>,
    /// Gauss code, e.g. `O1-U2-O3-U1-O2-U3-`; non-planar codes are drawn
    /// with virtual crossings.
    #[arg(long)]
    gauss: Option<String>,
    /// Name of a knot in the bundled table, e.g. `6_2` or `4.99`.
    #[arg(long)]
    knot: Option<String>,
    /// File holding a PD or Gauss code.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Input {
    fn diagram(&self) -> Result<KnotDiagram> {
        if let Some(pd) = &self.pd {
            return Ok(parse_pd(pd)?);
        }
        if let Some(g) = &self.gauss {
            return gauss(g);
        }
        if let Some(name) = &self.knot {
            let table = KnotTable::bundled();
            let entry = table.get(name).with_context(|| format!("no knot named `{name}` in the bundled table"))?;
            return Ok(entry.diagram()?);
        }
        let path = self.file.as_ref().expect("clap enforces one input");
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let text = text.trim();
        if text.starts_with("PD") {
            Ok(parse_pd(text)?)
        } else {
            gauss(text)
        }
    }
}

fn gauss(code: &str) -> Result<KnotDiagram> {
    match parse_gauss(code) {
        Err(DiagramError::NotPlanar) => {
            let d = planarize_gauss(code)?;
            eprintln!("note: code is not planar; drawn with {} virtual crossings", d.virtual_count());
            Ok(d)
        }
        other => Ok(other?),
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ord: MonomialOrder = cli.order.parse().context("--order")?;
    match cli.command {
        Command::Parse(input) => {
            let d = input.diagram()?;
            emit(cli.format, &d, || {
                format!(
                    "{}\ncrossings: {} classical, {} virtual\ncomponents: {}\nwrithe: {}\n",
                    d.to_pd_string(),
                    d.classical_count(),
                    d.virtual_count(),
                    d.components,
                    d.writhe()
                )
            })?;
        }
        Command::Quotient { input, axioms, is_virtual, max_gens, max_rounds, strategy } => {
            let d = input.diagram()?;
            let axioms: AxiomSet = axioms.parse()?;
            let strategy: Strategy = strategy.parse()?;
            let budget = Budget { max_generators: max_gens, max_rounds };
            let result = knot_presentation(&d, is_virtual).complete(&axioms, &budget, strategy);
            emit(cli.format, &result, || match &result {
                CompletionResult::Completed { quandle, .. } => format!("{} elements\n{quandle}", quandle.n),
                CompletionResult::BudgetExceeded { stats } => {
                    format!("budget exceeded after {} generators\n", stats.generators_allocated)
                }
            })?;
            if let CompletionResult::BudgetExceeded { .. } = result {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Flag { input, k, convention } => {
            let d = input.diagram()?;
            let convention: RelationConvention = convention.parse()?;
            let start = Instant::now();
            let mut report = FlagReport::new(&d, k, ord, convention);
            if !cli.no_timings {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            emit(cli.format, &report, || {
                let mut s = format!("FLAG_{} ({} elements)\n", report.k, report.cardinality);
                for g in &report.basis {
                    s.push_str(&format!("  {g}\n"));
                }
                s.push_str(&format!("alexander: {}\n", report.alexander));
                s.push_str(&format!("determinant: {}\n", report.determinant.as_deref().unwrap_or("undefined")));
                s
            })?;
        }
        Command::Alexander { input, convention } => {
            let d = input.diagram()?;
            let convention: RelationConvention = convention.parse()?;
            let inv = flag_invariant(&d, 1, ord, convention);
            let delta = alexander_from_basis(inv.rational.elements());
            let out = AlexanderOut {
                name: d.name.clone(),
                alexander: dense_to_poly(&delta, ord).to_string(),
                determinant: determinant_of(&delta).ok().map(|x| x.to_string()),
            };
            emit(cli.format, &out, || {
                format!("{}\ndeterminant: {}\n", out.alexander, out.determinant.as_deref().unwrap_or("undefined"))
            })?;
        }
        Command::Regress { table, bundled, knots, convention, max_gens, strategy } => {
            let text = match (&table, bundled) {
                (Some(path), _) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
                (None, Some(Bundled::Quotients)) => QUOTIENTS_EXPECTED_JSON.to_string(),
                (None, _) => FLAG1_EXPECTED_JSON.to_string(),
            };
            let expectations = Expectations::from_json(&text)?;
            let knot_table = match &knots {
                Some(path) => KnotTable::from_json(
                    &fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
                )?,
                None => KnotTable::bundled(),
            };
            let opts = RunOptions {
                convention: convention.parse()?,
                budget: Budget { max_generators: max_gens, max_rounds: None },
                strategy: strategy.parse()?,
            };
            let mut report = regress(&knot_table, &expectations, &opts)?;
            if cli.no_timings {
                report = report.without_timings();
            }
            emit(cli.format, &report, || {
                let mut s = String::new();
                for e in &report.entries {
                    let status = serde_json::to_value(e.status).expect("plain enum");
                    let size = e.size.map_or("-".to_string(), |n| n.to_string());
                    s.push_str(&format!("{:<8} {:<16} {} (expected {})\n", e.name, status.as_str().unwrap_or(""), size, e.expected_size));
                }
                s
            })?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AlexanderOut {
    name: Option<String>,
    alexander: String,
    determinant: Option<String>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
