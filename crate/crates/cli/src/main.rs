//! `ffperiod`: periodic-point counts, tower tables, limits and functional
//! graphs of `z^t` and `T_t` over finite fields.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 enumeration
//! budget exceeded, 4 analytic and brute-force counts disagree (or a
//! published table cell is not reproduced).

mod dot;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use ffperiod_core::census::FunctionalGraph;
use ffperiod_core::golden::{self, CellStatus};
use ffperiod_core::numthy::big_pow;
use ffperiod_core::ratio::render_binary32_display;
use ffperiod_core::{
    analytic_count, brute_census, build_field, limit, render_decimal, tower, EnumBudget, Error,
    ExactRatio, MapSpec, TowerConstraint, TowerQuery,
};

use report::{
    CellView, Document, FooterView, LimitView, Method, QueryView, ReportRow, Rounding, SIG_FIGS,
};

#[derive(Parser)]
#[command(
    name = "ffperiod",
    version,
    about = "Periodic points of z^t and T_t over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Budget {
    /// Largest field (in elements) that brute-force paths may enumerate.
    #[arg(long, env = "FFPERIOD_MAX_ENUM", default_value_t = EnumBudget::default().0)]
    max_enum: u64,
}

#[derive(clap::Args)]
struct Query {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// `power:T` or `cheb:T`.
    #[arg(long)]
    map: MapSpec,
    /// Tower base degree; defaults to the lcm of the multiplicative orders.
    #[arg(long)]
    delta: Option<u64>,
    /// Valuations of n at the primes of T, comma separated. Defaults to zeros.
    #[arg(long, value_delimiter = ',')]
    nu: Vec<u32>,
    /// Tower membership rule.
    #[arg(long)]
    constraint: Option<TowerConstraint>,
}

impl Query {
    fn build(&self) -> Result<TowerQuery, Error> {
        let nu = if self.nu.is_empty() {
            vec![0; self.map.spec().r()]
        } else {
            self.nu.clone()
        };
        TowerQuery::new(self.p, self.map.clone(), self.delta, nu, self.constraint)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlainFormat {
    Plain,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Md,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count periodic points in one field.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        map: MapSpec,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        #[arg(long, value_enum, default_value_t = PlainFormat::Plain)]
        format: PlainFormat,
        #[command(flatten)]
        budget: Budget,
    },
    /// Proportions along a tower of fields, followed by the limit.
    Tower {
        #[command(flatten)]
        query: Query,
        /// Number of tower members.
        #[arg(long, default_value_t = 5)]
        rows: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Md)]
        format: TableFormat,
        #[arg(long, value_enum, default_value_t = Rounding::Exact)]
        rounding: Rounding,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        #[command(flatten)]
        budget: Budget,
    },
    /// Limiting proportion of a tower.
    Limit {
        #[command(flatten)]
        query: Query,
        #[arg(long, value_enum, default_value_t = PlainFormat::Plain)]
        format: PlainFormat,
    },
    /// Write the functional graph as Graphviz DOT.
    Graph {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        map: MapSpec,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Compare the built-in reference tables with computed values.
    Tables {
        #[arg(long, value_enum, default_value_t = ReportFormat::Md)]
        format: ReportFormat,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            CliError::Core(Error::CountMismatch { .. }) | CliError::Mismatch(_) => 4,
            CliError::Core(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

fn brute_count(p: u64, n: u64, map: &MapSpec, budget: EnumBudget) -> Result<BigUint, Error> {
    // Check before building the field, whose modulus search grows with n.
    let size = big_pow(p, n);
    if size > BigUint::from(budget.0) {
        return Err(Error::BudgetExceeded {
            size: size.to_string(),
            budget: budget.0,
        });
    }
    let field = build_field(p, n as usize)?;
    Ok(brute_census(&field, map, budget)?.periodic_count.into())
}

fn report_row(
    p: u64,
    n: u64,
    map: &MapSpec,
    method: Method,
    rounding: Rounding,
    budget: EnumBudget,
) -> Result<ReportRow, Error> {
    let count = match method {
        Method::Analytic => analytic_count(p, n, map)?,
        Method::Brute => brute_count(p, n, map, budget)?,
        Method::Both => {
            let analytic = analytic_count(p, n, map)?;
            let brute = brute_count(p, n, map, budget)?;
            if analytic != brute {
                return Err(Error::CountMismatch {
                    analytic: analytic.to_string(),
                    brute: brute.to_string(),
                });
            }
            analytic
        }
    };
    let size = big_pow(p, n);
    let binary32 = (rounding == Rounding::Binary32).then(|| render_binary32_display(&count, &size));
    let ratio = ExactRatio::new(count.clone(), size)?;
    let rendered = binary32.unwrap_or_else(|| render_decimal(&ratio, SIG_FIGS));
    Ok(ReportRow {
        n,
        field: format!("F_{{{p}^{n}}}"),
        count,
        ratio,
        rendered,
        method,
    })
}

fn to_json(doc: &Document) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Count {
            p,
            n,
            map,
            method,
            format,
            budget,
        } => {
            let row = report_row(
                p,
                n,
                &map,
                method,
                Rounding::Exact,
                EnumBudget(budget.max_enum),
            )?;
            match format {
                PlainFormat::Plain => Ok(report::count_plain(p, &map.to_string(), &row)),
                PlainFormat::Json => to_json(&Document::Count {
                    p,
                    map: map.to_string(),
                    row,
                }),
            }
        }
        Command::Tower {
            query,
            rows,
            format,
            rounding,
            method,
            budget,
        } => {
            let q = query.build()?;
            let members = tower(&q, rows)?;
            let rows = members
                .iter()
                .map(|&n| {
                    report_row(
                        q.p(),
                        n,
                        q.map(),
                        method,
                        rounding,
                        EnumBudget(budget.max_enum),
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            let lim = limit(&q)?;
            let rendered = report::render_footer(&lim.value);
            let lim = LimitView::new(lim, rendered);
            let view = QueryView::from(&q);
            match format {
                TableFormat::Md => Ok(report::tower_markdown(&view, &rows, &lim)),
                TableFormat::Csv => Ok(report::tower_csv(&rows, &lim)?),
                TableFormat::Json => to_json(&Document::Tower {
                    query: view,
                    rounding,
                    rows,
                    limit: lim,
                }),
            }
        }
        Command::Limit { query, format } => {
            let q = query.build()?;
            let lim = limit(&q)?;
            let rendered = render_decimal(&lim.value, SIG_FIGS);
            let lim = LimitView::new(lim, rendered);
            let view = QueryView::from(&q);
            match format {
                PlainFormat::Plain => Ok(report::limit_plain(&view, &lim)),
                PlainFormat::Json => to_json(&Document::Limit {
                    query: view,
                    limit: lim,
                }),
            }
        }
        Command::Graph {
            p,
            n,
            map,
            out,
            budget,
        } => {
            let budget = EnumBudget(budget.max_enum);
            let size = big_pow(p, n);
            if size > BigUint::from(budget.0) {
                return Err(Error::BudgetExceeded {
                    size: size.to_string(),
                    budget: budget.0,
                }
                .into());
            }
            let field = build_field(p, n as usize)?;
            let graph = FunctionalGraph::build(&field, &map, budget)?;
            let text = dot::render(&field, &map, &graph);
            match out {
                Some(path) => {
                    std::fs::write(path, text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Tables { format, budget } => {
            let cells = golden::compare_cells(EnumBudget(budget.max_enum))?;
            let footers = golden::compare_footers()?;
            let rows_follow = golden::rows_follow_towers()?;
            let failures = cells
                .iter()
                .filter(|c| c.status == CellStatus::Mismatch)
                .count()
                + footers
                    .iter()
                    .filter(|f| !f.matches || !f.sets_match)
                    .count();
            let cells: Vec<CellView> = cells.iter().map(CellView::from).collect();
            let footers: Vec<FooterView> = footers.iter().map(FooterView::from).collect();
            let text = match format {
                ReportFormat::Md => report::tables_markdown(&cells, &footers, rows_follow),
                ReportFormat::Json => to_json(&Document::Tables {
                    cells,
                    footers,
                    rows_follow_towers: rows_follow,
                })?,
            };
            if failures > 0 || !rows_follow {
                print!("{text}");
                return Err(CliError::Mismatch(format!(
                    "{failures} reference values not reproduced"
                )));
            }
            Ok(text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut out = io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
