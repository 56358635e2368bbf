use clap::{ArgGroup, Args, Parser, Subcommand};
use ellsum::catalog::expr::{parse, ValueEnv};
use ellsum::dd::Dd;
use ellsum::parallel::Mode;
use ellsum::report::{self, Format, Grid, RunConfig};
use ellsum::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ellsum",
    version,
    about = "Verify hyperbolic series identities against elliptic closed forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// text, json or csv
    #[arg(long, default_value = "text", value_parser = Format::from_str_arg)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep catalog identities over a grid of x
    #[command(group(ArgGroup::new("which").required(true).args(["all", "id"])))]
    Verify {
        #[arg(long)]
        all: bool,
        /// Glob over catalog ids, e.g. 'T2.*'
        #[arg(long)]
        id: Option<String>,
        /// Comma-separated points; overrides --grid. Accepts forms like sqrt(2)
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<String>>,
        #[arg(long, default_value = "default", value_parser = Grid::from_str_arg)]
        grid: Grid,
        #[arg(long, default_value_t = ellsum::catalog::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate both sides of one identity at one point
    Eval {
        #[arg(long)]
        id: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = ellsum::catalog::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Singular moduli k_r with K(k_r) and alpha(r)
    Singular {
        #[arg(long)]
        r: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Divisor-sum, principal-value, integral-equation and reflection checks
    Analytic {
        #[command(flatten)]
        output: Output,
    },
    /// Export the catalog
    Table {
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

trait FromStrArg: Sized {
    fn from_str_arg(s: &str) -> Result<Self, String>;
}

impl<T: std::str::FromStr<Err = String>> FromStrArg for T {
    fn from_str_arg(s: &str) -> Result<Self, String> {
        s.parse()
    }
}

enum Fail {
    Usage(String),
    Checks,
    Io(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Io(m) => Fail::Io(m),
            other => Fail::Usage(other.to_string()),
        }
    }
}

fn point(src: &str) -> Result<f64, Fail> {
    let v = parse(src.trim())
        .and_then(|e| e.eval::<Dd, _>(&ValueEnv { ell: None, x: f64::NAN }))
        .map_err(|e| Fail::Usage(format!("bad point `{src}`: {e}")))?
        .to_f64();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Fail::Usage(format!("bad point `{src}`")))
    }
}

fn mode() -> Result<Mode, Fail> {
    let Ok(v) = std::env::var("ELLSUM_THREADS") else {
        return Ok(Mode::Parallel);
    };
    let n: usize = v
        .parse()
        .map_err(|_| Fail::Usage(format!("ELLSUM_THREADS = `{v}` is not a count")))?;
    if n <= 1 {
        return Ok(Mode::Sequential);
    }
    #[cfg(feature = "parallel")]
    {
        // a pool may already exist; that only matters in tests
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Mode::Parallel)
}

fn emit(text: &str, out: &Output) -> Result<(), Fail> {
    report::write_out(text, out.out.as_deref()).map_err(Fail::from)
}

fn execute(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Verify {
            all: _,
            id,
            x,
            grid,
            tol,
            output,
        } => {
            let (points, grid_label) = match x {
                Some(list) => (
                    list.iter().map(|s| point(s)).collect::<Result<Vec<_>, _>>()?,
                    "custom".to_string(),
                ),
                None => (grid.points(), grid.label().to_string()),
            };
            let config = RunConfig {
                id_filter: id,
                points,
                grid_label,
                tol,
                mode: mode()?,
            };
            let rep = report::run(&config)?;
            report::emit_report(&rep, output.format, output.out.as_deref())?;
            if rep.passed() {
                Ok(())
            } else {
                Err(Fail::Checks)
            }
        }
        Command::Eval { id, x, tol, output } => {
            let e = ellsum::lookup(&id)?;
            let at = match (x, e.domain) {
                (Some(s), _) => point(&s)?,
                (None, ellsum::catalog::Domain::Fixed { x, .. }) => x,
                (None, _) => return Err(Fail::Usage(format!("{id} needs --x"))),
            };
            let config = RunConfig {
                id_filter: Some(id.clone()),
                points: vec![at],
                grid_label: "single".into(),
                tol,
                mode: Mode::Sequential,
            };
            config.validate()?;
            let rep = report::Report {
                run_meta: report::RunMeta::new(tol, vec![at], "single"),
                results: (0..e.readings.len())
                    .map(|i| ellsum::catalog::verify_cell(e, i, at, tol))
                    .collect(),
            };
            report::emit_report(&rep, output.format, output.out.as_deref())?;
            if rep.passed() {
                Ok(())
            } else {
                Err(Fail::Checks)
            }
        }
        Command::Singular { r, output } => {
            let rows = report::singular_rows(r)?;
            emit(&report::render_singular(&rows, output.format)?, &output)?;
            if rows.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Fail::Checks)
            }
        }
        Command::Analytic { output } => {
            let rows = report::analytic_rows(mode()?);
            emit(&report::render_checks(&rows, output.format)?, &output)?;
            if rows.iter().all(|r| r.pass) {
                Ok(())
            } else {
                Err(Fail::Checks)
            }
        }
        Command::Table { id, output } => emit(&report::render_table(id.as_deref(), output.format)?, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Checks) => ExitCode::from(1),
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
