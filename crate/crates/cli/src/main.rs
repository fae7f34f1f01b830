use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod suites;

use suites::{Ctx, Report};

#[derive(Parser, Debug)]
#[command(
    name = "qgr",
    version,
    about = "Exact checks for quantum Grassmannians and their dihedral groupoid"
)]
struct Cli {
    /// Rows of the generic matrix (the `m` of Gr(m,n)).
    #[arg(long, global = true, default_value_t = 2)]
    m: usize,
    /// Columns of the generic matrix.
    #[arg(long, global = true, default_value_t = 4)]
    n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Entry bound of the integer grid used to realize vanishing patterns.
    #[arg(long, global = true, default_value_t = 4)]
    grid: u32,
    /// Largest |level| of twisted algebras that may be materialized (default 2n).
    #[arg(long, global = true)]
    level_bound: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal forms of expressions, one per line on stdin unless --expr is given.
    Nf {
        #[arg(long)]
        expr: Option<String>,
    },
    /// The quantum minor on a column set.
    Minor {
        #[arg(long)]
        set: String,
    },
    /// The quasi-commutation exponent r with [B][A] = q^r [A][B], if any.
    Qcomm {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The degree-2 relation basis among the minors.
    Relations,
    /// Cocycle values and twisted products from JSON (stdin unless --input).
    Twist {
        #[arg(long)]
        input: Option<String>,
    },
    Groupoid {
        #[command(subcommand)]
        action: GroupoidCmd,
    },
    Dehom {
        #[command(subcommand)]
        action: DehomCmd,
    },
    Hspec {
        #[command(subcommand)]
        action: HspecCmd,
    },
    Tnn {
        #[command(subcommand)]
        action: TnnCmd,
    },
    /// Every suite at the given (m, n).
    All {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GroupoidCmd {
    /// Transport the relation basis through a map.
    Verify {
        #[arg(long)]
        map: String,
    },
    /// The image of one generator.
    Image {
        #[arg(long)]
        map: String,
        #[arg(long)]
        set: String,
        /// Level of the source generator (defaults to the map's source level).
        #[arg(long, allow_hyphen_values = true)]
        level: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum DehomCmd {
    /// Exponent tables, table isomorphisms and composite scalars.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum HspecCmd {
    /// Realizable vanishing patterns and their dihedral orbits.
    Orbits,
    /// The number of Le diagrams in the m x (n-m) box.
    LeCount,
}

#[derive(Subcommand, Debug)]
enum TnnCmd {
    /// Minor identities and positivity preservation.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// A single matrix as a JSON array of "p/q" strings.
        #[arg(long)]
        matrix: Option<String>,
    },
}

fn read_stdin() -> Result<String, String> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| format!("reading stdin: {e}"))?;
    Ok(s)
}

fn run(cli: &Cli) -> Result<Report, String> {
    // nf works in any m x n quantum matrix algebra, square ones included
    let square_ok = matches!(cli.command, Command::Nf { .. });
    if cli.m == 0 || cli.m > cli.n || (cli.m == cli.n && !square_ok) {
        return Err(format!("need 1 <= m < n, got m={} n={}", cli.m, cli.n));
    }
    let ctx = Ctx {
        m: cli.m,
        n: cli.n,
        seed: cli.seed,
        grid: cli.grid,
        level_bound: cli.level_bound.unwrap_or(2 * cli.n as i64),
    };
    if ctx.level_bound < 1 || ctx.grid < 1 {
        return Err("bounds must be positive".into());
    }
    let e = |e: qgr_core::Error| e.to_string();
    match &cli.command {
        Command::Nf { expr } => {
            let input = match expr {
                Some(x) => x.clone(),
                None => read_stdin()?,
            };
            suites::nf(&ctx, &input).map_err(e)
        }
        Command::Minor { set } => suites::minor(&ctx, set).map_err(e),
        Command::Qcomm { a, b } => suites::qcomm(&ctx, a, b).map_err(e),
        Command::Relations => suites::relations(&ctx).map_err(e),
        Command::Twist { input } => {
            let input = match input {
                Some(x) => x.clone(),
                None => read_stdin()?,
            };
            suites::twist(&ctx, &input)
        }
        Command::Groupoid { action } => match action {
            GroupoidCmd::Verify { map } => suites::groupoid_verify(&ctx, map).map_err(e),
            GroupoidCmd::Image { map, set, level } => suites::groupoid_image(&ctx, map, set, *level).map_err(e),
        },
        Command::Dehom {
            action: DehomCmd::Check { alpha },
        } => suites::dehom_check(&ctx, *alpha).map_err(e),
        Command::Hspec { action } => match action {
            HspecCmd::Orbits => suites::hspec_orbits(&ctx).map_err(e),
            HspecCmd::LeCount => Ok(suites::le_count(&ctx)),
        },
        Command::Tnn {
            action: TnnCmd::Verify { trials, matrix },
        } => suites::tnn_verify(&ctx, *trials, matrix.as_deref()),
        Command::All { trials } => suites::all(&ctx, *trials).map_err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = std::env::var("QGR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if k > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.value).expect("reports are valid JSON")
                ),
                Format::Text => print!("{}", report.text),
            }
            match report.failure {
                Some(f) => {
                    eprintln!("check failed: {f}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
