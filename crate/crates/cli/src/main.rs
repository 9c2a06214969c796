use clap::{Parser, Subcommand, ValueEnum};
use schurq::vexillary::Method;
use schurq_cli::{
    check_command, poly_command, tableaux_command, triple_command, triple_equiv_command,
    verify_command, Format, PolyArgs, TripleAction, VerifyBounds,
};

#[derive(Parser)]
#[command(
    name = "schurq",
    version,
    about = "Exact flagged factorial Q-functions, Schur-Pfaffians, and vexillary type-C Schubert polynomials"
)]
struct Cli {
    /// Worker threads for enumeration and verification grids (default: all
    /// cores). Output is identical for any thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Tableau,
    Pfaffian,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Tableau => Method::Tableau,
            MethodArg::Pfaffian => Method::Pfaffian,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a flagged factorial Q-function (or its decomposition)
    Poly {
        /// Strict partition, e.g. 5,3,1
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u32>,
        /// Flag vector of the same length (default: all zeros)
        #[arg(long, value_delimiter = ',')]
        flag: Option<Vec<u32>>,
        /// Number of x-variables
        #[arg(long, default_value_t = 2)]
        nx: usize,
        #[arg(long, value_enum, default_value = "tableau")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Print the expansion over zero-flag Q-functions instead
        #[arg(long)]
        decompose: bool,
        /// Evaluate the Pfaffian even when its validity conditions fail
        #[arg(long)]
        unchecked: bool,
    },
    /// Enumerate marked shifted tableaux, or validate one from a file
    Tableaux {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        flag: Option<Vec<u32>>,
        #[arg(long, default_value_t = 2)]
        nx: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Validate the JSON tableau in this file instead of enumerating
        #[arg(long)]
        check: Option<std::path::PathBuf>,
    },
    /// Reduce, invert, or compare triples, or print the associated shape
    Triple {
        #[command(subcommand)]
        action: TripleCmd,
    },
    /// Run a verification suite and report PASS/FAIL per case
    Verify {
        /// One of: pfaffian-eq, ivanov-tableau (alias theorem-c),
        /// jacobi-trudi, schur-pf, genfun, vexillary, decompose,
        /// structural, all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_lambda: Option<u32>,
        #[arg(long)]
        max_rows: Option<usize>,
        #[arg(long)]
        max_flag: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        nx: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum TripleCmd {
    /// Reduce to the essential triple
    Reduce(TripleArgs),
    /// Print the flagged strict partition of the (reduced) triple
    Shape(TripleArgs),
    /// Swap p and q
    Invert(TripleArgs),
    /// Decide whether two triples reduce to the same essential triple
    Equiv {
        #[command(flatten)]
        first: TripleArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        k2: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        p2: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        q2: Vec<u32>,
    },
}

#[derive(clap::Args)]
struct TripleArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

/// Exit status: 0 success, 1 malformed input or verification failure,
/// 2 hypothesis violation.
fn run(command: Command) -> Result<(String, i32), schurq::Error> {
    match command {
        Command::Poly { lambda, flag, nx, method, format, decompose, unchecked } => {
            let out = poly_command(&PolyArgs {
                lambda: &lambda,
                flag: flag.as_deref(),
                nx,
                method: method.into(),
                format: format.into(),
                decompose,
                unchecked,
            })?;
            Ok((out, 0))
        }
        Command::Tableaux { lambda, flag, nx, format, check } => match check {
            Some(path) => {
                let contents = std::fs::read_to_string(&path).map_err(|e| {
                    schurq::Error::Parse(format!("cannot read {}: {e}", path.display()))
                })?;
                let out = check_command(Some(&lambda), flag.as_deref(), &contents)?;
                Ok((out, 0))
            }
            None => {
                let out = tableaux_command(&lambda, flag.as_deref(), nx, format.into())?;
                Ok((out, 0))
            }
        },
        Command::Triple { action } => {
            let out = match action {
                TripleCmd::Reduce(a) => {
                    triple_command(TripleAction::Reduce, &a.k, &a.p, &a.q, a.format.into())?
                }
                TripleCmd::Shape(a) => {
                    triple_command(TripleAction::Shape, &a.k, &a.p, &a.q, a.format.into())?
                }
                TripleCmd::Invert(a) => {
                    triple_command(TripleAction::Invert, &a.k, &a.p, &a.q, a.format.into())?
                }
                TripleCmd::Equiv { first, k2, p2, q2 } => triple_equiv_command(
                    &first.k,
                    &first.p,
                    &first.q,
                    &k2,
                    &p2,
                    &q2,
                    first.format.into(),
                )?,
            };
            Ok((out, 0))
        }
        Command::Verify { suite, max_lambda, max_rows, max_flag, nx, format } => {
            let bounds = VerifyBounds { max_lambda, max_rows, max_flag, nx };
            let report = verify_command(&suite, &bounds, format.into())?;
            let code = if report.failures == 0 { 0 } else { 1 };
            Ok((report.text, code))
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let command = cli.command;
    let outcome = match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool");
            pool.install(|| run(command))
        }
        None => run(command),
    };

    match outcome {
        Ok((text, code)) => {
            println!("{text}");
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                schurq::Error::Hypothesis(_) => 2,
                _ => 1,
            };
            std::process::exit(code);
        }
    }
}
