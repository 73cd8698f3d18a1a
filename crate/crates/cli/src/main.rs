use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qplane::presets::PresetId;
use qplane::report::{self, Report};
use qplane::verify::Session;
use qplane::Error;

/// Exact differential calculi on the quantum plane xy = q yx.
#[derive(Parser)]
#[command(name = "qplane", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in calculi.
    ListPresets(Output),
    /// Parse and normalize an expression.
    Eval {
        expr: String,
        /// Preset whose frame symbols t1, t2, t3 are in scope.
        #[arg(long)]
        preset: Option<String>,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        out: Output,
    },
    /// Run the identity checks of a preset; exits 1 if any fails.
    Verify {
        preset: String,
        #[command(flatten)]
        params: Params,
        /// Run a single check by id.
        #[arg(long)]
        check: Option<String>,
        /// Also evaluate every comparison at this rational value of q.
        #[arg(long, value_parser = parse_rational)]
        q: Option<BigRational>,
        #[command(flatten)]
        out: Output,
    },
    /// Print C, the structure elements, D, K, theta and the relations.
    Structure {
        preset: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        out: Output,
    },
    /// Build the zero-offset linear connection and report its properties.
    Connection {
        preset: String,
        #[command(flatten)]
        params: Params,
        /// Solve for every sigma of the block ansatz.
        #[arg(long)]
        solve: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The classical limit: momenta, limit frame, curvature.
    Limit {
        preset: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Params {
    /// The parameter alpha of calc3a and calc3b (nonzero rational, default 1).
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    alpha: Option<BigRational>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim().parse::<BigRational>().map_err(|e| format!("not a rational number: {e}"))
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRESET: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownSymbol { .. } | Error::DegreeTooHigh(_) | Error::DegreeMismatch(..) => {
            EXIT_PARSE
        }
        _ => EXIT_PRESET,
    }
}

fn session(preset: &str, params: Params) -> qplane::Result<Session> {
    Session::new(preset.parse::<PresetId>()?, params.alpha)
}

fn run(command: Command) -> qplane::Result<(Report, Format)> {
    Ok(match command {
        Command::ListPresets(out) => (report::presets_report(), out.format),
        Command::Eval { expr, preset, params, out } => {
            let s = match preset {
                Some(p) => Some(session(&p, params)?),
                None if params.alpha.is_some() => {
                    return Err(Error::InvalidParameter("--alpha needs --preset".into()));
                }
                None => None,
            };
            (report::eval_report(&expr, s.as_ref())?, out.format)
        }
        Command::Verify { preset, params, check, q, out } => {
            let s = session(&preset, params)?;
            (report::verify_report(&s, check.as_deref(), q.as_ref())?, out.format)
        }
        Command::Structure { preset, params, out } => {
            (report::structure_report(&session(&preset, params)?)?, out.format)
        }
        Command::Connection { preset, params, solve, out } => {
            (report::connection_report(&session(&preset, params)?, solve)?, out.format)
        }
        Command::Limit { preset, params, out } => (report::limit_report(&session(&preset, params)?)?, out.format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, format)) => {
            match format {
                Format::Text => println!("{report}"),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.succeeded() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
