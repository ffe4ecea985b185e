//! `extconv`: Bondal-Thomsen collections, quiver tensor products and their invariants.

mod commands;
mod failure;
mod inputs;
mod selftest;
mod tuples;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use extconv::linalg::Field;
use serde_json::json;

use commands::Report;
use failure::{one_line, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

const EXPR_HELP: &str = "Sheaf expressions: O(d) | Omega(i) | sky[a0,a1,...] | shift(n, e) | sum(e, e). \
Whitespace is ignored; point coordinates are integers or rationals p/q.";

#[derive(Parser, Debug)]
#[command(name = "extconv", version, about = "Extended convolution on toric varieties and P(A), in exact arithmetic")]
struct Cli {
    /// Output format; svg applies to `stratify` only.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Coefficient field: q or fp:<prime>.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Image of the floor map, in descending order.
    Theta { fan: String },
    /// Whether Theta or its negation is transparent up to fullness.
    CheckBr { fan: String },
    /// Transparency checks on a weight list such as (0,0),(1,0).
    Transparency {
        fan: String,
        #[arg(long)]
        weights: String,
    },
    /// Cohomology of the line bundle of a torus-invariant divisor.
    Cohomology {
        fan: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Floor-map stratification of the torus M_R/M.
    Stratify {
        fan: String,
        #[arg(long)]
        svg: Option<String>,
    },
    /// The weight quiver of a fan or algebra on a weight list.
    Quiver {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Extended convolution of two sheaves on P<n> or pA:<algebra>.
    #[command(after_help = EXPR_HELP)]
    Convolve {
        space: String,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// K0 ring, Balmer primes and, over F_p, the Picard torsion order.
    Invariants {
        #[arg(long)]
        algebra: String,
    },
    /// Products of skyscrapers at seeded points, or at every point over F_p.
    SkyTable {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        all_points_fp: bool,
    },
    /// Order of (A^x)^(d-1)/k^x over F_p.
    PicCount {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        prime: u64,
    },
    /// The scalar c making c*phi a monoid homomorphism.
    Rescale {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        matrix: String,
    },
    /// Runs the invariant suite.
    Selftest,
}

fn dispatch(cli: &Cli, field: Field) -> Result<(Report, bool), Failure> {
    let ok = |r: Report| Ok((r, true));
    match &cli.command {
        Command::Theta { fan } => ok(commands::theta(fan)?),
        Command::CheckBr { fan } => ok(commands::check_br(fan)?),
        Command::Transparency { fan, weights } => ok(commands::transparency(fan, weights)?),
        Command::Cohomology { fan, divisor } => ok(commands::cohomology(fan, divisor)?),
        Command::Stratify { fan, svg } => ok(commands::stratify_cmd(fan, svg.as_deref(), cli.format == Format::Svg)?),
        Command::Quiver { input, weights } => ok(commands::quiver(input, weights, field)?),
        Command::Convolve { space, left, right } => ok(commands::convolve(space, left, right, field)?),
        Command::Invariants { algebra } => ok(commands::invariants(algebra, field)?),
        Command::SkyTable { algebra, all_points_fp } => {
            ok(commands::sky_table(algebra, *all_points_fp, field, cli.seed)?)
        }
        Command::PicCount { algebra, prime } => ok(commands::pic_count(algebra, *prime)?),
        Command::Rescale { from, to, matrix } => ok(commands::rescale(from, to, matrix, field)?),
        Command::Selftest => Ok(selftest::run(cli.seed)),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Theta { .. } => "theta",
        Command::CheckBr { .. } => "check-br",
        Command::Transparency { .. } => "transparency",
        Command::Cohomology { .. } => "cohomology",
        Command::Stratify { .. } => "stratify",
        Command::Quiver { .. } => "quiver",
        Command::Convolve { .. } => "convolve",
        Command::Invariants { .. } => "invariants",
        Command::SkyTable { .. } => "sky-table",
        Command::PicCount { .. } => "pic-count",
        Command::Rescale { .. } => "rescale",
        Command::Selftest => "selftest",
    }
}

fn run(cli: &Cli) -> Result<(Report, bool), Failure> {
    if cli.format == Format::Svg && !matches!(cli.command, Command::Stratify { .. }) {
        return Err(Failure::validation("--format: svg output is only available for stratify"));
    }
    let field: Field = cli.field.parse().map_err(|e| Failure::from(e).context("--field"))?;
    dispatch(cli, field)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                emit(&e.to_string());
                return ExitCode::SUCCESS;
            }
            let first = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            eprintln!("{}", one_line(&first));
            return ExitCode::from(1);
        }
    };
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok((report, passed)) => {
            match cli.format {
                Format::Text => emit(&report.text),
                Format::Json => emit(&json!({ "command": name, "ok": passed, "result": report.json }).to_string()),
                Format::Svg => emit(report.svg.as_deref().unwrap_or_default()),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: {name}: some checks failed");
                ExitCode::from(1)
            }
        }
        Err(f) => {
            if cli.format == Format::Json {
                emit(
                    &json!({
                        "command": name,
                        "ok": false,
                        "error": { "kind": f.kind_name(), "message": f.message },
                    })
                    .to_string(),
                );
            }
            eprintln!("error: {}", one_line(&f.message));
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
