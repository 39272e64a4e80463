//! `evenlat`: exact computations with even lattices and discriminant forms.
//!
//! Every subcommand prints one JSON document carrying `"schema": 1`.
//! Exit codes: 0 success, 1 a verification entry failed, 2 unreadable or
//! malformed input, 3 a violated precondition, 4 a search guard tripped.

mod commands;
mod error;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use evenlat::curveconfig::TierPolicy;

use commands::Format;
use error::CliError;

const LATTICE_HELP: &str = "GramFile path, or name:<NAME> such as name:U(2)+<-8>";

#[derive(Parser)]
#[command(name = "evenlat", version, about = "Exact toolkit for even lattices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the GramFile of a named lattice.
    Named { name: String },
    /// Rank, determinant, signature and classification data.
    Info {
        #[arg(help = LATTICE_HELP)]
        lattice: String,
    },
    /// Smith normal form S*A*T = D of the Gram matrix.
    Snf {
        #[arg(help = LATTICE_HELP)]
        lattice: String,
        /// Rational form, diagonal in decreasing order.
        #[arg(long)]
        rational: bool,
        /// Use the inverse Gram matrix (implies --rational).
        #[arg(long)]
        inverse: bool,
    },
    /// Discriminant group with its q and b tables on generators.
    Disc {
        #[arg(help = LATTICE_HELP)]
        lattice: String,
    },
    /// Nonzero isotropic elements of the discriminant form.
    Isotropic {
        #[arg(help = LATTICE_HELP)]
        lattice: String,
        /// Also list the nontrivial isotropic subgroups.
        #[arg(long)]
        subgroups: bool,
    },
    /// Even overlattices, one per nontrivial isotropic subgroup.
    Overlattices {
        #[arg(help = LATTICE_HELP)]
        lattice: String,
    },
    /// Search for an isometry between two discriminant forms.
    Iso {
        #[arg(help = LATTICE_HELP)]
        first: String,
        #[arg(help = LATTICE_HELP)]
        second: String,
        /// Compare against the negated form of the second lattice.
        #[arg(long)]
        negate: bool,
    },
    /// Orthogonal complement of the span of some vectors.
    Complement {
        #[arg(help = LATTICE_HELP)]
        ambient: String,
        /// Inline JSON rows like [[1,1,1]], or a file with rows or {"gens": rows}.
        #[arg(long)]
        gens: String,
    },
    /// Induced Gram matrix and primitivity of the span of some vectors.
    EmbedCheck {
        #[arg(help = LATTICE_HELP)]
        ambient: String,
        /// Inline JSON rows like [[1,1,1]], or a file with rows or {"gens": rows}.
        #[arg(long)]
        gens: String,
    },
    /// Curve configurations.
    #[command(subcommand)]
    Config(ConfigCmd),
    /// Check every lattice statement against its printed values.
    VerifyPaper {
        /// Result id to run; repeat for several. Defaults to all.
        #[arg(long = "result")]
        results: Vec<String>,
        #[arg(long, default_value = "auto", value_parser = commands::parse_tier)]
        tier: TierPolicy,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum ConfigCmd {
    /// Pull a configuration back along a double cover.
    Pullback { config: PathBuf, step: PathBuf },
    /// Push a configuration down along a free involution.
    Quotient {
        config: PathBuf,
        involution: PathBuf,
        #[arg(long)]
        fixed: Option<PathBuf>,
    },
    /// Rebuild the 24-curve configuration from its combinatorial constraints.
    Reconstruct {
        #[arg(long, default_value = "auto", value_parser = commands::parse_tier)]
        tier: TierPolicy,
        /// Also build the 20-curve configuration on the quotient.
        #[arg(long)]
        xprime: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Md,
}

fn run(cmd: Cmd) -> Result<(String, bool), CliError> {
    let v = match cmd {
        Cmd::Named { name } => commands::named(&name)?,
        Cmd::Info { lattice } => commands::info(&lattice)?,
        Cmd::Snf {
            lattice,
            rational,
            inverse,
        } => commands::snf_cmd(&lattice, rational, inverse)?,
        Cmd::Disc { lattice } => commands::disc(&lattice)?,
        Cmd::Isotropic { lattice, subgroups } => commands::isotropic(&lattice, subgroups)?,
        Cmd::Overlattices { lattice } => commands::overlattices(&lattice)?,
        Cmd::Iso {
            first,
            second,
            negate,
        } => commands::iso(&first, &second, negate)?,
        Cmd::Complement { ambient, gens } => commands::complement(&ambient, &gens)?,
        Cmd::EmbedCheck { ambient, gens } => commands::embed_check(&ambient, &gens)?,
        Cmd::Config(ConfigCmd::Pullback { config, step }) => commands::pullback(&config, &step)?,
        Cmd::Config(ConfigCmd::Quotient {
            config,
            involution,
            fixed,
        }) => commands::quotient(&config, &involution, fixed.as_deref())?,
        Cmd::Config(ConfigCmd::Reconstruct { tier, xprime }) => {
            commands::reconstruct(tier, xprime)?
        }
        Cmd::VerifyPaper {
            results,
            tier,
            format,
        } => {
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Md => Format::Markdown,
            };
            return commands::verify_paper(tier, &results, format);
        }
    };
    let text = serde_json::to_string_pretty(&v).expect("json value serializes");
    Ok((text + "\n", true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((text, ok)) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
