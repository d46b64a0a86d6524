use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cs-monopole",
    version,
    about = "Monopole harmonics, generalized spin coherent states and the Kravchuk oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `verify` defaults to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Float,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WaveForm {
    Direct,
    Closed,
    M0,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    /// Twice the monopole charge, 2ν >= 1.
    #[arg(long = "two-nu")]
    pub two_nu: u32,

    /// Landau level index.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate every monopole harmonic over a grid.
    Basis {
        #[command(flatten)]
        level: LevelArgs,
        /// Grid as re,im,half_width,resolution.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Husimi density |<z|φ>|² of a state over a grid.
    Husimi {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// `basis:J` with -m <= J <= 2ν+m, or `gscs:re,im`.
        #[arg(long, allow_hyphen_values = true)]
        state: String,
    },
    /// Coherent-state overlap <z|w>, direct sum against closed form.
    Overlap {
        #[command(flatten)]
        level: LevelArgs,
        /// Bra label as re,im.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Ket label as re,im.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "grid",
            required_unless_present = "grid"
        )]
        w: Option<String>,
        /// Tabulate over ket labels on a grid instead of a single `--w`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// `rational` compares the stripped real-axis kernels exactly.
        #[arg(long, value_enum, default_value_t = Backend::Float)]
        backend: Backend,
    },
    /// Basis Gram matrix or resolution-of-identity matrix by quadrature.
    Gram {
        #[command(flatten)]
        level: LevelArgs,
        /// Integrate |z><z| instead of the harmonic products.
        #[arg(long)]
        identity: bool,
    },
    /// Kravchuk-oscillator coherent-state wave function on the grid.
    Wavefunction {
        #[command(flatten)]
        level: LevelArgs,
        /// Binomial parameter as num/den.
        #[arg(long)]
        p: String,
        /// Label as re,im.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = WaveForm::Direct)]
        form: WaveForm,
    },
    /// Kravchuk functions, the oscillator matrix, its spectrum or the polynomials.
    #[command(group(ArgGroup::new("what").required(true).args(["functions", "matrix", "spectrum", "polynomials"])))]
    Kravchuk {
        /// Number of grid steps N >= 1.
        #[arg(long = "N", short = 'N')]
        n: u32,
        /// Binomial parameter as num/den, 0 < p < 1.
        #[arg(long)]
        p: String,
        #[arg(long)]
        functions: bool,
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        spectrum: bool,
        #[arg(long)]
        polynomials: bool,
        #[arg(long, value_enum, default_value_t = Backend::Float)]
        backend: Backend,
    },
    /// Run every identity check and report residuals.
    Verify {
        /// Relative fault injected into the overlap prefactor and the identity measure.
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
    },
}
