use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "btrack",
    version,
    about = "Infinitesimal calculus workbench over Levi-Civita, sequence and rational-function fields",
    after_help = "Exit codes: 0 result or verdict reached, 2 input error, 3 undecided, 4 unsupported by the backend.\n\
                  BTRACK_CONFIG may name a key=value file (truncation, precision, cutoff, tol); flags override it."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Number field to compute in.
    #[arg(long, global = true, value_enum)]
    pub backend: Option<BackendKind>,
    /// Levi-Civita truncation order (retained terms).
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Largest sequence index examined.
    #[arg(long, global = true)]
    pub cutoff: Option<u64>,
    /// Tolerance for numeric standard parts, e.g. 1e-9.
    #[arg(long, global = true)]
    pub tol: Option<String>,
    /// Emit the JSON report instead of the human table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print rationals as decimals with this many digits instead of p/q.
    #[arg(long, global = true)]
    pub decimal: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    /// Truncated Levi-Civita series; `x` (or `eps`) is the infinitesimal.
    Lc,
    /// Sequences compared by eventual agreement; `n` is the index.
    Omega,
    /// Rational functions ordered at infinity; `x` is infinite.
    Ratfunc,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Standard part of the difference quotient of f at a standard point.
    Derive {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Infinitesimal-increment continuity test at a standard point.
    Cont {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Value assigned to f at the point (for piecewise definitions).
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Microcontinuity probe on an open interval (Levi-Civita only).
    Ucont {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, required = true)]
        interval: Vec<String>,
    },
    /// Classify an element as zero, infinitesimal, appreciable or infinite.
    Classify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Order two elements.
    Compare {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Standard part of a finite element.
    St {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// (1 + kz/N)^N and its standard part against exp(kz).
    EulerExp {
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
        /// Hyperinteger rule in n.
        #[arg(long = "N", default_value = "n")]
        count: String,
    },
    /// Leading terms C(N, r) (kz/N)^r of the binomial expansion.
    Binom {
        #[arg(allow_hyphen_values = true)]
        k: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 4)]
        terms: u32,
        #[arg(long = "N", default_value = "n")]
        count: String,
    },
    /// Hyperfinite sum of a term in k for k = 1..N.
    Hsum {
        #[arg(allow_hyphen_values = true)]
        term: String,
        #[arg(long = "N", default_value = "n")]
        count: String,
    },
    /// Hyperfinite product of a term in k for k = 1..N.
    Hprod {
        #[arg(allow_hyphen_values = true)]
        term: String,
        #[arg(long = "N", default_value = "n")]
        count: String,
    },
    /// Decimal subdivision root of f on [a, b].
    Ivt {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, required = true)]
        interval: Vec<String>,
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
    /// Remainder of a series of functions at a point infinitely close to x0.
    Sumthm {
        /// Series term in k and x.
        #[arg(allow_hyphen_values = true)]
        term: String,
        /// Standard point x0.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// `q/N`, `-q/N`, or a rule in n.
        #[arg(long, allow_hyphen_values = true, default_value = "-1/N")]
        offset: String,
        #[arg(long = "N", default_value = "n")]
        count: String,
    },
    /// Spot-check an identity lhs = rhs at sample points.
    Transfer {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
        /// Sample point in the backend (repeatable); defaults per backend.
        #[arg(long, allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// How a Cauchy sequence names a real, and why hyperreals resist the same recipe.
    Ultrademo {
        #[arg(allow_hyphen_values = true)]
        seq: String,
    },
}
