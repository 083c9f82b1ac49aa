use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "muldep",
    version,
    about = "Exact multiplicative dependence of rational values modulo approximate division groups",
    after_help = "Every subcommand also accepts --config FILE: a JSON object whose fields are the \
                  subcommand's flags in snake_case (lists as JSON arrays, polynomials as arrays of \
                  descending coefficients). Unknown fields are rejected."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Working precision in bits for real-valued bounds [env: MULDEP_PRECISION, default 128].
    #[arg(long, global = true)]
    pub precision: Option<usize>,

    /// Report format; csv is available for scans only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Recorded in the report; no subcommand draws random data.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Maximum number of rationals any bounded-height enumeration may produce.
    #[arg(long, global = true)]
    pub enumeration_cap: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct GammaArg {
    /// Generators of Γ, comma-separated rationals (empty for the trivial group).
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub gamma: String,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Run even when the hypothesis checks fail.
    #[arg(long = "override")]
    pub override_hypotheses: bool,

    /// Worker threads (0 = all cores); output does not depend on it.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weil height h(α) = log max(|p|, |q|) of a rational.
    #[command(args_override_self = true)]
    Height {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// S-norm N_S(b), the quantities P_S and Q_S, and S-integrality of b.
    #[command(args_override_self = true)]
    Snorm {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Finite primes of S, comma-separated; the archimedean place is always included.
        #[arg(long, default_value = "")]
        places: String,
    },
    /// Rationals of Weil height at most H (Northcott set A(ℚ, H)) in canonical order.
    #[command(args_override_self = true)]
    Enum {
        /// Height bound: log(N), log(N)+r or a decimal.
        #[arg(long)]
        height_cap: String,
        /// Report only the count.
        #[arg(long)]
        count_only: bool,
    },
    /// Polynomial data: heights h(f) and h_hom(f), radical f*, discriminant, bad-reduction primes.
    #[command(args_override_self = true)]
    Polyinfo {
        /// Descending coefficients, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Absolute multiplicative dependence of α₁, …, αₙ (relation lattice).
    #[command(args_override_self = true)]
    Deptest {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
    },
    /// Membership of x in the finitely generated group Γ.
    #[command(args_override_self = true)]
    Gmember {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Membership of x in the division group Γ^div.
    #[command(args_override_self = true)]
    Gdivmember {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Sandwich test for membership of x in the approximate division group Γ^div_ε.
    #[command(args_override_self = true)]
    Epsmember {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, default_value = "0")]
        epsilon: String,
    },
    /// Dependence of α₁, …, αₙ modulo Γ^div, or modulo Γ^div_ε when --epsilon is given.
    #[command(args_override_self = true)]
    Depgamma {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Multiplicative independence of rational functions modulo Γ (function-field hypothesis check).
    #[command(args_override_self = true)]
    Rfindep {
        /// Functions separated by ';', each "num" or "num|den" with descending coefficients.
        #[arg(long, allow_hyphen_values = true)]
        fs: String,
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Whether f₁^k₁ f₂^k₂ is a constant times a power of one linear fractional function.
    #[command(args_override_self = true)]
    Lfcheck {
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
    },
    /// Constants C₀…C₆, C and the Schinzel–Tijdeman exponent bound m ≤ 2C log C.
    #[command(args_override_self = true)]
    Stbound {
        /// Degree of f.
        #[arg(long)]
        n: u64,
        /// Number of places in S, archimedean included.
        #[arg(long)]
        s: u64,
        /// Field degree.
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Height of f: log(N), log(N)+r or a decimal.
        #[arg(long)]
        hf: String,
        /// Absolute discriminant of the field.
        #[arg(long, default_value = "1")]
        disc: String,
        /// P_S, the largest prime norm in S (1 when S is archimedean only).
        #[arg(long)]
        ps: String,
        /// N_S(b).
        #[arg(long)]
        nsb: String,
    },
    /// Solutions of the hyper-elliptic equation f(x) = b yᵐ in S-integers of bounded height.
    #[command(args_override_self = true)]
    Hsearch(HyperArgs),
    /// Hyper-elliptic search checked against the Schinzel–Tijdeman exponent bound.
    #[command(args_override_self = true)]
    Validate(HyperArgs),
    /// Place set S_{f,Γ,ε} with its stages: S_Γ, bad reduction, resultant primes, η primes.
    #[command(args_override_self = true)]
    Sets {
        /// Polynomials separated by ';', descending coefficients separated by ','.
        #[arg(long, allow_hyphen_values = true)]
        polys: String,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, default_value = "0")]
        epsilon: String,
    },
    /// Scan for α with f₁(α), …, fₙ(α) dependent modulo Γ^div_ε.
    #[command(args_override_self = true)]
    Scan12 {
        #[arg(long, allow_hyphen_values = true)]
        polys: String,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, default_value = "0")]
        epsilon: String,
        /// Height bound H on α.
        #[arg(long)]
        height_cap: String,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Scan for windows of iterates f^(m+1)(α), …, f^(m+n)(α) dependent modulo Γ^div_ε.
    #[command(args_override_self = true)]
    Scan13 {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, default_value = "0")]
        epsilon: String,
        /// Window length n.
        #[arg(long)]
        window: usize,
        /// Largest offset m.
        #[arg(long)]
        m_max: usize,
        #[arg(long)]
        height_cap: String,
        /// Iterates above this height (nats) are not factored.
        #[arg(long, default_value_t = 40.0)]
        iterate_height_cap: f64,
        /// Steps allowed when deciding whether 0 is periodic.
        #[arg(long, default_value_t = 64)]
        periodicity_steps: usize,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Scan for α with f₁(α), f₂(α) dependent modulo Γ^div_ε.
    #[command(args_override_self = true)]
    Scan15 {
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, default_value = "0")]
        epsilon: String,
        #[arg(long)]
        height_cap: String,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct HyperArgs {
    /// Descending coefficients of f.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub b: String,
    /// Finite primes of S, comma-separated.
    #[arg(long, default_value = "")]
    pub places: String,
    /// Height bound H on x.
    #[arg(long)]
    pub height_cap: String,
    #[arg(long)]
    pub m_max: u32,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Height { .. } => "height",
            Command::Snorm { .. } => "snorm",
            Command::Enum { .. } => "enum",
            Command::Polyinfo { .. } => "polyinfo",
            Command::Deptest { .. } => "deptest",
            Command::Gmember { .. } => "gmember",
            Command::Gdivmember { .. } => "gdivmember",
            Command::Epsmember { .. } => "epsmember",
            Command::Depgamma { .. } => "depgamma",
            Command::Rfindep { .. } => "rfindep",
            Command::Lfcheck { .. } => "lfcheck",
            Command::Stbound { .. } => "stbound",
            Command::Hsearch(_) => "hsearch",
            Command::Validate(_) => "validate",
            Command::Sets { .. } => "sets",
            Command::Scan12 { .. } => "scan12",
            Command::Scan13 { .. } => "scan13",
            Command::Scan15 { .. } => "scan15",
        }
    }
}
