use clap::{Args, Parser, Subcommand};
use sturmkit::realnum::DEFAULT_MAX_DIGITS;

#[derive(Parser, Debug)]
#[command(name = "sturmkit", version, about = "Continued fractions, Sturmian, Denjoy and interval exchange systems")]
pub struct Cli {
    /// Emit JSON (schema "sturmkit/1") instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Digit cap for certified comparisons in formal bases.
    #[arg(long, global = true, env = "STURMKIT_PRECISION", default_value_t = DEFAULT_MAX_DIGITS)]
    pub precision: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Continued fractions.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Möbius action, Smith factorization, stabilizers, Pell equations.
    #[command(subcommand)]
    Mat(MatCmd),
    /// Sturmian words.
    #[command(subcommand)]
    Sturmian(SturmianCmd),
    /// Denjoy systems.
    #[command(subcommand)]
    Denjoy(DenjoyCmd),
    /// Interval exchange transformations.
    #[command(subcommand)]
    Iet(IetCmd),
    /// Equivalence decisions for Sturmian parameters.
    #[command(subcommand)]
    Decide(DecideCmd),
    /// Runs newline-delimited JSON invocations from a file (`-` for stdin).
    Batch { file: String },
}

#[derive(Subcommand, Debug)]
pub enum CfCmd {
    /// Partial quotients of a number.
    Expand {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Exact eventually periodic form instead of a prefix.
        #[arg(long)]
        periodic: bool,
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// The number with expansion `[c0; c1, (p1, p2)]`.
    From {
        #[arg(allow_hyphen_values = true)]
        cf: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum MatCmd {
    /// Möbius image of a number; the matrix is `a,b,c,d` or `(a b / c d)`.
    Apply {
        #[arg(allow_hyphen_values = true)]
        m: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// `M = U·diag(m, 1)·V` with `U, V ∈ SL₂(ℤ)`.
    Smith {
        #[arg(allow_hyphen_values = true)]
        m: String,
    },
    /// Fundamental SL₂(ℤ) stabilizer of a quadratic surd.
    Stabilizer {
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// The PGL₂(ℤ) generator instead (determinant ±1).
        #[arg(long)]
        pgl2: bool,
    },
    /// Classes of solutions of `x² − s²Δ = ±4m`.
    Pell { disc: String, m: String },
}

#[derive(Subcommand, Debug)]
pub enum SturmianCmd {
    /// Letters `x_n` for `i ≤ n < j`.
    Window {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        i: i64,
        #[arg(allow_hyphen_values = true)]
        j: i64,
    },
    /// All factors of length `n`.
    Factors {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        n: usize,
    },
    /// The state image `ℤ + ℤα`.
    State {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct DenjoyInput {
    /// Rotation number.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Comma-separated orbit representatives.
    #[arg(long, allow_hyphen_values = true)]
    pub reps: Option<String>,
    /// JSON file or inline JSON `{"rho": ..., "reps": [...]}`.
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct DenjoyInput2 {
    #[arg(long, allow_hyphen_values = true)]
    pub rho2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub reps2: Option<String>,
    #[arg(long)]
    pub params2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum DenjoyCmd {
    /// Reduced rotation number and canonical orbit representatives.
    Normalize {
        #[command(flatten)]
        p: DenjoyInput,
    },
    /// Parameters of the `m`-th power.
    Power {
        #[command(flatten)]
        p: DenjoyInput,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// 2-AI equivalence.
    #[command(name = "2ai")]
    TwoAi {
        #[command(flatten)]
        p: DenjoyInput,
        #[command(flatten)]
        q: DenjoyInput2,
    },
    /// Bounded search for a flow equivalence.
    Flow {
        #[command(flatten)]
        p: DenjoyInput,
        #[command(flatten)]
        q: DenjoyInput2,
        #[arg(long, default_value_t = 8)]
        bound: u64,
    },
    /// Checks an isogeny certificate matrix.
    Verify {
        #[command(flatten)]
        p: DenjoyInput,
        #[command(flatten)]
        q: DenjoyInput2,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct IetInput {
    /// 1-based permutation, e.g. `2,1`.
    #[arg(long)]
    pub perm: Option<String>,
    /// Comma-separated lengths.
    #[arg(long, allow_hyphen_values = true)]
    pub lengths: Option<String>,
    /// JSON file or inline JSON `{"perm": [...], "lengths": [...]}`.
    #[arg(long)]
    pub iet: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct IetInput2 {
    #[arg(long)]
    pub perm2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lengths2: Option<String>,
    #[arg(long)]
    pub iet2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum IetCmd {
    /// `T(x)`.
    Eval {
        #[command(flatten)]
        t: IetInput,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Interval labels along the orbit of `x`.
    Orbit {
        #[command(flatten)]
        t: IetInput,
        #[arg(allow_hyphen_values = true)]
        x: String,
        n: usize,
    },
    /// Keane's condition.
    Keane {
        #[command(flatten)]
        t: IetInput,
        #[arg(long, default_value_t = 100)]
        depth: usize,
    },
    /// Rauzy–Veech path.
    Rauzy {
        #[command(flatten)]
        t: IetInput,
        #[arg(long, default_value_t = 50)]
        depth: usize,
    },
    /// First return map on `(a, b]` or on the cylinder of a word.
    Induce {
        #[command(flatten)]
        t: IetInput,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Minimal model (removable discontinuities merged).
    Minmodel {
        #[command(flatten)]
        t: IetInput,
    },
    /// Sah–Arnoux–Fathi invariant.
    Saf {
        #[command(flatten)]
        t: IetInput,
    },
    /// Projective length span and SAF.
    Invariants {
        #[command(flatten)]
        t: IetInput,
    },
    /// Conjugacy of the encodings.
    Conjugate {
        #[command(flatten)]
        t: IetInput,
        #[command(flatten)]
        u: IetInput2,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Flow equivalence semi-decision by cylinder induction.
    Flow {
        #[command(flatten)]
        t: IetInput,
        #[command(flatten)]
        u: IetInput2,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DecideCmd {
    /// `α = ±β mod ℤ`.
    Conjugate {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Same PGL₂(ℤ)-orbit.
    Flow {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Flow equivalence of `nα` and `nβ` for every `n ≤ n-max`.
    EventualFlow {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
    /// Same PGL₂(ℚ)-orbit.
    Isogeny {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Flow equivalence of `α` and `mα` through the Pell–Fermat equation.
    Selfmult {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        m: u64,
    },
}
