use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "groupcrypt", version, about = "Graph groups, polycyclic groups and group-based protocols")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for all randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON result to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Raag(RaagCmd),
    #[command(subcommand)]
    Pc(PcCmd),
    #[command(subcommand)]
    Sig(SigCmd),
    #[command(subcommand)]
    Kex(KexCmd),
    #[command(subcommand)]
    Nike(NikeCmd),
    #[command(subcommand)]
    Share(ShareCmd),
    #[command(subcommand)]
    Auth(AuthCmd),
    #[command(subcommand)]
    Zkp(ZkpCmd),
    #[command(subcommand)]
    Fhe(FheCmd),
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Args, Debug)]
pub struct GraphArg {
    /// Graph file: vertex count, then `u v` per edge.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Finest join decomposition.
    Join {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        common: Common,
    },
    /// Hamiltonian cycle search.
    Ham {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        common: Common,
    },
    /// Homomorphism (or induced embedding) into a target graph.
    Hom {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        induced: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct WordArgs {
    #[command(flatten)]
    pub g: GraphArg,
    /// Word such as "a0 a1 A0 A1".
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Subcommand, Debug)]
pub enum RaagCmd {
    /// Normal form of a word.
    Nf {
        #[command(flatten)]
        w: WordArgs,
        #[command(flatten)]
        common: Common,
    },
    Trivial {
        #[command(flatten)]
        w: WordArgs,
        #[command(flatten)]
        common: Common,
    },
    Conj {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        word2: String,
        #[command(flatten)]
        common: Common,
    },
    Geodesic {
        #[command(flatten)]
        w: WordArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Direct product decomposition.
    Decompose {
        #[command(flatten)]
        g: GraphArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Builtin {
    S3,
    D8,
    Z2SemidirectZ,
    U3,
}

#[derive(Args, Debug)]
pub struct PresentationArgs {
    /// Presentation file.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub presentation: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<Builtin>,
    /// Prime for the `u3` builtin.
    #[arg(long, default_value_t = 3)]
    pub prime: u64,
}

#[derive(Subcommand, Debug)]
pub enum PcCmd {
    /// Collected form of a word in the generators.
    Collect {
        #[command(flatten)]
        p: PresentationArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    Hirsch {
        #[command(flatten)]
        p: PresentationArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
pub enum SigCmd {
    Keygen {
        #[arg(long, default_value_t = groupcrypt::protocols::signature::DEFAULT_BITS)]
        bits: u32,
        #[command(flatten)]
        common: Common,
    },
    Sign {
        /// Key file written by `sig keygen`.
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        message: String,
        #[command(flatten)]
        common: Common,
    },
    Verify {
        /// Key file or public key file.
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        message: String,
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KexPlatform {
    Matrix,
    Commutative,
}

#[derive(Subcommand, Debug)]
pub enum KexCmd {
    Semidirect {
        #[arg(long, value_enum, default_value = "matrix")]
        platform: KexPlatform,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 1_000_003)]
        modulus: u64,
        /// Largest private exponent.
        #[arg(long, default_value_t = 1 << 20)]
        max_exponent: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct NikeArgs {
    /// `n`; there are `n + 1` users.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub prime: u64,
    /// Random public elements instead of the standard ones.
    #[arg(long)]
    pub random_public: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum NikeCmd {
    Ktt(NikeArgs),
    Ks(NikeArgs),
}

#[derive(Subcommand, Debug)]
pub enum ShareCmd {
    Deal1 {
        /// Secret bits, e.g. "1011".
        #[arg(long)]
        secret: String,
        #[arg(long, default_value_t = 3)]
        participants: usize,
        #[arg(long, default_value_t = 6)]
        generators: usize,
        #[command(flatten)]
        common: Common,
    },
    Recover1 {
        /// Deal file written by `share deal1`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Leave out this participant (1-based).
        #[arg(long)]
        drop: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    Deal2 {
        #[arg(long, default_value_t = 5)]
        participants: usize,
        #[arg(long, default_value_t = 101)]
        prime: u64,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[command(flatten)]
        common: Common,
    },
    Recover2 {
        /// Deal file written by `share deal2`.
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct SessionArgs {
    #[arg(long, default_value_t = 128)]
    pub rounds: usize,
    /// Run a prover that does not know the secret.
    #[arg(long)]
    pub cheat: bool,
    /// Keep going after the first rejected round.
    #[arg(long)]
    pub all_rounds: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum AuthCmd {
    Run {
        #[command(flatten)]
        s: SessionArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZkpCmd {
    Run {
        /// Hamiltonian graph; a random one with a unique cycle is used otherwise.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        vertices: usize,
        #[command(flatten)]
        s: SessionArgs,
    },
}

#[derive(Args, Debug)]
pub struct KeyArg {
    /// Key file written by `fhe keygen`.
    #[arg(long)]
    pub key: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum FheCmd {
    Keygen {
        #[arg(long, default_value_t = 1_000_000_007)]
        modulus: u64,
        #[arg(long, default_value_t = groupcrypt::fhe::DEFAULT_DEGREE)]
        degree: usize,
        /// Keep the standard basis `1, t, …` instead of a secret mixed one.
        #[arg(long)]
        no_mix: bool,
        #[command(flatten)]
        common: Common,
    },
    Encrypt {
        #[command(flatten)]
        k: KeyArg,
        #[arg(long, conflicts_with = "values", required_unless_present = "values")]
        csv: Option<PathBuf>,
        #[arg(long, requires = "csv")]
        column: Option<String>,
        /// Comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
        /// Growth factor the circuit may apply; defaults to the value count.
        #[arg(long)]
        growth: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Elementwise sum of two ciphertext files.
    Add {
        #[command(flatten)]
        k: KeyArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Elementwise product of two ciphertext files.
    Mul {
        #[command(flatten)]
        k: KeyArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sums a ciphertext file homomorphically and decrypts only the sum.
    Mean {
        #[command(flatten)]
        k: KeyArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    Decrypt {
        #[command(flatten)]
        k: KeyArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Brute-force word problem.
    Word {
        #[command(flatten)]
        w: WordArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force conjugator search.
    Conj {
        #[command(flatten)]
        w: WordArgs,
        #[arg(long)]
        word2: String,
        #[arg(long, default_value_t = 4)]
        max_conj_len: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive discrete logarithm in `Z_N` or over a finite presentation.
    Gdlp {
        /// Work in the additive group `Z_N`.
        #[arg(long, conflicts_with = "presentation", required_unless_present = "presentation")]
        cyclic: Option<u64>,
        /// Comma-separated elements of `Z_N`.
        #[arg(long, requires = "cyclic")]
        x: Option<String>,
        /// Finite presentation; its generators form the sequence.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Target: an element of `Z_N` or a word in the generators.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        common: Common,
    },
}
