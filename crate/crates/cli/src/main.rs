use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use infoflow::combinadic::{code_to_set, rank_kset, set_info, set_to_code, unrank_kset};
use infoflow::density::{decade_checkpoints, NumberSet, DEFAULT_DENSITY_TOLERANCE};
use infoflow::efficiency::aleph::AlephTerm;
use infoflow::efficiency::diophantine::{diophantine_density, DEFAULT_TUPLE_BUDGET};
use infoflow::efficiency::{classify_polynomial, delta_poly, delta_tree, Env, Expr, Polynomial};
use infoflow::grids::{
    count_subsets_with_sum, grid_build, hardy_ramanujan_estimate, partition_count, small_bins,
    subset_sum_first, vacuous_stats, GridKind, DEFAULT_GRID_BUDGET, DEFAULT_SUBSET_BUDGET,
};
use infoflow::pairing::{cantor_pair_k, cantor_unpair_k};
use infoflow::{BigNat, Error, FiniteSet, LogBase};

const DEFAULT_SEED: u64 = 1;
const OUTPUT_DIR_VAR: &str = "INFOFLOW_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "infoflow", version, about = "Measure information flow through pairing, set coding, arithmetic and polynomials")]
struct Cli {
    /// Logarithm base for reported information values.
    #[arg(long, global = true, default_value_t = 2.0)]
    log_base: f64,

    /// Refuse to run randomized commands without an explicit --seed.
    #[arg(long, global = true)]
    strict: bool,

    /// Directory for relative output paths [env: INFOFLOW_OUTPUT_DIR].
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cantor pairing of two or more naturals (right fold for more than two).
    Pair {
        #[arg(required = true, num_args = 2..)]
        values: Vec<BigNat>,
    },
    /// Inverse Cantor pairing through the triangular root.
    Unpair {
        n: BigNat,
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
    /// Combinatorial-number-system rank of a nonempty set, e.g. {1,2,4}.
    Rank { set: FiniteSet },
    /// The k-subset with the given combinatorial-number-system rank.
    Unrank { k: u64, index: BigNat },
    /// Raw and dense codes of a finite set, and its information.
    Setcode { set: FiniteSet },
    /// Decode a dense code back to its finite set.
    Setdecode { code: BigNat },
    /// Node and history information efficiency of an arithmetic expression.
    DeltaExpr {
        expr: String,
        /// Variable bindings, e.g. --bind x=3,y=5 or repeated.
        #[arg(long, value_delimiter = ',')]
        bind: Vec<String>,
    },
    /// Information efficiency of a polynomial at a point.
    DeltaPoly {
        poly: Polynomial,
        /// Comma-separated inputs, one per variable.
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<BigNat>,
    },
    /// Classify a polynomial as discarding, conserving or expanding on
    /// random maximal-entropy inputs.
    Classify(ClassifyArgs),
    /// Exhaustive solution density of a diophantine equation p = 0 on [1, B]^k.
    DioDensity {
        poly: Polynomial,
        #[arg(long)]
        bound: u64,
        /// Skip tuples with a repeated coordinate.
        #[arg(long)]
        exclude_trivial: bool,
        /// Maximum number of tuples to examine.
        #[arg(long, default_value_t = DEFAULT_TUPLE_BUDGET)]
        budget: u128,
    },
    /// Lower, upper and natural density estimates of a set of naturals:
    /// naturals, evens, odds, primes, squares, leading-digit-1 or <r>mod<m>.
    Density {
        set: String,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = DEFAULT_DENSITY_TOLERANCE)]
        tolerance: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Build the cardinality, sum or product grid over the first N sets.
    Grid {
        kind: GridArg,
        #[arg(long)]
        sets: u64,
        /// Maximum number of sets to consume.
        #[arg(long, default_value_t = DEFAULT_GRID_BUDGET)]
        budget: u64,
        /// Bins shown in the summary and the bitmap.
        #[arg(long, default_value_t = 20)]
        bins: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Number of finite sets of naturals whose elements add up to n.
    PartitionCount {
        n: u64,
        /// Also print the unrestricted partition number and its
        /// Hardy-Ramanujan estimate.
        #[arg(long)]
        unrestricted: bool,
    },
    /// First subset of S adding up to k, by cardinality then combinadic rank.
    SubsetSum {
        set: FiniteSet,
        k: BigNat,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        budget: u128,
    },
    /// Evaluate an expression over the small infinity a = lim log x.
    Aleph { expr: String },
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    poly: Polynomial,
    /// Magnitude schedule: a..b (stepped by --step) or a comma list.
    #[arg(long = "t", default_value = "10..30")]
    t: String,
    #[arg(long, default_value_t = 5)]
    step: u32,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridArg {
    Card,
    Sum,
    Prod,
}

impl From<GridArg> for GridKind {
    fn from(g: GridArg) -> Self {
        match g {
            GridArg::Card => GridKind::Card,
            GridArg::Sum => GridKind::Sum,
            GridArg::Prod => GridKind::Prod,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Input(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

struct Context {
    base: LogBase,
    strict: bool,
    output_dir: Option<PathBuf>,
    /// Echo of the effective configuration, written next to output files.
    config: Vec<(String, String)>,
}

impl Context {
    fn info(&self, bits: f64) -> f64 {
        self.base.from_bits(bits)
    }

    fn resolve(&self, path: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    fn write_file(&self, path: &Path, contents: &str) -> Result<PathBuf, Failure> {
        let path = self.resolve(path);
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, contents)?;
        let mut meta = String::new();
        for (k, v) in &self.config {
            let _ = writeln!(meta, "{k}={v}");
        }
        let mut meta_path = path.clone().into_os_string();
        meta_path.push(".meta");
        fs::write(meta_path, meta)?;
        Ok(path)
    }

    fn seed(&mut self, given: Option<u64>) -> Result<u64, Failure> {
        let seed = match given {
            Some(s) => s,
            None if self.strict => return Err(Failure::Input("--strict requires an explicit --seed".into())),
            None => {
                eprintln!("using default seed {DEFAULT_SEED}");
                DEFAULT_SEED
            }
        };
        self.config.push(("seed".into(), seed.to_string()));
        Ok(seed)
    }
}

fn parse_schedule(spec: &str, step: u32) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::Input(format!("bad t schedule {spec:?}"));
    if let Some((a, b)) = spec.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if step == 0 || a > b {
            return Err(bad());
        }
        return Ok((a..=b).step_by(step as usize).collect());
    }
    spec.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn parse_bindings(binds: &[String]) -> Result<Env, Failure> {
    let mut env = Env::new();
    for b in binds {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("binding {b:?} is not name=value")))?;
        let value: BigNat = value
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("binding {b:?} needs a natural value")))?;
        env.insert(name.trim().to_string(), value);
    }
    Ok(env)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let base = LogBase::new(cli.log_base)?;
    let output_dir = cli.output_dir.or_else(|| std::env::var_os(OUTPUT_DIR_VAR).map(PathBuf::from));
    let mut ctx = Context {
        base,
        strict: cli.strict,
        output_dir,
        config: vec![
            ("command".into(), std::env::args().skip(1).collect::<Vec<_>>().join(" ")),
            ("log_base".into(), base.to_string()),
            ("strict".into(), cli.strict.to_string()),
        ],
    };

    match cli.command {
        Command::Pair { values } => {
            writeln!(out, "{}", cantor_pair_k(&values, values.len())?)?;
        }
        Command::Unpair { n, arity } => {
            let parts: Vec<String> = cantor_unpair_k(&n, arity)?.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", parts.join(" "))?;
        }
        Command::Rank { set } => {
            writeln!(out, "{}", rank_kset(&set)?)?;
        }
        Command::Unrank { k, index } => {
            writeln!(out, "{}", unrank_kset(k, &index)?)?;
        }
        Command::Setcode { set } => {
            let code = set_to_code(&set);
            writeln!(out, "raw {}", code.raw)?;
            writeln!(out, "dense {}", code.dense)?;
            writeln!(out, "info {}", ctx.info(set_info(&set).bits()))?;
        }
        Command::Setdecode { code } => {
            writeln!(out, "{}", code_to_set(&code))?;
        }
        Command::DeltaExpr { expr, bind } => {
            let e: Expr = expr.parse()?;
            let env = parse_bindings(&bind)?;
            let r = delta_tree(&e, &env)?;
            writeln!(out, "value {}", r.value)?;
            writeln!(out, "node_delta {}", ctx.info(r.node_delta))?;
            writeln!(out, "history_delta {}", ctx.info(r.history_delta))?;
            for (node, d) in &r.per_node {
                writeln!(out, "  {node} {}", ctx.info(*d))?;
            }
        }
        Command::DeltaPoly { poly, at } => {
            writeln!(out, "{}", ctx.info(delta_poly(&poly, &at)?))?;
        }
        Command::Classify(args) => {
            let schedule = parse_schedule(&args.t, args.step)?;
            let seed = ctx.seed(args.seed)?;
            ctx.config.push(("samples".into(), args.samples.to_string()));
            let c = classify_polynomial(&args.poly, &schedule, args.samples, seed)?;
            writeln!(out, "class {}", c.class)?;
            writeln!(out, "slope {}", ctx.info(c.slope))?;
            writeln!(out, "t mean_delta stddev rejected")?;
            for r in &c.table {
                writeln!(out, "{} {} {} {}", r.t, ctx.info(r.mean_delta), ctx.info(r.stddev), r.rejected)?;
            }
            if let Some(path) = args.csv {
                ctx.write_file(&path, &c.to_csv())?;
            }
        }
        Command::DioDensity { poly, bound, exclude_trivial, budget } => {
            let r = diophantine_density(&poly, bound, exclude_trivial, budget)?;
            writeln!(out, "solutions {}", r.solutions)?;
            writeln!(out, "total {}", r.total)?;
            writeln!(out, "density {}", r.density)?;
        }
        Command::Density { set, max, tolerance, csv } => {
            let s = NumberSet::by_name(&set, max)?;
            let cps = decade_checkpoints(max);
            let mut cps = cps;
            if cps.last() != Some(&max) {
                cps.push(max);
            }
            let p = s.density_profile(max, &cps, tolerance)?;
            writeln!(out, "set {}", s.name())?;
            writeln!(out, "count {}", s.compression_function(max))?;
            writeln!(out, "lower {}", p.lower)?;
            writeln!(out, "upper {}", p.upper)?;
            match p.natural {
                Some(v) => writeln!(out, "natural {v}")?,
                None => writeln!(out, "natural undefined")?,
            }
            writeln!(out, "entropy {}", ctx.info(s.shannon_entropy_estimate(max)?))?;
            if let Some(path) = csv {
                ctx.write_file(&path, &p.to_csv())?;
            }
        }
        Command::Grid { kind, sets, budget, bins, csv, pgm } => {
            ctx.config.push(("sets".into(), sets.to_string()));
            let g = grid_build(kind.into(), sets, budget)?;
            let last_bin = small_bins(&g).max().unwrap_or(0).min(bins);
            writeln!(out, "kind {}", g.kind())?;
            writeln!(out, "sets {}", g.sets_consumed())?;
            writeln!(out, "bin occupied complete")?;
            for st in vacuous_stats(&g, 0..=last_bin) {
                writeln!(out, "{} {} {}", st.bin, st.occupied, st.complete)?;
            }
            if let Some(path) = csv {
                ctx.write_file(&path, &g.to_csv())?;
            }
            if let Some(path) = pgm {
                ctx.write_file(&path, &g.to_pgm(last_bin))?;
            }
        }
        Command::PartitionCount { n, unrestricted } => {
            writeln!(out, "{}", count_subsets_with_sum(n))?;
            if unrestricted {
                writeln!(out, "p {}", partition_count(n))?;
                if n >= 1 {
                    writeln!(out, "estimate {}", hardy_ramanujan_estimate(n))?;
                }
            }
        }
        Command::SubsetSum { set, k, budget } => match subset_sum_first(&set, &k, budget)? {
            Some(x) => writeln!(out, "{x}")?,
            None => writeln!(out, "none")?,
        },
        Command::Aleph { expr } => {
            let v: AlephTerm = expr.parse()?;
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
