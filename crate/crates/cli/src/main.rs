//! `explab`: verification suites and one-off computations.
//!
//! Exit codes: 0 success, 1 a suite case failed, 2 usage error,
//! 3 internal error or missing stabilization certificate.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use explab::dmodule::{self, CyclicModule, TwoTermComplex};
use explab::finite_model::{self, ExpClass, ExpObject};
use explab::groebner::buchberger;
use explab::rat::{fmt_q, parse_q, Q};
use explab::suites::{run_suite, SuiteParams, SUITE_NAMES};
use explab::weyl::{parse_weyl, WeylElt};
use explab::{Error, Result};

#[derive(Parser)]
#[command(name = "explab", version, about = "Exact checks for exponential sheaves: finite-field traces and Weyl-algebra D-modules")]
struct Cli {
    /// Run a named suite (same as the `suite` subcommand).
    #[arg(long, value_name = "NAME")]
    suite: Option<String>,
    #[command(flatten)]
    suite_args: SuiteArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    /// Primes for the finite model (repeat or comma-separate).
    #[arg(long = "prime", value_delimiter = ',', global = true)]
    primes: Vec<u64>,
    /// Bundle ranks for the Fourier checks (repeat or comma-separate).
    #[arg(long = "rank", value_delimiter = ',', global = true)]
    ranks: Vec<usize>,
    /// Seed for the randomized cases.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Hard cap on truncation degrees (overrides EXPLAB_MAX_DEGREE).
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Randomized cases per property.
    #[arg(long, default_value_t = 100, global = true)]
    cases: usize,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: finite-identities, weyl-core, dmod-core, realization, all.
    Suite { name: String },
    /// Character sums in Q(zeta_p).
    Sum(SumArgs),
    /// Fourier transform of a table read as JSON from --input or stdin.
    Ft {
        #[arg(long)]
        input: Option<String>,
        /// Print the mean-zero representative.
        #[arg(long)]
        canonical: bool,
    },
    /// Realization real_psi of a table read as JSON from --input or stdin.
    Real {
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long)]
        input: Option<String>,
    },
    /// Operations on cyclic D-modules A_n/I.
    Dmod(DmodArgs),
}

#[derive(Args)]
struct SumArgs {
    /// Kloosterman sum with parameter a: sum over x != 0 of psi(x + a/x).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "gauss")]
    kloosterman: Option<i64>,
    /// Quadratic Gauss sum: sum over x of psi(x^2).
    #[arg(long)]
    gauss: bool,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    lambda: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum DmodOp {
    Gb,
    Adjoint,
    Dual,
    Fourier,
    Real,
    Restrict,
    Pushforward,
    Rank,
    Point,
    Inject,
    Holonomic,
}

#[derive(Args)]
struct DmodArgs {
    op: DmodOp,
    /// Number of variables.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Ideal generators separated by ';'.
    #[arg(long, allow_hyphen_values = true)]
    gens: Option<String>,
    /// A single operator (principal ideal).
    #[arg(long = "op", allow_hyphen_values = true)]
    operator: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Variables for the Fourier transform (1-based, comma-separated); default all.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(b) = cli.suite_args.bound {
        std::env::set_var("EXPLAB_MAX_DEGREE", b.to_string());
    }
    let outcome = match (&cli.suite, cli.command) {
        (Some(_), Some(_)) => {
            eprintln!("explab: --suite cannot be combined with a subcommand");
            return ExitCode::from(2);
        }
        (Some(name), None) => suite(name, &cli.suite_args),
        (None, Some(Command::Suite { name })) => suite(&name, &cli.suite_args),
        (None, Some(cmd)) => compute(cmd, &cli.suite_args).map(|()| ExitCode::SUCCESS),
        (None, None) => {
            eprintln!("explab: give a subcommand or --suite NAME (try --help)");
            return ExitCode::from(2);
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("explab: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 3 })
        }
    }
}

fn suite(name: &str, args: &SuiteArgs) -> Result<ExitCode> {
    if !SUITE_NAMES.contains(&name) {
        eprintln!("explab: suites are {}", SUITE_NAMES.join(", "));
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let mut params = SuiteParams {
        seed: args.seed,
        random_cases: args.cases,
        ..SuiteParams::default()
    };
    if !args.primes.is_empty() {
        params.primes = args.primes.clone();
    }
    if !args.ranks.is_empty() {
        params.ranks = args.ranks.clone();
    }
    let report = run_suite(name, &params)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.has_errors() {
        ExitCode::from(3)
    } else if !report.all_pass() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn read_input(path: &Option<String>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Error::InvalidParameter(format!("{p}: {e}")))?
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::InvalidParameter(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_table(path: &Option<String>) -> Result<ExpObject> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Error::Json(e.to_string()))
}

fn single_prime(args: &SuiteArgs) -> Result<u64> {
    match args.primes.as_slice() {
        [p] => Ok(*p),
        _ => Err(Error::InvalidParameter("give exactly one --prime".into())),
    }
}

fn single_rank(args: &SuiteArgs) -> Result<usize> {
    match args.ranks.as_slice() {
        [] => Ok(1),
        [r] => Ok(*r),
        _ => Err(Error::InvalidParameter("give at most one --rank".into())),
    }
}

fn compute(cmd: Command, args: &SuiteArgs) -> Result<()> {
    match cmd {
        Command::Suite { .. } => unreachable!("handled by the caller"),
        Command::Sum(s) => {
            let p = single_prime(args)?;
            let class = match (s.kloosterman, s.gauss) {
                (Some(a), false) => finite_model::kloosterman_class(p, a)?,
                (None, true) => finite_model::square_pushforward_class(p)?,
                _ => return Err(Error::InvalidParameter("give --kloosterman A or --gauss".into())),
            };
            let value = finite_model::real_psi(&class, s.lambda)?.remove(0);
            if args.json {
                println!("{}", serde_json::to_string(&value).expect("serializable"));
            } else {
                println!("{value}");
            }
        }
        Command::Ft { input, canonical } => {
            let h = ExpClass::new(read_table(&input)?);
            let out = finite_model::ft(&h, single_rank(args)?)?;
            let rep = if canonical { out.canonical() } else { out.into_rep() };
            println!("{}", serde_json::to_string(&rep).expect("serializable"));
        }
        Command::Real { lambda, input } => {
            let h = ExpClass::new(read_table(&input)?);
            let values = finite_model::real_psi(&h, lambda)?;
            if args.json {
                println!("{}", serde_json::to_string(&values).expect("serializable"));
            } else {
                for (x, v) in values.iter().enumerate() {
                    println!("{x}: {v}");
                }
            }
        }
        Command::Dmod(d) => dmod(d, args.json)?,
    }
    Ok(())
}

fn generators(d: &DmodArgs) -> Result<Vec<WeylElt>> {
    let text = match (&d.gens, &d.operator) {
        (Some(g), None) => g.clone(),
        (None, Some(op)) => op.clone(),
        _ => return Err(Error::InvalidParameter("give exactly one of --gens and --op".into())),
    };
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_weyl(s, d.n))
        .collect()
}

fn rational(v: &Option<String>, flag: &str) -> Result<Q> {
    match v {
        Some(s) => parse_q(s),
        None => Err(Error::InvalidParameter(format!("--{flag} is required"))),
    }
}

fn print_module(m: &CyclicModule, json: bool) {
    if json {
        println!("{}", m.to_json());
    } else {
        for g in m.ideal().basis() {
            println!("{g}");
        }
    }
}

fn print_complex(c: &TwoTermComplex) {
    println!("{}", c.to_json());
}

fn dmod(d: DmodArgs, json: bool) -> Result<()> {
    let gens = generators(&d)?;
    match d.op {
        DmodOp::Gb => {
            let gb = buchberger(&gens)?;
            if json {
                let basis: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
                println!("{}", serde_json::json!({ "n": d.n, "basis": basis }));
            } else {
                for g in gb.basis() {
                    println!("{g}");
                }
            }
        }
        DmodOp::Adjoint => {
            for g in &gens {
                println!("{}", g.adjoint());
            }
        }
        DmodOp::Dual => print_module(&dmodule::dual(&CyclicModule::new(gens)?)?, json),
        DmodOp::Fourier => {
            let m = CyclicModule::new(gens)?;
            let vars: Vec<usize> = if d.vars.is_empty() {
                (0..d.n).collect()
            } else {
                d.vars.iter().map(|v| v.saturating_sub(1)).collect()
            };
            if d.vars.contains(&0) {
                return Err(Error::InvalidParameter("--vars are 1-based".into()));
            }
            print_module(&dmodule::fourier_module(&m, &vars)?, json);
        }
        DmodOp::Real => {
            let m = CyclicModule::new(gens)?;
            print_complex(&dmodule::real_at(&m, &rational(&d.lambda, "lambda")?)?);
        }
        DmodOp::Restrict => {
            let m = CyclicModule::new(gens)?;
            let c = rational(&d.point, "point")?;
            let res = dmodule::partial_restrict_last(&m, &c)?;
            if json {
                let basis: Vec<String> = res.ideal_out.basis().iter().map(ToString::to_string).collect();
                println!(
                    "{}",
                    serde_json::json!({ "point": fmt_q(&c), "cyclic": res.cyclic, "ideal": basis, "degree": res.degree })
                );
            } else {
                for g in res.ideal_out.basis() {
                    println!("{g}");
                }
            }
        }
        DmodOp::Pushforward => print_complex(&dmodule::derham_pushforward(&CyclicModule::new(gens)?)?),
        DmodOp::Rank => println!("{}", dmodule::holonomic_rank(&CyclicModule::new(gens)?)?),
        DmodOp::Point => {
            let m = CyclicModule::new(gens)?;
            print_complex(&dmodule::point_complex(&m, &rational(&d.point, "point")?)?);
        }
        DmodOp::Inject => {
            let m = CyclicModule::new(gens)?;
            let (inj, c) = dmodule::injectivity_check(&m, &rational(&d.lambda, "lambda")?)?;
            let mut v = c.to_json();
            v["injective"] = serde_json::Value::Bool(inj);
            println!("{v}");
        }
        DmodOp::Holonomic => {
            let m = CyclicModule::new(gens)?;
            let dim = m.ideal().hilbert_dimension()?;
            println!("{}", serde_json::json!({ "dimension": dim, "holonomic": dim == d.n }));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::Cli;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
