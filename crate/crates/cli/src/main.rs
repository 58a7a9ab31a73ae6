use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heyde_core::classes::{classify, gaussian_decomposition, idempotent_decomposition};
use heyde_core::counterexamples::{lemma5_truncated_bounded, lemma6, thm1_ii, Instance};
use heyde_core::finite_difference::is_polynomial;
use heyde_core::group::{parse_moduli, DEFAULT_ENUM_BOUND};
use heyde_core::heyde::{check_coefficients, check_heyde_cf, check_heyde_exact, check_q_heyde, classify_conclusion};
use heyde_core::json::{parse_distribution, parse_function, parse_instance, to_canonical_value};
use heyde_core::oracle::{sample_check, search_nondegenerate, SampleConfig, SearchConfig, WitnessGate};
use heyde_core::{Error, Group, LinearFormsSpec, Tolerances};

const BOUND_VAR: &str = "HEYDE_ENUM_BOUND";

#[derive(Parser)]
#[command(name = "heyde", version, about = "Symmetry of conditional distributions of linear forms on finite Abelian groups")]
struct Cli {
    /// Seed for every randomized command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Decision tolerance for class predicates and the product identity.
    #[arg(long, global = true, default_value_t = Tolerances::DEFAULT.equation)]
    tolerance: f64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the symmetry condition for an instance file.
    Check(CheckArgs),
    /// Build one of the counterexample instances.
    #[command(subcommand)]
    Construct(Construct),
    /// Class memberships of a single distribution.
    Classify { file: PathBuf },
    /// Decide whether a function on a group is a polynomial.
    Polytest {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Sampling and search oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// Compare exact joint laws as well.
    #[arg(long)]
    exact: bool,
    /// Test the polynomial-cofactor form.
    #[arg(long)]
    q: bool,
    /// Report class memberships and the applicable characterization.
    #[arg(long)]
    classify: bool,
    /// Run the checks even when a coefficient is inadmissible.
    #[arg(long)]
    allow_inadmissible: bool,
}

#[derive(Subcommand)]
enum Construct {
    /// a E_0 + (1 − a) m_M for M generated by an element of prime order.
    #[command(name = "thm1-ii")]
    Thm1Ii {
        #[arg(long)]
        group: String,
        /// Comma-separated coordinates of the generator.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Vec<i64>,
        #[arg(long, default_value_t = 0.5)]
        a_weight: f64,
    },
    /// Mixture of Haar laws on Z(p^k) with transform supported on Y_(p).
    Lemma5 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0.5)]
        a_weight: f64,
    },
    /// Four variables on Z(p), p > 3, with cosine densities.
    Lemma6 {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        y1: i64,
        #[arg(long, default_value_t = 2)]
        y2: i64,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Monte Carlo comparison with the exact joint law.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = SampleConfig::DEFAULT_PARTITIONS)]
        partitions: u64,
    },
    /// Search for a tuple that satisfies the symmetry but escapes a class.
    Search {
        #[arg(long)]
        group: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<i64>,
        #[arg(long)]
        grid_denominator: Option<i64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Gate::Degenerate)]
        gate: Gate,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Gate {
    Degenerate,
    Gaussian,
}

/// Failure with exit code 2.
struct Fatal(String);

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        Fatal(e.to_string())
    }
}

struct Context {
    seed: u64,
    tol: Tolerances,
    bound: u64,
}

impl Context {
    fn settings(&self) -> Value {
        json!({
            "seed": self.seed,
            "tolerances": self.tol,
            "enum_bound": self.bound,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, code)) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{report}");
            ExitCode::from(code)
        }
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(String, u8), Fatal> {
    if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
        return Err(Fatal(format!("tolerance {} must be positive", cli.tolerance)));
    }
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Fatal("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Fatal(e.to_string()))?;
    }
    let bound = match std::env::var(BOUND_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Fatal(format!("{BOUND_VAR}={s:?} is not a positive integer")))?,
        Err(_) => DEFAULT_ENUM_BOUND,
    };
    let ctx = Context { seed: cli.seed, tol: Tolerances::DEFAULT.with_decision(cli.tolerance), bound };
    let (name, result, code) = match cli.command {
        Command::Check(args) => {
            let (r, c) = cmd_check(&ctx, &args)?;
            ("check", r, c)
        }
        Command::Construct(kind) => {
            let (r, c) = cmd_construct(&ctx, kind)?;
            ("construct", r, c)
        }
        Command::Classify { file } => ("classify", cmd_classify(&ctx, &file)?, 0),
        Command::Polytest { file, max_degree } => {
            let f = parse_function(&read(&file)?, ctx.bound)?;
            let r = is_polynomial(&f, max_degree, ctx.tol.equation);
            let code = if r.is_polynomial { 0 } else { 1 };
            ("polytest", value(&r)?, code)
        }
        Command::Oracle(OracleCommand::Sample { file, trials, partitions }) => {
            let inst = parse_instance(&read_instance(&file)?, ctx.bound)?;
            let config = SampleConfig { trials, seed: ctx.seed, partitions };
            let r = sample_check(&inst.group, &inst.spec, &inst.distributions, config)?;
            let code = if r.within_band { 0 } else { 1 };
            ("oracle sample", value(&r)?, code)
        }
        Command::Oracle(OracleCommand::Search { group, a, b, grid_denominator, trials, gate }) => {
            let (r, c) = cmd_search(&ctx, &group, a, b, grid_denominator, trials, gate)?;
            ("oracle search", r, c)
        }
    };
    let report = json!({
        "command": name,
        "settings": ctx.settings(),
        "result": result,
        "exit_code": code,
    });
    let text = serde_json::to_string_pretty(&to_canonical_value(&report)?).map_err(|e| Fatal(e.to_string()))?;
    Ok((text, code))
}

fn read(path: &Path) -> Result<String, Fatal> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| Fatal(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

/// Accepts a bare instance or a `construct` report wrapping one.
fn read_instance(path: &Path) -> Result<String, Fatal> {
    let text = read(path)?;
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(mut map)) if map.get("command") == Some(&json!("construct")) => {
            let inner = map.remove("result").unwrap_or(Value::Null);
            Ok(inner.to_string())
        }
        _ => Ok(text),
    }
}

fn value(x: &impl serde::Serialize) -> Result<Value, Fatal> {
    Ok(to_canonical_value(x)?)
}

fn cmd_check(ctx: &Context, args: &CheckArgs) -> Result<(Value, u8), Fatal> {
    let inst = parse_instance(&read_instance(&args.file)?, ctx.bound)?;
    let (g, spec, mus) = (&inst.group, &inst.spec, &inst.distributions);
    let coefficients = check_coefficients(g, spec);
    if !coefficients.passes && !args.allow_inadmissible {
        return Err(Fatal(format!("{} (use --allow-inadmissible to check anyway)", coefficients.failures.join("; "))));
    }
    let cf = check_heyde_cf(g, spec, mus, &ctx.tol)?;
    let mut report = json!({
        "group": g,
        "spec": spec,
        "coefficients": coefficients,
        "symmetric": cf.holds,
        "cf": cf,
    });
    if args.exact {
        report["exact"] = value(&check_heyde_exact(g, spec, mus, &ctx.tol)?)?;
    }
    if args.q {
        report["q"] = match check_q_heyde(g, spec, mus, &ctx.tol) {
            Ok(q) => value(&q)?,
            Err(e @ Error::VanishingCharacteristicFunction { .. }) => json!({ "skipped": e.to_string() }),
            Err(e) => return Err(e.into()),
        };
    }
    if args.classify {
        report["classification"] = value(&classify_conclusion(g, spec, mus, &cf, &ctx.tol)?)?;
    }
    Ok((report, if cf.holds { 0 } else { 1 }))
}

fn cmd_construct(ctx: &Context, kind: Construct) -> Result<(Value, u8), Fatal> {
    let (inst, parameters): (Instance, Value) = match kind {
        Construct::Thm1Ii { group, x0, a_weight } => {
            let g = Group::with_bound(parse_moduli(&group)?, ctx.bound)?;
            let x = g.element(&x0)?;
            (thm1_ii(&g, &x, a_weight)?, json!({ "group": g, "x0": x.coords(), "a_weight": a_weight }))
        }
        Construct::Lemma5 { p, k, a_weight } => {
            (lemma5_truncated_bounded(p, k, a_weight, ctx.bound)?, json!({ "p": p, "k": k, "a_weight": a_weight }))
        }
        Construct::Lemma6 { p, y1, y2 } => {
            let g = Group::with_bound(vec![p], ctx.bound)?;
            let inst = lemma6(p, &g.character(&[y1])?, &g.character(&[y2])?)?;
            (inst, json!({ "p": p, "y1": y1.rem_euclid(p as i64), "y2": y2.rem_euclid(p as i64) }))
        }
    };
    let mut report = value(&inst)?;
    report["parameters"] = parameters;
    Ok((report, if inst.all_passed() { 0 } else { 1 }))
}

fn cmd_classify(ctx: &Context, file: &Path) -> Result<Value, Fatal> {
    let mu = parse_distribution(&read(file)?, ctx.bound)?;
    let g = mu.group();
    let idempotent = idempotent_decomposition(&mu, &ctx.tol).map(|(x, k)| {
        json!({
            "shift": x.coords(),
            "subgroup_order": k.len(),
            "subgroup_generators": k.generators().map(|s| s.coords()).collect::<Vec<_>>(),
        })
    });
    let gaussian = gaussian_decomposition(&mu, &ctx.tol).map(|(x, _)| json!({ "shift": x.coords() }));
    Ok(json!({
        "group": g,
        "classes": classify(&mu, &ctx.tol),
        "idempotent_decomposition": idempotent,
        "gaussian_decomposition": gaussian,
        "support_size": mu.support_indices().len(),
        "nonvanishing": mu.char_function().is_nonvanishing(ctx.tol.vanishing),
    }))
}

fn cmd_search(
    ctx: &Context,
    group: &str,
    a: Vec<i64>,
    b: Vec<i64>,
    grid_denominator: Option<i64>,
    trials: u64,
    gate: Gate,
) -> Result<(Value, u8), Fatal> {
    let g = Group::with_bound(parse_moduli(group)?, ctx.bound)?;
    let spec = LinearFormsSpec::new(a, b)?;
    let gate = match gate {
        Gate::Degenerate => WitnessGate::NotDegenerate,
        Gate::Gaussian => WitnessGate::NotGaussian,
    };
    let config = SearchConfig { grid_denominator, random_trials: trials, seed: ctx.seed, gate, tolerances: ctx.tol };
    let out = search_nondegenerate(&g, &spec, &config)?;
    let found = out.witness.is_some();
    let report = json!({
        "group": g,
        "spec": spec,
        "gate": gate,
        "hypotheses_hold": out.hypotheses_hold,
        "grid_denominator": grid_denominator,
        "grid_points": out.grid_points,
        "grid_tuples_tested": out.grid_tuples_tested,
        "random_trials": trials,
        "random_tuples_tested": out.random_tuples_tested,
        "witness": out.witness,
    });
    Ok((report, if found { 1 } else { 0 }))
}
