//! `gwell`: exact n-point series engines, verification suites, bracket extraction and
//! quasimodular fitting from the command line.

mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gwell_core::engines::{self, fn_wedge, gw_extract, tn_on_ray};
use gwell_core::fit::quasimodular_fit;
use gwell_core::ordered::{tn_omega, Ordering};
use gwell_core::qe::qe_eval;
use gwell_core::series::{parse_rational, QSeries, Ray};
use gwell_core::special::ThetaExpansion;
use gwell_core::verify::{run_suite, Suite, VerifyConfig};
use gwell_core::Error;
use num_complex::Complex64;
use serde_json::{json, Value};

use output::{BracketRow, Format};

/// Largest supported n and q-order for any command.
const MAX_N: usize = 5;
const MAX_Q: usize = 20;

#[derive(Parser)]
#[command(name = "gwell", version, about = "Exact n-point functions of the elliptic curve")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one engine for T_n on a ray (or the multivariate wedge table).
    Npoint(NpointArgs),
    /// Run a named verification suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
    /// Stationary brackets <prod τ_ℓ(ω)> read off the wedge trace.
    Gw(GwArgs),
    /// Fit a q-series by a polynomial in G_2, G_4, G_6.
    Fit(FitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Bell,
    Bo,
    Recursion,
    Compositions,
    /// The ordered A-cycle integral; the table is chosen by --ordering.
    Omega,
    Wedge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderingChoice {
    Gw,
    Wick,
    RandomBound,
    RandomCustom,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NpointArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "bell")]
    engine: Engine,
    #[arg(long, default_value_t = 10)]
    q_order: usize,
    #[arg(long, default_value_t = 10)]
    t_order: i32,
    /// Comma-separated rational ray direction, e.g. 1,2 or 1/2,-3.
    #[arg(long, allow_hyphen_values = true)]
    ray: Option<String>,
    /// Seed for a random generic ray (used when --ray is absent).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "gw")]
    ordering: OrderingChoice,
    /// JSON ordering table {"n", "chi", "kind"}; overrides --ordering.
    #[arg(long)]
    ordering_file: Option<PathBuf>,
    /// Print the symbolic quasi-elliptic expression instead of a series (bell, omega).
    #[arg(long)]
    symbolic: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    b_max: usize,
    #[arg(long, default_value_t = 10)]
    q_order: usize,
    #[arg(long, default_value_t = 10)]
    t_order: i32,
    #[arg(long, default_value_t = 10)]
    k_max: usize,
    #[arg(long, default_value_t = 3)]
    rays: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// τ in the upper half-plane, e.g. 0.3+0.8i or 1.2i; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    tau: Vec<String>,
    #[arg(long, default_value_t = 10)]
    samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Series,
    Special,
    Combinatorics,
    Ordered,
    Engines,
    Numeric,
    All,
}

#[derive(Args)]
struct GwArgs {
    /// Comma-separated descendant exponents, each ≥ -2; repeatable.
    #[arg(long, required = true, allow_hyphen_values = true)]
    ell: Vec<String>,
    #[arg(long, default_value_t = 10)]
    q_order: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FitArgs {
    /// Fit the normalized bracket for these exponents.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "series_file")]
    ell: Option<String>,
    /// Fit a q-series stored as {"var": "q", "order", "coeffs"} JSON.
    #[arg(long)]
    series_file: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    q_order: usize,
    #[arg(long, default_value_t = 12)]
    max_weight: usize,
}

/// A failure with its exit code: 1 for a failed check, 2 for bad input.
struct Failure {
    code: u8,
    value: Value,
}

impl Failure {
    fn input(kind: &str, message: impl Into<String>) -> Self {
        Failure { code: 2, value: json!({"error": kind, "message": message.into()}) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::NonUnit(_) => "non-unit",
            Error::NonGenericRay(_) => "non-generic-ray",
            Error::Parse(_) => "parse",
            Error::Invalid(_) => "invalid",
            Error::Unsupported(_) => "unsupported",
            Error::Mismatch(_) => "mismatch",
        };
        let code = if matches!(e, Error::Mismatch(_)) { 1 } else { 2 };
        Failure { code, value: json!({"error": kind, "message": e.to_string()}) }
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input("io", format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T, Failure>) -> Result<Vec<T>, Failure> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| item(x.trim())).collect()
}

fn parse_ell(s: &str) -> Result<Vec<i32>, Failure> {
    parse_list(s, |x| x.parse::<i32>().map_err(|_| Failure::input("parse", format!("not an integer: {x:?}"))))
}

/// Parses `a+bi`, `a-bi`, `bi` or `a`.
fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::input("parse", format!("not a complex number: {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else { return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad()) };
    let split = body.char_indices().skip(1).filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E'])).last();
    let (re, im) = match split {
        Some((i, _)) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
}

fn check_orders(n: usize, q_order: usize) -> Result<(), Failure> {
    if n == 0 || n > MAX_N {
        return Err(Failure::input("invalid", format!("n must be in 1..={MAX_N}")));
    }
    if q_order > MAX_Q {
        return Err(Failure::input("invalid", format!("q-order must be ≤ {MAX_Q}")));
    }
    Ok(())
}

fn resolve_ray(args: &NpointArgs) -> Result<(Ray, Option<u64>), Failure> {
    match &args.ray {
        Some(s) => {
            let dir = parse_list(s, |x| parse_rational(x).map_err(Failure::from))?;
            if dir.len() != args.n {
                return Err(Failure::input("invalid", format!("ray has {} entries, expected {}", dir.len(), args.n)));
            }
            Ok((Ray::generic(dir)?, None))
        }
        None => {
            let ray = Ray::random_generic(args.n, args.seed);
            eprintln!("{} drawn from seed {}", ray.describe(), args.seed);
            Ok((ray, Some(args.seed)))
        }
    }
}

fn resolve_ordering(args: &NpointArgs) -> Result<Ordering, Failure> {
    if let Some(path) = &args.ordering_file {
        let text = fs::read_to_string(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::input("parse", e.to_string()))?;
        let o = Ordering::from_json(&v)?;
        if o.n() != args.n {
            return Err(Failure::input("invalid", format!("ordering has n = {}, expected {}", o.n(), args.n)));
        }
        return Ok(o);
    }
    Ok(match args.ordering {
        OrderingChoice::Gw => Ordering::gw(args.n),
        OrderingChoice::Wick => Ordering::wick(args.n),
        OrderingChoice::RandomBound => Ordering::random_bound(args.n, args.seed),
        OrderingChoice::RandomCustom => Ordering::random_custom(args.n, args.seed),
    })
}

fn cmd_npoint(args: &NpointArgs) -> Result<(), Failure> {
    check_orders(args.n, args.q_order)?;
    if args.symbolic {
        let expr = match args.engine {
            Engine::Bell => engines::tn_bell(args.n)?,
            Engine::Omega => tn_omega(&resolve_ordering(args)?)?,
            _ => return Err(Failure::input("invalid", "--symbolic needs --engine bell or omega")),
        };
        let v = json!({"engine": engine_name(args.engine), "n": args.n, "expression": expr.to_string(), "weights": expr.weights()});
        return emit(&args.out, pretty(&v));
    }
    if args.engine == Engine::Wedge && args.ray.is_none() {
        let w = fn_wedge(args.n, args.q_order, args.t_order)?;
        let text = match args.out.format {
            Format::Json => pretty(&w.to_json()),
            Format::Csv => output::wedge_csv(&w),
        };
        return emit(&args.out, text);
    }
    let (ray, seed) = resolve_ray(args)?;
    let th = ThetaExpansion::for_orders(args.q_order, args.t_order, args.n + 1)?;
    let series = match args.engine {
        Engine::Omega => qe_eval(&tn_omega(&resolve_ordering(args)?)?, &th, &ray)?.truncate(args.t_order).normalized(),
        e => tn_on_ray(engine_name(e), args.n, &ray, &th, args.t_order)?,
    };
    let text = match args.out.format {
        Format::Json => pretty(&output::npoint_json(engine_name(args.engine), args.n, Some(&ray), seed, &series)),
        Format::Csv => output::laurent_csv(&series),
    };
    emit(&args.out, text)
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Bell => "bell",
        Engine::Bo => "bo",
        Engine::Recursion => "recursion",
        Engine::Compositions => "compositions",
        Engine::Omega => "omega-gw",
        Engine::Wedge => "wedge",
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    check_orders(args.n, args.q_order)?;
    let mut cfg = VerifyConfig {
        n: args.n,
        b_max: args.b_max,
        q_order: args.q_order,
        t_order: args.t_order,
        k_max: args.k_max,
        rays: args.rays,
        seed: args.seed,
        samples: args.samples,
        ..VerifyConfig::default()
    };
    if !args.tau.is_empty() {
        cfg.taus = args.tau.iter().map(|t| parse_complex(t)).collect::<Result<_, _>>()?;
        if let Some(t) = cfg.taus.iter().find(|t| t.im <= 0.0) {
            return Err(Failure::input("invalid", format!("τ = {t} is not in the upper half-plane")));
        }
    }
    let suite = match args.suite {
        SuiteArg::Series => Suite::Series,
        SuiteArg::Special => Suite::Special,
        SuiteArg::Combinatorics => Suite::Combinatorics,
        SuiteArg::Ordered => Suite::Ordered,
        SuiteArg::Engines => Suite::Engines,
        SuiteArg::Numeric => Suite::Numeric,
        SuiteArg::All => Suite::All,
    };
    eprintln!("random rays and tables use seed {}", cfg.seed);
    let reports = run_suite(suite, &cfg);
    let mut stdout = std::io::stdout().lock();
    for r in &reports {
        let _ = writeln!(stdout, "{}", r.to_json());
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure { code: 1, value: json!({"error": "check-failed", "failed": failed, "total": reports.len()}) })
    }
}

fn cmd_gw(args: &GwArgs) -> Result<(), Failure> {
    check_orders(1, args.q_order)?;
    let mut rows = Vec::new();
    for s in &args.ell {
        let ell = parse_ell(s)?;
        rows.push(match gw_extract(&ell, args.q_order) {
            Ok(b) => BracketRow::Ok(b),
            Err(e) => BracketRow::Flagged { ell, error: e.to_string() },
        });
    }
    let text = match args.out.format {
        Format::Json => pretty(&Value::Array(rows.iter().map(BracketRow::to_json).collect())),
        Format::Csv => output::brackets_csv(&rows),
    };
    emit(&args.out, text)
}

fn cmd_fit(args: &FitArgs) -> Result<(), Failure> {
    check_orders(1, args.q_order)?;
    let (series, source) = match (&args.ell, &args.series_file) {
        (Some(s), None) => {
            let ell = parse_ell(s)?;
            (gw_extract(&ell, args.q_order)?.normalized, json!({"ell": ell}))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::input("parse", e.to_string()))?;
            (QSeries::from_json(&v)?, json!({"file": path.display().to_string()}))
        }
        _ => return Err(Failure::input("invalid", "give exactly one of --ell or --series-file")),
    };
    let v = match quasimodular_fit(&series, args.max_weight)? {
        Some(fit) => json!({"source": source, "fit": fit.to_json()}),
        None => json!({"source": source, "fit": null, "message": format!("no weight ≤ {} fits", args.max_weight)}),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(pretty(&v).as_bytes());
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(s) = std::env::var("GWELL_THREADS") {
        let n: usize = s.trim().parse().map_err(|_| Failure::input("invalid", format!("GWELL_THREADS={s:?} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::input("invalid", e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            println!("{}", json!({"error": "usage", "message": e.to_string().trim()}));
            return ExitCode::from(2);
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Npoint(a) => cmd_npoint(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gw(a) => cmd_gw(a),
        Command::Fit(a) => cmd_fit(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            println!("{}", f.value);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.3+0.8i").ok(), Some(Complex64::new(0.3, 0.8)));
        assert_eq!(parse_complex("1.2i").ok(), Some(Complex64::new(0.0, 1.2)));
        assert_eq!(parse_complex("-0.5-i").ok(), Some(Complex64::new(-0.5, -1.0)));
        assert_eq!(parse_complex("1e-1+2i").ok(), Some(Complex64::new(0.1, 2.0)));
        assert!(parse_complex("x+i").is_err());
    }

    #[test]
    fn ell_parsing() {
        assert_eq!(parse_ell("1,-2, 0").ok(), Some(vec![1, -2, 0]));
        assert!(parse_ell("a").is_err());
    }
}
