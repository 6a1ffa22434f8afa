//! Command-line surface: classification queries, model reports, bound and
//! threshold evaluation, and lemma verification runs with JSON output.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kextremal::algebra::{parse_rational, Rational, Scalar};
use kextremal::identities::{run_all, TrialConfig};
use kextremal::isoparametric::{
    extremality_residual, solve_g2, solve_g3, solve_g4, solve_g6, Classification,
};
use kextremal::pinching::{
    c1, c1_prime, c2, c3, epsilon, verdict, EpsilonInputs, EpsilonVariant,
};
use kextremal::tensors::{catalog, PrincipalSpectrum};

#[derive(Parser)]
#[command(name = "kextremal", version, about = "Exact toolkit for k-extremal submanifold invariants")]
struct Cli {
    /// Output rendering; JSON is the contract, table is a view of it.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Product-torus queries.
    Ktori {
        #[command(subcommand)]
        command: KtoriCommand,
    },
    /// Isoparametric spectrum queries.
    Iso {
        #[command(subcommand)]
        command: IsoCommand,
    },
    /// Catalog model reports.
    Model {
        #[command(subcommand)]
        command: ModelCommand,
    },
    /// Evaluate the four pinching bounds.
    Bounds(BoundsArgs),
    /// Evaluate an integral-theorem threshold.
    Epsilon(EpsilonArgs),
    /// Randomized verification runs.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum KtoriCommand {
    /// Enumerate all admissible tori for (n, k).
    List {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: String,
    },
}

#[derive(Subcommand)]
enum IsoCommand {
    /// Classify the extremal spectra for a curvature count g.
    Classify {
        #[arg(long)]
        g: u32,
        /// Multiplicities: `m` for g in {3, 6}, `m1,m2` for g in {2, 4}.
        #[arg(long)]
        mult: String,
        #[arg(long)]
        k: String,
    },
    /// Extremality residual of an explicit spectrum `lambda:mult,...`.
    Residual {
        #[arg(long)]
        spectrum: String,
        #[arg(long)]
        k: String,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Full pinching report plus Euler-Lagrange residuals for a model tag.
    Check {
        /// One of: veronese, round-sphere:n,H, clifford:m,l, willmore:m,l,
        /// torus:n,m.
        #[arg(long)]
        model: String,
        #[arg(long)]
        k: String,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    k: String,
    #[arg(long = "H")]
    h: String,
    #[arg(long)]
    rho: String,
}

#[derive(Args)]
struct EpsilonArgs {
    /// One of: sec, sec-n, ricci, scal, scal-lowk.
    #[arg(long)]
    variant: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    k: String,
    #[arg(long = "H0")]
    h0: f64,
    #[arg(long)]
    delta0: f64,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run every lemma and identity suite; one JSON line per tag.
    Lemmas {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Defaults to the KEXTREMAL_SEED environment variable, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        p_max: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

enum CliError {
    /// Bad or out-of-domain parameters; named condition, exit 1.
    Param(String),
    /// Broken internal invariant; exit 2.
    Internal(String),
}

fn param<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Param(err.to_string())
}

fn parse_k(text: &str) -> Result<Rational, CliError> {
    let k = parse_rational(text).map_err(param)?;
    if k < Rational::from_integer(1.into()) {
        return Err(CliError::Param(format!(
            "exponent k must satisfy k >= 1 (got {text})"
        )));
    }
    Ok(k)
}

fn parse_scalar(text: &str) -> Result<Scalar, CliError> {
    text.parse::<Scalar>().map_err(param)
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: &Cli) -> Result<Vec<Value>, CliError> {
    match &cli.command {
        Command::Ktori { command: KtoriCommand::List { n, k } } => {
            let k = parse_k(k)?;
            let tori = kextremal::isoparametric::enumerate_tori(*n, &k);
            let records = tori
                .iter()
                .map(|t| {
                    let n_s = Scalar::from_int(*n as i64);
                    let slope = Scalar::from_rational(
                        Rational::from_integer((*n).into())
                            / (&k * Rational::from_integer(2.into()))
                            - Rational::from_integer(1.into()),
                    );
                    let identity_ok = t.rho_sq == &n_s + &n_s * slope * &t.h_sq
                        && extremality_residual(&t.spectrum, &k)
                            .map(|r| r.is_zero())
                            .unwrap_or(false);
                    Ok(json!({ "torus": to_value(t)?, "identity_ok": identity_ok }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(vec![json!({ "n": n, "count": records.len(), "tori": records })])
        }
        Command::Iso { command } => run_iso(command),
        Command::Model { command: ModelCommand::Check { model, k } } => {
            let k = parse_k(k)?;
            let model = build_model(model, &k)?;
            let report = verdict(&model, &k).map_err(param)?;
            let residuals = model.form().reduced_el_residual(&k).map_err(param)?;
            let extremal = residuals.iter().all(Scalar::is_zero);
            Ok(vec![json!({
                "report": to_value(&report)?,
                "el_residuals": to_value(&residuals)?,
                "extremal": extremal,
            })])
        }
        Command::Bounds(args) => {
            let k = parse_k(&args.k)?;
            let h = parse_scalar(&args.h)?;
            let rho = parse_scalar(&args.rho)?;
            let b1 = c1(args.n, args.p, &h, &rho, &k).map_err(param)?;
            let b1p = c1_prime(args.n, &h, &rho, &k).map_err(param)?;
            let b2 = if args.n >= 4 {
                Some(c2(args.n, &h, &rho, &k).map_err(param)?)
            } else {
                None
            };
            let b3 = c3(args.n, args.p, &h, &k).map_err(param)?;
            Ok(vec![json!({
                "inputs": { "n": args.n, "p": args.p, "k": args.k, "H": args.h, "rho": args.rho },
                "c1": to_value(&b1)?,
                "c1_prime": to_value(&b1p)?,
                "c2": to_value(&b2)?,
                "c3": to_value(&b3)?,
            })])
        }
        Command::Epsilon(args) => {
            let variant = match args.variant.as_str() {
                "sec" => EpsilonVariant::Sec,
                "sec-n" => EpsilonVariant::SecN,
                "ricci" => EpsilonVariant::Ricci,
                "scal" => EpsilonVariant::Scal,
                "scal-lowk" => EpsilonVariant::ScalLowk,
                other => {
                    return Err(CliError::Param(format!(
                        "unknown variant `{other}` (expected sec, sec-n, ricci, scal, scal-lowk)"
                    )))
                }
            };
            if args.h0 < 0.0 {
                return Err(CliError::Param(format!(
                    "H0 must be non-negative (got {})",
                    args.h0
                )));
            }
            let report = epsilon(&EpsilonInputs {
                variant,
                n: args.n,
                p: args.p,
                k: parse_k(&args.k)?,
                h0_sq: args.h0 * args.h0,
                delta0: args.delta0,
            })
            .map_err(param)?;
            Ok(vec![to_value(&report)?])
        }
        Command::Verify { command: VerifyCommand::Lemmas { trials, seed, n_max, p_max, tolerance } } => {
            if *trials == 0 {
                return Err(CliError::Param("trials must be at least 1".into()));
            }
            let seed = seed
                .or_else(|| {
                    std::env::var("KEXTREMAL_SEED")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(0);
            let config = TrialConfig {
                trials: *trials,
                n_max: (*n_max).max(2),
                p_max: (*p_max).max(1),
                seed,
                entry_bound: 1.0,
                tolerance: *tolerance,
            };
            let reports = run_all(&config);
            if reports.iter().any(|r| !r.pass) {
                // Violated inequality means a broken internal invariant.
                let lines = reports
                    .iter()
                    .map(to_value)
                    .collect::<Result<Vec<_>, _>>()?;
                for line in &lines {
                    println!("{line}");
                }
                return Err(CliError::Internal("lemma suite reported a violation".into()));
            }
            reports.iter().map(to_value).collect()
        }
    }
}

fn run_iso(command: &IsoCommand) -> Result<Vec<Value>, CliError> {
    match command {
        IsoCommand::Classify { g, mult, k } => {
            let k = parse_k(k)?;
            let mults: Vec<u32> = mult
                .split(',')
                .map(|m| m.trim().parse().map_err(param))
                .collect::<Result<_, _>>()?;
            match (g, mults.as_slice()) {
                (2, [m1, m2]) => {
                    let torus = solve_g2(m1 + m2, *m1, &k).map_err(param)?;
                    let minimal = torus.spectrum.curvature_sum().is_zero();
                    Ok(vec![json!({ "g": 2, "torus": to_value(&torus)?, "minimal": minimal })])
                }
                (3, [m]) => classification_value(3, solve_g3(*m, &k).map_err(param)?),
                (4, [m1, m2]) => {
                    let outcome = solve_g4(*m1, *m2, &k).map_err(param)?;
                    Ok(vec![json!({ "g": 4, "outcome": to_value(&outcome)? })])
                }
                (6, [m]) => classification_value(6, solve_g6(*m, &k).map_err(param)?),
                (g, _) => Err(CliError::Param(format!(
                    "g={g} with {} multiplicities is not a supported query",
                    mults.len()
                ))),
            }
        }
        IsoCommand::Residual { spectrum, k } => {
            let k = parse_k(k)?;
            let entries = spectrum
                .split(',')
                .map(|pair| {
                    let (lambda, mult) = pair
                        .rsplit_once(':')
                        .ok_or_else(|| CliError::Param(format!("bad entry `{pair}`, expected lambda:mult")))?;
                    Ok((parse_scalar(lambda.trim())?, mult.trim().parse::<u32>().map_err(param)?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let spectrum = PrincipalSpectrum::new(entries);
            let residual = extremality_residual(&spectrum, &k).map_err(param)?;
            Ok(vec![json!({
                "spectrum": to_value(&spectrum)?,
                "residual": to_value(&residual)?,
                "extremal": residual.is_zero(),
            })])
        }
    }
}

fn classification_value(g: u32, classification: Classification) -> Result<Vec<Value>, CliError> {
    let minimal = match &classification {
        Classification::Unique(iso) => Some(iso.spectrum.curvature_sum().is_zero()),
        Classification::AllExtremal { .. } => None,
    };
    Ok(vec![json!({
        "g": g,
        "classification": to_value(&classification)?,
        "minimal": minimal,
    })])
}

fn build_model(
    tag: &str,
    k: &Rational,
) -> Result<kextremal::tensors::ModelSubmanifold, CliError> {
    catalog::from_tag(tag, k).map_err(param)
}

fn render_table(value: &Value, prefix: &str, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                render_table(v, &path, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                render_table(v, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push(format!("{prefix} = {other}")),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match run(&cli) {
        Ok(records) => {
            for record in records {
                match cli.format {
                    Format::Json => println!("{record}"),
                    Format::Table => {
                        let mut lines = Vec::new();
                        render_table(&record, "", &mut lines);
                        for line in lines {
                            println!("{line}");
                        }
                    }
                }
            }
        }
        Err(CliError::Param(message)) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            std::process::exit(2);
        }
    }
}
