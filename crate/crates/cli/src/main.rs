use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclotome::charsum::Engine;
use cyclotome::codes::{
    build_code, weight_dist_bruteforce, weight_dist_charsum, weight_dist_closed_form, CyclicCode,
    BRUTEFORCE_LIMIT,
};
use cyclotome::verify::{self, VerifyOptions};
use cyclotome::{Error, Exec, FieldCtx, FieldParams, WeightDist};

const EXIT_INVALID: u8 = 2;
const EXIT_DISAGREE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Six-weight cyclic codes C(p, m, k): fields, weight distributions and
/// verification of the published tables.
#[derive(Debug, Parser)]
#[command(name = "cyclotome", version)]
struct Cli {
    /// Worker threads for the parallel sweeps (default: available parallelism).
    #[arg(long, global = true, env = "CYCLOTOME_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the primitive polynomial, lambda and the minimal polynomials h0, h1, h2.
    Field {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the weight distribution.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Method::Charsum)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in verification checks.
    Verify {
        /// Seed for the sampled checks; verdicts do not depend on it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the (3,7,2) parameter set.
        #[arg(long)]
        skip_m7: bool,
    },
}

#[derive(Debug, Args)]
struct CodeArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u32,
    /// Primitive polynomial coefficients, constant term first, e.g. "1,2,0,1".
    #[arg(long, value_delimiter = ',')]
    prim_poly: Option<Vec<u32>>,
}

impl CodeArgs {
    fn field(&self) -> Result<FieldCtx, Error> {
        let mut params = FieldParams::new(self.p, self.m, self.k);
        if let Some(coeffs) = &self.prim_poly {
            params = params.with_prim_poly(coeffs.clone());
        }
        FieldCtx::new(&params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bruteforce,
    Charsum,
    Closedform,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    Lib(Error),
    Disagree(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let result = match &cli.command {
        Command::Field { code, format } => cmd_field(code, *format),
        Command::Weights {
            code,
            method,
            format,
            output,
        } => cmd_weights(code, *method, *format, output.as_ref()),
        Command::Verify { seed, skip_m7 } => cmd_verify(*seed, *skip_m7),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parameter_error() {
                EXIT_INVALID
            } else {
                EXIT_INTERNAL
            })
        }
        Err(Failure::Disagree(diff)) => {
            eprintln!("methods disagree: {diff}");
            ExitCode::from(EXIT_DISAGREE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: Option<usize>) {}

fn cmd_field(args: &CodeArgs, format: Format) -> Result<ExitCode, Failure> {
    let ctx = args.field()?;
    let half = ctx.half_exponent() as i64;
    let roots = [
        ("h0", "pi^-1", ctx.inv(ctx.pi()).unwrap()),
        ("h1", "(-pi)^-1", ctx.inv(ctx.neg(ctx.pi())).unwrap()),
        ("h2", "pi^(-(p^k+1)/2)", ctx.pi_pow(-half)),
    ];
    let polys = roots
        .iter()
        .map(|&(name, root, a)| ctx.minimal_poly(a).map(|f| (name, root, f)))
        .collect::<Result<Vec<_>, _>>()?;
    let distinct = polys[0].2 != polys[1].2 && polys[0].2 != polys[2].2 && polys[1].2 != polys[2].2;
    let full_degree = polys
        .iter()
        .all(|(_, _, f)| f.degree() == Some(ctx.m() as usize));

    match format {
        Format::Json => {
            let value = serde_json::json!({
                "p": ctx.p(),
                "m": ctx.m(),
                "k": ctx.k(),
                "prim_poly": ctx.prim_poly(),
                "lambda": ctx.lambda(),
                "h0": polys[0].2,
                "h1": polys[1].2,
                "h2": polys[2].2,
                "pairwise_distinct": distinct,
            });
            println!("{value}");
        }
        Format::Text | Format::Csv => {
            println!("field F_{}^{} (k = {})", ctx.p(), ctx.m(), ctx.k());
            println!("primitive polynomial: {}", ctx.prim_poly());
            println!("lambda: {}", ctx.lambda());
            for (name, root, f) in &polys {
                println!(
                    "{name} = minpoly({root}): {f}  (deg {})",
                    f.degree().unwrap_or(0)
                );
            }
            println!("pairwise distinct: {}", if distinct { "yes" } else { "no" });
        }
    }
    if !(distinct && full_degree) {
        return Err(Error::DegenerateCosets("minimal polynomials degenerate".into()).into());
    }
    Ok(ExitCode::SUCCESS)
}

fn compute(code: &CyclicCode, method: Method) -> Result<WeightDist, Error> {
    let exec = Exec::default();
    match method {
        Method::Bruteforce => weight_dist_bruteforce(code, exec),
        Method::Charsum => weight_dist_charsum(code, Engine::Auto, exec),
        Method::Closedform => weight_dist_closed_form(code),
        Method::All => unreachable!("expanded by the caller"),
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Bruteforce => "bruteforce",
        Method::Charsum => "charsum",
        Method::Closedform => "closedform",
        Method::All => "all",
    }
}

fn render(dist: &WeightDist, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", dist.to_json()),
        Format::Csv => dist.to_csv(),
        Format::Text => format!("[{}, {}] {}\n", dist.n, dist.dim, dist.enumerator()),
    }
}

fn cmd_weights(
    args: &CodeArgs,
    method: Method,
    format: Format,
    output: Option<&PathBuf>,
) -> Result<ExitCode, Failure> {
    let code = build_code(args.field()?)?;
    let codewords = (code.ctx().p() as u128).pow(3 * code.ctx().m());
    let methods: Vec<Method> = match method {
        Method::All if codewords <= BRUTEFORCE_LIMIT => {
            vec![Method::Bruteforce, Method::Charsum, Method::Closedform]
        }
        Method::All => {
            eprintln!(
                "note: {codewords} codewords exceed the enumeration limit; skipping bruteforce"
            );
            vec![Method::Charsum, Method::Closedform]
        }
        single => vec![single],
    };
    let mut results = Vec::new();
    for m in methods {
        results.push((m, compute(&code, m)?));
    }

    let first = &results[0].1;
    let mismatches: Vec<String> = results[1..]
        .iter()
        .filter_map(|(m, d)| {
            let diff = first.diff(d);
            (!diff.is_empty()).then(|| {
                format!(
                    "{} vs {}: {}",
                    method_name(results[0].0),
                    method_name(*m),
                    diff.join("; ")
                )
            })
        })
        .collect();
    let agree = mismatches.is_empty();

    let text = if results.len() == 1 {
        render(first, format)
    } else {
        match format {
            Format::Json => {
                let methods: Vec<serde_json::Value> = results
                    .iter()
                    .map(|(m, d)| {
                        let dist: serde_json::Value =
                            serde_json::from_str(&d.to_json()).expect("valid json");
                        serde_json::json!({ "method": method_name(*m), "distribution": dist })
                    })
                    .collect();
                let verdict = if agree { "OK" } else { "MISMATCH" };
                format!(
                    "{}\n",
                    serde_json::json!({ "methods": methods, "verdict": verdict })
                )
            }
            Format::Csv => render(first, format),
            Format::Text => {
                let mut out = String::new();
                for (m, d) in &results {
                    out.push_str(&format!("{}: {}", method_name(*m), render(d, Format::Text)));
                }
                out.push_str(&format!(
                    "verdict: {}\n",
                    if agree { "OK" } else { "MISMATCH" }
                ));
                out
            }
        }
    };
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    if !agree {
        return Err(Failure::Disagree(mismatches.join("\n")));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(seed: u64, skip_m7: bool) -> Result<ExitCode, Failure> {
    let opts = VerifyOptions {
        seed,
        exec: Exec::default(),
        include_m7: !skip_m7,
    };
    let report = verify::run(&opts);
    println!("{report}");
    Ok(if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INTERNAL)
    })
}
