use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use divfield_core::axioms::{check_root_bijectivity, check_torsion_free, check_vector_space_axioms, AxiomReport};
use divfield_core::finfield::{prime_power_scan, DEFAULT_SCAN_BOUND, MAX_SCAN};
use divfield_core::puiseux::DEFAULT_DEN_CAP;
use divfield_core::{
    compose, format_element, format_unit, parse_element, parse_rational, parse_unit, Context, Rational,
};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

/// Arithmetic in the unit group of the Puiseux field over F2, with
/// self-checks of its vector-space structure.
#[derive(Parser, Debug)]
#[command(name = "divfield", version)]
struct Cli {
    /// Largest grid denominator an operation may create.
    #[arg(long, global = true, default_value_t = DEFAULT_DEN_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    den_cap: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON object per line.
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of two elements.
    Mul { a: String, b: String },
    /// Multiplicative inverse.
    Inv { a: String },
    /// Integer power; the exponent may be negative.
    Pow {
        a: String,
        #[arg(allow_negative_numbers = true)]
        e: BigInt,
    },
    /// The unique k-th root with residue 1.
    Root { a: String, k: u64 },
    /// The rational scalar action a^(p/q).
    ScalarMul {
        #[arg(allow_hyphen_values = true)]
        r: String,
        a: String,
    },
    /// Split an element into valuation and unit.
    Decompose { a: String },
    /// Build x^alpha * u.
    Compose {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        u: String,
    },
    /// Vector-space laws on random elements.
    Axioms {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value = "64", allow_hyphen_values = true)]
        aprec: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(i64).range(1..))]
        scalar_bound: i64,
    },
    /// u^n != 1 for random units u and 1 <= n <= nmax.
    Torsion {
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long, default_value_t = 64)]
        nmax: u64,
        #[arg(long, default_value = "64", allow_hyphen_values = true)]
        aprec: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// k-th roots invert k-th powers for 1 <= k <= kmax.
    Bijectivity {
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 16)]
        kmax: u64,
        #[arg(long, default_value = "64", allow_hyphen_values = true)]
        aprec: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// For every prime power q, is F_q^× a vector space?
    FqScan {
        #[arg(long, default_value_t = DEFAULT_SCAN_BOUND)]
        max: u64,
        /// Also decide each q from the group itself.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Serialize)]
struct Record<'a> {
    op: &'a str,
    input: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Everything a command prints, produced in full before anything is written.
struct Done {
    text: String,
    records: Vec<String>,
    ok: bool,
}

impl Done {
    fn single(op: &str, input: Value, text: String, output: Value) -> Done {
        let record = Record { op, input, output: Some(output), error: None };
        Done { text, records: vec![serde_json::to_string(&record).unwrap()], ok: true }
    }
}

fn op_name(command: &Command) -> &'static str {
    match command {
        Command::Mul { .. } => "mul",
        Command::Inv { .. } => "inv",
        Command::Pow { .. } => "pow",
        Command::Root { .. } => "root",
        Command::ScalarMul { .. } => "scalar-mul",
        Command::Decompose { .. } => "decompose",
        Command::Compose { .. } => "compose",
        Command::Axioms { .. } => "axioms",
        Command::Torsion { .. } => "torsion",
        Command::Bijectivity { .. } => "bijectivity",
        Command::FqScan { .. } => "fq-scan",
    }
}

fn input_of(command: &Command) -> Value {
    match command {
        Command::Mul { a, b } => json!([a, b]),
        Command::Inv { a } | Command::Decompose { a } => json!([a]),
        Command::Pow { a, e } => json!([a, e.to_string()]),
        Command::Root { a, k } => json!([a, k]),
        Command::ScalarMul { r, a } => json!([r, a]),
        Command::Compose { alpha, u } => json!([alpha, u]),
        Command::Axioms { samples, aprec, seed, scalar_bound } => {
            json!({"samples": samples, "aprec": aprec, "seed": seed, "scalar_bound": scalar_bound})
        }
        Command::Torsion { samples, nmax, aprec, seed } => {
            json!({"samples": samples, "nmax": nmax, "aprec": aprec, "seed": seed})
        }
        Command::Bijectivity { samples, kmax, aprec, seed } => {
            json!({"samples": samples, "kmax": kmax, "aprec": aprec, "seed": seed})
        }
        Command::FqScan { max, oracle } => json!({"max": max, "oracle": oracle}),
    }
}

fn positive_precision(s: &str) -> Result<Rational, String> {
    let p = parse_rational(s).map_err(|e| format!("--aprec: {e}"))?;
    if p <= Rational::from_integer(0.into()) {
        return Err(format!("--aprec must be positive, got {p}"));
    }
    Ok(p)
}

fn positive_samples(n: u64) -> Result<u64, String> {
    if n == 0 {
        return Err("--samples must be positive".into());
    }
    Ok(n)
}

fn element_result(op: &str, input: Value, a: divfield_core::L0Element) -> Done {
    let text = format_element(&a);
    Done::single(op, input, text.clone(), json!(text))
}

fn report_result(input: Value, report: AxiomReport) -> Done {
    let record = Record { op: report.check, input, output: Some(serde_json::to_value(&report).unwrap()), error: None };
    Done {
        text: report.to_string(),
        records: vec![serde_json::to_string(&record).unwrap()],
        ok: report.failures() == 0,
    }
}

fn run(cli: &Cli) -> Result<Done, String> {
    let ctx = Context::new(cli.den_cap);
    let op = op_name(&cli.command);
    let input = input_of(&cli.command);
    let elem = |s: &str| parse_element(s).map_err(|e| format!("cannot parse {s:?}: {e}"));
    let err = |e: divfield_core::Error| e.to_string();
    Ok(match &cli.command {
        Command::Mul { a, b } => element_result(op, input, ctx.element_mul(&elem(a)?, &elem(b)?).map_err(err)?),
        Command::Inv { a } => element_result(op, input, elem(a)?.inv()),
        Command::Pow { a, e } => element_result(op, input, elem(a)?.pow(e)),
        Command::Root { a, k } => {
            if *k == 0 {
                return Err("root index must be positive".into());
            }
            element_result(op, input, ctx.element_root(&elem(a)?, *k).map_err(err)?)
        }
        Command::ScalarMul { r, a } => {
            let r = parse_rational(r).map_err(|e| format!("cannot parse scalar {r:?}: {e}"))?;
            element_result(op, input, ctx.element_scalar_mul(&r, &elem(a)?).map_err(err)?)
        }
        Command::Compose { alpha, u } => {
            let alpha = parse_rational(alpha).map_err(|e| format!("cannot parse exponent {alpha:?}: {e}"))?;
            let u = parse_unit(u).map_err(|e| format!("cannot parse unit {u:?}: {e}"))?;
            element_result(op, input, compose(alpha, u))
        }
        Command::Decompose { a } => {
            let a = elem(a)?;
            let (val, unit) = (a.val().to_string(), format_unit(a.unit()));
            let text = format!("val: {val}\nunit: {unit}");
            Done::single(op, input, text, json!({"val": val, "unit": unit}))
        }
        Command::Axioms { samples, aprec, seed, scalar_bound } => {
            let aprec = positive_precision(aprec)?;
            let report = check_vector_space_axioms(&ctx, positive_samples(*samples)?, &aprec, *seed, *scalar_bound);
            report_result(input, report)
        }
        Command::Torsion { samples, nmax, aprec, seed } => {
            let aprec = positive_precision(aprec)?;
            if *nmax < 2 {
                return Err("--nmax must be at least 2".into());
            }
            report_result(input, check_torsion_free(&ctx, positive_samples(*samples)?, *nmax, &aprec, *seed))
        }
        Command::Bijectivity { samples, kmax, aprec, seed } => {
            let aprec = positive_precision(aprec)?;
            if *kmax == 0 {
                return Err("--kmax must be positive".into());
            }
            report_result(input, check_root_bijectivity(&ctx, positive_samples(*samples)?, *kmax, &aprec, *seed))
        }
        Command::FqScan { max, oracle } => {
            if *oracle && *max > DEFAULT_SCAN_BOUND {
                return Err(format!("--oracle supports --max up to {DEFAULT_SCAN_BOUND}"));
            }
            if *max > MAX_SCAN {
                return Err(format!("--max is limited to {MAX_SCAN}"));
            }
            fq_scan(*max, *oracle)?
        }
    })
}

fn fq_scan(max: u64, oracle: bool) -> Result<Done, String> {
    let rows = prime_power_scan(max, oracle).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let width = max.to_string().len().max(1);
    let mut header = format!("{:>width$}  {:>7}  {:>2}  {:<24}", "q", "p", "n", "theorem");
    if oracle {
        header.push_str("  oracle");
    }
    text.push_str(header.trim_end());
    text.push('\n');
    let mut records = Vec::with_capacity(rows.len());
    for row in &rows {
        let q = row.q;
        let mut line = format!("{:>width$}  {:>7}  {:>2}  {:<24}", q.q(), q.p(), q.n(), row.theorem.to_string());
        if let Some(o) = &row.oracle {
            let _ = write!(line, "  {o}");
            if !row.agrees() {
                line.push_str("  MISMATCH");
            }
        }
        text.push_str(line.trim_end());
        text.push('\n');
        let mut output = json!({"p": q.p(), "n": q.n(), "theorem": row.theorem});
        if let Some(o) = &row.oracle {
            output["oracle"] = json!(o);
            output["agree"] = json!(row.agrees());
        }
        let record = Record { op: "fq-scan", input: json!({"q": q.q()}), output: Some(output), error: None };
        records.push(serde_json::to_string(&record).unwrap());
    }
    let yes: Vec<String> = rows.iter().filter(|r| r.theorem.is_yes()).map(|r| r.q.q().to_string()).collect();
    let disagreements = rows.iter().filter(|r| !r.agrees()).count();
    let _ = write!(text, "{} prime powers up to {max}; yes for q in {{{}}}", rows.len(), yes.join(", "));
    if oracle {
        let _ = write!(text, "; oracle disagreements: {disagreements}");
    }
    Ok(Done { text, records, ok: disagreements == 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            eprintln!(
                "divfield: {}",
                rendered.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ")
            );
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(done) => {
            match cli.format {
                Format::Text => println!("{}", done.text),
                Format::Records => {
                    let mut out = done.records.join("\n");
                    out.push('\n');
                    print!("{out}");
                }
            }
            if done.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            let op = op_name(&cli.command);
            if cli.format == Format::Records {
                let record = Record { op, input: input_of(&cli.command), output: None, error: Some(message.clone()) };
                println!("{}", serde_json::to_string(&record).unwrap());
            }
            eprintln!("divfield {op}: {message}");
            ExitCode::from(2)
        }
    }
}
