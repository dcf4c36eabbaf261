use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chaincode::code::{enumerate_codes, generators_json, CodeDesc, CodeJson, CodeParams};
use chaincode::specialize::{
    closed_dual, fmt_dual, fmt_gens, fmt_r, listing_params, normal_form, special_rows, table_record, write_table_csv,
    DualConsts, LISTING_NOTE, TABLE_HEADER,
};
use chaincode::verify::{params_label, verify_params, VerifyOptions};
use chaincode::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Constacyclic codes over F_{p^m}[u]/<u^{2 lambda}>.
#[derive(Parser, Debug)]
#[command(name = "chaincode", version)]
struct Cli {
    #[command(flatten)]
    params: ParamArgs,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Stop after this many rows.
    #[arg(long, global = true)]
    max_rows: Option<usize>,

    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "CHAINCODE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, global = true, default_value_t = 3)]
    p: u64,
    #[arg(long, global = true, default_value_t = 1)]
    m: usize,
    #[arg(long, global = true, default_value_t = 1)]
    n: usize,
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,
    #[arg(long, global = true, default_value_t = 2)]
    lambda: usize,
    /// Coefficient list of delta in the field basis, e.g. `1,2` for 1+2y.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    delta: Vec<i64>,
    #[arg(long, global = true, value_delimiter = ',', default_value = "1", allow_negative_numbers = true)]
    alpha: Vec<i64>,
    /// Seed for factorization and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameter summary: factors, counts and ring constants.
    Info,
    /// Every code as one JSON descriptor per line.
    Enumerate,
    /// Generator matrices of the code in a descriptor file.
    Build { input: PathBuf },
    /// Generator matrices of the dual of the code in a descriptor file.
    Dual { input: PathBuf },
    /// Invariant suites; exits 1 if any check fails.
    Verify {
        /// Also run explicit-set checks (guarded by ambient size).
        #[arg(long)]
        brute_force: bool,
        /// Random pairs for the ring-map checks.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Check at most this many codes (seeded sample beyond that).
        #[arg(long, default_value_t = 5000)]
        max_codes: usize,
    },
    /// The worked listing of all codes at p = 5, lambda = 2, delta = 2, alpha = 3.
    Table5,
}

enum Failure {
    Invariant(String),
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TooLarge(_) => Failure::Guard(e.to_string()),
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Out = BufWriter<Box<dyn Write>>;

fn open_out(path: &Option<PathBuf>) -> Result<Out, Failure> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(fs::File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    Ok(BufWriter::new(sink))
}

fn build_params(a: &ParamArgs) -> Result<CodeParams, Failure> {
    Ok(CodeParams::from_ints(a.p, a.m, a.n, a.k, a.lambda, &a.delta, &a.alpha, a.seed)?)
}

fn read_code(path: &PathBuf, seed: u64) -> Result<(CodeParams, CodeDesc), Failure> {
    let text = fs::read_to_string(path)?;
    let json: CodeJson = serde_json::from_str(&text)?;
    let params = json.params.build(seed)?;
    let desc = CodeDesc::from_json(&params, &json)?;
    Ok((params, desc))
}

fn write_json(out: &mut Out, v: &Value, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(v)?)?,
        _ => writeln!(out, "{}", serde_json::to_string_pretty(v)?)?,
    }
    Ok(())
}

fn info(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let params = build_params(&cli.params)?;
    let fq = &params.fq;
    let (n1, n2) = params.count_by_generators();
    let mut v = json!({
        "params": params.params_json(),
        "length": params.len(),
        "delta0": fq.to_coeffs(params.delta0),
        "gamma": fmt_r(fq, params.ambient.gamma()),
        "gamma_inv": fmt_r(fq, params.ambient.gamma_inv()),
        "factors": params.factors.iter().map(|f| f.serialize_with(fq)).collect::<Vec<_>>(),
        "r": params.r(),
        "codes": params.count_codes().to_string(),
        "one_generator": n1.to_string(),
        "two_generator": n2.to_string(),
    });
    if params.r() == 1 && params.n == 1 {
        let c = DualConsts::new(&params)?;
        v["theta"] = json!(fmt_r(fq, &c.theta));
        v["theta_inv"] = json!(fmt_r(fq, &c.theta_inv));
    }
    write_json(out, &v, cli.format)
}

fn enumerate(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let params = build_params(&cli.params)?;
    let limit = cli.max_rows.unwrap_or(usize::MAX);
    for d in enumerate_codes(&params).take(limit) {
        writeln!(out, "{}", serde_json::to_string(&d.to_json(&params))?)?;
    }
    Ok(())
}

fn build(cli: &Cli, input: &PathBuf, out: &mut Out) -> Result<(), Failure> {
    let (params, desc) = read_code(input, cli.params.seed)?;
    let gens = desc.build(&params)?;
    let mut v = json!({
        "code": desc.to_json(&params),
        "size_log_p": desc.size_logp(&params)?,
        "generators": generators_json(&params.ambient, &gens),
    });
    if params.r() == 1 {
        v["normal_form"] = json!(fmt_gens(&params.fq, &normal_form(&params, &desc)?));
    }
    write_json(out, &v, cli.format)
}

fn dual(cli: &Cli, input: &PathBuf, out: &mut Out) -> Result<(), Failure> {
    let (params, desc) = read_code(input, cli.params.seed)?;
    let ann = desc.annihilator(&params)?;
    let gens = desc.dual_generators(&params)?;
    let fq = &params.fq;
    let mut v = json!({
        "code": desc.to_json(&params),
        "annihilator": ann.to_json(&params),
        "ambient_unit": fmt_r(fq, params.ambient.gamma_inv()),
        "size_log_p": ann.size_logp(&params)?,
        "generators": generators_json(&params.ambient, &gens),
    });
    if params.r() == 1 && params.n == 1 {
        v["closed_form"] = json!(fmt_dual(fq, &closed_dual(&params, &desc)?));
    }
    write_json(out, &v, cli.format)
}

fn verify(cli: &Cli, opts: VerifyOptions, out: &mut Out) -> Result<(), Failure> {
    let params = build_params(&cli.params)?;
    let reports = verify_params(&params, &opts)?;
    for r in &reports {
        match cli.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string(r)?)?,
            _ => writeln!(
                out,
                "{} {}: expected {}, got {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.expected,
                r.got
            )?,
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(Failure::Invariant(format!("{failed} checks failed at {}", params_label(&params))));
    }
    Ok(())
}

fn table5(cli: &Cli, out: &mut Out) -> Result<(), Failure> {
    let params = listing_params()?;
    let mut rows = special_rows(&params)?;
    rows.truncate(cli.max_rows.unwrap_or(usize::MAX));
    match cli.format {
        Format::Json => {
            for r in &rows {
                let rec = table_record(&params, r);
                let obj: serde_json::Map<String, Value> =
                    TABLE_HEADER.iter().zip(rec).map(|(k, v)| (k.to_string(), json!(v))).collect();
                writeln!(out, "{}", Value::Object(obj))?;
            }
        }
        _ => write_table_csv(&mut *out, &params, &rows, Some(LISTING_NOTE))?,
    }
    let bad = rows.iter().filter(|r| !r.verified).count();
    if bad > 0 {
        return Err(Failure::Invariant(format!("{bad} rows failed verification")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| Failure::Input(e.to_string()))?;
    }
    let mut out = open_out(&cli.out)?;
    match &cli.command {
        Command::Info => info(cli, &mut out)?,
        Command::Enumerate => enumerate(cli, &mut out)?,
        Command::Build { input } => build(cli, input, &mut out)?,
        Command::Dual { input } => dual(cli, input, &mut out)?,
        Command::Verify { brute_force, samples, max_codes } => {
            let opts = VerifyOptions {
                samples: *samples,
                seed: cli.params.seed,
                max_codes: *max_codes,
                brute_force: *brute_force,
            };
            let res = verify(cli, opts, &mut out);
            out.flush()?;
            res?
        }
        Command::Table5 => {
            let res = table5(cli, &mut out);
            out.flush()?;
            res?
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
