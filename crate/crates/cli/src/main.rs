//! Command-line front end: quiver/dimension input, method selection,
//! identity checks, and machine-readable output.
//!
//! Exit codes: 0 success (all checks pass), 1 malformed input, 2 internal
//! mismatch or failed check, 3 budget exceeded.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use nullmotive::dt::{dt_invariants, dt_round_trip, nullcone_dt_check};
use nullmotive::fq::{count_nilpotent_fq, eval_equals_count, search_space};
use nullmotive::hesselink::{
    coweight_from_stratum, enumerate_strata, hesselink_motive, phi, stratum_contribution,
    SemistableCalculator,
};
use nullmotive::nullcone::{
    leading_term_symmetric, motive_resolved, reference, NullconeCalculator,
};
use nullmotive::quiver::dim_vector_from_json;
use nullmotive::series::{dim_vectors_up_to, generating_identity_holds};
use nullmotive::{DimVector, Error, LaurentPoly, Quiver};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_MISMATCH: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "nullmotive",
    version,
    about = "Motives of nullcones of quiver representations"
)]
struct Cli {
    /// Cap the rayon worker count.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the nullcone motive [N_d].
    Motive(MotiveArgs),
    /// Emit the Hesselink stratum table for (quiver, d).
    Strata(StrataArgs),
    /// Run an identity check suite at truncation D.
    Check(CheckArgs),
    /// Emit motivic DT invariants up to total dimension D.
    Dt(DtArgs),
    /// Brute-force nilpotent count over F_q against the polynomial value.
    Oracle(OracleArgs),
    /// Write the m-loop reference polynomials as JSON fixtures.
    SeedFixtures(SeedArgs),
}

#[derive(Args)]
struct QuiverInput {
    /// Path to a quiver JSON file: {"vertices":["i"],"arrows":[["i","i",1]]}.
    #[arg(long)]
    quiver: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Resolved,
    Hesselink,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct MotiveArgs {
    #[command(flatten)]
    quiver: QuiverInput,
    /// Dimension vector as JSON, e.g. '{"v":2}'.
    #[arg(long)]
    dim: String,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Compute by all three methods and fail on any disagreement.
    #[arg(long)]
    cross_check: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct StrataArgs {
    #[command(flatten)]
    quiver: QuiverInput,
    #[arg(long)]
    dim: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// Generating-function identity: nullcone series x Pochhammer-inverse = 1.
    Gfi,
    /// Ordered star-product wall-crossing identity.
    Wallcross,
    /// DT extraction round trip and the nullcone-DT identity.
    Dt,
    /// Leading term of the nullcone motive on symmetric input.
    Leading,
    /// Finite-field point counts against polynomial evaluation.
    Oracle,
    /// Everything applicable to the given quiver.
    All,
}

#[derive(Args)]
struct CheckArgs {
    /// Which identity to check.
    kind: CheckKind,
    #[command(flatten)]
    quiver: QuiverInput,
    /// Truncation bound (total dimension).
    #[arg(short = 'D', long, default_value_t = 3)]
    bound: u32,
    /// Prime for the oracle check.
    #[arg(short = 'q', long, default_value_t = 2)]
    prime: u32,
    /// Search-space budget for the oracle check.
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args)]
struct DtArgs {
    #[command(flatten)]
    quiver: QuiverInput,
    #[arg(short = 'D', long, default_value_t = 3)]
    bound: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    quiver: QuiverInput,
    #[arg(long)]
    dim: String,
    #[arg(short = 'q', long)]
    prime: u32,
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args)]
struct SeedArgs {
    /// Output directory for the fixture files.
    #[arg(long, default_value = "fixtures")]
    out: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            classify(&e)
        }
    };
    std::process::exit(code);
}

fn classify(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_, _) => EXIT_BUDGET,
        Error::Parse(_) | Error::InvalidQuiver(_) | Error::VertexMismatch(_) => EXIT_INPUT,
        _ => EXIT_MISMATCH,
    }
}

fn run(cmd: Command) -> Result<i32, Error> {
    match cmd {
        Command::Motive(args) => cmd_motive(args),
        Command::Strata(args) => cmd_strata(args),
        Command::Check(args) => cmd_check(args),
        Command::Dt(args) => cmd_dt(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::SeedFixtures(args) => cmd_seed(args),
    }
}

fn load_quiver(path: &Path) -> Result<Quiver, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Quiver::from_json(&value)
}

fn parse_dim(quiver: &Quiver, text: &str) -> Result<DimVector, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("--dim: {e}")))?;
    dim_vector_from_json(quiver, &value)
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("NULLMOTIVE_CACHE_DIR").map(PathBuf::from)
}

fn cache_path(quiver: &Quiver) -> Option<PathBuf> {
    cache_dir().map(|dir| dir.join(format!("{:016x}.json", quiver.content_key())))
}

fn load_cache(calc: &NullconeCalculator) {
    let Some(path) = cache_path(calc.quiver()) else {
        return;
    };
    let Ok(text) = std::fs::read_to_string(&path) else {
        return;
    };
    let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) else {
        return;
    };
    let Some(rows) = value.as_array() else {
        return;
    };
    let mut entries = Vec::new();
    for row in rows {
        let (Some(dims), Some(terms)) = (row.get("d"), row.get("motive")) else {
            continue;
        };
        let Ok(dims) = serde_json::from_value::<Vec<u32>>(dims.clone()) else {
            continue;
        };
        let Ok(poly) = LaurentPoly::from_json_terms(terms) else {
            continue;
        };
        entries.push((DimVector::new(dims), poly));
    }
    calc.preload(entries);
}

fn store_cache(calc: &NullconeCalculator) {
    let Some(dir) = cache_dir() else {
        return;
    };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let Some(path) = cache_path(calc.quiver()) else {
        return;
    };
    let rows: Vec<serde_json::Value> = calc
        .memo_snapshot()
        .into_iter()
        .map(|(d, p)| serde_json::json!({ "d": d.entries(), "motive": p.to_json_terms() }))
        .collect();
    let _ = std::fs::write(path, serde_json::Value::Array(rows).to_string());
}

fn render_poly(p: &LaurentPoly, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Json => p.to_json_terms().to_string(),
        Format::Latex => p.to_latex(),
    }
}

fn cmd_motive(args: MotiveArgs) -> Result<i32, Error> {
    let quiver = load_quiver(&args.quiver.quiver)?;
    let d = parse_dim(&quiver, &args.dim)?;
    let calc = NullconeCalculator::new(quiver.clone());
    load_cache(&calc);
    let compute = |method: Method| -> Result<LaurentPoly, Error> {
        match method {
            Method::Recursive | Method::Auto => Ok(calc.motive_recursive(&d)),
            Method::Resolved => Ok(motive_resolved(&quiver, &d)),
            Method::Hesselink => hesselink_motive(&quiver, &d),
        }
    };
    let result = compute(args.method)?;
    if args.cross_check {
        for method in [Method::Recursive, Method::Resolved, Method::Hesselink] {
            let other = compute(method)?;
            if other != result {
                eprintln!("cross-check mismatch: {other} vs {result}");
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    store_cache(&calc);
    println!("{}", render_poly(&result, args.format));
    Ok(EXIT_OK)
}

fn cmd_strata(args: StrataArgs) -> Result<i32, Error> {
    let quiver = load_quiver(&args.quiver.quiver)?;
    let d = parse_dim(&quiver, &args.dim)?;
    let strata = enumerate_strata(&quiver, &d);
    let calc = SemistableCalculator::new(quiver.clone());
    let mut rows = Vec::new();
    for st in &strata {
        let cw = coweight_from_stratum(&quiver, st);
        let coweight: Vec<Vec<String>> = cw
            .per_vertex()
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        let parts: Vec<serde_json::Value> = st
            .parts()
            .iter()
            .map(|(mu, e)| {
                let dims: Vec<serde_json::Value> = e
                    .entries()
                    .map(|((a, i), m)| serde_json::json!([quiver.vertex_ids()[i], a, m]))
                    .collect();
                serde_json::json!({ "mu": mu.to_string(), "dims": dims })
            })
            .collect();
        let mut sst = nullmotive::MotiveRat::one();
        for (_, e) in st.parts() {
            sst = sst.mul(&calc.semistable_locus(e));
        }
        rows.push(serde_json::json!({
            "coweight": coweight,
            "parts": parts,
            "phi": phi(&quiver, st),
            "sst_motive": sst.to_json(),
            "contribution": stratum_contribution(&quiver, &calc, st).to_json(),
        }));
    }
    match args.format {
        Format::Json => println!("{}", serde_json::Value::Array(rows)),
        _ => {
            for row in rows {
                println!("{row}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn check_report(name: &str, quiver_path: &Path, bound: u32, pass: bool) -> serde_json::Value {
    serde_json::json!({
        "check": name,
        "quiver": quiver_path.display().to_string(),
        "D": bound,
        "pass": pass,
    })
}

fn cmd_check(args: CheckArgs) -> Result<i32, Error> {
    let quiver = load_quiver(&args.quiver.quiver)?;
    let calc = NullconeCalculator::new(quiver.clone());
    let mut all_pass = true;
    let push = |r: serde_json::Value, pass: bool, all_pass: &mut bool| {
        println!("{r}");
        *all_pass &= pass;
    };
    let kinds: Vec<CheckKind> = match args.kind {
        CheckKind::All => vec![
            CheckKind::Gfi,
            CheckKind::Wallcross,
            CheckKind::Dt,
            CheckKind::Leading,
            CheckKind::Oracle,
        ],
        k => vec![k],
    };
    for kind in kinds {
        match kind {
            CheckKind::Gfi => {
                let pass = generating_identity_holds(&calc, args.bound);
                push(
                    check_report("gfi", &args.quiver.quiver, args.bound, pass),
                    pass,
                    &mut all_pass,
                );
            }
            CheckKind::Wallcross => {
                let pass = nullmotive::hesselink::wall_crossing_check(&quiver, args.bound);
                push(
                    check_report("wallcross", &args.quiver.quiver, args.bound, pass),
                    pass,
                    &mut all_pass,
                );
            }
            CheckKind::Dt => {
                if !quiver.is_symmetric() {
                    if args.kind != CheckKind::All {
                        return Err(Error::NotSymmetric);
                    }
                    continue;
                }
                let pass = dt_round_trip(&quiver, args.bound)?
                    && nullcone_dt_check(&quiver, args.bound)?
                    && dt_invariants(&quiver, args.bound)?.all_nonnegative_in_minus_w();
                push(
                    check_report("dt", &args.quiver.quiver, args.bound, pass),
                    pass,
                    &mut all_pass,
                );
            }
            CheckKind::Leading => {
                if !quiver.is_symmetric() {
                    if args.kind != CheckKind::All {
                        return Err(Error::NotSymmetric);
                    }
                    continue;
                }
                let mut pass = true;
                for d in dim_vectors_up_to(quiver.vertex_count(), args.bound) {
                    if d.is_zero() {
                        continue;
                    }
                    // the closed form needs loops wherever d_i >= 2
                    let applicable =
                        (0..quiver.vertex_count()).all(|i| d[i] < 2 || quiver.arrow_mult(i, i) > 0);
                    if !applicable {
                        continue;
                    }
                    let (coeff, exp) = leading_term_symmetric(&quiver, &d)?;
                    let p = calc.motive_recursive(&d);
                    pass &= p.degree() == Some(exp)
                        && p.leading_coeff()
                            .map(|c| c.magnitude() == &coeff)
                            .unwrap_or(false);
                }
                push(
                    check_report("leading", &args.quiver.quiver, args.bound, pass),
                    pass,
                    &mut all_pass,
                );
            }
            CheckKind::Oracle => {
                let mut pass = true;
                let mut checked = false;
                for d in dim_vectors_up_to(quiver.vertex_count(), args.bound) {
                    if d.is_zero() {
                        continue;
                    }
                    let budget = args.budget.unwrap_or(nullmotive::fq::DEFAULT_BUDGET);
                    if search_space(&quiver, &d, args.prime) > budget {
                        continue;
                    }
                    checked = true;
                    let count = count_nilpotent_fq(&quiver, &d, args.prime, args.budget)?;
                    pass &= eval_equals_count(&calc.motive_recursive(&d), args.prime, count);
                }
                pass &= checked;
                push(
                    check_report("oracle", &args.quiver.quiver, args.bound, pass),
                    pass,
                    &mut all_pass,
                );
            }
            CheckKind::All => unreachable!(),
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_dt(args: DtArgs) -> Result<i32, Error> {
    let quiver = load_quiver(&args.quiver.quiver)?;
    let dt = dt_invariants(&quiver, args.bound)?;
    match args.format {
        Format::Json => println!("{}", dt.to_json(&quiver)),
        _ => {
            for (d, p) in &dt.invariants {
                println!("DT_{} = {}", d, p);
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(args: OracleArgs) -> Result<i32, Error> {
    let quiver = load_quiver(&args.quiver.quiver)?;
    let d = parse_dim(&quiver, &args.dim)?;
    let count = count_nilpotent_fq(&quiver, &d, args.prime, args.budget)?;
    let calc = NullconeCalculator::new(quiver.clone());
    let motive = calc.motive_recursive(&d);
    let value = motive.eval(args.prime);
    let matches = eval_equals_count(&motive, args.prime, count);
    println!(
        "{}",
        serde_json::json!({
            "count": count,
            "eval": value.to_string(),
            "match": matches,
        })
    );
    Ok(if matches { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_seed(args: SeedArgs) -> Result<i32, Error> {
    std::fs::create_dir_all(&args.out)
        .map_err(|e| Error::Parse(format!("{}: {e}", args.out.display())))?;
    for m in 1..=3u32 {
        for d in 1..=4u32 {
            let p = reference::loop_motive(m, d).expect("d <= 4");
            let path = args.out.join(format!("mloop_N{d}_m{m}.json"));
            std::fs::write(&path, p.to_json_terms().to_string())
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        }
    }
    // a tiny index for auditability
    let mut index = BTreeMap::new();
    for m in 1..=3u32 {
        for d in 1..=4u32 {
            index.insert(
                format!("mloop_N{d}_m{m}.json"),
                format!("nullcone motive of the {m}-loop quiver at d={d}"),
            );
        }
    }
    let path = args.out.join("index.json");
    std::fs::write(
        &path,
        serde_json::to_string_pretty(&index).expect("serialize"),
    )
    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    println!("wrote {} fixture files to {}", 12, args.out.display());
    Ok(EXIT_OK)
}
