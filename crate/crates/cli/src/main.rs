//! `z2s`: construct Z_{2^s}-additive codes, list their Gray images and
//! compute or verify their invariants.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 budget exceeded,
//! 4 failed assertion or table mismatch.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use z2s_codes::table1::{self, TableSelection};
use z2s_codes::text::{parse_matrix, write_binary_code, write_matrix};
use z2s_codes::verify::{self, Suite, VerifyConfig};
use z2s_codes::{
    code_report, gray_image, AdditiveCode, Budget, Error, Family, FamilySpec, GeneratorMatrix,
    InvariantReport,
};

const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "z2s",
    version,
    about = "Z_{2^s}-additive simplex, Hadamard and MacDonald codes and their Gray images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Maximum number of codewords to enumerate.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generator matrix.
    Construct(CodeArgs),
    /// List the Gray image of a code.
    Gray(CodeArgs),
    /// Kernel dimension, rank, distances and type of a code's Gray image.
    Invariants(CodeArgs),
    /// Recompute the published kernel/rank table and compare.
    Table1(TableArgs),
    /// Run named structural checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// simplex-alpha | simplex-beta | hadamard | macdonald-alpha | macdonald-beta
    #[arg(long, required_unless_present = "matrix")]
    family: Option<Family>,

    /// Ring exponent: the code is over Z_{2^s}.
    #[arg(long)]
    s: Option<u32>,

    /// Number of generators (for Hadamard: the type is (k,0,…,0)).
    #[arg(long)]
    k: Option<u32>,

    /// MacDonald parameter.
    #[arg(long)]
    u: Option<u32>,

    /// Hadamard type t_1,…,t_s.
    #[arg(long = "type", value_delimiter = ',')]
    ts: Option<Vec<usize>>,

    /// Read the generator matrix from a file instead of building a family.
    #[arg(long, conflicts_with_all = ["family", "k", "u", "ts"])]
    matrix: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Rings to include, as exponents.
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4])]
    s: Vec<u32>,

    #[arg(long, default_value_t = 4)]
    k_max: u32,

    /// Leave out the largest cells (Z_16 with k=3, Z_8 with k=4).
    #[arg(long)]
    skip_extended: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// gray | structure | kernel | hadamard | distance | macdonald | oracle | rank | all
    #[arg(long, default_value = "all")]
    suite: Suite,

    /// Exponents to check.
    #[arg(long, value_delimiter = ',', conflicts_with = "s_max")]
    s: Option<Vec<u32>>,

    /// Check every exponent 2..=s-max.
    #[arg(long)]
    s_max: Option<u32>,

    #[arg(long, default_value_t = 3)]
    k_max: u32,

    /// Seed for the random-code oracle.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,

    /// Number of random codes for the oracle.
    #[arg(long, default_value_t = 50)]
    samples: usize,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::StructureViolation(_) => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    let result = match &cli.command {
        Command::Construct(a) => construct(a, &cli.common),
        Command::Gray(a) => gray(a, &cli.common),
        Command::Invariants(a) => invariants(a, &cli.common),
        Command::Table1(a) => table(a, &cli.common),
        Command::Verify(a) => run_verify(a, &cli.common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn budget(common: &Common) -> Budget {
    match common.budget {
        Some(n) => Budget::default().with_max_codewords(n),
        None => Budget::default(),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// The selected code: a family member or a matrix read from disk.
enum Source {
    Family(FamilySpec),
    Matrix(GeneratorMatrix),
}

impl Source {
    fn from_args(a: &CodeArgs) -> Result<Self, Failure> {
        if let Some(path) = &a.matrix {
            let g = parse_matrix(&fs::read_to_string(path)?)?;
            if a.s.is_some_and(|s| s != g.s()) {
                return Err(Failure {
                    code: EXIT_INVALID,
                    message: format!("--s does not match the matrix file (s={})", g.s()),
                });
            }
            return Ok(Source::Matrix(g));
        }
        let family = a.family.expect("clap requires --family without --matrix");
        let s = a.s.ok_or_else(|| Failure {
            code: EXIT_INVALID,
            message: "--s is required".into(),
        })?;
        Ok(Source::Family(FamilySpec {
            family,
            s,
            k: a.k,
            u: a.u,
            ts: a.ts.clone(),
        }))
    }

    fn generator(&self) -> Result<GeneratorMatrix, Failure> {
        match self {
            Source::Family(spec) => Ok(spec.generator()?),
            Source::Matrix(g) => Ok(g.clone()),
        }
    }

    fn report(&self, budget: &Budget) -> Result<InvariantReport, Failure> {
        let code = AdditiveCode::new(self.generator()?);
        let report = match self {
            Source::Family(spec) => code_report(spec.family.name(), spec.k, spec.u, &code, budget)?,
            Source::Matrix(_) => code_report("matrix", None, None, &code, budget)?,
        };
        Ok(report)
    }
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    s: u32,
    rows: usize,
    cols: usize,
    matrix: Vec<&'a [u32]>,
}

fn construct(a: &CodeArgs, common: &Common) -> CliResult {
    let g = Source::from_args(a)?.generator()?;
    let text = if common.json {
        to_json(&MatrixJson {
            s: g.s(),
            rows: g.row_count(),
            cols: g.n(),
            matrix: g.rows().iter().map(|r| r.coords()).collect(),
        })
    } else {
        write_matrix(&g)
    };
    emit(common, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct ListingJson {
    len: usize,
    count: usize,
    words: Vec<String>,
}

fn gray(a: &CodeArgs, common: &Common) -> CliResult {
    let code = AdditiveCode::new(Source::from_args(a)?.generator()?);
    let image = gray_image(&code, &budget(common))?;
    let text = if common.json {
        to_json(&ListingJson {
            len: image.len(),
            count: image.size(),
            words: image.words().iter().map(|w| w.to_string()).collect(),
        })
    } else {
        write_binary_code(&image)
    };
    emit(common, &text)?;
    Ok(0)
}

fn format_report(r: &InvariantReport) -> String {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    let mut lines = vec![
        format!("family         {}", r.family),
        format!("s              {}", r.s),
    ];
    if let Some(k) = r.k {
        lines.push(format!("k              {k}"));
    }
    if let Some(u) = r.u {
        lines.push(format!("u              {u}"));
    }
    lines.extend([
        format!("n              {}", r.n),
        format!("binary_length  {}", r.binary_length),
        format!("size           {}", r.size),
        format!("type           {}", r.ctype),
        format!("ker            {}", opt(r.ker)),
        format!("rank           {}", opt(r.rank)),
        format!("min_dist       {}", opt(r.min_dist)),
    ]);
    let weights = r.weights.as_ref().map_or("-".to_string(), |ws| {
        ws.iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    });
    lines.push(format!("weights        {weights}"));
    lines.push(format!(
        "linear         {}",
        r.linear.map_or("-".to_string(), |l| l.to_string())
    ));
    if let Some(agree) = r.kernels_agree {
        lines.push(format!("kernels_agree  {agree}"));
    }
    if let Some(reason) = &r.skipped {
        lines.push(format!("skipped        {reason}"));
    }
    lines.join("\n") + "\n"
}

fn invariants(a: &CodeArgs, common: &Common) -> CliResult {
    let report = Source::from_args(a)?.report(&budget(common))?;
    let text = if common.json {
        to_json(&report)
    } else {
        format_report(&report)
    };
    emit(common, &text)?;
    if report.skipped.is_some() {
        return Ok(EXIT_BUDGET);
    }
    if report.kernels_agree == Some(false) {
        eprintln!("error: kernel computations disagree");
        return Ok(EXIT_MISMATCH);
    }
    Ok(0)
}

fn table(a: &TableArgs, common: &Common) -> CliResult {
    let selection = TableSelection {
        s_values: a.s.clone(),
        k_max: a.k_max,
        include_extended: !a.skip_extended,
    };
    let cells = table1::reproduce(&selection, &budget(common))?;
    let text = if common.json {
        to_json(&cells)
    } else {
        table1::format_table(&cells)
    };
    emit(common, &text)?;
    Ok(if table1::has_mismatch(&cells) {
        EXIT_MISMATCH
    } else {
        0
    })
}

fn run_verify(a: &VerifyArgs, common: &Common) -> CliResult {
    let s_values = match (&a.s, a.s_max) {
        (Some(list), _) => list.clone(),
        (None, Some(max)) => (2..=max).collect(),
        (None, None) if a.suite == Suite::Gray => (2..=6).collect(),
        (None, None) => vec![2, 3, 4],
    };
    if let Some(&bad) = s_values
        .iter()
        .find(|&&s| !(2..=z2s_codes::MAX_S).contains(&s))
    {
        return Err(Failure {
            code: EXIT_INVALID,
            message: format!("s={bad} outside 2..={}", z2s_codes::MAX_S),
        });
    }
    let cfg = VerifyConfig {
        s_values,
        k_max: a.k_max,
        budget: budget(common),
        seed: a.seed,
        oracle_samples: a.samples,
    };
    let results = verify::run_suite(a.suite, &cfg);
    let text = if common.json {
        to_json(&results)
    } else {
        let mut out: String = results.iter().map(|r| format!("{r}\n")).collect();
        let count = |v| results.iter().filter(|r| r.verdict == v).count();
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} open, {} skip\n",
            count(verify::Verdict::Pass),
            count(verify::Verdict::Fail),
            count(verify::Verdict::Open),
            count(verify::Verdict::Skip)
        ));
        out
    };
    emit(common, &text)?;
    Ok(if verify::all_passed(&results) {
        0
    } else {
        EXIT_MISMATCH
    })
}
