//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_lie::{verify_hall_basis, BasisReport, BracketExpr, FreeLieRing};
use crate::hall_words::{enumerate_hall_basis, parse_word, Alphabet, OrderPolicy};
use crate::hilton_milnor::{
    decompose, verify_fundamental_split, verify_half2, verify_hm_series, verify_james, Bound, Verdict,
};
use crate::homotopy_series::{FormalObject, Mismatch, MultiSeries, DEFAULT_TRUNCATION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable that supplies the truncation degree when the flag is absent.
pub const TRUNCATION_ENV: &str = "HMSPLIT_TRUNCATION";

#[derive(Debug, Parser)]
#[command(name = "hmsplit", version, about = "Hall bases, free Lie rings and the Hilton-Milnor splitting")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List a Hall basis up to a length bound.
    Hall {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Witt dimensions of the free Lie ring, one per length.
    Witt {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Rewrite a bracket expression in the Hall basis.
    Rewrite {
        /// Bracket expression, e.g. "[y,[x,y]]".
        expr: String,
        #[command(flatten)]
        common: Common,
        /// Length bound of the basis table (defaults to the expression length).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Factors of the Hilton-Milnor splitting.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, env = TRUNCATION_ENV, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
    },
    /// Check a splitting identity (or the basis property) exactly.
    Verify {
        which: Check,
        #[command(flatten)]
        common: Common,
        #[arg(long, env = TRUNCATION_ENV, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
        /// Degree bound for `verify basis`.
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Generators as `name[:connectivity]` separated by commas, or a count.
    #[arg(long)]
    gens: String,
    #[arg(long, value_enum, default_value_t = PolicyArg::Creation)]
    policy: PolicyArg,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct BoundArgs {
    /// Keep words of length at most this.
    #[arg(long)]
    max_len: Option<usize>,
    /// Keep words whose connectivity bound is below this.
    #[arg(long)]
    min_conn: Option<i64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Creation,
    Lex,
}

impl From<PolicyArg> for OrderPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Creation => OrderPolicy::CreationOrder,
            PolicyArg::Lex => OrderPolicy::LexSerialized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    James,
    Fundamental,
    Half2,
    HiltonMilnor,
    Basis,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::James => "james",
            Check::Fundamental => "fundamental",
            Check::Half2 => "half2",
            Check::HiltonMilnor => "hilton-milnor",
            Check::Basis => "basis",
        }
    }
}

/// Validated generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub alphabet: Alphabet,
    pub connectivities: Vec<i64>,
}

/// Parses `x,y`, `x:0,y:2` or a bare count such as `3`.
pub fn parse_generators(spec: &str) -> Result<CliConfig> {
    if let Ok(n) = spec.trim().parse::<usize>() {
        return Ok(CliConfig { alphabet: Alphabet::standard(n)?, connectivities: vec![0; n] });
    }
    let mut names = Vec::new();
    let mut connectivities = Vec::new();
    for item in spec.split(',') {
        let item = item.trim();
        let (name, conn) = match item.split_once(':') {
            Some((name, c)) => {
                let c: i64 = c.trim().parse().map_err(|_| Error::Domain(format!("bad connectivity in {item:?}")))?;
                (name.trim(), c)
            }
            None => (item, 0),
        };
        if conn < 0 {
            return Err(Error::Domain(format!("generator {name} has negative connectivity {conn}")));
        }
        names.push(name.to_string());
        connectivities.push(conn);
    }
    Ok(CliConfig { alphabet: Alphabet::new(names)?, connectivities })
}

impl CliConfig {
    fn objects(&self, truncation: usize) -> Result<Vec<FormalObject>> {
        let n = self.alphabet.len();
        self.connectivities
            .iter()
            .enumerate()
            .map(|(i, &c)| FormalObject::sphere(self.alphabet.name(i), c, n, i, truncation))
            .collect()
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Json(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_error)
}

fn io_error(e: std::io::Error) -> Error {
    Error::Domain(format!("write failed: {e}"))
}

fn check_truncation(truncation: usize) -> Result<()> {
    if truncation == 0 {
        return Err(Error::Domain("truncation must be at least 1".into()));
    }
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Hall { common, max_len } => {
            let cfg = parse_generators(&common.gens)?;
            let table = enumerate_hall_basis(cfg.alphabet.len(), max_len, common.policy.into())?;
            match common.output {
                Output::Text => write!(out, "{}", table.to_text(&cfg.alphabet)).map_err(io_error)?,
                Output::Json => write_json(out, &table.to_records(&cfg.alphabet))?,
            }
            Ok(EXIT_OK)
        }
        Command::Witt { common, max_len } => {
            let cfg = parse_generators(&common.gens)?;
            if max_len == 0 {
                return Err(Error::Domain("maximum length must be at least 1".into()));
            }
            let n = cfg.alphabet.len();
            let dims: Vec<_> = (1..=max_len).map(|l| crate::free_lie::witt_dimension(n, l)).collect();
            match common.output {
                Output::Text => {
                    let cells: Vec<String> = dims.iter().map(ToString::to_string).collect();
                    writeln!(out, "{}", cells.join(",")).map_err(io_error)?;
                }
                Output::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        length: usize,
                        dimension: String,
                    }
                    let rows: Vec<Row> =
                        dims.iter().enumerate().map(|(k, d)| Row { length: k + 1, dimension: d.to_string() }).collect();
                    write_json(out, &rows)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Rewrite { expr, common, max_len } => {
            let cfg = parse_generators(&common.gens)?;
            let word = parse_word(&expr, &cfg.alphabet)?;
            let bound = max_len.unwrap_or(word.length()).max(1);
            let ring = FreeLieRing::new(enumerate_hall_basis(cfg.alphabet.len(), bound, common.policy.into())?);
            let nf = ring.rewrite_to_hall(&BracketExpr::from(word))?;
            match common.output {
                Output::Text => writeln!(out, "{}", nf.display(&ring, &cfg.alphabet)).map_err(io_error)?,
                Output::Json => write_json(out, &nf.to_records(&ring, &cfg.alphabet))?,
            }
            Ok(EXIT_OK)
        }
        Command::Decompose { common, bound, truncation } => {
            check_truncation(truncation)?;
            let cfg = parse_generators(&common.gens)?;
            let bound = match (bound.max_len, bound.min_conn) {
                (Some(l), _) => Bound::MaxLength(l),
                (None, Some(c)) => Bound::MinConnectivity(c),
                (None, None) => unreachable!("clap enforces the group"),
            };
            let d = decompose(&cfg.objects(truncation)?, bound, common.policy.into())?;
            match common.output {
                Output::Text => write!(out, "{}", d.to_text(&cfg.alphabet)).map_err(io_error)?,
                Output::Json => write_json(out, &d.to_record(&cfg.alphabet))?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { which, common, truncation, max_len } => {
            check_truncation(truncation)?;
            let cfg = parse_generators(&common.gens)?;
            verify(which, &cfg, truncation, max_len, common.policy.into(), common.output, out)
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    check: &'a str,
    passed: bool,
    truncation: Option<usize>,
    mismatch: Option<Mismatch>,
    report: Option<BasisReport>,
}

fn verify(
    which: Check,
    cfg: &CliConfig,
    truncation: usize,
    max_len: usize,
    policy: OrderPolicy,
    output: Output,
    out: &mut dyn Write,
) -> Result<i32> {
    if which == Check::Basis {
        let n = cfg.alphabet.len();
        let table = enumerate_hall_basis(n, max_len, policy)?;
        let report = verify_hall_basis(n, max_len, &table)?;
        let passed = report.independent && report.spans;
        match output {
            Output::Text => {
                let ranks: Vec<String> = report.ranks.iter().map(ToString::to_string).collect();
                let status = if passed { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{status} basis: independent={} spans={} ranks={}",
                    report.independent,
                    report.spans,
                    ranks.join(",")
                )
                .map_err(io_error)?;
            }
            Output::Json => write_json(
                out,
                &VerifyOutput { check: which.name(), passed, truncation: None, mismatch: None, report: Some(report) },
            )?,
        }
        return Ok(if passed { EXIT_OK } else { EXIT_FAIL });
    }

    let objects = cfg.objects(truncation)?;
    let series: Vec<&MultiSeries> = objects.iter().map(FormalObject::reduced_series).collect();
    let n = series.len();
    let wedge_of = |items: &[&MultiSeries]| -> Result<MultiSeries> {
        items.iter().try_fold(MultiSeries::zero(n, truncation), |acc, f| acc.add(f))
    };
    let verdict = match which {
        Check::James => {
            let mut verdict = Verdict::Pass;
            for f in series.iter().copied().cloned().chain(std::iter::once(wedge_of(&series)?)) {
                verdict = verify_james(&f, truncation)?;
                if !verdict.passed() {
                    break;
                }
            }
            verdict
        }
        Check::Fundamental => verify_fundamental_split(series[0], &wedge_of(&series[1..])?, truncation)?,
        Check::Half2 => verify_half2(series[0], &wedge_of(&series[1..])?, truncation)?,
        Check::HiltonMilnor => verify_hm_series(&objects, truncation, policy)?,
        Check::Basis => unreachable!(),
    };
    let mismatch = match &verdict {
        Verdict::Pass => None,
        Verdict::Fail(m) => Some(m.clone()),
    };
    match output {
        Output::Text => match &mismatch {
            None => writeln!(out, "PASS {} (truncation {truncation})", which.name()),
            Some(m) => writeln!(out, "FAIL {}: {m}", which.name()),
        }
        .map_err(io_error)?,
        Output::Json => write_json(
            out,
            &VerifyOutput {
                check: which.name(),
                passed: verdict.passed(),
                truncation: Some(truncation),
                mismatch: mismatch.clone(),
                report: None,
            },
        )?,
    }
    Ok(if verdict.passed() { EXIT_OK } else { EXIT_FAIL })
}
