use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modinv::action::{RepMatrix, RepMatrixJson};
use modinv::minors::{classify, sample_in_stratum, StratumLabel};
use modinv::oracle::{comparison_csv, invariant_dims, OracleMethod};
use modinv::recipes::Route;
use modinv::report::{self, CampaignOptions, ErrorReport, VerifyOptions, SCHEMA_VERSION};
use modinv::{Error, FieldContext};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "modinv", version, about = "Invariant rings of rank-four elementary abelian p-groups in dimension three")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Source {
    /// Characteristic
    #[arg(long, default_value_t = 3)]
    p: u32,
    /// Degree k of the coefficient field F_(p^k)
    #[arg(long = "ext-degree", default_value_t = 4)]
    ext_degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Matrix JSON (a bare matrix or any report embedding one)
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Stratum to sample from (default ESS_GENERIC), or to check the matrix against
    #[arg(long)]
    stratum: Option<String>,
    /// Write the JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Stratum of a matrix and the minors that decide it
    Classify(Source),
    /// Generators of the invariant ring without verification
    Generate {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value = "explicit")]
        path: String,
        /// Embed every generator polynomial
        #[arg(long)]
        full: bool,
    },
    /// Generators, SAGBI check, relation degrees and optional oracle comparison
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value = "explicit")]
        path: String,
        #[arg(long)]
        full: bool,
        /// Also compare with the invariant oracle up to this degree
        #[arg(long = "max-degree")]
        max_degree: Option<u32>,
        #[arg(long)]
        timings: bool,
    },
    /// Graded invariant dimensions and, for computed strata, the three-way comparison
    Oracle {
        #[command(flatten)]
        src: Source,
        #[arg(long = "max-degree", default_value_t = 90)]
        max_degree: u32,
        /// Use the per-degree kernel instead of the translation quotient
        #[arg(long)]
        kernel: bool,
        /// Also write the table as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// A seeded matrix in a stratum
    Sample(Source),
    /// Consolidated table over all strata
    Report {
        #[command(flatten)]
        src: Source,
        /// Run every stratum at p = 3 and a reduced pass at p = 5
        #[arg(long)]
        campaign: bool,
        /// Oracle degree for the p = 3 pass
        #[arg(long = "max-degree", default_value_t = 90)]
        max_degree: u32,
    },
}

struct Failure {
    code: u8,
    report: ErrorReport,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LemmaViolation { .. } | Error::StepCap { .. } | Error::CompletionCap(_) => 3,
            _ => 2,
        };
        Failure { code, report: ErrorReport::from_error(&e) }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, report: ErrorReport::new("io", format!("{}: {e}", path.display())) }
}

fn label_of(s: &Option<String>) -> Result<Option<StratumLabel>, Failure> {
    Ok(match s {
        Some(s) => Some(s.parse()?),
        None => None,
    })
}

fn load_matrix(path: &Path) -> Result<RepMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
    let inner = v.get("matrix").cloned().unwrap_or(v);
    let j: RepMatrixJson = serde_json::from_value(inner).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
    Ok(RepMatrix::from_json(&j)?)
}

/// The matrix named by the flags: read from --matrix, else sampled from --stratum
/// (ESS_GENERIC when absent).
fn resolve(src: &Source) -> Result<(RepMatrix, Option<u64>), Failure> {
    let label = label_of(&src.stratum)?;
    if let Some(path) = &src.matrix {
        let m = load_matrix(path)?;
        if let Some(l) = label {
            let found = classify(&m);
            if found != l {
                return Err(Error::Precondition(format!("matrix lies in {found}, not {l}")).into());
            }
        }
        return Ok((m, None));
    }
    let l = label.unwrap_or(StratumLabel::EssGeneric);
    let f = FieldContext::new(src.p, src.ext_degree)?;
    Ok((sample_in_stratum(l, &f, src.seed)?, Some(src.seed)))
}

fn route(s: &str) -> Result<Route, Failure> {
    Ok(s.parse()?)
}

/// Writes through a temporary file so readers never see a partial report.
fn write_atomic(path: &Path, body: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, body).map_err(|e| io_failure(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| io_failure(path, e))
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), Failure> {
    let body = serde_json::to_string_pretty(value).expect("reports serialise") + "\n";
    match out {
        Some(p) => write_atomic(p, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn execute(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Classify(src) => {
            let m = match &src.matrix {
                Some(path) => load_matrix(path)?,
                None => resolve(&src)?.0,
            };
            emit(&report::classify_report(&m), &src.out)?;
            Ok(0)
        }
        Cmd::Sample(src) => {
            let (m, seed) = resolve(&src)?;
            let body = json!({
                "schema": SCHEMA_VERSION,
                "seed": seed,
                "stratum": classify(&m),
                "matrix": m.to_json(),
                "entries": m.format_entries(),
            });
            emit(&body, &src.out)?;
            Ok(0)
        }
        Cmd::Generate { src, path, full } => {
            let (m, seed) = resolve(&src)?;
            let opts = VerifyOptions { route: route(&path)?, full, generate_only: true, ..Default::default() };
            emit(&report::run(&m, seed, opts)?, &src.out)?;
            Ok(0)
        }
        Cmd::Verify { src, path, full, max_degree, timings } => {
            let (m, seed) = resolve(&src)?;
            let opts = VerifyOptions { route: route(&path)?, full, oracle_degree: max_degree, timings, generate_only: false };
            let r = report::run(&m, seed, opts)?;
            emit(&r, &src.out)?;
            Ok(if r.verified { 0 } else { 1 })
        }
        Cmd::Oracle { src, max_degree, kernel, csv } => {
            let (m, seed) = resolve(&src)?;
            let method = if kernel { OracleMethod::Kernel } else { OracleMethod::Quotient };
            let table = invariant_dims(&m, max_degree, method);
            let label = classify(&m);
            let comparison = if label == StratumLabel::Degenerate {
                None
            } else {
                let opts = VerifyOptions { oracle_degree: Some(max_degree), ..Default::default() };
                Some(report::run(&m, seed, opts)?.oracle.expect("oracle requested"))
            };
            if let Some(path) = &csv {
                let body = match &comparison {
                    Some(c) => comparison_csv(c),
                    None => table.to_csv(),
                };
                write_atomic(path, &body)?;
            }
            let agree = comparison.as_ref().map_or(true, |c| c.agree);
            let body = json!({
                "schema": SCHEMA_VERSION,
                "seed": seed,
                "stratum": label,
                "table": table,
                "comparison": comparison,
            });
            emit(&body, &src.out)?;
            Ok(if agree { 0 } else { 1 })
        }
        Cmd::Report { src, campaign, max_degree } => {
            if !campaign {
                return Err(Error::Precondition("report needs --campaign".into()).into());
            }
            let opts = CampaignOptions {
                seed: src.seed,
                k: src.ext_degree,
                primes: vec![(3, Some(max_degree)), (5, Some(max_degree.min(60)))],
            };
            let r = report::campaign(&opts)?;
            emit(&r, &src.out)?;
            Ok(if r.pass { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let r = ErrorReport::new("usage", e.to_string().trim().to_string());
            println!("{}", serde_json::to_string_pretty(&r).unwrap());
            return ExitCode::from(2);
        }
    };
    match execute(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            println!("{}", serde_json::to_string_pretty(&f.report).unwrap());
            ExitCode::from(f.code)
        }
    }
}
