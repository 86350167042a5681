//! Machine-readable run reports and the stratified campaign.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{RepMatrix, RepMatrixJson};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::minors::{classify, classify_detailed, sample_in_stratum, StratumLabel};
use crate::oracle::{oracle_compare, OracleComparison};
use crate::poly::TermJson;
use crate::recipes::{completion_bound, stratum_recipe, LemmaCheck, Path, RecipeOptions, Route};
use crate::sagbi::{relation_degrees, sagbi_check};

pub const SCHEMA_VERSION: &str = "modinv-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable holding the campaign worker count.
pub const WORKERS_ENV: &str = "MODINV_WORKERS";

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

impl FieldInfo {
    pub fn of(f: &FieldContext) -> Self {
        FieldInfo { p: f.p(), k: f.k(), modulus: f.modulus().to_vec() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub degree: u32,
    pub lead_monomial: String,
    pub lead_coeff: String,
    pub path: Path,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimCheck {
    pub generators: Vec<u64>,
    pub relations: Vec<u64>,
    pub generators_match: bool,
    pub relations_match: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub recipe_ms: f64,
    pub sagbi_ms: f64,
    pub oracle_ms: f64,
}

/// Everything needed to rerun and audit one stratum computation.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub seed: Option<u64>,
    pub field: FieldInfo,
    pub matrix: RepMatrixJson,
    pub stratum: StratumLabel,
    pub route: &'static str,
    pub generators: Vec<GeneratorRow>,
    pub generator_degrees: Vec<u32>,
    pub relation_degrees: Vec<u32>,
    pub sagbi: bool,
    pub claimed: Option<ClaimCheck>,
    pub lemma_checks: Vec<LemmaCheck>,
    pub oracle: Option<OracleComparison>,
    pub notes: Vec<String>,
    /// True when the SAGBI check passed and, if run, the oracle agreed.
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub route: Route,
    /// Run the oracle comparison up to this degree.
    pub oracle_degree: Option<u32>,
    /// Embed full generator polynomials.
    pub full: bool,
    /// Skip the SAGBI check and relation enumeration.
    pub generate_only: bool,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { route: Route::Explicit, oracle_degree: None, full: false, generate_only: false, timings: false }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Builds, checks and optionally oracle-compares the basis of M's stratum.
pub fn run(m: &RepMatrix, seed: Option<u64>, opts: VerifyOptions) -> Result<RunReport> {
    let f = m.ctx();
    let label = classify(m);
    if label == StratumLabel::Degenerate {
        return Err(Error::Precondition("the matrix is not faithful of type (1,1,1)".into()));
    }
    let mut tm = Timings::default();
    let t0 = Instant::now();
    let gs = stratum_recipe(m, label, RecipeOptions { route: opts.route, ..Default::default() })?;
    tm.recipe_ms = ms(t0);
    let generators = gs
        .generators
        .iter()
        .map(|g| {
            let (lm, lc) = g.lead_term();
            GeneratorRow {
                name: g.name.clone(),
                degree: g.degree(),
                lead_monomial: lm.to_string(),
                lead_coeff: f.format(lc),
                path: g.path,
                terms: opts.full.then(|| g.poly.to_json()),
            }
        })
        .collect();
    let degrees = gs.degrees();
    let (mut sagbi, mut rels) = (false, Vec::new());
    let mut notes = gs.notes.clone();
    let mut oracle = None;
    if !opts.generate_only {
        let t1 = Instant::now();
        let b = gs.basis()?;
        let bound = completion_bound(f.p());
        let v = sagbi_check(&b, bound)?;
        sagbi = v.is_sagbi;
        if let Some((t, r)) = &v.failure {
            notes.push(format!("tête-à-tête {} leaves {}", t.describe(b.names()), r.lead_monomial().map(|m| m.to_string()).unwrap_or_default()));
        }
        rels = relation_degrees(&b, bound);
        tm.sagbi_ms = ms(t1);
        if let Some(d) = opts.oracle_degree {
            let t2 = Instant::now();
            oracle = Some(oracle_compare(m, &b, &degrees, &rels, d)?);
            tm.oracle_ms = ms(t2);
        }
    }
    let claimed = label.claimed_degrees(f.p() as u64).map(|(g, r)| ClaimCheck {
        generators_match: degrees.iter().map(|&d| d as u64).eq(g.iter().copied()),
        relations_match: !opts.generate_only && rels.iter().map(|&d| d as u64).eq(r.iter().copied()),
        generators: g,
        relations: r,
    });
    let verified = !opts.generate_only && sagbi && oracle.as_ref().map_or(true, |o| o.agree);
    Ok(RunReport {
        schema: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        seed,
        field: FieldInfo::of(f),
        matrix: m.to_json(),
        stratum: label,
        route: match opts.route {
            Route::Explicit => "explicit",
            Route::Discovery => "discovery",
        },
        generators,
        generator_degrees: degrees,
        relation_degrees: rels,
        sagbi,
        claimed,
        lemma_checks: gs.lemma_checks,
        oracle,
        notes,
        verified,
        timings: opts.timings.then_some(tm),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub schema: &'static str,
    pub matrix: RepMatrixJson,
    pub stratum: StratumLabel,
    pub faithful: bool,
    pub type_111: bool,
    pub minors: Vec<(String, String)>,
}

pub fn classify_report(m: &RepMatrix) -> ClassifyReport {
    let c = classify_detailed(m);
    ClassifyReport {
        schema: SCHEMA_VERSION,
        matrix: m.to_json(),
        stratum: c.label,
        faithful: c.faithful,
        type_111: c.type_111,
        minors: c.decisive.into_iter().map(|(n, v)| (format!("γ{n}"), m.ctx().format(v))).collect(),
    }
}

/// One line of the campaign table.
#[derive(Clone, Debug, Serialize)]
pub struct CampaignRow {
    pub p: u32,
    pub stratum: StratumLabel,
    pub seed: u64,
    pub generator_degrees: Vec<u32>,
    pub relation_degrees: Vec<u32>,
    pub claimed_generators: Vec<u64>,
    pub claimed_relations: Vec<u64>,
    pub matches_claim: bool,
    pub sagbi: bool,
    pub oracle_degree: Option<u32>,
    pub oracle_agree: Option<bool>,
    pub evidence: Option<String>,
    pub verified: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub seed: u64,
    pub rows: Vec<CampaignRow>,
    /// Every row verified; claim mismatches are listed but do not fail the campaign.
    pub pass: bool,
    pub claim_mismatches: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    pub seed: u64,
    pub primes: Vec<(u32, Option<u32>)>,
    pub k: u32,
}

impl Default for CampaignOptions {
    /// Every stratum at p = 3 with the oracle to degree 90, and p = 5 with the oracle to 60.
    fn default() -> Self {
        CampaignOptions { seed: 0, primes: vec![(3, Some(90)), (5, Some(60))], k: 4 }
    }
}

fn campaign_row(p: u32, k: u32, label: StratumLabel, seed: u64, oracle_degree: Option<u32>) -> CampaignRow {
    let (cg, cr) = label.claimed_degrees(p as u64).unwrap_or_default();
    let mut row = CampaignRow {
        p,
        stratum: label,
        seed,
        generator_degrees: Vec::new(),
        relation_degrees: Vec::new(),
        claimed_generators: cg,
        claimed_relations: cr,
        matches_claim: false,
        sagbi: false,
        oracle_degree,
        oracle_agree: None,
        evidence: None,
        verified: false,
        error: None,
    };
    let res = FieldContext::new(p, k).and_then(|f| sample_in_stratum(label, &f, seed)).and_then(|m| {
        run(&m, Some(seed), VerifyOptions { oracle_degree, ..Default::default() })
    });
    match res {
        Ok(r) => {
            row.matches_claim = r.claimed.as_ref().is_some_and(|c| c.generators_match && c.relations_match);
            row.generator_degrees = r.generator_degrees;
            row.relation_degrees = r.relation_degrees;
            row.sagbi = r.sagbi;
            row.oracle_agree = r.oracle.as_ref().map(|o| o.agree);
            row.evidence = r.oracle.map(|o| o.evidence);
            row.verified = r.verified;
        }
        Err(e) => row.error = Some(format!("{}: {e}", e.kind())),
    }
    row
}

/// Worker count from the environment, defaulting to rayon's choice.
pub fn workers() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse().ok()).filter(|&n| n > 0)
}

/// Runs every computed stratum for each (p, oracle degree) pair.
pub fn campaign(opts: &CampaignOptions) -> Result<CampaignReport> {
    let jobs: Vec<(u32, Option<u32>, StratumLabel)> = opts
        .primes
        .iter()
        .flat_map(|&(p, d)| StratumLabel::COMPUTED.into_iter().map(move |l| (p, d, l)))
        .collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers() {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::Precondition(e.to_string()))?;
    let rows: Vec<CampaignRow> =
        pool.install(|| jobs.par_iter().map(|&(p, d, l)| campaign_row(p, opts.k, l, opts.seed, d)).collect());
    let claim_mismatches = rows
        .iter()
        .filter(|r| r.error.is_none() && !r.matches_claim)
        .map(|r| {
            format!(
                "p={} {}: computed {:?}/{:?}, claimed {:?}/{:?}",
                r.p, r.stratum, r.generator_degrees, r.relation_degrees, r.claimed_generators, r.claimed_relations
            )
        })
        .collect();
    Ok(CampaignReport {
        schema: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        seed: opts.seed,
        pass: rows.iter().all(|r| r.verified),
        rows,
        claim_mismatches,
    })
}

/// Structured error body for the command line.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub schema: &'static str,
    pub error: ErrorBody,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

impl ErrorReport {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        ErrorReport { schema: SCHEMA_VERSION, error: ErrorBody { kind: kind.into(), message: message.into() } }
    }
    pub fn from_error(e: &Error) -> Self {
        Self::new(e.kind(), e.to_string())
    }
}
