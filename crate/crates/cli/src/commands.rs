//! The subcommands, as functions from inputs to output text.

use std::path::{Path, PathBuf};
use std::time::Instant;

use arrpi1_core::analysis::{lemma1_trials, validate_commutator_presentation, Evidence, Verdict};
use arrpi1_core::geometry::{is_parallel_union, singular_points, Arrangement};
use arrpi1_core::pipeline::{analyze_affine, AffineAnalysis};
use arrpi1_core::projective::{
    cross_validate_decone, decide_free_projective, generic_section, intersection_dimension, ProjectiveArrangement, ProjectiveVerdict,
};
use arrpi1_core::wiring::EventKind;
use arrpi1_core::ErrorClass;
use rand::SeedableRng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::input::{parse_arrangement, ArrangementFile, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {error}")]
    Parse { path: String, error: ParseError },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Core(#[from] arrpi1_core::Error),
    #[error("{path}: expected a {expected} arrangement")]
    WrongSpace { path: String, expected: &'static str },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 1 input error, 2 genericity exhaustion, 3 invariant violation.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Parse { .. } | Self::Io { .. } | Self::WrongSpace { .. } => 1,
            Self::Core(e) => match e.class() {
                ErrorClass::Input => 1,
                ErrorClass::Genericity => 2,
                ErrorClass::Internal => 3,
            },
            Self::Invariant(_) => 3,
        }
    }

    pub fn code(&self) -> String {
        match self {
            Self::Parse { error, .. } => error.code.to_string(),
            Self::Io { .. } => "IO".into(),
            Self::WrongSpace { .. } => "WRONG_SPACE".into(),
            Self::Core(e) => match e.class() {
                ErrorClass::Input => "INPUT".into(),
                ErrorClass::Genericity => "GENERICITY_EXHAUSTED".into(),
                ErrorClass::Internal => "INVARIANT".into(),
            },
            Self::Invariant(_) => "INVARIANT".into(),
        }
    }
}

pub struct Loaded {
    pub path: String,
    pub sha256: String,
    pub file: ArrangementFile,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| CliError::Io { path: shown.clone(), message: e.to_string() })?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|e| CliError::Io { path: shown.clone(), message: e.to_string() })?;
    let file = parse_arrangement(&text).map_err(|error| CliError::Parse { path: shown.clone(), error })?;
    Ok(Loaded { path: shown, sha256, file })
}

fn affine(loaded: &Loaded) -> Result<&Arrangement, CliError> {
    match &loaded.file {
        ArrangementFile::Affine(a) => Ok(a),
        ArrangementFile::Projective(_) => Err(CliError::WrongSpace { path: loaded.path.clone(), expected: "affine2" }),
    }
}

fn projective(loaded: &Loaded) -> Result<&ProjectiveArrangement, CliError> {
    match &loaded.file {
        ArrangementFile::Projective(p) => Ok(p),
        ArrangementFile::Affine(_) => Err(CliError::WrongSpace { path: loaded.path.clone(), expected: "projective" }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Normalization {
    pub candidate: usize,
    pub rejected_projections: usize,
    pub scale: String,
    pub shear: String,
    pub turn: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointOut {
    pub z1: String,
    pub z2: String,
    /// 1-based line indices.
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointCensus {
    pub count: usize,
    pub multiplicities: Vec<usize>,
    pub points: Vec<PointOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EventCensus {
    pub actual: usize,
    #[serde(rename = "virtual")]
    pub virtual_: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationCensus {
    pub generators: usize,
    pub relators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum VerdictOut {
    Trivial,
    InfiniteCyclic,
    FreeOfRank { rank: usize },
    NotFree,
}

impl From<Verdict> for VerdictOut {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::FreeOfRank(rank) => Self::FreeOfRank { rank },
            Verdict::NotFree => Self::NotFree,
        }
    }
}

impl From<ProjectiveVerdict> for VerdictOut {
    fn from(v: ProjectiveVerdict) -> Self {
        match v {
            ProjectiveVerdict::Trivial => Self::Trivial,
            ProjectiveVerdict::InfiniteCyclic => Self::InfiniteCyclic,
            ProjectiveVerdict::FreeOfRank(rank) => Self::FreeOfRank { rank },
            ProjectiveVerdict::NotFree => Self::NotFree,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateOut {
    pub verdict: &'static str,
    /// Words in the rebased generators.
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    /// 1-based strand positions of the first actual vertex.
    pub block: [usize; 2],
    pub sigma_a: Vec<i64>,
    pub sigma_b: Vec<i64>,
    /// 1-based generator indices of the 2×2 minor.
    pub minor_coordinates: [usize; 2],
    pub minor: i64,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub analysis_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: InputInfo,
    pub seed: usize,
    pub lines: usize,
    pub normalization: Normalization,
    pub singular_points: PointCensus,
    pub wiring: EventCensus,
    pub presentation: PresentationCensus,
    pub verdict: VerdictOut,
    pub evidence: &'static str,
    pub certificate: Option<CertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn ms(since: Instant) -> f64 {
    (since.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn build_report(loaded: &Loaded, a: &AffineAnalysis, seed: usize, timings: Option<Timings>) -> Result<AnalysisReport, CliError> {
    let arr = affine(loaded)?;
    let points: Vec<PointOut> = a
        .points
        .iter()
        .map(|p| PointOut { z1: p.z1.to_string(), z2: p.z2.to_string(), lines: p.incident.iter().map(|i| i + 1).collect() })
        .collect();
    let certificate = a.verdict.certificate().map(|c| {
        let (j, k) = c.block;
        CertificateOut {
            verdict: "NotFree",
            a: c.a.to_string(),
            b: c.b.to_string(),
            block: [j + 1, k + 1],
            sigma_a: c.sigma_a.0.clone(),
            sigma_b: c.sigma_b.0.clone(),
            minor_coordinates: [c.argument.coord_a + 1, c.argument.coord_b + 1],
            minor: c.argument.minor,
            verified: a.rebased.as_ref().is_some_and(|r| c.verify(&r.presentation)),
        }
    });
    let report = AnalysisReport {
        input: InputInfo { path: loaded.path.clone(), sha256: loaded.sha256.clone() },
        seed,
        lines: arr.len(),
        normalization: Normalization {
            candidate: a.run.change.candidate,
            rejected_projections: a.run.rejected,
            scale: a.run.change.scale.to_string(),
            shear: a.run.change.shear.to_string(),
            turn: a.run.change.turn.to_string(),
        },
        singular_points: PointCensus {
            count: points.len(),
            multiplicities: a.points.iter().map(|p| p.multiplicity()).collect(),
            points,
        },
        wiring: EventCensus { actual: a.run.diagram.actual_count(), virtual_: a.run.diagram.virtual_count() },
        presentation: PresentationCensus { generators: a.presentation.n_generators, relators: a.presentation.relators.len() },
        verdict: a.verdict.verdict.into(),
        evidence: match a.verdict.evidence {
            Evidence::ParallelGeometry => "parallel_geometry",
            Evidence::Z2(_) => "z2_certificate",
        },
        certificate,
        timings,
    };
    let free = matches!(report.verdict, VerdictOut::FreeOfRank { .. });
    if free != (report.presentation.relators == 0) || free != (report.singular_points.count == 0) {
        return Err(CliError::Invariant(format!("{}: verdict and censuses disagree", loaded.path)));
    }
    if report.certificate.as_ref().is_some_and(|c| !c.verified) {
        return Err(CliError::Invariant(format!("{}: certificate does not verify", loaded.path)));
    }
    Ok(report)
}

pub fn analyze(path: &Path, seed: usize, timings: bool) -> Result<String, CliError> {
    let start = Instant::now();
    let loaded = load(path)?;
    let parse_ms = ms(start);
    let start = Instant::now();
    let a = analyze_affine(affine(&loaded)?, seed)?;
    let t = timings.then(|| Timings { parse_ms, analysis_ms: ms(start) });
    let report = build_report(&loaded, &a, seed, t)?;
    Ok(serde_json::to_string_pretty(&report).expect("serializable") + "\n")
}

pub fn present(path: &Path, seed: usize, rebased: bool) -> Result<String, CliError> {
    let loaded = load(path)?;
    let a = analyze_affine(affine(&loaded)?, seed)?;
    Ok(match (&a.rebased, rebased) {
        (Some(r), true) => r.presentation.to_string(),
        _ => a.presentation.to_string(),
    })
}

pub fn wiring(path: &Path, seed: usize, svg: Option<&Path>) -> Result<String, CliError> {
    let loaded = load(path)?;
    let run = arrpi1_core::pipeline::build_wiring(affine(&loaded)?, seed)?;
    if let Some(out) = svg {
        std::fs::write(out, crate::svg::render(&run.diagram))
            .map_err(|e| CliError::Io { path: out.display().to_string(), message: e.to_string() })?;
    }
    Ok(run.diagram.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionCheck {
    pub candidate: usize,
    pub induced_dimension: i64,
    pub section_verdict: VerdictOut,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeconeCheck {
    pub deconings: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectiveReport {
    pub input: InputInfo,
    pub seed: usize,
    pub m: usize,
    pub hyperplanes: usize,
    pub coefficient_rank: usize,
    pub intersection_dimension: i64,
    pub verdict: VerdictOut,
    pub cross_validation: Option<SectionCheck>,
    pub decone: Option<DeconeCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

fn projective_report(loaded: &Loaded, seed: usize, timings: bool) -> Result<ProjectiveReport, CliError> {
    let start = Instant::now();
    let arr = projective(loaded)?;
    let verdict = decide_free_projective(arr);
    let cross_validation = if arr.m() >= 1 && arr.len() >= 3 {
        let (plane, section) = generic_section(arr, seed)?;
        let section_verdict = decide_free_projective(&section);
        Some(SectionCheck {
            candidate: plane.candidate,
            induced_dimension: intersection_dimension(&section),
            section_verdict: section_verdict.into(),
            agrees: section_verdict == verdict,
        })
    } else {
        None
    };
    let decone = if arr.m() == 0 && arr.len() >= 2 {
        Some(DeconeCheck { deconings: arr.len(), agrees: cross_validate_decone(arr, seed)? })
    } else {
        None
    };
    let report = ProjectiveReport {
        input: InputInfo { path: loaded.path.clone(), sha256: loaded.sha256.clone() },
        seed,
        m: arr.m(),
        hyperplanes: arr.len(),
        coefficient_rank: arr.coefficient_matrix().rank(),
        intersection_dimension: intersection_dimension(arr),
        verdict: verdict.into(),
        cross_validation,
        decone,
        elapsed_ms: timings.then(|| ms(start)),
    };
    if report.cross_validation.as_ref().is_some_and(|c| !c.agrees) {
        return Err(CliError::Invariant(format!("{}: rank criterion and generic section disagree", loaded.path)));
    }
    if report.decone.as_ref().is_some_and(|c| !c.agrees) {
        return Err(CliError::Invariant(format!("{}: deconing changes the verdict", loaded.path)));
    }
    Ok(report)
}

pub fn projective_cmd(path: &Path, seed: usize, timings: bool) -> Result<String, CliError> {
    let loaded = load(path)?;
    let report = projective_report(&loaded, seed, timings)?;
    Ok(serde_json::to_string_pretty(&report).expect("serializable") + "\n")
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

const VERIFY_TRIALS: usize = 200;

/// Invariant suite for one affine arrangement.
fn verify_affine(arr: &Arrangement, a: &AffineAnalysis, seed: usize) -> Result<Vec<Check>, CliError> {
    let d = &a.run.diagram;
    let mut checks = Vec::new();
    let census: usize = a.points.iter().map(|p| p.multiplicity() - 1).sum();
    let relators = a.presentation.relators.len();
    checks.push(check("relator_census", relators == census, format!("{relators} relators, sum of (mult - 1) = {census}")));
    checks.push(check(
        "actual_census",
        d.actual_count() == a.points.len(),
        format!("{} actual events, {} singular points", d.actual_count(), a.points.len()),
    ));
    let blocks_match = d.events.iter().all(|e| match &e.kind {
        EventKind::Actual { lo, hi, point } => hi.0 - lo.0 + 1 == point.multiplicity(),
        EventKind::Virtual { .. } => true,
    });
    checks.push(check("block_sizes", blocks_match, "actual blocks have the multiplicity of their point".into()));
    let replay_ok = d.replay().len() == d.events.len();
    checks.push(check("replay", replay_ok, format!("{} events replayed", d.events.len())));
    let commutators = validate_commutator_presentation(&a.presentation);
    checks.push(check("commutator_relators", commutators, "every relator has zero exponent sums".into()));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed as u64);
    let report = lemma1_trials(&a.presentation, VERIFY_TRIALS, 8, &mut rng);
    checks.push(check(
        "exponent_sum_trials",
        report.failures == 0,
        format!("{} trials, {} insertions, {} deletions, {} failures", report.trials, report.insertions, report.deletions, report.failures),
    ));
    if let (Some(cert), Some(rebased)) = (a.verdict.certificate(), &a.rebased) {
        checks.push(check("certificate", cert.verify(&rebased.presentation), format!("minor {}", cert.argument.minor)));
    }
    let coherent = singular_points(arr).is_empty() == is_parallel_union(arr)
        && is_parallel_union(arr) == a.verdict.is_free()
        && a.verdict.is_free() == (relators == 0);
    checks.push(check("coherence", coherent, "free iff no singular point iff no relator".into()));
    let other = analyze_affine(arr, seed + 1)?;
    let same = other.presentation.relators.len() == relators
        && other.run.diagram.actual_count() == d.actual_count()
        && other.verdict.verdict == a.verdict.verdict;
    checks.push(check("seed_invariance", same, format!("seed {} against seed {}", seed, seed + 1)));
    Ok(checks)
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorOut {
    pub code: String,
    pub exit_code: u8,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AnyReport {
    Affine(Box<AnalysisReport>),
    Projective(Box<ProjectiveReport>),
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchEntry {
    pub path: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<AnyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<Vec<Check>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub files: usize,
    pub ok: usize,
    pub errored: usize,
    pub invariant_violations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchReport {
    pub seed: usize,
    pub verify: bool,
    pub summary: BatchSummary,
    pub files: Vec<BatchEntry>,
}

impl BatchReport {
    /// Most severe per-file outcome: 3 beats 2 beats 1.
    pub fn exit_code(&self) -> u8 {
        let worst = self.files.iter().filter_map(|f| f.error.as_ref().map(|e| e.exit_code)).max().unwrap_or(0);
        if self.summary.invariant_violations > 0 {
            3
        } else {
            worst
        }
    }
}

fn batch_one(path: &Path, seed: usize, verify: bool, timings: bool) -> Result<(AnyReport, Option<Vec<Check>>), CliError> {
    let start = Instant::now();
    let loaded = load(path)?;
    let parse_ms = ms(start);
    match &loaded.file {
        ArrangementFile::Affine(arr) => {
            let start = Instant::now();
            let a = analyze_affine(arr, seed)?;
            let t = timings.then(|| Timings { parse_ms, analysis_ms: ms(start) });
            let report = build_report(&loaded, &a, seed, t)?;
            let checks = if verify { Some(verify_affine(arr, &a, seed)?) } else { None };
            Ok((AnyReport::Affine(Box::new(report)), checks))
        }
        ArrangementFile::Projective(arr) => {
            let report = projective_report(&loaded, seed, timings)?;
            let checks = verify.then(|| {
                let mut checks = vec![check(
                    "dimension_formula",
                    report.intersection_dimension == (arr.m() as i64 + 3) - report.coefficient_rank as i64 - 1,
                    format!("dimension {}", report.intersection_dimension),
                )];
                if let Some(c) = &report.cross_validation {
                    checks.push(check("section_agrees", c.agrees, format!("plane candidate {}", c.candidate)));
                }
                if let Some(c) = &report.decone {
                    checks.push(check("decone_agrees", c.agrees, format!("{} deconings", c.deconings)));
                }
                checks
            });
            Ok((AnyReport::Projective(Box::new(report)), checks))
        }
    }
}

/// Arrangement files (`*.json`) directly inside `dir`, in sorted order.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), message: e.to_string() })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn batch(dir: &Path, seed: usize, verify: bool, timings: bool) -> Result<BatchReport, CliError> {
    let mut files = Vec::new();
    let mut invariant_violations = 0;
    for path in corpus_files(dir)? {
        let shown = path.display().to_string();
        match batch_one(&path, seed, verify, timings) {
            Ok((report, checks)) => {
                let failed = checks.as_ref().is_some_and(|c| c.iter().any(|c| !c.passed));
                invariant_violations += usize::from(failed);
                files.push(BatchEntry {
                    path: shown,
                    status: if failed { "invariant_violation" } else { "ok" },
                    report: Some(report),
                    verify: checks,
                    error: None,
                });
            }
            Err(e) => {
                invariant_violations += usize::from(e.exit_code() == 3);
                files.push(BatchEntry {
                    path: shown,
                    status: "error",
                    report: None,
                    verify: None,
                    error: Some(ErrorOut { code: e.code(), exit_code: e.exit_code(), message: e.to_string() }),
                });
            }
        }
    }
    let ok = files.iter().filter(|f| f.status == "ok").count();
    let summary = BatchSummary { files: files.len(), ok, errored: files.iter().filter(|f| f.status == "error").count(), invariant_violations };
    Ok(BatchReport { seed, verify, summary, files })
}
