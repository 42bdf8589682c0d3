//! Batch runs over group files, stored result files and their re-checking.
//!
//! Each group is processed by an independent pipeline; a failure or panic in
//! one is recorded in the manifest and never affects the others. Output is
//! independent of the number of workers.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

use crate::completion::{self, benson_bound, CertificateKind, Completion, DriverConfig};
use crate::error::{Error, Result};
use crate::grobner::GradedRing;
use crate::group::Group;
use crate::invariants::{self, DefectTable, InvariantReport};
use crate::params::{self, ParamSystem};
use crate::resolution::ResolutionCache;

/// Environment variable naming the cache root when no flag is given.
pub const CACHE_ENV: &str = "MODCOH_CACHE";
pub const RESULT_EXT: &str = "coh";
pub const MANIFEST: &str = "manifest.tsv";

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub max_degree: usize,
    pub workers: usize,
    pub cache: Option<PathBuf>,
    /// Where result files and the manifest go; nothing is written if unset.
    pub out: Option<PathBuf>,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self { max_degree: 24, workers: 1, cache: None, out: None }
    }
}

impl JobConfig {
    fn driver(&self) -> DriverConfig {
        DriverConfig { max_degree: self.max_degree, cache: self.cache.clone(), ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    Incomplete,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::Incomplete => "incomplete",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupResult {
    pub input: PathBuf,
    pub stem: String,
    pub status: Status,
    pub completion: Option<Completion>,
    pub report: Option<InvariantReport>,
    pub message: String,
}

/// Group files named directly or found (as `*.grp`, sorted) in directories.
pub fn group_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    files_with_ext(paths, "grp")
}

/// Stored result files named directly or found in directories.
pub fn result_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    files_with_ext(paths, RESULT_EXT)
}

fn files_with_ext(paths: &[PathBuf], ext: &str) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == ext))
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// The parameter system to report on: the certificate's, or the empty
/// system for the trivial group.
fn report_system(c: &Completion, ring: &GradedRing) -> Result<ParamSystem> {
    match &c.params {
        Some(s) => Ok(s.clone()),
        None => ParamSystem::analyse(ring, Vec::new()),
    }
}

/// Invariants of a completed ring, enforcing regularity ≤ 0.
pub fn report_for(g: &Group, c: &Completion) -> Result<InvariantReport> {
    let ring = c.presentation.graded_ring()?;
    let sys = report_system(c, &ring)?;
    let rep = invariants::report(g, &c.presentation, &ring, &sys)?;
    if rep.regularity > 0 {
        return Err(Error::Invariant(format!(
            "{}: regularity {} > 0, ring incomplete or computation wrong",
            g.name, rep.regularity
        )));
    }
    Ok(rep)
}

/// Full pipeline for one group.
pub fn analyse_group(g: &Group, cfg: &DriverConfig) -> Result<(Completion, Option<InvariantReport>)> {
    let c = completion::drive_to_completion(g, cfg)?;
    let rep = if c.is_complete() { Some(report_for(g, &c)?) } else { None };
    Ok((c, rep))
}

/// Result file contents: presentation, parameters, certificate, report.
pub fn result_text(c: &Completion, rep: Option<&InvariantReport>) -> Result<String> {
    let mut s = c.to_text()?;
    if let Some(r) = rep {
        for l in r.to_lines() {
            s.push_str(&l);
            s.push('\n');
        }
    }
    Ok(s)
}

fn stem_of(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "group".into())
}

fn run_one(path: &Path, cfg: &JobConfig) -> GroupResult {
    let stem = stem_of(path);
    let failed = |message: String| GroupResult {
        input: path.to_path_buf(),
        stem: stem.clone(),
        status: Status::Failed,
        completion: None,
        report: None,
        message,
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<(Completion, Option<InvariantReport>)> {
        let g = Group::load(path)?;
        let (c, rep) = analyse_group(&g, &cfg.driver())?;
        if let Some(dir) = &cfg.out {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(format!("{stem}.{RESULT_EXT}")), result_text(&c, rep.as_ref())?)?;
        }
        Ok((c, rep))
    }));
    match outcome {
        Ok(Ok((c, rep))) => {
            let status = if c.is_complete() { Status::Complete } else { Status::Incomplete };
            let message = format!("N={}", c.certificate.n);
            GroupResult { input: path.to_path_buf(), stem, status, completion: Some(c), report: rep, message }
        }
        Ok(Err(e)) => failed(e.to_string()),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            failed(format!("panic: {msg}"))
        }
    }
}

/// Runs every group file on a pool of `cfg.workers` threads. Results come
/// back in input order; the manifest is written when `cfg.out` is set.
pub fn run_batch(files: &[PathBuf], cfg: &JobConfig) -> Result<Vec<GroupResult>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let results: Vec<GroupResult> = pool.install(|| files.par_iter().map(|f| run_one(f, cfg)).collect());
    for r in &results {
        match r.status {
            Status::Failed => warn!("{}: {}", r.stem, r.message),
            _ => info!("{}: {} ({})", r.stem, r.status.as_str(), r.message),
        }
    }
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(MANIFEST), manifest(&results))?;
    }
    Ok(results)
}

/// `stem<TAB>status<TAB>message` per group.
pub fn manifest(results: &[GroupResult]) -> String {
    let mut s = String::from("group\tstatus\tdetail\n");
    for r in results {
        s.push_str(&format!("{}\t{}\t{}\n", r.stem, r.status.as_str(), r.message.replace(['\t', '\n'], " ")));
    }
    s
}

/// A parsed result file.
#[derive(Clone, Debug)]
pub struct Stored {
    pub completion: Completion,
    pub report: Option<InvariantReport>,
}

pub fn parse_stored(text: &str) -> Result<Stored> {
    let completion = Completion::from_text(text)?;
    let report = InvariantReport::from_lines(&completion.presentation.group_name, text.lines());
    Ok(Stored { completion, report })
}

pub fn load_stored(path: &Path) -> Result<Stored> {
    parse_stored(&fs::read_to_string(path)?)
}

/// The δ/e table over the complete results among `files`, plus the files
/// that could not be used.
pub fn defect_table(files: &[PathBuf]) -> (DefectTable, Vec<InvariantReport>, Vec<(PathBuf, String)>) {
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for f in files {
        match load_stored(f) {
            Ok(Stored { report: Some(r), completion }) if completion.is_complete() => reports.push(r),
            Ok(_) => skipped.push((f.clone(), "incomplete".into())),
            Err(e) => skipped.push((f.clone(), e.to_string())),
        }
    }
    (DefectTable::from_reports(&reports), reports, skipped)
}

/// Re-verifies a stored result. Returns the first violated invariant.
pub fn check_stored(text: &str, cache: Option<&ResolutionCache>) -> Result<std::result::Result<(), String>> {
    let Stored { completion: c, report } = parse_stored(text)?;
    let p = &c.presentation;
    let ring = p.graded_ring()?;
    let n = p.truncation;
    if p.ranks.len() != n + 1 {
        return Ok(Err(format!("{} ranks recorded for truncation {n}", p.ranks.len())));
    }
    let dims = ring.hilbert_series().coefficients(n);
    for (d, (&have, &want)) in dims.iter().zip(&p.ranks).enumerate() {
        if have != want as i64 {
            return Ok(Err(format!("dimension mismatch in degree {d}: ring {have}, resolution {want}")));
        }
    }
    if let Some(cache) = cache {
        if let Some(ranks) = cache.stored_ranks(&p.group_hash)? {
            let k = ranks.len().min(p.ranks.len());
            if ranks[..k] != p.ranks[..k] {
                return Ok(Err("recorded ranks disagree with the cached resolution".into()));
            }
        }
    }
    for (i, r) in p.relations.iter().enumerate() {
        let others: Vec<_> = p.relations.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        if GradedRing::new(p.ring.clone(), others)?.contains(r) {
            return Ok(Err(format!("relation {} is redundant", p.ring.format(r))));
        }
    }
    let cert = &c.certificate;
    if cert.n != n {
        return Ok(Err(format!("certificate degree {} differs from truncation {n}", cert.n)));
    }
    if !cert.verdict {
        return Ok(Err("no completion certificate".into()));
    }
    let sys = report_system(&c, &ring)?;
    match cert.kind {
        CertificateKind::Trivial => {
            if p.ring.nvars() != 0 {
                return Ok(Err("trivial certificate on a non-trivial ring".into()));
            }
        }
        CertificateKind::Periodic => {
            let ok = sys.is_good()
                && sys.len() == 1
                && sys.ann_tops[0].is_none()
                && sys.ann_tops[1].is_some_and(|t| t < sys.degrees[0] as i64)
                && sys.degrees[0] as usize <= n;
            if !ok {
                return Ok(Err("periodicity parameter does not certify completion".into()));
            }
        }
        CertificateKind::Benson => {
            if sys.filter_type.as_deref() != Some(cert.zeta_type.as_slice()) {
                return Ok(Err("recorded type differs from the parameters' type".into()));
            }
            if !completion::quillen_hsop_check(p, &sys.elements) {
                return Ok(Err("parameters are not an hsop on every maximal elementary abelian".into()));
            }
            let r = sys.len();
            let bound = benson_bound(&cert.zeta_type, &cert.kappa_degrees, r);
            let kappa = completion::best_kappa(&ring, &sys, &cert.zeta_type)?;
            if benson_bound(&cert.zeta_type, &kappa, r) > bound || cert.kappa_degrees.len() != r {
                return Ok(Err("kappa degrees are not supported by the ring".into()));
            }
            let passes = if cert.relaxed { n as i64 >= bound } else { n as i64 > bound };
            if bound != cert.bound || !passes || cert.relaxed != (p.centre_rank >= 2) {
                return Ok(Err(format!("completion inequality fails: N = {n}, bound {bound}")));
            }
        }
    }
    if let Some(r) = report {
        let a = invariants::a_invariants(&sys)?;
        if a != r.a_invariants {
            return Ok(Err("recorded a-invariants differ from the parameters".into()));
        }
        if r.regularity > 0 {
            return Ok(Err(format!("regularity {} > 0", r.regularity)));
        }
    }
    Ok(Ok(()))
}

/// Runs the parameter pipeline on a stored presentation.
pub fn params_for_stored(s: &Stored, improve: bool) -> Result<ParamSystem> {
    let p = &s.completion.presentation;
    let ring = p.graded_ring()?;
    let rank = p.restrictions.iter().map(|v| v.rank).max().unwrap_or(0);
    if rank < 2 {
        return report_system(&s.completion, &ring);
    }
    let mut sys = params::construct_parameters(p, &ring)?;
    if improve {
        sys = params::factor_improve(&ring, &sys)?;
        sys = params::replace_last_parameter(&ring, &sys)?;
    }
    Ok(sys)
}
