//! Exhaustive searches for planar monomials, with a resumable progress sidecar.
//!
//! Work is split into units (an exponent `t` in all-degrees mode, a pair
//! `(i, j)` in quadratic mode), processed in chunks on the current rayon pool.
//! After each chunk the sidecar `<out>.progress.json` records every completed
//! unit together with its findings, so an interrupted run picks up where it
//! stopped and produces the same bytes as an uninterrupted one.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::two_power_split;
use crate::error::{Error, Result};
use crate::gf2r::{FieldCtx, FieldDescriptor};
use crate::planarity::{
    coset_exponent, difference_table, linearized_verdict, occupancy_verdict, Occupancy, QuadraticImage,
};
use crate::report::{to_canonical_json, Format};

/// Default ceiling for quadratic mode.
pub const QUADRATIC_MAX_DEGREE: u32 = 16;
/// Quadratic-mode ceiling with `large_memory`.
pub const QUADRATIC_LARGE_MAX_DEGREE: u32 = 24;
/// Default ceiling for all-degrees mode.
pub const ALL_DEGREES_MAX_DEGREE: u32 = 12;
/// All-degrees ceiling with `long_running`.
pub const ALL_DEGREES_LONG_MAX_DEGREE: u32 = 16;
/// Planar coefficients are listed explicitly while `q - 1` is at most this.
pub const EXPAND_LIMIT: u64 = 1 << 16;

const PROGRESS_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    AllDegrees,
    Quadratic,
}

impl Mode {
    fn cap(self, opts: &SearchOptions) -> u32 {
        match self {
            Mode::AllDegrees if opts.long_running => ALL_DEGREES_LONG_MAX_DEGREE,
            Mode::AllDegrees => ALL_DEGREES_MAX_DEGREE,
            Mode::Quadratic if opts.large_memory => QUADRATIC_LARGE_MAX_DEGREE,
            Mode::Quadratic => QUADRATIC_MAX_DEGREE,
        }
    }
}

/// Cosets `gen^c (F_q^*)^g`, `c` in `indices`, on which `a c^t` is planar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetDescriptor {
    pub g: u64,
    pub indices: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub t: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<u32>,
    /// Number of planar coefficients.
    pub count: u64,
    /// Sorted encodings; empty when the field is too large to expand.
    pub planar_coefficients: Vec<u32>,
    pub coset_descriptor: CosetDescriptor,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    /// Exponents or `(i, j)` pairs examined.
    pub units: u64,
    pub findings: u64,
    /// Planar `(t, a)` pairs.
    pub planar_pairs: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub r: u32,
    pub mode: Mode,
    pub field: FieldDescriptor,
    pub findings: Vec<Finding>,
    pub totals: Totals,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchResult {
    /// Exponents with at least one planar coefficient.
    pub fn exponents(&self) -> Vec<u64> {
        self.findings.iter().map(|f| f.t).collect()
    }

    pub fn finding(&self, t: u64) -> Option<&Finding> {
        self.findings.iter().find(|f| f.t == t)
    }

    /// Rows `r,t,i,j,a_enc,planar`, one per planar `(t, a)`.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["r", "t", "i", "j", "a_enc", "planar"])?;
        let opt = |v: Option<u32>| v.map(|v| v.to_string()).unwrap_or_default();
        for f in &self.findings {
            if f.planar_coefficients.len() as u64 != f.count {
                return Err(Error::capability(format!(
                    "coefficients for t = {} were not expanded (q - 1 > {EXPAND_LIMIT})",
                    f.t
                )));
            }
            for a in &f.planar_coefficients {
                w.write_record([
                    self.r.to_string(),
                    f.t.to_string(),
                    opt(f.i),
                    opt(f.j),
                    a.to_string(),
                    "true".to_owned(),
                ])?;
            }
        }
        w.into_inner().map_err(|e| Error::Io(e.into_error()))
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Result path. The search itself only maintains the sidecar next to it;
    /// [`emit_result`] writes the result.
    pub out: Option<PathBuf>,
    pub resume: bool,
    /// Allow quadratic mode up to r = 24.
    pub large_memory: bool,
    /// Allow all-degrees mode up to r = 16.
    pub long_running: bool,
    /// Units per chunk between progress writes.
    pub chunk: usize,
    /// Stop once at least this many units are complete (for interruption tests).
    pub stop_after: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            out: None,
            resume: false,
            large_memory: false,
            long_running: false,
            chunk: 64,
            stop_after: None,
        }
    }
}

/// A unit of work: an exponent, or an `(i, j)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Unit {
    Exponent(u64),
    Pair(u32, u32),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Progress {
    schema_version: u32,
    r: u32,
    mode: Mode,
    modulus: u64,
    completed: Vec<Unit>,
    findings: Vec<Finding>,
    #[serde(default)]
    checksum: String,
}

impl Progress {
    fn digest(&self) -> Result<String> {
        let mut unsigned = self.clone();
        unsigned.checksum.clear();
        let mut value = serde_json::to_value(&unsigned)?;
        if let Some(map) = value.as_object_mut() {
            map.remove("checksum");
        }
        Ok(hex::encode(Sha256::digest(to_canonical_json(&value)?)))
    }
}

/// `<out>.progress.json`.
pub fn progress_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".progress.json");
    out.with_file_name(name)
}

/// All planar `a c^t` with `2 <= t <= q - 1`.
pub fn search_all_degrees(r: u32) -> Result<SearchResult> {
    run_search(r, Mode::AllDegrees, &SearchOptions::default())?
        .ok_or_else(|| Error::usage("search stopped early"))
}

/// All planar `a c^(2^i + 2^j)` with `0 <= i < j < r`.
pub fn search_quadratic(r: u32) -> Result<SearchResult> {
    run_search(r, Mode::Quadratic, &SearchOptions::default())?
        .ok_or_else(|| Error::usage("search stopped early"))
}

/// Runs a search on the current rayon pool. Returns `None` when stopped by
/// [`SearchOptions::stop_after`] before finishing.
pub fn run_search(r: u32, mode: Mode, opts: &SearchOptions) -> Result<Option<SearchResult>> {
    let cap = mode.cap(opts);
    if !(2..=cap).contains(&r) {
        return Err(Error::usage(format!("r = {r} outside 2..={cap} for this search mode")));
    }
    if opts.resume && opts.out.is_none() {
        return Err(Error::usage("--resume needs an output path"));
    }
    let ctx = FieldCtx::build(r)?;
    if mode == Mode::Quadratic && !ctx.has_log_table() {
        return Err(Error::capability("quadratic search needs a log table"));
    }
    run_search_in(&ctx, mode, opts)
}

pub fn run_search_in(ctx: &FieldCtx, mode: Mode, opts: &SearchOptions) -> Result<Option<SearchResult>> {
    let start = Instant::now();
    let r = ctx.degree();
    let units: Vec<Unit> = match mode {
        Mode::AllDegrees => (2..ctx.order()).map(Unit::Exponent).collect(),
        Mode::Quadratic => (0..r).flat_map(|i| (i + 1..r).map(move |j| Unit::Pair(i, j))).collect(),
    };
    let sidecar = opts.out.as_deref().map(progress_path);
    let mut progress = Progress {
        schema_version: PROGRESS_SCHEMA_VERSION,
        r,
        mode,
        modulus: ctx.modulus(),
        completed: Vec::new(),
        findings: Vec::new(),
        checksum: String::new(),
    };
    if opts.resume {
        if let Some(path) = sidecar.as_deref().filter(|p| p.exists()) {
            progress = load_progress(path, &progress)?;
        }
    }
    let done: BTreeSet<Unit> = progress.completed.iter().copied().collect();
    let pending: Vec<Unit> = units.iter().copied().filter(|u| !done.contains(u)).collect();

    for chunk in pending.chunks(opts.chunk.max(1)) {
        if let Some(limit) = opts.stop_after {
            if progress.completed.len() >= limit {
                return Ok(None);
            }
        }
        let found: Vec<Result<Option<Finding>>> = chunk.par_iter().map(|&u| search_unit(ctx, u)).collect();
        for f in found {
            if let Some(f) = f? {
                progress.findings.push(f);
            }
        }
        progress.completed.extend_from_slice(chunk);
        progress.completed.sort_unstable();
        progress.findings.sort_by_key(|f| (f.t, f.i, f.j));
        if let Some(path) = sidecar.as_deref() {
            save_progress(path, &mut progress)?;
        }
    }
    let findings = progress.findings;
    let totals = Totals {
        units: units.len() as u64,
        findings: findings.len() as u64,
        planar_pairs: findings.iter().map(|f| f.count).sum(),
    };
    Ok(Some(SearchResult { r, mode, field: ctx.descriptor(), findings, totals, elapsed: start.elapsed() }))
}

fn search_unit(ctx: &FieldCtx, unit: Unit) -> Result<Option<Finding>> {
    let n = ctx.group_order();
    let (t, split, g, indices) = match unit {
        Unit::Pair(i, j) => {
            let image = QuadraticImage::new(ctx, i, j)?;
            (image.exponent(), Some((i, j)), image.subgroup_index(), image.planar_coset_indices()?)
        }
        Unit::Exponent(t) => {
            let g = coset_exponent(t, n);
            let split = two_power_split(t);
            let indices: Vec<u64> = if t.is_power_of_two() {
                (0..g).collect()
            } else if let Some((i, j)) = split {
                let mut out = Vec::new();
                for c in 0..g {
                    if linearized_verdict(i, j, ctx.gen_pow(c), g, ctx)?.planar {
                        out.push(c);
                    }
                }
                out
            } else {
                let h = difference_table(t, ctx);
                let mut occ = Occupancy::new(ctx.order());
                let mut out = Vec::new();
                for c in 0..g {
                    if occupancy_verdict(&h, ctx.gen_pow(c), g, ctx, &mut occ)?.planar {
                        out.push(c);
                    }
                }
                out
            };
            (t, split, g, indices)
        }
    };
    if indices.is_empty() {
        return Ok(None);
    }
    let count = indices.len() as u64 * (n / g);
    let planar_coefficients = if n <= EXPAND_LIMIT { expand_cosets(ctx, g, &indices) } else { Vec::new() };
    Ok(Some(Finding {
        t,
        i: split.map(|s| s.0),
        j: split.map(|s| s.1),
        count,
        planar_coefficients,
        coset_descriptor: CosetDescriptor { g, indices },
    }))
}

/// Sorted encodings of `gen^(c + g k)` for every `c` in `indices`.
pub fn expand_cosets(ctx: &FieldCtx, g: u64, indices: &[u64]) -> Vec<u32> {
    let n = ctx.group_order();
    let step = ctx.gen_pow(g);
    let mut out = Vec::with_capacity(indices.len() * (n / g) as usize);
    for &c in indices {
        let mut a = ctx.gen_pow(c);
        for _ in 0..n / g {
            out.push(a.enc());
            a = ctx.mul(a, step);
        }
    }
    out.sort_unstable();
    out
}

fn load_progress(path: &Path, expected: &Progress) -> Result<Progress> {
    let bytes = fs::read(path)?;
    let corrupt = |why: String| Error::CorruptProgress(format!("{}: {why}", path.display()));
    let progress: Progress = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
    if progress.digest()? != progress.checksum {
        return Err(corrupt("checksum mismatch".into()));
    }
    let key = |p: &Progress| (p.schema_version, p.r, p.mode, p.modulus);
    if key(&progress) != key(expected) {
        return Err(Error::ProgressMismatch(format!(
            "{} was written for r = {}, mode = {:?}, modulus = {:#x}; this run is r = {}, mode = {:?}, modulus = {:#x}",
            path.display(),
            progress.r,
            progress.mode,
            progress.modulus,
            expected.r,
            expected.mode,
            expected.modulus
        )));
    }
    Ok(progress)
}

fn save_progress(path: &Path, progress: &mut Progress) -> Result<()> {
    progress.checksum = progress.digest()?;
    write_atomic(path, &to_canonical_json(progress)?)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Writes the result as a report file in the given format.
pub fn emit_result(result: &SearchResult, path: &Path, format: Format) -> Result<()> {
    write_atomic(path, &search_report(result).to_bytes(format)?)
}

pub(crate) fn search_report(result: &SearchResult) -> crate::report::Report {
    crate::report::Report::new(
        "search",
        result.field,
        crate::report::Payload::Search(result.clone()),
        0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::{is_planar_table, MonomialSpec};

    #[test]
    fn quadratic_small() {
        let r4 = search_quadratic(4).unwrap();
        assert_eq!(r4.exponents(), vec![5]);
        assert_eq!(r4.findings[0].count, 5);
        assert_eq!((r4.findings[0].i, r4.findings[0].j), (Some(0), Some(2)));
        assert!(search_quadratic(5).unwrap().findings.is_empty());
        let r6 = search_quadratic(6).unwrap();
        let pairs: Vec<_> = r6.findings.iter().map(|f| (f.i.unwrap(), f.j.unwrap(), f.count)).collect();
        assert_eq!(pairs, vec![(0, 3, 27), (2, 4, 14)]);
    }

    #[test]
    fn all_degrees_small() {
        let r3 = search_all_degrees(3).unwrap();
        assert_eq!(r3.exponents(), vec![2, 4]);
        assert!(r3.findings.iter().all(|f| f.count == 7));
        let r4 = search_all_degrees(4).unwrap();
        assert_eq!(r4.exponents(), vec![2, 4, 5, 8]);
        assert_eq!(r4.finding(5).unwrap().count, 5);
        assert_eq!(r4.totals.units, 14);
    }

    #[test]
    fn matches_naive_tables() {
        for r in 2..=5 {
            let ctx = FieldCtx::build(r).unwrap();
            let result = search_all_degrees(r).unwrap();
            for t in 2..ctx.order() {
                let naive: Vec<u32> = ctx
                    .nonzero()
                    .filter(|&a| {
                        let spec = MonomialSpec::new(&ctx, t, a).unwrap();
                        is_planar_table(&spec.table(&ctx), &ctx).unwrap().planar
                    })
                    .map(|a| a.enc())
                    .collect();
                let found = result.finding(t).map(|f| f.planar_coefficients.clone()).unwrap_or_default();
                assert_eq!(found, naive, "r={r} t={t}");
            }
        }
    }

    #[test]
    fn range_checks() {
        assert!(matches!(search_quadratic(1), Err(Error::Usage(_))));
        assert!(matches!(search_quadratic(17), Err(Error::Usage(_))));
        assert!(matches!(search_all_degrees(13), Err(Error::Usage(_))));
        let opts = SearchOptions { resume: true, ..Default::default() };
        assert!(matches!(run_search(4, Mode::Quadratic, &opts), Err(Error::Usage(_))));
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(progress_path(Path::new("/tmp/x.json")), PathBuf::from("/tmp/x.json.progress.json"));
    }

    #[test]
    fn csv_rows() {
        let csv = search_quadratic(4).unwrap().to_csv().unwrap();
        let text = String::from_utf8(csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "r,t,i,j,a_enc,planar");
        assert_eq!(lines.len(), 6);
        assert!(lines[1..].iter().all(|l| l.starts_with("4,5,0,2,") && l.ends_with(",true")));
    }
}
