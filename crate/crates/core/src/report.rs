//! Invariant reports, their JSON-lines cache and the corpus runner.

use std::collections::{BTreeMap, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::builder::{evaluate, parse};
use crate::error::{Error, Result};
use crate::genset;
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::structure::Analysis;
use crate::verify::{self, Theorem, TheoremVerdict};

pub const SCHEMA: u32 = 1;

/// Extension of expression files read by [`run_corpus`].
pub const CORPUS_EXTENSION: &str = "grp";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub order: usize,
    pub abelian: bool,
    pub frattini: bool,
    pub prime: Option<u32>,
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub theorem: Theorem,
    pub applicable: bool,
    pub case: Option<u8>,
    pub ok: bool,
}

impl From<&TheoremVerdict> for VerdictSummary {
    fn from(v: &TheoremVerdict) -> Self {
        VerdictSummary {
            theorem: v.theorem,
            applicable: v.applicable,
            case: v.case,
            ok: v.ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub id: String,
    pub fingerprint: String,
    pub order: Option<u128>,
    pub degree: Option<usize>,
    pub soluble: Option<bool>,
    pub d: Option<usize>,
    pub m: Option<usize>,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub spectrum: Vec<usize>,
    pub chief_factors: Vec<FactorSummary>,
    pub verdicts: Vec<VerdictSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Microseconds per stage. Not part of the deterministic content.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl Report {
    fn empty(id: String, fingerprint: String) -> Self {
        Report {
            schema: SCHEMA,
            id,
            fingerprint,
            order: None,
            degree: None,
            soluble: None,
            d: None,
            m: None,
            a: None,
            b: None,
            spectrum: Vec::new(),
            chief_factors: Vec::new(),
            verdicts: Vec::new(),
            error: None,
            timings: None,
        }
    }

    /// JSON without timings; byte-identical across runs.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timings = None;
        serde_json::to_string(&r).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// True when some applicable theorem's predicted structure was missing.
    pub fn red_flag(&self) -> bool {
        self.verdicts.iter().any(|v| v.applicable && !v.ok)
    }
}

/// SHA-256 over the degree and the sorted, deduplicated generator images.
pub fn fingerprint(g: &PermGroup) -> String {
    let mut images: Vec<&[u32]> = g.generators().iter().map(|x| x.images()).collect();
    images.sort_unstable();
    images.dedup();
    let mut h = Sha256::new();
    h.update((g.degree() as u64).to_le_bytes());
    for img in images {
        h.update([0xff]);
        for &x in img {
            h.update(x.to_le_bytes());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn source_fingerprint(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("src-{hex}")
}

/// Parses, builds and reports on one expression. Errors land in the
/// report's `error` field.
pub fn report_expression(text: &str, limits: &Limits) -> Report {
    let expr = match parse(text) {
        Ok(e) => e,
        Err(e) => {
            let mut r = Report::empty(text.trim().to_string(), source_fingerprint(text));
            r.error = Some(e.to_string());
            return r;
        }
    };
    let id = expr.to_string();
    match evaluate(&expr, limits) {
        Ok(g) => report_group(&id, &g, limits),
        Err(e) => {
            let mut r = Report::empty(id, source_fingerprint(text));
            r.error = Some(e.to_string());
            r
        }
    }
}

/// Report on a constructed group. Stops at the first failing stage and
/// keeps what was computed before it.
pub fn report_group(id: &str, g: &PermGroup, limits: &Limits) -> Report {
    report_group_with_error(id, g, limits).0
}

/// As [`report_group`], also returning the error that stopped it.
pub fn report_group_with_error(id: &str, g: &PermGroup, limits: &Limits) -> (Report, Option<Error>) {
    let mut r = Report::empty(id.to_string(), fingerprint(g));
    r.order = Some(g.order());
    r.degree = Some(g.degree());
    let mut timings = BTreeMap::new();
    let err = fill(&mut r, g, limits, &mut timings).err();
    r.error = err.as_ref().map(ToString::to_string);
    r.timings = Some(timings);
    (r, err)
}

fn fill(r: &mut Report, g: &PermGroup, limits: &Limits, timings: &mut BTreeMap<String, u64>) -> Result<()> {
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, u64>| {
        timings.insert(name.to_string(), clock.elapsed().as_micros() as u64);
        clock = Instant::now();
    };
    r.soluble = Some(crate::group::is_soluble(g));
    let analysis = Analysis::new(g, limits)?;
    let series = analysis.chief_series()?;
    r.a = Some(series.a());
    r.b = Some(series.b());
    r.chief_factors = series
        .factors
        .iter()
        .map(|f| FactorSummary {
            order: f.order(),
            abelian: f.is_abelian(),
            frattini: f.frattini,
            prime: f.prime(),
            dim: f.dim(),
        })
        .collect();
    lap("structure", timings);
    let profile = genset::spectrum(g, limits)?;
    r.d = Some(profile.d);
    r.m = Some(profile.m);
    r.spectrum = profile.spectrum.keys().copied().collect();
    lap("generation", timings);
    let verdicts = verify::verify_all(&analysis, profile.d, profile.m)?;
    r.verdicts = verdicts.iter().map(VerdictSummary::from).collect();
    lap("verdicts", timings);
    Ok(())
}

/// Reports keyed by fingerprint, backed by a JSON-lines file.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, Report>,
}

impl Cache {
    /// Reads the file if it exists. Lines that do not parse are skipped
    /// with a warning.
    pub fn open(path: impl Into<PathBuf>) -> io::Result<Self> {
        let path = path.into();
        let mut entries = HashMap::new();
        match File::open(&path) {
            Ok(f) => {
                for (no, line) in BufReader::new(f).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match Report::from_json(&line) {
                        Ok(rep) if rep.schema == SCHEMA && rep.error.is_none() => {
                            entries.insert(rep.fingerprint.clone(), rep);
                        }
                        Ok(_) => {}
                        Err(e) => log::warn!("{}:{}: skipping corrupt cache line: {e}", path.display(), no + 1),
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, fingerprint: &str) -> Option<&Report> {
        self.entries.get(fingerprint)
    }

    /// Appends error-free reports under an exclusive lock on the file.
    pub fn append(&mut self, reports: &[Report]) -> io::Result<()> {
        let fresh: Vec<&Report> = reports
            .iter()
            .filter(|r| r.error.is_none() && !self.entries.contains_key(&r.fingerprint))
            .collect();
        if fresh.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.lock()?;
        let mut buf = String::new();
        for r in &fresh {
            buf.push_str(&r.canonical_json());
            buf.push('\n');
        }
        let written = f.write_all(buf.as_bytes()).and_then(|_| f.flush());
        f.unlock()?;
        written?;
        for r in fresh {
            self.entries.insert(r.fingerprint.clone(), r.clone());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct CorpusOptions {
    pub limits: Limits,
    pub cache: Option<PathBuf>,
    /// Worker count; 0 uses the rayon default.
    pub threads: usize,
    /// Also run files marked with a `# slow` line.
    pub slow: bool,
}

/// Whether an expression file carries the `# slow` marker.
pub fn is_slow(text: &str) -> bool {
    text.lines().any(|l| l.trim() == "# slow")
}

/// One report per `.grp` file in `dir`, ordered by fingerprint and then id.
pub fn run_corpus(dir: &Path, opts: &CorpusOptions) -> io::Result<Vec<Report>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == CORPUS_EXTENSION))
        .collect();
    files.sort();
    let mut sources = Vec::new();
    for f in files {
        let text = fs::read_to_string(&f)?;
        if opts.slow || !is_slow(&text) {
            sources.push(text);
        }
    }
    let mut cache = opts.cache.as_ref().map(Cache::open).transpose()?;
    let run = |text: &String| -> Report { run_one(text, &opts.limits, cache.as_ref()) };
    let mut reports: Vec<Report> = if opts.threads == 1 {
        sources.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(io::Error::other)?;
        pool.install(|| sources.par_iter().map(run).collect())
    };
    reports.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint).then_with(|| a.id.cmp(&b.id)));
    if let Some(c) = cache.as_mut() {
        c.append(&reports)?;
    }
    Ok(reports)
}

fn run_one(text: &str, limits: &Limits, cache: Option<&Cache>) -> Report {
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| {
        let expr = match parse(text) {
            Ok(e) => e,
            Err(_) => return report_expression(text, limits),
        };
        match evaluate(&expr, limits) {
            Ok(g) => {
                let id = expr.to_string();
                if let Some(hit) = cache.and_then(|c| c.get(&fingerprint(&g))) {
                    let mut r = hit.clone();
                    r.id = id;
                    r.timings = None;
                    return r;
                }
                report_group(&id, &g, limits)
            }
            Err(_) => report_expression(text, limits),
        }
    }));
    outcome.unwrap_or_else(|_| {
        let mut r = Report::empty(text.trim().to_string(), source_fingerprint(text));
        r.error = Some("internal error: computation panicked".into());
        r
    })
}

/// CSV projection of reports, one row each.
pub fn to_csv(reports: &[Report]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "id", "fingerprint", "order", "degree", "soluble", "d", "m", "a", "b", "spectrum",
        "chief_factors", "verdicts", "error",
    ])
    .expect("in-memory write");
    let opt = |x: Option<String>| x.unwrap_or_default();
    for r in reports {
        let spectrum: Vec<String> = r.spectrum.iter().map(ToString::to_string).collect();
        let factors: Vec<String> = r
            .chief_factors
            .iter()
            .map(|f| format!("{}{}", f.order, if f.frattini { "*" } else { "" }))
            .collect();
        let verdicts: Vec<String> = r
            .verdicts
            .iter()
            .filter(|v| v.applicable)
            .map(|v| match v.case {
                Some(c) => format!("{}:{c}:{}", v.theorem, if v.ok { "ok" } else { "FAIL" }),
                None => format!("{}:{}", v.theorem, if v.ok { "ok" } else { "FAIL" }),
            })
            .collect();
        w.write_record([
            r.id.clone(),
            r.fingerprint.clone(),
            opt(r.order.map(|x| x.to_string())),
            opt(r.degree.map(|x| x.to_string())),
            opt(r.soluble.map(|x| x.to_string())),
            opt(r.d.map(|x| x.to_string())),
            opt(r.m.map(|x| x.to_string())),
            opt(r.a.map(|x| x.to_string())),
            opt(r.b.map(|x| x.to_string())),
            spectrum.join(";"),
            factors.join(";"),
            verdicts.join(";"),
            r.error.clone().unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
