//! Command implementations behind the `oprank` binary.
//!
//! Each command returns an [`Outcome`]: the rendered output and an exit
//! status. Rank and residue tables are cached on disk under a
//! content-addressed key when a cache directory is configured.
//!
//! ```
//! use oprank::{cmd_table, Cache, Format};
//! use overpartition_ranks::Method;
//!
//! let out = cmd_table(4, Method::Lambert, None, Format::Json, &Cache::disabled()).unwrap();
//! assert_eq!(out.exit as i32, 0);
//! assert!(out.body.contains("\"14\""));
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use congruence_lab::{decomposition_holds, scan_progressions, verify_claim, CongruenceClaim, CongruenceError};
use identity_verifier::{verify_with_table, IdentityError, IdentitySpec};
use maass_numerics::suite::maass_suite;
use maass_numerics::{check_transform, EvalConfig, MaassError, ResidualReport, TransformCase, UpperHalfPoint};
use overpartition_ranks::{pbar_values, rank_table, residue_table_direct, Method, RankError, RankTable, ResidueTable};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "OPRANK_CACHE_DIR";

/// Part of every cache key; bump when a cached format changes.
pub const CACHE_TAG: &str = concat!("oprank-", env!("CARGO_PKG_VERSION"), "-1");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Numeric = 3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit: Exit,
    pub body: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) => Exit::Usage,
            CliError::Numeric(_) => Exit::Numeric,
            CliError::Io(_) => Exit::Fail,
        }
    }
}

impl From<RankError> for CliError {
    fn from(e: RankError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<MaassError> for CliError {
    fn from(e: MaassError) -> Self {
        match e {
            MaassError::ConvergenceDomain(_) | MaassError::PoleHit(_) | MaassError::QuadratureFailure { .. } => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Write `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// From [`CACHE_ENV`]; unset or empty disables caching.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::at(d),
            _ => Cache::disabled(),
        }
    }

    pub fn key(kind: &str, params: &Value) -> String {
        let canonical = json!({ "kind": kind, "params": params, "tag": CACHE_TAG }).to_string();
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// A cached value, or `None` if absent or unreadable.
    pub fn load(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, v: &Value) -> Result<()> {
        if let Some(p) = self.path(key) {
            write_atomic(&p, v.to_string().as_bytes())?;
        }
        Ok(())
    }

    pub fn rank_table(&self, method: Method, max_n: usize) -> Result<RankTable> {
        let key = Cache::key("rank_table", &json!({ "method": method.name(), "max_n": max_n }));
        if let Some(t) = self.load(&key).and_then(|v| RankTable::from_json(&v).ok()) {
            return Ok(t);
        }
        let t = rank_table(method, max_n)?;
        self.store(&key, &t.to_json())?;
        Ok(t)
    }

    pub fn residue_table(&self, t: u32, max_n: usize) -> Result<ResidueTable> {
        let key = Cache::key("residue_table", &json!({ "t": t, "max_n": max_n }));
        if let Some(tab) = self.load(&key).and_then(|v| ResidueTable::from_json(&v).ok()) {
            return Ok(tab);
        }
        let tab = residue_table_direct(t, max_n)?;
        self.store(&key, &tab.to_json())?;
        Ok(tab)
    }
}

fn render<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn outcome<T: Serialize>(pass: bool, v: &T) -> Outcome {
    Outcome { exit: if pass { Exit::Pass } else { Exit::Fail }, body: render(v) }
}

/// `i`, `2i`, `-0.5i`, `0.2+i`, `0.2+1.5i`, `-0.3-0.1i`, `1.5`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot read {s:?} as a complex number (forms: 0.2+1.5i, 2i, i, 1.5)");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not a leading sign or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

pub fn eval_config(tol: Option<f64>, trunc: Option<usize>) -> Result<EvalConfig> {
    let mut cfg = EvalConfig::default();
    if let Some(t) = tol {
        cfg.quad_tol = t;
    }
    if let Some(n) = trunc {
        cfg.series_trunc = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn check_c(c: i64) -> Result<()> {
    if c == 2 {
        return Err(CliError::Usage(
            "c = 2 is excluded: the a/c family needs c ≠ 2 (u = −1 has its own completion M(−1;z))".into(),
        ));
    }
    Ok(())
}

pub fn cmd_table(max_n: usize, method: Method, t: Option<u32>, format: Format, cache: &Cache) -> Result<Outcome> {
    match (t, format) {
        (None, Format::Csv) => Err(CliError::Usage("CSV output is only available for residue tables (--t)".into())),
        (None, Format::Json) => {
            let tab = cache.rank_table(method, max_n)?;
            Ok(outcome(true, &json!({ "method": method.name(), "table": tab.to_json() })))
        }
        (Some(t), Format::Json) => {
            let tab = cache.residue_table(t, max_n)?;
            Ok(outcome(true, &json!({ "t": t, "table": tab.to_json() })))
        }
        (Some(t), Format::Csv) => {
            let tab = cache.residue_table(t, max_n)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for rec in tab.csv_records() {
                w.write_record(&rec).map_err(|e| CliError::Io(e.into()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(Outcome { exit: Exit::Pass, body: String::from_utf8(bytes).expect("ascii") })
        }
    }
}

pub fn cmd_diff_tables(max_n: usize, left: Method, right: Method, cache: &Cache) -> Result<Outcome> {
    let (a, b) = (cache.rank_table(left, max_n)?, cache.rank_table(right, max_n)?);
    let diffs: Vec<Value> = a
        .diff(&b)
        .into_iter()
        .map(|(m, n, x, y)| json!({ "m": m, "n": n, "left": x.to_string(), "right": y.to_string() }))
        .collect();
    let pbar_equal = a.pbar_all() == b.pbar_all();
    let pass = diffs.is_empty() && pbar_equal;
    Ok(outcome(
        pass,
        &json!({ "max_n": max_n, "left": left.name(), "right": right.name(), "pbar_equal": pbar_equal, "differences": diffs }),
    ))
}

/// `id` is 1–5, or `None` for all five.
pub fn cmd_check_identity(id: Option<u8>, depth: usize, cache: &Cache) -> Result<Outcome> {
    let specs = match id {
        Some(i) => vec![IdentitySpec::builtin(i)?],
        None => IdentitySpec::all(),
    };
    let mut reports = Vec::new();
    for s in &specs {
        let max_n = (s.trunc_for(depth) as usize).max(1) - 1;
        let tab = cache.residue_table(s.ell, max_n)?;
        reports.push(verify_with_table(s, depth, &tab)?);
    }
    let pass = reports.iter().all(|r| r.passed());
    Ok(outcome(pass, &json!({ "depth": depth, "reports": reports })))
}

pub fn cmd_scan(t: u32, ell: u64, j: u32, a_max: u64, n_max: usize, cache: &Cache) -> Result<Outcome> {
    if a_max == 0 {
        return Err(CliError::Usage("--a-max must be at least 1".into()));
    }
    let depth = a_max as usize * (n_max + 1);
    let tab = cache.residue_table(t, depth)?;
    let hits = scan_progressions(t, ell, j, a_max, n_max, &tab)?;
    let pbar = pbar_values(depth);
    let decomposition = (1..=a_max).all(|a| (0..a).all(|b| decomposition_holds(&tab, a, b, n_max, &pbar)));
    Ok(outcome(
        true,
        &json!({
            "t": t, "ell": ell, "j": j, "a_max": a_max, "n_max": n_max,
            "note": "hits pass to n_max only; they are not proofs",
            "decomposition_exact": decomposition,
            "hits": hits,
        }),
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify_claim(
    a: u64,
    b: u64,
    t: u32,
    ell: u64,
    j: u32,
    r_set: Option<Vec<u32>>,
    n_max: usize,
    cache: &Cache,
) -> Result<Outcome> {
    let claim = match r_set {
        Some(r) => CongruenceClaim::new(a, b, t, ell, j, r)?,
        None => CongruenceClaim::all_residues(a, b, t, ell, j)?,
    };
    let tab = cache.residue_table(t, a as usize * n_max + b as usize)?;
    let report = verify_claim(&claim, &tab, n_max)?;
    Ok(outcome(report.status.passed(), &report))
}

fn residual_exit(reports: &[ResidualReport]) -> Exit {
    if reports.iter().any(|r| r.numeric_failure) {
        Exit::Numeric
    } else if reports.iter().all(|r| r.converged) {
        Exit::Pass
    } else {
        Exit::Fail
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_check_transform(
    case: u8,
    a: i64,
    c: i64,
    h: i64,
    k: i64,
    w: Complex64,
    target: f64,
    cfg: &EvalConfig,
) -> Result<Outcome> {
    check_c(c)?;
    let tc = TransformCase::new(a, c, h, k, w)?;
    let params = json!({ "case": case, "a": a, "c": c, "h": h, "k": k, "w": [w.re, w.im] });
    let r = check_transform(case, &tc, cfg);
    if let Err(e @ (MaassError::BadParams(_) | MaassError::BadMatrix(_))) = &r {
        return Err(CliError::Usage(e.to_string()));
    }
    let report = ResidualReport::from_result(&format!("transform_case_{case}"), params, r, target, cfg);
    let exit = residual_exit(std::slice::from_ref(&report));
    Ok(Outcome { exit, body: render(&report) })
}

pub fn cmd_maass_suite(a: i64, c: i64, zs: &[Complex64], cfg: &EvalConfig) -> Result<Outcome> {
    check_c(c)?;
    if zs.is_empty() {
        return Err(CliError::Usage("give at least one --z".into()));
    }
    let pts = zs.iter().map(|&z| UpperHalfPoint::new(z)).collect::<std::result::Result<Vec<_>, _>>()?;
    let reports = maass_suite(a, c, &pts, cfg)?;
    let exit = residual_exit(&reports);
    Ok(Outcome { exit, body: render(&json!({ "a": a, "c": c, "reports": reports })) })
}
