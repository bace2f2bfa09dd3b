//! Command dispatch.

use std::path::Path;

use affine_paths::bosonic::{identity_level0, involution_level0, BosonicResult, BosonicSum};
use affine_paths::kostka::{
    e0_hypothesis, kostka_classical, kostka_level, level_restricted_paths, Grading,
};
use affine_paths::straighten::{normalize, NormalForm, SchurSymbol};
use affine_paths::tableau::parse_shapes;
use affine_paths::{CrystalSpec, LaurentPoly, LevelWeight, RectShape, TableStore};
use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{CacheAction, Cli, Command, CommonArgs, Format, SpecArgs};
use crate::cache::TableCache;
use crate::report::*;

pub const EXIT_OK: u8 = 0;
pub const EXIT_UNEQUAL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

/// Rendered output of one command.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: u8,
}

/// A validated job: the spec plus output and cache settings.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub spec: CrystalSpec,
    pub format: Format,
    pub widen_check: bool,
}

fn input_error(msg: impl std::fmt::Display) -> anyhow::Error {
    anyhow::Error::new(affine_paths::Error::Parse(msg.to_string()))
}

fn parse_shape_list(text: &str) -> Result<Vec<RectShape>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(parse_shapes(text)?)
}

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| input_error(format!("bad integer {t:?} in {text:?}")))
        })
        .collect()
}

impl JobConfig {
    pub fn from_args(
        args: &SpecArgs,
        format: Format,
        widen_check: bool,
        default_level: Option<i64>,
    ) -> Result<Self> {
        let n = args.n;
        if n < 2 {
            return Err(affine_paths::Error::InvalidRank(n).into());
        }
        let shapes = parse_shape_list(&args.shapes)?;
        let mut spec = CrystalSpec::new(n, shapes);
        spec.level = args.level.or(default_level);
        let lambda = args
            .lambda
            .as_deref()
            .map(|s| LevelWeight::parse_selector(s, n))
            .transpose()?;
        let lambda_prime = args
            .lambda_prime
            .as_deref()
            .map(|s| LevelWeight::parse_selector(s, n))
            .transpose()?;
        if spec.level.is_none() {
            spec.level = lambda
                .as_ref()
                .or(lambda_prime.as_ref())
                .map(LevelWeight::level);
        }
        spec.lambda = lambda;
        spec.lambda_prime = lambda_prime;
        spec.b0 = args.b0.as_deref().map(str::parse).transpose()?;
        spec.validate()?;
        Ok(JobConfig {
            spec,
            format,
            widen_check,
        })
    }
}

fn spec_json(spec: &CrystalSpec, with_weights: bool) -> SpecJson {
    SpecJson {
        n: spec.rank,
        shapes: spec.shapes.iter().map(|s| s.to_string()).collect(),
        level: with_weights.then(|| spec.resolved_level()),
        lambda: with_weights.then(|| spec.resolved_lambda().selector()),
        lambda_prime: with_weights.then(|| spec.resolved_lambda_prime().selector()),
        b0: (with_weights && !spec.uses_plain_energy()).then(|| spec.resolved_b0().to_string()),
    }
}

fn spec_rows(t: &mut TextTable, s: &SpecJson) {
    t.row("n", s.n).row(
        "shapes",
        if s.shapes.is_empty() {
            "(empty)".to_string()
        } else {
            s.shapes.join(",")
        },
    );
    if let Some(l) = s.level {
        t.row("level", l);
    }
    if let Some(l) = &s.lambda {
        t.row("Lambda", l);
    }
    if let Some(l) = &s.lambda_prime {
        t.row("LambdaPrime", l);
    }
    if let Some(b) = &s.b0 {
        t.row("b0", b);
    }
}

fn emit<T: Serialize>(
    format: Format,
    report: &T,
    table: impl FnOnce() -> String,
) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Table => table(),
    })
}

/// Tables needed to grade paths over `shapes` followed by `extra`.
fn needed_pairs(shapes: &[RectShape], extra: Option<RectShape>) -> Vec<(RectShape, RectShape)> {
    let mut all = shapes.to_vec();
    all.extend(extra);
    let mut out = Vec::new();
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            if !out.contains(&(all[a], all[b])) {
                out.push((all[a], all[b]));
            }
        }
    }
    out
}

/// Table store backed by the disk cache when a directory is configured.
pub struct Session {
    pub store: TableStore,
    cache: Option<TableCache>,
    pool: rayon::ThreadPool,
}

impl Session {
    pub fn new(common: &CommonArgs) -> Result<Self> {
        let cache = common
            .cache_dir
            .as_deref()
            .map(TableCache::open)
            .transpose()?;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = common.jobs {
            if j == 0 {
                return Err(input_error("--jobs must be at least 1"));
            }
            builder = builder.num_threads(j);
        }
        Ok(Session {
            store: TableStore::new(),
            cache,
            pool: builder.build()?,
        })
    }

    fn prepare(
        &mut self,
        rank: usize,
        shapes: &[RectShape],
        extra: Option<RectShape>,
    ) -> Result<()> {
        if let Some(cache) = &mut self.cache {
            cache.fill(&mut self.store, rank, &needed_pairs(shapes, extra))?;
        }
        Ok(())
    }

    fn prepare_spec(&mut self, spec: &CrystalSpec) -> Result<()> {
        let extra = (!spec.uses_plain_energy()).then(|| spec.resolved_b0());
        self.prepare(spec.rank, &spec.shapes, extra)
    }

    fn warnings(&mut self) -> Vec<String> {
        self.cache
            .as_mut()
            .map(TableCache::take_warnings)
            .unwrap_or_default()
    }

    /// Alternating sum evaluated in parallel over permutations.
    fn bosonic(&self, sum: &BosonicSum, bound: i64) -> BosonicResult {
        let (polynomial, summand_count) = self.pool.install(|| {
            sum.permutations()
                .par_iter()
                .map(|tau| sum.term(tau, bound))
                .reduce(
                    || (LaurentPoly::zero(), 0),
                    |(a, x), (b, y)| (&a + &b, x + y),
                )
        });
        BosonicResult {
            polynomial,
            summand_count,
            bound,
        }
    }
}

fn cmd_kostka(session: &mut Session, cfg: &JobConfig, partition: Option<&str>) -> Result<Outcome> {
    let spec = &cfg.spec;
    session.prepare_spec(spec)?;
    let (report, lambda) = match partition {
        Some(text) => {
            let lambda = parse_ints(text)?;
            let k = kostka_classical(spec, &lambda, &mut session.store)?;
            let report = KostkaReport {
                schema: SCHEMA_KOSTKA,
                spec: spec_json(spec, false),
                lambda: Some(lambda.clone()),
                polynomial: poly_pairs(&k.polynomial),
                path_count: k.path_count,
                e0_hypothesis: None,
            };
            (report, Some(lambda))
        }
        None => {
            let k = kostka_level(spec, &mut session.store)?;
            let report = KostkaReport {
                schema: SCHEMA_KOSTKA,
                spec: spec_json(spec, true),
                lambda: None,
                polynomial: poly_pairs(&k.polynomial),
                path_count: k.path_count,
                e0_hypothesis: e0_hypothesis(spec, &mut session.store)?,
            };
            (report, None)
        }
    };
    let stdout = emit(cfg.format, &report, || {
        let mut t = TextTable::default();
        spec_rows(&mut t, &report.spec);
        if let Some(l) = &lambda {
            t.row(
                "lambda",
                l.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            );
        }
        t.row("paths", report.path_count)
            .poly("polynomial", &report.polynomial);
        t.render()
    })?;
    Ok(Outcome {
        stdout,
        warnings: session.warnings(),
        code: EXIT_OK,
    })
}

fn verify_table(r: &VerifyReport) -> String {
    let mut t = TextTable::default();
    spec_rows(&mut t, &r.spec);
    t.poly("lhs", &r.lhs_polynomial)
        .poly("rhs", &r.rhs_polynomial);
    t.row("equal", r.equal)
        .row("summands", r.summand_count)
        .row("bound", r.truncation_bound);
    if let Some(w) = &r.widened {
        t.row("widened bound", w.bound)
            .row("widened equal", w.equal);
    }
    if let Some(p) = r.restricted_paths {
        t.row("restricted paths", p);
    }
    if let Some(a) = r.applicable {
        t.row("applicable", a);
    }
    if let Some(p) = r.pairing_size {
        t.row("pairs", p);
    }
    if let Some(h) = r.e0_hypothesis {
        t.row("e0 hypothesis", h);
    }
    t.render()
}

fn finish_verify(
    session: &mut Session,
    mut report: VerifyReport,
    format: Format,
    ok: bool,
) -> Result<Outcome> {
    let mut warnings = session.warnings();
    if report.e0_hypothesis == Some(false) {
        warnings.push("the e_0 compatibility hypothesis fails for this ground state".into());
    }
    if report.applicable == Some(false) {
        warnings.push("no restricted path: the identity's hypothesis does not hold".into());
    }
    report.warnings = warnings.clone();
    let stdout = emit(format, &report, || verify_table(&report))?;
    Ok(Outcome {
        stdout,
        warnings,
        code: if ok { EXIT_OK } else { EXIT_UNEQUAL },
    })
}

fn widened(session: &Session, sum: &BosonicSum, base: &BosonicResult, on: bool) -> Option<Widened> {
    on.then(|| {
        let wide = session.bosonic(sum, base.bound + 2);
        Widened {
            bound: wide.bound,
            equal: wide.polynomial == base.polynomial,
        }
    })
}

fn cmd_verify(session: &mut Session, cfg: &JobConfig) -> Result<Outcome> {
    let spec = &cfg.spec;
    session.prepare_spec(spec)?;
    let sum = BosonicSum::new(spec, &mut session.store)?;
    let lhs = session.bosonic(&sum, sum.bound());
    let rhs = kostka_level(spec, &mut session.store)?;
    let widened = widened(session, &sum, &lhs, cfg.widen_check);
    let equal = lhs.polynomial == rhs.polynomial;
    let ok = equal && widened.as_ref().is_none_or(|w| w.equal);
    let report = VerifyReport {
        schema: SCHEMA_VERIFY,
        spec: spec_json(spec, true),
        lhs_polynomial: poly_pairs(&lhs.polynomial),
        rhs_polynomial: poly_pairs(&rhs.polynomial),
        equal,
        summand_count: lhs.summand_count,
        truncation_bound: lhs.bound,
        widened,
        restricted_paths: Some(rhs.path_count),
        applicable: None,
        pairing_size: None,
        e0_hypothesis: e0_hypothesis(spec, &mut session.store)?,
        warnings: Vec::new(),
    };
    finish_verify(session, report, cfg.format, ok)
}

fn cmd_verify_one(session: &mut Session, cfg: &JobConfig) -> Result<Outcome> {
    let spec = &cfg.spec;
    if spec.resolved_level() != 1 {
        bail!(affine_paths::Error::Unsupported(format!(
            "level {} is not 1",
            spec.resolved_level()
        )));
    }
    if let Some(s) = spec.shapes.iter().find(|s| s.cols != 1) {
        bail!(affine_paths::Error::Unsupported(format!(
            "factor {s} is not a single column"
        )));
    }
    session.prepare_spec(spec)?;
    let sum = BosonicSum::new(spec, &mut session.store)?;
    let lhs = session.bosonic(&sum, sum.bound());
    let paths = level_restricted_paths(spec)?;
    let grading = Grading::for_spec(spec, &mut session.store)?;
    let mut rhs = LaurentPoly::zero();
    for p in &paths {
        rhs.add_term(1, grading.energy(p));
    }
    let widened = widened(session, &sum, &lhs, cfg.widen_check);
    let equal = lhs.polynomial == rhs && paths.len() <= 1;
    let applicable = !paths.is_empty();
    let ok = (equal || !applicable) && widened.as_ref().is_none_or(|w| w.equal);
    let report = VerifyReport {
        schema: SCHEMA_VERIFY_ONE,
        spec: spec_json(spec, true),
        lhs_polynomial: poly_pairs(&lhs.polynomial),
        rhs_polynomial: poly_pairs(&rhs),
        equal,
        summand_count: lhs.summand_count,
        truncation_bound: lhs.bound,
        widened,
        restricted_paths: Some(paths.len()),
        applicable: Some(applicable),
        pairing_size: None,
        e0_hypothesis: e0_hypothesis(spec, &mut session.store)?,
        warnings: Vec::new(),
    };
    finish_verify(session, report, cfg.format, ok)
}

fn cmd_verify_zero(
    session: &mut Session,
    n: usize,
    shapes: &str,
    format: Format,
    widen_check: bool,
) -> Result<Outcome> {
    let shapes = parse_shape_list(shapes)?;
    let spec = CrystalSpec::new(n, shapes.clone());
    spec.validate()?;
    session.prepare(n, &shapes, None)?;
    let r = identity_level0(n, &shapes, &mut session.store)?;
    let pairing = if shapes.is_empty() {
        None
    } else {
        let c = involution_level0(n, &shapes, &mut session.store)?;
        if c.summand_count != r.summand_count || c.summand_count != 2 * c.pairing_size {
            bail!(affine_paths::Error::Involution(
                "pairing does not cover every summand".into()
            ));
        }
        Some(c.pairing_size)
    };
    let widened = widen_check.then(|| -> Result<Widened> {
        let sum = BosonicSum::level_zero(n, &shapes, &mut session.store)?;
        let wide = session.bosonic(&sum, r.truncation_bound + 2);
        Ok(Widened {
            bound: wide.bound,
            equal: wide.polynomial == r.lhs,
        })
    });
    let widened = widened.transpose()?;
    let ok = r.equal && widened.as_ref().is_none_or(|w| w.equal);
    let report = VerifyReport {
        schema: SCHEMA_VERIFY_ZERO,
        spec: spec_json(&spec, false),
        lhs_polynomial: poly_pairs(&r.lhs),
        rhs_polynomial: poly_pairs(&r.rhs),
        equal: r.equal,
        summand_count: r.summand_count,
        truncation_bound: r.truncation_bound,
        widened,
        restricted_paths: None,
        applicable: None,
        pairing_size: pairing,
        e0_hypothesis: None,
        warnings: Vec::new(),
    };
    finish_verify(session, report, format, ok)
}

fn cmd_straighten(
    tokens: &[String],
    n: Option<usize>,
    level: Option<i64>,
    alpha: Option<&str>,
    format: Format,
) -> Result<Outcome> {
    let (mut n, mut level, mut alpha) = (n, level, alpha.map(parse_ints).transpose()?);
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| input_error(format!("expected key=value, got {tok:?}")))?;
        match k.trim() {
            "n" => {
                n = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| input_error(format!("bad rank {v:?}")))?,
                )
            }
            "l" | "level" => {
                level = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| input_error(format!("bad level {v:?}")))?,
                )
            }
            "alpha" => alpha = Some(parse_ints(v)?),
            other => return Err(input_error(format!("unknown key {other:?}"))),
        }
    }
    let alpha = alpha.ok_or_else(|| input_error("alpha is required"))?;
    let n = n.unwrap_or(alpha.len());
    let level = level.ok_or_else(|| input_error("level l is required"))?;
    if alpha.len() != n {
        return Err(affine_paths::Error::LengthMismatch {
            left: n,
            right: alpha.len(),
        }
        .into());
    }
    if level < 1 {
        return Err(affine_paths::Error::Unsupported(format!("level {level} < 1")).into());
    }
    let result = match normalize(&SchurSymbol::new(alpha.clone(), level))? {
        NormalForm::Zero => StraightenResult::Zero("zero"),
        NormalForm::Term { sign, qpow, beta } => StraightenResult::Term { sign, qpow, beta },
    };
    let report = StraightenReport {
        schema: SCHEMA_STRAIGHTEN,
        n,
        level,
        alpha,
        result,
    };
    let stdout = emit(format, &report, || {
        let mut t = TextTable::default();
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        t.row("n", n)
            .row("level", level)
            .row("alpha", join(&report.alpha));
        match &report.result {
            StraightenResult::Zero(_) => t.row("result", "zero"),
            StraightenResult::Term { sign, qpow, beta } => t
                .row("sign", sign)
                .row("qpow", qpow)
                .row("beta", join(beta)),
        };
        t.render()
    })?;
    Ok(Outcome {
        stdout,
        warnings: Vec::new(),
        code: EXIT_OK,
    })
}

fn entry_json(cache_dir: &Path, e: &crate::cache::Entry) -> CacheEntryJson {
    CacheEntryJson {
        file: e
            .file
            .strip_prefix(cache_dir)
            .unwrap_or(&e.file)
            .display()
            .to_string(),
        checksum: e.checksum.clone(),
        status: e
            .defect
            .as_ref()
            .map_or_else(|| "ok".to_string(), |d| d.to_string()),
    }
}

fn cmd_cache(common: &CommonArgs, action: &CacheAction) -> Result<Outcome> {
    let dir = common
        .cache_dir
        .as_deref()
        .ok_or_else(|| input_error("cache commands need --cache-dir or CRYSTAL_CACHE_DIR"))?;
    let mut cache = TableCache::open(dir)?;
    let (name, removed) = match action {
        CacheAction::List => ("list", None),
        CacheAction::Build { n, shapes } => {
            let shapes = parse_shape_list(shapes)?;
            CrystalSpec::new(*n, shapes.clone()).validate()?;
            let mut pairs = Vec::new();
            for &a in &shapes {
                for &b in &shapes {
                    if !pairs.contains(&(a, b)) {
                        pairs.push((a, b));
                    }
                }
            }
            cache.fill(&mut TableStore::new(), *n, &pairs)?;
            ("build", None)
        }
        CacheAction::Clear => ("clear", Some(cache.clear()?)),
    };
    let warnings = cache.take_warnings();
    let entries: Vec<CacheEntryJson> = cache
        .list()?
        .iter()
        .map(|e| entry_json(cache.dir(), e))
        .collect();
    let report = CacheReport {
        schema: SCHEMA_CACHE,
        action: name,
        entries,
        removed,
        warnings: warnings.clone(),
    };
    let stdout = emit(common.format, &report, || {
        let mut t = TextTable::default();
        for e in &report.entries {
            t.row(
                &e.file,
                format!("{}  {}", e.status, e.checksum.as_deref().unwrap_or("-")),
            );
        }
        if let Some(r) = removed {
            t.row("removed", r);
        }
        if report.entries.is_empty() && removed.is_none() {
            t.row("(no entries)", "");
        }
        t.render()
    })?;
    Ok(Outcome {
        stdout,
        warnings,
        code: EXIT_OK,
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    match &cli.command {
        Command::Kostka { spec, partition } => {
            let cfg = JobConfig::from_args(spec, common.format, false, None)?;
            cmd_kostka(&mut Session::new(common)?, &cfg, partition.as_deref())
        }
        Command::Verify { spec, widen_check } => {
            let cfg = JobConfig::from_args(spec, common.format, *widen_check, None)?;
            cmd_verify(&mut Session::new(common)?, &cfg)
        }
        Command::VerifyOne { spec, widen_check } => {
            let cfg = JobConfig::from_args(spec, common.format, *widen_check, Some(1))?;
            cmd_verify_one(&mut Session::new(common)?, &cfg)
        }
        Command::VerifyZero {
            n,
            shapes,
            widen_check,
        } => cmd_verify_zero(
            &mut Session::new(common)?,
            *n,
            shapes,
            common.format,
            *widen_check,
        ),
        Command::Straighten {
            tokens,
            n,
            level,
            alpha,
        } => cmd_straighten(tokens, *n, *level, alpha.as_deref(), common.format),
        Command::Cache { action } => cmd_cache(common, action),
    }
}

/// Exit status for a failed command: mathematical discrepancies map to 1,
/// everything else to 2.
pub fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<affine_paths::Error>() {
        Some(
            affine_paths::Error::Involution(_)
            | affine_paths::Error::InconsistentEnergy(_)
            | affine_paths::Error::NonTermination,
        ) => EXIT_UNEQUAL,
        _ => EXIT_INVALID,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_follow_path_order_without_repeats() {
        let s = |t: &str| t.parse::<RectShape>().unwrap();
        let got = needed_pairs(&[s("1x1"), s("1x2"), s("1x1")], Some(s("1x3")));
        let want = [
            ("1x1", "1x2"),
            ("1x1", "1x1"),
            ("1x1", "1x3"),
            ("1x2", "1x1"),
            ("1x2", "1x3"),
        ];
        assert_eq!(got, want.map(|(a, b)| (s(a), s(b))));
    }

    #[test]
    fn discrepancies_map_to_one() {
        let e = |x: affine_paths::Error| exit_code_for(&anyhow::Error::new(x));
        assert_eq!(e(affine_paths::Error::NonTermination), EXIT_UNEQUAL);
        assert_eq!(e(affine_paths::Error::Involution("x".into())), EXIT_UNEQUAL);
        assert_eq!(e(affine_paths::Error::InvalidRank(1)), EXIT_INVALID);
        assert_eq!(exit_code_for(&anyhow::anyhow!("io")), EXIT_INVALID);
    }
}
