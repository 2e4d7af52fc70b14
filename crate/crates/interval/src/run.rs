//! Running the three methods, cross-checking them and tabulating timings.

use std::fmt::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use interval_core::block::intermediate_by_blocks;
use interval_core::maximal::{intermediate_subgroups, IntervalOptions, SmallCPolicy};
use interval_core::oracle::{intermediate_oracle, MaximalLibrary};
use interval_core::util::factorize;
use interval_core::{Caps, LatticeInterval, PermGroup};
use thiserror::Error;

use crate::spec::{GroupSpec, SpecError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Maximal,
    Block,
    Oracle,
    All,
}

impl Method {
    pub const CONCRETE: [Method; 3] = [Method::Maximal, Method::Block, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Maximal => "maximal",
            Method::Block => "block",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "maximal" => Ok(Method::Maximal),
            "block" => Ok(Method::Block),
            "oracle" => Ok(Method::Oracle),
            "all" => Ok(Method::All),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Group(#[from] interval_core::Error),
    #[error("{left} and {right} disagree: {diff}")]
    Mismatch { left: &'static str, right: &'static str, diff: String },
}

impl RunError {
    /// 2 for input errors, 3 for exceeded caps, 4 for cross-check failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Spec(SpecError::Syntax { .. }) => 2,
            RunError::Spec(SpecError::Group { source, .. }) | RunError::Group(source) if source.is_cap() => 3,
            RunError::Spec(_) => 2,
            RunError::Group(_) => 1,
            RunError::Mismatch { .. } => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub caps: Caps,
    pub orbit_filter: bool,
    pub small_c: SmallCPolicy,
    pub library: Option<MaximalLibrary>,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            caps: Caps::default(),
            orbit_filter: true,
            small_c: SmallCPolicy::Auto,
            library: None,
            seed: 1,
        }
    }
}

impl Settings {
    pub fn options(&self) -> IntervalOptions<'_> {
        IntervalOptions {
            caps: self.caps,
            orbit_filter: self.orbit_filter,
            small_c: self.small_c,
            library: self.library.as_ref(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IntervalReport {
    pub method: Method,
    pub interval: LatticeInterval,
    pub wall_time: Duration,
}

impl IntervalReport {
    pub fn count(&self) -> usize {
        self.interval.len()
    }
}

fn expand(methods: &[Method]) -> Vec<Method> {
    let mut out = Vec::new();
    for &m in methods {
        let list: &[Method] = if m == Method::All { &Method::CONCRETE } else { std::slice::from_ref(&m) };
        for &x in list {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

pub fn run_method(g: &PermGroup, u: &PermGroup, method: Method, settings: &Settings) -> Result<IntervalReport, RunError> {
    let start = Instant::now();
    let interval = match method {
        Method::Maximal => intermediate_subgroups(g, u, &settings.options())?,
        Method::Block => intermediate_by_blocks(g, u, &settings.caps)?,
        Method::Oracle => intermediate_oracle(g, u, &settings.caps)?,
        Method::All => unreachable!("expanded by the caller"),
    };
    Ok(IntervalReport { method, interval, wall_time: start.elapsed() })
}

/// Runs each requested method; with more than one, all results must agree.
pub fn run_methods(g: &PermGroup, u: &PermGroup, methods: &[Method], settings: &Settings) -> Result<Vec<IntervalReport>, RunError> {
    let reports = expand(methods)
        .into_iter()
        .map(|m| run_method(g, u, m, settings))
        .collect::<Result<Vec<_>, _>>()?;
    check_agreement(&reports)?;
    Ok(reports)
}

pub fn check_agreement(reports: &[IntervalReport]) -> Result<(), RunError> {
    if let Some((first, rest)) = reports.split_first() {
        for r in rest {
            if let Some(diff) = first.interval.diff(&r.interval) {
                return Err(RunError::Mismatch { left: first.method.name(), right: r.method.name(), diff });
            }
        }
    }
    Ok(())
}

pub fn run(spec: &GroupSpec, methods: &[Method], settings: &Settings) -> Result<Vec<IntervalReport>, RunError> {
    let g = spec.group()?;
    let u = spec.subgroup(&g, settings.seed, &settings.caps)?;
    run_methods(&g, &u, methods, settings)
}

/// `2^3*3*5` style factorization; `1` for 1.
pub fn factorization_string(n: u128) -> String {
    if n == 1 {
        return "1".into();
    }
    factorize(n)
        .into_iter()
        .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub label: String,
    pub index: Option<u128>,
    /// Per method: count and time, or the error it raised.
    pub results: Vec<(Method, Result<(usize, Duration), String>)>,
}

impl BenchRow {
    /// Counts agree across the methods that finished.
    pub fn consistent(&self) -> bool {
        let counts: Vec<usize> = self.results.iter().filter_map(|r| r.1.as_ref().ok().map(|x| x.0)).collect();
        counts.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn bench(specs: &[GroupSpec], methods: &[Method], settings: &Settings) -> Vec<BenchRow> {
    specs
        .iter()
        .map(|spec| {
            let wanted = expand(spec.methods.as_deref().unwrap_or(methods));
            let groups = spec.group().and_then(|g| {
                let u = spec.subgroup(&g, settings.seed, &settings.caps)?;
                Ok((g, u))
            });
            match groups {
                Err(e) => BenchRow {
                    label: spec.label.clone(),
                    index: None,
                    results: wanted.iter().map(|&m| (m, Err(e.to_string()))).collect(),
                },
                Ok((g, u)) => BenchRow {
                    label: spec.label.clone(),
                    index: Some(g.order() / u.order()),
                    results: wanted
                        .iter()
                        .map(|&m| {
                            let r = run_method(&g, &u, m, settings)
                                .map(|r| (r.count(), r.wall_time))
                                .map_err(|e| e.to_string());
                            (m, r)
                        })
                        .collect(),
                },
            }
        })
        .collect()
}

/// Aligned text table: label, index, count, then one time column per method.
pub fn format_table(rows: &[BenchRow], methods: &[Method]) -> String {
    let methods = expand(methods);
    let mut header = vec!["label".to_string(), "index".to_string(), "count".to_string()];
    header.extend(methods.iter().map(|m| format!("{} (s)", m.name())));
    let mut table = vec![header];
    for row in rows {
        let counts: Vec<usize> = row.results.iter().filter_map(|r| r.1.as_ref().ok().map(|x| x.0)).collect();
        let count = match counts.first() {
            None => "-".to_string(),
            Some(c) if row.consistent() => c.to_string(),
            Some(_) => counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("/") + " MISMATCH",
        };
        let mut cells = vec![row.label.clone(), row.index.map_or("-".into(), factorization_string), count];
        for m in &methods {
            let cell = match row.results.iter().find(|r| r.0 == *m) {
                None => "".to_string(),
                Some((_, Ok((_, t)))) => format!("{:.3}", t.as_secs_f64()),
                Some((_, Err(e))) => format!("error: {e}"),
            };
            cells.push(cell);
        }
        table.push(cells);
    }
    let widths: Vec<usize> = (0..table[0].len()).map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in &table {
        let line: Vec<String> = r.iter().zip(&widths).map(|(cell, w)| format!("{cell:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}
