//! Maximal-subgroup data files.
//!
//! ```text
//! group A5 order=60 degree=5
//! maximal 12: (1,2,3);(1,2)(3,4)
//! maximal 10: (1,2,3,4,5);(2,5)(3,4)
//! ```
//!
//! Records are separated by blank lines. `emit_library` is the inverse of
//! `parse_library` on its own output.

use interval_core::oracle::{maximal_subgroups, MaximalEntry, MaximalLibrary, MaximalRecord, Provider};
use interval_core::{Caps, PermGroup, Permutation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DatafileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{label}: maximal subgroup {index} generates order {actual}, file says {stated}")]
    OrderMismatch { label: String, index: usize, stated: u128, actual: u128 },
    #[error("{label}: maximal subgroup {index} is not proper")]
    NotProper { label: String, index: usize },
}

fn field<'a>(token: &'a str, name: &str) -> Option<&'a str> {
    token.strip_prefix(name)?.strip_prefix('=')
}

pub fn parse_library(text: &str) -> Result<MaximalLibrary, DatafileError> {
    let mut entries: Vec<MaximalEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let syntax = |message: &str| DatafileError::Syntax { line: i + 1, message: message.to_string() };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("group ") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let [label, order, degree] = tokens[..] else {
                return Err(syntax("expected `group <label> order=<n> degree=<d>`"));
            };
            let order = field(order, "order").and_then(|v| v.parse().ok()).ok_or_else(|| syntax("bad order"))?;
            let degree = field(degree, "degree").and_then(|v| v.parse().ok()).ok_or_else(|| syntax("bad degree"))?;
            entries.push(MaximalEntry { label: label.to_string(), order, degree, maximals: Vec::new() });
        } else if let Some(rest) = line.strip_prefix("maximal ") {
            let entry = entries.last_mut().ok_or_else(|| syntax("maximal line before any group line"))?;
            let (order, gens) = rest.split_once(':').ok_or_else(|| syntax("expected `maximal <order>: <perms>`"))?;
            let order = order.trim().parse().map_err(|_| syntax("bad maximal order"))?;
            let generators = gens
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| Permutation::parse(s, entry.degree))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| syntax(&e.to_string()))?;
            entry.maximals.push(MaximalRecord { order, generators });
        } else {
            return Err(syntax("expected a group or maximal line"));
        }
    }
    let lib = MaximalLibrary { entries };
    verify_library(&lib)?;
    Ok(lib)
}

/// Each listed subgroup must generate a proper subgroup of the stated order.
pub fn verify_library(lib: &MaximalLibrary) -> Result<(), DatafileError> {
    for e in &lib.entries {
        for (index, m) in e.maximals.iter().enumerate() {
            let actual = PermGroup::new(e.degree, &m.generators).map(|h| h.order()).unwrap_or(0);
            if actual != m.order {
                return Err(DatafileError::OrderMismatch { label: e.label.clone(), index, stated: m.order, actual });
            }
            if m.order >= e.order || e.order % m.order != 0 {
                return Err(DatafileError::NotProper { label: e.label.clone(), index });
            }
        }
    }
    Ok(())
}

pub fn emit_library(lib: &MaximalLibrary) -> String {
    let mut out = String::new();
    for (k, e) in lib.entries.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&format!("group {} order={} degree={}\n", e.label, e.order, e.degree));
        for m in &e.maximals {
            let gens: Vec<String> = m.generators.iter().map(Permutation::to_cycle_string).collect();
            if gens.is_empty() {
                out.push_str(&format!("maximal {}:\n", m.order));
            } else {
                out.push_str(&format!("maximal {}: {}\n", m.order, gens.join(";")));
            }
        }
    }
    out
}

/// A library entry for `g` computed by the oracle.
pub fn oracle_entry(label: &str, g: &PermGroup, caps: &Caps) -> Result<MaximalEntry, interval_core::Error> {
    let classes = maximal_subgroups(g, Provider::Oracle, caps)?;
    Ok(MaximalEntry {
        label: label.to_string(),
        order: g.order(),
        degree: g.degree(),
        maximals: classes
            .reps
            .iter()
            .map(|r| MaximalRecord { order: r.order(), generators: r.generators().to_vec() })
            .collect(),
    })
}
