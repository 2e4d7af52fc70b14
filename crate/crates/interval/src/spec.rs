//! Group spec files.
//!
//! ```text
//! label S4/C4
//! degree 4
//! gen (1,2,3,4)
//! gen (1,2)
//! subgroup gens
//! sgen (1,2,3,4)
//! ```
//!
//! `subgroup` takes a rule: `trivial`, `sylow:<p>`, `derived-of-sylow:<p>`,
//! `gens:<perm>;<perm>` or a bare `gens` followed by `sgen` lines. A new
//! `label` line starts a new record, so one file can hold a whole corpus.

use std::fmt;
use std::str::FromStr;

use interval_core::sylow::{derived_subgroup, sylow_subgroup};
use interval_core::{Caps, PermGroup, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::run::Method;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{label}: {source}")]
    Group {
        label: String,
        #[source]
        source: interval_core::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupRule {
    Trivial,
    Sylow(u64),
    DerivedOfSylow(u64),
    Generators(Vec<String>),
}

impl FromStr for SubgroupRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let prime = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad prime {t:?}"));
        if s == "trivial" {
            Ok(SubgroupRule::Trivial)
        } else if let Some(p) = s.strip_prefix("sylow:") {
            Ok(SubgroupRule::Sylow(prime(p)?))
        } else if let Some(p) = s.strip_prefix("derived-of-sylow:") {
            Ok(SubgroupRule::DerivedOfSylow(prime(p)?))
        } else if s == "gens" {
            Ok(SubgroupRule::Generators(Vec::new()))
        } else if let Some(g) = s.strip_prefix("gens:") {
            Ok(SubgroupRule::Generators(
                g.split(';').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect(),
            ))
        } else {
            Err(format!("unknown subgroup rule {s:?}"))
        }
    }
}

impl fmt::Display for SubgroupRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupRule::Trivial => f.write_str("trivial"),
            SubgroupRule::Sylow(p) => write!(f, "sylow:{p}"),
            SubgroupRule::DerivedOfSylow(p) => write!(f, "derived-of-sylow:{p}"),
            SubgroupRule::Generators(g) => write!(f, "gens:{}", g.join(";")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub subgroup: SubgroupRule,
    /// Methods requested by a corpus record; `None` means the caller decides.
    pub methods: Option<Vec<Method>>,
}

impl GroupSpec {
    fn empty(label: &str) -> Self {
        GroupSpec {
            label: label.to_string(),
            degree: 0,
            generators: Vec::new(),
            subgroup: SubgroupRule::Trivial,
            methods: None,
        }
    }

    fn err(&self, source: interval_core::Error) -> SpecError {
        SpecError::Group { label: self.label.clone(), source }
    }

    pub fn group(&self) -> Result<PermGroup, SpecError> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse(s, self.degree))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| self.err(e))?;
        PermGroup::new(self.degree, &gens).map_err(|e| self.err(e))
    }

    /// The subgroup selected by `rule` inside `g`; Sylow constructions draw
    /// from a generator seeded with `seed`.
    pub fn subgroup_by(&self, rule: &SubgroupRule, g: &PermGroup, seed: u64, caps: &Caps) -> Result<PermGroup, SpecError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match rule {
            SubgroupRule::Trivial => Ok(PermGroup::trivial(g.degree())),
            SubgroupRule::Sylow(p) => sylow_subgroup(g, *p, &mut rng, caps).map_err(|e| self.err(e)),
            SubgroupRule::DerivedOfSylow(p) => {
                let s = sylow_subgroup(g, *p, &mut rng, caps).map_err(|e| self.err(e))?;
                Ok(derived_subgroup(&s))
            }
            SubgroupRule::Generators(gens) => {
                let gens = gens
                    .iter()
                    .map(|s| Permutation::parse(s, g.degree()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| self.err(e))?;
                let u = PermGroup::new(g.degree(), &gens).map_err(|e| self.err(e))?;
                if !u.is_subgroup_of(g) {
                    return Err(self.err(interval_core::Error::NotSubgroup));
                }
                Ok(u)
            }
        }
    }

    pub fn subgroup(&self, g: &PermGroup, seed: u64, caps: &Caps) -> Result<PermGroup, SpecError> {
        self.subgroup_by(&self.subgroup, g, seed, caps)
    }
}

/// Parses one or more records. Lines starting with `#` are comments.
pub fn parse_specs(text: &str) -> Result<Vec<GroupSpec>, SpecError> {
    let mut specs: Vec<GroupSpec> = Vec::new();
    let mut cur: Option<GroupSpec> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| SpecError::Syntax { line: i + 1, message };
        let (key, rest) = line.split_once(char::is_whitespace).map_or((line, ""), |(k, r)| (k, r.trim()));
        if key == "label" {
            specs.extend(cur.take());
            cur = Some(GroupSpec::empty(rest));
            continue;
        }
        let spec = cur.get_or_insert_with(|| GroupSpec::empty("group"));
        match key {
            "degree" => {
                spec.degree = rest.parse().map_err(|_| syntax(format!("bad degree {rest:?}")))?;
            }
            "gen" => spec.generators.push(rest.to_string()),
            "subgroup" => spec.subgroup = rest.parse().map_err(syntax)?,
            "sgen" => match &mut spec.subgroup {
                SubgroupRule::Generators(g) => g.push(rest.to_string()),
                _ => return Err(syntax("sgen outside a `subgroup gens` block".into())),
            },
            "methods" => {
                let methods = rest
                    .split(',')
                    .map(|m| m.trim().parse::<Method>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(syntax)?;
                spec.methods = Some(methods);
            }
            other => return Err(syntax(format!("unknown key {other:?}"))),
        }
    }
    specs.extend(cur);
    for s in &specs {
        if s.degree == 0 {
            return Err(SpecError::Syntax { line: 0, message: format!("{}: missing degree", s.label) });
        }
    }
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_record() {
        let text = "# comment\nlabel S4/C4\ndegree 4\ngen (1,2,3,4)\ngen (1,2)\nsubgroup gens\nsgen (1,2,3,4)\n";
        let specs = parse_specs(text).unwrap();
        assert_eq!(specs.len(), 1);
        let s = &specs[0];
        assert_eq!(s.label, "S4/C4");
        let g = s.group().unwrap();
        assert_eq!(g.order(), 24);
        let u = s.subgroup(&g, 0, &Caps::default()).unwrap();
        assert_eq!(u.order(), 4);
    }

    #[test]
    fn rules() {
        assert_eq!("trivial".parse::<SubgroupRule>().unwrap(), SubgroupRule::Trivial);
        assert_eq!("sylow:7".parse::<SubgroupRule>().unwrap(), SubgroupRule::Sylow(7));
        assert_eq!("derived-of-sylow:2".parse::<SubgroupRule>().unwrap(), SubgroupRule::DerivedOfSylow(2));
        let g = "gens:(1,2);(3,4)".parse::<SubgroupRule>().unwrap();
        assert_eq!(g.to_string(), "gens:(1,2);(3,4)");
        assert!("sylow:x".parse::<SubgroupRule>().is_err());
        assert!("normal".parse::<SubgroupRule>().is_err());
    }

    #[test]
    fn several_records_and_errors() {
        let text = "label A\ndegree 3\ngen (1,2,3)\nlabel B\ndegree 3\ngen (1,2)\nsubgroup sylow:2\nmethods maximal,block\n";
        let specs = parse_specs(text).unwrap();
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[1].methods, Some(vec![Method::Maximal, Method::Block]));
        assert!(matches!(parse_specs("degree x"), Err(SpecError::Syntax { line: 1, .. })));
        assert!(matches!(parse_specs("degree 3\nsgen (1,2)"), Err(SpecError::Syntax { line: 2, .. })));
        assert!(parse_specs("gen (1,2)").is_err());
        let bad = parse_specs("degree 3\ngen (1,4)").unwrap();
        assert!(bad[0].group().is_err());
        let s = &parse_specs("degree 4\ngen (1,2,3,4)\nsubgroup sylow:3").unwrap()[0];
        let g = s.group().unwrap();
        assert!(s.subgroup(&g, 1, &Caps::default()).is_err());
    }
}
