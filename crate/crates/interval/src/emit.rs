//! JSON and DOT renderings of an interval. Indices follow the interval:
//! `0` is the bottom, `len + 1` the top, proper subgroups ascending by order.

use std::collections::BTreeMap;
use std::fmt::Write;

use interval_core::{LatticeInterval, Permutation};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub index: usize,
    pub order: u128,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub bottom_order: u128,
    pub top_order: u128,
    pub subgroups: Vec<SubgroupJson>,
    pub inclusions: Vec<[usize; 2]>,
}

impl From<&LatticeInterval> for IntervalJson {
    fn from(iv: &LatticeInterval) -> Self {
        IntervalJson {
            bottom_order: iv.bottom().order(),
            top_order: iv.top().order(),
            subgroups: iv
                .subgroups()
                .iter()
                .enumerate()
                .map(|(i, v)| SubgroupJson {
                    index: i + 1,
                    order: v.order(),
                    generators: v.generators().iter().map(Permutation::to_cycle_string).collect(),
                })
                .collect(),
            inclusions: iv.inclusions().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl IntervalJson {
    pub fn order_of(&self, index: usize) -> Option<u128> {
        match index {
            0 => Some(self.bottom_order),
            i if i == self.subgroups.len() + 1 => Some(self.top_order),
            i => self.subgroups.get(i - 1).map(|s| s.order),
        }
    }

    /// Structural checks that need no group data: indices, order sorting
    /// and divisibility along every inclusion.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.subgroups.len();
        for (k, s) in self.subgroups.iter().enumerate() {
            if s.index != k + 1 {
                return Err(format!("subgroup at position {k} has index {}", s.index));
            }
            if s.order % self.bottom_order != 0 || self.top_order % s.order != 0 {
                return Err(format!("order {} of subgroup {} does not fit between bottom and top", s.order, s.index));
            }
        }
        if self.subgroups.windows(2).any(|w| w[0].order > w[1].order) {
            return Err("subgroups not ascending by order".into());
        }
        for &[a, b] in &self.inclusions {
            if a > n + 1 || b > n + 1 {
                return Err(format!("inclusion [{a},{b}] out of range"));
            }
            let (oa, ob) = (self.order_of(a).unwrap(), self.order_of(b).unwrap());
            if oa >= ob || ob % oa != 0 {
                return Err(format!("inclusion [{a},{b}] is not a strict divisibility ({oa} vs {ob})"));
            }
        }
        let mut sorted = self.inclusions.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != self.inclusions {
            return Err("inclusions not sorted and distinct".into());
        }
        Ok(())
    }
}

pub fn emit_json(iv: &LatticeInterval) -> String {
    let mut s = serde_json::to_string_pretty(&IntervalJson::from(iv)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<IntervalJson, serde_json::Error> {
    serde_json::from_str(text)
}

/// Hasse diagram, one rank per subgroup order, smallest at the bottom.
pub fn emit_dot(iv: &LatticeInterval) -> String {
    let json = IntervalJson::from(iv);
    let n = json.subgroups.len();
    let mut ranks: BTreeMap<u128, Vec<usize>> = BTreeMap::new();
    for i in 0..=n + 1 {
        ranks.entry(json.order_of(i).unwrap()).or_default().push(i);
    }
    let mut out = String::from("digraph interval {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..=n + 1 {
        let name = match i {
            0 => "U".to_string(),
            i if i == n + 1 => "G".to_string(),
            i => i.to_string(),
        };
        let _ = writeln!(out, "  n{i} [label=\"{name}: {}\"];", json.order_of(i).unwrap());
    }
    for members in ranks.values() {
        let ids: Vec<String> = members.iter().map(|i| format!("n{i}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    for [a, b] in &json.inclusions {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
