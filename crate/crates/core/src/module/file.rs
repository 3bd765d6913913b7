//! JSON module files.
//!
//! ```json
//! {
//!   "algebra": "A:1",
//!   "basis": [["x0", 0], ["x1", 1]],
//!   "action": {"Sq(1)": [[1, 0]]}
//! }
//! ```
//!
//! `action` maps each basis monomial of the algebra to the `[row, column]`
//! entries of its matrix. The unit may be omitted. Other monomials may be
//! omitted only when no two basis degrees differ by their degree.

use std::fmt::Write as _;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::Deserialize;

use super::GradedModule;
use crate::algebra::HopfAlgebra;
use crate::error::{Error, Result};
use crate::gf2::{SparseMatrix, SparseVec};
use crate::milnor::MilnorMonomial;
use crate::registry::parse_algebra;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: String,
    pub basis: Vec<(String, i32)>,
    pub action: IndexMap<String, Vec<(u32, u32)>>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn into_module(self) -> Result<GradedModule> {
        let h = parse_algebra(&self.algebra)?;
        self.into_module_over(&h)
    }

    pub fn into_module_over(self, h: &Arc<HopfAlgebra>) -> Result<GradedModule> {
        let n = self.basis.len();
        let (names, degrees): (Vec<String>, Vec<i32>) = self.basis.into_iter().unzip();
        let mut columns: Vec<Option<Vec<SparseVec>>> = vec![None; h.dim()];
        for (key, entries) in self.action {
            let m: MilnorMonomial = key
                .parse::<crate::milnor::MilnorElement>()
                .ok()
                .and_then(|e| {
                    let mut it = e.iter();
                    match (it.next(), it.next()) {
                        (Some(m), None) => Some(m.clone()),
                        _ => None,
                    }
                })
                .ok_or_else(|| Error::InvalidModule(format!("action key {key:?} is not a monomial")))?;
            let a = h.index_of(&m).ok_or_else(|| {
                Error::InvalidModule(format!("{m} is not a basis element of {}", h.name()))
            })?;
            if columns[a].is_some() {
                return Err(Error::InvalidModule(format!("duplicate action key {m}")));
            }
            let mut cols = vec![Vec::new(); n];
            for (r, c) in entries {
                if r as usize >= n || c as usize >= n {
                    return Err(Error::InvalidModule(format!(
                        "entry [{r}, {c}] of {m} out of range"
                    )));
                }
                cols[c as usize].push(r);
            }
            for col in &mut cols {
                col.sort_unstable();
                if col.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidModule(format!("repeated entry in {m}")));
                }
            }
            columns[a] = Some(cols);
        }
        let mut actions = Vec::with_capacity(h.dim());
        for (a, cols) in columns.into_iter().enumerate() {
            actions.push(match cols {
                Some(c) => SparseMatrix::from_columns(n, &c),
                None if a == 0 => SparseMatrix::identity(n),
                None => SparseMatrix::zero(n, n),
            });
        }
        GradedModule::new(h.clone(), names, degrees, actions)
    }
}

/// Parses and validates a module file; every non-forced monomial must appear.
pub fn read_module(text: &str) -> Result<GradedModule> {
    let file = ModuleFile::parse(text)?;
    let h = parse_algebra(&file.algebra)?;
    let present: Vec<String> = file.action.keys().cloned().collect();
    let module = file.into_module_over(&h)?;
    let present: std::collections::HashSet<usize> = present
        .iter()
        .filter_map(|k| {
            k.parse::<crate::milnor::MilnorElement>()
                .ok()
                .and_then(|e| e.iter().next().cloned())
                .and_then(|m| h.index_of(&m))
        })
        .collect();
    for a in 1..h.dim() {
        if !present.contains(&a) && module.key_not_forced_zero(a) {
            return Err(Error::InvalidModule(format!(
                "action of {} is missing",
                h.monomial(a)
            )));
        }
    }
    module.validate()?;
    Ok(module)
}

impl GradedModule {
    /// Canonical file text: every monomial not forced zero by degrees, in
    /// basis order, entries sorted by column then row.
    pub fn to_file_string(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("string");
        let mut out = String::new();
        writeln!(out, "{{").unwrap();
        writeln!(out, "  \"algebra\": {},", q(self.algebra.name())).unwrap();
        if self.dim() == 0 {
            writeln!(out, "  \"basis\": [],").unwrap();
        } else {
            writeln!(out, "  \"basis\": [").unwrap();
            for i in 0..self.dim() {
                let sep = if i + 1 < self.dim() { "," } else { "" };
                writeln!(out, "    [{}, {}]{sep}", q(&self.names[i]), self.degree(i)).unwrap();
            }
            writeln!(out, "  ],").unwrap();
        }
        let keys: Vec<usize> = (1..self.algebra.dim())
            .filter(|&a| self.key_not_forced_zero(a))
            .collect();
        if keys.is_empty() {
            writeln!(out, "  \"action\": {{}}").unwrap();
        } else {
            writeln!(out, "  \"action\": {{").unwrap();
            for (k, &a) in keys.iter().enumerate() {
                let entries: Vec<String> = self.actions[a]
                    .entries()
                    .map(|(r, c)| format!("[{r}, {c}]"))
                    .collect();
                let sep = if k + 1 < keys.len() { "," } else { "" };
                writeln!(
                    out,
                    "    {}: [{}]{sep}",
                    q(&self.algebra.monomial(a).to_string()),
                    entries.join(", ")
                )
                .unwrap();
            }
            writeln!(out, "  }}").unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }

    pub fn from_file_str(text: &str) -> Result<Self> {
        read_module(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile;
    use crate::registry::algebra;

    #[test]
    fn round_trip_is_byte_exact() {
        let h = algebra(&profile::a(1)).unwrap();
        let j = GradedModule::cyclic(&h, &["Sq(3)".parse().unwrap()]).unwrap();
        let text = j.to_file_string();
        let back = GradedModule::from_file_str(&text).unwrap();
        assert_eq!(back.to_file_string(), text);
        let k = GradedModule::trivial(&h);
        let t = k.to_file_string();
        assert!(t.contains("\"action\": {}"));
        assert_eq!(GradedModule::from_file_str(&t).unwrap().to_file_string(), t);
    }

    #[test]
    fn missing_key_rejected() {
        let text = r#"{"algebra": "A:1", "basis": [["a", 0], ["b", 1]], "action": {}}"#;
        assert!(GradedModule::from_file_str(text).is_err());
        let text = r#"{"algebra": "A:1", "basis": [["a", 0], ["b", 1]],
            "action": {"Sq(1)": [[1, 0]]}}"#;
        let m = GradedModule::from_file_str(text).unwrap();
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn bad_entries_rejected() {
        let text = r#"{"algebra": "A:1", "basis": [["a", 0], ["b", 1]],
            "action": {"Sq(1)": [[0, 1]]}}"#;
        assert!(GradedModule::from_file_str(text).is_err());
        let text = r#"{"algebra": "A:1", "basis": [["a", 0]], "action": {"Sq(4)": []}}"#;
        assert!(GradedModule::from_file_str(text).is_err());
    }
}
