//! File formats: the JSON system description and DOT export.
//!
//! JSON: `{"elements": ["a", "b"], "steps": [["a", "b"], ["b", "a"]]}`.
//! DOT: `digraph {`, one node line per element, one edge line per step, `}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::FiniteArs;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArsDocument {
    pub elements: Vec<String>,
    pub steps: Vec<(String, String)>,
}

impl ArsDocument {
    pub fn from_ars(ars: &FiniteArs) -> Self {
        ArsDocument {
            elements: ars.names().to_vec(),
            steps: ars
                .steps()
                .map(|(a, b)| (ars.name(a).to_string(), ars.name(b).to_string()))
                .collect(),
        }
    }

    pub fn to_ars(&self) -> Result<FiniteArs> {
        FiniteArs::build(&self.elements, &self.steps)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: byte_offset(text, e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.lines().take(line.saturating_sub(1)).map(|l| l.len() + 1).sum();
    before + column.saturating_sub(1)
}

pub fn parse_ars(text: &str) -> Result<FiniteArs> {
    ArsDocument::parse(text)?.to_ars()
}

fn dot_id(name: &str) -> String {
    let plain = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

pub fn to_dot(ars: &FiniteArs) -> String {
    let mut out = String::from("digraph {\n");
    for e in ars.elements() {
        out.push_str(&format!("  {};\n", dot_id(ars.name(e))));
    }
    for (a, b) in ars.steps() {
        out.push_str(&format!("  {} -> {};\n", dot_id(ars.name(a)), dot_id(ars.name(b))));
    }
    out.push_str("}\n");
    out
}
