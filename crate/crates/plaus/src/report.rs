//! Re-runnable report documents with a stable, versioned text
//! serialization. Structured output is byte-deterministic given the same
//! inputs and seed; witnesses carry enough data to re-verify a violation
//! without the original files.

use std::fmt::Write as _;

use crate::audit::{AxiomReport, WitnessItem};
use crate::worlds::Worlds;

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> String {
    format!("plaus {}", env!("CARGO_PKG_VERSION"))
}

/// 64-bit FNV-1a, used to fingerprint inputs in reports.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Info(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub outcome: Outcome,
    /// Ordered key/value details (witness bindings, counts, notes).
    pub detail: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDocument {
    pub tool: String,
    pub input_digest: String,
    pub seed: u64,
    pub entries: Vec<Entry>,
}

impl ReportDocument {
    pub fn new(input: &[u8], seed: u64) -> Self {
        ReportDocument {
            tool: tool_version(),
            input_digest: format!("fnv1a64:{:016x}", fnv1a64(input)),
            seed,
            entries: Vec::new(),
        }
    }

    pub fn push_info(&mut self, label: &str, value: impl Into<String>) {
        self.entries.push(Entry {
            label: label.to_string(),
            outcome: Outcome::Info(value.into()),
            detail: Vec::new(),
        });
    }

    pub fn push_outcome(&mut self, label: &str, pass: bool) {
        self.entries.push(Entry {
            label: label.to_string(),
            outcome: if pass { Outcome::Pass } else { Outcome::Fail },
            detail: Vec::new(),
        });
    }

    /// Adds an axiom report; events in witnesses are rendered with world
    /// names when a world set is supplied.
    pub fn push_report(&mut self, r: &AxiomReport, worlds: Option<&Worlds>) {
        let mut detail = Vec::new();
        detail.push(("cases".to_string(), r.cases.to_string()));
        detail.push(("hits".to_string(), r.hits.to_string()));
        if let Some(note) = &r.note {
            detail.push(("note".to_string(), note.clone()));
        }
        if let Some(w) = &r.witness {
            for (name, item) in &w.items {
                let rendered = match (item, worlds) {
                    (WitnessItem::Event(e), Some(ws)) => e.render(ws),
                    _ => item.to_string(),
                };
                detail.push((format!("witness.{name}"), rendered));
            }
        }
        self.entries.push(Entry {
            label: r.axiom.to_string(),
            outcome: if r.holds { Outcome::Pass } else { Outcome::Fail },
            detail,
        });
    }

    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.outcome == Outcome::Fail)
    }

    /// The stable machine-readable serialization (`plaus-report v1`).
    /// Line-oriented: header fields, then one `entry` line per result
    /// followed by indented `detail` lines.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "plaus-report v{SCHEMA_VERSION}");
        let _ = writeln!(out, "tool {}", self.tool);
        let _ = writeln!(out, "input {}", self.input_digest);
        let _ = writeln!(out, "seed {}", self.seed);
        for e in &self.entries {
            let outcome = match &e.outcome {
                Outcome::Pass => "pass".to_string(),
                Outcome::Fail => "fail".to_string(),
                Outcome::Info(v) => format!("info {v}"),
            };
            let _ = writeln!(out, "entry {} {}", e.label, outcome);
            for (k, v) in &e.detail {
                let _ = writeln!(out, "  {k} = {v}");
            }
        }
        let _ = writeln!(out, "end");
        out
    }

    /// Human-oriented rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.outcome {
                Outcome::Pass => {
                    let _ = writeln!(out, "  ok   {}", e.label);
                }
                Outcome::Fail => {
                    let _ = writeln!(out, "  FAIL {}", e.label);
                }
                Outcome::Info(v) => {
                    let _ = writeln!(out, "  --   {}: {}", e.label, v);
                }
            }
            for (k, v) in &e.detail {
                if e.outcome == Outcome::Fail || k.starts_with("witness") || k == "note" {
                    let _ = writeln!(out, "         {k} = {v}");
                }
            }
        }
        out
    }
}
