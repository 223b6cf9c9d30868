//! Machine-readable (JSON) and text reports.
//!
//! The JSON document has the keys `command`, `source`, `mode`, `window`,
//! `targets`, `elements`, `status`, `checks`, `coverage`, `quotient` and
//! `reference`. Each entry of `checks` has `group`, `name`, `status`,
//! `checked`, `skipped`, `witnesses`, `counterexample`, `counterexamples` and
//! `limitation`. Witnesses are `{indices, elements}` with elements rendered
//! by name. Key order and contents depend only on the input, so repeated
//! runs produce identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::omega::Index;
use crate::verdict::{Status, Verdict, Witness};
use crate::window::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub indices: Vec<Index>,
    pub elements: Vec<String>,
}

impl WitnessRecord {
    pub fn render(w: &Witness, name: impl Fn(usize) -> String) -> Self {
        WitnessRecord {
            indices: w.indices.clone(),
            elements: w.elements.iter().map(|&e| name(e)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub group: &'static str,
    pub name: String,
    pub status: Status,
    pub checked: u64,
    pub skipped: u64,
    pub witnesses: Vec<WitnessRecord>,
    pub counterexample: Option<WitnessRecord>,
    pub counterexamples: Vec<WitnessRecord>,
    pub limitation: Option<String>,
}

impl CheckRecord {
    pub fn from_verdict(
        group: &'static str,
        name: impl Into<String>,
        v: &Verdict,
        element_name: impl Fn(usize) -> String,
    ) -> Self {
        let render = |w: &Witness| WitnessRecord::render(w, &element_name);
        CheckRecord {
            group,
            name: name.into(),
            status: v.status,
            checked: v.checked,
            skipped: v.skipped,
            witnesses: v.witnesses.iter().map(render).collect(),
            counterexample: v.counterexample.as_ref().map(render),
            counterexamples: v.counterexamples.iter().map(render).collect(),
            limitation: v.limitation.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientSummary {
    pub classes: usize,
    pub sigma_pairs: usize,
    pub idempotents: usize,
    pub certified: bool,
    pub blocked_edges: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceSummary {
    pub image_size: usize,
    pub window_size: usize,
    pub bijective_onto_window: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub source: String,
    pub mode: Mode,
    pub window: Index,
    pub targets: Index,
    pub elements: usize,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    pub coverage: Option<Vec<Index>>,
    pub quotient: Option<QuotientSummary>,
    pub reference: Option<ReferenceSummary>,
}

impl Report {
    pub fn check(&self, group: &str, name: &str) -> Option<&CheckRecord> {
        self.checks
            .iter()
            .find(|c| c.group == group && c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Exit status: 0 pass, 1 any fail, 2 any unknown and none fail.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unknown => 2,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mode = match self.mode {
            Mode::Reference => "reference",
            Mode::Abstract => "abstract",
        };
        let _ = writeln!(s, "{} {}", self.command, self.source);
        let _ = writeln!(
            s,
            "mode {mode}, window N={}, targets N'={}, {} elements",
            self.window, self.targets, self.elements
        );
        let mut group = "";
        for c in &self.checks {
            if c.group != group {
                group = c.group;
                let _ = writeln!(s, "\n[{group}]");
            }
            let _ = write!(
                s,
                "  {:<28} {:<8} checked {}",
                c.name,
                c.status.as_str(),
                c.checked
            );
            if c.skipped > 0 {
                let _ = write!(s, ", skipped {}", c.skipped);
            }
            s.push('\n');
            if let Some(ce) = &c.counterexample {
                let _ = writeln!(s, "    counterexample {}", render_witness(ce));
                if c.counterexamples.len() > 1 {
                    let rest: Vec<String> =
                        c.counterexamples[1..].iter().map(render_witness).collect();
                    let _ = writeln!(s, "    also failing {}", rest.join(" "));
                }
            } else if let Some(w) = c.witnesses.first() {
                let _ = writeln!(
                    s,
                    "    {} witnesses, first {}",
                    c.witnesses.len(),
                    render_witness(w)
                );
            }
            if let Some(note) = &c.limitation {
                let _ = writeln!(s, "    note: {note}");
            }
        }
        if let Some(cov) = &self.coverage {
            let list: Vec<String> = cov.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "\nl-coverage {{{}}}", list.join(","));
        }
        if let Some(q) = &self.quotient {
            let _ = writeln!(
                s,
                "quotient: {} classes from {} pairs, {} idempotents{}",
                q.classes,
                q.sigma_pairs,
                q.idempotents,
                if q.certified {
                    String::new()
                } else {
                    format!(", {} relation searches cut off", q.blocked_edges)
                }
            );
        }
        if let Some(r) = &self.reference {
            let _ = writeln!(
                s,
                "reference: {} distinct images of {} window elements, bijective {}",
                r.image_size, r.window_size, r.bijective_onto_window
            );
        }
        let _ = writeln!(s, "\nstatus: {}", self.status.as_str());
        s
    }
}

fn render_witness(w: &WitnessRecord) -> String {
    let mut parts = Vec::new();
    if !w.indices.is_empty() {
        let idx: Vec<String> = w.indices.iter().map(|i| i.to_string()).collect();
        parts.push(format!("({})", idx.join(",")));
    }
    if !w.elements.is_empty() {
        parts.push(format!("[{}]", w.elements.join(", ")));
    }
    parts.join(" ")
}
