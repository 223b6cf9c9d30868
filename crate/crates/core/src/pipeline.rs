//! Command runs over a validated [`Problem`], and the shipped demo presets.

use std::fmt;
use std::str::FromStr;

use crate::config::{parse_config, InputError, Problem};
use crate::laws::check_laws;
use crate::quotient::{classes, compare_to_reference, lemma_suites, verify_quotient, AssocMode};
use crate::report::{CheckRecord, QuotientSummary, ReferenceSummary, Report};
use crate::verdict::{Status, Verdict, Witness};
use crate::verifier::{verdict, ConditionSet};
use crate::window::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Group, endomorphism and ambient laws, plus associativity of the window.
    Validate,
    /// The left I-order conditions.
    Check,
    /// The quotient of pairs and its structural checks.
    Build,
    /// `Build` plus comparison with the ambient semigroup.
    Compare,
    /// Everything that applies to the problem.
    Demo,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Check => "check",
            Command::Build => "build",
            Command::Compare => "compare",
            Command::Demo => "demo",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "validate" => Command::Validate,
            "check" => Command::Check,
            "build" => Command::Build,
            "compare" => Command::Compare,
            "demo" => Command::Demo,
            other => return Err(format!("unknown command `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub conditions: ConditionSet,
    pub assoc: AssocMode,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            conditions: ConditionSet::ALL,
            assoc: AssocMode::Exhaustive,
        }
    }
}

struct Builder<'a> {
    problem: &'a Problem,
    checks: Vec<CheckRecord>,
    report: Report,
}

impl<'a> Builder<'a> {
    fn push(&mut self, group: &'static str, name: &str, v: &Verdict) {
        let s = &self.problem.window;
        self.checks
            .push(CheckRecord::from_verdict(group, name, v, |id| {
                s.name(id).to_string()
            }));
    }

    fn validate(&mut self) {
        let ambient = &self.problem.ambient;
        let order = ambient.group().order() as u64;
        self.push(
            "validate",
            "group-axioms",
            &Verdict::pass(Vec::new(), order * order * order),
        );
        self.push(
            "validate",
            "endomorphism",
            &Verdict::pass(Vec::new(), order * order),
        );
        let s = &self.problem.window;
        let n = s.len() as u64;
        let assoc = match s.associativity_violation() {
            Some((a, b, c)) => Verdict::fail(Witness::elements(vec![a, b, c]), n * n * n),
            None => Verdict::pass(Vec::new(), n * n * n),
        };
        self.push("validate", "window-associativity", &assoc);
        let laws = check_laws(ambient, self.problem.config.targets);
        for (name, v) in &laws.laws {
            let record =
                CheckRecord::from_verdict("laws", *name, v, |id| ambient.name(laws.elements[id]));
            self.checks.push(record);
        }
    }

    fn check(&mut self, conditions: ConditionSet) -> Result<(), InputError> {
        let report = verdict(&self.problem.window, self.problem.targets(), conditions)?;
        for (name, v) in report.entries() {
            self.push("conditions", name, v);
        }
        self.report.coverage = Some(report.coverage.into_iter().collect());
        Ok(())
    }

    fn build(&mut self, assoc: AssocMode, compare: bool) -> Result<(), InputError> {
        let s = &self.problem.window;
        let qw = classes(s);
        let structure = verify_quotient(s, &qw, assoc);
        for (name, v) in &structure.items {
            self.push("quotient", name, v);
        }
        let lemmas = lemma_suites(s, &qw);
        for (name, v) in &lemmas.suites {
            self.push("lemmas", name, v);
        }
        self.report.quotient = Some(QuotientSummary {
            classes: structure.classes,
            sigma_pairs: structure.sigma_pairs,
            idempotents: structure.idempotents,
            certified: structure.certified,
            blocked_edges: qw.blocked_edges(),
        });
        if compare {
            let cmp = compare_to_reference(s, &qw, self.problem.targets())?;
            for (name, v) in cmp.entries() {
                self.push("reference", name, v);
            }
            self.report.reference = Some(ReferenceSummary {
                image_size: cmp.image_size,
                window_size: cmp.window_size,
                bijective_onto_window: cmp.bijective_onto_window,
            });
        }
        Ok(())
    }
}

/// Runs `command` on a validated problem. `source` is recorded verbatim.
pub fn run(
    command: Command,
    problem: &Problem,
    source: &str,
    options: &RunOptions,
) -> Result<Report, InputError> {
    let s = &problem.window;
    let mut b = Builder {
        problem,
        checks: Vec::new(),
        report: Report {
            command: command.to_string(),
            source: source.to_string(),
            mode: s.mode(),
            window: s.window().bound,
            targets: problem.config.targets,
            elements: s.len(),
            status: Status::Pass,
            checks: Vec::new(),
            coverage: None,
            quotient: None,
            reference: None,
        },
    };
    let reference = s.mode() == Mode::Reference;
    match command {
        Command::Validate => b.validate(),
        Command::Check => b.check(options.conditions)?,
        Command::Build => b.build(options.assoc, false)?,
        Command::Compare => b.build(options.assoc, true)?,
        Command::Demo => {
            b.validate();
            b.check(options.conditions)?;
            b.build(options.assoc, reference)?;
        }
    }
    let mut report = b.report;
    report.checks = b.checks;
    report.status = report
        .checks
        .iter()
        .fold(Status::Pass, |acc, c| acc.worst(c.status));
    Ok(report)
}

/// Shipped presets: name and problem file text.
pub const DEMOS: &[(&str, &str)] = &[
    ("bicyclic-n0", include_str!("../../../demo/bicyclic-n0.cfg")),
    ("reilly-z2", include_str!("../../../demo/reilly-z2.cfg")),
    (
        "reilly-z4-doubling",
        include_str!("../../../demo/reilly-z4-doubling.cfg"),
    ),
    (
        "even-counterexample",
        include_str!("../../../demo/even-counterexample.cfg"),
    ),
    (
        "rightzero-counterexample",
        include_str!("../../../demo/rightzero-counterexample.cfg"),
    ),
];

pub fn demo_text(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses and builds a named preset.
pub fn demo_problem(name: &str) -> Result<Problem, InputError> {
    let text = demo_text(name).ok_or_else(|| {
        let names: Vec<&str> = DEMOS.iter().map(|(n, _)| *n).collect();
        InputError::Invalid(format!(
            "unknown demo `{name}`; available: {}",
            names.join(", ")
        ))
    })?;
    parse_config(text)?.build()
}

/// Runs a preset end to end with default options.
pub fn run_demo(name: &str) -> Result<Report, InputError> {
    let problem = demo_problem(name)?;
    run(
        Command::Demo,
        &problem,
        &format!("demo:{name}"),
        &RunOptions::default(),
    )
}
