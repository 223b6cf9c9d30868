//! Bounded checks of the left I-order conditions on an [`SWindow`].
//!
//! Every check is three-valued. A `fail` carries a counterexample that can be
//! re-evaluated with table lookups alone; a `pass` on an existential claim
//! stores one witness per target; `unknown` records which quantifier ran into
//! the window edge.
//!
//! Targets `(i, j)` and pairs of elements are searched in lexicographic order
//! and the first witness found is kept, so reports are reproducible.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::omega::{Index, ReillyElement};
use crate::verdict::{Status, Verdict, Witness};
use crate::window::{l_class_coverage, ElemId, IndexProfile, SWindow, Val, Window};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error("target bound {targets} exceeds window bound {window}")]
    TargetsExceedWindow { targets: Index, window: Index },
    #[error("this check needs a reference-mode window (an ambient S(G,θ))")]
    NeedsReferenceMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `l(x), l(y) >= r(a)` and `xa = ya` imply `x = y`.
    Left,
    /// `r(x), r(y) >= l(a)` and `ax = ay` imply `x = y`.
    Right,
}

fn check_targets(s: &SWindow, targets: Window) -> Result<(), VerifierError> {
    if targets.bound > s.window().bound {
        return Err(VerifierError::TargetsExceedWindow {
            targets: targets.bound,
            window: s.window().bound,
        });
    }
    Ok(())
}

/// `(aφ)⁻¹(bφ)` in the bicyclic monoid.
fn quotient_profile(a: IndexProfile, b: IndexProfile) -> (Index, Index) {
    let t = a.r.max(b.r);
    (a.l + (t - a.r), b.l + (t - b.r))
}

fn within_window_note(s: &SWindow) -> String {
    format!(
        "no witness inside window {}; elements beyond the window were not searched",
        s.window().bound
    )
}

/// Folds per-target outcomes into one verdict. Failing targets are all kept,
/// the first one (in target order) is the primary counterexample.
fn aggregate(outcomes: Vec<Outcome>, fail_note: Option<String>, checked: u64) -> Verdict {
    let mut witnesses = Vec::new();
    let mut fails = Vec::new();
    let mut unknown: Option<String> = None;
    for o in outcomes {
        match o {
            Outcome::Witnessed(w) => witnesses.push(w),
            Outcome::Missing(w) => fails.push(w),
            Outcome::Blocked(note) => {
                unknown.get_or_insert(note);
            }
        }
    }
    if !fails.is_empty() {
        let mut v = Verdict::fail(fails[0].clone(), checked);
        v.counterexamples = fails;
        v.limitation = fail_note;
        v
    } else if let Some(note) = unknown {
        Verdict::unknown(note, checked).with_witnesses(witnesses)
    } else {
        Verdict::pass(witnesses, checked)
    }
}

enum Outcome {
    Witnessed(Witness),
    Missing(Witness),
    Blocked(String),
}

/// Condition (A): every `(i, j)` with `i, j <= N'` is `(aφ)⁻¹(bφ)` for some
/// `a, b` in S. Witness: indices `[i, j]`, elements `[a, b]`.
pub fn check_a(s: &SWindow, targets: Window) -> Result<Verdict, VerifierError> {
    check_targets(s, targets)?;
    let bound = targets.bound;
    let mut first: BTreeMap<(Index, Index), (ElemId, ElemId)> = BTreeMap::new();
    for a in s.ids() {
        for b in s.ids() {
            let (i, j) = quotient_profile(s.profile(a), s.profile(b));
            if i <= bound && j <= bound {
                first.entry((i, j)).or_insert((a, b));
            }
        }
    }

    // Profiles of values just outside the window: a missing target that these
    // could reach is undetermined rather than failed.
    let inside: BTreeSet<IndexProfile> = s.ids().map(|id| s.profile(id)).collect();
    let outside: BTreeSet<IndexProfile> = s
        .overflow_values()
        .iter()
        .map(|v| s.val_profile(v))
        .filter(|p| !inside.contains(p))
        .collect();
    let mut reachable_outside = BTreeSet::new();
    for p in &outside {
        for q in inside.iter().chain(outside.iter()) {
            reachable_outside.insert(quotient_profile(*p, *q));
            reachable_outside.insert(quotient_profile(*q, *p));
        }
    }

    let mut outcomes = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound {
            outcomes.push(match first.get(&(i, j)) {
                Some(&(a, b)) => Outcome::Witnessed(Witness::new(vec![i, j], vec![a, b])),
                None if reachable_outside.contains(&(i, j)) => Outcome::Blocked(format!(
                    "target ({i},{j}) is reachable only through products outside the window"
                )),
                None => Outcome::Missing(Witness::new(vec![i, j], Vec::new())),
            });
        }
    }
    let checked = u64::from(bound + 1).pow(2);
    Ok(aggregate(outcomes, Some(within_window_note(s)), checked))
}

/// Condition (B)(i) or (B)(ii). Counterexample elements: `[x, y, a]`.
pub fn check_b(s: &SWindow, side: Side) -> Verdict {
    let n = s.len();
    let relevant = |x: ElemId, y: ElemId, a: ElemId| match side {
        Side::Left => s.l(x) >= s.r(a) && s.l(y) >= s.r(a),
        Side::Right => s.r(x) >= s.l(a) && s.r(y) >= s.l(a),
    };
    let product = |u: ElemId, a: ElemId| match side {
        Side::Left => s.mul_ids(u, a),
        Side::Right => s.mul_ids(a, u),
    };

    // Per x: first counterexample, first undetermined triple, triples checked.
    type Row = (Option<[ElemId; 3]>, Option<[ElemId; 3]>, u64);
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut blocked = None;
            let mut checked = 0;
            for y in (x + 1)..n {
                for a in 0..n {
                    if !relevant(x, y, a) {
                        continue;
                    }
                    checked += 1;
                    match s.val_eq(&product(x, a), &product(y, a)) {
                        Some(true) => return (Some([x, y, a]), blocked, checked),
                        Some(false) => {}
                        None => {
                            blocked.get_or_insert([x, y, a]);
                        }
                    }
                }
            }
            (None, blocked, checked)
        })
        .collect();

    let checked = rows.iter().map(|r| r.2).sum();
    if let Some(ce) = rows.iter().find_map(|r| r.0) {
        return Verdict::fail(Witness::elements(ce.to_vec()), checked);
    }
    if let Some([x, y, a]) = rows.iter().find_map(|r| r.1) {
        return Verdict::unknown(
            format!(
                "products of ({}, {}) with {} leave the window and cannot be compared",
                s.name(x),
                s.name(y),
                s.name(a)
            ),
            checked,
        );
    }
    Verdict::pass(Vec::new(), checked)
}

/// Required `(l(x), l(y))` for a condition-(C) witness of the pair `(b, c)`.
pub fn c_profile(s: &SWindow, b: ElemId, c: ElemId) -> (Index, Index) {
    let m = s.l(b).max(s.l(c));
    (s.r(b) + (m - s.l(b)), s.r(c) + (m - s.l(c)))
}

/// Candidate condition-(C) witnesses `(x, y)` for `(b, c)` inside the window,
/// in lexicographic order, each with the three-valued outcome of `xb = yc`.
pub fn c_candidates(
    s: &SWindow,
    b: ElemId,
    c: ElemId,
) -> impl Iterator<Item = (ElemId, ElemId, Option<bool>)> + '_ {
    let (lx, ly) = c_profile(s, b, c);
    s.with_l(lx).iter().flat_map(move |&x| {
        s.with_l(ly)
            .iter()
            .filter(move |&&y| s.r(y) == s.r(x))
            .map(move |&y| (x, y, s.val_eq(&s.mul_ids(x, b), &s.mul_ids(y, c))))
    })
}

/// Condition (C). Witness elements: `[b, c, x, y]`. A missing witness is a
/// failure within the window only.
pub fn check_c(s: &SWindow) -> Verdict {
    let n = s.len();
    let bound = s.window().bound;
    let outcomes: Vec<Outcome> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (b, c) = (k / n, k % n);
            let (lx, ly) = c_profile(s, b, c);
            if lx > bound || ly > bound {
                return Outcome::Blocked(format!(
                    "pair ({}, {}) needs witnesses with l = ({lx},{ly}) beyond the window",
                    s.name(b),
                    s.name(c)
                ));
            }
            let mut blocked = false;
            for (x, y, eq) in c_candidates(s, b, c) {
                match eq {
                    Some(true) => return Outcome::Witnessed(Witness::elements(vec![b, c, x, y])),
                    None => blocked = true,
                    Some(false) => {}
                }
            }
            if blocked {
                Outcome::Blocked(format!(
                    "pair ({}, {}) has candidate witnesses whose products leave the window",
                    s.name(b),
                    s.name(c)
                ))
            } else {
                Outcome::Missing(Witness::elements(vec![b, c]))
            }
        })
        .collect();
    aggregate(outcomes, Some(within_window_note(s)), (n * n) as u64)
}

/// Straightness: every ambient `q` with indices `<= N'` is `a⁻¹b` with
/// `a, b` in S and `r(a) = r(b)`. Witness: indices `[m, g, n]`, elements `[a, b]`.
pub fn check_straight(s: &SWindow, targets: Window) -> Result<Verdict, VerifierError> {
    check_targets(s, targets)?;
    let ambient = s.ambient().ok_or(VerifierError::NeedsReferenceMode)?;
    let bound = targets.bound;

    let mut first: BTreeMap<ReillyElement, (ElemId, ElemId)> = BTreeMap::new();
    for a in s.ids() {
        if s.l(a) > bound {
            continue;
        }
        let ainv = ambient.invert(s.triple(a).expect("reference mode"));
        for b in s.ids() {
            if s.r(b) != s.r(a) || s.l(b) > bound {
                continue;
            }
            let q = ambient.multiply(ainv, s.triple(b).expect("reference mode"));
            first.entry(q).or_insert((a, b));
        }
    }

    let inside: Vec<ReillyElement> = s.ids().filter_map(|id| s.triple(id)).collect();
    let outside: Vec<ReillyElement> = s
        .overflow_values()
        .into_iter()
        .filter_map(|v| match v {
            Val::Triple(t) => Some(t),
            _ => None,
        })
        .collect();
    let mut reachable_outside: HashSet<ReillyElement> = HashSet::new();
    for &p in &outside {
        for &q in inside.iter().chain(outside.iter()) {
            if p.m == q.m {
                reachable_outside.insert(ambient.multiply(ambient.invert(p), q));
                reachable_outside.insert(ambient.multiply(ambient.invert(q), p));
            }
        }
    }

    let mut outcomes = Vec::new();
    for q in ambient.window_elements(bound) {
        let idx = vec![q.m, q.g as Index, q.n];
        outcomes.push(match first.get(&q) {
            Some(&(a, b)) => Outcome::Witnessed(Witness::new(idx, vec![a, b])),
            None if reachable_outside.contains(&q) => Outcome::Blocked(format!(
                "{} is reachable only through products outside the window",
                ambient.name(q)
            )),
            None => Outcome::Missing(Witness::new(idx, Vec::new())),
        });
    }
    let checked = outcomes.len() as u64;
    Ok(aggregate(outcomes, Some(within_window_note(s)), checked))
}

/// L-class coverage up to `N'`. Counterexamples carry the missing `n` as index.
pub fn check_l_coverage(s: &SWindow, targets: Window) -> Verdict {
    let coverage = l_class_coverage(s, s.window());
    let outside_l: BTreeSet<Index> = s
        .overflow_values()
        .iter()
        .map(|v| s.val_profile(v).l)
        .collect();
    let outcomes = (0..=targets.bound)
        .map(|n| {
            if coverage.contains(&n) {
                let a = s.with_l(n)[0];
                Outcome::Witnessed(Witness::new(vec![n], vec![a]))
            } else if outside_l.contains(&n) {
                Outcome::Blocked(format!("L-class {n} is met only outside the window"))
            } else {
                Outcome::Missing(Witness::new(vec![n], Vec::new()))
            }
        })
        .collect();
    aggregate(
        outcomes,
        Some(within_window_note(s)),
        u64::from(targets.bound + 1),
    )
}

/// Which checks a [`verdict`] run includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionSet {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub straight: bool,
    pub lclass: bool,
}

impl ConditionSet {
    pub const ALL: ConditionSet = ConditionSet {
        a: true,
        b: true,
        c: true,
        straight: true,
        lclass: true,
    };

    pub const NONE: ConditionSet = ConditionSet {
        a: false,
        b: false,
        c: false,
        straight: false,
        lclass: false,
    };

    /// Parses a comma list such as `A,B,C,straight,lclass`.
    pub fn parse(list: &str) -> Option<ConditionSet> {
        let mut set = ConditionSet::NONE;
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.to_ascii_lowercase().as_str() {
                "a" => set.a = true,
                "b" => set.b = true,
                "c" => set.c = true,
                "straight" => set.straight = true,
                "lclass" => set.lclass = true,
                _ => return None,
            }
        }
        Some(set)
    }
}

#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub window: Window,
    pub targets: Window,
    pub a: Option<Verdict>,
    pub b_left: Option<Verdict>,
    pub b_right: Option<Verdict>,
    pub c: Option<Verdict>,
    /// Only in reference mode.
    pub straight: Option<Verdict>,
    pub lclass: Option<Verdict>,
    pub coverage: BTreeSet<Index>,
}

impl ConditionReport {
    /// Named verdicts in report order.
    pub fn entries(&self) -> Vec<(&'static str, &Verdict)> {
        [
            ("A", &self.a),
            ("B(i)", &self.b_left),
            ("B(ii)", &self.b_right),
            ("C", &self.c),
            ("straight", &self.straight),
            ("lclass", &self.lclass),
        ]
        .into_iter()
        .filter_map(|(n, v)| v.as_ref().map(|v| (n, v)))
        .collect()
    }

    pub fn status(&self) -> Status {
        self.entries()
            .iter()
            .fold(Status::Pass, |acc, (_, v)| acc.worst(v.status))
    }
}

/// Runs the selected checks and aggregates them into one report.
pub fn verdict(
    s: &SWindow,
    targets: Window,
    selection: ConditionSet,
) -> Result<ConditionReport, VerifierError> {
    check_targets(s, targets)?;
    let reference = s.ambient().is_some();
    Ok(ConditionReport {
        window: s.window(),
        targets,
        a: selection.a.then(|| check_a(s, targets)).transpose()?,
        b_left: selection.b.then(|| check_b(s, Side::Left)),
        b_right: selection.b.then(|| check_b(s, Side::Right)),
        c: selection.c.then(|| check_c(s)),
        straight: (selection.straight && reference)
            .then(|| check_straight(s, targets))
            .transpose()?,
        lclass: selection.lclass.then(|| check_l_coverage(s, targets)),
        coverage: l_class_coverage(s, s.window()),
    })
}
