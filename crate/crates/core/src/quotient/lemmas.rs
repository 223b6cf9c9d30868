//! Exhaustive property sweeps over the facts the quotient construction
//! relies on, evaluated inside the window.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::verify::omega_chain;
use super::{embed, relate, QuotientWindow, Relation, SigmaPair};
use crate::omega::{BicyclicElement, Index};
use crate::verdict::{Status, Verdict, Witness};
use crate::window::{ElemId, SWindow, Val};

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub suites: Vec<(&'static str, Verdict)>,
}

impl LemmaReport {
    pub fn status(&self) -> Status {
        self.suites
            .iter()
            .fold(Status::Pass, |acc, (_, v)| acc.worst(v.status))
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.suites.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

#[derive(Default)]
struct Count {
    checked: u64,
    skipped: u64,
    counterexample: Option<Witness>,
}

impl Count {
    fn merge(mut self, other: Count) -> Count {
        self.checked += other.checked;
        self.skipped += other.skipped;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    /// Records a three-valued outcome; returns false on a violation.
    fn record(&mut self, outcome: Option<bool>, ce: impl FnOnce() -> Vec<ElemId>) -> bool {
        match outcome {
            Some(true) => self.checked += 1,
            None => self.skipped += 1,
            Some(false) => {
                self.checked += 1;
                self.counterexample = Some(Witness::elements(ce()));
                return false;
            }
        }
        true
    }

    fn verdict(self) -> Verdict {
        match self.counterexample {
            Some(ce) => Verdict::fail(ce, self.checked).with_skipped(self.skipped),
            None if self.checked == 0 && self.skipped > 0 => {
                Verdict::unknown("every instance left the window", 0).with_skipped(self.skipped)
            }
            None => Verdict::pass(Vec::new(), self.checked).with_skipped(self.skipped),
        }
    }
}

fn sigma_buckets(s: &SWindow) -> BTreeMap<(Index, Index), Vec<SigmaPair>> {
    let mut buckets: BTreeMap<(Index, Index), Vec<SigmaPair>> = BTreeMap::new();
    for a in s.ids() {
        for b in s.ids() {
            if s.r(a) == s.r(b) {
                buckets
                    .entry((s.l(a), s.l(b)))
                    .or_default()
                    .push(SigmaPair::new(a, b));
            }
        }
    }
    buckets
}

/// Pairs `(a₁,b₁)`, `(a₂,b₂)` in Σ joined by some `x₁, x₂` with
/// `l(x₁) = r(a₁)`, `l(x₂) = r(a₂)`, `r(x₁) = r(x₂)`, `x₁a₁ = x₂a₂`,
/// `x₁b₁ = x₂b₂`: every `w₁, w₂` with `r(w₁) = r(w₂)` and `w₁a₁ = w₂a₂`
/// also has `w₁b₁ = w₂b₂`. The conclusion does not involve `x₁, x₂`, so
/// one joining pair per `(a₁,b₁,a₂,b₂)` suffices.
/// Counterexample: `[a₁, b₁, a₂, b₂, w₁, w₂]`.
fn witness_transfer(s: &SWindow) -> Verdict {
    let ids: Vec<ElemId> = s.ids().collect();
    sigma_buckets(s)
        .into_par_iter()
        .map(|(_, pairs)| {
            let mut c = Count::default();
            for &p in &pairs {
                for &q in &pairs {
                    if !matches!(relate(s, p, q), Relation::Related(..)) {
                        continue;
                    }
                    for &w1 in &ids {
                        for &w2 in &ids {
                            if s.r(w1) != s.r(w2) {
                                continue;
                            }
                            if s.val_eq(&s.mul_ids(w1, p.a), &s.mul_ids(w2, q.a)) != Some(true) {
                                continue;
                            }
                            let outcome = s.val_eq(&s.mul_ids(w1, p.b), &s.mul_ids(w2, q.b));
                            if !c.record(outcome, || vec![p.a, p.b, q.a, q.b, w1, w2]) {
                                return c;
                            }
                        }
                    }
                }
            }
            c
        })
        .reduce(Count::default, Count::merge)
        .verdict()
}

/// `abc = dec` with `l(b), l(e) >= r(c)` gives `ab = de`.
/// Counterexample: `[a, b, c, d, e]`.
fn right_cancellation(s: &SWindow) -> Verdict {
    let ids: Vec<ElemId> = s.ids().collect();
    ids.par_iter()
        .map(|&c| {
            let mut count = Count::default();
            // value of (ab)c -> every (a, b, ab) reaching it, in id order
            let mut by_value: HashMap<Val, Vec<(ElemId, ElemId, Val)>> = HashMap::new();
            let mut order: Vec<Val> = Vec::new();
            for &a in &ids {
                for &b in &ids {
                    if s.l(b) < s.r(c) {
                        continue;
                    }
                    let ab = s.mul_ids(a, b);
                    let abc = s.mul(&ab, &s.value(c));
                    if matches!(abc, Val::Unknown(_)) {
                        // overflow values cannot be compared reliably
                        count.skipped += 1;
                        continue;
                    }
                    let entry = by_value.entry(abc).or_default();
                    if entry.is_empty() {
                        order.push(abc);
                    }
                    entry.push((a, b, ab));
                }
            }
            for v in order {
                let group = &by_value[&v];
                for &(a, b, ab) in group {
                    for &(d, e, de) in group {
                        if !count.record(s.val_eq(&ab, &de), || vec![a, b, c, d, e]) {
                            return count;
                        }
                    }
                }
            }
            count
        })
        .reduce(Count::default, Count::merge)
        .verdict()
}

/// `[a,b] = [xa,xb]` for every `x` with `l(x) = r(a)`.
/// Counterexample: `[a, b, x]`.
fn pair_rescaling(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let mut c = Count::default();
    for q in 0..qw.len() {
        for &p in &qw.class(q).members {
            for &x in s.with_l(s.r(p.a)) {
                let xa = s.id_of(&s.mul_ids(x, p.a));
                let xb = s.id_of(&s.mul_ids(x, p.b));
                let outcome = match (xa, xb) {
                    (Some(xa), Some(xb)) => qw.class_of(SigmaPair::new(xa, xb)).map(|r| r == q),
                    _ => None,
                };
                if !c.record(outcome, || vec![p.a, p.b, x]) {
                    return c.verdict();
                }
            }
        }
    }
    c.verdict()
}

/// `[a,b][b,c] = [a,c]`. Counterexample: `[a, b, c]`.
fn pair_composition(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let ids: Vec<ElemId> = s.ids().collect();
    ids.par_iter()
        .map(|&a| {
            let mut count = Count::default();
            for &b in ids.iter().filter(|&&b| s.r(b) == s.r(a)) {
                for &c in ids.iter().filter(|&&c| s.r(c) == s.r(a)) {
                    let class = |x, y| qw.class_of(SigmaPair::new(x, y)).expect("pair in Σ");
                    let outcome = qw
                        .product(class(a, b), class(b, c))
                        .map(|v| v == class(a, c));
                    if !count.record(outcome, || vec![a, b, c]) {
                        return count;
                    }
                }
            }
            count
        })
        .reduce(Count::default, Count::merge)
        .verdict()
}

/// `[a,a]` is idempotent, and `l(a) = l(b)` gives `[a,a][b,b] = [a,a] = [b,b]`.
/// Counterexample: `[a, b]`.
fn idempotent_absorption(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let diag = |a: ElemId| {
        qw.class_of(SigmaPair::new(a, a))
            .expect("diagonal pair in Σ")
    };
    let mut c = Count::default();
    for a in s.ids() {
        let e = diag(a);
        if !c.record(qw.product(e, e).map(|v| v == e), || vec![a, a]) {
            return c.verdict();
        }
        for &b in s.with_l(s.l(a)) {
            let f = diag(b);
            let outcome = if e != f {
                Some(false)
            } else {
                qw.product(e, f).map(|v| v == e)
            };
            if !c.record(outcome, || vec![a, b]) {
                return c.verdict();
            }
        }
    }
    c.verdict()
}

/// Every member `(u,v)` of the class of `a` under the embedding has
/// `(uφ)⁻¹(vφ) = aφ` in the bicyclic monoid. Counterexample: `[a, u, v]`.
fn embedding_naturality(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let mut c = Count::default();
    for a in s.ids() {
        let Some(q) = embed(s, qw, a) else {
            c.skipped += 1;
            continue;
        };
        let target = BicyclicElement::new(s.r(a), s.l(a));
        for &p in &qw.class(q).members {
            let u = BicyclicElement::new(s.r(p.a), s.l(p.a));
            let v = BicyclicElement::new(s.r(p.b), s.l(p.b));
            let outcome = Some(u.inverse().mul(v) == target);
            if !c.record(outcome, || vec![a, p.a, p.b]) {
                return c.verdict();
            }
        }
    }
    c.verdict()
}

/// Runs every property suite exhaustively over the window.
pub fn lemma_suites(s: &SWindow, qw: &QuotientWindow) -> LemmaReport {
    LemmaReport {
        suites: vec![
            ("witness-transfer", witness_transfer(s)),
            ("right-cancellation", right_cancellation(s)),
            ("pair-rescaling", pair_rescaling(s, qw)),
            ("pair-composition", pair_composition(s, qw)),
            ("idempotent-absorption", idempotent_absorption(s, qw)),
            ("idempotent-chain", omega_chain(s, qw)),
            ("embedding-naturality", embedding_naturality(s, qw)),
        ],
    }
}
