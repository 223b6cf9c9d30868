use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    embed, idempotents, invert_class, relate, ClassId, QuotientWindow, Relation, SigmaPair,
};
use crate::omega::{idempotent_leq, Index};
use crate::verdict::{Status, Verdict, Witness};
use crate::verifier::c_candidates;
use crate::window::{ElemId, SWindow};

/// How associativity of the class product is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocMode {
    Exhaustive,
    /// Uniform random triples from a seeded generator.
    Sampled {
        samples: u64,
        seed: u64,
    },
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub items: Vec<(&'static str, Verdict)>,
    pub classes: usize,
    pub sigma_pairs: usize,
    pub idempotents: usize,
    /// No `~` search was cut off by the window.
    pub certified: bool,
}

impl StructureReport {
    pub fn status(&self) -> Status {
        self.items
            .iter()
            .fold(Status::Pass, |acc, (_, v)| acc.worst(v.status))
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.items.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

fn rep_elements(qw: &QuotientWindow, classes: &[ClassId]) -> Vec<ElemId> {
    classes
        .iter()
        .flat_map(|&q| {
            let r = qw.class(q).representative;
            [r.a, r.b]
        })
        .collect()
}

/// Running tally for a universally quantified sweep.
#[derive(Default)]
struct Tally {
    checked: u64,
    skipped: u64,
    counterexample: Option<Witness>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.skipped += other.skipped;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    fn verdict(self, unknown_if_skipped: bool, note: &str) -> Verdict {
        match self.counterexample {
            Some(ce) => Verdict::fail(ce, self.checked).with_skipped(self.skipped),
            None if unknown_if_skipped && self.skipped > 0 && self.checked == 0 => {
                Verdict::unknown(note, 0).with_skipped(self.skipped)
            }
            None => Verdict::pass(Vec::new(), self.checked).with_skipped(self.skipped),
        }
    }
}

/// Reflexivity, symmetry and transitivity of `~`, recomputed by witness
/// search on every bucket, and agreement of the stored partition with it.
fn equivalence(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let mut buckets: BTreeMap<(Index, Index), Vec<SigmaPair>> = BTreeMap::new();
    for class in qw.classes() {
        buckets
            .entry(class.profile)
            .or_default()
            .extend(class.members.iter().copied());
    }
    let tally = buckets
        .into_par_iter()
        .map(|(_, mut pairs)| {
            pairs.sort();
            let k = pairs.len();
            let rel: Vec<Relation> = (0..k * k)
                .map(|idx| relate(s, pairs[idx / k], pairs[idx % k]))
                .collect();
            let related = |i: usize, j: usize| matches!(rel[i * k + j], Relation::Related(..));
            let blocked = |i: usize, j: usize| rel[i * k + j] == Relation::Blocked;
            let el = |ps: &[usize]| {
                Witness::elements(ps.iter().flat_map(|&i| [pairs[i].a, pairs[i].b]).collect())
            };
            let mut t = Tally::default();
            for i in 0..k {
                t.checked += 1;
                if !related(i, i) {
                    if blocked(i, i) {
                        t.skipped += 1;
                    } else {
                        t.counterexample = Some(el(&[i]));
                        return t;
                    }
                }
                for j in 0..k {
                    t.checked += 1;
                    if blocked(i, j) || blocked(j, i) {
                        t.skipped += 1;
                    } else if related(i, j) != related(j, i) {
                        t.counterexample = Some(el(&[i, j]));
                        return t;
                    }
                    let same = qw.class_of(pairs[i]) == qw.class_of(pairs[j]);
                    if related(i, j) && !same {
                        t.counterexample = Some(el(&[i, j]));
                        return t;
                    }
                    if !related(i, j) {
                        continue;
                    }
                    for m in 0..k {
                        if !related(j, m) {
                            continue;
                        }
                        t.checked += 1;
                        if blocked(i, m) {
                            t.skipped += 1;
                        } else if !related(i, m) {
                            t.counterexample = Some(el(&[i, j, m]));
                            return t;
                        }
                    }
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.verdict(true, "every relation search was cut off by the window")
}

/// Every member of each class and every condition-(C) witness must produce
/// the same product class as the table.
fn well_defined(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let k = qw.len();
    let rows: Vec<Tally> = (0..k)
        .into_par_iter()
        .map(|q1| {
            let mut t = Tally::default();
            for q2 in 0..k {
                let mut expected = qw.product(q1, q2);
                for &p in &qw.class(q1).members {
                    for &r in &qw.class(q2).members {
                        for (x, y, eq) in c_candidates(s, p.b, r.a) {
                            if eq != Some(true) {
                                continue;
                            }
                            let xa = s.id_of(&s.mul_ids(x, p.a));
                            let yd = s.id_of(&s.mul_ids(y, r.b));
                            let got = match (xa, yd) {
                                (Some(xa), Some(yd)) => qw.class_of(SigmaPair::new(xa, yd)),
                                _ => None,
                            };
                            let Some(got) = got else {
                                t.skipped += 1;
                                continue;
                            };
                            t.checked += 1;
                            match expected {
                                None => expected = Some(got),
                                Some(e) if e != got => {
                                    t.counterexample =
                                        Some(Witness::elements(vec![p.a, p.b, r.a, r.b, x, y]));
                                    return t;
                                }
                                Some(_) => {}
                            }
                        }
                    }
                }
            }
            t
        })
        .collect();
    rows.into_iter()
        .fold(Tally::default(), Tally::merge)
        .verdict(true, "no product could be evaluated inside the window")
}

fn assoc_triple(qw: &QuotientWindow, a: ClassId, b: ClassId, c: ClassId, t: &mut Tally) -> bool {
    let left = qw.product(a, b).and_then(|ab| qw.product(ab, c));
    let right = qw.product(b, c).and_then(|bc| qw.product(a, bc));
    match (left, right) {
        (Some(l), Some(r)) => {
            t.checked += 1;
            if l != r {
                t.counterexample = Some(Witness::elements(rep_elements(qw, &[a, b, c])));
                return false;
            }
        }
        _ => t.skipped += 1,
    }
    true
}

fn associativity(qw: &QuotientWindow, mode: AssocMode) -> Verdict {
    let k = qw.len();
    let tally = match mode {
        AssocMode::Exhaustive => {
            let rows: Vec<Tally> = (0..k)
                .into_par_iter()
                .map(|a| {
                    let mut t = Tally::default();
                    for b in 0..k {
                        for c in 0..k {
                            if !assoc_triple(qw, a, b, c, &mut t) {
                                return t;
                            }
                        }
                    }
                    t
                })
                .collect();
            rows.into_iter().fold(Tally::default(), Tally::merge)
        }
        AssocMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut t = Tally::default();
            if k > 0 {
                for _ in 0..samples {
                    let (a, b, c) = (
                        rng.gen_range(0..k),
                        rng.gen_range(0..k),
                        rng.gen_range(0..k),
                    );
                    if !assoc_triple(qw, a, b, c, &mut t) {
                        break;
                    }
                }
            }
            t
        }
    };
    tally.verdict(true, "no triple has both double products inside the window")
}

/// `q q⁻¹ q = q`, `q⁻¹ q q⁻¹ = q⁻¹`, and no other class is an inverse of `q`.
fn regularity(qw: &QuotientWindow) -> Verdict {
    let k = qw.len();
    let prod3 = |a, b, c| qw.product(a, b).and_then(|ab| qw.product(ab, c));
    let rows: Vec<Tally> = (0..k)
        .into_par_iter()
        .map(|q| {
            let mut t = Tally::default();
            let inv = invert_class(qw, q);
            match (prod3(q, inv, q), prod3(inv, q, inv)) {
                (Some(a), Some(b)) => {
                    t.checked += 1;
                    if a != q || b != inv {
                        t.counterexample = Some(Witness::elements(rep_elements(qw, &[q, inv])));
                        return t;
                    }
                }
                _ => t.skipped += 1,
            }
            for other in (0..k).filter(|&o| o != inv) {
                if let (Some(a), Some(b)) = (prod3(q, other, q), prod3(other, q, other)) {
                    t.checked += 1;
                    if a == q && b == other {
                        t.counterexample = Some(Witness::elements(rep_elements(qw, &[q, other])));
                        return t;
                    }
                }
            }
            t
        })
        .collect();
    rows.into_iter()
        .fold(Tally::default(), Tally::merge)
        .verdict(
            true,
            "no class has its regularity products inside the window",
        )
}

/// Idempotents are exactly the diagonal classes, commute, and form a chain
/// ordered by reverse `l`, one per `l`-value. Witnesses list the chain.
pub(super) fn omega_chain(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let found: BTreeSet<ClassId> = idempotents(qw).into_iter().collect();
    let diagonal: BTreeSet<ClassId> = s
        .ids()
        .filter_map(|a| qw.class_of(SigmaPair::new(a, a)))
        .collect();
    if let Some(&q) = found.symmetric_difference(&diagonal).next() {
        return Verdict::fail(
            Witness::elements(rep_elements(qw, &[q])),
            found.len() as u64,
        )
        .with_limitation("idempotent classes differ from the diagonal classes [a,a]");
    }
    let mut t = Tally::default();
    let level = |q: ClassId| qw.class(q).profile.0;
    for &e in &found {
        for &f in &found {
            let (ef, fe) = (qw.product(e, f), qw.product(f, e));
            let (Some(ef), Some(fe)) = (ef, fe) else {
                t.skipped += 1;
                continue;
            };
            t.checked += 1;
            let below = ef == e;
            let ok = ef == fe
                && (ef == e || ef == f)
                && below == idempotent_leq(level(e), level(f))
                && (e == f) == (level(e) == level(f));
            if !ok {
                t.counterexample = Some(Witness::elements(rep_elements(qw, &[e, f])));
                return t.verdict(false, "");
            }
        }
    }
    let mut chain: Vec<ClassId> = found.into_iter().collect();
    chain.sort_by_key(|&q| level(q));
    let witnesses = chain
        .iter()
        .map(|&q| Witness::new(vec![level(q)], rep_elements(qw, &[q])))
        .collect();
    t.verdict(true, "no pair of idempotents multiplies inside the window")
        .with_witnesses(witnesses)
}

/// For idempotents `[a,a]`, `[b,b]`: the class `q = [c,d]` built from a
/// straight condition-(A) witness `(l(a), l(b)) = (cφ)⁻¹(dφ)`, `r(c) = r(d)`,
/// has `qq⁻¹ = [a,a]` and `q⁻¹q = [b,b]`. Witness: indices `[l(a), l(b)]`,
/// elements `[c, d]`.
fn bisimple(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let mut straight: BTreeMap<(Index, Index), (ElemId, ElemId)> = BTreeMap::new();
    for c in s.ids() {
        for d in s.ids() {
            if s.r(c) == s.r(d) {
                straight.entry((s.l(c), s.l(d))).or_insert((c, d));
            }
        }
    }
    let idem = idempotents(qw);
    let level = |q: ClassId| qw.class(q).profile.0;
    let mut witnesses = Vec::new();
    let mut t = Tally::default();
    let mut missing = None;
    for &e in &idem {
        for &f in &idem {
            let target = (level(e), level(f));
            let Some(&(c, d)) = straight.get(&target) else {
                missing.get_or_insert(Witness::new(vec![target.0, target.1], Vec::new()));
                continue;
            };
            let q = qw
                .class_of(SigmaPair::new(c, d))
                .expect("straight pairs are in Σ");
            let inv = invert_class(qw, q);
            match (qw.product(q, inv), qw.product(inv, q)) {
                (Some(left), Some(right)) => {
                    t.checked += 1;
                    if left != e || right != f {
                        return Verdict::fail(
                            Witness::new(vec![target.0, target.1], vec![c, d]),
                            t.checked,
                        );
                    }
                    witnesses.push(Witness::new(vec![target.0, target.1], vec![c, d]));
                }
                _ => t.skipped += 1,
            }
        }
    }
    if let Some(m) = missing {
        return Verdict::fail(m, t.checked)
            .with_limitation("no straight condition-(A) witness inside the window");
    }
    t.verdict(
        true,
        "no idempotent pair could be connected inside the window",
    )
    .with_witnesses(witnesses)
}

/// Every class equals `(aθ)⁻¹(bθ)` for some `a, b` in S. Witness: `[a, b]`.
fn left_i_quotient(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let emb: Vec<Option<ClassId>> = s.ids().map(|a| embed(s, qw, a)).collect();
    let mut witnesses = Vec::new();
    let mut unresolved = None;
    for q in 0..qw.len() {
        let mut done = false;
        for p in &qw.class(q).members {
            let (Some(ea), Some(eb)) = (emb[p.a], emb[p.b]) else {
                continue;
            };
            let Some(value) = qw.product(invert_class(qw, ea), eb) else {
                continue;
            };
            if value != q {
                return Verdict::fail(Witness::elements(vec![p.a, p.b]), q as u64 + 1);
            }
            witnesses.push(Witness::elements(vec![p.a, p.b]));
            done = true;
            break;
        }
        if !done {
            unresolved.get_or_insert(q);
        }
    }
    let checked = qw.len() as u64;
    match unresolved {
        Some(q) => Verdict::unknown(
            format!(
                "class {} has no member whose quotient of embeddings stays in the window",
                qw.render(s, q)
            ),
            checked,
        )
        .with_witnesses(witnesses),
        None => Verdict::pass(witnesses, checked),
    }
}

/// `a -> [x, xa]` is injective and multiplicative where defined.
fn embedding(s: &SWindow, qw: &QuotientWindow) -> Verdict {
    let emb: Vec<Option<ClassId>> = s.ids().map(|a| embed(s, qw, a)).collect();
    let mut t = Tally::default();
    let mut seen: BTreeMap<ClassId, ElemId> = BTreeMap::new();
    for a in s.ids() {
        match emb[a] {
            Some(q) => {
                t.checked += 1;
                if let Some(&prev) = seen.get(&q) {
                    t.counterexample = Some(Witness::elements(vec![prev, a]));
                    return t.verdict(false, "");
                }
                seen.insert(q, a);
            }
            None => t.skipped += 1,
        }
    }
    for a in s.ids() {
        for b in s.ids() {
            let lhs = s.product(a, b).and_then(|ab| emb[ab]);
            let rhs = match (emb[a], emb[b]) {
                (Some(x), Some(y)) => qw.product(x, y),
                _ => None,
            };
            match (lhs, rhs) {
                (Some(l), Some(r)) => {
                    t.checked += 1;
                    if l != r {
                        t.counterexample = Some(Witness::elements(vec![a, b]));
                        return t.verdict(false, "");
                    }
                }
                _ => t.skipped += 1,
            }
        }
    }
    t.verdict(true, "no element embeds inside the window")
}

/// Runs every structural check on the quotient.
pub fn verify_quotient(s: &SWindow, qw: &QuotientWindow, mode: AssocMode) -> StructureReport {
    let items = vec![
        ("equivalence", equivalence(s, qw)),
        ("well-defined", well_defined(s, qw)),
        ("associativity", associativity(qw, mode)),
        ("regularity", regularity(qw)),
        ("omega-chain", omega_chain(s, qw)),
        ("bisimple", bisimple(s, qw)),
        ("left-i-quotient", left_i_quotient(s, qw)),
        ("embedding", embedding(s, qw)),
    ];
    StructureReport {
        items,
        classes: qw.len(),
        sigma_pairs: qw.sigma_len(),
        idempotents: idempotents(qw).len(),
        certified: qw.is_certified(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::{Reilly, ReillyElement};
    use crate::quotient::classes;
    use crate::window::{close_generators, Window};

    fn row_zero(bound: Index) -> SWindow {
        let gens = [ReillyElement::new(0, 0, 0), ReillyElement::new(0, 0, 1)];
        close_generators(&gens, &Reilly::bicyclic(), Window::new(bound)).unwrap()
    }

    #[test]
    fn small_bicyclic_quotient_verifies() {
        let s = row_zero(6);
        let qw = classes(&s);
        let report = verify_quotient(&s, &qw, AssocMode::Exhaustive);
        for (name, v) in &report.items {
            assert_eq!(v.status, Status::Pass, "{name}: {v:?}");
        }
        assert_eq!(report.classes, 49);
        assert_eq!(report.idempotents, 7);
        assert!(report.get("associativity").unwrap().skipped > 0);
    }

    #[test]
    fn corrupted_product_is_caught() {
        let s = row_zero(6);
        let mut qw = classes(&s);
        let (q1, q2, good) = (0..qw.len())
            .flat_map(|a| (0..qw.len()).map(move |b| (a, b)))
            .find_map(|(a, b)| qw.product(a, b).filter(|_| a != b).map(|c| (a, b, c)))
            .unwrap();
        qw.set_product(q1, q2, Some((good + 1) % qw.len()));
        let report = verify_quotient(&s, &qw, AssocMode::Exhaustive);
        assert_eq!(report.get("well-defined").unwrap().status, Status::Fail);
        assert_eq!(report.get("associativity").unwrap().status, Status::Fail);
        let ce = report
            .get("associativity")
            .unwrap()
            .counterexample
            .clone()
            .unwrap();
        assert_eq!(ce.elements.len(), 6);
    }

    #[test]
    fn sampled_associativity_is_seeded() {
        let s = row_zero(6);
        let qw = classes(&s);
        let mode = AssocMode::Sampled {
            samples: 500,
            seed: 7,
        };
        let a = associativity(&qw, mode);
        let b = associativity(&qw, mode);
        assert_eq!(a, b);
        assert_eq!(a.checked + a.skipped, 500);
        assert_eq!(a.status, Status::Pass);
    }
}
