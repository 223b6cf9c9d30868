//! The semigroup Q of left I-quotients, built from pairs of elements of S.
//!
//! Σ is the set of pairs `(a, b)` with `r(a) = r(b)`. Two pairs are related,
//! `(a,b) ~ (c,d)`, when some `x, y` in S with `l(x) = r(a)`, `l(y) = r(c)` and
//! `r(x) = r(y)` satisfy `xa = yc` and `xb = yd`. Q is the set of classes and
//! `[a,b][c,d] = [xa, yd]` for any condition-(C) witness `xb = yc`.
//!
//! Everything is computed by witness search inside the window. Related pairs
//! always share `(l(a), l(b))`, so the search is bucketed by that profile.

mod lemmas;
mod reference;
mod verify;

pub use lemmas::{lemma_suites, LemmaReport};
pub use reference::{compare_to_reference, ReferenceComparison};
pub use verify::{verify_quotient, AssocMode, StructureReport};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::omega::Index;
use crate::verdict::{Verdict, Witness};
use crate::verifier::c_candidates;
use crate::window::{ElemId, SWindow};

pub type ClassId = usize;

const NO_CLASS: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaPair {
    pub a: ElemId,
    pub b: ElemId,
}

impl SigmaPair {
    pub fn new(a: ElemId, b: ElemId) -> Self {
        SigmaPair { a, b }
    }

    pub fn swap(self) -> Self {
        SigmaPair {
            a: self.b,
            b: self.a,
        }
    }
}

/// Result of a `~` witness search between two pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Witnesses `(x, y)`.
    Related(ElemId, ElemId),
    /// Profiles differ or no candidate works.
    Unrelated,
    /// Some candidate could not be decided because a product left the window.
    Blocked,
}

/// Searches for `x, y` with `l(x) = r(a)`, `l(y) = r(c)`, `r(x) = r(y)`,
/// `xa = yc` and `xb = yd`, in lexicographic order.
pub fn relate(s: &SWindow, p: SigmaPair, q: SigmaPair) -> Relation {
    if s.l(p.a) != s.l(q.a) || s.l(p.b) != s.l(q.b) {
        return Relation::Unrelated;
    }
    let mut blocked = false;
    for &x in s.with_l(s.r(p.a)) {
        for &y in s.with_l(s.r(q.a)) {
            if s.r(x) != s.r(y) {
                continue;
            }
            match s.val_eq(&s.mul_ids(x, p.a), &s.mul_ids(y, q.a)) {
                Some(false) => continue,
                None => {
                    blocked = true;
                    continue;
                }
                Some(true) => {}
            }
            match s.val_eq(&s.mul_ids(x, p.b), &s.mul_ids(y, q.b)) {
                Some(true) => return Relation::Related(x, y),
                Some(false) => {}
                None => blocked = true,
            }
        }
    }
    if blocked {
        Relation::Blocked
    } else {
        Relation::Unrelated
    }
}

/// `~` as a verdict. Witness elements: `[x, y]`; counterexample `[a, b, c, d]`.
pub fn tilde(s: &SWindow, p: SigmaPair, q: SigmaPair) -> Verdict {
    let pair = Witness::elements(vec![p.a, p.b, q.a, q.b]);
    if s.l(p.a) != s.l(q.a) || s.l(p.b) != s.l(q.b) {
        return Verdict::fail(pair, 1)
            .with_limitation("l-profiles differ, so the pairs can never be related");
    }
    match relate(s, p, q) {
        Relation::Related(x, y) => Verdict::pass(vec![Witness::elements(vec![x, y])], 1),
        Relation::Unrelated => Verdict::fail(pair, 1)
            .with_limitation(format!("no witness inside window {}", s.window().bound)),
        Relation::Blocked => Verdict::unknown("candidate witnesses leave the window", 1),
    }
}

/// True when `(x, y)` witnesses `(a,b) ~ (c,d)`.
pub fn is_tilde_witness(s: &SWindow, p: SigmaPair, q: SigmaPair, x: ElemId, y: ElemId) -> bool {
    s.l(x) == s.r(p.a)
        && s.l(y) == s.r(q.a)
        && s.r(x) == s.r(y)
        && s.val_eq(&s.mul_ids(x, p.a), &s.mul_ids(y, q.a)) == Some(true)
        && s.val_eq(&s.mul_ids(x, p.b), &s.mul_ids(y, q.b)) == Some(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClass {
    /// Least member by `(l(a), a, b)`.
    pub representative: SigmaPair,
    /// Sorted by `(a, b)`; all share the profile.
    pub members: Vec<SigmaPair>,
    /// `(l(a), l(b))`, common to all members.
    pub profile: (Index, Index),
}

/// Q restricted to the window.
#[derive(Debug, Clone)]
pub struct QuotientWindow {
    classes: Vec<PairClass>,
    sigma: usize,
    elements: usize,
    class_of: Vec<u32>,
    product: Vec<Option<u32>>,
    blocked_edges: u64,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Partitions the in-window part of Σ into `~`-classes and tabulates the
/// class multiplication.
pub fn classes(s: &SWindow) -> QuotientWindow {
    let n = s.len();
    let mut buckets: BTreeMap<(Index, Index), Vec<SigmaPair>> = BTreeMap::new();
    let mut sigma = 0;
    for a in s.ids() {
        for b in s.ids() {
            if s.r(a) == s.r(b) {
                buckets
                    .entry((s.l(a), s.l(b)))
                    .or_default()
                    .push(SigmaPair::new(a, b));
                sigma += 1;
            }
        }
    }

    let partitions: Vec<(Vec<PairClass>, u64)> = buckets
        .into_par_iter()
        .map(|(profile, pairs)| {
            let k = pairs.len();
            let mut parent: Vec<usize> = (0..k).collect();
            let mut blocked = 0;
            for i in 0..k {
                for j in (i + 1)..k {
                    if find(&mut parent, i) == find(&mut parent, j) {
                        continue;
                    }
                    match relate(s, pairs[i], pairs[j]) {
                        Relation::Related(..) => {
                            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                        Relation::Blocked => blocked += 1,
                        Relation::Unrelated => {}
                    }
                }
            }
            let mut groups: BTreeMap<usize, Vec<SigmaPair>> = BTreeMap::new();
            for (i, &p) in pairs.iter().enumerate() {
                groups.entry(find(&mut parent, i)).or_default().push(p);
            }
            let classes = groups
                .into_values()
                .map(|members| PairClass {
                    representative: members[0],
                    members,
                    profile,
                })
                .collect();
            (classes, blocked)
        })
        .collect();

    let blocked_edges = partitions.iter().map(|p| p.1).sum();
    let mut all: Vec<PairClass> = partitions.into_iter().flat_map(|p| p.0).collect();
    all.sort_by_key(|c| {
        (
            s.l(c.representative.a),
            c.representative.a,
            c.representative.b,
        )
    });

    let mut class_of = vec![NO_CLASS; n * n];
    for (id, class) in all.iter().enumerate() {
        for p in &class.members {
            class_of[p.a * n + p.b] = id as u32;
        }
    }

    let mut qw = QuotientWindow {
        classes: all,
        sigma,
        elements: n,
        class_of,
        product: Vec::new(),
        blocked_edges,
    };
    let k = qw.classes.len();
    qw.product = (0..k * k)
        .into_par_iter()
        .map(|idx| {
            let (p, q) = (
                qw.classes[idx / k].representative,
                qw.classes[idx % k].representative,
            );
            multiply_pairs(s, &qw, p, q).map(|(c, _, _)| c as u32)
        })
        .collect();
    qw
}

/// `[a,b][c,d]` computed from the given members: the first condition-(C)
/// witness `(x, y)` for `(b, c)` whose pair `(xa, yd)` lies in the window.
/// Returns the class with the witness used.
pub fn multiply_pairs(
    s: &SWindow,
    qw: &QuotientWindow,
    p: SigmaPair,
    q: SigmaPair,
) -> Option<(ClassId, ElemId, ElemId)> {
    c_candidates(s, p.b, q.a)
        .filter(|w| w.2 == Some(true))
        .find_map(|(x, y, _)| {
            let xa = s.id_of(&s.mul_ids(x, p.a))?;
            let yd = s.id_of(&s.mul_ids(y, q.b))?;
            qw.class_of(SigmaPair::new(xa, yd)).map(|c| (c, x, y))
        })
}

/// Class product from the table; `None` is overflow.
pub fn multiply_classes(qw: &QuotientWindow, q1: ClassId, q2: ClassId) -> Option<ClassId> {
    qw.product(q1, q2)
}

/// `[a,b] -> [b,a]`.
pub fn invert_class(qw: &QuotientWindow, q: ClassId) -> ClassId {
    let rep = qw.classes[q].representative;
    qw.class_of(rep.swap())
        .expect("the swap of a window pair is a window pair")
}

/// `a -> [x, xa]` for the first `x` with `l(x) = r(a)` keeping `xa` in the window.
pub fn embed(s: &SWindow, qw: &QuotientWindow, a: ElemId) -> Option<ClassId> {
    s.with_l(s.r(a)).iter().find_map(|&x| {
        let xa = s.id_of(&s.mul_ids(x, a))?;
        qw.class_of(SigmaPair::new(x, xa))
    })
}

/// Classes `q` with `qq = q`.
pub fn idempotents(qw: &QuotientWindow) -> Vec<ClassId> {
    (0..qw.len())
        .filter(|&q| qw.product(q, q) == Some(q))
        .collect()
}

impl QuotientWindow {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[PairClass] {
        &self.classes
    }

    pub fn class(&self, q: ClassId) -> &PairClass {
        &self.classes[q]
    }

    /// Number of in-window pairs in Σ.
    pub fn sigma_len(&self) -> usize {
        self.sigma
    }

    /// `~` searches that were cut off by the window. Nonzero means the
    /// partition may split classes that are really one.
    pub fn blocked_edges(&self) -> u64 {
        self.blocked_edges
    }

    pub fn is_certified(&self) -> bool {
        self.blocked_edges == 0
    }

    #[inline]
    pub fn class_of(&self, p: SigmaPair) -> Option<ClassId> {
        match self.class_of[p.a * self.elements + p.b] {
            NO_CLASS => None,
            c => Some(c as ClassId),
        }
    }

    #[inline]
    pub fn product(&self, q1: ClassId, q2: ClassId) -> Option<ClassId> {
        self.product[q1 * self.classes.len() + q2].map(|c| c as ClassId)
    }

    /// Overwrites one product entry. Only useful for mutation tests.
    pub fn set_product(&mut self, q1: ClassId, q2: ClassId, value: Option<ClassId>) {
        let k = self.classes.len();
        self.product[q1 * k + q2] = value.map(|c| c as u32);
    }

    pub fn render(&self, s: &SWindow, q: ClassId) -> String {
        let rep = self.classes[q].representative;
        format!("[{},{}]", s.name(rep.a), s.name(rep.b))
    }
}
