//! Window-bounded candidate left I-orders.
//!
//! An [`SWindow`] is a finite piece of a (possibly infinite) semigroup S with a
//! homomorphism `a -> (r(a), l(a))` into the bicyclic monoid. Only elements
//! whose profile lies inside the window are stored. A product that leaves the
//! window is an *overflow* entry: in reference mode its value is still known
//! (it is an element of the ambient S(G,θ)), in abstract mode only its profile
//! is known.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::omega::{BicyclicElement, Index, Reilly, ReillyElement};

/// Id of an element of an [`SWindow`]. Ids follow the canonical element order.
pub type ElemId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub bound: Index,
}

impl Window {
    pub const fn new(bound: Index) -> Self {
        Window { bound }
    }

    pub fn contains(&self, m: Index, n: Index) -> bool {
        m <= self.bound && n <= self.bound
    }

    pub fn contains_profile(&self, p: IndexProfile) -> bool {
        self.contains(p.r, p.l)
    }
}

/// Image `(r(a), l(a))` of an element in the bicyclic monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexProfile {
    pub r: Index,
    pub l: Index,
}

impl IndexProfile {
    pub const fn new(r: Index, l: Index) -> Self {
        IndexProfile { r, l }
    }

    pub fn of(x: ReillyElement) -> Self {
        IndexProfile { r: x.m, l: x.n }
    }

    pub fn to_bicyclic(self) -> BicyclicElement {
        BicyclicElement::new(self.r, self.l)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: IndexProfile) -> IndexProfile {
        let b = self.to_bicyclic().mul(other.to_bicyclic());
        IndexProfile { r: b.m, l: b.n }
    }
}

impl fmt::Display for IndexProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("generator {0} lies outside the window")]
    GeneratorOutsideWindow(ReillyElement),
    #[error("generator {0} names a group element out of range")]
    InvalidGroupElement(ReillyElement),
    #[error("element {0} declared twice")]
    DuplicateElement(String),
    #[error("element {label} has profile {profile} outside the window")]
    ElementOutsideWindow {
        label: String,
        profile: IndexProfile,
    },
    #[error("undeclared element {0}")]
    UndeclaredElement(String),
    #[error("conflicting product entries for {left}*{right}")]
    ConflictingProduct { left: String, right: String },
    #[error(
        "profile mismatch at ({left},{right}): product of profiles is {expected}, \
         but the table gives an element with profile {found}"
    )]
    ProfileMismatch {
        left: String,
        right: String,
        expected: IndexProfile,
        found: IndexProfile,
    },
}

/// A product entry of an abstract table: `left*right=result`, `None` for overflow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractProduct {
    pub left: String,
    pub right: String,
    pub result: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbstractSpec {
    pub elements: Vec<(String, IndexProfile)>,
    pub products: Vec<AbstractProduct>,
}

/// A value reachable by multiplying elements of S, possibly outside the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Val {
    /// Reference mode: an element of the ambient S(G,θ).
    Triple(ReillyElement),
    /// Abstract mode: an element inside the window.
    Elem(ElemId),
    /// Abstract mode: an overflow product, known only through its profile.
    Unknown(IndexProfile),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Reference,
    Abstract,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
enum Repr {
    Reference {
        ambient: Reilly,
        triples: Vec<ReillyElement>,
        index: HashMap<ReillyElement, ElemId>,
    },
    Abstract,
}

#[derive(Debug, Clone)]
pub struct SWindow {
    window: Window,
    repr: Repr,
    names: Vec<String>,
    profiles: Vec<IndexProfile>,
    /// Dense `len × len` table; `None` marks overflow.
    product: Vec<Option<ElemId>>,
    generators: Vec<ElemId>,
    by_l: Vec<Vec<ElemId>>,
}

/// Closes `gens` under the ambient multiplication, keeping only elements
/// inside `window`. Products that leave the window become overflow entries.
pub fn close_generators(
    gens: &[ReillyElement],
    ambient: &Reilly,
    window: Window,
) -> Result<SWindow, WindowError> {
    for &g in gens {
        if g.g >= ambient.group().order() {
            return Err(WindowError::InvalidGroupElement(g));
        }
        if !window.contains(g.m, g.n) {
            return Err(WindowError::GeneratorOutsideWindow(g));
        }
    }
    let bound = window.bound as usize;
    let cap = (bound + 1) * (bound + 1) * ambient.group().order();

    let mut seen: HashSet<ReillyElement> = HashSet::new();
    let mut list: Vec<ReillyElement> = Vec::new();
    for &g in gens {
        if seen.insert(g) {
            list.push(g);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for j in 0..=i {
            let y = list[j];
            for p in [ambient.multiply(x, y), ambient.multiply(y, x)] {
                if window.contains(p.m, p.n) && seen.insert(p) {
                    list.push(p);
                }
            }
        }
        i += 1;
        assert!(
            list.len() <= cap,
            "closure exceeded the {cap} possible in-window elements"
        );
    }

    list.sort_unstable();
    let index: HashMap<ReillyElement, ElemId> =
        list.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = list.len();
    let mut product = vec![None; n * n];
    for (i, &x) in list.iter().enumerate() {
        for (j, &y) in list.iter().enumerate() {
            product[i * n + j] = index.get(&ambient.multiply(x, y)).copied();
        }
    }
    let mut generators: Vec<ElemId> = gens.iter().map(|g| index[g]).collect();
    generators.sort_unstable();
    generators.dedup();
    let names = list.iter().map(|&x| ambient.name(x)).collect();
    let profiles = list.iter().map(|&x| IndexProfile::of(x)).collect();

    Ok(SWindow::assemble(
        window,
        Repr::Reference {
            ambient: ambient.clone(),
            triples: list,
            index,
        },
        names,
        profiles,
        product,
        generators,
    ))
}

/// Builds an abstract-mode window from labelled elements and a (partial)
/// product table. Missing entries are treated as overflow.
pub fn load_abstract(spec: &AbstractSpec, window: Window) -> Result<SWindow, WindowError> {
    let mut elements = spec.elements.clone();
    elements.sort_by(|a, b| a.0.cmp(&b.0));
    for pair in elements.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(WindowError::DuplicateElement(pair[0].0.clone()));
        }
    }
    if let Some((label, profile)) = elements.iter().find(|(_, p)| !window.contains_profile(*p)) {
        return Err(WindowError::ElementOutsideWindow {
            label: label.clone(),
            profile: *profile,
        });
    }
    let index: HashMap<&str, ElemId> = elements
        .iter()
        .enumerate()
        .map(|(i, (l, _))| (l.as_str(), i))
        .collect();
    let lookup = |label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| WindowError::UndeclaredElement(label.to_string()))
    };

    let n = elements.len();
    let mut product: Vec<Option<ElemId>> = vec![None; n * n];
    let mut set: Vec<bool> = vec![false; n * n];
    for entry in &spec.products {
        let a = lookup(&entry.left)?;
        let b = lookup(&entry.right)?;
        let c = entry.result.as_deref().map(lookup).transpose()?;
        let slot = a * n + b;
        if set[slot] && product[slot] != c {
            return Err(WindowError::ConflictingProduct {
                left: entry.left.clone(),
                right: entry.right.clone(),
            });
        }
        set[slot] = true;
        product[slot] = c;
    }

    let profiles: Vec<IndexProfile> = elements.iter().map(|(_, p)| *p).collect();
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = product[a * n + b] {
                let expected = profiles[a].mul(profiles[b]);
                if profiles[c] != expected {
                    return Err(WindowError::ProfileMismatch {
                        left: elements[a].0.clone(),
                        right: elements[b].0.clone(),
                        expected,
                        found: profiles[c],
                    });
                }
            }
        }
    }

    let names = elements.into_iter().map(|(l, _)| l).collect();
    Ok(SWindow::assemble(
        window,
        Repr::Abstract,
        names,
        profiles,
        product,
        Vec::new(),
    ))
}

impl SWindow {
    fn assemble(
        window: Window,
        repr: Repr,
        names: Vec<String>,
        profiles: Vec<IndexProfile>,
        product: Vec<Option<ElemId>>,
        generators: Vec<ElemId>,
    ) -> Self {
        let mut by_l = vec![Vec::new(); window.bound as usize + 1];
        for (id, p) in profiles.iter().enumerate() {
            by_l[p.l as usize].push(id);
        }
        SWindow {
            window,
            repr,
            names,
            profiles,
            product,
            generators,
            by_l,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn mode(&self) -> Mode {
        match self.repr {
            Repr::Reference { .. } => Mode::Reference,
            Repr::Abstract => Mode::Abstract,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<ElemId> {
        0..self.len()
    }

    pub fn ambient(&self) -> Option<&Reilly> {
        match &self.repr {
            Repr::Reference { ambient, .. } => Some(ambient),
            Repr::Abstract => None,
        }
    }

    pub fn triple(&self, id: ElemId) -> Option<ReillyElement> {
        match &self.repr {
            Repr::Reference { triples, .. } => Some(triples[id]),
            Repr::Abstract => None,
        }
    }

    pub fn id_of_triple(&self, x: ReillyElement) -> Option<ElemId> {
        match &self.repr {
            Repr::Reference { index, .. } => index.get(&x).copied(),
            Repr::Abstract => None,
        }
    }

    pub fn id_of_name(&self, name: &str) -> Option<ElemId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, id: ElemId) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    #[inline]
    pub fn profile(&self, id: ElemId) -> IndexProfile {
        self.profiles[id]
    }

    #[inline]
    pub fn r(&self, id: ElemId) -> Index {
        self.profiles[id].r
    }

    #[inline]
    pub fn l(&self, id: ElemId) -> Index {
        self.profiles[id].l
    }

    /// Elements with the given `l`-value, in id order.
    pub fn with_l(&self, l: Index) -> &[ElemId] {
        self.by_l.get(l as usize).map_or(&[], Vec::as_slice)
    }

    /// In-window product, `None` for overflow.
    #[inline]
    pub fn product(&self, a: ElemId, b: ElemId) -> Option<ElemId> {
        self.product[a * self.len() + b]
    }

    /// All pairs whose product leaves the window, in id order.
    pub fn overflow_pairs(&self) -> impl Iterator<Item = (ElemId, ElemId)> + '_ {
        let n = self.len();
        (0..n * n)
            .filter(move |&k| self.product[k].is_none())
            .map(move |k| (k / n, k % n))
    }

    pub fn value(&self, id: ElemId) -> Val {
        match &self.repr {
            Repr::Reference { triples, .. } => Val::Triple(triples[id]),
            Repr::Abstract => Val::Elem(id),
        }
    }

    pub fn val_profile(&self, v: &Val) -> IndexProfile {
        match *v {
            Val::Triple(x) => IndexProfile::of(x),
            Val::Elem(id) => self.profiles[id],
            Val::Unknown(p) => p,
        }
    }

    pub fn mul(&self, x: &Val, y: &Val) -> Val {
        match (x, y) {
            (Val::Triple(a), Val::Triple(b)) => {
                let ambient = self.ambient().expect("triple values need reference mode");
                Val::Triple(ambient.multiply(*a, *b))
            }
            (Val::Elem(a), Val::Elem(b)) => match self.product(*a, *b) {
                Some(c) => Val::Elem(c),
                None => Val::Unknown(self.profiles[*a].mul(self.profiles[*b])),
            },
            _ => Val::Unknown(self.val_profile(x).mul(self.val_profile(y))),
        }
    }

    #[inline]
    pub fn mul_ids(&self, a: ElemId, b: ElemId) -> Val {
        match self.product(a, b) {
            Some(c) => self.value(c),
            None => self.mul(&self.value(a), &self.value(b)),
        }
    }

    /// Three-valued equality: `None` when an overflow value hides the answer.
    pub fn val_eq(&self, x: &Val, y: &Val) -> Option<bool> {
        match (x, y) {
            (Val::Triple(a), Val::Triple(b)) => Some(a == b),
            (Val::Elem(a), Val::Elem(b)) => Some(a == b),
            _ => {
                if self.val_profile(x) != self.val_profile(y) {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// The window id of a value, if it lies inside the window.
    pub fn id_of(&self, v: &Val) -> Option<ElemId> {
        match *v {
            Val::Triple(x) => self.id_of_triple(x),
            Val::Elem(id) => Some(id),
            Val::Unknown(_) => None,
        }
    }

    pub fn val_name(&self, v: &Val) -> String {
        match *v {
            Val::Triple(x) => self.ambient().map_or_else(|| x.to_string(), |a| a.name(x)),
            Val::Elem(id) => self.names[id].clone(),
            Val::Unknown(p) => format!("?{p}"),
        }
    }

    /// Distinct values of overflow products, in id order of first occurrence.
    pub fn overflow_values(&self) -> Vec<Val> {
        let mut seen = HashSet::new();
        self.overflow_pairs()
            .map(|(a, b)| self.mul_ids(a, b))
            .filter(|v| seen.insert(*v))
            .collect()
    }

    /// First triple `(a,b,c)` where `(ab)c` and `a(bc)` are provably different.
    pub fn associativity_violation(&self) -> Option<(ElemId, ElemId, ElemId)> {
        for a in self.ids() {
            for b in self.ids() {
                let ab = self.mul_ids(a, b);
                for c in self.ids() {
                    let left = self.mul(&ab, &self.value(c));
                    let right = self.mul(&self.value(a), &self.mul_ids(b, c));
                    if self.val_eq(&left, &right) == Some(false) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// `{ n <= N : some a in S has l(a) = n }`.
pub fn l_class_coverage(s: &SWindow, window: Window) -> BTreeSet<Index> {
    s.ids()
        .map(|id| s.l(id))
        .filter(|&l| l <= window.bound)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Endomorphism, GroupTable};

    fn b(m: Index, n: Index) -> ReillyElement {
        ReillyElement::new(m, 0, n)
    }

    fn triples(s: &SWindow) -> Vec<ReillyElement> {
        s.ids().map(|i| s.triple(i).unwrap()).collect()
    }

    #[test]
    fn closure_of_single_step() {
        let s = close_generators(&[b(0, 1)], &Reilly::bicyclic(), Window::new(5)).unwrap();
        assert_eq!(triples(&s), (1..=5).map(|k| b(0, k)).collect::<Vec<_>>());
        let top = s.id_of_triple(b(0, 5)).unwrap();
        for k in s.ids() {
            assert_eq!(s.product(top, k), None);
        }
        assert_eq!(s.product(0, 0), s.id_of_triple(b(0, 2)));
    }

    #[test]
    fn closure_of_double_step() {
        let s = close_generators(&[b(0, 2)], &Reilly::bicyclic(), Window::new(8)).unwrap();
        assert_eq!(triples(&s), vec![b(0, 2), b(0, 4), b(0, 6), b(0, 8)]);
        let cov: Vec<_> = l_class_coverage(&s, s.window()).into_iter().collect();
        assert_eq!(cov, vec![2, 4, 6, 8]);
    }

    #[test]
    fn empty_closure() {
        let s = close_generators(&[], &Reilly::bicyclic(), Window::new(4)).unwrap();
        assert!(s.is_empty());
        assert!(l_class_coverage(&s, s.window()).is_empty());
    }

    #[test]
    fn generator_outside_window_is_rejected() {
        let err = close_generators(&[b(0, 9)], &Reilly::bicyclic(), Window::new(8)).unwrap_err();
        assert_eq!(err, WindowError::GeneratorOutsideWindow(b(0, 9)));
        let err = close_generators(
            &[ReillyElement::new(0, 3, 0)],
            &Reilly::bicyclic(),
            Window::new(8),
        )
        .unwrap_err();
        assert!(matches!(err, WindowError::InvalidGroupElement(_)));
    }

    #[test]
    fn full_coverage_for_row_zero() {
        let gens = [b(0, 0), b(0, 1)];
        let s = close_generators(&gens, &Reilly::bicyclic(), Window::new(20)).unwrap();
        assert_eq!(s.len(), 21);
        let cov = l_class_coverage(&s, s.window());
        assert_eq!(cov, (0..=20).collect());
    }

    #[test]
    fn reference_products_match_ambient() {
        let z2 = GroupTable::cyclic(2);
        let ambient = Reilly::new(z2.clone(), Endomorphism::identity(&z2));
        let gens = [ReillyElement::new(0, 1, 0), ReillyElement::new(1, 0, 2)];
        let s = close_generators(&gens, &ambient, Window::new(6)).unwrap();
        for a in s.ids() {
            for c in s.ids() {
                let want = ambient.multiply(s.triple(a).unwrap(), s.triple(c).unwrap());
                assert_eq!(s.mul_ids(a, c), Val::Triple(want));
                assert_eq!(s.product(a, c), s.id_of_triple(want));
                assert_eq!(
                    s.val_profile(&Val::Triple(want)),
                    s.profile(a).mul(s.profile(c))
                );
            }
        }
    }

    fn right_zero(v_profile: IndexProfile) -> AbstractSpec {
        let p = |l: &str, r: &str, c: &str| AbstractProduct {
            left: l.into(),
            right: r.into(),
            result: Some(c.into()),
        };
        AbstractSpec {
            elements: vec![
                ("u".into(), IndexProfile::new(0, 0)),
                ("v".into(), v_profile),
            ],
            products: vec![
                p("u", "u", "u"),
                p("u", "v", "v"),
                p("v", "u", "u"),
                p("v", "v", "v"),
            ],
        }
    }

    #[test]
    fn right_zero_loads() {
        let s = load_abstract(&right_zero(IndexProfile::new(0, 0)), Window::new(0)).unwrap();
        assert_eq!(s.mode(), Mode::Abstract);
        assert_eq!(s.product(1, 0), Some(0));
        assert_eq!(s.associativity_violation(), None);
    }

    #[test]
    fn profile_mismatch_is_rejected() {
        let err = load_abstract(&right_zero(IndexProfile::new(0, 1)), Window::new(2)).unwrap_err();
        // (u,u) and (u,v) are consistent; v*u = u has profile (0,0) but (0,1)(0,0) = (0,1).
        assert_eq!(
            err,
            WindowError::ProfileMismatch {
                left: "v".into(),
                right: "u".into(),
                expected: IndexProfile::new(0, 1),
                found: IndexProfile::new(0, 0),
            }
        );
    }

    #[test]
    fn single_idempotent_and_undeclared() {
        let spec = AbstractSpec {
            elements: vec![("e".into(), IndexProfile::new(0, 0))],
            products: vec![AbstractProduct {
                left: "e".into(),
                right: "e".into(),
                result: Some("e".into()),
            }],
        };
        assert!(load_abstract(&spec, Window::new(0)).is_ok());
        let mut bad = spec.clone();
        bad.products[0].result = Some("f".into());
        assert_eq!(
            load_abstract(&bad, Window::new(0)).unwrap_err(),
            WindowError::UndeclaredElement("f".into())
        );
    }

    #[test]
    fn partial_tables_yield_unknown_values() {
        let spec = AbstractSpec {
            elements: vec![("e".into(), IndexProfile::new(0, 0))],
            products: vec![AbstractProduct {
                left: "e".into(),
                right: "e".into(),
                result: None,
            }],
        };
        let s = load_abstract(&spec, Window::new(0)).unwrap();
        let v = s.mul_ids(0, 0);
        assert_eq!(v, Val::Unknown(IndexProfile::new(0, 0)));
        assert_eq!(s.val_eq(&v, &s.value(0)), None);
        assert_eq!(s.overflow_values(), vec![v]);
    }
}
