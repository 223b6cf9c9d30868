//! Exhaustive law checks for S(G,θ) over an index window.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::omega::{to_bicyclic, Green, Index, Reilly, ReillyElement};
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone)]
pub struct LawReport {
    pub bound: Index,
    /// Element ids in witnesses index into this list.
    pub elements: Vec<ReillyElement>,
    pub laws: Vec<(&'static str, Verdict)>,
}

impl LawReport {
    pub fn violations(&self) -> usize {
        self.laws.iter().filter(|(_, v)| !v.is_pass()).count()
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.laws.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

fn universal(counterexample: Option<Vec<usize>>, checked: u64) -> Verdict {
    match counterexample {
        Some(elems) => Verdict::fail(Witness::elements(elems), checked),
        None => Verdict::pass(Vec::new(), checked),
    }
}

/// Runs the full law suite on every element with both indices at most `bound`.
pub fn check_laws(s: &Reilly, bound: Index) -> LawReport {
    let elems = s.window_elements(bound);
    let n = elems.len();
    let nn = n as u64;
    let mut laws = Vec::new();

    let assoc = (0..n).into_par_iter().find_map_first(|i| {
        let x = elems[i];
        for (j, &y) in elems.iter().enumerate() {
            let xy = s.multiply(x, y);
            for (k, &z) in elems.iter().enumerate() {
                if s.multiply(xy, z) != s.multiply(x, s.multiply(y, z)) {
                    return Some(vec![i, j, k]);
                }
            }
        }
        None
    });
    laws.push(("associativity", universal(assoc, nn * nn * nn)));

    let single = |law: &dyn Fn(ReillyElement) -> bool| -> Verdict {
        universal((0..n).find(|&i| !law(elems[i])).map(|i| vec![i]), nn)
    };
    laws.push((
        "regular-inverse",
        single(&|x| {
            let xi = s.invert(x);
            s.multiply(s.multiply(x, xi), x) == x
                && s.multiply(s.multiply(xi, x), xi) == xi
                && s.invert(xi) == x
        }),
    ));
    laws.push((
        "idempotent-characterization",
        single(&|x| (s.multiply(x, x) == x) == (x.m == x.n && x.g == s.group().identity())),
    ));
    laws.push((
        "domain-range-idempotents",
        single(&|x| {
            let xi = s.invert(x);
            s.multiply(x, xi) == s.idempotent(x.m) && s.multiply(xi, x) == s.idempotent(x.n)
        }),
    ));

    let pairwise = |law: &(dyn Fn(ReillyElement, ReillyElement) -> bool + Sync)| -> Verdict {
        let found = (0..n).into_par_iter().find_map_first(|i| {
            (0..n)
                .find(|&j| !law(elems[i], elems[j]))
                .map(|j| vec![i, j])
        });
        universal(found, nn * nn)
    };
    laws.push((
        "inverse-antihomomorphism",
        pairwise(&|x, y| s.invert(s.multiply(x, y)) == s.multiply(s.invert(y), s.invert(x))),
    ));
    laws.push((
        "h-class-containment",
        pairwise(&|x, y| s.multiply(x, y).h_class() == x.h_class().product(y.h_class())),
    ));
    laws.push((
        "bicyclic-homomorphism",
        pairwise(&|x, y| to_bicyclic(s.multiply(x, y)) == to_bicyclic(x).mul(to_bicyclic(y))),
    ));
    laws.push((
        "bicyclic-kernel",
        pairwise(&|x, y| (to_bicyclic(x) == to_bicyclic(y)) == s.green(x, y, Green::H)),
    ));
    laws.push((
        "straight-decomposition",
        pairwise(&|a, b| {
            if !s.green(a, b, Green::R) {
                return true;
            }
            let q = s.multiply(s.invert(a), b);
            s.green(s.invert(a), q, Green::R) && s.green(q, b, Green::L)
        }),
    ));
    laws.push(("straight-product-green", straight_product_green(s, &elems)));

    LawReport {
        bound,
        elements: elems,
        laws,
    }
}

/// For `a R b` and `c R d`: `a⁻¹b R c⁻¹d` iff `a`, `c` share a column, and
/// `a⁻¹b L c⁻¹d` iff `b`, `d` share a column.
///
/// Both sides depend only on the columns of the factors and the H-class of
/// the quotient, so quadruples are enumerated over the distinct tuples
/// `(col a, col b, q)` that occur.
fn straight_product_green(s: &Reilly, elems: &[ReillyElement]) -> Verdict {
    let mut tuples: BTreeSet<(Index, Index, ReillyElement)> = BTreeSet::new();
    let mut first: Vec<(Index, Index, ReillyElement, usize, usize)> = Vec::new();
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            if a.m != b.m {
                continue;
            }
            let q = s.multiply(s.invert(a), b);
            if tuples.insert((a.n, b.n, q)) {
                first.push((a.n, b.n, q, i, j));
            }
        }
    }
    let mut checked = 0u64;
    for &(na, nb, q1, i, j) in &first {
        for &(nc, nd, q2, k, l) in &first {
            checked += 1;
            let r_ok = s.green(q1, q2, Green::R) == (na == nc);
            let l_ok = s.green(q1, q2, Green::L) == (nb == nd);
            if !(r_ok && l_ok) {
                return Verdict::fail(Witness::elements(vec![i, j, k, l]), checked);
            }
        }
    }
    Verdict::pass(Vec::new(), checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Endomorphism, GroupTable};

    #[test]
    fn small_windows_have_no_violations() {
        let z3 = GroupTable::cyclic(3);
        let s = Reilly::new(z3.clone(), Endomorphism::zero(&z3));
        let report = check_laws(&s, 3);
        assert_eq!(report.violations(), 0, "{:?}", report.laws);
        assert_eq!(report.elements.len(), 4 * 3 * 4);
    }

    #[test]
    fn non_homomorphic_twist_is_caught() {
        let z3 = GroupTable::cyclic(3);
        let s = Reilly::new(z3, Endomorphism::from_map_unchecked(vec![1, 1, 1]));
        let report = check_laws(&s, 2);
        assert!(report.violations() > 0);
        assert!(!report.get("associativity").unwrap().is_pass());
    }
}
