//! The bisimple inverse ω-semigroup S(G,θ) on ℕ⁰ × G × ℕ⁰.
//!
//! Elements are plain triples; the ambient group and endomorphism live in a
//! [`Reilly`] value that is passed to every operation needing them. The
//! bicyclic monoid is the trivial-group case and shares the same index
//! arithmetic through [`index_product`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{EndoPowers, Endomorphism, GroupElem, GroupTable};

/// Non-negative index of an element (row or column of its H-class).
pub type Index = u32;

/// Index part of the product of `(m, _, n)` and `(p, _, q)`.
///
/// Returns `(m - n + t, q - p + t, t)` with `t = max(n, p)`. Both results are
/// non-negative because `t >= n` and `t >= p`.
#[inline]
pub fn index_product(m: Index, n: Index, p: Index, q: Index) -> (Index, Index, Index) {
    let t = n.max(p);
    (m + (t - n), q + (t - p), t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReillyElement {
    pub m: Index,
    pub g: GroupElem,
    pub n: Index,
}

impl ReillyElement {
    pub const fn new(m: Index, g: GroupElem, n: Index) -> Self {
        ReillyElement { m, g, n }
    }

    pub fn h_class(&self) -> HClassIndex {
        HClassIndex {
            row: self.m,
            column: self.n,
        }
    }
}

impl fmt::Display for ReillyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.g, self.n)
    }
}

/// An element of the bicyclic monoid, viewed as ℕ⁰ × ℕ⁰.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BicyclicElement {
    pub m: Index,
    pub n: Index,
}

impl BicyclicElement {
    pub const fn new(m: Index, n: Index) -> Self {
        BicyclicElement { m, n }
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: BicyclicElement) -> BicyclicElement {
        let (m, n, _) = index_product(self.m, self.n, other.m, other.n);
        BicyclicElement { m, n }
    }

    pub fn inverse(self) -> BicyclicElement {
        BicyclicElement {
            m: self.n,
            n: self.m,
        }
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Position of an H-class: elements `(row, g, column)` for all `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HClassIndex {
    pub row: Index,
    pub column: Index,
}

impl HClassIndex {
    /// The H-class that contains every product of this class with `other`.
    pub fn product(self, other: HClassIndex) -> HClassIndex {
        let (row, column, _) = index_product(self.row, self.column, other.row, other.column);
        HClassIndex { row, column }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Green {
    R,
    L,
    H,
    D,
}

/// S(G,θ) for a fixed group and endomorphism.
#[derive(Debug, Clone)]
pub struct Reilly {
    group: GroupTable,
    endo: Endomorphism,
    powers: EndoPowers,
}

impl Reilly {
    pub fn new(group: GroupTable, endo: Endomorphism) -> Self {
        assert_eq!(
            group.order(),
            endo.map().len(),
            "endomorphism does not match group order"
        );
        let powers = EndoPowers::new(&endo);
        Reilly {
            group,
            endo,
            powers,
        }
    }

    /// S(1,θ), the bicyclic monoid.
    pub fn bicyclic() -> Self {
        let g = GroupTable::trivial();
        let e = Endomorphism::identity(&g);
        Reilly::new(g, e)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn endomorphism(&self) -> &Endomorphism {
        &self.endo
    }

    pub fn is_bicyclic(&self) -> bool {
        self.group.is_trivial()
    }

    /// `(m,g,n)(p,h,q) = (m-n+t, θ^{t-n}(g)·θ^{t-p}(h), q-p+t)`, `t = max(n,p)`.
    #[inline]
    pub fn multiply(&self, x: ReillyElement, y: ReillyElement) -> ReillyElement {
        let (m, n, t) = index_product(x.m, x.n, y.m, y.n);
        let left = self.powers.apply(u64::from(t - x.n), x.g);
        let right = self.powers.apply(u64::from(t - y.m), y.g);
        ReillyElement {
            m,
            g: self.group.mul(left, right),
            n,
        }
    }

    /// `(m,g,n)⁻¹ = (n,g⁻¹,m)`.
    pub fn invert(&self, x: ReillyElement) -> ReillyElement {
        ReillyElement {
            m: x.n,
            g: self.group.inv(x.g),
            n: x.m,
        }
    }

    /// The idempotent `e_m = (m,1,m)`.
    pub fn idempotent(&self, m: Index) -> ReillyElement {
        ReillyElement::new(m, self.group.identity(), m)
    }

    pub fn is_idempotent(&self, x: ReillyElement) -> bool {
        x.m == x.n && x.g == self.group.identity()
    }

    /// Green's relations by index. D is total: S(G,θ) is bisimple.
    pub fn green(&self, x: ReillyElement, y: ReillyElement, relation: Green) -> bool {
        match relation {
            Green::R => x.m == y.m,
            Green::L => x.n == y.n,
            Green::H => x.m == y.m && x.n == y.n,
            Green::D => {
                // x R z L y for z = (x.m, 1, y.n).
                debug_assert!({
                    let z = ReillyElement::new(x.m, self.group.identity(), y.n);
                    self.green(x, z, Green::R) && self.green(z, y, Green::L)
                });
                true
            }
        }
    }

    /// All elements with both indices at most `bound`, in `(m, g, n)` order.
    pub fn window_elements(&self, bound: Index) -> Vec<ReillyElement> {
        let mut out = Vec::new();
        for m in 0..=bound {
            for g in self.group.elements() {
                for n in 0..=bound {
                    out.push(ReillyElement::new(m, g, n));
                }
            }
        }
        out
    }

    /// Display form: a pair `(m,n)` over the trivial group, a triple otherwise.
    pub fn name(&self, x: ReillyElement) -> String {
        if self.is_bicyclic() {
            to_bicyclic(x).to_string()
        } else {
            x.to_string()
        }
    }
}

/// The homomorphism onto the bicyclic monoid, `(m,g,n) -> (m,n)`. Its kernel is H.
pub fn to_bicyclic(x: ReillyElement) -> BicyclicElement {
    BicyclicElement { m: x.m, n: x.n }
}

/// `e_m <= e_n` in the natural order exactly when `m >= n`.
pub fn idempotent_leq(m: Index, n: Index) -> bool {
    m >= n
}
