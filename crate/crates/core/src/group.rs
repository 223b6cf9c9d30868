//! Finite groups given by Cayley table, and endomorphisms of them.

use thiserror::Error;

/// Index of an element in a [`GroupTable`].
pub type GroupElem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    Ragged {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("index {value} out of range for a group of order {order} ({context})")]
    OutOfRange {
        value: usize,
        order: usize,
        context: &'static str,
    },
    #[error("identity axiom violated at x={x}")]
    Identity { x: GroupElem },
    #[error("inverse axiom violated at x={x}: no y with x*y = y*x = identity")]
    Inverse { x: GroupElem },
    #[error("declared inverse of x={x} is wrong")]
    WrongInverse { x: GroupElem },
    #[error("associativity violated at ({x},{y},{z})")]
    Associativity {
        x: GroupElem,
        y: GroupElem,
        z: GroupElem,
    },
    #[error("endomorphism map has length {len}, expected {order}")]
    MapLength { len: usize, order: usize },
    #[error("homomorphism law violated at ({x},{y})")]
    Homomorphism { x: GroupElem, y: GroupElem },
}

/// Unvalidated group data, as read from a config file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawGroup {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// Derived from the table when absent.
    pub inverse: Option<Vec<usize>>,
}

/// A validated finite group. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<GroupElem>,
    identity: GroupElem,
    inverse: Vec<GroupElem>,
}

/// Checks the group axioms and reports the first violation with its witness.
pub fn validate_group(raw: &RawGroup) -> Result<GroupTable, GroupError> {
    let order = raw.table.len();
    if order == 0 {
        return Err(GroupError::Empty);
    }
    let mut table = Vec::with_capacity(order * order);
    for (row, entries) in raw.table.iter().enumerate() {
        if entries.len() != order {
            return Err(GroupError::Ragged {
                row,
                len: entries.len(),
                order,
            });
        }
        for &v in entries {
            if v >= order {
                return Err(GroupError::OutOfRange {
                    value: v,
                    order,
                    context: "table entry",
                });
            }
            table.push(v);
        }
    }
    let identity = raw.identity;
    if identity >= order {
        return Err(GroupError::OutOfRange {
            value: identity,
            order,
            context: "identity",
        });
    }
    let mul = |x: usize, y: usize| table[x * order + y];
    if let Some(x) = (0..order).find(|&x| mul(identity, x) != x || mul(x, identity) != x) {
        return Err(GroupError::Identity { x });
    }

    let inverse = match &raw.inverse {
        Some(inv) => {
            if inv.len() != order {
                return Err(GroupError::MapLength {
                    len: inv.len(),
                    order,
                });
            }
            for (x, &y) in inv.iter().enumerate() {
                if y >= order {
                    return Err(GroupError::OutOfRange {
                        value: y,
                        order,
                        context: "inverse",
                    });
                }
                if mul(x, y) != identity || mul(y, x) != identity {
                    return Err(GroupError::WrongInverse { x });
                }
            }
            inv.clone()
        }
        None => {
            let mut inv = Vec::with_capacity(order);
            for x in 0..order {
                let y = (0..order)
                    .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                    .ok_or(GroupError::Inverse { x })?;
                inv.push(y);
            }
            inv
        }
    };

    for x in 0..order {
        for y in 0..order {
            let xy = mul(x, y);
            for z in 0..order {
                if mul(xy, z) != mul(x, mul(y, z)) {
                    return Err(GroupError::Associativity { x, y, z });
                }
            }
        }
    }

    Ok(GroupTable {
        order,
        table,
        identity,
        inverse,
    })
}

impl GroupTable {
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// The additive group Z/nZ with elements 0..n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x + y) % n))
            .collect();
        let inverse = (0..n).map(|x| (n - x) % n).collect();
        GroupTable {
            order: n,
            table,
            identity: 0,
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: GroupElem, y: GroupElem) -> GroupElem {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: GroupElem) -> GroupElem {
        self.inverse[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        0..self.order
    }

    /// Table rows, in the shape accepted by [`RawGroup`].
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    pub fn inverses(&self) -> &[GroupElem] {
        &self.inverse
    }
}

/// A self-map of a group that respects the multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    map: Vec<GroupElem>,
}

pub fn validate_endomorphism(
    group: &GroupTable,
    map: Vec<usize>,
) -> Result<Endomorphism, GroupError> {
    let order = group.order();
    if map.len() != order {
        return Err(GroupError::MapLength {
            len: map.len(),
            order,
        });
    }
    if let Some(&v) = map.iter().find(|&&v| v >= order) {
        return Err(GroupError::OutOfRange {
            value: v,
            order,
            context: "endomorphism image",
        });
    }
    for x in 0..order {
        for y in 0..order {
            if map[group.mul(x, y)] != group.mul(map[x], map[y]) {
                return Err(GroupError::Homomorphism { x, y });
            }
        }
    }
    Ok(Endomorphism { map })
}

impl Endomorphism {
    pub fn identity(group: &GroupTable) -> Self {
        Endomorphism {
            map: group.elements().collect(),
        }
    }

    /// Skips the homomorphism check; used to build deliberately broken inputs.
    pub fn from_map_unchecked(map: Vec<GroupElem>) -> Self {
        Endomorphism { map }
    }

    /// The constant map onto the identity.
    pub fn zero(group: &GroupTable) -> Self {
        Endomorphism {
            map: vec![group.identity(); group.order()],
        }
    }

    /// `g -> k*g` on the cyclic group of order `n`.
    pub fn cyclic_scaling(n: usize, k: usize) -> Self {
        Endomorphism {
            map: (0..n).map(|g| (k * g) % n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, g: GroupElem) -> GroupElem {
        self.map[g]
    }

    pub fn map(&self) -> &[GroupElem] {
        &self.map
    }

    /// Applies the endomorphism `t` times; `t = 0` is the identity map.
    pub fn power(&self, t: u64, g: GroupElem) -> GroupElem {
        let mut g = g;
        for _ in 0..t {
            g = self.map[g];
        }
        g
    }
}

const POWER_CACHE_LIMIT: usize = 1024;

/// Memoized powers of an endomorphism.
///
/// The sequence of maps `θ^0, θ^1, ...` is eventually periodic; once the first
/// repeat is seen every power is an O(1) lookup.
#[derive(Debug, Clone)]
pub struct EndoPowers {
    order: usize,
    maps: Vec<GroupElem>,
    len: usize,
    cycle_start: Option<usize>,
}

impl EndoPowers {
    pub fn new(endo: &Endomorphism) -> Self {
        let order = endo.map.len();
        let mut maps: Vec<GroupElem> = (0..order).collect();
        let mut len = 1;
        let mut cycle_start = None;
        while len < POWER_CACHE_LIMIT {
            let last = &maps[(len - 1) * order..len * order];
            let next: Vec<GroupElem> = last.iter().map(|&g| endo.map[g]).collect();
            if let Some(s) = (0..len).find(|&s| maps[s * order..(s + 1) * order] == next[..]) {
                cycle_start = Some(s);
                break;
            }
            maps.extend_from_slice(&next);
            len += 1;
        }
        EndoPowers {
            order,
            maps,
            len,
            cycle_start,
        }
    }

    #[inline]
    pub fn apply(&self, t: u64, g: GroupElem) -> GroupElem {
        let len = self.len as u64;
        if t < len {
            return self.maps[t as usize * self.order + g];
        }
        match self.cycle_start {
            Some(s) => {
                let s = s as u64;
                let k = s + (t - s) % (len - s);
                self.maps[k as usize * self.order + g]
            }
            None => {
                // No repeat inside the cache: walk on from the last cached power.
                let base = (len - 1) as usize * self.order;
                let mut g = self.maps[base + g];
                let step = &self.maps[self.order..2 * self.order];
                for _ in 0..(t - (len - 1)) {
                    g = step[g];
                }
                g
            }
        }
    }
}
