use std::cmp::Ordering;
use std::fmt;

/// A subset of a monoid's elements, stored as a fixed-width bitset.
///
/// A `PointSet` remembers the order of its carrier monoid so that sets over
/// different carriers can never be confused silently. The total order used
/// throughout the crate (worklists, canonical report output) is cardinality
/// first, then lexicographic on the ascending member list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    order: usize,
    bits: Vec<u64>,
}

impl PointSet {
    pub fn empty(order: usize) -> Self {
        PointSet {
            order,
            bits: vec![0; order.div_ceil(64)],
        }
    }

    pub fn singleton(order: usize, x: usize) -> Self {
        let mut s = Self::empty(order);
        s.insert(x);
        s
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for x in 0..order {
            s.insert(x);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(order: usize, ids: I) -> Self {
        let mut s = Self::empty(order);
        for x in ids {
            s.insert(x);
        }
        s
    }

    /// Order of the carrier monoid, not the cardinality of the set.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.order, "element {x} out of carrier 0..{}", self.order);
        self.bits[x / 64] |= 1 << (x % 64);
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.bits[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.order == other.order
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    pub fn ids(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// All nonempty subsets, smallest first. Only valid for sets of at most
    /// 63 elements; callers cap cardinality long before that.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = PointSet> + '_ {
        let members = self.ids();
        assert!(members.len() < 64);
        let order = self.order;
        (1u64..(1u64 << members.len())).map(move |mask| {
            PointSet::from_ids(
                order,
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x),
            )
        })
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.ids().cmp(&other.ids()))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Reduce a collection of sets to its inclusion-maximal antichain,
/// returned in canonical order without duplicates.
pub fn maximal_antichain(sets: &[PointSet]) -> Vec<PointSet> {
    let mut out: Vec<PointSet> = Vec::new();
    for s in sets {
        if sets
            .iter()
            .any(|t| s != t && s.is_subset_of(t) && !t.is_subset_of(s))
        {
            continue;
        }
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    out.sort();
    out
}
