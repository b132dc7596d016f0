//! Aperiodic pointlike sets via the closure algorithm.
//!
//! Starting from the nonempty singletons, the family is closed under setwise
//! product, the operation `T(Z) = union of Z^w * Z^k over k >= 0` (where
//! `Z^w` is the idempotent power of `Z`), and passage to nonempty subsets.
//! The result is the family of aperiodic pointlikes; since it is closed under
//! subsets, pointlikeness is plain membership.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::pointset::{maximal_antichain, PointSet};

/// Default bound on the number of family members (the worst case is every
/// nonempty subset, so 2^16 covers carriers up to order 16).
pub const DEFAULT_FAMILY_CAP: usize = 1 << 16;

/// Elements beyond which the family is not materialized as an abstract
/// multiplication table (the table is quadratic in the member count).
const TABLE_CAP: usize = 2048;

/// Which closure rule first produced a member.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Singleton,
    Product,
    OmegaUnion,
    DownClosure,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Singleton => "singleton",
            Provenance::Product => "product",
            Provenance::OmegaUnion => "omega-union",
            Provenance::DownClosure => "down-closure",
        })
    }
}

/// A family of nonempty subsets closed under setwise product, in canonical
/// order (cardinality, then members ascending), with one provenance tag per
/// member.
pub struct PowerMonoid {
    base: Monoid,
    members: Vec<PointSet>,
    index: BTreeMap<PointSet, usize>,
    provenance: Vec<Provenance>,
}

impl fmt::Debug for PowerMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PowerMonoid(members={}, base order={})",
            self.members.len(),
            self.base.order()
        )
    }
}

impl PowerMonoid {
    pub fn base(&self) -> &Monoid {
        &self.base
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &PointSet {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn contains(&self, z: &PointSet) -> bool {
        self.index.contains_key(z)
    }

    pub fn index_of(&self, z: &PointSet) -> Option<usize> {
        self.index.get(z).copied()
    }

    /// Membership of a nonempty set; exact because the family is closed
    /// under nonempty subsets.
    pub fn is_pointlike(&self, z: &PointSet) -> Result<bool> {
        if z.is_empty() {
            return Err(Error::EmptySet { role: "pointlike candidate" });
        }
        Ok(self.contains(z))
    }

    /// The largest members with `Z * Z = Z`: an antichain under inclusion.
    pub fn idempotent_members(&self) -> Vec<PointSet> {
        let idem: Vec<PointSet> = self
            .members
            .iter()
            .filter(|z| &self.base.set_product(z, z) == *z)
            .cloned()
            .collect();
        maximal_antichain(&idem)
    }

    /// The inclusion-maximal members.
    pub fn maximal_members(&self) -> Vec<PointSet> {
        maximal_antichain(&self.members)
    }

    /// The family as an abstract monoid: element `i` is `members[i]`, the
    /// product is setwise, and the identity is the singleton of the base
    /// identity. Every member is listed as a generator since products alone
    /// need not reach the omega-union and subset members.
    pub fn as_monoid(&self) -> Result<Monoid> {
        let n = self.members.len();
        if n > TABLE_CAP {
            return Err(Error::SizeLimitExceeded { kind: "power monoid table", cap: TABLE_CAP });
        }
        let mut table = Vec::with_capacity(n * n);
        for a in &self.members {
            for b in &self.members {
                let p = self.base.set_product(a, b);
                table.push(self.index[&p]);
            }
        }
        let one = PointSet::singleton(self.base.order(), self.base.identity());
        let generators = (0..n).map(|i| (format!("m{i}"), i)).collect();
        Ok(Monoid::from_parts_unchecked(n, self.index[&one], table, generators))
    }
}

/// The idempotent power of a set under setwise product.
pub fn set_omega(m: &Monoid, z: &PointSet) -> PointSet {
    let mut powers = vec![z.clone()];
    let mut seen: BTreeMap<PointSet, usize> = BTreeMap::from([(z.clone(), 1)]);
    loop {
        let next = m.set_product(powers.last().unwrap(), z);
        let exponent = powers.len() + 1;
        if let Some(&i) = seen.get(&next) {
            let p = exponent - i;
            let w = p * i.div_ceil(p);
            return powers[w - 1].clone();
        }
        seen.insert(next.clone(), exponent);
        powers.push(next);
    }
}

/// `T(Z)`: the union of `Z^w * Z^k` for all `k >= 0`, computed until the
/// orbit cycles.
pub fn omega_union(m: &Monoid, z: &PointSet) -> PointSet {
    let w = set_omega(m, z);
    let mut acc = w.clone();
    let mut cur = w.clone();
    let mut seen: HashSet<PointSet> = HashSet::from([w]);
    loop {
        cur = m.set_product(&cur, z);
        if !seen.insert(cur.clone()) {
            return acc;
        }
        acc.union_with(&cur);
    }
}

pub fn henckell_closure(m: &Monoid) -> Result<PowerMonoid> {
    henckell_closure_with_cap(m, DEFAULT_FAMILY_CAP)
}

/// Least family containing the nonempty singletons and closed under setwise
/// product, `T`, and nonempty subsets. The worklist runs in canonical member
/// order, so provenance tags are reproducible.
pub fn henckell_closure_with_cap(m: &Monoid, cap: usize) -> Result<PowerMonoid> {
    let cap_hit = Error::SizeLimitExceeded { kind: "pointlike family", cap };
    let mut family: BTreeMap<PointSet, Provenance> = BTreeMap::new();
    let mut pending: BTreeSet<PointSet> = BTreeSet::new();
    for x in 0..m.order() {
        let s = PointSet::singleton(m.order(), x);
        family.insert(s.clone(), Provenance::Singleton);
        pending.insert(s);
    }
    if family.len() > cap {
        return Err(cap_hit);
    }
    while let Some(z) = pending.pop_first() {
        // subsets of z force at least 2^|z| - 1 members, so refuse before
        // enumerating them
        match 1usize.checked_shl(z.len() as u32) {
            Some(forced) if forced - 1 <= cap => {}
            _ => return Err(cap_hit),
        }
        let partners: Vec<PointSet> = family.keys().cloned().collect();
        let mut found: Vec<(PointSet, Provenance)> = Vec::new();
        for w in &partners {
            found.push((m.set_product(&z, w), Provenance::Product));
            found.push((m.set_product(w, &z), Provenance::Product));
        }
        found.push((omega_union(m, &z), Provenance::OmegaUnion));
        found.extend(z.nonempty_subsets().map(|s| (s, Provenance::DownClosure)));
        for (s, rule) in found {
            if !family.contains_key(&s) {
                if family.len() >= cap {
                    return Err(cap_hit);
                }
                family.insert(s.clone(), rule);
                pending.insert(s);
            }
        }
    }
    let members: Vec<PointSet> = family.keys().cloned().collect();
    let provenance = family.values().copied().collect();
    let index = members.iter().cloned().zip(0..).collect();
    Ok(PowerMonoid { base: m.clone(), members, index, provenance })
}

/// Whether a nonempty set is an aperiodic pointlike of `m`.
pub fn is_pointlike(m: &Monoid, z: &PointSet) -> Result<bool> {
    henckell_closure(m)?.is_pointlike(z)
}

/// The maximal idempotent pointlikes of `m`.
pub fn idempotent_pointlikes(m: &Monoid) -> Result<Vec<PointSet>> {
    Ok(henckell_closure(m)?.idempotent_members())
}

/// The maximal pointlikes of `m`.
pub fn maximal_pointlikes(m: &Monoid) -> Result<Vec<PointSet>> {
    Ok(henckell_closure(m)?.maximal_members())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn set(m: &Monoid, ids: &[usize]) -> PointSet {
        PointSet::from_ids(m.order(), ids.iter().copied())
    }

    #[test]
    fn omega_and_t_on_the_two_groups() {
        let z2 = families::z2();
        let g = set(&z2, &[1]);
        assert_eq!(set_omega(&z2, &g), set(&z2, &[0]));
        assert_eq!(omega_union(&z2, &g), set(&z2, &[0, 1]));
        let both = set(&z2, &[0, 1]);
        assert_eq!(set_omega(&z2, &both), both);
        assert_eq!(omega_union(&z2, &both), both);

        let z3 = families::z3();
        let g = set(&z3, &[1]);
        assert_eq!(set_omega(&z3, &g), set(&z3, &[0]));
        assert_eq!(omega_union(&z3, &g), set(&z3, &[0, 1, 2]));
    }

    #[test]
    fn closure_of_z2_has_three_members_with_expected_provenance() {
        let pl = henckell_closure(&families::z2()).unwrap();
        let z2 = pl.base();
        assert_eq!(
            pl.members(),
            &[set(z2, &[0]), set(z2, &[1]), set(z2, &[0, 1])]
        );
        assert_eq!(
            pl.provenance(),
            &[Provenance::Singleton, Provenance::Singleton, Provenance::OmegaUnion]
        );
        assert_eq!(pl.maximal_members(), vec![set(z2, &[0, 1])]);
        assert_eq!(pl.idempotent_members(), vec![set(z2, &[0, 1])]);
    }

    #[test]
    fn closure_of_z3_is_the_full_subset_lattice() {
        let pl = henckell_closure(&families::z3()).unwrap();
        assert_eq!(pl.len(), 7);
        let z3 = pl.base();
        assert_eq!(pl.maximal_members(), vec![set(z3, &[0, 1, 2])]);
        assert_eq!(pl.idempotent_members(), vec![set(z3, &[0, 1, 2])]);
    }

    #[test]
    fn aperiodic_fixtures_yield_singletons_only() {
        for m in [families::trivial(), families::u1(), families::lz1(), families::rz1()] {
            let pl = henckell_closure(&m).unwrap();
            assert_eq!(pl.len(), m.order());
            assert!(pl.members().iter().all(|z| z.len() == 1));
        }
        let u1 = families::u1();
        assert_eq!(
            maximal_pointlikes(&u1).unwrap(),
            vec![set(&u1, &[0]), set(&u1, &[1])]
        );
        assert_eq!(
            idempotent_pointlikes(&u1).unwrap(),
            vec![set(&u1, &[0]), set(&u1, &[1])]
        );
    }

    #[test]
    fn membership_is_exact_and_rejects_the_empty_set() {
        let z2 = families::z2();
        assert!(is_pointlike(&z2, &set(&z2, &[0, 1])).unwrap());
        let u1 = families::u1();
        assert!(!is_pointlike(&u1, &set(&u1, &[0, 1])).unwrap());
        assert!(is_pointlike(&u1, &set(&u1, &[1])).unwrap());
        let e = is_pointlike(&u1, &PointSet::empty(2)).unwrap_err();
        assert_eq!(e, Error::EmptySet { role: "pointlike candidate" });
    }

    #[test]
    fn family_is_product_closed_and_down_closed() {
        for m in [families::z2(), families::z3(), families::rz1()] {
            let pl = henckell_closure(&m).unwrap();
            for a in pl.members() {
                for b in pl.members() {
                    assert!(pl.contains(&m.set_product(a, b)));
                }
                for s in a.nonempty_subsets() {
                    assert!(pl.contains(&s));
                }
                assert!(pl.contains(&omega_union(&m, a)));
            }
        }
    }

    #[test]
    fn power_monoid_table_of_z2() {
        let pl = henckell_closure(&families::z2()).unwrap();
        let p = pl.as_monoid().unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.identity(), 0);
        assert_eq!(
            p.table_rows(),
            vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]
        );
    }

    #[test]
    fn tiny_cap_is_reported() {
        let e = henckell_closure_with_cap(&families::z3(), 4).unwrap_err();
        assert_eq!(
            e,
            Error::SizeLimitExceeded { kind: "pointlike family", cap: 4 }
        );
    }

    #[test]
    fn images_of_members_under_onto_maps_are_members() {
        // LZ1 onto U1 by collapsing the two left zeros
        let lz1 = families::lz1();
        let (u1, class_of) = lz1.quotient(&[vec![0], vec![1, 2]]).unwrap();
        let pl_src = henckell_closure(&lz1).unwrap();
        let pl_dst = henckell_closure(&u1).unwrap();
        for z in pl_src.members() {
            let image = PointSet::from_ids(u1.order(), z.iter().map(|x| class_of[x]));
            assert!(pl_dst.contains(&image));
        }
    }
}
