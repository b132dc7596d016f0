//! Stable pairs: for a pair (Y, N) with N a submonoid, decide whether every
//! relational morphism admits a single target element whose preimage covers Y
//! and whose stabilizer preimage covers N.
//!
//! Over all finite monoids this reduces to finding an L-chain of idempotents
//! inside Stab(y) generating a superset of N. Over aperiodic monoids it
//! reduces to finding a pointlike dominating Y whose stabilizer inside the
//! pointlike family contains an internal L-chain submonoid covering N.

use crate::cliques::maximal_cliques;
use crate::error::{Error, Result};
use crate::green::{is_internal_l_chain, is_l_chain_of_idempotents};
use crate::monoid::{ElementId, Monoid};
use crate::pointlikes::{henckell_closure, PowerMonoid};
use crate::pointset::{maximal_antichain, PointSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variety {
    M,
    A,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StableCertificate {
    /// An L-chain of idempotents inside Stab(y) generating a superset of N,
    /// greatest first.
    IdempotentChain(Vec<ElementId>),
    /// A pointlike dominating Y together with a product-closed internal
    /// L-chain inside its pointlike-family stabilizer whose union covers N.
    ChainInPower {
        dominating: PointSet,
        chain: Vec<PointSet>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StablePairReport {
    pub variety: Variety,
    pub y: PointSet,
    pub n: PointSet,
    pub verdict: bool,
    pub certificate: Option<StableCertificate>,
}

/// Sort mutually comparable elements greatest-first in the ambient L-order,
/// ties by id.
fn sort_descending_l(m: &Monoid, elems: &mut [ElementId]) {
    elems.sort_by(|&a, &b| {
        let ab = m.l_leq(a, b);
        let ba = m.l_leq(b, a);
        ab.cmp(&ba).then(a.cmp(&b))
    });
}

/// The shortest greatest-first prefix of `chain` generating a superset of
/// `n`; `chain` must already cover.
fn shortest_covering_prefix(m: &Monoid, chain: &[ElementId], n: &PointSet) -> Vec<ElementId> {
    let mut sorted = chain.to_vec();
    sort_descending_l(m, &mut sorted);
    for k in 0..=sorted.len() {
        let prefix = PointSet::from_ids(m.order(), sorted[..k].iter().copied());
        if n.is_subset_of(&m.submonoid_closure(&prefix)) {
            return sorted[..k].to_vec();
        }
    }
    unreachable!("caller guarantees the full chain covers");
}

/// Maximal L-chains of idempotents inside Stab(y), as element-id lists.
fn maximal_idempotent_chains(m: &Monoid, y: ElementId) -> Vec<Vec<ElementId>> {
    let stab = m.stabilizer(y);
    let idems: Vec<ElementId> = stab.iter().filter(|&e| m.is_idempotent(e)).collect();
    let comparable = |i: usize, j: usize| {
        m.l_leq(idems[i], idems[j]) || m.l_leq(idems[j], idems[i])
    };
    maximal_cliques(idems.len(), comparable)
        .into_iter()
        .map(|clique| clique.into_iter().map(|i| idems[i]).collect())
        .collect()
}

pub fn m_stable_decide(m: &Monoid, y: ElementId, n: &PointSet) -> Result<StablePairReport> {
    if y >= m.order() {
        return Err(Error::Malformed {
            detail: format!("element {y} is outside the carrier of order {}", m.order()),
        });
    }
    m.check_submonoid(n)?;
    let mut verdict = false;
    let mut certificate = None;
    for chain in maximal_idempotent_chains(m, y) {
        let gen = m.submonoid_closure(&PointSet::from_ids(m.order(), chain.iter().copied()));
        if n.is_subset_of(&gen) {
            verdict = true;
            certificate = Some(StableCertificate::IdempotentChain(
                shortest_covering_prefix(m, &chain, n),
            ));
            break;
        }
    }
    Ok(StablePairReport {
        variety: Variety::M,
        y: PointSet::singleton(m.order(), y),
        n: n.clone(),
        verdict,
        certificate,
    })
}

/// All maximal stable pairs over all finite monoids. These have singleton
/// left components; for each y the right components are the maximal
/// submonoids generated by an L-chain of idempotents in Stab(y).
pub fn m_stable_maximal(m: &Monoid) -> Vec<StablePairReport> {
    let mut out = Vec::new();
    for y in 0..m.order() {
        let gens: Vec<PointSet> = maximal_idempotent_chains(m, y)
            .iter()
            .map(|chain| {
                m.submonoid_closure(&PointSet::from_ids(m.order(), chain.iter().copied()))
            })
            .collect();
        for n in maximal_antichain(&gens) {
            out.push(m_stable_decide(m, y, &n).expect("enumerated pairs are well formed"));
        }
    }
    out
}

/// The stabilizer of a member inside the pointlike family:
/// all members Z with Y * Z = Y.
pub fn stab_in_power(pl: &PowerMonoid, y: &PointSet) -> Result<Vec<PointSet>> {
    if !pl.contains(y) {
        return Err(Error::NotAMember);
    }
    Ok(pl
        .members()
        .iter()
        .filter(|z| &pl.base().set_product(y, z) == y)
        .cloned()
        .collect())
}

/// Every product-closed subset of the submonoid `within` that contains the
/// identity, in canonical order. `within` must be product-closed itself so
/// closures cannot escape it.
fn closed_subsets(pm: &Monoid, within: &PointSet) -> Vec<PointSet> {
    let base = PointSet::singleton(pm.order(), pm.identity());
    let mut seen = std::collections::BTreeSet::from([base.clone()]);
    let mut stack = vec![base];
    while let Some(w) = stack.pop() {
        for s in within.iter().filter(|&s| !w.contains(s)) {
            let mut seed = w.clone();
            seed.insert(s);
            let w2 = pm.submonoid_closure(&seed);
            debug_assert!(w2.is_subset_of(within));
            if seen.insert(w2.clone()) {
                stack.push(w2.clone());
            }
        }
    }
    seen.into_iter().collect()
}

fn union_of(pl: &PowerMonoid, w: &PointSet) -> PointSet {
    let mut u = PointSet::empty(pl.base().order());
    for i in w.iter() {
        u.union_with(pl.member(i));
    }
    u
}

/// Search one dominating member for a chain submonoid of its stabilizer
/// covering `n`; returns the first hit in canonical order.
fn chain_in_stab(
    pl: &PowerMonoid,
    pm: &Monoid,
    dominating: usize,
    n: &PointSet,
) -> Result<Option<Vec<PointSet>>> {
    let stab = pm.stabilizer(dominating);
    if !n.is_subset_of(&union_of(pl, &stab)) {
        return Ok(None);
    }
    for w in closed_subsets(pm, &stab) {
        if n.is_subset_of(&union_of(pl, &w)) && is_internal_l_chain(pm, &w)? {
            return Ok(Some(w.iter().map(|i| pl.member(i).clone()).collect()));
        }
    }
    Ok(None)
}

pub fn a_stable_decide(m: &Monoid, y: &PointSet, n: &PointSet) -> Result<StablePairReport> {
    a_stable_decide_in(&henckell_closure(m)?, y, n)
}

/// Decide against an already-computed pointlike family.
pub fn a_stable_decide_in(
    pl: &PowerMonoid,
    y: &PointSet,
    n: &PointSet,
) -> Result<StablePairReport> {
    if y.is_empty() {
        return Err(Error::EmptySet { role: "stable pair component" });
    }
    pl.base().check_submonoid(n)?;
    let pm = pl.as_monoid()?;
    let mut verdict = false;
    let mut certificate = None;
    for (j, dominating) in pl.members().iter().enumerate() {
        if !y.is_subset_of(dominating) {
            continue;
        }
        if let Some(chain) = chain_in_stab(pl, &pm, j, n)? {
            verdict = true;
            certificate = Some(StableCertificate::ChainInPower {
                dominating: dominating.clone(),
                chain,
            });
            break;
        }
    }
    Ok(StablePairReport {
        variety: Variety::A,
        y: y.clone(),
        n: n.clone(),
        verdict,
        certificate,
    })
}

pub fn a_stable_maximal(m: &Monoid) -> Result<Vec<StablePairReport>> {
    a_stable_maximal_in(&henckell_closure(m)?)
}

/// All maximal stable pairs over aperiodic monoids: left components are
/// family members, right components the maximal chain-submonoid unions of
/// their stabilizers, reduced to a componentwise antichain.
pub fn a_stable_maximal_in(pl: &PowerMonoid) -> Result<Vec<StablePairReport>> {
    let pm = pl.as_monoid()?;
    let mut pairs: Vec<(PointSet, PointSet, Vec<PointSet>)> = Vec::new();
    for (j, y) in pl.members().iter().enumerate() {
        let stab = pm.stabilizer(j);
        let mut unions: Vec<(PointSet, PointSet)> = Vec::new();
        for w in closed_subsets(&pm, &stab) {
            if is_internal_l_chain(&pm, &w)? {
                unions.push((union_of(pl, &w), w));
            }
        }
        let keep = maximal_antichain(
            &unions.iter().map(|(u, _)| u.clone()).collect::<Vec<_>>(),
        );
        for n in keep {
            let (_, w) = unions
                .iter()
                .find(|(u, _)| *u == n)
                .expect("antichain members come from the union list");
            pairs.push((
                y.clone(),
                n,
                w.iter().map(|i| pl.member(i).clone()).collect(),
            ));
        }
    }
    let dominated = |a: &(PointSet, PointSet, Vec<PointSet>)| {
        pairs.iter().any(|b| {
            (a.0 != b.0 || a.1 != b.1)
                && a.0.is_subset_of(&b.0)
                && a.1.is_subset_of(&b.1)
        })
    };
    let mut reports: Vec<StablePairReport> = pairs
        .iter()
        .filter(|p| !dominated(p))
        .map(|(y, n, chain)| StablePairReport {
            variety: Variety::A,
            y: y.clone(),
            n: n.clone(),
            verdict: true,
            certificate: Some(StableCertificate::ChainInPower {
                dominating: y.clone(),
                chain: chain.clone(),
            }),
        })
        .collect();
    reports.sort_by(|a, b| a.y.cmp(&b.y).then(a.n.cmp(&b.n)));
    Ok(reports)
}

/// Recheck an accepted report from its certificate alone.
pub fn verify_m_certificate(m: &Monoid, report: &StablePairReport) -> bool {
    let Some(StableCertificate::IdempotentChain(chain)) = &report.certificate else {
        return false;
    };
    let Some(y) = report.y.first() else { return false };
    if report.y.len() != 1 {
        return false;
    }
    let stab = m.stabilizer(y);
    let chain_set = PointSet::from_ids(m.order(), chain.iter().copied());
    chain.iter().all(|&e| stab.contains(e))
        && is_l_chain_of_idempotents(m, &chain_set)
        && report.n.is_subset_of(&m.submonoid_closure(&chain_set))
}

/// Recheck an accepted report from its certificate alone.
pub fn verify_a_certificate(pl: &PowerMonoid, report: &StablePairReport) -> Result<bool> {
    let Some(StableCertificate::ChainInPower { dominating, chain }) = &report.certificate else {
        return Ok(false);
    };
    if !report.y.is_subset_of(dominating) {
        return Ok(false);
    }
    let Some(j) = pl.index_of(dominating) else { return Ok(false) };
    let pm = pl.as_monoid()?;
    let stab = pm.stabilizer(j);
    let mut w = PointSet::empty(pm.order());
    for z in chain {
        match pl.index_of(z) {
            Some(i) => w.insert(i),
            None => return Ok(false),
        }
    }
    Ok(w.is_subset_of(&stab)
        && pm.is_submonoid(&w)
        && is_internal_l_chain(&pm, &w)?
        && report.n.is_subset_of(&union_of(pl, &w)))
}
