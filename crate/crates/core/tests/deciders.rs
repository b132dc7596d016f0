//! Cross-decider laws: variety containments, the two readings of the chain
//! order, closure facts used by the stable-pair search, and agreement between
//! deciders and the witness oracle on small fixtures.

use monoidkit_core::enumeration::enumerate_monoids;
use monoidkit_core::families;
use monoidkit_core::inevitability::{
    encode_pointlike, encode_stable_pair, encode_triple, witness_sweep, SweepConfig, SweepOutcome,
    WitnessSet,
};
use monoidkit_core::pointlikes::henckell_closure;
use monoidkit_core::stable_pairs::{a_stable_decide_in, m_stable_decide, Variety};
use monoidkit_core::triples::a_triple_decide_in;
use monoidkit_core::{Monoid, PointSet};

fn corpus() -> Vec<(String, Monoid)> {
    let mut out = Vec::new();
    for order in 1..=4 {
        let all = enumerate_monoids(order).expect("orders up to 4 enumerate");
        for (i, m) in all.into_iter().enumerate() {
            out.push((format!("order{order}_{i}"), m));
        }
    }
    for (name, m) in families::curated() {
        out.push((name, m));
    }
    out
}

fn submonoid_carriers(m: &Monoid) -> Vec<PointSet> {
    let n = m.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask >> m.identity() & 1 == 0 {
            continue;
        }
        let w = PointSet::from_ids(n, (0..n).filter(|&x| mask >> x & 1 == 1));
        if m.is_submonoid(&w) {
            out.push(w);
        }
    }
    out
}

fn set(m: &Monoid, ids: &[usize]) -> PointSet {
    PointSet::from_ids(m.order(), ids.iter().copied())
}

#[test]
fn m_stability_implies_a_stability_on_the_whole_corpus() {
    for (name, m) in corpus() {
        let pl = henckell_closure(&m).expect("corpus closures fit the cap");
        for y in 0..m.order() {
            for n in submonoid_carriers(&m) {
                let mr = m_stable_decide(&m, y, &n).expect("valid inputs");
                if !mr.verdict {
                    continue;
                }
                let ar = a_stable_decide_in(&pl, &set(&m, &[y]), &n).expect("valid inputs");
                assert!(
                    ar.verdict,
                    "{name}: ({y}, {:?}) is M-stable but not A-stable",
                    n.ids()
                );
            }
        }
    }
}

/// The chain order in Stab(y) can be read ambient (in M) or internal (in
/// Stab(y)). Internal chains are ambient chains, so the internal reading can
/// only accept less; where the two disagree, the ambient acceptance must
/// still survive the witness oracle.
#[test]
fn internal_chain_order_accepts_a_subset_of_the_ambient_reading() {
    let m_cfg = SweepConfig::for_variety(Variety::M);
    for (name, m) in corpus() {
        let witness_set = WitnessSet::build(&m, &m_cfg).expect("library builds");
        for y in 0..m.order() {
            let stab = m.stabilizer(y);
            let idems: Vec<usize> = stab.iter().filter(|&e| m.is_idempotent(e)).collect();
            let internal_leq = |a: usize, b: usize| stab.iter().any(|s| m.mul(s, b) == a);
            for n in submonoid_carriers(&m) {
                let mut internal = false;
                for mask in 0u32..(1 << idems.len()) {
                    let chain: Vec<usize> = idems
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    let comparable = chain.iter().enumerate().all(|(i, &a)| {
                        chain[i + 1..]
                            .iter()
                            .all(|&b| internal_leq(a, b) || internal_leq(b, a))
                    });
                    if comparable
                        && n.is_subset_of(&m.submonoid_closure(&set(&m, &chain)))
                    {
                        internal = true;
                        break;
                    }
                }
                let ambient = m_stable_decide(&m, y, &n).expect("valid inputs").verdict;
                assert!(
                    !internal || ambient,
                    "{name}: ({y}, {:?}) accepted internally but not ambiently",
                    n.ids()
                );
                if ambient && !internal {
                    let graph = encode_stable_pair(&set(&m, &[y]), &n).expect("encodes");
                    match witness_set.sweep(&graph).expect("sweep runs") {
                        SweepOutcome::Consistent { .. } => {}
                        SweepOutcome::Refuted { witness } => panic!(
                            "{name}: ambient-only pair ({y}, {:?}) refuted by {}",
                            n.ids(),
                            witness.name
                        ),
                    }
                }
            }
        }
    }
}

#[test]
fn unions_over_pointlike_submonoids_are_submonoids() {
    for (name, m) in corpus() {
        let pl = henckell_closure(&m).expect("corpus closures fit the cap");
        let pm = pl.as_monoid().expect("corpus families fit the table cap");
        for i in 0..pm.order() {
            for j in 0..pm.order() {
                let w = pm.submonoid_closure(&PointSet::from_ids(pm.order(), [i, j]));
                let mut union = PointSet::empty(m.order());
                for k in w.iter() {
                    union.union_with(pl.member(k));
                }
                assert!(
                    m.is_submonoid(&union),
                    "{name}: the union over family submonoid {:?} escapes",
                    w.ids()
                );
            }
        }
    }
}

#[test]
fn rejected_fixtures_are_refuted_by_the_oracle() {
    let z2 = families::z2();
    let graph = encode_stable_pair(&set(&z2, &[1]), &z2.full_set()).expect("encodes");
    match witness_sweep(&z2, &graph, &SweepConfig::for_variety(Variety::M)).expect("sweeps") {
        SweepOutcome::Refuted { .. } => {}
        SweepOutcome::Consistent { .. } => panic!("({{g}}, Z2) should be refuted over M"),
    }

    let u1 = families::u1();
    let graph = encode_pointlike(&u1.full_set()).expect("encodes");
    match witness_sweep(&u1, &graph, &SweepConfig::for_variety(Variety::A)).expect("sweeps") {
        SweepOutcome::Refuted { .. } => {}
        SweepOutcome::Consistent { .. } => panic!("{{1, x}} over U1 should be refuted"),
    }
}

/// On small fixtures the triple decider and the sweep agree in both sound
/// directions: accepted triples are never refuted, and refuted triples are
/// never accepted.
#[test]
fn triple_verdicts_and_sweeps_never_contradict() {
    let a_cfg = SweepConfig::for_variety(Variety::A);
    for m in [families::z2(), families::u1(), families::lz1()] {
        let pl = henckell_closure(&m).expect("small closures fit");
        let witness_set = WitnessSet::build(&m, &a_cfg).expect("library builds");
        let subsets: Vec<PointSet> = (1u32..(1 << m.order()))
            .map(|mask| {
                PointSet::from_ids(m.order(), (0..m.order()).filter(|&x| mask >> x & 1 == 1))
            })
            .collect();
        for a in &subsets {
            for b in &subsets {
                for c in &subsets {
                    let verdict = a_triple_decide_in(&pl, a, b, c).expect("decides").verdict;
                    let graph = encode_triple(&m, a, b, c).expect("encodes");
                    match witness_set.sweep(&graph).expect("sweeps") {
                        SweepOutcome::Refuted { witness } => assert!(
                            !verdict,
                            "accepted triple ({:?}, {:?}, {:?}) refuted by {}",
                            a.ids(),
                            b.ids(),
                            c.ids(),
                            witness.name
                        ),
                        SweepOutcome::Consistent { .. } => {}
                    }
                }
            }
        }
    }
}
