//! Structural laws checked across the whole corpus: stabilizers, variety
//! facts about submonoids, and their preservation under quotients.

use monoidkit_core::enumeration::enumerate_monoids;
use monoidkit_core::families;
use monoidkit_core::green;
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

/// Every product-closed subset containing the identity, i.e. every submonoid
/// carrier. Corpus orders stay tiny, so a mask scan is fine.
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

#[test]
fn stabilizers_are_submonoids_that_fix_their_element() {
    for (name, m) in corpus() {
        for x in 0..m.order() {
            let stab = m.stabilizer(x);
            assert!(m.is_submonoid(&stab), "{name}: stab({x}) is not a submonoid");
            for s in stab.iter() {
                assert_eq!(m.mul(x, s), x, "{name}: {s} fails to stabilize {x}");
            }
        }
    }
}

#[test]
fn aperiodic_absolute_type_i_submonoids_are_er_inside() {
    for (name, m) in corpus() {
        for w in submonoid_carriers(&m) {
            if !green::is_absolute_type_i(&m, &w).expect("valid carrier") {
                continue;
            }
            let (sub, _) = m.restriction(&w).expect("valid carrier");
            if green::is_aperiodic(&sub) {
                assert!(
                    green::is_er(&sub),
                    "{name}: aperiodic absolute Type I carrier {:?} is not ER",
                    w.ids()
                );
            }
        }
    }
}

#[test]
fn internal_l_chains_are_absolute_type_i() {
    for (name, m) in corpus() {
        for w in submonoid_carriers(&m) {
            if green::is_internal_l_chain(&m, &w).expect("valid carrier") {
                assert!(
                    green::is_absolute_type_i(&m, &w).expect("valid carrier"),
                    "{name}: internal L-chain {:?} is not absolute Type I",
                    w.ids()
                );
            }
        }
    }
}

#[test]
fn quotients_preserve_absolute_type_i() {
    // Onto homomorphisms are supplied as explicit congruence partitions.
    let samples: Vec<(&str, Monoid, Vec<Vec<usize>>)> = vec![
        ("Z4 mod its 2-subgroup", families::cyclic(4), vec![vec![0, 2], vec![1, 3]]),
        ("Z2 collapsed", families::z2(), vec![vec![0, 1]]),
        ("chain3 tail merge", families::semilattice_chain(3), vec![
            vec![0],
            vec![1],
            vec![2, 3],
        ]),
        ("LZ1 zeros merged", families::lz1(), vec![vec![0], vec![1, 2]]),
        ("U1 identity map", families::u1(), vec![vec![0], vec![1]]),
    ];
    for (name, m, classes) in samples {
        let (q, proj) = m.quotient(&classes).expect("sample partitions are congruences");
        for w in submonoid_carriers(&m) {
            if !green::is_absolute_type_i(&m, &w).expect("valid carrier") {
                continue;
            }
            let image = PointSet::from_ids(q.order(), w.iter().map(|x| proj[x]));
            assert!(
                green::is_absolute_type_i(&q, &image).expect("images of carriers are carriers"),
                "{name}: the image of absolute Type I carrier {:?} lost the property",
                w.ids()
            );
        }
    }
}
