//! Triples (A, B, C) that multiply like an absorption, A*B*C = A*B, under
//! every relational morphism to an aperiodic monoid.
//!
//! Decided by searching the pointlike family for dominating members
//! satisfying one of three equation shapes; the witnessing members, the case
//! tag, and the auxiliary members make the certificate.

use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::pointlikes::{henckell_closure, PowerMonoid};
use crate::pointset::PointSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TripleCase {
    /// B * C = B.
    One,
    /// A * B * T = A and C = T * B.
    Two { t: PointSet },
    /// A = A * T * S, B = (T * S)^i * T, and C = S * T.
    Three { s: PointSet, t: PointSet, i: usize },
}

impl TripleCase {
    pub fn number(&self) -> usize {
        match self {
            TripleCase::One => 1,
            TripleCase::Two { .. } => 2,
            TripleCase::Three { .. } => 3,
        }
    }
}

/// Dominating members (componentwise supersets of the query) plus the case
/// they satisfy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleCertificate {
    pub a: PointSet,
    pub b: PointSet,
    pub c: PointSet,
    pub case: TripleCase,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleReport {
    pub a: PointSet,
    pub b: PointSet,
    pub c: PointSet,
    pub verdict: bool,
    pub certificate: Option<TripleCertificate>,
}

pub fn a_triple_decide(
    m: &Monoid,
    a: &PointSet,
    b: &PointSet,
    c: &PointSet,
) -> Result<TripleReport> {
    a_triple_decide_in(&henckell_closure(m)?, a, b, c)
}

/// Decide against an already-computed pointlike family. Cases are tried in
/// order and members in canonical order, so the certificate is reproducible
/// and carries the lowest satisfiable case number.
pub fn a_triple_decide_in(
    pl: &PowerMonoid,
    a: &PointSet,
    b: &PointSet,
    c: &PointSet,
) -> Result<TripleReport> {
    for s in [a, b, c] {
        if s.is_empty() {
            return Err(Error::EmptySet { role: "triple component" });
        }
    }
    let report = |certificate: Option<TripleCertificate>| TripleReport {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        verdict: certificate.is_some(),
        certificate,
    };
    let m = pl.base();
    let sups = |x: &PointSet| -> Vec<&PointSet> {
        pl.members().iter().filter(|z| x.is_subset_of(z)).collect()
    };
    let a_sups = sups(a);
    let b_sups = sups(b);
    let c_sups = sups(c);

    for a2 in &a_sups {
        for b2 in &b_sups {
            for c2 in &c_sups {
                if &m.set_product(b2, c2) == *b2 {
                    return Ok(report(Some(TripleCertificate {
                        a: (*a2).clone(),
                        b: (*b2).clone(),
                        c: (*c2).clone(),
                        case: TripleCase::One,
                    })));
                }
            }
        }
    }
    for a2 in &a_sups {
        for b2 in &b_sups {
            for t in pl.members() {
                if &m.set_product(&m.set_product(a2, b2), t) != *a2 {
                    continue;
                }
                let c2 = m.set_product(t, b2);
                if c.is_subset_of(&c2) {
                    return Ok(report(Some(TripleCertificate {
                        a: (*a2).clone(),
                        b: (*b2).clone(),
                        c: c2,
                        case: TripleCase::Two { t: t.clone() },
                    })));
                }
            }
        }
    }
    for a2 in &a_sups {
        for s in pl.members() {
            for t in pl.members() {
                let ts = m.set_product(t, s);
                if &m.set_product(a2, &ts) != *a2 {
                    continue;
                }
                let c2 = m.set_product(s, t);
                if !c.is_subset_of(&c2) {
                    continue;
                }
                // walk (TS)^i until the power orbit cycles
                let mut seen = std::collections::HashSet::new();
                let mut power = ts.clone();
                let mut i = 1;
                while seen.insert(power.clone()) {
                    let b2 = m.set_product(&power, t);
                    if b.is_subset_of(&b2) {
                        return Ok(report(Some(TripleCertificate {
                            a: (*a2).clone(),
                            b: b2,
                            c: c2,
                            case: TripleCase::Three { s: s.clone(), t: t.clone(), i },
                        })));
                    }
                    power = m.set_product(&power, &ts);
                    i += 1;
                }
            }
        }
    }
    Ok(report(None))
}

pub fn a_triple_maximal(m: &Monoid) -> Result<Vec<TripleReport>> {
    Ok(a_triple_maximal_in(&henckell_closure(m)?))
}

/// The componentwise-maximal triples of family members satisfying some case.
pub fn a_triple_maximal_in(pl: &PowerMonoid) -> Vec<TripleReport> {
    let m = pl.base();
    let mut satisfying: std::collections::BTreeSet<(PointSet, PointSet, PointSet)> =
        std::collections::BTreeSet::new();
    for a2 in pl.members() {
        for b2 in pl.members() {
            for c2 in pl.members() {
                if &m.set_product(b2, c2) == b2 {
                    satisfying.insert((a2.clone(), b2.clone(), c2.clone()));
                }
            }
        }
    }
    for a2 in pl.members() {
        for b2 in pl.members() {
            for t in pl.members() {
                if &m.set_product(&m.set_product(a2, b2), t) == a2 {
                    satisfying.insert((a2.clone(), b2.clone(), m.set_product(t, b2)));
                }
            }
        }
    }
    for a2 in pl.members() {
        for s in pl.members() {
            for t in pl.members() {
                let ts = m.set_product(t, s);
                if &m.set_product(a2, &ts) != a2 {
                    continue;
                }
                let c2 = m.set_product(s, t);
                let mut seen = std::collections::HashSet::new();
                let mut power = ts.clone();
                while seen.insert(power.clone()) {
                    satisfying.insert((a2.clone(), m.set_product(&power, t), c2.clone()));
                    power = m.set_product(&power, &ts);
                }
            }
        }
    }
    let maximal: Vec<&(PointSet, PointSet, PointSet)> = satisfying
        .iter()
        .filter(|x| {
            !satisfying.iter().any(|y| {
                x != &y
                    && x.0.is_subset_of(&y.0)
                    && x.1.is_subset_of(&y.1)
                    && x.2.is_subset_of(&y.2)
            })
        })
        .collect();
    maximal
        .into_iter()
        .map(|(a, b, c)| {
            a_triple_decide_in(pl, a, b, c).expect("family members are nonempty")
        })
        .collect()
}

/// Recheck an accepted report from its certificate alone.
pub fn verify_triple_certificate(pl: &PowerMonoid, report: &TripleReport) -> bool {
    let Some(cert) = &report.certificate else { return false };
    let m = pl.base();
    let dominates = report.a.is_subset_of(&cert.a)
        && report.b.is_subset_of(&cert.b)
        && report.c.is_subset_of(&cert.c);
    if !dominates || !pl.contains(&cert.a) || !pl.contains(&cert.b) || !pl.contains(&cert.c) {
        return false;
    }
    match &cert.case {
        TripleCase::One => m.set_product(&cert.b, &cert.c) == cert.b,
        TripleCase::Two { t } => {
            pl.contains(t)
                && m.set_product(&m.set_product(&cert.a, &cert.b), t) == cert.a
                && m.set_product(t, &cert.b) == cert.c
        }
        TripleCase::Three { s, t, i } => {
            if *i < 1 || !pl.contains(s) || !pl.contains(t) {
                return false;
            }
            let ts = m.set_product(t, s);
            let mut power = ts.clone();
            for _ in 1..*i {
                power = m.set_product(&power, &ts);
            }
            m.set_product(&cert.a, &ts) == cert.a
                && m.set_product(&power, t) == cert.b
                && m.set_product(s, t) == cert.c
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn set(m: &Monoid, ids: &[usize]) -> PointSet {
        PointSet::from_ids(m.order(), ids.iter().copied())
    }

    #[test]
    fn identity_third_component_is_always_case_one() {
        for m in [families::z2(), families::u1(), families::lz1()] {
            let one = PointSet::singleton(m.order(), m.identity());
            for x in 0..m.order() {
                let sx = PointSet::singleton(m.order(), x);
                let r = a_triple_decide(&m, &sx, &sx, &one).unwrap();
                assert!(r.verdict);
                assert_eq!(r.certificate.as_ref().unwrap().case.number(), 1);
            }
        }
    }

    #[test]
    fn u1_rejects_the_killed_product() {
        let u1 = families::u1();
        let r = a_triple_decide(&u1, &set(&u1, &[0]), &set(&u1, &[0]), &set(&u1, &[1])).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.certificate, None);
    }

    #[test]
    fn z2_triple_dominated_by_the_full_group() {
        let z2 = families::z2();
        let r = a_triple_decide(&z2, &set(&z2, &[0]), &set(&z2, &[1]), &set(&z2, &[0, 1])).unwrap();
        assert!(r.verdict);
        let cert = r.certificate.clone().unwrap();
        assert_eq!(cert.case, TripleCase::One);
        assert_eq!(cert.a, set(&z2, &[0]));
        assert_eq!(cert.b, set(&z2, &[0, 1]));
        assert_eq!(cert.c, set(&z2, &[0, 1]));
        let pl = henckell_closure(&z2).unwrap();
        assert!(verify_triple_certificate(&pl, &r));
    }

    #[test]
    fn lz1_absorbs_between_left_zeros() {
        let lz1 = families::lz1();
        let r = a_triple_decide(&lz1, &set(&lz1, &[1]), &set(&lz1, &[1]), &set(&lz1, &[2])).unwrap();
        assert!(r.verdict);
        let cert = r.certificate.clone().unwrap();
        assert_eq!(cert.case, TripleCase::One);
        assert_eq!((cert.a, cert.b, cert.c), (set(&lz1, &[1]), set(&lz1, &[1]), set(&lz1, &[2])));
    }

    #[test]
    fn empty_components_are_rejected() {
        let z2 = families::z2();
        let e = a_triple_decide(&z2, &PointSet::empty(2), &set(&z2, &[0]), &set(&z2, &[0]))
            .unwrap_err();
        assert_eq!(e, Error::EmptySet { role: "triple component" });
    }

    #[test]
    fn maximal_triples_of_the_fixtures() {
        let z2 = families::z2();
        let got = a_triple_maximal(&z2).unwrap();
        assert_eq!(got.len(), 1);
        let full = set(&z2, &[0, 1]);
        assert_eq!(
            (&got[0].a, &got[0].b, &got[0].c),
            (&full, &full, &full)
        );

        let u1 = families::u1();
        let got = a_triple_maximal(&u1).unwrap();
        assert_eq!(got.len(), 7);
        assert!(got.iter().all(|r| r.verdict && r.a.len() == 1));
        assert!(!got
            .iter()
            .any(|r| (&r.a, &r.b, &r.c) == (&set(&u1, &[0]), &set(&u1, &[0]), &set(&u1, &[1]))));

        let lz1 = families::lz1();
        let got = a_triple_maximal(&lz1).unwrap();
        assert_eq!(got.len(), 25);
        let pl = henckell_closure(&lz1).unwrap();
        for r in &got {
            assert!(verify_triple_certificate(&pl, r));
        }
    }

    #[test]
    fn down_closedness_of_accepted_triples() {
        let z3 = families::z3();
        let pl = henckell_closure(&z3).unwrap();
        let full = z3.full_set();
        let r = a_triple_decide_in(&pl, &full, &full, &full).unwrap();
        assert!(r.verdict);
        for a in full.nonempty_subsets() {
            for b in full.nonempty_subsets() {
                for c in full.nonempty_subsets() {
                    assert!(a_triple_decide_in(&pl, &a, &b, &c).unwrap().verdict);
                }
            }
        }
    }
}
