//! The cut expansion of a finite monoid.
//!
//! An expansion element records a product value together with every
//! two-factor split seen along the way: generators start as
//! `(x, {(1,x), (x,1)})` and multiplication pushes factors through the cut
//! sets. The projection `eta` onto the product value is a surjective
//! homomorphism back to the base monoid, and stabilizers upstairs project to
//! chains in the L-order downstairs, which is what the pointlike machinery
//! exploits.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::monoid::{ElementId, Monoid};

/// Default bound on the number of expansion elements. The abstract monoid
/// materializes a quadratic table, so the cap also bounds memory.
pub const DEFAULT_ELEMENT_CAP: usize = 2048;

/// An element of the expansion: the product value (`diag`) plus the set of
/// two-factor splits (`cuts`), each pair multiplying back to `diag`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpansionElement {
    pub diag: ElementId,
    pub cuts: BTreeSet<(ElementId, ElementId)>,
}

impl fmt::Debug for ExpansionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.diag, self.cuts)
    }
}

pub fn identity_element(m: &Monoid) -> ExpansionElement {
    ExpansionElement {
        diag: m.identity(),
        cuts: BTreeSet::new(),
    }
}

/// The expansion image of a single generator letter.
pub fn generator_element(m: &Monoid, letter: &str) -> Result<ExpansionElement> {
    let x = m.letter(letter)?;
    Ok(gen_of(m, x))
}

fn gen_of(m: &Monoid, x: ElementId) -> ExpansionElement {
    ExpansionElement {
        diag: x,
        cuts: BTreeSet::from([(m.identity(), x), (x, m.identity())]),
    }
}

fn check_element(m: &Monoid, e: &ExpansionElement) -> Result<()> {
    let order = m.order();
    let bad = |id: usize| Error::BaseMismatch { left: id + 1, right: order };
    if e.diag >= order {
        return Err(bad(e.diag));
    }
    for &(u, v) in &e.cuts {
        if u >= order {
            return Err(bad(u));
        }
        if v >= order {
            return Err(bad(v));
        }
    }
    Ok(())
}

/// `(m, C) * (m', C') = (mm', m C' U C m')`, where the left factor acts on
/// first coordinates and the right factor on second coordinates.
pub fn hs_multiply(
    m: &Monoid,
    a: &ExpansionElement,
    b: &ExpansionElement,
) -> Result<ExpansionElement> {
    check_element(m, a)?;
    check_element(m, b)?;
    Ok(mul_unchecked(m, a, b))
}

fn mul_unchecked(m: &Monoid, a: &ExpansionElement, b: &ExpansionElement) -> ExpansionElement {
    let mut cuts = BTreeSet::new();
    for &(u, v) in &b.cuts {
        cuts.insert((m.mul(a.diag, u), v));
    }
    for &(u, v) in &a.cuts {
        cuts.insert((u, m.mul(v, b.diag)));
    }
    ExpansionElement {
        diag: m.mul(a.diag, b.diag),
        cuts,
    }
}

/// Expansion image of a word: the product value is the word's value and the
/// cuts are exactly the images of its two-factor splits. The empty word maps
/// to the identity element (no cuts).
pub fn hs_word<'a, I: IntoIterator<Item = &'a str>>(
    m: &Monoid,
    word: I,
) -> Result<ExpansionElement> {
    let mut acc = identity_element(m);
    for letter in word {
        let g = generator_element(m, letter)?;
        acc = mul_unchecked(m, &acc, &g);
    }
    Ok(acc)
}

/// The expansion monoid: elements in breadth-first canonical order from the
/// identity, the abstract multiplication table over them, and the projection
/// `eta` back to base element ids.
pub struct ExpansionMonoid {
    base: Monoid,
    elements: Vec<ExpansionElement>,
    index: HashMap<ExpansionElement, ElementId>,
    monoid: Monoid,
    eta: Vec<ElementId>,
}

impl fmt::Debug for ExpansionMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExpansionMonoid(order={}, base order={})",
            self.elements.len(),
            self.base.order()
        )
    }
}

impl ExpansionMonoid {
    pub fn base(&self) -> &Monoid {
        &self.base
    }

    pub fn elements(&self) -> &[ExpansionElement] {
        &self.elements
    }

    /// The expansion as an abstract monoid (same generator letters as the base).
    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn eta(&self) -> &[ElementId] {
        &self.eta
    }

    pub fn id_of(&self, e: &ExpansionElement) -> Option<ElementId> {
        self.index.get(e).copied()
    }
}

pub fn expand(m: &Monoid) -> Result<ExpansionMonoid> {
    expand_with_cap(m, DEFAULT_ELEMENT_CAP)
}

pub fn expand_with_cap(m: &Monoid, cap: usize) -> Result<ExpansionMonoid> {
    let gen_elems: Vec<(String, ExpansionElement)> = m
        .generators()
        .iter()
        .map(|(l, g)| (l.clone(), gen_of(m, *g)))
        .collect();
    let mut elements = vec![identity_element(m)];
    let mut index: HashMap<ExpansionElement, ElementId> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut queue: VecDeque<ElementId> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for (_, g) in &gen_elems {
            let p = mul_unchecked(m, &elements[i], g);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::SizeLimitExceeded { kind: "expansion elements", cap });
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let p = mul_unchecked(m, a, b);
            table.push(*index.get(&p).expect("products of generated elements are generated"));
        }
    }
    let generators = gen_elems
        .iter()
        .map(|(l, g)| (l.clone(), index[g]))
        .collect();
    let eta = elements.iter().map(|e| e.diag).collect();
    Ok(ExpansionMonoid {
        base: m.clone(),
        monoid: Monoid::from_parts_unchecked(n, 0, table, generators),
        elements,
        index,
        eta,
    })
}

/// Iterated expansion: level 1 expands `m`, level `i` expands the abstract
/// monoid of level `i-1`. Returns `depth` levels.
pub fn tower(m: &Monoid, depth: usize, cap: usize) -> Result<Vec<ExpansionMonoid>> {
    let mut levels: Vec<ExpansionMonoid> = Vec::with_capacity(depth);
    for i in 0..depth {
        let base = if i == 0 { m } else { levels[i - 1].monoid() };
        levels.push(expand_with_cap(base, cap)?);
    }
    Ok(levels)
}

/// Result of projecting a word's expansion stabilizer down to the base:
/// the `eta`-image of the stabilizer, sorted greatest-first in the L-order of
/// the base word's own stabilizer, and whether that image really is a chain
/// there.
pub struct StabProjection {
    pub chain: Vec<ElementId>,
    pub ok: bool,
}

pub fn stab_projection<'a, I: IntoIterator<Item = &'a str>>(
    m: &Monoid,
    word: I,
) -> Result<StabProjection> {
    let x = expand(m)?;
    stab_projection_in(&x, word)
}

pub fn stab_projection_in<'a, I: IntoIterator<Item = &'a str>>(
    x: &ExpansionMonoid,
    word: I,
) -> Result<StabProjection> {
    let word: Vec<&str> = word.into_iter().collect();
    let w = x.base.eval_word(word.iter().copied())?;
    let what = hs_word(&x.base, word.iter().copied())?;
    let hat_id = x
        .id_of(&what)
        .expect("every word image lies in the generated expansion");
    let stab_up = x.monoid.stabilizer(hat_id);
    let mut image: Vec<ElementId> = stab_up.iter().map(|i| x.eta[i]).collect();
    image.sort();
    image.dedup();

    let stab_down = x.base.stabilizer(w);
    let leq = |a: ElementId, b: ElementId| stab_down.iter().any(|s| x.base.mul(s, b) == a);
    let ok = image
        .iter()
        .enumerate()
        .all(|(i, &a)| image[i + 1..].iter().all(|&b| leq(a, b) || leq(b, a)));
    if ok {
        image.sort_by(|&a, &b| {
            let ab = leq(a, b);
            let ba = leq(b, a);
            // greatest first: a strictly below b sorts after it
            ab.cmp(&ba).then(a.cmp(&b))
        });
    }
    Ok(StabProjection { chain: image, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::green::is_aperiodic;

    fn cuts(pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn word_images_record_every_split() {
        let z2 = families::z2();
        let e = hs_word(&z2, ["g", "g"]).unwrap();
        assert_eq!(e.diag, 0);
        assert_eq!(e.cuts, cuts(&[(0, 0), (1, 1)]));

        let u1 = families::u1();
        let e = hs_word(&u1, ["x"]).unwrap();
        assert_eq!(e.diag, 1);
        assert_eq!(e.cuts, cuts(&[(0, 1), (1, 0)]));

        let empty = hs_word(&u1, []).unwrap();
        assert_eq!(empty, identity_element(&u1));
        assert!(empty.cuts.is_empty());
    }

    // independent route: enumerate all prefix/suffix splits directly
    fn split_image(m: &Monoid, word: &[&str]) -> ExpansionElement {
        let mut cuts = BTreeSet::new();
        if !word.is_empty() {
            for k in 0..=word.len() {
                cuts.insert((
                    m.eval_word(word[..k].iter().copied()).unwrap(),
                    m.eval_word(word[k..].iter().copied()).unwrap(),
                ));
            }
        }
        ExpansionElement {
            diag: m.eval_word(word.iter().copied()).unwrap(),
            cuts,
        }
    }

    #[test]
    fn multiplication_route_matches_direct_split_enumeration() {
        for m in [families::z2(), families::u1(), families::z3(), families::lz1()] {
            let letters: Vec<String> =
                m.generators().iter().map(|(l, _)| l.clone()).collect();
            let mut words: Vec<Vec<&str>> = vec![vec![]];
            for _ in 0..5 {
                let mut next = Vec::new();
                for w in &words {
                    for l in &letters {
                        let mut w2 = w.clone();
                        w2.push(l.as_str());
                        next.push(w2);
                    }
                }
                for w in &next {
                    assert_eq!(
                        hs_word(&m, w.iter().copied()).unwrap(),
                        split_image(&m, w)
                    );
                }
                words = next;
            }
        }
    }

    #[test]
    fn word_image_is_a_homomorphism() {
        let m = families::lz1();
        let words = [vec![], vec!["a"], vec!["b", "a"], vec!["a", "a", "b"]];
        for w1 in &words {
            for w2 in &words {
                let mut cat = w1.clone();
                cat.extend(w2.iter().copied());
                let lhs = hs_word(&m, cat.iter().copied()).unwrap();
                let rhs = hs_multiply(
                    &m,
                    &hs_word(&m, w1.iter().copied()).unwrap(),
                    &hs_word(&m, w2.iter().copied()).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let z2 = families::z2();
        let z3 = families::z3();
        let over_z3 = hs_word(&z3, ["g", "g"]).unwrap();
        let e = hs_multiply(&z2, &identity_element(&z2), &over_z3).unwrap_err();
        assert!(matches!(e, Error::BaseMismatch { .. }));
    }

    #[test]
    fn expansion_tables_of_the_small_fixtures() {
        let x = expand(&families::z2()).unwrap();
        assert_eq!(x.order(), 3);
        assert_eq!(
            x.monoid().table_rows(),
            vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]]
        );
        assert_eq!(x.eta(), &[0, 1, 0]);
        assert!(!is_aperiodic(x.monoid()));

        let x = expand(&families::u1()).unwrap();
        assert_eq!(x.order(), 3);
        assert_eq!(
            x.monoid().table_rows(),
            vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]
        );
        assert_eq!(x.eta(), &[0, 1, 1]);
        assert!(is_aperiodic(x.monoid()));

        let x = expand(&families::trivial()).unwrap();
        assert_eq!(x.order(), 2);
        assert_eq!(x.monoid().table_rows(), vec![vec![0, 1], vec![1, 1]]);

        assert_eq!(expand(&families::lz1()).unwrap().order(), 9);
        assert_eq!(expand(&families::rz1()).unwrap().order(), 9);
        let x = expand(&families::z3()).unwrap();
        assert_eq!(x.order(), 5);
        assert_eq!(x.eta(), &[0, 1, 2, 0, 1]);
    }

    #[test]
    fn cut_soundness_and_trivial_cuts() {
        for m in [families::z2(), families::u1(), families::lz1(), families::z3()] {
            let x = expand(&m).unwrap();
            for (i, e) in x.elements().iter().enumerate() {
                for &(u, v) in &e.cuts {
                    assert_eq!(m.mul(u, v), e.diag);
                }
                if i != 0 {
                    assert!(e.cuts.contains(&(m.identity(), e.diag)));
                    assert!(e.cuts.contains(&(e.diag, m.identity())));
                }
            }
            assert!(x.elements()[0].cuts.is_empty());
        }
    }

    #[test]
    fn eta_is_a_surjective_homomorphism() {
        for m in [families::z2(), families::u1(), families::lz1(), families::rz1()] {
            let x = expand(&m).unwrap();
            let n = x.order();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(
                        x.eta()[x.monoid().mul(a, b)],
                        m.mul(x.eta()[a], x.eta()[b])
                    );
                }
            }
            let mut image: Vec<_> = x.eta().to_vec();
            image.sort();
            image.dedup();
            assert_eq!(image, (0..m.order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn caps_stop_the_closure() {
        let e = expand_with_cap(&families::z2(), 2).unwrap_err();
        assert_eq!(
            e,
            Error::SizeLimitExceeded { kind: "expansion elements", cap: 2 }
        );
    }

    #[test]
    fn towers_iterate_the_construction() {
        let levels = tower(&families::u1(), 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(levels[0].order(), 3);
        assert_eq!(levels[1].order(), 5);
        assert!(is_aperiodic(levels[1].monoid()));
        let levels = tower(&families::trivial(), 2, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(levels[1].order(), 3);
    }

    #[test]
    fn stabilizer_projections_are_chains() {
        let sp = stab_projection(&families::z2(), ["g", "g"]).unwrap();
        assert!(sp.ok);
        assert_eq!(sp.chain, vec![0]);

        let sp = stab_projection(&families::z2(), []).unwrap();
        assert!(sp.ok);
        assert_eq!(sp.chain, vec![0]);

        // zero of U1: the whole expansion stabilizes X^2, image {1, 0} is a
        // chain with the identity on top
        let sp = stab_projection(&families::u1(), ["x", "x"]).unwrap();
        assert!(sp.ok);
        assert_eq!(sp.chain, vec![0, 1]);
    }
}
