//! Green's preorders and relations, aperiodicity, ideals, and the structural
//! predicates built on them (chains of idempotents, R-trivial bands, ER,
//! absolute Type I), plus eggbox rendering.

use crate::cliques::maximal_cliques;
use crate::error::Result;
use crate::monoid::{ElementId, Monoid};
use crate::pointset::PointSet;

/// The four Green preorders/partitions of a monoid, computed eagerly.
///
/// `a <=_L b` iff `a` is a left multiple of `b` (`a = m*b` for some `m`,
/// including `m = 1`); R is the mirror image, J the two-sided version, and
/// H-classes are intersections of L- and R-classes. Class lists are sorted by
/// least element, elements ascending within each class.
pub struct GreenData {
    order: usize,
    leq_l: Vec<bool>,
    leq_r: Vec<bool>,
    leq_j: Vec<bool>,
    pub l_classes: Vec<Vec<ElementId>>,
    pub r_classes: Vec<Vec<ElementId>>,
    pub j_classes: Vec<Vec<ElementId>>,
    pub h_classes: Vec<Vec<ElementId>>,
    pub l_class_of: Vec<usize>,
    pub r_class_of: Vec<usize>,
    pub j_class_of: Vec<usize>,
    pub h_class_of: Vec<usize>,
}

impl GreenData {
    pub fn compute(m: &Monoid) -> GreenData {
        let n = m.order();
        let mut leq_l = vec![false; n * n];
        let mut leq_r = vec![false; n * n];
        let mut leq_j = vec![false; n * n];
        for b in 0..n {
            for x in 0..n {
                let mb = m.mul(x, b);
                leq_l[mb * n + b] = true;
                let bm = m.mul(b, x);
                leq_r[bm * n + b] = true;
                for y in 0..n {
                    leq_j[m.mul(mb, y) * n + b] = true;
                }
            }
        }
        let (l_classes, l_class_of) = partition(n, &leq_l);
        let (r_classes, r_class_of) = partition(n, &leq_r);
        let (j_classes, j_class_of) = partition(n, &leq_j);

        // H-classes: simultaneous refinement of L and R
        let mut h_class_of = vec![usize::MAX; n];
        let mut h_classes: Vec<Vec<ElementId>> = Vec::new();
        for a in 0..n {
            if h_class_of[a] != usize::MAX {
                continue;
            }
            let members: Vec<ElementId> = (a..n)
                .filter(|&b| {
                    l_class_of[b] == l_class_of[a] && r_class_of[b] == r_class_of[a]
                })
                .collect();
            for &b in &members {
                h_class_of[b] = h_classes.len();
            }
            h_classes.push(members);
        }

        GreenData {
            order: n,
            leq_l,
            leq_r,
            leq_j,
            l_classes,
            r_classes,
            j_classes,
            h_classes,
            l_class_of,
            r_class_of,
            j_class_of,
            h_class_of,
        }
    }

    pub fn leq_l(&self, a: ElementId, b: ElementId) -> bool {
        self.leq_l[a * self.order + b]
    }

    pub fn leq_r(&self, a: ElementId, b: ElementId) -> bool {
        self.leq_r[a * self.order + b]
    }

    pub fn leq_j(&self, a: ElementId, b: ElementId) -> bool {
        self.leq_j[a * self.order + b]
    }
}

fn partition(n: usize, leq: &[bool]) -> (Vec<Vec<ElementId>>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<ElementId> = (a..n)
            .filter(|&b| leq[a * n + b] && leq[b * n + a])
            .collect();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members);
    }
    (classes, class_of)
}

/// A monoid is aperiodic iff every element's powers stabilize:
/// `a^n = a^(n+1)` for n at least the order.
pub fn is_aperiodic(m: &Monoid) -> bool {
    let n = m.order();
    (0..n).all(|a| {
        let mut x = m.identity();
        for _ in 0..n {
            x = m.mul(x, a);
        }
        m.mul(x, a) == x
    })
}

/// The least two-sided ideal: the unique minimum J-class.
pub fn minimal_ideal(m: &Monoid) -> PointSet {
    let g = GreenData::compute(m);
    PointSet::from_ids(
        m.order(),
        (0..m.order()).filter(|&x| (0..m.order()).all(|y| g.leq_j(x, y))),
    )
}

/// Is `y` a set of idempotents that are pairwise comparable in the ambient
/// <=_L order? The empty set counts (it generates the trivial submonoid).
pub fn is_l_chain_of_idempotents(m: &Monoid, y: &PointSet) -> bool {
    y.iter().all(|e| m.is_idempotent(e))
        && pairwise(&y.ids(), |a, b| m.l_leq(a, b) || m.l_leq(b, a))
}

/// Does the submonoid `w`, viewed as a monoid in its own right, have a total
/// L-preorder? Comparability is witnessed inside `w`: `a <=_L b` iff `a = v*b`
/// for some `v` in `w`.
pub fn is_internal_l_chain(m: &Monoid, w: &PointSet) -> Result<bool> {
    m.check_submonoid(w)?;
    let ids = w.ids();
    Ok(pairwise(&ids, |a, b| {
        ids.iter().any(|&v| m.mul(v, b) == a) || ids.iter().any(|&v| m.mul(v, a) == b)
    }))
}

/// Is `w` a band (all elements idempotent) whose internal R-order is trivial?
pub fn is_r_trivial_band(m: &Monoid, w: &PointSet) -> Result<bool> {
    m.check_submonoid(w)?;
    let ids = w.ids();
    if !ids.iter().all(|&e| m.is_idempotent(e)) {
        return Ok(false);
    }
    Ok(internally_r_trivial(m, &ids))
}

/// ER: the submonoid generated by the idempotents is R-trivial (as a monoid
/// in its own right).
pub fn is_er(m: &Monoid) -> bool {
    let e = m.submonoid_closure(&PointSet::from_ids(m.order(), m.idempotents()));
    internally_r_trivial(m, &e.ids())
}

fn internally_r_trivial(m: &Monoid, ids: &[ElementId]) -> bool {
    pairwise(ids, |a, b| {
        a == b
            || !(ids.iter().any(|&v| m.mul(b, v) == a)
                && ids.iter().any(|&v| m.mul(a, v) == b))
    })
}

/// Absolute Type I: some chain of `w`'s internal L-classes has a union that
/// generates all of `w`. Enlarging a chain only enlarges the generated
/// submonoid, so it is enough to test maximal chains, i.e. maximal cliques of
/// the comparability graph on classes.
pub fn is_absolute_type_i(m: &Monoid, w: &PointSet) -> Result<bool> {
    m.check_submonoid(w)?;
    let ids = w.ids();
    let k = ids.len();
    let leq = |a: usize, b: usize| ids.iter().any(|&v| m.mul(v, ids[b]) == ids[a]);
    let mut class_of = vec![usize::MAX; k];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (i..k).filter(|&j| leq(i, j) && leq(j, i)).collect();
        for &j in &members {
            class_of[j] = classes.len();
        }
        classes.push(members);
    }
    let class_leq = |a: usize, b: usize| leq(classes[a][0], classes[b][0]);
    for chain in maximal_cliques(classes.len(), |a, b| class_leq(a, b) || class_leq(b, a)) {
        let seed = PointSet::from_ids(
            m.order(),
            chain.iter().flat_map(|&c| classes[c].iter().map(|&i| ids[i])),
        );
        if m.submonoid_closure(&seed) == *w {
            return Ok(true);
        }
    }
    Ok(false)
}

fn pairwise(ids: &[ElementId], mut ok: impl FnMut(ElementId, ElementId) -> bool) -> bool {
    ids.iter()
        .enumerate()
        .all(|(i, &a)| ids[i + 1..].iter().all(|&b| ok(a, b)))
}

/// Eggbox diagram in DOT: one table node per J-class, rows indexed by
/// R-classes and columns by L-classes, each cell an H-class (starred when it
/// contains an idempotent). Arrows point from a J-class to the J-classes
/// immediately below it.
pub fn eggbox_dot(m: &Monoid) -> String {
    let g = GreenData::compute(m);
    let nj = g.j_classes.len();
    let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
    for (ji, jc) in g.j_classes.iter().enumerate() {
        let mut rows: Vec<usize> = jc.iter().map(|&x| g.r_class_of[x]).collect();
        rows.sort();
        rows.dedup();
        let mut cols: Vec<usize> = jc.iter().map(|&x| g.l_class_of[x]).collect();
        cols.sort();
        cols.dedup();
        let mut label = String::from("<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">");
        for &r in &rows {
            label.push_str("<tr>");
            for &c in &cols {
                let cell: Vec<ElementId> = jc
                    .iter()
                    .copied()
                    .filter(|&x| g.r_class_of[x] == r && g.l_class_of[x] == c)
                    .collect();
                let star = if cell.iter().any(|&x| m.is_idempotent(x)) {
                    "*"
                } else {
                    ""
                };
                let ids = cell
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                label.push_str(&format!("<td>{ids}{star}</td>"));
            }
            label.push_str("</tr>");
        }
        label.push_str("</table>>");
        out.push_str(&format!("  j{ji} [label={label}];\n"));
    }
    // covering edges of the J-order on classes
    let class_leq = |a: usize, b: usize| g.leq_j(g.j_classes[a][0], g.j_classes[b][0]);
    for upper in 0..nj {
        for lower in 0..nj {
            if upper == lower || !class_leq(lower, upper) || class_leq(upper, lower) {
                continue;
            }
            let covered = (0..nj).any(|mid| {
                mid != upper
                    && mid != lower
                    && class_leq(lower, mid)
                    && !class_leq(mid, lower)
                    && class_leq(mid, upper)
                    && !class_leq(upper, mid)
            });
            if !covered {
                out.push_str(&format!("  j{upper} -> j{lower};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::families;

    #[test]
    fn green_classes_of_left_zero_with_identity() {
        let m = families::lz1();
        let g = GreenData::compute(&m);
        assert_eq!(g.l_classes, vec![vec![0], vec![1, 2]]);
        assert_eq!(g.r_classes, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(g.j_classes, vec![vec![0], vec![1, 2]]);
        assert_eq!(g.h_classes, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn green_classes_of_groups_are_whole() {
        let g = GreenData::compute(&families::z3());
        assert_eq!(g.l_classes, vec![vec![0, 1, 2]]);
        assert_eq!(g.h_classes, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn aperiodicity_matches_h_triviality_on_small_monoids() {
        for m in [
            families::trivial(),
            families::u1(),
            families::z2(),
            families::z3(),
            families::lz1(),
            families::rz1(),
            families::semilattice_chain(3),
        ] {
            let g = GreenData::compute(&m);
            let h_trivial = g.h_classes.iter().all(|c| c.len() == 1);
            assert_eq!(is_aperiodic(&m), h_trivial, "{m:?}");
        }
        assert!(!is_aperiodic(&families::z2()));
        assert!(is_aperiodic(&families::u1()));
    }

    #[test]
    fn minimal_ideal_examples() {
        assert_eq!(minimal_ideal(&families::lz1()).ids(), vec![1, 2]);
        assert_eq!(minimal_ideal(&families::rz1()).ids(), vec![1, 2]);
        assert_eq!(minimal_ideal(&families::z2()).ids(), vec![0, 1]);
        assert_eq!(minimal_ideal(&families::u1()).ids(), vec![1]);
    }

    #[test]
    fn idempotent_chains_in_ambient_order() {
        let lz = families::lz1();
        assert!(is_l_chain_of_idempotents(&lz, &PointSet::from_ids(3, [0, 1, 2])));
        assert!(is_l_chain_of_idempotents(&lz, &PointSet::empty(3)));
        let rz = families::rz1();
        assert!(
            !is_l_chain_of_idempotents(&rz, &PointSet::from_ids(3, [1, 2])),
            "distinct right zeros are L-incomparable"
        );
        assert!(!is_l_chain_of_idempotents(&families::z2(), &PointSet::from_ids(2, [0, 1])));
    }

    #[test]
    fn internal_l_chain_and_band_checks() {
        let lz = families::lz1();
        assert!(is_internal_l_chain(&lz, &lz.full_set()).unwrap());
        assert!(is_r_trivial_band(&lz, &lz.full_set()).unwrap());
        let rz = families::rz1();
        assert!(!is_internal_l_chain(&rz, &rz.full_set()).unwrap());
        assert!(
            !is_r_trivial_band(&rz, &rz.full_set()).unwrap(),
            "right zeros are R-equivalent"
        );
        let err = is_internal_l_chain(&lz, &PointSet::from_ids(3, [1, 2])).unwrap_err();
        assert!(matches!(err, Error::NotASubmonoid { .. }));
    }

    #[test]
    fn er_examples() {
        assert!(is_er(&families::lz1()));
        assert!(!is_er(&families::rz1()));
        assert!(is_er(&families::z2()), "only idempotent is the identity");
        assert!(is_er(&families::u1()));
    }

    #[test]
    fn absolute_type_i_examples() {
        let lz = families::lz1();
        assert!(is_absolute_type_i(&lz, &lz.full_set()).unwrap());
        let rz = families::rz1();
        assert!(!is_absolute_type_i(&rz, &rz.full_set()).unwrap());
        let z2 = families::z2();
        assert!(
            is_absolute_type_i(&z2, &z2.full_set()).unwrap(),
            "a group is a single L-class"
        );
    }

    #[test]
    fn eggbox_renders_boxes_and_cells() {
        let dot = eggbox_dot(&families::lz1());
        assert!(dot.contains("j0"));
        assert!(dot.contains("<td>0*</td>"));
        assert!(dot.contains("j0 -> j1") || dot.contains("j1 -> j0"));
    }
}
