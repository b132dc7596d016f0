//! Exhaustive enumeration of small monoids up to isomorphism, and the witness
//! library assembled from it. Past the exhaustive horizon the library falls
//! back on curated families and their expansion levels.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::expansion;
use crate::families;
use crate::green::is_aperiodic;
use crate::monoid::{ElementId, Monoid};
use crate::pointset::PointSet;

/// Exhaustive enumeration refuses orders past this; the search space explodes.
pub const MAX_EXHAUSTIVE_ORDER: usize = 4;

/// Generating-subset scans walk the whole powerset; carriers past this size
/// only record their declared generator set.
const SUBSET_SCAN_LIMIT: usize = 16;

const UNSET: ElementId = usize::MAX;

/// All orderings of `0..k`, lexicographically.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(pool: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            let x = pool.remove(i);
            cur.push(x);
            rec(pool, cur, out);
            cur.pop();
            pool.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out
}

fn relabel(n: usize, table: &[ElementId], perm: &[usize]) -> Vec<ElementId> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] * n + perm[b]] = perm[table[a * n + b]];
        }
    }
    out
}

/// The lexicographically least row-major table among the relabelings that
/// send the identity to 0. Two monoids are isomorphic exactly when their
/// canonical tables coincide. Cost grows factorially; meant for small orders.
pub fn canonical_table(m: &Monoid) -> Vec<ElementId> {
    let n = m.order();
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push(m.mul(a, b));
        }
    }
    let others: Vec<ElementId> = (0..n).filter(|&x| x != m.identity()).collect();
    let mut best: Option<Vec<ElementId>> = None;
    for ord in permutations(n - 1) {
        let mut perm = vec![0; n];
        for (slot, &pick) in ord.iter().enumerate() {
            perm[others[pick]] = slot + 1;
        }
        let cand = relabel(n, &flat, &perm);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("a monoid has at least the identity relabeling")
}

/// Associativity over the cells filled so far; triples with an unknown entry
/// anywhere along either bracketing are skipped.
fn partial_associativity_holds(n: usize, t: &[ElementId]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            if ab == UNSET {
                continue;
            }
            for c in 0..n {
                let bc = t[b * n + c];
                if bc == UNSET {
                    continue;
                }
                let left = t[ab * n + c];
                let right = t[a * n + bc];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}

fn is_canonical(n: usize, t: &[ElementId]) -> bool {
    let t = t.to_vec();
    for ord in permutations(n - 1) {
        let mut perm = vec![0; n];
        for (slot, &pick) in ord.iter().enumerate() {
            perm[pick + 1] = slot + 1;
        }
        if relabel(n, &t, &perm) < t {
            return false;
        }
    }
    true
}

/// Canonical tables of every monoid of the given order, by backtracking over
/// the free cells with the identity pinned to 0. Output is lexicographic.
fn enumerate_tables(n: usize) -> Vec<Vec<ElementId>> {
    fn fill(
        n: usize,
        table: &mut Vec<ElementId>,
        cells: &[usize],
        k: usize,
        out: &mut Vec<Vec<ElementId>>,
    ) {
        if k == cells.len() {
            if is_canonical(n, table) {
                out.push(table.clone());
            }
            return;
        }
        for v in 0..n {
            table[cells[k]] = v;
            if partial_associativity_holds(n, table) {
                fill(n, table, cells, k + 1, out);
            }
        }
        table[cells[k]] = UNSET;
    }

    let mut table = vec![UNSET; n * n];
    for k in 0..n {
        table[k] = k;
        table[k * n] = k;
    }
    let cells: Vec<usize> = (1..n)
        .flat_map(|i| (1..n).map(move |j| i * n + j))
        .collect();
    let mut out = Vec::new();
    fill(n, &mut table, &cells, 0, &mut out);
    out
}

/// Every subset of the carrier whose closure is the whole monoid, in
/// canonical set order (cardinality, then members). Carriers past the scan
/// limit report only the declared generator set.
pub fn generating_subsets(m: &Monoid) -> Vec<Vec<ElementId>> {
    let n = m.order();
    if n > SUBSET_SCAN_LIMIT {
        let mut ids: Vec<ElementId> = m.generators().iter().map(|&(_, g)| g).collect();
        ids.sort_unstable();
        ids.dedup();
        return vec![ids];
    }
    let full = m.full_set();
    let mut subsets: Vec<Vec<ElementId>> = (0u32..1 << n)
        .filter_map(|mask| {
            let ids: Vec<ElementId> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            let seed = PointSet::from_ids(n, ids.iter().copied());
            (m.submonoid_closure(&seed) == full).then_some(ids)
        })
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// One representative per isomorphism class, identity at 0, tables canonical
/// and in lexicographic order. Generators are the first minimal generating
/// subset (fewest elements, then least ids), lettered `g0`, `g1`, ...
pub fn enumerate_monoids(order: usize) -> Result<Vec<Monoid>> {
    if order == 0 {
        return Err(Error::Malformed {
            detail: "no monoid has order zero".into(),
        });
    }
    if order > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: MAX_EXHAUSTIVE_ORDER,
        });
    }
    enumerate_tables(order)
        .into_iter()
        .map(|flat| {
            let rows: Vec<Vec<ElementId>> = (0..order)
                .map(|a| flat[a * order..(a + 1) * order].to_vec())
                .collect();
            let probe = Monoid::from_parts_unchecked(
                order,
                0,
                flat,
                (0..order).map(|i| (format!("g{i}"), i)).collect(),
            );
            let gens = generating_subsets(&probe)
                .into_iter()
                .next()
                .expect("the full carrier always generates")
                .into_iter()
                .enumerate()
                .map(|(i, g)| (format!("g{i}"), g))
                .collect();
            // full validation doubles as a safety net over the search
            Monoid::from_table(rows, 0, gens)
        })
        .collect()
}

/// A sweep target: the monoid plus every generating subset of its carrier.
#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub name: String,
    pub monoid: Monoid,
    pub generating_subsets: Vec<Vec<ElementId>>,
}

fn entry(name: String, monoid: Monoid) -> LibraryEntry {
    let generating_subsets = generating_subsets(&monoid);
    LibraryEntry {
        name,
        monoid,
        generating_subsets,
    }
}

/// Witness targets of order at most `max_order`: exhaustive (up to
/// isomorphism) while enumeration is tractable, then curated families and the
/// first two expansion levels over them. With `aperiodic_only`, targets
/// containing a nontrivial group are dropped. Entry names are stable across
/// both modes.
pub fn monoid_library(max_order: usize, aperiodic_only: bool) -> Result<Vec<LibraryEntry>> {
    if max_order == 0 {
        return Err(Error::Malformed {
            detail: "a witness library needs max order at least 1".into(),
        });
    }
    let mut entries = Vec::new();
    for order in 1..=max_order.min(MAX_EXHAUSTIVE_ORDER) {
        for (i, m) in enumerate_monoids(order)?.into_iter().enumerate() {
            if aperiodic_only && !is_aperiodic(&m) {
                continue;
            }
            entries.push(entry(format!("order{order}_{i}"), m));
        }
    }
    if max_order > MAX_EXHAUSTIVE_ORDER {
        // exact-table dedup; orders inside the exhaustive range are already
        // represented up to isomorphism and are skipped outright
        let mut seen: BTreeSet<Vec<ElementId>> = BTreeSet::new();
        let mut push = |entries: &mut Vec<LibraryEntry>, name: String, m: Monoid| {
            if m.order() <= MAX_EXHAUSTIVE_ORDER || m.order() > max_order {
                return;
            }
            if aperiodic_only && !is_aperiodic(&m) {
                return;
            }
            let mut key = vec![m.identity()];
            for a in 0..m.order() {
                for b in 0..m.order() {
                    key.push(m.mul(a, b));
                }
            }
            if seen.insert(key) {
                entries.push(entry(name, m));
            }
        };
        for (name, m) in families::curated() {
            push(&mut entries, name.clone(), m.clone());
            let mut base = m;
            for level in 1..=2 {
                match expansion::expand_with_cap(&base, max_order) {
                    Ok(x) => {
                        let lm = x.monoid().clone();
                        push(&mut entries, format!("{name}_x{level}"), lm.clone());
                        base = lm;
                    }
                    Err(_) => break,
                }
            }
        }
    }
    Ok(entries)
}

/// The aperiodic witness library.
pub fn aperiodic_library(max_order: usize) -> Result<Vec<LibraryEntry>> {
    monoid_library(max_order, true)
}
