//! Deterministic maximal-clique enumeration (Bron-Kerbosch with pivoting)
//! over small graphs given by an adjacency predicate.
//!
//! Used for chains: a set of pairwise comparable elements in a preorder is
//! exactly a clique of the comparability graph, so maximal chains are maximal
//! cliques.

/// All maximal cliques of the graph on `0..n` with adjacency `adj`.
/// Each clique is sorted ascending; the list is sorted lexicographically.
/// Vertices are always adjacent to themselves implicitly.
pub(crate) fn maximal_cliques(n: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    assert!(n <= 64, "clique search is for desk-scale graphs");
    let neighbours: Vec<u64> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && adj(v, u))
                .fold(0u64, |acc, u| acc | 1 << u)
        })
        .collect();
    let mut out = Vec::new();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    expand(&neighbours, 0, all, 0, &mut out);
    out.sort();
    out
}

fn expand(neighbours: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<Vec<usize>>) {
    if p == 0 && x == 0 {
        out.push(bits(r));
        return;
    }
    // pivot: vertex of p | x covering the most of p, ties to the lowest id
    let pivot = bits(p | x)
        .into_iter()
        .max_by_key(|&u| ((p & neighbours[u]).count_ones(), usize::MAX - u))
        .unwrap();
    for v in bits(p & !neighbours[pivot]) {
        let bit = 1u64 << v;
        expand(neighbours, r | bit, p & neighbours[v], x & neighbours[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn bits(mut w: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while w != 0 {
        let v = w.trailing_zeros() as usize;
        out.push(v);
        w &= w - 1;
    }
    out
}
