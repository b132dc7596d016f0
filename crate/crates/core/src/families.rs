//! Named small monoids used as fixtures, corpus entries, and library seeds.

use crate::monoid::Monoid;

/// The one-element monoid, with a single (redundant) generator so that word
/// constructions over it are possible.
pub fn trivial() -> Monoid {
    Monoid::from_table(vec![vec![0]], 0, vec![("a".into(), 0)]).unwrap()
}

/// `{1, 0}` with `0` absorbing: the two-element semilattice.
pub fn u1() -> Monoid {
    Monoid::from_table(vec![vec![0, 1], vec![1, 1]], 0, vec![("x".into(), 1)]).unwrap()
}

/// Cyclic group of order `n` (id 0 is the identity, 1 the generator `g`).
pub fn cyclic(n: usize) -> Monoid {
    assert!(n >= 1);
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    Monoid::from_table(table, 0, vec![("g".into(), 1 % n)]).unwrap()
}

pub fn z2() -> Monoid {
    cyclic(2)
}

pub fn z3() -> Monoid {
    cyclic(3)
}

/// `k` left zeros (`a * x = a`) with an adjoined identity.
/// Letters `a`, `b`, ... name the zeros, ids `1..=k`.
pub fn left_zero_with_identity(k: usize) -> Monoid {
    let n = k + 1;
    let mut table = vec![vec![0; n]; n];
    for b in 0..n {
        table[0][b] = b;
    }
    for a in 1..n {
        for b in 0..n {
            table[a][b] = a;
        }
    }
    Monoid::from_table(table, 0, letter_gens(k)).unwrap()
}

/// `k` right zeros (`x * a = a`) with an adjoined identity, built from
/// constant transformations.
pub fn right_zero_with_identity(k: usize) -> Monoid {
    let gens = (0..k)
        .map(|i| (letter_name(i), vec![i; k.max(1)]))
        .collect();
    Monoid::from_transformations(k.max(1), gens).unwrap()
}

/// Three-element left-zero-plus-identity monoid (`1, a, b`).
pub fn lz1() -> Monoid {
    left_zero_with_identity(2)
}

/// Three-element right-zero-plus-identity monoid.
pub fn rz1() -> Monoid {
    right_zero_with_identity(2)
}

/// Chain semilattice `1 > e1 > ... > ek` with `ei * ej = e_max(i,j)`;
/// every element idempotent, internal L-order a chain.
pub fn semilattice_chain(k: usize) -> Monoid {
    let n = k + 1;
    let table = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
    Monoid::from_table(table, 0, (1..n).map(|i| (letter_name(i - 1), i)).collect()).unwrap()
}

fn letter_name(i: usize) -> String {
    char::from(b'a' + (i % 26) as u8).to_string()
}

fn letter_gens(k: usize) -> Vec<(String, usize)> {
    (1..=k).map(|i| (letter_name(i - 1), i)).collect()
}

/// The curated corpus beyond the exhaustive small enumeration: named families
/// exercised by the structural test suites and bundled into witness libraries.
pub fn curated() -> Vec<(String, Monoid)> {
    vec![
        ("trivial".into(), trivial()),
        ("U1".into(), u1()),
        ("Z2".into(), z2()),
        ("Z3".into(), z3()),
        ("LZ1".into(), lz1()),
        ("RZ1".into(), rz1()),
        ("chain2".into(), semilattice_chain(2)),
        ("chain3".into(), semilattice_chain(3)),
        ("chain4".into(), semilattice_chain(4)),
        ("LZ3+1".into(), left_zero_with_identity(3)),
        ("RZ3+1".into(), right_zero_with_identity(3)),
        ("Z4".into(), cyclic(4)),
    ]
}
