use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Dense element id, `0..order`.
pub type ElementId = usize;

/// A finite monoid given by its full multiplication table.
///
/// Rows index the left factor: `table[a][b] = a * b`. Element ids are dense.
/// Generators carry short string letters; their declared order is significant
/// because canonical element numbering (for constructions that choose their
/// own ids) is breadth-first from the identity over the letters in order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    order: usize,
    identity: ElementId,
    table: Vec<ElementId>, // row-major, order * order
    generators: Vec<(String, ElementId)>,
}

impl Monoid {
    /// Validate and build a monoid from an explicit table.
    ///
    /// Checks, in order: table shape and entry range, the identity law,
    /// associativity (exhaustively), distinct generator letters with in-range
    /// ids, and that the generators generate. Each failure names the first
    /// offending element or triple.
    pub fn from_table(
        table: Vec<Vec<ElementId>>,
        identity: ElementId,
        generators: Vec<(String, ElementId)>,
    ) -> Result<Monoid> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Malformed {
                detail: "a monoid needs at least one element".into(),
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, r) in table.iter().enumerate() {
            if r.len() != order {
                return Err(Error::Malformed {
                    detail: format!("row {row} has {} entries, expected {order}", r.len()),
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                flat.push(value);
            }
        }
        if identity >= order {
            return Err(Error::EntryOutOfRange {
                row: identity,
                col: identity,
                value: identity,
                order,
            });
        }
        for a in 0..order {
            if flat[identity * order + a] != a || flat[a * order + identity] != a {
                return Err(Error::BadIdentity {
                    identity,
                    element: a,
                });
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = flat[a * order + b];
                for c in 0..order {
                    if flat[ab * order + c] != flat[a * order + flat[b * order + c]] {
                        return Err(Error::NonAssociative { a, b, c });
                    }
                }
            }
        }
        for (i, (letter, value)) in generators.iter().enumerate() {
            if *value >= order {
                return Err(Error::OutOfRange {
                    letter: letter.clone(),
                    value: *value,
                    bound: order,
                });
            }
            if generators[..i].iter().any(|(l, _)| l == letter) {
                return Err(Error::DuplicateLetter {
                    letter: letter.clone(),
                });
            }
        }
        let m = Monoid {
            order,
            identity,
            table: flat,
            generators,
        };
        let reach = m.submonoid_closure(&PointSet::from_ids(
            order,
            m.generators.iter().map(|(_, g)| *g),
        ));
        if let Some(element) = (0..order).find(|&x| !reach.contains(x)) {
            return Err(Error::GeneratorsDoNotGenerate { element });
        }
        Ok(m)
    }

    /// Build the transformation monoid generated by maps on `points` points.
    ///
    /// Maps compose left to right: `(f * g)(p) = g(f(p))`, so constant maps
    /// form a right-zero semigroup. Elements are numbered breadth-first from
    /// the identity map over the generators in declared order.
    pub fn from_transformations(
        points: usize,
        generators: Vec<(String, Vec<usize>)>,
    ) -> Result<Monoid> {
        if points == 0 {
            return Err(Error::Malformed {
                detail: "transformation monoids need at least one point".into(),
            });
        }
        for (i, (letter, map)) in generators.iter().enumerate() {
            if map.len() != points {
                return Err(Error::Malformed {
                    detail: format!(
                        "generator '{letter}' maps {} points, expected {points}",
                        map.len()
                    ),
                });
            }
            if let Some(&value) = map.iter().find(|&&v| v >= points) {
                return Err(Error::OutOfRange {
                    letter: letter.clone(),
                    value,
                    bound: points,
                });
            }
            if generators[..i].iter().any(|(l, _)| l == letter) {
                return Err(Error::DuplicateLetter {
                    letter: letter.clone(),
                });
            }
        }
        let compose = |f: &[usize], g: &[usize]| -> Vec<usize> {
            (0..points).map(|p| g[f[p]]).collect()
        };
        let ident: Vec<usize> = (0..points).collect();
        let mut elems: Vec<Vec<usize>> = vec![ident.clone()];
        let mut index: HashMap<Vec<usize>, ElementId> = HashMap::new();
        index.insert(ident, 0);
        let mut queue: VecDeque<ElementId> = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            for (_, g) in &generators {
                let h = compose(&elems[f], g);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(h);
                }
            }
        }
        let order = elems.len();
        let mut table = Vec::with_capacity(order * order);
        for f in &elems {
            for g in &elems {
                table.push(index[&compose(f, g)]);
            }
        }
        let gens = generators
            .into_iter()
            .map(|(letter, map)| (letter, index[&map]))
            .collect();
        Ok(Monoid::from_parts_unchecked(order, 0, table, gens))
    }

    /// Assemble a monoid from data already known to satisfy the axioms
    /// (internal constructions: closures, restrictions, quotients).
    pub(crate) fn from_parts_unchecked(
        order: usize,
        identity: ElementId,
        table: Vec<ElementId>,
        generators: Vec<(String, ElementId)>,
    ) -> Monoid {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!(table.iter().all(|&x| x < order));
        Monoid {
            order,
            identity,
            table,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a * self.order + b]
    }

    pub fn generators(&self) -> &[(String, ElementId)] {
        &self.generators
    }

    pub fn table_rows(&self) -> Vec<Vec<ElementId>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }

    pub fn letter(&self, letter: &str) -> Result<ElementId> {
        self.generators
            .iter()
            .find(|(l, _)| l == letter)
            .map(|&(_, g)| g)
            .ok_or_else(|| Error::UnknownLetter {
                letter: letter.to_string(),
            })
    }

    /// Evaluate a word (sequence of generator letters); empty word is the identity.
    pub fn eval_word<'a, I: IntoIterator<Item = &'a str>>(&self, word: I) -> Result<ElementId> {
        let mut acc = self.identity;
        for letter in word {
            acc = self.mul(acc, self.letter(letter)?);
        }
        Ok(acc)
    }

    pub fn is_idempotent(&self, a: ElementId) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<ElementId> {
        (0..self.order).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// Index and period of the cyclic submonoid generated by `a`:
    /// the least `(i, p)` with `a^(i+p) = a^i`, `i >= 1`.
    pub fn index_period(&self, a: ElementId) -> (usize, usize) {
        let mut seen: HashMap<ElementId, usize> = HashMap::new();
        let mut x = a;
        let mut k = 1;
        loop {
            match seen.insert(x, k) {
                Some(first) => return (first, k - first),
                None => {
                    x = self.mul(x, a);
                    k += 1;
                }
            }
        }
    }

    /// The unique idempotent power of `a`: `a^m` for the least multiple `m`
    /// of the period that reaches the cycle.
    pub fn omega(&self, a: ElementId) -> ElementId {
        let (i, p) = self.index_period(a);
        let m = p * i.div_ceil(p);
        let mut x = self.identity;
        for _ in 0..m {
            x = self.mul(x, a);
        }
        debug_assert!(self.is_idempotent(x));
        x
    }

    /// `{ x : m * x = m }`, always a submonoid.
    pub fn stabilizer(&self, m: ElementId) -> PointSet {
        PointSet::from_ids(
            self.order,
            (0..self.order).filter(|&x| self.mul(m, x) == m),
        )
    }

    /// Setwise product of two subsets.
    pub fn set_product(&self, a: &PointSet, b: &PointSet) -> PointSet {
        debug_assert_eq!(a.order(), self.order);
        debug_assert_eq!(b.order(), self.order);
        let mut out = PointSet::empty(self.order);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Least submonoid containing `seed` (always contains the identity).
    pub fn submonoid_closure(&self, seed: &PointSet) -> PointSet {
        let mut s = seed.clone();
        s.insert(self.identity);
        loop {
            let mut grew = false;
            let members = s.ids();
            for &a in &members {
                for &b in &members {
                    let p = self.mul(a, b);
                    if !s.contains(p) {
                        s.insert(p);
                        grew = true;
                    }
                }
            }
            if !grew {
                return s;
            }
        }
    }

    pub fn is_submonoid(&self, w: &PointSet) -> bool {
        self.check_submonoid(w).is_ok()
    }

    pub fn check_submonoid(&self, w: &PointSet) -> Result<()> {
        if w.order() != self.order {
            return Err(Error::BaseMismatch {
                left: w.order(),
                right: self.order,
            });
        }
        if !w.contains(self.identity) {
            return Err(Error::NotASubmonoid {
                reason: format!("identity {} is missing", self.identity),
            });
        }
        for a in w.iter() {
            for b in w.iter() {
                let p = self.mul(a, b);
                if !w.contains(p) {
                    return Err(Error::NotASubmonoid {
                        reason: format!("product {a} * {b} = {p} escapes the set"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.order)
    }

    /// `a <=_L b` in the ambient monoid: `a` is a left multiple of `b`.
    pub fn l_leq(&self, a: ElementId, b: ElementId) -> bool {
        (0..self.order).any(|m| self.mul(m, b) == a)
    }

    /// `a <=_R b`: `a` is a right multiple of `b`.
    pub fn r_leq(&self, a: ElementId, b: ElementId) -> bool {
        (0..self.order).any(|m| self.mul(b, m) == a)
    }

    /// The abstract monoid on the elements of a submonoid `w`, together with
    /// the map from new ids back to ambient ids (ascending). Every element is
    /// declared as a generator (letters `g0`, `g1`, ...).
    pub fn restriction(&self, w: &PointSet) -> Result<(Monoid, Vec<ElementId>)> {
        self.check_submonoid(w)?;
        let old_ids = w.ids();
        let mut new_of = HashMap::new();
        for (new, &old) in old_ids.iter().enumerate() {
            new_of.insert(old, new);
        }
        let k = old_ids.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &old_ids {
            for &b in &old_ids {
                table.push(new_of[&self.mul(a, b)]);
            }
        }
        let gens = (0..k).map(|i| (format!("g{i}"), i)).collect();
        Ok((
            Monoid::from_parts_unchecked(k, new_of[&self.identity], table, gens),
            old_ids,
        ))
    }

    /// Quotient by a congruence given as a partition into classes.
    /// Returns the quotient monoid and the class index of each element.
    /// Generators keep their letters, mapped to class ids.
    pub fn quotient(&self, classes: &[Vec<ElementId>]) -> Result<(Monoid, Vec<usize>)> {
        let mut class_of = vec![usize::MAX; self.order];
        for (ci, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= self.order || class_of[x] != usize::MAX {
                    return Err(Error::NotAPartition { element: x });
                }
                class_of[x] = ci;
            }
        }
        if let Some(element) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotAPartition { element });
        }
        let k = classes.len();
        let mut table = vec![usize::MAX; k * k];
        for a in 0..self.order {
            for b in 0..self.order {
                let slot = class_of[a] * k + class_of[b];
                let val = class_of[self.mul(a, b)];
                if table[slot] == usize::MAX {
                    table[slot] = val;
                } else if table[slot] != val {
                    return Err(Error::NotACongruence { a, b });
                }
            }
        }
        let gens = self
            .generators
            .iter()
            .map(|(l, g)| (l.clone(), class_of[*g]))
            .collect();
        Ok((
            Monoid::from_parts_unchecked(k, class_of[self.identity], table, gens),
            class_of,
        ))
    }

    /// Right Cayley graph in DOT format: one node per element (labelled with a
    /// shortest word over the generators), one arc per generator action.
    pub fn right_cayley_dot(&self) -> String {
        let mut words: Vec<Option<String>> = vec![None; self.order];
        words[self.identity] = Some("1".to_string());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (letter, g) in &self.generators {
                let y = self.mul(x, *g);
                if words[y].is_none() {
                    let base = if x == self.identity {
                        String::new()
                    } else {
                        words[x].clone().unwrap()
                    };
                    words[y] = Some(format!("{base}{letter}"));
                    queue.push_back(y);
                }
            }
        }
        let mut out = String::from("digraph cayley {\n  rankdir=LR;\n");
        for x in 0..self.order {
            let label = words[x].clone().unwrap_or_else(|| format!("#{x}"));
            out.push_str(&format!("  n{x} [label=\"{label}\"];\n"));
        }
        for x in 0..self.order {
            for (letter, g) in &self.generators {
                out.push_str(&format!(
                    "  n{x} -> n{} [label=\"{letter}\"];\n",
                    self.mul(x, *g)
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Monoid(order={}, identity={}, generators={:?})",
            self.order, self.identity, self.generators
        )
    }
}

/// Split a word string into letters: on whitespace when present, otherwise
/// into single characters. `"xx"` and `"x x"` both mean the two-letter word.
pub fn parse_word(s: &str) -> Vec<String> {
    if s.trim().is_empty() {
        Vec::new()
    } else if s.contains(char::is_whitespace) {
        s.split_whitespace().map(str::to_string).collect()
    } else {
        s.chars().map(|c| c.to_string()).collect()
    }
}
