//! Inevitability of labelled graphs, and the witness sweep that hunts for a
//! refuting relational morphism.
//!
//! A graph's vertices and edges carry subsets of a monoid as labels. Against
//! a fixed morphism into a target, the graph is satisfiable when each vertex
//! and edge can commit to a single target element whose preimage covers its
//! label, with every edge `(u, v)` multiplying out: `pick(u) * pick(e) =
//! pick(v)`. A graph survives a sweep when every witness in the population
//! admits such a commitment; one unsatisfiable witness refutes it. Surviving
//! is evidence, not proof: the population is finite.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use crate::enumeration::{monoid_library, MAX_EXHAUSTIVE_ORDER};
use crate::error::{Error, Result};
use crate::expansion;
use crate::green::is_aperiodic;
use crate::monoid::{ElementId, Monoid};
use crate::pointset::PointSet;
use crate::stable_pairs::Variety;

/// Enumerating maps from an alphabet into a target costs order^letters;
/// targets past this budget contribute only their canonical map, if any.
const GENMAP_BUDGET: u128 = 1 << 20;

/// A finite directed multigraph with set-valued labels on vertices and edges.
/// Self-loops and parallel edges are allowed; labels are nonempty subsets of
/// one common carrier monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    vertex_names: Vec<String>,
    edges: Vec<(usize, usize)>,
    vertex_labels: Vec<PointSet>,
    edge_labels: Vec<PointSet>,
}

impl LabelledGraph {
    pub fn new(
        vertex_names: Vec<String>,
        edges: Vec<(usize, usize)>,
        vertex_labels: Vec<PointSet>,
        edge_labels: Vec<PointSet>,
    ) -> Result<LabelledGraph> {
        if vertex_labels.len() != vertex_names.len() {
            return Err(Error::Malformed {
                detail: format!(
                    "{} vertices but {} vertex labels",
                    vertex_names.len(),
                    vertex_labels.len()
                ),
            });
        }
        if edge_labels.len() != edges.len() {
            return Err(Error::Malformed {
                detail: format!("{} edges but {} edge labels", edges.len(), edge_labels.len()),
            });
        }
        for (edge, &(src, dst)) in edges.iter().enumerate() {
            for endpoint in [src, dst] {
                if endpoint >= vertex_names.len() {
                    return Err(Error::EdgeEndpointOutOfRange {
                        edge,
                        endpoint,
                        vertices: vertex_names.len(),
                    });
                }
            }
        }
        for l in &vertex_labels {
            if l.is_empty() {
                return Err(Error::EmptySet { role: "vertex label" });
            }
        }
        for l in &edge_labels {
            if l.is_empty() {
                return Err(Error::EmptySet { role: "edge label" });
            }
        }
        let mut orders = vertex_labels.iter().chain(&edge_labels).map(PointSet::order);
        if let Some(first) = orders.next() {
            if orders.any(|o| o != first) {
                return Err(Error::Malformed {
                    detail: "labels live over carriers of different orders".into(),
                });
            }
        }
        Ok(LabelledGraph {
            vertex_names,
            edges,
            vertex_labels,
            edge_labels,
        })
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_labels(&self) -> &[PointSet] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[PointSet] {
        &self.edge_labels
    }

    /// Order of the carrier the labels live over; `None` for the empty graph.
    pub fn carrier_order(&self) -> Option<usize> {
        self.vertex_labels
            .first()
            .or(self.edge_labels.first())
            .map(PointSet::order)
    }
}

/// A relational morphism presented by generators: each source letter is sent
/// to a target element, and the relation is the subsemigroup of the product
/// generated by those pairs together with the identity pair. Every source
/// element is related to at least one target element.
#[derive(Clone, Debug)]
pub struct WitnessMorphism {
    source: Monoid,
    target: Monoid,
    genmap: Vec<(String, ElementId)>,
    relation: Vec<(ElementId, ElementId)>,
    preimages: Vec<PointSet>,
}

impl WitnessMorphism {
    pub fn source(&self) -> &Monoid {
        &self.source
    }

    pub fn target(&self) -> &Monoid {
        &self.target
    }

    pub fn genmap(&self) -> &[(String, ElementId)] {
        &self.genmap
    }

    /// All related pairs `(source, target)`, ascending.
    pub fn relation(&self) -> &[(ElementId, ElementId)] {
        &self.relation
    }

    /// Source elements related to the target element `b`.
    pub fn preimage(&self, b: ElementId) -> &PointSet {
        &self.preimages[b]
    }

    pub fn preimages(&self) -> &[PointSet] {
        &self.preimages
    }

    /// Does some idempotent of the target pull back over the whole set?
    pub fn idempotent_preimage_covers(&self, z: &PointSet) -> bool {
        self.target
            .idempotents()
            .into_iter()
            .any(|e| z.is_subset_of(&self.preimages[e]))
    }
}

/// Close the generator pairs into a relational morphism from `m` to `n`.
/// The map must mention every letter of `m` exactly once.
pub fn pair_relation(
    m: &Monoid,
    n: &Monoid,
    genmap: &[(String, ElementId)],
) -> Result<WitnessMorphism> {
    for (i, (letter, image)) in genmap.iter().enumerate() {
        if m.generators().iter().all(|(l, _)| l != letter)
            || genmap[..i].iter().any(|(l, _)| l == letter)
        {
            return Err(Error::AlphabetMismatch { letter: letter.clone() });
        }
        if *image >= n.order() {
            return Err(Error::OutOfRange {
                letter: letter.clone(),
                value: *image,
                bound: n.order(),
            });
        }
    }
    for (letter, _) in m.generators() {
        if genmap.iter().all(|(l, _)| l != letter) {
            return Err(Error::AlphabetMismatch { letter: letter.clone() });
        }
    }
    let pairs: Vec<(ElementId, ElementId)> = m
        .generators()
        .iter()
        .map(|(l, g)| {
            let image = genmap.iter().find(|(gl, _)| gl == l).unwrap().1;
            (*g, image)
        })
        .collect();
    let start = (m.identity(), n.identity());
    let mut seen: BTreeSet<(ElementId, ElementId)> = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        for &(ga, gb) in &pairs {
            let next = (m.mul(a, ga), n.mul(b, gb));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let relation: Vec<(ElementId, ElementId)> = seen.into_iter().collect();
    let mut preimages = vec![PointSet::empty(m.order()); n.order()];
    for &(a, b) in &relation {
        preimages[b].insert(a);
    }
    Ok(WitnessMorphism {
        source: m.clone(),
        target: n.clone(),
        genmap: genmap.to_vec(),
        relation,
        preimages,
    })
}

/// A satisfying commitment: one target element per vertex and per edge,
/// in the graph's own index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    pub vertices: Vec<ElementId>,
    pub edges: Vec<ElementId>,
}

/// Decide whether the graph's labels can commit inside the witness, and give
/// the commitment when they can.
pub fn check_labelling(
    graph: &LabelledGraph,
    witness: &WitnessMorphism,
) -> Result<Option<Labelling>> {
    let (vlabels, elabels) = normalized_labels(graph, witness.source.order())?;
    Ok(solve(
        &witness.target,
        &witness.preimages,
        graph.edges(),
        &vlabels,
        &elabels,
    ))
}

/// Rebuild the labels over the witness's source carrier. Labels mentioning an
/// element outside that carrier are the caller's mistake and are named.
fn normalized_labels(
    graph: &LabelledGraph,
    order: usize,
) -> Result<(Vec<PointSet>, Vec<PointSet>)> {
    let fix = |labels: &[PointSet], kind: char| -> Result<Vec<PointSet>> {
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                if l.order() == order {
                    return Ok(l.clone());
                }
                if let Some(element) = l.iter().find(|&x| x >= order) {
                    return Err(Error::LabelOverWrongMonoid {
                        item: format!("{kind}{i}"),
                        element,
                        order,
                    });
                }
                Ok(PointSet::from_ids(order, l.iter()))
            })
            .collect()
    };
    Ok((
        fix(graph.vertex_labels(), 'v')?,
        fix(graph.edge_labels(), 'e')?,
    ))
}

const OPEN: ElementId = usize::MAX;

/// Backtracking over vertices first, then edges, smaller domains first.
/// Domains are ascending, so the first commitment found is deterministic.
fn solve(
    target: &Monoid,
    preimages: &[PointSet],
    edges: &[(usize, usize)],
    vlabels: &[PointSet],
    elabels: &[PointSet],
) -> Option<Labelling> {
    let domain = |l: &PointSet| -> Vec<ElementId> {
        (0..target.order())
            .filter(|&b| l.is_subset_of(&preimages[b]))
            .collect()
    };
    let vdoms: Vec<Vec<ElementId>> = vlabels.iter().map(&domain).collect();
    let edoms: Vec<Vec<ElementId>> = elabels.iter().map(&domain).collect();
    let mut order: Vec<(bool, usize)> = (0..vdoms.len())
        .map(|i| (false, i))
        .chain((0..edoms.len()).map(|i| (true, i)))
        .collect();
    order.sort_by_key(|&(is_edge, i)| {
        (is_edge, if is_edge { edoms[i].len() } else { vdoms[i].len() }, i)
    });

    struct Search<'a> {
        target: &'a Monoid,
        edges: &'a [(usize, usize)],
        vdoms: &'a [Vec<ElementId>],
        edoms: &'a [Vec<ElementId>],
        order: &'a [(bool, usize)],
        vpick: Vec<ElementId>,
        epick: Vec<ElementId>,
    }

    impl Search<'_> {
        fn consistent(&self) -> bool {
            self.edges.iter().enumerate().all(|(e, &(u, v))| {
                let (a, x, b) = (self.vpick[u], self.epick[e], self.vpick[v]);
                a == OPEN || x == OPEN || b == OPEN || self.target.mul(a, x) == b
            })
        }

        fn go(&mut self, depth: usize) -> bool {
            let Some(&(is_edge, i)) = self.order.get(depth) else {
                return true;
            };
            let doms = if is_edge { self.edoms } else { self.vdoms };
            for &cand in &doms[i] {
                if is_edge {
                    self.epick[i] = cand;
                } else {
                    self.vpick[i] = cand;
                }
                if self.consistent() && self.go(depth + 1) {
                    return true;
                }
            }
            if is_edge {
                self.epick[i] = OPEN;
            } else {
                self.vpick[i] = OPEN;
            }
            false
        }
    }

    let mut search = Search {
        target,
        edges,
        vdoms: &vdoms,
        edoms: &edoms,
        order: &order,
        vpick: vec![OPEN; vdoms.len()],
        epick: vec![OPEN; edoms.len()],
    };
    if search.go(0) {
        Some(Labelling {
            vertices: search.vpick,
            edges: search.epick,
        })
    } else {
        None
    }
}

/// One vertex labelled by the candidate set, no edges: satisfiable against a
/// witness exactly when some target element's preimage covers the set.
pub fn encode_pointlike(z: &PointSet) -> Result<LabelledGraph> {
    if z.is_empty() {
        return Err(Error::EmptySet { role: "pointlike candidate" });
    }
    LabelledGraph::new(vec!["v0".into()], Vec::new(), vec![z.clone()], Vec::new())
}

/// A vertex labelled `y` with one self-loop per element of `n`: satisfiable
/// exactly when some target element covers `y` while each element of `n`
/// commits inside its stabilizer.
pub fn encode_stable_pair(y: &PointSet, n: &PointSet) -> Result<LabelledGraph> {
    if y.is_empty() || n.is_empty() {
        return Err(Error::EmptySet { role: "stable pair component" });
    }
    if y.order() != n.order() {
        return Err(Error::BaseMismatch { left: y.order(), right: n.order() });
    }
    let edges = vec![(0, 0); n.len()];
    let edge_labels = n
        .iter()
        .map(|s| PointSet::singleton(n.order(), s))
        .collect();
    LabelledGraph::new(vec!["v0".into()], edges, vec![y.clone()], edge_labels)
}

/// Two vertices labelled `a` and `a*b` joined by an edge labelled `b`, with a
/// self-loop labelled `c` on the product vertex.
pub fn encode_triple(
    m: &Monoid,
    a: &PointSet,
    b: &PointSet,
    c: &PointSet,
) -> Result<LabelledGraph> {
    for part in [a, b, c] {
        if part.is_empty() {
            return Err(Error::EmptySet { role: "triple component" });
        }
        if part.order() != m.order() {
            return Err(Error::BaseMismatch { left: part.order(), right: m.order() });
        }
    }
    let ab = m.set_product(a, b);
    LabelledGraph::new(
        vec!["v0".into(), "v1".into()],
        vec![(0, 1), (1, 1)],
        vec![a.clone(), ab],
        vec![b.clone(), c.clone()],
    )
}

/// How a sweep assembles its witness population.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Library targets are bounded by this order.
    pub max_order: usize,
    /// Climb the input's own expansion levels and use their canonical maps.
    pub include_expansion_towers: bool,
    /// How many expansion levels to climb.
    pub tower_depth: usize,
    /// Levels whose element count passes this are skipped.
    pub expansion_cap: usize,
    /// `A` restricts the population to aperiodic targets; `M` admits every
    /// finite target, the input monoid itself included.
    pub variety: Variety,
}

impl SweepConfig {
    pub fn for_variety(variety: Variety) -> SweepConfig {
        SweepConfig {
            max_order: MAX_EXHAUSTIVE_ORDER,
            include_expansion_towers: true,
            tower_depth: 2,
            expansion_cap: expansion::DEFAULT_ELEMENT_CAP,
            variety,
        }
    }
}

impl Default for SweepConfig {
    fn default() -> SweepConfig {
        SweepConfig::for_variety(Variety::A)
    }
}

/// A candidate refuter: where it came from, and the morphism to check.
#[derive(Clone, Debug)]
pub struct Witness {
    pub name: String,
    pub morphism: WitnessMorphism,
}

/// Population stats reported by a sweep that found no refuter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCensus {
    pub witnesses: usize,
    pub max_order: usize,
    pub tower_levels: usize,
    pub aperiodic_only: bool,
}

#[derive(Clone, Debug)]
pub enum SweepOutcome {
    /// This witness admits no commitment; the graph is not inevitable.
    Refuted { witness: Box<Witness> },
    /// Every witness admitted a commitment.
    Consistent { census: WitnessCensus },
}

/// The witness population for one source monoid, reusable across many graphs.
pub struct WitnessSet {
    witnesses: Vec<Witness>,
    census: WitnessCensus,
}

impl WitnessSet {
    /// Assemble the population for `m`: every generating-image map into each
    /// library target, the input itself when the variety admits it and the
    /// library does not already represent it, and the canonical maps into the
    /// input's expansion levels.
    pub fn build(m: &Monoid, config: &SweepConfig) -> Result<WitnessSet> {
        let aperiodic_only = config.variety == Variety::A;
        let input_allowed = !aperiodic_only || is_aperiodic(m);
        let mut witnesses = Vec::new();
        for e in monoid_library(config.max_order, aperiodic_only)? {
            push_genmap_witnesses(m, &e.monoid, &e.name, &mut witnesses);
        }
        let covered = m.order() <= config.max_order.min(MAX_EXHAUSTIVE_ORDER);
        if input_allowed && !covered {
            let before = witnesses.len();
            push_genmap_witnesses(m, m, "input", &mut witnesses);
            if witnesses.len() == before {
                // alphabet too wide to enumerate; keep the canonical map
                let morphism = pair_relation(m, m, m.generators())?;
                witnesses.push(Witness { name: "input".into(), morphism });
            }
        }
        let mut tower_levels = 0;
        if config.include_expansion_towers && input_allowed {
            let mut base = m.clone();
            for level in 1..=config.tower_depth {
                let expanded = match expansion::expand_with_cap(&base, config.expansion_cap) {
                    Ok(x) => x,
                    Err(Error::SizeLimitExceeded { .. }) => break,
                    Err(e) => return Err(e),
                };
                let lm = expanded.monoid().clone();
                debug_assert!(
                    !aperiodic_only || is_aperiodic(&lm),
                    "expansion levels over an aperiodic base stay aperiodic"
                );
                // levels keep the base letters, so their own generator
                // assignment is the canonical map
                let morphism = pair_relation(m, &lm, lm.generators())?;
                witnesses.push(Witness { name: format!("tower_x{level}"), morphism });
                tower_levels = level;
                base = lm;
            }
        }
        let census = WitnessCensus {
            witnesses: witnesses.len(),
            max_order: config.max_order,
            tower_levels,
            aperiodic_only,
        };
        Ok(WitnessSet { witnesses, census })
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn census(&self) -> &WitnessCensus {
        &self.census
    }

    /// Hunt for a refuting witness. The scan parallelizes, but the reported
    /// refuter is the first in population order regardless of thread count.
    pub fn sweep(&self, graph: &LabelledGraph) -> Result<SweepOutcome> {
        let Some(first) = self.witnesses.first() else {
            return Ok(SweepOutcome::Consistent { census: self.census.clone() });
        };
        let (vlabels, elabels) = normalized_labels(graph, first.morphism.source.order())?;
        let hit = self.witnesses.par_iter().find_first(|w| {
            solve(
                &w.morphism.target,
                &w.morphism.preimages,
                graph.edges(),
                &vlabels,
                &elabels,
            )
            .is_none()
        });
        Ok(match hit {
            Some(w) => SweepOutcome::Refuted { witness: Box::new(w.clone()) },
            None => SweepOutcome::Consistent { census: self.census.clone() },
        })
    }
}

/// Build the population for `m` and sweep `graph` against it.
pub fn witness_sweep(
    m: &Monoid,
    graph: &LabelledGraph,
    config: &SweepConfig,
) -> Result<SweepOutcome> {
    WitnessSet::build(m, config)?.sweep(graph)
}

/// Every map from `m`'s letters into `target` whose image generates the
/// target, in odometer order (last letter fastest). Maps whose image only
/// reaches a proper submonoid add nothing: their relation factors through
/// that submonoid, which is its own (smaller) witness.
fn push_genmap_witnesses(m: &Monoid, target: &Monoid, name: &str, out: &mut Vec<Witness>) {
    let letters: Vec<&String> = m.generators().iter().map(|(l, _)| l).collect();
    let k = letters.len();
    let n = target.order();
    let over_budget = (n as u128)
        .checked_pow(k as u32)
        .is_none_or(|c| c > GENMAP_BUDGET);
    if over_budget {
        return;
    }
    let full = target.full_set();
    let mut generates: HashMap<Vec<ElementId>, bool> = HashMap::new();
    let mut tuple = vec![0usize; k];
    loop {
        let mut image = tuple.clone();
        image.sort_unstable();
        image.dedup();
        let ok = *generates.entry(image).or_insert_with_key(|img| {
            target.submonoid_closure(&PointSet::from_ids(n, img.iter().copied())) == full
        });
        if ok {
            let genmap: Vec<(String, ElementId)> = letters
                .iter()
                .zip(&tuple)
                .map(|(l, &t)| ((*l).clone(), t))
                .collect();
            let morphism =
                pair_relation(m, target, &genmap).expect("genmap is total and in range");
            let picks = tuple
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            out.push(Witness { name: format!("{name}[{picks}]"), morphism });
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}
