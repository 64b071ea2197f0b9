//! Tubes and tubings of paths and cycles, the partition and graph induced by
//! a tubing, the signed tubing sum for the antipode, and the two counting
//! formulas for interval configurations on a cycle.
//!
//! A tube is a vertex set inducing a connected subgraph. A tubing is a set of
//! tubes that are pairwise nested or disjoint, contains every connected
//! component, and has no union of two or more pairwise disjoint member tubes
//! forming a tube. For the last axiom it suffices to test pairs: a connected
//! union of disjoint tubes always contains two members whose own union is
//! already connected.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num::traits::One;
use num::BigUint;
use serde_json::{json, Value};

use crate::graphs::{Component, ComponentKind, Label, LabeledGraph};
use crate::hopf::LinearCombination;
use crate::{Count, Error, Rational, Result};

/// A tube: a nonempty vertex set whose induced subgraph is connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tube {
    vertices: BTreeSet<Label>,
}

impl Tube {
    pub fn new(vertices: BTreeSet<Label>) -> Self {
        assert!(!vertices.is_empty(), "tubes are nonempty");
        Tube { vertices }
    }

    pub fn from_labels<S: AsRef<str>>(tokens: &[S]) -> Self {
        Tube::new(crate::graphs::label_set(tokens))
    }

    pub fn vertices(&self) -> &BTreeSet<Label> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.vertices.contains(label)
    }

    fn sort_key(&self) -> (usize, Vec<Label>) {
        (self.vertices.len(), self.vertices.iter().cloned().collect())
    }
}

impl PartialOrd for Tube {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tube {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Tube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.vertices.iter().map(Label::as_str).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// A tubing: tubes sorted by size then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tubing {
    tubes: Vec<Tube>,
}

impl Tubing {
    pub fn new(mut tubes: Vec<Tube>) -> Self {
        tubes.sort();
        tubes.dedup();
        Tubing { tubes }
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    /// JSON form: `{"tubes":[["1","2"],["1","2","3","4"]]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "tubes": self
                .tubes
                .iter()
                .map(|t| t.vertices().iter().map(Label::as_str).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Is `set` a tube of `g`: nonempty with connected induced subgraph? For a
/// path that means a contiguous run; for a cycle a contiguous arc or the full
/// vertex set.
pub fn is_tube(graph: &LabeledGraph, set: &BTreeSet<Label>) -> bool {
    if set.is_empty() {
        return false;
    }
    let comp = match graph
        .components()
        .iter()
        .find(|c| c.contains(set.iter().next().unwrap()))
    {
        Some(c) => c,
        None => return false,
    };
    if !set.iter().all(|l| comp.contains(l)) {
        return false;
    }
    if set.len() == comp.size() {
        return true;
    }
    let flags: Vec<bool> = comp.vertices().iter().map(|v| set.contains(v)).collect();
    match comp.kind() {
        ComponentKind::Path => contiguous_linear(&flags, set.len()),
        ComponentKind::Cycle => contiguous_cyclic(&flags, set.len()),
    }
}

fn contiguous_linear(flags: &[bool], count: usize) -> bool {
    let first = flags.iter().position(|&b| b).unwrap();
    flags[first..first + count].iter().all(|&b| b) && flags[first + count..].iter().all(|&b| !b)
}

fn contiguous_cyclic(flags: &[bool], count: usize) -> bool {
    // A proper subset is an arc iff exactly one boundary from out to in.
    let n = flags.len();
    debug_assert!(count < n);
    let transitions = (0..n).filter(|&i| !flags[i] && flags[(i + 1) % n]).count();
    transitions == 1
}

/// All tubes of `g`: nonempty connected vertex subsets. A path on `k`
/// vertices has `k(k+1)/2` tubes; a cycle has `k(k-1) + 1`.
pub fn enumerate_tubes(graph: &LabeledGraph) -> Vec<Tube> {
    let mut tubes = Vec::new();
    for comp in graph.components() {
        let vs = comp.vertices();
        let k = vs.len();
        match comp.kind() {
            ComponentKind::Path => {
                for i in 0..k {
                    for j in i..k {
                        tubes.push(Tube::new(vs[i..=j].iter().cloned().collect()));
                    }
                }
            }
            ComponentKind::Cycle => {
                for start in 0..k {
                    for len in 1..k {
                        tubes.push(Tube::new(
                            (0..len).map(|d| vs[(start + d) % k].clone()).collect(),
                        ));
                    }
                }
                tubes.push(Tube::new(vs.iter().cloned().collect()));
            }
        }
    }
    tubes.sort();
    tubes.dedup();
    tubes
}

/// Checks the three tubing axioms against `g`; `Ok(())` means `t` is a
/// tubing of `g`.
pub fn validate_tubing(graph: &LabeledGraph, tubing: &Tubing) -> Result<()> {
    for tube in tubing.tubes() {
        if !is_tube(graph, tube.vertices()) {
            return Err(Error::NotATubing(format!("{tube} is not a tube")));
        }
    }
    for comp in graph.components() {
        let set = comp.vertex_set();
        if !tubing.tubes().iter().any(|t| *t.vertices() == set) {
            return Err(Error::NotATubing(format!(
                "missing component tube {{{}}}",
                comp.word()
            )));
        }
    }
    let tubes = tubing.tubes();
    for (i, a) in tubes.iter().enumerate() {
        for b in &tubes[i + 1..] {
            let inter: BTreeSet<Label> = a.vertices().intersection(b.vertices()).cloned().collect();
            if inter.is_empty() {
                let union: BTreeSet<Label> = a.vertices().union(b.vertices()).cloned().collect();
                if is_tube(graph, &union) {
                    return Err(Error::NotATubing(format!(
                        "disjoint tubes {a} and {b} unite into a tube"
                    )));
                }
            } else if inter.len() != a.len() && inter.len() != b.len() {
                return Err(Error::NotATubing(format!(
                    "tubes {a} and {b} are neither nested nor disjoint"
                )));
            }
        }
    }
    Ok(())
}

/// All tubings of `g`, sorted by size then lexicographically on their tube
/// lists. The minimum tubing is the set of connected components.
pub fn enumerate_tubings(graph: &LabeledGraph) -> Vec<Tubing> {
    let labels: Vec<Label> = graph.ground_set().into_iter().collect();
    assert!(labels.len() <= 64, "tubing enumeration uses 64-bit masks");
    let index: BTreeMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mask_of = |set: &BTreeSet<Label>| -> u64 { set.iter().map(|l| 1u64 << index[l]).sum() };

    let tubes = enumerate_tubes(graph);
    let tube_masks: Vec<u64> = tubes.iter().map(|t| mask_of(t.vertices())).collect();
    let tube_mask_set: HashSet<u64> = tube_masks.iter().copied().collect();
    let component_masks: Vec<u64> = graph
        .components()
        .iter()
        .map(|c| mask_of(&c.vertex_set()))
        .collect();

    // Proper tubes only; component tubes are forced into every tubing.
    let candidates: Vec<u64> = tube_masks
        .iter()
        .copied()
        .filter(|m| !component_masks.contains(m))
        .collect();

    let mut chosen: Vec<u64> = component_masks.clone();
    let mut found: Vec<Vec<u64>> = Vec::new();
    dfs_tubings(&candidates, 0, &tube_mask_set, &mut chosen, &mut found);

    let mut out: Vec<Tubing> = found
        .into_iter()
        .map(|masks| {
            Tubing::new(
                masks
                    .into_iter()
                    .map(|m| {
                        Tube::new(
                            (0..labels.len())
                                .filter(|i| m & (1 << i) != 0)
                                .map(|i| labels[i].clone())
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort_by(|a, b| (a.len(), a.tubes()).cmp(&(b.len(), b.tubes())));
    out
}

fn dfs_tubings(
    candidates: &[u64],
    from: usize,
    tube_set: &HashSet<u64>,
    chosen: &mut Vec<u64>,
    found: &mut Vec<Vec<u64>>,
) {
    found.push(chosen.clone());
    for i in from..candidates.len() {
        let cand = candidates[i];
        if compatible(cand, chosen, tube_set) {
            chosen.push(cand);
            dfs_tubings(candidates, i + 1, tube_set, chosen, found);
            chosen.pop();
        }
    }
}

fn compatible(cand: u64, chosen: &[u64], tube_set: &HashSet<u64>) -> bool {
    for &c in chosen {
        let inter = cand & c;
        if inter == 0 {
            if tube_set.contains(&(cand | c)) {
                return false;
            }
        } else if inter != cand && inter != c {
            return false;
        }
    }
    true
}

/// The partition `π(t)`, the induced graph `g(t)` and, for cycle hosts, the
/// zero block (the vertices contained only in the maximal tube).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubingDecomposition {
    pub partition: Vec<BTreeSet<Label>>,
    pub graph: LabeledGraph,
    pub zero_block: Option<BTreeSet<Label>>,
}

/// Decomposes a tubing of a connected path or cycle: blocks collect vertices
/// lying in the same set of tubes; block edges come from host edges together
/// with threads running through tubes strictly smaller than the block's
/// minimal enclosing tube. On a cycle the zero block always carries a cycle
/// (a loop or double edge when it has 1 or 2 vertices).
pub fn decompose_tubing(graph: &LabeledGraph, tubing: &Tubing) -> Result<TubingDecomposition> {
    if graph.components().len() != 1 {
        return Err(Error::NotConnected);
    }
    validate_tubing(graph, tubing)?;
    let comp = &graph.components()[0];
    let full = comp.vertex_set();

    // Group vertices by the set of tubes containing them.
    let mut blocks: BTreeMap<Vec<usize>, BTreeSet<Label>> = BTreeMap::new();
    for v in comp.vertices() {
        let signature: Vec<usize> = tubing
            .tubes()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(v))
            .map(|(i, _)| i)
            .collect();
        blocks.entry(signature).or_default().insert(v.clone());
    }

    let threads = component_threads(comp);
    let mut components: Vec<Component> = Vec::new();
    let mut partition: Vec<BTreeSet<Label>> = Vec::new();
    let mut zero_block: Option<BTreeSet<Label>> = None;

    for (signature, block) in &blocks {
        // The minimal tube containing the block: tubes containing it are
        // totally ordered by inclusion.
        let enclosing = signature
            .iter()
            .map(|&i| &tubing.tubes()[i])
            .min_by_key(|t| t.len())
            .expect("every vertex lies in its component tube");
        let smaller: Vec<&Tube> = tubing
            .tubes()
            .iter()
            .filter(|t| t.len() < enclosing.len() && t.vertices().is_subset(enclosing.vertices()))
            .collect();

        let mut edges: Vec<(Label, Label)> = Vec::new();
        for (u, v, interior) in &threads {
            if !(block.contains(u) && block.contains(v)) {
                continue;
            }
            let covered =
                interior.is_empty() || smaller.iter().any(|t| interior.is_subset(t.vertices()));
            if covered {
                edges.push((u.clone(), v.clone()));
            }
        }
        components.push(assemble_block(block, &edges));
        partition.push(block.clone());

        if comp.kind() == ComponentKind::Cycle
            && signature.len() == 1
            && *tubing.tubes()[signature[0]].vertices() == full
        {
            zero_block = Some(block.clone());
        }
    }

    if comp.kind() == ComponentKind::Cycle {
        debug_assert!(
            zero_block.is_some(),
            "cycle tubings always have a zero block"
        );
    }

    Ok(TubingDecomposition {
        partition,
        graph: LabeledGraph::new(components)?,
        zero_block,
    })
}

/// All threads of a host component as `(endpoint, endpoint, interior)`. For
/// a path each vertex pair has one thread; on a cycle each unordered pair has
/// one thread per arc and each vertex has a closed thread around the rest of
/// the cycle. Distinct threads yield distinct edges, which is what keeps
/// loops and double edges alive.
fn component_threads(comp: &Component) -> Vec<(Label, Label, BTreeSet<Label>)> {
    let vs = comp.vertices();
    let k = vs.len();
    let mut threads = Vec::new();
    match comp.kind() {
        ComponentKind::Path => {
            for i in 0..k {
                for j in i + 1..k {
                    threads.push((
                        vs[i].clone(),
                        vs[j].clone(),
                        vs[i + 1..j].iter().cloned().collect(),
                    ));
                }
            }
        }
        ComponentKind::Cycle => {
            if k == 1 {
                threads.push((vs[0].clone(), vs[0].clone(), BTreeSet::new()));
                return threads;
            }
            // One arc per ordered pair (start, start+step), so each unordered
            // pair gets its two arcs exactly once; for k == 2 the two
            // single-step arcs are the double edge. Each vertex also has a
            // closed thread all the way around.
            for i in 0..k {
                for step in 1..k {
                    let j = (i + step) % k;
                    let interior: BTreeSet<Label> =
                        (1..step).map(|d| vs[(i + d) % k].clone()).collect();
                    threads.push((vs[i].clone(), vs[j].clone(), interior));
                }
                let interior: BTreeSet<Label> = (1..k).map(|d| vs[(i + d) % k].clone()).collect();
                threads.push((vs[i].clone(), vs[i].clone(), interior));
            }
        }
    }
    threads
}

/// Builds the path or cycle component a block's edge multiset describes.
fn assemble_block(block: &BTreeSet<Label>, edges: &[(Label, Label)]) -> Component {
    let k = block.len();
    if k == 1 {
        let v = block.iter().next().unwrap().clone();
        let loops = edges.iter().filter(|(a, b)| a == b).count();
        return match loops {
            0 => Component::path(vec![v]).unwrap(),
            1 => Component::cycle(vec![v]).unwrap(),
            _ => panic!("vertex {v} received {loops} loops"),
        };
    }
    if k == 2 {
        let vs: Vec<Label> = block.iter().cloned().collect();
        return match edges.len() {
            1 => Component::path(vs).unwrap(),
            2 => Component::cycle(vs).unwrap(),
            m => panic!("block of size 2 received {m} edges"),
        };
    }
    let mut adjacency: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
    for (a, b) in edges {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    assert!(
        adjacency.len() == k,
        "block decomposition left isolated vertices in a block of size {k}"
    );
    if edges.len() == k - 1 {
        // Walk the path from one endpoint.
        let start = adjacency
            .iter()
            .find(|(_, nbrs)| nbrs.len() == 1)
            .map(|(v, _)| (*v).clone())
            .expect("a path block has endpoints");
        Component::path(walk(&adjacency, start, k)).unwrap()
    } else if edges.len() == k {
        let start = block.iter().next().unwrap().clone();
        Component::cycle(walk(&adjacency, start, k)).unwrap()
    } else {
        panic!("block of size {k} received {} edges", edges.len());
    }
}

fn walk(adjacency: &BTreeMap<&Label, Vec<&Label>>, start: Label, k: usize) -> Vec<Label> {
    let mut order = vec![start];
    let mut prev: Option<Label> = None;
    while order.len() < k {
        let here = order.last().unwrap().clone();
        let next = adjacency[&here]
            .iter()
            .find(|n| prev.as_ref() != Some(**n))
            .map(|n| (**n).clone())
            .expect("walk stuck before visiting the whole block");
        prev = Some(here);
        order.push(next);
    }
    order
}

/// The antipode of a connected path or cycle as the signed sum over all of
/// its tubings: `Σ_t (-1)^{|t|} g(t)`. Every labeled graph occurs with a
/// single parity, so no cancellation happens.
pub fn antipode_tubings(graph: &LabeledGraph) -> Result<LinearCombination> {
    if graph.components().len() != 1 {
        return Err(Error::NotConnected);
    }
    let mut out = LinearCombination::zero();
    for tubing in enumerate_tubings(graph) {
        let decomposition = decompose_tubing(graph, &tubing)?;
        let sign = if tubing.len() % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        out.add_term(decomposition.graph, sign);
    }
    Ok(out)
}

/// Multiplicities `j_i` of interval lengths: `multiplicity(i)` intervals of
/// length `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LengthMultiset {
    multiplicities: Vec<usize>,
}

impl LengthMultiset {
    pub fn from_multiplicities(multiplicities: Vec<usize>) -> Self {
        let mut multiplicities = multiplicities;
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        LengthMultiset { multiplicities }
    }

    /// Builds the multiset from a list of interval lengths.
    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        let mut multiplicities = Vec::new();
        for &len in lengths {
            if len == 0 {
                return Err(Error::InvalidMultiset("interval of length 0".into()));
            }
            if multiplicities.len() < len {
                multiplicities.resize(len, 0);
            }
            multiplicities[len - 1] += 1;
        }
        Ok(LengthMultiset { multiplicities })
    }

    pub fn multiplicity(&self, length: usize) -> usize {
        if length == 0 || length > self.multiplicities.len() {
            0
        } else {
            self.multiplicities[length - 1]
        }
    }

    pub fn max_length(&self) -> usize {
        self.multiplicities.len()
    }

    /// `k`: the number of intervals.
    pub fn interval_count(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// `Σ i·j_i`: the number of covered vertices.
    pub fn vertex_count(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, j)| (i + 1) * j)
            .sum()
    }
}

fn factorial(n: usize) -> Count {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Partitions of a cycle on `n` vertices into `k ≥ 2` vertex-disjoint
/// intervals with `j_i` intervals of length `i`:
///
/// ```text
/// n (k-1)! / (j_1! j_2! … j_{n-k+1}!)
/// ```
pub fn count_interval_partitions(n: usize, lengths: &LengthMultiset) -> Result<Count> {
    let k = lengths.interval_count();
    if k < 2 {
        return Err(Error::InvalidMultiset(format!(
            "a cycle partition needs at least 2 intervals, got {k}"
        )));
    }
    if lengths.vertex_count() != n {
        return Err(Error::InvalidMultiset(format!(
            "interval lengths cover {} vertices, host has {n}",
            lengths.vertex_count()
        )));
    }
    let mut denominator = BigUint::one();
    for len in 1..=lengths.max_length() {
        denominator *= factorial(lengths.multiplicity(len));
    }
    Ok(BigUint::from(n) * factorial(k - 1) / denominator)
}

/// Decompositions `I = S ⊔ T` of a cycle on `n` vertices with `|S| = k` whose
/// contraction `c:T` splits into maximal intervals with the given multiset of
/// lengths. Shifting every length up by one and adding `j_1` singletons turns
/// these into the interval partitions counted above (attach to every maximal
/// interval the next vertex along the cycle), so the same expression counts
/// both.
pub fn count_decompositions(n: usize, k: usize, lengths: &LengthMultiset) -> Result<Count> {
    if k < 1 {
        return Err(Error::InvalidMultiset("S must be nonempty".into()));
    }
    let intervals = lengths.interval_count();
    if intervals > k {
        return Err(Error::InvalidMultiset(format!(
            "{intervals} maximal intervals cannot come from |S| = {k}"
        )));
    }
    if k + lengths.vertex_count() != n {
        return Err(Error::InvalidMultiset(format!(
            "{k} + {} vertices do not cover the host of size {n}",
            lengths.vertex_count()
        )));
    }
    // j_1 singletons plus one interval of length (len + 1) per maximal
    // interval of length len.
    let j1 = k - intervals;
    let mut denominator = factorial(j1);
    for len in 1..=lengths.max_length() {
        denominator *= factorial(lengths.multiplicity(len));
    }
    Ok(BigUint::from(n) * factorial(k - 1) / denominator)
}
