//! Labeled graphs whose connected components are paths or cycles.
//!
//! A graph is written in word notation: components separated by `|`, a bare
//! word for a path (vertices in endpoint-to-endpoint order) and a
//! parenthesized word for a cycle (vertices in cyclic order). Single-character
//! labels concatenate inside a word; multi-character labels are separated by
//! commas (a one-token word keeps a trailing comma so that `10,` is the
//! vertex `10` and `10` is the path `1`–`0`).
//!
//! Cycles have as many edges as vertices: the cycle on one vertex is a loop
//! and the cycle on two vertices is a double edge, so neither equals the path
//! of the same size.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::{Error, Result};

/// A vertex label: an opaque token. Labels compare as strings; no numeric
/// order is inferred.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    /// Creates a label. Tokens must be nonempty and free of the word-notation
    /// metacharacters `| , ( )` and whitespace.
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() {
            return Err(Error::Parse("empty label token".into()));
        }
        if token
            .chars()
            .any(|ch| matches!(ch, '|' | ',' | '(' | ')') || ch.is_whitespace())
        {
            return Err(Error::Parse(format!(
                "invalid character in label `{token}`"
            )));
        }
        Ok(Label(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn is_single_char(&self) -> bool {
        self.0.chars().count() == 1
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Kind of a connected component. Paths sort before cycles, matching the
/// word-notation convention that lists all paths first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    Path,
    Cycle,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Path => f.write_str("path"),
            ComponentKind::Cycle => f.write_str("cycle"),
        }
    }
}

/// A single path or cycle, stored in a canonical orientation:
///
/// * paths run from the smaller endpoint to the larger;
/// * cycles start at their smallest label, in the rotation direction that
///   makes the second label minimal.
///
/// Two components are equal iff they have the same kind and vertex set and
/// their vertex orders agree up to reversal (paths) or rotation and
/// reflection (cycles); the canonical orientation makes this derived
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    kind: ComponentKind,
    vertices: Vec<Label>,
}

impl Component {
    pub fn path(vertices: Vec<Label>) -> Result<Self> {
        Self::new(ComponentKind::Path, vertices)
    }

    pub fn cycle(vertices: Vec<Label>) -> Result<Self> {
        Self::new(ComponentKind::Cycle, vertices)
    }

    pub fn new(kind: ComponentKind, vertices: Vec<Label>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Parse("empty component".into()));
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateLabel(v.to_string()));
            }
        }
        let mut comp = Component { kind, vertices };
        comp.canonicalize();
        Ok(comp)
    }

    fn canonicalize(&mut self) {
        match self.kind {
            ComponentKind::Path => {
                let last = self.vertices.len() - 1;
                if self.vertices[last] < self.vertices[0] {
                    self.vertices.reverse();
                }
            }
            ComponentKind::Cycle => {
                if self.vertices.len() <= 2 {
                    self.vertices.sort();
                    return;
                }
                let min_pos = self
                    .vertices
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.cmp(b.1))
                    .map(|(i, _)| i)
                    .unwrap();
                let n = self.vertices.len();
                let forward: Vec<Label> = (0..n)
                    .map(|i| self.vertices[(min_pos + i) % n].clone())
                    .collect();
                let backward: Vec<Label> = (0..n)
                    .map(|i| self.vertices[(min_pos + n - i) % n].clone())
                    .collect();
                self.vertices = if forward[1] <= backward[1] {
                    forward
                } else {
                    backward
                };
            }
        }
    }

    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices in the canonical orientation.
    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.vertices.contains(label)
    }

    pub fn min_label(&self) -> &Label {
        self.vertices.iter().min().unwrap()
    }

    pub fn vertex_set(&self) -> BTreeSet<Label> {
        self.vertices.iter().cloned().collect()
    }

    /// The word form of this component, with parentheses for cycles.
    pub fn word(&self) -> String {
        let inner = if self.vertices.iter().all(Label::is_single_char) {
            self.vertices.iter().map(Label::as_str).collect::<String>()
        } else if self.vertices.len() == 1 {
            format!("{},", self.vertices[0])
        } else {
            self.vertices
                .iter()
                .map(Label::as_str)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self.kind {
            ComponentKind::Path => inner,
            ComponentKind::Cycle => format!("({inner})"),
        }
    }

    /// Edges as unordered label pairs with multiplicity. A 1-cycle yields a
    /// loop `(v, v)`; a 2-cycle yields its edge twice.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        match (self.kind, self.vertices.len()) {
            (ComponentKind::Path, _) => self
                .vertices
                .windows(2)
                .map(|w| (w[0].clone(), w[1].clone()))
                .collect(),
            (ComponentKind::Cycle, 1) => {
                vec![(self.vertices[0].clone(), self.vertices[0].clone())]
            }
            (ComponentKind::Cycle, n) => (0..n)
                .map(|i| (self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
                .collect(),
        }
    }

    fn sort_key(&self) -> (ComponentKind, usize, Label) {
        (self.kind, self.vertices.len(), self.min_label().clone())
    }
}

/// Isomorphism class of a graph: the multiset of (kind, size) pairs of its
/// components. Two graphs are isomorphic iff some label bijection carries one
/// to the other, which for paths and cycles means exactly that these
/// multisets agree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IsoClass(BTreeMap<(ComponentKind, usize), usize>);

impl IsoClass {
    pub fn counts(&self) -> &BTreeMap<(ComponentKind, usize), usize> {
        &self.0
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|((kind, size), count)| {
                if *count == 1 {
                    format!("{kind}:{size}")
                } else {
                    format!("{kind}:{size}x{count}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A set of vertex-labeled paths and cycles on pairwise distinct labels.
/// Components are kept sorted by (kind, size, smallest label), so equality,
/// hashing and printing are canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LabeledGraph {
    components: Vec<Component>,
}

impl LabeledGraph {
    /// The empty graph: the unit structure on the empty ground set.
    pub fn empty() -> Self {
        LabeledGraph {
            components: Vec::new(),
        }
    }

    pub fn new(components: Vec<Component>) -> Result<Self> {
        let mut seen: BTreeSet<Label> = BTreeSet::new();
        for comp in &components {
            for v in comp.vertices() {
                if !seen.insert(v.clone()) {
                    return Err(Error::DuplicateLabel(v.to_string()));
                }
            }
        }
        let mut components = components;
        components.sort_by_key(Component::sort_key);
        Ok(LabeledGraph { components })
    }

    /// Parses word notation: components separated by `|`, `(word)` for a
    /// cycle, bare word for a path. Printing the result re-parses to the same
    /// graph.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty());
        }
        let mut components = Vec::new();
        for chunk in text.split('|') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(Error::Parse("empty component".into()));
            }
            let (kind, word) = if let Some(rest) = chunk.strip_prefix('(') {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in `{chunk}`")))?;
                (ComponentKind::Cycle, inner)
            } else if chunk.contains('(') || chunk.contains(')') {
                return Err(Error::Parse(format!("stray parenthesis in `{chunk}`")));
            } else {
                (ComponentKind::Path, chunk)
            };
            components.push(Component::new(kind, parse_word(word)?)?);
        }
        Self::new(components)
    }

    /// The canonical word form; `parse` of this string returns `self`.
    pub fn word(&self) -> String {
        if self.components.is_empty() {
            return String::new();
        }
        self.components
            .iter()
            .map(Component::word)
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// True when the graph has exactly one component.
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.components.iter().map(Component::size).sum()
    }

    pub fn ground_set(&self) -> BTreeSet<Label> {
        self.components
            .iter()
            .flat_map(|c| c.vertices().iter().cloned())
            .collect()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.components.iter().flat_map(|c| c.vertices().iter())
    }

    pub fn contains_label(&self, label: &Label) -> bool {
        self.components.iter().any(|c| c.contains(label))
    }

    pub fn iso_class(&self) -> IsoClass {
        let mut counts = BTreeMap::new();
        for comp in &self.components {
            *counts.entry((comp.kind(), comp.size())).or_insert(0) += 1;
        }
        IsoClass(counts)
    }

    fn check_subset(&self, subset: &BTreeSet<Label>) -> Result<()> {
        for label in subset {
            if !self.contains_label(label) {
                return Err(Error::LabelNotPresent(label.to_string()));
            }
        }
        Ok(())
    }

    /// The restriction `g|_S`: vertex set `S`, one edge per thread of `g`
    /// between vertices of `S` whose interior avoids `S`. Per component: a
    /// path keeps its `S`-vertices in path order; a cycle meeting `S` in a
    /// nonempty proper subset keeps them in cyclic order and stays a cycle
    /// (sizes 1 and 2 become a loop or a double edge, via the closed or the
    /// two parallel threads).
    pub fn restrict(&self, subset: &BTreeSet<Label>) -> Result<LabeledGraph> {
        self.check_subset(subset)?;
        let mut components = Vec::new();
        for comp in &self.components {
            let kept: Vec<Label> = comp
                .vertices()
                .iter()
                .filter(|v| subset.contains(v))
                .cloned()
                .collect();
            if kept.is_empty() {
                continue;
            }
            components.push(Component::new(comp.kind(), kept)?);
        }
        Ok(LabeledGraph {
            components: sorted(components),
        })
    }

    /// The contraction `g/_S = g:T`, the induced subgraph on `T = I \ S`:
    /// only edges with both endpoints outside `S` survive, so a cycle missing
    /// at least one vertex breaks into its maximal intervals.
    pub fn contract(&self, subset: &BTreeSet<Label>) -> Result<LabeledGraph> {
        self.check_subset(subset)?;
        let mut components = Vec::new();
        for comp in &self.components {
            let removed = comp
                .vertices()
                .iter()
                .filter(|v| subset.contains(v))
                .count();
            if removed == 0 {
                components.push(comp.clone());
                continue;
            }
            if removed == comp.size() {
                continue;
            }
            match comp.kind() {
                ComponentKind::Path => {
                    for run in runs_linear(comp.vertices(), subset) {
                        components.push(Component::path(run)?);
                    }
                }
                ComponentKind::Cycle => {
                    for run in runs_cyclic(comp.vertices(), subset) {
                        components.push(Component::path(run)?);
                    }
                }
            }
        }
        Ok(LabeledGraph {
            components: sorted(components),
        })
    }

    /// Disjoint union; the product of the Hopf monoid.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> Result<LabeledGraph> {
        let mine = self.ground_set();
        for label in other.labels() {
            if mine.contains(label) {
                return Err(Error::LabelClash(label.to_string()));
            }
        }
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(LabeledGraph {
            components: sorted(components),
        })
    }

    /// Applies a label bijection. Every label of `self` must be a key.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<LabeledGraph> {
        let mut components = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let vertices: Vec<Label> = comp
                .vertices()
                .iter()
                .map(|v| {
                    map.get(v)
                        .cloned()
                        .ok_or_else(|| Error::LabelNotPresent(v.to_string()))
                })
                .collect::<Result<_>>()?;
            components.push(Component::new(comp.kind(), vertices)?);
        }
        Self::new(components)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "components": self
                .components
                .iter()
                .map(|c| {
                    json!({
                        "kind": c.kind().to_string(),
                        "vertices": c.vertices().iter().map(Label::as_str).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

fn sorted(mut components: Vec<Component>) -> Vec<Component> {
    components.sort_by_key(Component::sort_key);
    components
}

fn parse_word(word: &str) -> Result<Vec<Label>> {
    if word.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    if word.contains(',') {
        let mut tokens: Vec<&str> = word.split(',').collect();
        // One trailing comma marks a one-token word with a multi-character
        // label, e.g. `10,`.
        if tokens.len() > 1 && tokens.last() == Some(&"") {
            tokens.pop();
        }
        tokens.into_iter().map(Label::new).collect()
    } else {
        word.chars().map(|ch| Label::new(ch.to_string())).collect()
    }
}

/// Maximal runs of consecutive vertices not in `removed`, in linear order.
fn runs_linear(vertices: &[Label], removed: &BTreeSet<Label>) -> Vec<Vec<Label>> {
    let mut runs = Vec::new();
    let mut current = Vec::new();
    for v in vertices {
        if removed.contains(v) {
            if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        } else {
            current.push(v.clone());
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

/// Maximal runs of kept vertices around a cycle with at least one removed
/// vertex; the run crossing the stored start point is stitched back together.
fn runs_cyclic(vertices: &[Label], removed: &BTreeSet<Label>) -> Vec<Vec<Label>> {
    let n = vertices.len();
    let start = vertices
        .iter()
        .position(|v| removed.contains(v))
        .expect("cyclic runs need a removed vertex");
    let mut runs = Vec::new();
    let mut current: Vec<Label> = Vec::new();
    for i in 1..=n {
        let v = &vertices[(start + i) % n];
        if removed.contains(v) {
            if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        } else {
            current.push(v.clone());
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

/// Alphabet for standard hosts: positions 1..=35 as single characters, in
/// increasing order.
const STANDARD_ALPHABET: &[u8] = b"123456789abcdefghijklmnopqrstuvwxyz";

/// The label used for position `i` (1-based) of a standard path or cycle.
pub fn standard_label(i: usize) -> Label {
    assert!(
        (1..=STANDARD_ALPHABET.len()).contains(&i),
        "standard labels cover positions 1..={}",
        STANDARD_ALPHABET.len()
    );
    Label::new((STANDARD_ALPHABET[i - 1] as char).to_string()).unwrap()
}

/// The standard path `12…n`.
pub fn standard_path(n: usize) -> LabeledGraph {
    assert!(n >= 1);
    let vertices: Vec<Label> = (1..=n).map(standard_label).collect();
    LabeledGraph::new(vec![Component::path(vertices).unwrap()]).unwrap()
}

/// The standard cycle `(12…n)`.
pub fn standard_cycle(n: usize) -> LabeledGraph {
    assert!(n >= 1);
    let vertices: Vec<Label> = (1..=n).map(standard_label).collect();
    LabeledGraph::new(vec![Component::cycle(vertices).unwrap()]).unwrap()
}

/// All structures on the given label set: every partition of the labels into
/// components, every component shape on each block. Intended for exhaustive
/// checks on small ground sets.
pub fn enumerate_structures(labels: &[Label]) -> Vec<LabeledGraph> {
    let mut labels: Vec<Label> = labels.to_vec();
    labels.sort();
    labels.dedup();
    let mut out = Vec::new();
    build_structures(&labels, &mut Vec::new(), &mut out);
    out
}

fn build_structures(rest: &[Label], acc: &mut Vec<Component>, out: &mut Vec<LabeledGraph>) {
    if rest.is_empty() {
        out.push(LabeledGraph::new(acc.clone()).expect("blocks are disjoint"));
        return;
    }
    let first = rest[0].clone();
    let others = &rest[1..];
    // Choose the block containing the smallest remaining label.
    for mask in 0..(1u32 << others.len()) {
        let mut block = vec![first.clone()];
        let mut remaining = Vec::new();
        for (i, label) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                block.push(label.clone());
            } else {
                remaining.push(label.clone());
            }
        }
        for comp in component_shapes(&block) {
            acc.push(comp);
            build_structures(&remaining, acc, out);
            acc.pop();
        }
    }
}

/// All distinct paths and cycles on a given label block.
fn component_shapes(block: &[Label]) -> Vec<Component> {
    use itertools::Itertools;
    let k = block.len();
    let mut shapes = Vec::new();
    if k == 1 {
        shapes.push(Component::path(block.to_vec()).unwrap());
        shapes.push(Component::cycle(block.to_vec()).unwrap());
        return shapes;
    }
    // Paths: one representative per reversal class.
    for perm in block.iter().cloned().permutations(k) {
        if perm[0] < perm[k - 1] {
            shapes.push(Component::path(perm).unwrap());
        }
    }
    if k == 2 {
        shapes.push(Component::cycle(block.to_vec()).unwrap());
        return shapes;
    }
    // Cycles: fix the smallest label first, one representative per
    // reflection class.
    let min = block.iter().min().unwrap().clone();
    let rest: Vec<Label> = block.iter().filter(|l| **l != min).cloned().collect();
    for perm in rest.iter().cloned().permutations(k - 1) {
        if perm[0] < perm[k - 2] {
            let mut vertices = vec![min.clone()];
            vertices.extend(perm);
            shapes.push(Component::cycle(vertices).unwrap());
        }
    }
    shapes
}

/// Convenience constructor for label sets in tests and callers.
pub fn label_set<S: AsRef<str>>(tokens: &[S]) -> BTreeSet<Label> {
    tokens
        .iter()
        .map(|t| Label::new(t.as_ref()).unwrap())
        .collect()
}
