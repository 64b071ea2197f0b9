//! Formal linear combinations of graphs, the Hopf operations, and the
//! antipode by the Milnor–Moore recursion
//!
//! ```text
//! s(x) = - Σ_{I = S ⊔ T, S ≠ ∅} x|_S · s(x/_S),      s(ε) = ε.
//! ```
//!
//! The recursion over 2^|I| subsets serves as the brute-force oracle for the
//! closed antipode formulas in the `tubings` and `noncrossing` modules.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num::traits::{One, Zero};
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::graphs::{standard_label, Label, LabeledGraph};
use crate::{Rational, Result};

/// A formal sum of labeled graphs with exact rational coefficients. Zero
/// coefficients are never stored; all terms of a nonzero combination share
/// one ground set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearCombination {
    terms: BTreeMap<LabeledGraph, Rational>,
}

impl LinearCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit: the empty graph with coefficient 1.
    pub fn unit() -> Self {
        Self::from_graph(LabeledGraph::empty())
    }

    pub fn from_graph(graph: LabeledGraph) -> Self {
        Self::from_term(graph, Rational::one())
    }

    pub fn from_term(graph: LabeledGraph, coeff: Rational) -> Self {
        let mut lc = Self::zero();
        lc.add_term(graph, coeff);
        lc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LabeledGraph, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, graph: &LabeledGraph) -> Rational {
        self.terms
            .get(graph)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, graph: LabeledGraph, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(graph);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LinearCombination) {
        for (graph, coeff) in other.terms() {
            self.add_term(graph.clone(), coeff.clone());
        }
    }

    pub fn negate(&mut self) {
        for coeff in self.terms.values_mut() {
            *coeff = -coeff.clone();
        }
    }

    pub fn neg(&self) -> LinearCombination {
        let mut out = self.clone();
        out.negate();
        out
    }

    pub fn scale(&self, factor: &Rational) -> LinearCombination {
        if factor.is_zero() {
            return Self::zero();
        }
        LinearCombination {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), c * factor))
                .collect(),
        }
    }

    /// Applies a label bijection to every term.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<LinearCombination> {
        let mut out = Self::zero();
        for (graph, coeff) in self.terms() {
            out.add_term(graph.relabel(map)?, coeff.clone());
        }
        Ok(out)
    }

    /// Grouping by isomorphism class: total coefficient per class.
    pub fn by_iso_class(&self) -> BTreeMap<crate::graphs::IsoClass, Rational> {
        let mut out: BTreeMap<crate::graphs::IsoClass, Rational> = BTreeMap::new();
        for (graph, coeff) in self.terms() {
            let entry = out.entry(graph.iso_class()).or_insert_with(Rational::zero);
            *entry += coeff.clone();
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// JSON form: `[{"coeff":"p/q","graph":"word"}]` sorted by the canonical
    /// word form.
    pub fn to_json(&self) -> Value {
        let mut rows: Vec<(String, String)> = self
            .terms
            .iter()
            .map(|(g, c)| (g.word(), c.to_string()))
            .collect();
        rows.sort();
        Value::Array(
            rows.into_iter()
                .map(|(graph, coeff)| json!({"coeff": coeff, "graph": graph}))
                .collect(),
        )
    }
}

/// Bilinear extension of the disjoint-union product.
pub fn lc_product(x: &LinearCombination, y: &LinearCombination) -> Result<LinearCombination> {
    let mut out = LinearCombination::zero();
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            out.add_term(gx.disjoint_union(gy)?, cx * cy);
        }
    }
    Ok(out)
}

fn graph_times(graph: &LabeledGraph, lc: &LinearCombination) -> Result<LinearCombination> {
    let mut out = LinearCombination::zero();
    for (g, c) in lc.terms() {
        out.add_term(graph.disjoint_union(g)?, c.clone());
    }
    Ok(out)
}

/// One term of the coproduct: `Δ_{S,T}(g) = (g|_S, g/_S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductTerm {
    pub restriction: LabeledGraph,
    pub contraction: LabeledGraph,
}

pub fn coproduct(graph: &LabeledGraph, subset: &BTreeSet<Label>) -> Result<CoproductTerm> {
    Ok(CoproductTerm {
        restriction: graph.restrict(subset)?,
        contraction: graph.contract(subset)?,
    })
}

/// Memo table for antipodes of standard-labeled graphs. Isomorphic inputs
/// share one entry; inserts are idempotent, so concurrent use is safe.
static ANTIPODE_MEMO: Lazy<Mutex<HashMap<LabeledGraph, LinearCombination>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The antipode by the Milnor–Moore recursion, memoized per isomorphism
/// class: the input is relabeled to a standard-labeled representative, the
/// recursion runs there, and the result is relabeled back.
pub fn antipode_mm(graph: &LabeledGraph) -> LinearCombination {
    if graph.is_empty() {
        return LinearCombination::unit();
    }
    let labels: Vec<Label> = ordered_labels(graph);
    let forward: BTreeMap<Label, Label> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), standard_label(i + 1)))
        .collect();
    let backward: BTreeMap<Label, Label> = forward
        .iter()
        .map(|(k, v)| (v.clone(), k.clone()))
        .collect();
    let standard = graph
        .relabel(&forward)
        .expect("bijection covers the ground set");

    if let Some(hit) = ANTIPODE_MEMO.lock().unwrap().get(&standard) {
        return hit
            .relabel(&backward)
            .expect("memoized terms live on the same ground set");
    }

    let computed = antipode_mm_raw(&standard);
    ANTIPODE_MEMO
        .lock()
        .unwrap()
        .entry(standard)
        .or_insert_with(|| computed.clone());
    computed
        .relabel(&backward)
        .expect("terms live on the standard ground set")
}

/// Labels in the order components appear canonically, so isomorphic graphs
/// standardize to the same representative.
fn ordered_labels(graph: &LabeledGraph) -> Vec<Label> {
    graph.labels().cloned().collect()
}

fn antipode_mm_raw(graph: &LabeledGraph) -> LinearCombination {
    let labels: Vec<Label> = graph.labels().cloned().collect();
    let n = labels.len();
    debug_assert!(n > 0);
    let mut sum = LinearCombination::zero();
    for mask in 1u64..(1 << n) {
        let subset: BTreeSet<Label> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| labels[i].clone())
            .collect();
        let restriction = graph.restrict(&subset).expect("subset of the ground set");
        let contraction = graph.contract(&subset).expect("subset of the ground set");
        let tail = antipode_mm(&contraction);
        let term =
            graph_times(&restriction, &tail).expect("restriction and contraction are disjoint");
        sum.add_assign(&term);
    }
    sum.negate();
    sum
}

/// Product reversal: `s(x · y) = s(y) · s(x)`. Reduces antipodes of
/// multi-component graphs to antipodes of single components.
pub fn antipode_of_product(x: &LabeledGraph, y: &LabeledGraph) -> Result<LinearCombination> {
    // Disjointness is surfaced before any antipode work.
    x.disjoint_union(y)?;
    lc_product(&antipode_mm(y), &antipode_mm(x))
}

/// Applies a per-component antipode and multiplies the results; with the
/// product reversal rule this extends any connected-graph antipode formula to
/// all of the species.
pub fn antipode_by_components<F>(graph: &LabeledGraph, antipode: F) -> Result<LinearCombination>
where
    F: Fn(&LabeledGraph) -> Result<LinearCombination>,
{
    let mut acc = LinearCombination::unit();
    for comp in graph.components() {
        let single = LabeledGraph::new(vec![comp.clone()])?;
        acc = lc_product(&acc, &antipode(&single)?)?;
    }
    Ok(acc)
}

/// Checks the defining antipode identity `Σ_{I=S⊔T} g|_S · s(g/_S) = 0` for a
/// nonempty graph (the sum over all subsets, including `S = ∅` and `S = I`).
pub fn antipode_axiom_sum(graph: &LabeledGraph) -> Result<LinearCombination> {
    let labels: Vec<Label> = graph.labels().cloned().collect();
    let n = labels.len();
    let mut sum = LinearCombination::zero();
    for mask in 0u64..(1 << n) {
        let subset: BTreeSet<Label> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| labels[i].clone())
            .collect();
        let term = coproduct(graph, &subset)?;
        let product = graph_times(&term.restriction, &antipode_mm(&term.contraction))?;
        sum.add_assign(&product);
    }
    Ok(sum)
}
