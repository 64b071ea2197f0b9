//! Noncrossing partitions of paths, pointed noncrossing partitions of
//! cycles, adjacent closures, Catalan coefficients, and the grouping-free
//! antipode formulas they carry.
//!
//! A partition of a path is noncrossing when no two blocks interleave along
//! the path (no `a b a b` pattern). A pointed noncrossing partition of a
//! cycle distinguishes one nonempty zero block; the underlying partition must
//! be noncrossing on a linear word of the cycle, which does not depend on the
//! chosen word.

use std::collections::{BTreeMap, BTreeSet};

use num::traits::One;
use num::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::graphs::{Component, ComponentKind, Label, LabeledGraph};
use crate::hopf::LinearCombination;
use crate::{Count, Error, Rational, Result};

/// The m-th Catalan number with the `C_0 = C_1 = 1` convention.
pub fn catalan(m: usize) -> Count {
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for k in 0..m {
        numerator *= BigUint::from(2 * m - k);
        denominator *= BigUint::from(k + 1);
    }
    numerator / denominator / BigUint::from(m + 1)
}

/// A noncrossing partition of a single path. Blocks are kept sorted by the
/// host position of their first vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPartition {
    host: Component,
    blocks: Vec<BTreeSet<Label>>,
}

/// A pointed noncrossing partition of a single cycle: a nonempty zero block
/// plus the remaining (nonzero) blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedNcPartition {
    host: Component,
    zero: BTreeSet<Label>,
    blocks: Vec<BTreeSet<Label>>,
}

/// The Catalan coefficient of a closure: the product over closure blocks of
/// the Catalan number of the count of original blocks they absorbed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanCoefficient {
    pub value: Count,
    pub factors: Vec<(BTreeSet<Label>, usize)>,
}

fn path_host(graph: &LabeledGraph) -> Result<&Component> {
    match graph.components() {
        [comp] if comp.kind() == ComponentKind::Path => Ok(comp),
        _ => Err(Error::NotAPath),
    }
}

fn cycle_host(graph: &LabeledGraph) -> Result<&Component> {
    match graph.components() {
        [comp] if comp.kind() == ComponentKind::Cycle => Ok(comp),
        _ => Err(Error::NotACycle),
    }
}

fn check_partition(host: &Component, blocks: &[BTreeSet<Label>]) -> Result<()> {
    let mut seen: BTreeSet<Label> = BTreeSet::new();
    for block in blocks {
        if block.is_empty() {
            return Err(Error::NotAPartition);
        }
        for label in block {
            if !host.contains(label) || !seen.insert(label.clone()) {
                return Err(Error::NotAPartition);
            }
        }
    }
    if seen.len() != host.size() {
        return Err(Error::NotAPartition);
    }
    Ok(())
}

/// Positions of each block along the host's stored vertex order.
fn block_positions(host: &Component, blocks: &[BTreeSet<Label>]) -> Vec<Vec<usize>> {
    let index: BTreeMap<&Label, usize> = host
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    blocks
        .iter()
        .map(|block| {
            let mut positions: Vec<usize> = block.iter().map(|l| index[l]).collect();
            positions.sort_unstable();
            positions
        })
        .collect()
}

/// Two position sets cross iff they interleave as `a b a b` somewhere.
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let mut merged: Vec<(usize, bool)> = a
        .iter()
        .map(|&p| (p, false))
        .chain(b.iter().map(|&p| (p, true)))
        .collect();
    merged.sort_unstable();
    let mut alternations = 0;
    let mut last = None;
    for (_, who) in merged {
        if last != Some(who) {
            alternations += 1;
            last = Some(who);
        }
    }
    alternations >= 4
}

fn check_noncrossing(host: &Component, blocks: &[BTreeSet<Label>]) -> Result<()> {
    let positions = block_positions(host, blocks);
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            if blocks_cross(&positions[i], &positions[j]) {
                return Err(Error::Crossing);
            }
        }
    }
    Ok(())
}

fn sort_blocks(host: &Component, blocks: &mut [BTreeSet<Label>]) {
    let index: BTreeMap<Label, usize> = host
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    blocks.sort_by_key(|block| block.iter().map(|l| index[l]).min().unwrap());
}

impl NcPartition {
    /// Builds a noncrossing partition of a single-path graph.
    pub fn new(host: &LabeledGraph, blocks: Vec<BTreeSet<Label>>) -> Result<Self> {
        let host = path_host(host)?.clone();
        check_partition(&host, &blocks)?;
        check_noncrossing(&host, &blocks)?;
        let mut blocks = blocks;
        sort_blocks(&host, &mut blocks);
        Ok(NcPartition { host, blocks })
    }

    pub fn host(&self) -> &Component {
        &self.host
    }

    pub fn blocks(&self) -> &[BTreeSet<Label>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// JSON form: `{"blocks":[["1","3"],["2"]]}`.
    pub fn to_json(&self) -> Value {
        json!({ "blocks": blocks_json(&self.blocks) })
    }
}

impl PointedNcPartition {
    /// Builds a pointed noncrossing partition of a single-cycle graph. The
    /// zero block must be nonempty and the underlying partition noncrossing.
    pub fn new(
        host: &LabeledGraph,
        zero: BTreeSet<Label>,
        blocks: Vec<BTreeSet<Label>>,
    ) -> Result<Self> {
        let host = cycle_host(host)?.clone();
        if zero.is_empty() {
            return Err(Error::EmptyZeroBlock);
        }
        let mut all = blocks.clone();
        all.push(zero.clone());
        check_partition(&host, &all)?;
        check_noncrossing(&host, &all)?;
        let mut blocks = blocks;
        sort_blocks(&host, &mut blocks);
        Ok(PointedNcPartition { host, zero, blocks })
    }

    pub fn host(&self) -> &Component {
        &self.host
    }

    pub fn zero_block(&self) -> &BTreeSet<Label> {
        &self.zero
    }

    /// The nonzero blocks.
    pub fn blocks(&self) -> &[BTreeSet<Label>] {
        &self.blocks
    }

    /// `|π| = 1 + |π₊|`.
    pub fn len(&self) -> usize {
        1 + self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// JSON form: `{"blocks":[["2"],["1","3"]],"zero":["4"]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "zero": self.zero.iter().map(Label::as_str).collect::<Vec<_>>(),
            "blocks": blocks_json(&self.blocks),
        })
    }
}

fn blocks_json(blocks: &[BTreeSet<Label>]) -> Value {
    Value::Array(
        blocks
            .iter()
            .map(|b| json!(b.iter().map(Label::as_str).collect::<Vec<_>>()))
            .collect(),
    )
}

/// All noncrossing partitions of a single path; there are Catalan-many for a
/// path on `n` vertices.
pub fn enumerate_nc(graph: &LabeledGraph) -> Result<Vec<NcPartition>> {
    let host = path_host(graph)?.clone();
    let n = host.size();
    let out = nc_position_partitions(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .map(|blocks| NcPartition {
            host: host.clone(),
            blocks: blocks
                .into_iter()
                .map(|b| b.into_iter().map(|p| host.vertices()[p].clone()).collect())
                .collect(),
        })
        .collect();
    Ok(out)
}

/// Noncrossing partitions of an increasing position list. The block of the
/// first position is chosen; the rest splits into independent gaps, because a
/// block reaching across a gap boundary would cross the first block.
fn nc_position_partitions(positions: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if positions.is_empty() {
        return vec![Vec::new()];
    }
    let first = positions[0];
    let rest = &positions[1..];
    let mut out = Vec::new();
    for mask in 0u64..(1 << rest.len()) {
        let mut block = vec![first];
        let mut gaps: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, &p) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                block.push(p);
                gaps.push(Vec::new());
            } else {
                gaps.last_mut().unwrap().push(p);
            }
        }
        // Cartesian product of the per-gap partitions.
        let mut combined: Vec<Vec<Vec<usize>>> = vec![vec![block]];
        for gap in gaps {
            let sub = nc_position_partitions(&gap);
            combined = combined
                .into_iter()
                .flat_map(|prefix| {
                    sub.iter().map(move |tail| {
                        let mut whole = prefix.clone();
                        whole.extend(tail.iter().cloned());
                        whole
                    })
                })
                .collect();
        }
        out.extend(combined);
    }
    out
}

/// All pointed noncrossing partitions of a single cycle: every noncrossing
/// partition of its linear word with every choice of zero block. Which word
/// represents the cycle does not matter.
pub fn enumerate_pnc(graph: &LabeledGraph) -> Result<Vec<PointedNcPartition>> {
    let host = cycle_host(graph)?.clone();
    let n = host.size();
    let mut out = Vec::new();
    for blocks in nc_position_partitions(&(0..n).collect::<Vec<_>>()) {
        for zero_idx in 0..blocks.len() {
            let to_labels = |b: &Vec<usize>| -> BTreeSet<Label> {
                b.iter().map(|&p| host.vertices()[p].clone()).collect()
            };
            let zero = to_labels(&blocks[zero_idx]);
            let mut rest: Vec<BTreeSet<Label>> = blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != zero_idx)
                .map(|(_, b)| to_labels(b))
                .collect();
            sort_blocks(&host, &mut rest);
            out.push(PointedNcPartition {
                host: host.clone(),
                zero,
                blocks: rest,
            });
        }
    }
    Ok(out)
}

/// Merges blocks whose extremes are consecutive along a position order:
/// `A` absorbs `B` when the successor of `max A` is `min B`. `successor`
/// maps a position to the next one, or `None` past the end.
fn close_adjacent(
    mut blocks: Vec<Vec<usize>>,
    successor: impl Fn(usize) -> Option<usize>,
) -> Vec<Vec<usize>> {
    loop {
        let mut merged = false;
        'outer: for i in 0..blocks.len() {
            let last = *blocks[i].last().unwrap();
            let Some(next) = successor(last) else {
                continue;
            };
            for j in 0..blocks.len() {
                if i != j && blocks[j][0] == next {
                    let tail = blocks.remove(j);
                    let i = if j < i { i - 1 } else { i };
                    blocks[i].extend(tail);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return blocks;
        }
    }
}

/// The adjacent closure: repeatedly merge two blocks whose extremes are
/// consecutive along the host path. The all-singleton partition closes to a
/// single block.
pub fn adjacent_closure(partition: &NcPartition) -> NcPartition {
    let positions = block_positions(&partition.host, &partition.blocks);
    let n = partition.host.size();
    let closed = close_adjacent(positions, |p| (p + 1 < n).then_some(p + 1));
    let blocks: Vec<BTreeSet<Label>> = closed
        .into_iter()
        .map(|b| {
            b.into_iter()
                .map(|p| partition.host.vertices()[p].clone())
                .collect()
        })
        .collect();
    let mut blocks = blocks;
    sort_blocks(&partition.host, &mut blocks);
    NcPartition {
        host: partition.host.clone(),
        blocks,
    }
}

/// The pointed adjacent closure: the zero block stays fixed and nonzero
/// blocks merge along the cycle order inside each maximal interval of the
/// complement of the zero block. Blocks separated by the zero block never
/// merge.
pub fn adjacent_closure_pointed(partition: &PointedNcPartition) -> PointedNcPartition {
    let host = &partition.host;
    let n = host.size();
    let zero_positions: BTreeSet<usize> = host
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, l)| partition.zero.contains(l))
        .map(|(i, _)| i)
        .collect();
    // Successor along the cycle, stopping at the zero block.
    let successor = |p: usize| -> Option<usize> {
        let next = (p + 1) % n;
        (!zero_positions.contains(&next)).then_some(next)
    };
    let positions = block_positions(host, &partition.blocks);
    // Rotate each block so its entry point along its interval comes first:
    // the position whose cyclic predecessor is not in the same interval.
    let positions: Vec<Vec<usize>> = positions
        .into_iter()
        .map(|b| order_within_interval(b, &zero_positions, n))
        .collect();
    let closed = close_adjacent(positions, successor);
    let mut blocks: Vec<BTreeSet<Label>> = closed
        .into_iter()
        .map(|b| b.into_iter().map(|p| host.vertices()[p].clone()).collect())
        .collect();
    sort_blocks(host, &mut blocks);
    PointedNcPartition {
        host: host.clone(),
        zero: partition.zero.clone(),
        blocks,
    }
}

/// Orders a block's positions along its maximal zero-free interval, so the
/// first entry is the one closest to the interval start and the last entry
/// the one closest to its end.
fn order_within_interval(
    mut block: Vec<usize>,
    zero_positions: &BTreeSet<usize>,
    n: usize,
) -> Vec<usize> {
    // Walk back from the block's first position to the interval start.
    let mut start = block[0];
    loop {
        let prev = (start + n - 1) % n;
        if zero_positions.contains(&prev) {
            break;
        }
        start = prev;
        debug_assert_ne!(start, block[0], "zero block must be nonempty");
    }
    block.sort_by_key(|&p| (p + n - start) % n);
    block
}

/// Verifies `closure` is the adjacent closure of `partition` and returns the
/// Catalan coefficient `Π C_{n_i}` with `n_i` the number of blocks of
/// `partition` inside the i-th closure block.
pub fn catalan_coefficient(
    partition: &NcPartition,
    closure: &NcPartition,
) -> Result<CatalanCoefficient> {
    let expected = adjacent_closure(partition);
    if expected.blocks != closure.blocks || expected.host != closure.host {
        return Err(Error::NotAClosure);
    }
    Ok(coefficient_of(&partition.blocks, &closure.blocks))
}

/// The pointed variant: zero blocks must agree and the coefficient counts
/// nonzero blocks only.
pub fn catalan_coefficient_pointed(
    partition: &PointedNcPartition,
    closure: &PointedNcPartition,
) -> Result<CatalanCoefficient> {
    let expected = adjacent_closure_pointed(partition);
    if expected.blocks != closure.blocks
        || expected.zero != closure.zero
        || expected.host != closure.host
    {
        return Err(Error::NotAClosure);
    }
    Ok(coefficient_of(&partition.blocks, &closure.blocks))
}

fn coefficient_of(
    blocks: &[BTreeSet<Label>],
    closure_blocks: &[BTreeSet<Label>],
) -> CatalanCoefficient {
    let mut value = BigUint::one();
    let mut factors = Vec::new();
    for closed in closure_blocks {
        let inside = blocks.iter().filter(|b| b.is_subset(closed)).count();
        value *= catalan(inside);
        factors.push((closed.clone(), inside));
    }
    CatalanCoefficient { value, factors }
}

/// `p(π) = ⊔_i p|_{π_i}`: one path per block, vertices in host order.
pub fn graph_of_nc(partition: &NcPartition) -> LabeledGraph {
    let host = LabeledGraph::new(vec![partition.host.clone()]).expect("host is a component");
    let mut out = LabeledGraph::empty();
    for block in &partition.blocks {
        let piece = host.restrict(block).expect("block lies in the host");
        out = out.disjoint_union(&piece).expect("blocks are disjoint");
    }
    out
}

/// `c(π) = c|_{π₀} ⊔ (c/_{π₀})|_{π_1} ⊔ …`: a cycle on the zero block and a
/// path on every nonzero block.
pub fn graph_of_pnc(partition: &PointedNcPartition) -> LabeledGraph {
    let host = LabeledGraph::new(vec![partition.host.clone()]).expect("host is a component");
    let cycle_part = host
        .restrict(&partition.zero)
        .expect("zero block lies in the host");
    let contracted = host
        .contract(&partition.zero)
        .expect("zero block lies in the host");
    let mut out = cycle_part;
    for block in &partition.blocks {
        let piece = contracted
            .restrict(block)
            .expect("block avoids the zero block");
        out = out.disjoint_union(&piece).expect("blocks are disjoint");
    }
    out
}

fn signed(value: &Count, negative: bool) -> Rational {
    let big = BigInt::from(value.clone());
    Rational::from(if negative { -big } else { big })
}

/// The antipode of a single path as the grouping-free noncrossing sum
/// `Σ_π (-1)^{|π|} C_{(π̄:π)} p(π)`.
pub fn antipode_nc(graph: &LabeledGraph) -> Result<LinearCombination> {
    let mut out = LinearCombination::zero();
    for partition in enumerate_nc(graph)? {
        let closure = adjacent_closure(&partition);
        let coefficient = catalan_coefficient(&partition, &closure)?;
        out.add_term(
            graph_of_nc(&partition),
            signed(&coefficient.value, partition.len() % 2 == 1),
        );
    }
    Ok(out)
}

/// The antipode of a single cycle as the grouping-free pointed sum
/// `Σ_π (-1)^{1+|π₊|} C_{(π̄₊:π₊)} c(π)`.
pub fn antipode_pnc(graph: &LabeledGraph) -> Result<LinearCombination> {
    let mut out = LinearCombination::zero();
    for partition in enumerate_pnc(graph)? {
        let closure = adjacent_closure_pointed(&partition);
        let coefficient = catalan_coefficient_pointed(&partition, &closure)?;
        out.add_term(
            graph_of_pnc(&partition),
            signed(&coefficient.value, partition.len() % 2 == 1),
        );
    }
    Ok(out)
}
