//! Structural invariants with heavier quantifiers than the per-module unit
//! tests: Hopf axioms over all small structures, cancellation-freeness of the
//! tubing antipode, the direction oracle for polytope vertices, and
//! property-based laws for exact series arithmetic.
//!
//! Identities here are relabeling-equivariant, so for the larger ground sets
//! they run over one representative per isomorphism class; equivariance
//! itself is checked separately on scrambled labels.

use std::collections::{BTreeMap, BTreeSet};

use num::traits::One;
use num::{BigInt, BigUint};
use proptest::prelude::*;

use pathcycle::graphs::{
    enumerate_structures, standard_cycle, standard_label, standard_path, Component, ComponentKind,
    Label, LabeledGraph,
};
use pathcycle::hopf::{
    antipode_axiom_sum, antipode_mm, antipode_of_product, coproduct, lc_product, LinearCombination,
};
use pathcycle::noncrossing::{adjacent_closure, catalan_coefficient, enumerate_nc};
use pathcycle::polytope::build_polytope;
use pathcycle::series::{compose, group_mul, TruncatedPair, TruncatedSeries};
use pathcycle::tubings::{decompose_tubing, enumerate_tubings};
use pathcycle::Rational;

fn labels(n: usize) -> Vec<Label> {
    (1..=n).map(standard_label).collect()
}

fn subset_of(labels: &[Label], mask: u32) -> BTreeSet<Label> {
    (0..labels.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| labels[i].clone())
        .collect()
}

/// One standard-labeled representative per isomorphism class on n vertices.
fn iso_representatives(n: usize) -> Vec<LabeledGraph> {
    let mut shapes: Vec<Vec<(usize, ComponentKind)>> = Vec::new();
    let mut acc: Vec<(usize, ComponentKind)> = Vec::new();
    fn rec(
        left: usize,
        max: (usize, ComponentKind),
        acc: &mut Vec<(usize, ComponentKind)>,
        shapes: &mut Vec<Vec<(usize, ComponentKind)>>,
    ) {
        if left == 0 {
            shapes.push(acc.clone());
            return;
        }
        for size in (1..=left.min(max.0)).rev() {
            for kind in [ComponentKind::Cycle, ComponentKind::Path] {
                if size == max.0 && kind_rank(kind) > kind_rank(max.1) {
                    continue;
                }
                acc.push((size, kind));
                rec(left - size, (size, kind), acc, shapes);
                acc.pop();
            }
        }
    }
    fn kind_rank(kind: ComponentKind) -> u8 {
        match kind {
            ComponentKind::Cycle => 0,
            ComponentKind::Path => 1,
        }
    }
    rec(n, (n, ComponentKind::Path), &mut acc, &mut shapes);

    shapes
        .into_iter()
        .map(|shape| {
            let mut next = 1;
            let mut components = Vec::new();
            for (size, kind) in shape {
                let vs: Vec<Label> = (next..next + size).map(standard_label).collect();
                next += size;
                components.push(Component::new(kind, vs).unwrap());
            }
            LabeledGraph::new(components).unwrap()
        })
        .collect()
}

#[test]
fn iso_representatives_cover_small_structures() {
    for n in 1..=4 {
        let classes: BTreeSet<String> = enumerate_structures(&labels(n))
            .iter()
            .map(|g| g.iso_class().to_string())
            .collect();
        let reps: BTreeSet<String> = iso_representatives(n)
            .iter()
            .map(|g| g.iso_class().to_string())
            .collect();
        assert_eq!(classes, reps, "n={n}");
    }
}

/// Compatibility: (x·y)|_S = x|_{S∩J} · y|_{S∩K} and likewise for
/// contraction. Exhaustive over all labeled structure pairs for |I| <= 5.
#[test]
fn compatibility_axiom_exhaustive() {
    for n in 0..=5 {
        let all = labels(n);
        for split in 0u32..(1 << n) {
            let j = subset_of(&all, split);
            let k: BTreeSet<Label> = all.iter().filter(|l| !j.contains(l)).cloned().collect();
            let j_vec: Vec<Label> = j.iter().cloned().collect();
            let k_vec: Vec<Label> = k.iter().cloned().collect();
            for x in enumerate_structures(&j_vec) {
                for y in enumerate_structures(&k_vec) {
                    let xy = x.disjoint_union(&y).unwrap();
                    for mask in 0u32..(1 << n) {
                        let s = subset_of(&all, mask);
                        let a: BTreeSet<Label> = s.intersection(&j).cloned().collect();
                        let b: BTreeSet<Label> = s.intersection(&k).cloned().collect();
                        assert_eq!(
                            xy.restrict(&s).unwrap(),
                            x.restrict(&a)
                                .unwrap()
                                .disjoint_union(&y.restrict(&b).unwrap())
                                .unwrap()
                        );
                        assert_eq!(
                            xy.contract(&s).unwrap(),
                            x.contract(&a)
                                .unwrap()
                                .disjoint_union(&y.contract(&b).unwrap())
                                .unwrap()
                        );
                    }
                }
            }
        }
    }
}

/// The same compatibility statement on isomorphism-class representatives for
/// |I| = 6, split along components.
#[test]
fn compatibility_axiom_representatives_6() {
    let all = labels(6);
    for rep in iso_representatives(6) {
        let comps = rep.components();
        for split_mask in 0u32..(1 << comps.len()) {
            let mut x_parts = Vec::new();
            let mut y_parts = Vec::new();
            for (i, c) in comps.iter().enumerate() {
                if split_mask & (1 << i) != 0 {
                    x_parts.push(c.clone());
                } else {
                    y_parts.push(c.clone());
                }
            }
            let x = LabeledGraph::new(x_parts).unwrap();
            let y = LabeledGraph::new(y_parts).unwrap();
            let j = x.ground_set();
            let k = y.ground_set();
            for mask in 0u32..(1 << 6) {
                let s = subset_of(&all, mask);
                let a: BTreeSet<Label> = s.intersection(&j).cloned().collect();
                let b: BTreeSet<Label> = s.intersection(&k).cloned().collect();
                assert_eq!(
                    rep.restrict(&s).unwrap(),
                    x.restrict(&a)
                        .unwrap()
                        .disjoint_union(&y.restrict(&b).unwrap())
                        .unwrap()
                );
                assert_eq!(
                    rep.contract(&s).unwrap(),
                    x.contract(&a)
                        .unwrap()
                        .disjoint_union(&y.contract(&b).unwrap())
                        .unwrap()
                );
            }
        }
    }
}

/// Coassociativity: the two ways of splitting I = A ⊔ B ⊔ C agree.
/// Exhaustive for |I| <= 5, representatives for |I| = 6.
#[test]
fn coassociativity() {
    let mut cases: Vec<LabeledGraph> = Vec::new();
    for n in 0..=5 {
        cases.extend(enumerate_structures(&labels(n)));
    }
    cases.extend(iso_representatives(6));
    for graph in cases {
        let ground: Vec<Label> = graph.ground_set().into_iter().collect();
        let n = ground.len();
        for mask_a in 0u32..(1 << n) {
            let a = subset_of(&ground, mask_a);
            let rest_mask = !mask_a & ((1u32 << n) - 1);
            // B runs over subsets of the complement of A.
            let rest: Vec<Label> = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| rest_mask & (1 << i) != 0)
                .map(|(_, l)| l.clone())
                .collect();
            for mask_b in 0u32..(1 << rest.len()) {
                let b = subset_of(&rest, mask_b);
                let ab: BTreeSet<Label> = a.union(&b).cloned().collect();

                let left = coproduct(&graph, &a).unwrap();
                let via_left = coproduct(&left.contraction, &b).unwrap();
                let right = coproduct(&graph, &ab).unwrap();
                let via_right = coproduct(&right.restriction, &a).unwrap();

                assert_eq!(left.restriction, via_right.restriction);
                assert_eq!(via_left.restriction, via_right.contraction);
                assert_eq!(via_left.contraction, right.contraction);
            }
        }
    }
}

/// The antipode axiom Σ g|_S · s(g/_S) = 0 over every decomposition, for all
/// structures with |I| <= 5 and for representatives with |I| = 6, 7.
#[test]
fn antipode_axiom() {
    let mut cases: Vec<LabeledGraph> = Vec::new();
    for n in 1..=5 {
        cases.extend(enumerate_structures(&labels(n)));
    }
    cases.extend(iso_representatives(6));
    cases.extend(iso_representatives(7));
    for graph in cases {
        assert!(
            antipode_axiom_sum(&graph).unwrap().is_zero(),
            "antipode axiom failed for {}",
            graph.word()
        );
    }
}

/// Product reversal: s(x ⊔ y) computed by the recursion equals
/// s(y)·s(x), over all component splits of representatives with |I| <= 7.
#[test]
fn antipode_reverses_products() {
    for n in 2..=7 {
        for rep in iso_representatives(n) {
            let comps = rep.components();
            if comps.len() < 2 {
                continue;
            }
            let whole = antipode_mm(&rep);
            for split_mask in 0u32..(1 << comps.len()) {
                let mut x_parts = Vec::new();
                let mut y_parts = Vec::new();
                for (i, c) in comps.iter().enumerate() {
                    if split_mask & (1 << i) != 0 {
                        x_parts.push(c.clone());
                    } else {
                        y_parts.push(c.clone());
                    }
                }
                let x = LabeledGraph::new(x_parts).unwrap();
                let y = LabeledGraph::new(y_parts).unwrap();
                assert_eq!(
                    antipode_of_product(&x, &y).unwrap(),
                    whole,
                    "split of {}",
                    rep.word()
                );
            }
        }
    }
}

/// Antipode commutes with relabeling, so class representatives carry the
/// content of the labeled statements.
#[test]
fn antipode_relabeling_equivariance() {
    let scrambles: Vec<Vec<&str>> = vec![
        vec!["z", "q", "m", "a", "k", "x", "b"],
        vec!["t3", "t1", "t2", "t0", "t9", "t5", "t4"],
    ];
    for n in 1..=6 {
        for rep in iso_representatives(n) {
            for scramble in &scrambles {
                let map: BTreeMap<Label, Label> = (1..=n)
                    .map(|i| (standard_label(i), Label::new(scramble[i - 1]).unwrap()))
                    .collect();
                let relabeled = rep.relabel(&map).unwrap();
                assert_eq!(
                    antipode_mm(&relabeled),
                    antipode_mm(&rep).relabel(&map).unwrap(),
                    "equivariance for {}",
                    rep.word()
                );
            }
        }
    }
}

/// Tubing antipode terms never cancel: all tubings with the same induced
/// graph have the same parity of |t| (indeed the same |t|), for p_n and c_n
/// with n <= 7.
#[test]
fn cancellation_freeness() {
    for n in 1..=7 {
        for host in [standard_path(n), standard_cycle(n)] {
            let mut sizes: BTreeMap<String, usize> = BTreeMap::new();
            for tubing in enumerate_tubings(&host) {
                let d = decompose_tubing(&host, &tubing).unwrap();
                let entry = sizes.entry(d.graph.word()).or_insert(tubing.len());
                assert_eq!(*entry, tubing.len(), "mixed |t| over {}", host.word());
            }
        }
    }
}

/// Tubing sizes stay within the dimension bounds on mixed hosts.
#[test]
fn tubing_size_bounds() {
    for rep in iso_representatives(5) {
        let c = rep.components().len();
        let n = rep.size();
        for tubing in enumerate_tubings(&rep) {
            assert!(tubing.len() >= c);
            let dim = n - tubing.len();
            assert!(dim <= n - c);
        }
    }
}

/// Total Catalan coefficient over NC(p_n) equals the number of tubings of
/// p_n, the face count of the associahedron.
#[test]
fn catalan_coefficients_total_tubings() {
    for n in 1..=7 {
        let host = standard_path(n);
        let mut total = BigUint::ZERO;
        for partition in enumerate_nc(&host).unwrap() {
            let closure = adjacent_closure(&partition);
            total += catalan_coefficient(&partition, &closure).unwrap().value;
        }
        assert_eq!(
            total,
            BigUint::from(enumerate_tubings(&host).len()),
            "n={n}"
        );
    }
}

/// Vertices from maximal tubings coincide with the direction oracle: one
/// generic direction per permutation of the ground set, summing per-simplex
/// argmax contributions.
#[test]
fn polytope_vertices_match_direction_oracle_6() {
    use itertools::Itertools;
    for host in [standard_path(6), standard_cycle(6)] {
        let model = build_polytope(&host);
        let labels = model.labels().to_vec();
        let n = labels.len();
        let tube_indices: Vec<Vec<usize>> = model
            .tubes()
            .iter()
            .map(|t| {
                t.vertices()
                    .iter()
                    .map(|l| labels.iter().position(|x| x == l).unwrap())
                    .collect()
            })
            .collect();
        let mut oracle: BTreeSet<Vec<i64>> = BTreeSet::new();
        for perm in (0..n).permutations(n) {
            let mut rank = vec![0usize; n];
            for (r, &i) in perm.iter().enumerate() {
                rank[i] = r;
            }
            let mut row = vec![0i64; n];
            for members in &tube_indices {
                let best = *members.iter().max_by_key(|&&i| rank[i]).unwrap();
                row[best] += 1;
            }
            oracle.insert(row);
        }
        let vertices: BTreeSet<Vec<i64>> = (0..model.vertex_count())
            .map(|i| model.vertex_row(i).to_vec())
            .collect();
        assert_eq!(vertices, oracle, "{}", host.word());
    }
}

// Exact-rational strategies for the series laws.

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=8).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn pair_strategy(order: usize) -> impl Strategy<Value = TruncatedPair> {
    (
        prop::collection::vec(rational(), order - 1),
        prop::collection::vec(rational(), order),
    )
        .prop_map(|(a, c)| TruncatedPair::new(a, c).unwrap())
}

fn monic_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order - 1).prop_map(|tail| {
        let mut coeffs = vec![Rational::one()];
        coeffs.extend(tail);
        TruncatedSeries::new(coeffs)
    })
}

fn any_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order).prop_map(TruncatedSeries::new)
}

/// Multiplication of zero-constant truncated series, for the Horner oracle.
fn mul_truncated(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order();
    let mut out = TruncatedSeries::zero(order);
    for i in 1..=order {
        for j in 1..=order.saturating_sub(i) {
            let value = out.coeff(i + j) + a.coeff(i) * b.coeff(j);
            out.set_coeff(i + j, value);
        }
    }
    out
}

fn horner_compose(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    let order = f.order();
    let mut acc = TruncatedSeries::zero(order);
    for k in (1..=order).rev() {
        acc = mul_truncated(g, &acc).add(&g.scale(f.coeff(k))).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Group axioms of G at order 8: associativity, unit, two-sided inverse.
    #[test]
    fn group_axioms(
        p1 in pair_strategy(8),
        p2 in pair_strategy(8),
        p3 in pair_strategy(8),
    ) {
        let left = group_mul(&group_mul(&p1, &p2).unwrap(), &p3).unwrap();
        let right = group_mul(&p1, &group_mul(&p2, &p3).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        let e = TruncatedPair::identity(8);
        prop_assert_eq!(group_mul(&p1, &e).unwrap(), p1.clone());
        prop_assert_eq!(group_mul(&e, &p1).unwrap(), p1.clone());

        let inv = pathcycle::series::group_inv(&p1);
        prop_assert_eq!(group_mul(&p1, &inv).unwrap(), e.clone());
        prop_assert_eq!(group_mul(&inv, &p1).unwrap(), e);
    }

    /// The embedding g ↦ (g, 0) is a group homomorphism.
    #[test]
    fn path_subgroup_embedding(g1 in monic_series(8), g2 in monic_series(8)) {
        let zero = TruncatedSeries::zero(8);
        let p1 = TruncatedPair::from_gh(&g1, &zero).unwrap();
        let p2 = TruncatedPair::from_gh(&g2, &zero).unwrap();
        let product = group_mul(&p1, &p2).unwrap();
        let expected = TruncatedPair::from_gh(&compose(&g1, &g2).unwrap(), &zero).unwrap();
        prop_assert_eq!(product, expected);
    }

    /// Faà di Bruno composition equals Horner-style substitution at order 12.
    #[test]
    fn faa_di_bruno_matches_horner(f in any_series(12), g in monic_series(12)) {
        prop_assert_eq!(compose(&f, &g).unwrap(), horner_compose(&f, &g));
    }

    /// Bilinearity of the product of linear combinations.
    #[test]
    fn lc_product_bilinear(c1 in rational(), c2 in rational(), c3 in rational()) {
        let x1 = LabeledGraph::parse("12").unwrap();
        let x2 = LabeledGraph::parse("(12)").unwrap();
        let y = LabeledGraph::parse("3|(45)").unwrap();
        let mut lhs = LinearCombination::from_term(x1.clone(), c1.clone());
        lhs.add_term(x2.clone(), c2.clone());
        let rhs = LinearCombination::from_term(y.clone(), c3.clone());
        let product = lc_product(&lhs, &rhs).unwrap();
        let mut expected = LinearCombination::from_term(
            x1.disjoint_union(&y).unwrap(), c1 * &c3);
        expected.add_term(x2.disjoint_union(&y).unwrap(), c2 * &c3);
        prop_assert_eq!(product, expected);
    }
}

// Random labeled graphs for round-trip and restriction laws.

fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
    let pool: Vec<&'static str> = vec![
        "0", "3", "7", "9", "a", "f", "k", "z", "10", "42", "x1", "x2",
    ];
    prop::sample::subsequence(pool, 0..=7)
        .prop_shuffle()
        .prop_flat_map(|tokens| {
            let n = tokens.len();
            (
                Just(tokens),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(tokens, breaks, kinds)| {
            let mut components = Vec::new();
            let mut current: Vec<Label> = Vec::new();
            for (i, token) in tokens.iter().enumerate() {
                current.push(Label::new(*token).unwrap());
                if breaks[i] || i + 1 == tokens.len() {
                    let kind = if kinds[i] {
                        ComponentKind::Cycle
                    } else {
                        ComponentKind::Path
                    };
                    components.push(Component::new(kind, std::mem::take(&mut current)).unwrap());
                }
            }
            LabeledGraph::new(components).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// print ∘ parse is the identity on canonical words; parse ∘ print is the
    /// identity on graphs.
    #[test]
    fn word_roundtrip(graph in arb_graph()) {
        let word = graph.word();
        let reparsed = LabeledGraph::parse(&word).unwrap();
        prop_assert_eq!(&reparsed, &graph);
        prop_assert_eq!(reparsed.word(), word);
    }

    /// restrict(restrict(g, S'), S) = restrict(g, S) for S ⊆ S'.
    #[test]
    fn nested_restriction(graph in arb_graph(), seed in any::<u64>()) {
        let ground: Vec<Label> = graph.ground_set().into_iter().collect();
        let n = ground.len();
        let big_mask = (seed & ((1 << n) - 1).max(1)) as u32;
        let small_mask = ((seed >> 16) as u32) & big_mask;
        let big: BTreeSet<Label> = (0..n)
            .filter(|i| big_mask & (1 << i) != 0)
            .map(|i| ground[i].clone())
            .collect();
        let small: BTreeSet<Label> = (0..n)
            .filter(|i| small_mask & (1 << i) != 0)
            .map(|i| ground[i].clone())
            .collect();
        prop_assert_eq!(
            graph.restrict(&big).unwrap().restrict(&small).unwrap(),
            graph.restrict(&small).unwrap()
        );
        // Ground sets land where they must.
        prop_assert_eq!(graph.restrict(&big).unwrap().ground_set(), big.clone());
        let complement: BTreeSet<Label> =
            graph.ground_set().difference(&big).cloned().collect();
        prop_assert_eq!(graph.contract(&big).unwrap().ground_set(), complement);
    }
}

// Independent oracle for the coproduct: enumerate threads as walks in the
// host multigraph and compare edge multisets with the implementation.

/// All threads between `subset` vertices: walks whose interior avoids the
/// subset, with distinct vertices, one per reversal class. Parallel edges of
/// 2-cycles give distinct one-edge threads.
fn oracle_thread_edges(comp: &Component, subset: &BTreeSet<Label>) -> Vec<(Label, Label)> {
    let edges: Vec<(Label, Label)> = comp.edges();
    let mut found: BTreeSet<(Vec<Label>, Vec<usize>)> = BTreeSet::new();
    let mut walk: Vec<Label> = Vec::new();
    let mut used: Vec<usize> = Vec::new();

    fn extend(
        edges: &[(Label, Label)],
        subset: &BTreeSet<Label>,
        walk: &mut Vec<Label>,
        used: &mut Vec<usize>,
        found: &mut BTreeSet<(Vec<Label>, Vec<usize>)>,
    ) {
        let here = walk.last().unwrap().clone();
        for (i, (a, b)) in edges.iter().enumerate() {
            if used.contains(&i) {
                continue;
            }
            let next = if *a == here {
                b.clone()
            } else if *b == here {
                a.clone()
            } else {
                continue;
            };
            // Interior vertices must be distinct and outside the subset.
            if walk[1..].contains(&next) {
                continue;
            }
            walk.push(next.clone());
            used.push(i);
            if subset.contains(&next) {
                // Reached an endpoint: record one representative per
                // reversal class.
                let forward = (walk.clone(), used.clone());
                let mut rev_walk = walk.clone();
                rev_walk.reverse();
                let mut rev_used = used.clone();
                rev_used.reverse();
                let reverse = (rev_walk, rev_used);
                found.insert(forward.min(reverse));
            } else {
                extend(edges, subset, walk, used, found);
            }
            walk.pop();
            used.pop();
        }
    }

    for start in comp.vertices() {
        if !subset.contains(start) {
            continue;
        }
        walk.push(start.clone());
        extend(&edges, subset, &mut walk, &mut used, &mut found);
        walk.pop();
    }
    found
        .into_iter()
        .map(|(w, _)| (w.first().unwrap().clone(), w.last().unwrap().clone()))
        .collect()
}

fn edge_multiset(graph: &LabeledGraph) -> BTreeMap<(Label, Label), usize> {
    let mut out = BTreeMap::new();
    for comp in graph.components() {
        for (a, b) in comp.edges() {
            let key = if a <= b { (a, b) } else { (b, a) };
            *out.entry(key).or_insert(0) += 1;
        }
    }
    out
}

/// The restriction's edges equal the thread enumeration, for every subset of
/// standard paths and cycles up to 7 vertices and of two mixed hosts; and a
/// cycle restricted to a nonempty proper subset stays a cycle of that size
/// while its contraction yields only paths.
#[test]
fn restriction_matches_thread_oracle() {
    let mut hosts: Vec<LabeledGraph> = Vec::new();
    for n in 1..=7 {
        hosts.push(standard_path(n));
        hosts.push(standard_cycle(n));
    }
    hosts.push(LabeledGraph::parse("12|(3456)").unwrap());
    hosts.push(LabeledGraph::parse("(12)|(345)|6").unwrap());
    for host in hosts {
        let ground: Vec<Label> = host.ground_set().into_iter().collect();
        let n = ground.len();
        for mask in 0u32..(1 << n) {
            let subset = subset_of(&ground, mask);
            let restricted = host.restrict(&subset).unwrap();

            let mut expected: BTreeMap<(Label, Label), usize> = BTreeMap::new();
            for comp in host.components() {
                for (a, b) in oracle_thread_edges(comp, &subset) {
                    let key = if a <= b { (a, b) } else { (b, a) };
                    *expected.entry(key).or_insert(0) += 1;
                }
            }
            assert_eq!(
                edge_multiset(&restricted),
                expected,
                "host {}, subset {subset:?}",
                host.word()
            );

            // Kind bookkeeping on cycles.
            let contracted = host.contract(&subset).unwrap();
            for comp in host.components() {
                if comp.kind() != ComponentKind::Cycle {
                    continue;
                }
                let meet: BTreeSet<Label> = comp
                    .vertices()
                    .iter()
                    .filter(|v| subset.contains(v))
                    .cloned()
                    .collect();
                if !meet.is_empty() {
                    let image = restricted
                        .components()
                        .iter()
                        .find(|c| c.contains(meet.iter().next().unwrap()))
                        .unwrap();
                    assert_eq!(image.kind(), ComponentKind::Cycle);
                    assert_eq!(image.size(), meet.len());
                }
                if !meet.is_empty() && meet.len() < comp.size() {
                    for v in comp.vertices() {
                        if subset.contains(v) {
                            continue;
                        }
                        let image = contracted
                            .components()
                            .iter()
                            .find(|c| c.contains(v))
                            .unwrap();
                        assert_eq!(image.kind(), ComponentKind::Path);
                    }
                }
            }
        }
    }
}

/// The direction oracle at n = 5 as well.
#[test]
fn polytope_vertices_match_direction_oracle_5() {
    use itertools::Itertools;
    for host in [standard_path(5), standard_cycle(5)] {
        let model = build_polytope(&host);
        let labels = model.labels().to_vec();
        let n = labels.len();
        let mut oracle: BTreeSet<Vec<i64>> = BTreeSet::new();
        for perm in (0..n).permutations(n) {
            let mut rank = vec![0usize; n];
            for (r, &i) in perm.iter().enumerate() {
                rank[i] = r;
            }
            let mut row = vec![0i64; n];
            for tube in model.tubes() {
                let best = tube
                    .vertices()
                    .iter()
                    .map(|l| labels.iter().position(|x| x == l).unwrap())
                    .max_by_key(|&i| rank[i])
                    .unwrap();
                row[best] += 1;
            }
            oracle.insert(row);
        }
        let vertices: BTreeSet<Vec<i64>> = (0..model.vertex_count())
            .map(|i| model.vertex_row(i).to_vec())
            .collect();
        assert_eq!(vertices, oracle, "{}", host.word());
    }
}

/// The two constructions of a face's graph agree tubing by tubing: the
/// thread-edge rule of the decomposition and the restrict/contract formula
/// of the (pointed) noncrossing partition it induces.
#[test]
fn decomposition_routes_agree_per_tubing() {
    use pathcycle::noncrossing::{graph_of_nc, graph_of_pnc, NcPartition, PointedNcPartition};
    for n in 1..=6 {
        let path = standard_path(n);
        for tubing in enumerate_tubings(&path) {
            let d = decompose_tubing(&path, &tubing).unwrap();
            let partition = NcPartition::new(&path, d.partition.clone()).unwrap();
            assert_eq!(graph_of_nc(&partition), d.graph, "p_{n}");
        }
        let cycle = standard_cycle(n);
        for tubing in enumerate_tubings(&cycle) {
            let d = decompose_tubing(&cycle, &tubing).unwrap();
            let zero = d.zero_block.clone().unwrap();
            let rest: Vec<BTreeSet<Label>> = d
                .partition
                .iter()
                .filter(|b| **b != zero)
                .cloned()
                .collect();
            let partition = PointedNcPartition::new(&cycle, zero, rest).unwrap();
            assert_eq!(graph_of_pnc(&partition), d.graph, "c_{n}");
        }
    }
}

/// If a graph contains a cycle, every decomposition leaves a cycle in the
/// restriction or in the contraction; paths are a quotient-stable subfamily.
#[test]
fn cycles_persist_through_decompositions() {
    for n in 1..=6 {
        for rep in iso_representatives(n) {
            let has_cycle = rep
                .components()
                .iter()
                .any(|c| c.kind() == ComponentKind::Cycle);
            if !has_cycle {
                continue;
            }
            let ground: Vec<Label> = rep.ground_set().into_iter().collect();
            for mask in 0u32..(1 << n) {
                let s = subset_of(&ground, mask);
                let restriction = rep.restrict(&s).unwrap();
                let contraction = rep.contract(&s).unwrap();
                let cycle_somewhere = restriction
                    .components()
                    .iter()
                    .chain(contraction.components())
                    .any(|c| c.kind() == ComponentKind::Cycle);
                assert!(cycle_somewhere, "{} lost its cycle at {s:?}", rep.word());
            }
        }
    }
}

/// Enumerator and validator agree: among all subsets of the tube set,
/// exactly the enumerated tubings validate.
#[test]
fn tubing_enumeration_matches_validation() {
    use pathcycle::tubings::{enumerate_tubes, validate_tubing, Tubing};
    for host in [
        standard_path(4),
        standard_cycle(4),
        LabeledGraph::parse("12|(34)").unwrap(),
    ] {
        let tubes = enumerate_tubes(&host);
        let enumerated: BTreeSet<Tubing> =
            enumerate_tubings(&host).into_iter().collect();
        let mut validated = BTreeSet::new();
        for mask in 0u32..(1 << tubes.len()) {
            let subset: Vec<_> = tubes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, t)| t.clone())
                .collect();
            let tubing = Tubing::new(subset);
            if validate_tubing(&host, &tubing).is_ok() {
                validated.insert(tubing);
            }
        }
        assert_eq!(enumerated, validated, "{}", host.word());
    }
}

/// The face/tubing correspondence is order-reversing: the vertices on the
/// face of `t` are exactly the vertices whose maximal tubing contains `t`.
#[test]
fn face_vertices_are_refining_maximal_tubings() {
    use pathcycle::polytope::face_of_tubing;
    for n in 1..=5 {
        for host in [standard_path(n), standard_cycle(n)] {
            let model = build_polytope(&host);
            for tubing in model.tubings() {
                let face = face_of_tubing(&model, tubing).unwrap();
                let by_functional: BTreeSet<usize> =
                    face.vertex_indices.iter().copied().collect();
                let by_refinement: BTreeSet<usize> = (0..model.vertex_count())
                    .filter(|&v| {
                        let maximal = model.vertex_tubing(v);
                        tubing
                            .tubes()
                            .iter()
                            .all(|t| maximal.tubes().contains(t))
                    })
                    .collect();
                assert_eq!(by_functional, by_refinement, "{}", host.word());
            }
        }
    }
}
