//! Graph associahedra of paths and cycles as Minkowski sums of simplices.
//!
//! The polytope of a graph is `Σ_S Δ_S` over all tubes `S`. Faces correspond
//! order-reversingly to tubings: the face of a tubing `t` is where the
//! functional `-Σ n_i x_i` is maximized, `n_i` counting the tubes of `t`
//! containing `i`, and its dimension is `|I| - |t|`. Vertices come from
//! maximal tubings by picking, inside every simplex, the coordinate of
//! minimal weight; construction then asserts that each chosen point is the
//! strict maximizer of its own functional among all constructed vertices.
//!
//! On the cyclohedron the cyclic Cartesian factor of a face is located by a
//! coordinate rule: exactly the labels whose maximum over the face reaches
//! `C(n,2) + 1`, the number of tubes through a fixed vertex of the cycle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num::BigInt;
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::graphs::{ComponentKind, Label, LabeledGraph};
use crate::tubings::{enumerate_tubes, enumerate_tubings, validate_tubing, Tube, Tubing};
use crate::{Error, Rational, Result};

/// A point of the ambient space with exact rational coordinates, one per
/// label of the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub coords: BTreeMap<Label, Rational>,
}

/// The graph associahedron of a host graph, stored through its vertices and
/// the face/tubing correspondence. Immutable after construction.
#[derive(Debug, Clone)]
pub struct PolytopeModel {
    host: LabeledGraph,
    labels: Vec<Label>,
    tubes: Vec<Tube>,
    tubings: Vec<Tubing>,
    vertex_tubings: Vec<Tubing>,
    vertex_rows: Vec<Vec<i64>>,
}

/// A face: its tubing, the vertices of the model lying on it, and its
/// dimension `|I| - |t|`.
#[derive(Debug, Clone)]
pub struct FaceModel {
    pub tubing: Tubing,
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
}

/// Builds the polytope of a set of paths and cycles. Every vertex coordinate
/// sum equals the number of tubes, one contribution per simplex summand.
///
/// Panics if the verification pass finds a constructed vertex that fails to
/// uniquely maximize its tubing functional.
pub fn build_polytope(host: &LabeledGraph) -> PolytopeModel {
    let labels: Vec<Label> = host.ground_set().into_iter().collect();
    let tubes = enumerate_tubes(host);
    let tubings = enumerate_tubings(host);
    let n = labels.len();

    let index: BTreeMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let tube_indices: Vec<Vec<usize>> = tubes
        .iter()
        .map(|t| t.vertices().iter().map(|l| index[l]).collect())
        .collect();

    let vertex_tubings: Vec<Tubing> = tubings.iter().filter(|t| t.len() == n).cloned().collect();
    let mut vertex_rows: Vec<Vec<i64>> = Vec::with_capacity(vertex_tubings.len());
    for tubing in &vertex_tubings {
        let weights = tube_weights(&labels, tubing);
        let mut row = vec![0i64; n];
        for members in &tube_indices {
            // The vertex of Δ_S maximizing -Σ n_i x_i: the member of minimal
            // weight, ties broken by smallest label.
            let pick = *members
                .iter()
                .min_by_key(|&&i| (weights[i], i))
                .expect("tubes are nonempty");
            row[pick] += 1;
        }
        vertex_rows.push(row);
    }

    // Verification: each vertex strictly maximizes its own functional.
    for (a, tubing) in vertex_tubings.iter().enumerate() {
        let weights = tube_weights(&labels, tubing);
        let score = |row: &[i64]| -> i64 { row.iter().zip(&weights).map(|(x, w)| -x * w).sum() };
        let own = score(&vertex_rows[a]);
        for (b, row) in vertex_rows.iter().enumerate() {
            if a != b {
                assert!(
                    score(row) < own,
                    "vertex of tubing {tubing:?} is not the unique maximizer"
                );
            }
        }
    }

    PolytopeModel {
        host: host.clone(),
        labels,
        tubes,
        tubings,
        vertex_tubings,
        vertex_rows,
    }
}

fn tube_weights(labels: &[Label], tubing: &Tubing) -> Vec<i64> {
    labels
        .iter()
        .map(|l| tubing.tubes().iter().filter(|t| t.contains(l)).count() as i64)
        .collect()
}

impl PolytopeModel {
    pub fn host(&self) -> &LabeledGraph {
        &self.host
    }

    pub fn dim(&self) -> usize {
        self.host.size() - self.host.components().len()
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    /// All tubings of the host, i.e. all faces.
    pub fn tubings(&self) -> &[Tubing] {
        &self.tubings
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_rows.len()
    }

    /// The maximal tubing a vertex came from.
    pub fn vertex_tubing(&self, index: usize) -> &Tubing {
        &self.vertex_tubings[index]
    }

    pub fn vertex_point(&self, index: usize) -> RationalPoint {
        RationalPoint {
            coords: self
                .labels
                .iter()
                .zip(&self.vertex_rows[index])
                .map(|(l, &x)| (l.clone(), Rational::from(BigInt::from(x))))
                .collect(),
        }
    }

    pub fn vertices(&self) -> Vec<RationalPoint> {
        (0..self.vertex_count())
            .map(|i| self.vertex_point(i))
            .collect()
    }

    /// Integer coordinate row of a vertex, in the order of sorted labels.
    pub fn vertex_row(&self, index: usize) -> &[i64] {
        &self.vertex_rows[index]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// JSON form: the host word plus every vertex with exact coordinates and
    /// its maximal tubing.
    pub fn to_json(&self) -> Value {
        json!({
            "graph": self.host.word(),
            "vertices": (0..self.vertex_count())
                .map(|i| {
                    let coords: BTreeMap<String, String> = self
                        .labels
                        .iter()
                        .zip(&self.vertex_rows[i])
                        .map(|(l, x)| (l.to_string(), x.to_string()))
                        .collect();
                    json!({
                        "coords": coords,
                        "tubing": self.vertex_tubings[i].to_json()["tubes"],
                    })
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// The face of a tubing: the vertices where `-Σ n_i x_i` attains its maximum.
pub fn face_of_tubing(model: &PolytopeModel, tubing: &Tubing) -> Result<FaceModel> {
    validate_tubing(&model.host, tubing)?;
    let weights = tube_weights(&model.labels, tubing);
    let score = |row: &[i64]| -> i64 { row.iter().zip(&weights).map(|(x, w)| -x * w).sum() };
    let best = model
        .vertex_rows
        .iter()
        .map(|row| score(row))
        .max()
        .expect("polytopes have vertices");
    let vertex_indices: Vec<usize> = model
        .vertex_rows
        .iter()
        .enumerate()
        .filter(|(_, row)| score(row) == best)
        .map(|(i, _)| i)
        .collect();
    Ok(FaceModel {
        tubing: tubing.clone(),
        vertex_indices,
        dim: model.host.size() - tubing.len(),
    })
}

/// Face counts by dimension, from dimension 0 upward: `f_k` is the number of
/// tubings with `|I| - |t| = k`.
pub fn f_vector(model: &PolytopeModel) -> Vec<usize> {
    let mut counts = vec![0usize; model.dim() + 1];
    for tubing in &model.tubings {
        counts[model.host.size() - tubing.len()] += 1;
    }
    counts
}

/// Labels whose maximum coordinate over the face reaches `C(n,2) + 1`; on a
/// cyclohedron these are exactly the zero block of the face's tubing.
pub fn cyclic_factor_coordinates(
    model: &PolytopeModel,
    face: &FaceModel,
) -> Result<BTreeSet<Label>> {
    let n = cyclic_host_size(&model.host)?;
    let target = (n * (n - 1) / 2 + 1) as i64;
    let mut out = BTreeSet::new();
    for (i, label) in model.labels.iter().enumerate() {
        let max = face
            .vertex_indices
            .iter()
            .map(|&v| model.vertex_rows[v][i])
            .max()
            .expect("faces contain vertices");
        if max == target {
            out.insert(label.clone());
        }
    }
    Ok(out)
}

fn cyclic_host_size(host: &LabeledGraph) -> Result<usize> {
    match host.components() {
        [comp] if comp.kind() == ComponentKind::Cycle => Ok(comp.size()),
        _ => Err(Error::HostNotCycle),
    }
}

/// The standard factorization of a face: for a path host the multiset of
/// block sizes of the tubing's partition (each block an associahedron
/// factor); for a cycle host additionally the zero block size, the
/// cyclohedron factor. Factor sizes are returned ascending.
pub fn face_factorization(
    model: &PolytopeModel,
    face: &FaceModel,
) -> Result<(Option<usize>, Vec<usize>)> {
    if model.host.components().len() != 1 {
        return Err(Error::NotConnected);
    }
    let decomposition = crate::tubings::decompose_tubing(&model.host, &face.tubing)?;
    match decomposition.zero_block {
        Some(zero) => {
            let mut sizes: Vec<usize> = decomposition
                .partition
                .iter()
                .filter(|b| **b != zero)
                .map(BTreeSet::len)
                .collect();
            sizes.sort_unstable();
            Ok((Some(zero.len()), sizes))
        }
        None => {
            let mut sizes: Vec<usize> = decomposition.partition.iter().map(BTreeSet::len).collect();
            sizes.sort_unstable();
            Ok((None, sizes))
        }
    }
}

/// One face of the associahedron `a_n`, reduced to what inversion formulas
/// need: the tubing size and the factor sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocFace {
    pub tube_count: usize,
    pub factors: Vec<usize>,
}

/// One face of the cyclohedron `c_n`: tubing size, the size of the cyclic
/// factor located by the coordinate rule, and the path factor sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloFace {
    pub tube_count: usize,
    pub zero_size: usize,
    pub factors: Vec<usize>,
}

static ASSOC_PROFILES: Lazy<Mutex<HashMap<usize, Arc<Vec<AssocFace>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));
static CYCLO_PROFILES: Lazy<Mutex<HashMap<usize, Arc<Vec<CycloFace>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Face profile of the standard associahedron `a_n`, cached per `n`.
pub fn assoc_face_profile(n: usize) -> Arc<Vec<AssocFace>> {
    if let Some(hit) = ASSOC_PROFILES.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let host = crate::graphs::standard_path(n);
    let labels: Vec<Label> = host.ground_set().into_iter().collect();
    let faces: Vec<AssocFace> = enumerate_tubings(&host)
        .iter()
        .map(|tubing| {
            let (blocks, _) = signature_blocks(&labels, tubing);
            let mut factors: Vec<usize> = blocks.iter().map(BTreeSet::len).collect();
            factors.sort_unstable();
            AssocFace {
                tube_count: tubing.len(),
                factors,
            }
        })
        .collect();
    let arc = Arc::new(faces);
    ASSOC_PROFILES
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// Face profile of the standard cyclohedron `c_n`, cached per `n`. The
/// cyclic factor of every face is located by the coordinate rule (the
/// maximum of a coordinate over the face is its per-simplex maximum summed
/// over all tubes) and cross-checked against the tubing's zero block.
pub fn cyclo_face_profile(n: usize) -> Arc<Vec<CycloFace>> {
    if let Some(hit) = CYCLO_PROFILES.lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let host = crate::graphs::standard_cycle(n);
    let labels: Vec<Label> = host.ground_set().into_iter().collect();
    let tubes = enumerate_tubes(&host);
    let index: BTreeMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let tube_indices: Vec<Vec<usize>> = tubes
        .iter()
        .map(|t| t.vertices().iter().map(|l| index[l]).collect())
        .collect();
    let target = (n * (n - 1) / 2 + 1) as i64;

    let mut faces = Vec::new();
    for tubing in enumerate_tubings(&host) {
        let weights = tube_weights(&labels, &tubing);
        // Max of coordinate l over the face: each simplex contributes 1
        // exactly when l attains the minimal weight inside it.
        let mut coordinate_max = vec![0i64; n];
        for members in &tube_indices {
            let min = members.iter().map(|&i| weights[i]).min().unwrap();
            for &i in members {
                if weights[i] == min {
                    coordinate_max[i] += 1;
                }
            }
        }
        let coordinate_zero: BTreeSet<usize> =
            (0..n).filter(|&i| coordinate_max[i] == target).collect();

        let (blocks, zero_idx) = signature_blocks(&labels, &tubing);
        let zero_idx = zero_idx.expect("cycle tubings have a zero block");
        assert_eq!(
            coordinate_zero, blocks[zero_idx],
            "coordinate rule disagrees with the zero block for {tubing:?}"
        );
        let mut factors: Vec<usize> = blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != zero_idx)
            .map(|(_, b)| b.len())
            .collect();
        factors.sort_unstable();

        faces.push(CycloFace {
            tube_count: tubing.len(),
            zero_size: coordinate_zero.len(),
            factors,
        });
    }
    let arc = Arc::new(faces);
    CYCLO_PROFILES
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// Blocks of the partition induced by a tubing (vertices grouped by the set
/// of tubes containing them), as label-index sets, plus the index of the
/// block living only in the full tube when one exists.
fn signature_blocks(labels: &[Label], tubing: &Tubing) -> (Vec<BTreeSet<usize>>, Option<usize>) {
    let full_len = labels.len();
    let mut grouped: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        let signature: Vec<usize> = tubing
            .tubes()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(label))
            .map(|(j, _)| j)
            .collect();
        grouped.entry(signature).or_default().insert(i);
    }
    let mut blocks = Vec::with_capacity(grouped.len());
    let mut zero = None;
    for (signature, members) in grouped {
        if signature.len() == 1 && tubing.tubes()[signature[0]].len() == full_len {
            zero = Some(blocks.len());
        }
        blocks.push(members);
    }
    (blocks, zero)
}
