//! Weighted undirected graphs, their Laplacians and cut evaluation.
//!
//! For a ±1 partition vector `v`, the cut weight is `vᵀ L v / 4`: every
//! crossing edge contributes `w (1 - (-1)) ^ 2 / 4 = w` and every internal edge
//! contributes zero.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::rng;

/// Rejected pairings before random regular generation gives up.
const MAX_PAIRING_ATTEMPTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a simple graph, rejecting self-loops, repeated unordered pairs,
    /// out-of-range endpoints and negative or non-finite weights. Edge order
    /// is preserved.
    pub fn new<I>(num_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if num_vertices == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = BTreeSet::new();
        let mut stored = Vec::new();
        for (u, v, weight) in edges {
            for vertex in [u, v] {
                if vertex >= num_vertices {
                    return Err(Error::VertexOutOfRange { vertex, num_vertices });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(Error::InvalidWeight(weight));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
            stored.push(Edge { u, v, weight });
        }
        Ok(Self {
            num_vertices,
            edges: stored,
        })
    }

    /// Unit-weight graph from vertex pairs.
    pub fn unweighted<I>(num_vertices: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(num_vertices, pairs.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn complete(num_vertices: usize) -> Result<Self> {
        Self::unweighted(
            num_vertices,
            (0..num_vertices).flat_map(|u| (u + 1..num_vertices).map(move |v| (u, v))),
        )
    }

    pub fn cycle(num_vertices: usize) -> Result<Self> {
        if num_vertices < 3 {
            return Err(Error::InvalidArgument(alloc::format!(
                "a cycle needs at least 3 vertices, got {num_vertices}"
            )));
        }
        Self::unweighted(num_vertices, (0..num_vertices).map(|u| (u, (u + 1) % num_vertices)))
    }

    /// Uniformly paired configuration model: lay out `degree` stubs per
    /// vertex, shuffle, pair consecutive stubs and retry until the result has
    /// no self-loops or parallel edges. Deterministic for a fixed seed.
    pub fn random_regular(num_vertices: usize, degree: usize, seed: u64) -> Result<Self> {
        let infeasible = |reason| Error::InfeasibleDegree {
            vertices: num_vertices,
            degree,
            reason,
        };
        if num_vertices == 0 {
            return Err(Error::EmptyGraph);
        }
        if degree >= num_vertices {
            return Err(infeasible("degree must be smaller than the vertex count"));
        }
        if !(num_vertices * degree).is_multiple_of(2) {
            return Err(infeasible("vertex count times degree is odd"));
        }

        let mut rng = rng::stream(seed, 0);
        let mut stubs: Vec<usize> = (0..num_vertices)
            .flat_map(|v| core::iter::repeat_n(v, degree))
            .collect();
        let mut seen = BTreeSet::new();
        for _ in 0..MAX_PAIRING_ATTEMPTS {
            stubs.shuffle(&mut rng);
            seen.clear();
            let simple = stubs.chunks_exact(2).all(|pair| {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                a != b && seen.insert((a, b))
            });
            if simple {
                return Self::unweighted(num_vertices, stubs.chunks_exact(2).map(|pair| (pair[0], pair[1])));
            }
        }
        Err(Error::GenerationFailed {
            vertices: num_vertices,
            degree,
            attempts: MAX_PAIRING_ATTEMPTS,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn weighted_degrees(&self) -> Vec<f64> {
        let mut degrees = vec![0.0; self.num_vertices];
        for e in &self.edges {
            degrees[e.u] += e.weight;
            degrees[e.v] += e.weight;
        }
        degrees
    }

    /// Neighbor lists `(neighbor, weight)` per vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    /// `⌈log2 |V|⌉`, the qubit count needed to index every vertex.
    pub fn qubits(&self) -> u32 {
        self.num_vertices.next_power_of_two().trailing_zeros()
    }

    pub fn is_padded(&self) -> bool {
        self.num_vertices.is_power_of_two()
    }

    /// Adds isolated vertices up to the next power of two. Edges are kept.
    pub fn pad_to_power_of_two(&self) -> Graph {
        Graph {
            num_vertices: self.num_vertices.next_power_of_two(),
            edges: self.edges.clone(),
        }
    }

    /// Total weight of edges whose endpoints carry different signs, counted
    /// edge by edge. `signs` may be longer than the vertex count (padding).
    pub fn cut_weight(&self, signs: &[i8]) -> Result<f64> {
        if signs.len() < self.num_vertices {
            return Err(Error::DimensionMismatch {
                expected: self.num_vertices,
                found: signs.len(),
            });
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| signs[e.u] != signs[e.v])
            .map(|e| e.weight)
            .sum())
    }

    pub fn laplacian(&self) -> Result<Laplacian> {
        Laplacian::from_graph(self)
    }

    /// Monte-Carlo mean and standard deviation of the cut of a uniformly
    /// random ±1 assignment.
    pub fn random_bipartition_stats(&self, samples: usize, seed: u64) -> Result<BipartitionStats> {
        if samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        let mut rng = rng::stream(seed, 0);
        let mut signs = vec![1i8; self.num_vertices];
        // Welford
        let (mut mean, mut m2) = (0.0, 0.0);
        for k in 0..samples {
            for s in signs.iter_mut() {
                *s = if rng.gen::<bool>() { 1 } else { -1 };
            }
            let cut = self.cut_weight(&signs)?;
            let delta = cut - mean;
            mean += delta / (k + 1) as f64;
            m2 += delta * (cut - mean);
        }
        let variance = if samples > 1 { m2 / (samples - 1) as f64 } else { 0.0 };
        Ok(BipartitionStats {
            mean,
            std_dev: libm::sqrt(variance),
            samples,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BipartitionStats {
    pub mean: f64,
    pub std_dev: f64,
    pub samples: usize,
}

/// Dense graph Laplacian `L = D - W` of a graph padded to a power-of-two
/// vertex count.
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian {
    matrix: RealMatrix,
}

impl Laplacian {
    pub fn from_graph(graph: &Graph) -> Result<Self> {
        let dim = graph.num_vertices();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        let mut matrix = RealMatrix::zeros(dim);
        for e in graph.edges() {
            matrix.add_to(e.u, e.u, e.weight);
            matrix.add_to(e.v, e.v, e.weight);
            matrix.add_to(e.u, e.v, -e.weight);
            matrix.add_to(e.v, e.u, -e.weight);
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn qubits(&self) -> u32 {
        self.dim().trailing_zeros()
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix.row(i).iter().sum()).collect()
    }
}

/// Vertex assignment to the two sides of a cut.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartitionVector {
    signs: Vec<i8>,
}

impl PartitionVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidSign(bad));
        }
        Ok(Self { signs })
    }

    pub fn all_ones(len: usize) -> Self {
        Self { signs: vec![1; len] }
    }

    /// Bit `k` of `bits` set means vertex `k` is on the `-1` side.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        Self {
            signs: (0..len).map(|k| if (bits >> k) & 1 == 1 { -1 } else { 1 }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.signs
    }

    pub fn flipped(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    pub fn truncated(&self, len: usize) -> Self {
        Self {
            signs: self.signs[..len.min(self.signs.len())].to_vec(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.signs.iter().map(|&s| f64::from(s)).collect()
    }
}

/// Cut weight as the quadratic form `vᵀ L v / 4`.
pub fn cut_value(laplacian: &Laplacian, partition: &PartitionVector) -> Result<f64> {
    if partition.len() != laplacian.dim() {
        return Err(Error::DimensionMismatch {
            expected: laplacian.dim(),
            found: partition.len(),
        });
    }
    Ok(laplacian.matrix().quadratic_form(&partition.to_f64()) / 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k2() -> Graph {
        Graph::unweighted(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn regular_graph_on_four_vertices_is_k4() {
        for seed in 0..5 {
            let g = Graph::random_regular(4, 3, seed).unwrap();
            assert_eq!(g.num_edges(), 6);
            assert!(g.weighted_degrees().iter().all(|&d| d == 3.0));
        }
    }

    #[test]
    fn regular_graph_edge_count_and_degrees() {
        let g = Graph::random_regular(32, 3, 11).unwrap();
        assert_eq!(g.num_edges(), 48);
        assert!(g.weighted_degrees().iter().all(|&d| d == 3.0));
        assert_eq!(g, Graph::random_regular(32, 3, 11).unwrap());
        assert_ne!(g, Graph::random_regular(32, 3, 12).unwrap());
    }

    #[test]
    fn infeasible_regular_graphs_are_rejected() {
        assert!(matches!(
            Graph::random_regular(5, 3, 0),
            Err(Error::InfeasibleDegree { .. })
        ));
        assert!(matches!(
            Graph::random_regular(3, 3, 0),
            Err(Error::InfeasibleDegree { .. })
        ));
    }

    #[test]
    fn invalid_edges_are_rejected() {
        assert_eq!(Graph::unweighted(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::unweighted(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(1, 0)));
        assert!(matches!(
            Graph::unweighted(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(Graph::new(2, [(0, 1, -1.0)]).is_err());
        assert!(Graph::new(2, [(0, 1, f64::NAN)]).is_err());
        assert_eq!(Graph::unweighted(0, []), Err(Error::EmptyGraph));
    }

    #[test]
    fn padding() {
        let g = Graph::random_regular(32, 3, 1).unwrap();
        assert_eq!(g.pad_to_power_of_two(), g);
        let g5 = Graph::unweighted(5, [(0, 1), (3, 4)]).unwrap();
        let p = g5.pad_to_power_of_two();
        assert_eq!(p.num_vertices(), 8);
        assert_eq!(p.edges(), g5.edges());
        assert_eq!(&p.weighted_degrees()[5..], &[0.0, 0.0, 0.0]);
        let g1 = Graph::unweighted(1, []).unwrap();
        assert_eq!(g1.pad_to_power_of_two().num_vertices(), 1);
        assert_eq!(g1.qubits(), 0);
        assert_eq!(g5.qubits(), 3);
    }

    #[test]
    fn laplacian_examples() {
        let l = k2().laplacian().unwrap();
        assert_eq!(l.matrix().as_slice(), &[1.0, -1.0, -1.0, 1.0]);

        let c4 = Graph::cycle(4).unwrap().laplacian().unwrap();
        for i in 0..4 {
            assert_eq!(c4.matrix()[(i, i)], 2.0);
            assert_eq!(c4.matrix()[(i, (i + 1) % 4)], -1.0);
            assert_eq!(c4.matrix()[(i, (i + 2) % 4)], 0.0);
        }

        let padded = Graph::unweighted(3, [(0, 1), (1, 2)])
            .unwrap()
            .pad_to_power_of_two()
            .laplacian()
            .unwrap();
        assert!(padded.matrix().row(3).iter().all(|&x| x == 0.0));
        assert!((0..4).all(|i| padded.matrix()[(i, 3)] == 0.0));

        assert_eq!(
            Graph::unweighted(3, [(0, 1)]).unwrap().laplacian(),
            Err(Error::NotPowerOfTwo(3))
        );
    }

    #[test]
    fn cut_value_examples() {
        let l = k2().laplacian().unwrap();
        let v = PartitionVector::new(vec![1, -1]).unwrap();
        assert_eq!(cut_value(&l, &v).unwrap(), 1.0);

        let c4 = Graph::cycle(4).unwrap().laplacian().unwrap();
        let alt = PartitionVector::new(vec![1, -1, 1, -1]).unwrap();
        assert_eq!(cut_value(&c4, &alt).unwrap(), 4.0);
        assert_eq!(cut_value(&c4, &PartitionVector::all_ones(4)).unwrap(), 0.0);
        assert!(cut_value(&c4, &v).is_err());
        assert_eq!(PartitionVector::new(vec![1, 0]), Err(Error::InvalidSign(0)));
    }

    #[test]
    fn bipartition_mean_of_k2() {
        // Exhaustive: two of the four assignments cut the edge.
        let g = k2();
        let exact: f64 = (0..4u64)
            .map(|b| g.cut_weight(PartitionVector::from_bits(b, 2).as_slice()).unwrap())
            .sum::<f64>()
            / 4.0;
        assert_eq!(exact, 0.5);
        let stats = g.random_bipartition_stats(20_000, 3).unwrap();
        assert!((stats.mean - 0.5).abs() < 0.02);
        assert!((stats.std_dev - 0.5).abs() < 0.02);
        assert!(g.random_bipartition_stats(0, 3).is_err());
    }

    #[test]
    fn bipartition_mean_of_regular_graphs() {
        let g32 = Graph::random_regular(32, 3, 4).unwrap();
        let s = g32.random_bipartition_stats(20_000, 1).unwrap();
        assert!((s.mean - 24.0).abs() < 0.2, "{s:?}");
        let g128 = Graph::random_regular(128, 3, 4).unwrap();
        let s = g128.random_bipartition_stats(20_000, 1).unwrap();
        assert!((s.mean - 96.0).abs() < 0.4, "{s:?}");
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (2usize..=12)
            .prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let m = pairs.len();
                (
                    Just(n),
                    Just(pairs),
                    proptest::collection::vec((any::<bool>(), 0u8..4), m),
                )
            })
            .prop_map(|(n, pairs, picks)| {
                let edges = pairs
                    .into_iter()
                    .zip(picks)
                    .filter(|(_, (keep, _))| *keep)
                    .map(|((u, v), (_, w))| (u, v, f64::from(w)));
                Graph::new(n, edges).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn quadratic_form_matches_edge_count(g in small_graph()) {
            let padded = g.pad_to_power_of_two();
            let l = padded.laplacian().unwrap();
            for row_sum in l.row_sums() {
                prop_assert!(row_sum.abs() <= 1e-12);
            }
            prop_assert!(l.matrix().is_symmetric(0.0));
            let n = g.num_vertices();
            for bits in 0..(1u64 << n) {
                let mut signs = PartitionVector::from_bits(bits, n).as_slice().to_vec();
                signs.resize(padded.num_vertices(), 1);
                let v = PartitionVector::new(signs).unwrap();
                let quadratic = cut_value(&l, &v).unwrap();
                prop_assert_eq!(quadratic, g.cut_weight(v.as_slice()).unwrap());
                prop_assert_eq!(quadratic, cut_value(&l, &v.flipped()).unwrap());
            }
        }

        #[test]
        fn padded_vertices_do_not_change_cut(g in small_graph(), bits: u64, pad_bits: u64) {
            let n = g.num_vertices();
            let padded = g.pad_to_power_of_two();
            let l = padded.laplacian().unwrap();
            let base = PartitionVector::from_bits(bits, padded.num_vertices());
            let mut other = base.as_slice().to_vec();
            for (k, s) in other.iter_mut().enumerate().skip(n) {
                *s = if (pad_bits >> k) & 1 == 1 { -1 } else { 1 };
            }
            let other = PartitionVector::new(other).unwrap();
            prop_assert_eq!(cut_value(&l, &base).unwrap(), cut_value(&l, &other).unwrap());
        }
    }
}
