//! Classical yardsticks: exhaustive MaxCut, a low-rank Goemans-Williamson
//! relaxation with hyperplane rounding, and approximation-ratio bounds.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionVector};
use crate::rng;

/// Goemans-Williamson approximation guarantee.
pub const GW_ALPHA: f64 = 0.87856;

/// Largest graph [`exact_maxcut`] will enumerate.
pub const EXACT_MAX_VERTICES: usize = 24;

pub const GW_RESTARTS: usize = 20;
pub const GW_DEFAULT_ROUNDINGS: usize = 200;
const GW_MAX_STEPS: usize = 2000;
const GW_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CutSolution {
    pub cut: f64,
    pub partition: PartitionVector,
}

/// Global maximum over all `2^{|V|-1}` bipartitions with vertex 0 fixed on
/// the `+1` side. Gray-code order flips one vertex per step and updates the
/// cut incrementally.
pub fn exact_maxcut(graph: &Graph) -> Result<CutSolution> {
    let n = graph.num_vertices();
    if n > EXACT_MAX_VERTICES {
        return Err(Error::GraphTooLarge {
            vertices: n,
            limit: EXACT_MAX_VERTICES,
        });
    }
    let adj = graph.adjacency();
    let mut signs = vec![1i8; n];
    let mut cut = 0.0;
    let mut best = (0.0, 0u64);
    let mut code = 0u64;
    for step in 1..(1u64 << (n - 1)) {
        let v = step.trailing_zeros() as usize + 1;
        let delta: f64 = adj[v]
            .iter()
            .map(|&(u, w)| if signs[u] == signs[v] { w } else { -w })
            .sum();
        signs[v] = -signs[v];
        code ^= 1 << v;
        cut += delta;
        if cut > best.0 {
            best = (cut, code);
        }
    }
    let partition = PartitionVector::from_bits(best.1, n);
    // Recount so float weights do not carry accumulated rounding.
    let cut = graph.cut_weight(partition.as_slice())?;
    Ok(CutSolution { cut, partition })
}

/// Default Burer-Monteiro rank `⌈√(2|V|)⌉`.
pub fn default_rank(num_vertices: usize) -> usize {
    (libm::ceil(libm::sqrt(2.0 * num_vertices as f64)) as usize).max(2)
}

/// Goemans-Williamson style cut.
///
/// Maximizes `Σ w_ij (1 - v_i·v_j) / 2` over unit vectors in `R^rank` by
/// projected gradient ascent with backtracking, from [`GW_RESTARTS`] random
/// starts (restart `k` uses stream `(seed, k)`). The best embedding is then
/// rounded by `roundings` random hyperplanes and the best cut is kept.
pub fn gw_maxcut(graph: &Graph, rank: usize, roundings: usize, seed: u64) -> Result<CutSolution> {
    if rank < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "rank must be at least 2, got {rank}"
        )));
    }
    if roundings == 0 {
        return Err(Error::InvalidArgument("at least one rounding is required".into()));
    }
    let n = graph.num_vertices();
    let adj = graph.adjacency();

    let mut best_embedding: Option<(f64, Vec<f64>)> = None;
    for restart in 0..GW_RESTARTS {
        let mut rng = rng::stream(seed, restart as u64);
        let (value, embedding) = ascend(&adj, rank, &mut rng);
        if best_embedding.as_ref().is_none_or(|(v, _)| value > *v) {
            best_embedding = Some((value, embedding));
        }
    }
    let (_, embedding) = best_embedding.expect("at least one restart");

    let mut best = CutSolution {
        cut: -1.0,
        partition: PartitionVector::all_ones(n),
    };
    let mut normal = vec![0.0; rank];
    for round in 0..roundings {
        let mut rng = rng::stream(seed, (GW_RESTARTS + round) as u64);
        normal.iter_mut().for_each(|r| *r = rng::normal(&mut rng));
        let signs: Vec<i8> = embedding
            .chunks_exact(rank)
            .map(|v| if dot(v, &normal) >= 0.0 { 1 } else { -1 })
            .collect();
        let cut = graph.cut_weight(&signs)?;
        if cut > best.cut {
            let partition = PartitionVector::new(signs)?;
            // Canonical orientation: vertex 0 on the +1 side.
            let partition = if partition.as_slice()[0] < 0 {
                partition.flipped()
            } else {
                partition
            };
            best = CutSolution { cut, partition };
        }
    }
    Ok(best)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let norm = libm::sqrt(dot(v, v));
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

fn relaxed_cut(adj: &[Vec<(usize, f64)>], rank: usize, vs: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, nbrs) in adj.iter().enumerate() {
        let vi = &vs[i * rank..(i + 1) * rank];
        for &(j, w) in nbrs.iter().filter(|&&(j, _)| j > i) {
            total += w * (1.0 - dot(vi, &vs[j * rank..(j + 1) * rank])) / 2.0;
        }
    }
    total
}

/// One restart of projected gradient ascent on the unit-vector embedding.
fn ascend(adj: &[Vec<(usize, f64)>], rank: usize, rng: &mut rng::Rng) -> (f64, Vec<f64>) {
    let n = adj.len();
    let mut vs: Vec<f64> = (0..n * rank).map(|_| rng::normal(rng)).collect();
    vs.chunks_exact_mut(rank).for_each(normalize);
    let mut value = relaxed_cut(adj, rank, &vs);

    let max_degree = adj
        .iter()
        .map(|nbrs| nbrs.iter().map(|&(_, w)| w).sum::<f64>())
        .fold(0.0, f64::max);
    if max_degree == 0.0 {
        return (value, vs);
    }
    let mut step = 1.0 / max_degree;
    let mut grad = vec![0.0; n * rank];
    let mut trial = vec![0.0; n * rank];
    for _ in 0..GW_MAX_STEPS {
        // Ascent direction for vertex i: -Σ_j w_ij v_j.
        grad.iter_mut().for_each(|g| *g = 0.0);
        for (i, nbrs) in adj.iter().enumerate() {
            for &(j, w) in nbrs {
                for d in 0..rank {
                    grad[i * rank + d] -= w * vs[j * rank + d];
                }
            }
        }
        let mut improved = false;
        while step > 1e-12 {
            for ((t, v), g) in trial.iter_mut().zip(&vs).zip(&grad) {
                *t = v + step * g;
            }
            trial.chunks_exact_mut(rank).for_each(normalize);
            let candidate = relaxed_cut(adj, rank, &trial);
            if candidate > value {
                let gain = candidate - value;
                core::mem::swap(&mut vs, &mut trial);
                value = candidate;
                step *= 1.5;
                improved = gain > GW_TOLERANCE * value.max(1.0);
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (value, vs)
}

/// Bracket `[α·cut/gw, cut/gw]` on the approximation ratio of `cut`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RatioBounds {
    pub lower: f64,
    pub upper: f64,
}

pub fn ratio_bounds(cut: f64, gw_cut: f64) -> Result<RatioBounds> {
    if gw_cut.is_nan() || gw_cut <= 0.0 {
        return Err(Error::NonPositiveBaseline(gw_cut));
    }
    let upper = cut / gw_cut;
    Ok(RatioBounds {
        lower: GW_ALPHA * upper,
        upper,
    })
}
