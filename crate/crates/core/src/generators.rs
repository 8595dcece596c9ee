//! Graphs for the chain, stochastic block model and image experiments.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

/// Chain `1 — 2 — … — n`. Edge index `k` (1-based) is the edge `{k, k+1}`.
pub fn chain_graph(n: usize, default_w: f64, overrides: &[(usize, f64)]) -> Result<Graph> {
    let mut weights = vec![default_w; n.saturating_sub(1)];
    for &(k, w) in overrides {
        if k == 0 || k >= n {
            return Err(Error::InvalidOverride(k));
        }
        weights[k - 1] = w;
    }
    let edges: Vec<_> = weights.iter().enumerate().map(|(k, &w)| (k + 1, k + 2, w)).collect();
    Graph::new(n, &edges)
}

/// The 100-node chain with weight 5/4 everywhere except 1 on edge `{4, 5}`.
pub fn reference_chain() -> Graph {
    chain_graph(100, 5.0 / 4.0, &[(4, 1.0)]).expect("fixed parameters are valid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbmSpec {
    pub block_sizes: Vec<usize>,
    pub p_in: f64,
    pub p_out: f64,
    pub rng_seed: u64,
}

impl SbmSpec {
    pub fn new(block_sizes: Vec<usize>, p_in: f64, p_out: f64, rng_seed: u64) -> Result<Self> {
        if block_sizes.is_empty() || block_sizes.contains(&0) {
            return Err(Error::InvalidParameter("block sizes must be positive".into()));
        }
        if block_sizes.iter().sum::<usize>() < 2 {
            return Err(Error::InvalidParameter("SBM needs at least two nodes".into()));
        }
        if !(0.0..=1.0).contains(&p_out) || !(0.0..=1.0).contains(&p_in) || p_out > p_in {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= p_out <= p_in <= 1, got p_in={p_in}, p_out={p_out}"
            )));
        }
        Ok(SbmSpec {
            block_sizes,
            p_in,
            p_out,
            rng_seed,
        })
    }

    pub fn node_count(&self) -> usize {
        self.block_sizes.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbmGraph {
    pub graph: Graph,
    /// Node ids of each block; block `k` occupies a contiguous id range.
    pub blocks: Vec<NodeSet>,
    pub isolated: Vec<usize>,
}

/// Uniform draw in `[0, 1)` for the unordered pair `{i, j}` (`i < j`).
///
/// Each pair gets its own ChaCha stream, so the draw depends only on the seed
/// and the pair, not on the order in which pairs are visited.
fn pair_uniform(rng: &mut ChaCha8Rng, n: usize, i: usize, j: usize) -> f64 {
    rng.set_stream((i * (n + 1) + j) as u64);
    rng.set_word_pos(0);
    rng.gen::<f64>()
}

/// Samples every unordered pair once: an edge of weight 1 appears with
/// probability `p_in` inside a block and `p_out` across blocks.
pub fn sbm_graph(spec: &SbmSpec) -> Result<SbmGraph> {
    let n = spec.node_count();
    let mut block_of = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(spec.block_sizes.len());
    let mut start = 1;
    for (b, &size) in spec.block_sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, size));
        blocks.push(NodeSet::range(start, start + size - 1));
        start += size;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let p = if block_of[i - 1] == block_of[j - 1] {
                spec.p_in
            } else {
                spec.p_out
            };
            if pair_uniform(&mut rng, n, i, j) < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    let graph = Graph::new(n, &edges)?;
    let isolated = (1..=n).filter(|&i| graph.degree(i) == 0).collect();
    Ok(SbmGraph {
        graph,
        blocks,
        isolated,
    })
}

/// `count` distinct nodes drawn uniformly from the first block.
pub fn sample_seeds(blocks: &[NodeSet], count: usize, rng_seed: u64) -> Result<NodeSet> {
    let block = blocks
        .first()
        .ok_or_else(|| Error::InvalidParameter("no blocks to sample from".into()))?;
    if count == 0 {
        return Err(Error::InvalidParameter("seed count must be positive".into()));
    }
    if count > block.len() {
        return Err(Error::CountTooLarge {
            count,
            available: block.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let picked = index::sample(&mut rng, block.len(), count);
    let ids: Vec<usize> = picked.iter().map(|k| block.ids()[k]).collect();
    let n = block.ids().last().copied().unwrap_or(0);
    NodeSet::new(ids, n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreyImage {
    pub width: usize,
    pub height: usize,
    /// Row-major grey values.
    pub pixels: Vec<u8>,
}

impl GreyImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter("image dimensions must be positive".into()));
        }
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                got: pixels.len(),
            });
        }
        Ok(GreyImage { width, height, pixels })
    }

    /// Left `split` columns have grey value `left`, the rest `right`.
    pub fn two_region(width: usize, height: usize, split: usize, left: u8, right: u8) -> Self {
        let pixels = (0..height)
            .flat_map(|_| (0..width).map(move |c| if c < split { left } else { right }))
            .collect();
        GreyImage { width, height, pixels }
    }

    /// Node id of the pixel at `(row, col)`.
    pub fn node_id(&self, row: usize, col: usize) -> usize {
        row * self.width + col + 1
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }
}

/// 4-connected pixel grid with `W = exp(−(g_i − g_j)² / σ²)`.
///
/// Weights too small to represent are clamped to the smallest positive
/// normal `f64`, which keeps every edge in the graph.
pub fn grid_from_image(img: &GreyImage, sigma: f64) -> Result<Graph> {
    if img.width * img.height < 2 {
        return Err(Error::InvalidParameter("image must have at least two pixels".into()));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    let weight = |a: u8, b: u8| {
        let d = a as f64 - b as f64;
        (-(d * d) / (sigma * sigma)).exp().max(f64::MIN_POSITIVE)
    };
    let mut edges = Vec::with_capacity(2 * img.width * img.height);
    for r in 0..img.height {
        for c in 0..img.width {
            let g = img.get(r, c);
            if c + 1 < img.width {
                edges.push((img.node_id(r, c), img.node_id(r, c + 1), weight(g, img.get(r, c + 1))));
            }
            if r + 1 < img.height {
                edges.push((img.node_id(r, c), img.node_id(r + 1, c), weight(g, img.get(r + 1, c))));
            }
        }
    }
    Graph::new(img.width * img.height, &edges)
}
