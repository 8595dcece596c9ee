//! End-to-end pipelines for the three reference experiments, shared by the
//! command-line tool and the browser demo.

use crate::baselines::{fiedler_vector, indicator_error, indicator_error_over, IndicatorError, LaplacianMode};
use crate::certificates::{
    extract_cluster, kkt_residuals, prop1_check, u_bound_check, ClusterResult, KKTReport, Prop1Report,
    DEFAULT_EPS_SAT,
};
use crate::error::Result;
use crate::generators::{grid_from_image, reference_chain, sample_seeds, sbm_graph, GreyImage, SbmSpec};
use crate::graph::NodeSet;
use crate::objectives::NLassoProblem;
use crate::signal::NodeSignal;
use crate::solver::{run, SolverConfig};

pub const FIEDLER_TOL: f64 = 1e-10;
pub const FIEDLER_MAX_ITERS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub lambda: f64,
    pub alpha: f64,
    pub iters: usize,
    pub threshold: f64,
    pub u_bound: usize,
    pub fiedler_mode: LaplacianMode,
}

impl Default for ChainParams {
    fn default() -> Self {
        ChainParams {
            lambda: 2.0 / 10.0,
            alpha: 1.0 / 200.0,
            iters: 1000,
            threshold: 0.5,
            u_bound: 80,
            fiedler_mode: LaplacianMode::SymmetricNormalized,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub signal: NodeSignal,
    pub fiedler: NodeSignal,
    pub fiedler_eigenvalue: f64,
    pub cluster: ClusterResult,
    pub kkt: KKTReport,
    /// `None` when the cluster misses the seed.
    pub prop1: Option<Prop1Report>,
    pub u_bound_holds: bool,
    pub nlasso_error: IndicatorError,
    pub fiedler_error: IndicatorError,
    pub nlasso_error_first20: IndicatorError,
    pub fiedler_error_first20: IndicatorError,
}

/// Seed node 1 on the 100-node reference chain; errors are measured against
/// the indicator of `{1, 2, 3, 4}`.
pub fn chain_experiment(params: &ChainParams) -> Result<ChainReport> {
    let g = reference_chain();
    let seeds = NodeSet::new([1], g.node_count())?;
    let p = NLassoProblem::new(&g, seeds, params.alpha, params.lambda)?;
    let res = run(&p, &SolverConfig::new(params.iters)?)?;
    let cluster = extract_cluster(&res.x, params.threshold, p.seeds());
    let kkt = kkt_residuals(&p, &res.x, &res.y, DEFAULT_EPS_SAT)?;
    let prop1 = if cluster.contains_seeds {
        Some(prop1_check(&p, &cluster, &res.x)?)
    } else {
        None
    };
    let u_bound_holds = u_bound_check(&p, &cluster, params.u_bound);
    let f = fiedler_vector(&g, params.fiedler_mode, FIEDLER_TOL, FIEDLER_MAX_ITERS)?;
    let truth = NodeSet::range(1, 4);
    let first20 = NodeSet::range(1, 20);
    Ok(ChainReport {
        nlasso_error: indicator_error(&res.x, &truth)?,
        fiedler_error: indicator_error(&f.vector, &truth)?,
        nlasso_error_first20: indicator_error_over(&res.x, &truth, &first20)?,
        fiedler_error_first20: indicator_error_over(&f.vector, &truth, &first20)?,
        signal: res.x,
        fiedler: f.vector,
        fiedler_eigenvalue: f.eigenvalue,
        cluster,
        kkt,
        prop1,
        u_bound_holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbmParams {
    pub block_sizes: [usize; 2],
    pub p_in: f64,
    pub p_out: f64,
    pub seed_count: usize,
    pub alpha: f64,
    pub lambda: f64,
    pub iters: usize,
    pub threshold: f64,
}

impl Default for SbmParams {
    fn default() -> Self {
        SbmParams {
            block_sizes: [100, 100],
            p_in: 1.0 / 5.0,
            p_out: 1.0 / 100.0,
            seed_count: 20,
            alpha: 1.0 / 40.0,
            lambda: 1.0 / 200.0,
            iters: 1000,
            threshold: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbmReport {
    pub seeds: NodeSet,
    pub signal: NodeSignal,
    pub cluster: NodeSet,
    pub block: NodeSet,
    pub accuracy: f64,
    pub edge_count: usize,
}

/// Fraction of nodes whose in/out-of-cluster label matches membership in `block`.
pub fn labelling_accuracy(cluster: &NodeSet, block: &NodeSet, n: usize) -> f64 {
    let correct = (1..=n).filter(|&i| cluster.contains(i) == block.contains(i)).count();
    correct as f64 / n as f64
}

/// Draws the graph and seeds from `rng_seed`, solves, and scores the cluster
/// against the first block.
pub fn sbm_experiment(params: &SbmParams, rng_seed: u64) -> Result<SbmReport> {
    let spec = SbmSpec::new(params.block_sizes.to_vec(), params.p_in, params.p_out, rng_seed)?;
    let sbm = sbm_graph(&spec)?;
    let seeds = sample_seeds(&sbm.blocks, params.seed_count, rng_seed)?;
    let p = NLassoProblem::new(&sbm.graph, seeds.clone(), params.alpha, params.lambda)?;
    let res = run(&p, &SolverConfig::new(params.iters)?)?;
    let cluster = extract_cluster(&res.x, params.threshold, &seeds).cluster;
    let n = sbm.graph.node_count();
    Ok(SbmReport {
        accuracy: labelling_accuracy(&cluster, &sbm.blocks[0], n),
        edge_count: sbm.graph.edge_count(),
        block: sbm.blocks[0].clone(),
        seeds,
        signal: res.x,
        cluster,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentReport {
    pub signal: NodeSignal,
    pub cluster: NodeSet,
    /// 255 inside the cluster, 0 outside.
    pub mask: GreyImage,
}

pub const DEFAULT_SIGMA: f64 = 20.0;

pub fn segment(
    img: &GreyImage,
    seeds: &NodeSet,
    alpha: f64,
    lambda: f64,
    iters: usize,
    threshold: f64,
) -> Result<SegmentReport> {
    let g = grid_from_image(img, DEFAULT_SIGMA)?;
    let p = NLassoProblem::new(&g, seeds.clone(), alpha, lambda)?;
    let res = run(&p, &SolverConfig::new(iters)?)?;
    let cluster = extract_cluster(&res.x, threshold, seeds).cluster;
    let pixels = (1..=g.node_count())
        .map(|i| if cluster.contains(i) { 255 } else { 0 })
        .collect();
    Ok(SegmentReport {
        mask: GreyImage::new(img.width, img.height, pixels)?,
        signal: res.x,
        cluster,
    })
}
