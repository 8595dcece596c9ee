//! Spectral baseline: graph Laplacians applied matrix-free, and the Fiedler
//! vector by shifted power iteration with deflation of the known null vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::signal::NodeSignal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianMode {
    /// `L = D − W`.
    Unnormalized,
    /// `I − D^{-1/2} W D^{-1/2}`.
    SymmetricNormalized,
}

/// A Laplacian operator bound to a graph. Nothing is materialised beyond the
/// degree scaling, so applying it costs `O(|V| + |E|)`.
#[derive(Debug, Clone)]
pub struct Laplacian<'g> {
    graph: &'g Graph,
    mode: LaplacianMode,
    // weighted degrees (unnormalized) or 1/sqrt(weighted degree) (normalized)
    scale: Vec<f64>,
}

pub fn laplacian(g: &Graph, mode: LaplacianMode) -> Result<Laplacian<'_>> {
    let deg: Vec<f64> = (1..=g.node_count()).map(|i| g.weighted_degree(i)).collect();
    let scale = match mode {
        LaplacianMode::Unnormalized => deg,
        LaplacianMode::SymmetricNormalized => {
            if let Some(k) = deg.iter().position(|&d| d <= 0.0) {
                return Err(Error::IsolatedNode(k + 1));
            }
            deg.iter().map(|d| 1.0 / d.sqrt()).collect()
        }
    };
    Ok(Laplacian { graph: g, mode, scale })
}

impl<'g> Laplacian<'g> {
    pub fn mode(&self) -> LaplacianMode {
        self.mode
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn apply(&self, x: &NodeSignal) -> Result<NodeSignal> {
        self.graph.check_signal(x)?;
        let mut out = vec![0.0; x.len()];
        self.apply_into(&x.0, &mut out);
        Ok(NodeSignal(out))
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        let g = self.graph;
        match self.mode {
            LaplacianMode::Unnormalized => {
                for (k, o) in out.iter_mut().enumerate() {
                    *o = self.scale[k] * x[k];
                }
                for (&(i, j), &w) in g.edges().iter().zip(g.weights()) {
                    out[i - 1] -= w * x[j - 1];
                    out[j - 1] -= w * x[i - 1];
                }
            }
            LaplacianMode::SymmetricNormalized => {
                out.copy_from_slice(x);
                for (&(i, j), &w) in g.edges().iter().zip(g.weights()) {
                    let a = w * self.scale[i - 1] * self.scale[j - 1];
                    out[i - 1] -= a * x[j - 1];
                    out[j - 1] -= a * x[i - 1];
                }
            }
        }
    }

    /// Unit vector spanning the null space on a connected graph.
    fn null_vector(&self) -> Vec<f64> {
        let n = self.graph.node_count();
        let v: Vec<f64> = match self.mode {
            LaplacianMode::Unnormalized => vec![1.0; n],
            LaplacianMode::SymmetricNormalized => self.scale.iter().map(|s| 1.0 / s).collect(),
        };
        let norm = l2(&v);
        v.into_iter().map(|a| a / norm).collect()
    }

    /// Upper bound on the largest eigenvalue.
    fn spectral_bound(&self) -> f64 {
        match self.mode {
            LaplacianMode::Unnormalized => 2.0 * self.scale.iter().cloned().fold(0.0, f64::max),
            LaplacianMode::SymmetricNormalized => 2.0,
        }
    }
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn deflate(v: &mut [f64], u: &[f64]) {
    let c = dot(v, u);
    for (a, b) in v.iter_mut().zip(u) {
        *a -= c * b;
    }
}

const FIEDLER_START_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub struct Fiedler {
    /// Scaled to `‖v‖_∞ = 1`, with the first non-zero entry positive.
    pub vector: NodeSignal,
    pub eigenvalue: f64,
    pub iterations: usize,
}

/// Eigenvector of the smallest non-zero Laplacian eigenvalue.
///
/// Power iteration on `cI − L`, with `c` a bound on the spectrum, restricted to
/// the complement of the null vector. The start vector is drawn uniformly from
/// `[−1, 1]ⁿ` with a fixed generator seed, so results are reproducible.
/// Stops when `‖Lv − μv‖₂ ≤ tol·‖v‖₂`.
pub fn fiedler_vector(g: &Graph, mode: LaplacianMode, tol: f64, max_iters: usize) -> Result<Fiedler> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidParameter("Fiedler vector needs at least two nodes".into()));
    }
    if tol.is_nan() || tol <= 0.0 || max_iters == 0 {
        return Err(Error::InvalidParameter("tol and max_iters must be positive".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lap = laplacian(g, mode)?;
    let u = lap.null_vector();
    let shift = lap.spectral_bound();

    let mut rng = ChaCha8Rng::seed_from_u64(FIEDLER_START_SEED);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    deflate(&mut v, &u);
    let norm = l2(&v);
    v.iter_mut().for_each(|a| *a /= norm);

    let mut lv = vec![0.0; n];
    for it in 0..max_iters {
        lap.apply_into(&v, &mut lv);
        let mu = dot(&v, &lv);
        let res = lv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - mu * b) * (a - mu * b))
            .sum::<f64>()
            .sqrt();
        if res <= tol {
            return Ok(Fiedler {
                vector: normalise_sign_and_scale(v),
                eigenvalue: mu,
                iterations: it,
            });
        }
        for (a, b) in v.iter_mut().zip(&lv) {
            *a = shift * *a - b;
        }
        deflate(&mut v, &u);
        let norm = l2(&v);
        v.iter_mut().for_each(|a| *a /= norm);
    }
    Err(Error::NoConvergence(max_iters))
}

fn normalise_sign_and_scale(mut v: Vec<f64>) -> NodeSignal {
    let inf = v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let sign = match v.iter().find(|a| **a != 0.0) {
        Some(&a) if a < 0.0 => -1.0,
        _ => 1.0,
    };
    v.iter_mut().for_each(|a| *a *= sign / inf);
    NodeSignal(v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorError {
    pub l2: f64,
    pub linf: f64,
}

/// Distance between `x` and the indicator of `c`, over all nodes.
pub fn indicator_error(x: &NodeSignal, c: &NodeSet) -> Result<IndicatorError> {
    indicator_error_over(x, c, &NodeSet::range(1, x.len()))
}

/// Distance between `x` and the indicator of `c`, restricted to the nodes in `over`.
pub fn indicator_error_over(x: &NodeSignal, c: &NodeSet, over: &NodeSet) -> Result<IndicatorError> {
    for set in [c, over] {
        if let Some(&last) = set.ids().last() {
            if last > x.len() {
                return Err(Error::DimensionMismatch {
                    expected: last,
                    got: x.len(),
                });
            }
        }
    }
    let mut sq = 0.0;
    let mut linf = 0.0f64;
    for &i in over.ids() {
        let target = if c.contains(i) { 1.0 } else { 0.0 };
        let d = (x.get(i) - target).abs();
        sq += d * d;
        linf = linf.max(d);
    }
    Ok(IndicatorError { l2: sq.sqrt(), linf })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1, 1.0)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn two_node_laplacian() {
        let g = path(2);
        let l = laplacian(&g, LaplacianMode::Unnormalized).unwrap();
        assert_eq!(l.apply(&NodeSignal(vec![1.0, -1.0])).unwrap().0, vec![2.0, -2.0]);
        let ln = laplacian(&g, LaplacianMode::SymmetricNormalized).unwrap();
        assert_eq!(ln.apply(&NodeSignal(vec![1.0, -1.0])).unwrap().0, vec![2.0, -2.0]);
    }

    #[test]
    fn constants_in_null_space() {
        let g = Graph::new(4, &[(1, 2, 0.5), (2, 3, 2.0), (1, 3, 1.5), (3, 4, 1.0)]).unwrap();
        let l = laplacian(&g, LaplacianMode::Unnormalized).unwrap();
        let out = l.apply(&NodeSignal::constant(4, 3.0)).unwrap();
        assert!(out.0.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn normalized_rejects_isolated() {
        let g = Graph::new(3, &[(1, 2, 1.0)]).unwrap();
        assert_eq!(
            laplacian(&g, LaplacianMode::SymmetricNormalized).err(),
            Some(Error::IsolatedNode(3))
        );
        assert!(laplacian(&g, LaplacianMode::Unnormalized).is_ok());
    }

    #[test]
    fn fiedler_rejects_bad_input() {
        let g = Graph::new(3, &[(1, 2, 1.0)]).unwrap();
        assert_eq!(
            fiedler_vector(&g, LaplacianMode::Unnormalized, 1e-8, 1000),
            Err(Error::Disconnected)
        );
        assert_eq!(
            fiedler_vector(&path(30), LaplacianMode::Unnormalized, 1e-12, 3),
            Err(Error::NoConvergence(3))
        );
        assert!(fiedler_vector(&Graph::new(1, &[]).unwrap(), LaplacianMode::Unnormalized, 1e-8, 10).is_err());
    }

    #[test]
    fn complete_graph_k3() {
        let g = Graph::new(3, &[(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap();
        let f = fiedler_vector(&g, LaplacianMode::Unnormalized, 1e-12, 10_000).unwrap();
        assert!((f.eigenvalue - 3.0).abs() < 1e-10);
        assert!((f.vector.0.iter().sum::<f64>()).abs() < 1e-10);
    }

    #[test]
    fn scaling_convention() {
        let f = fiedler_vector(&path(9), LaplacianMode::SymmetricNormalized, 1e-10, 100_000).unwrap();
        let inf = f.vector.0.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        assert!((inf - 1.0).abs() < 1e-15);
        assert!(f.vector.get(1) > 0.0);
    }

    #[test]
    fn indicator_error_examples() {
        let c = NodeSet::range(1, 4);
        let mut x = NodeSignal::zeros(10);
        for i in 1..=4 {
            x.0[i - 1] = 1.0;
        }
        assert_eq!(indicator_error(&x, &c).unwrap(), IndicatorError { l2: 0.0, linf: 0.0 });
        let e = indicator_error(&NodeSignal::zeros(10), &c).unwrap();
        assert_eq!(e.l2, 2.0);
        assert_eq!(e.linf, 1.0);
        assert!(indicator_error(&NodeSignal::zeros(3), &c).is_err());
        let e = indicator_error_over(&NodeSignal::zeros(10), &c, &NodeSet::range(4, 10)).unwrap();
        assert_eq!(e.l2, 1.0);
    }
}
