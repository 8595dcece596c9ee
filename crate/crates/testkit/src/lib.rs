//! Reference solvers that share no code path with the primal-dual iteration,
//! plus random instance generators for property tests.
//!
//! * [`dual_coordinate_descent`] minimises the flow dual `f*(−Bᵀy)` over the
//!   capacity box by exact coordinate minimisation and recovers `x = ∇f*(−Bᵀy)`.
//! * [`subgradient_descent`] minimises the primal directly with diminishing
//!   steps and suffix averaging.
//! * [`dense_laplacian_spectrum`] builds the Laplacian densely and calls a
//!   symmetric eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nlasso::{EdgeFlow, Graph, NLassoProblem, NodeSet, NodeSignal};

/// Optimal pair from exact cyclic coordinate descent on the box-constrained dual.
pub fn dual_coordinate_descent(p: &NLassoProblem<'_>, max_sweeps: usize) -> (NodeSignal, EdgeFlow) {
    let g = p.graph();
    let n = g.node_count();
    let alpha = p.alpha();
    let seed: Vec<bool> = (1..=n).map(|i| p.is_seed(i)).collect();
    // curvature of f*_i and its derivative at z
    let curv = |k: usize| if seed[k] { 1.0 } else { 1.0 / alpha };
    let grad = |k: usize, z: f64| if seed[k] { z + 1.0 } else { z / alpha };

    let mut y = vec![0.0; g.edge_count()];
    // z = −Bᵀy, maintained incrementally
    let mut z = vec![0.0; n];
    for _ in 0..max_sweeps {
        let mut change = 0.0f64;
        for (e, &(i, j)) in g.edges().iter().enumerate() {
            let (a, b) = (i - 1, j - 1);
            // d z_a / d y_e = −1, d z_b / d y_e = +1
            let ge = -grad(a, z[a]) + grad(b, z[b]);
            let h = curv(a) + curv(b);
            let cap = p.capacity(e);
            let target = (y[e] - ge / h).clamp(-cap, cap);
            let d = target - y[e];
            if d != 0.0 {
                y[e] = target;
                z[a] -= d;
                z[b] += d;
                change = change.max(d.abs());
            }
        }
        if change < 1e-16 {
            break;
        }
    }
    // recompute z from scratch to drop accumulated drift
    let div = g.divergence(&EdgeFlow::base(y.clone())).unwrap();
    let x = (0..n).map(|k| grad(k, -div.0[k])).collect();
    (NodeSignal(x), EdgeFlow::base(y))
}

/// Primal subgradient descent in the metric of the quadratic term.
///
/// Each coordinate's subgradient is divided by its curvature (1 at seeds, `α`
/// elsewhere), steps are `1/(k+1)`, and the result is the mean of the second
/// half of the iterates.
pub fn subgradient_descent(p: &NLassoProblem<'_>, steps: usize) -> NodeSignal {
    let g = p.graph();
    let n = g.node_count();
    let alpha = p.alpha();
    let curv: Vec<f64> = (1..=n).map(|i| if p.is_seed(i) { 1.0 } else { alpha }).collect();
    let mut x = vec![0.0; n];
    let mut avg = vec![0.0; n];
    let mut count = 0usize;
    let mut sub = vec![0.0; n];
    for k in 0..steps {
        for (i, s) in sub.iter_mut().enumerate() {
            *s = curv[i] * x[i] - if p.is_seed(i + 1) { 1.0 } else { 0.0 };
        }
        for (e, &(i, j)) in g.edges().iter().enumerate() {
            let d = x[i - 1] - x[j - 1];
            let s = if d > 0.0 {
                1.0
            } else if d < 0.0 {
                -1.0
            } else {
                0.0
            };
            let c = p.lambda() * g.weight(e) * s;
            sub[i - 1] += c;
            sub[j - 1] -= c;
        }
        let t = 1.0 / (k as f64 + 1.0);
        for ((xi, s), c) in x.iter_mut().zip(&sub).zip(&curv) {
            *xi -= t * s / c;
        }
        if k >= steps / 2 {
            count += 1;
            for (a, xi) in avg.iter_mut().zip(&x) {
                *a += (xi - *a) / count as f64;
            }
        }
    }
    NodeSignal(avg)
}

/// Sorted eigenvalues and eigenvectors (as columns) of the dense unnormalized
/// (`normalized = false`) or symmetric-normalized Laplacian.
pub fn dense_laplacian_spectrum(g: &Graph, normalized: bool) -> (Vec<f64>, DMatrix<f64>) {
    let n = g.node_count();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for (&(i, j), &w) in g.edges().iter().zip(g.weights()) {
        let (a, b) = (i - 1, j - 1);
        l[(a, b)] -= w;
        l[(b, a)] -= w;
        l[(a, a)] += w;
        l[(b, b)] += w;
    }
    if normalized {
        let d: Vec<f64> = (0..n).map(|k| l[(k, k)]).collect();
        for a in 0..n {
            for b in 0..n {
                l[(a, b)] /= (d[a] * d[b]).sqrt();
            }
        }
    }
    let eig = SymmetricEigen::new(l);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Connected graph on `n` nodes: a random spanning tree plus each remaining
/// pair with probability `extra_p`, weights uniform in `[w_lo, w_hi]`.
pub fn random_connected_graph(n: usize, extra_p: f64, w_lo: f64, w_hi: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut present = std::collections::HashSet::new();
    for j in 2..=n {
        let i = rng.gen_range(1..j);
        edges.push((i, j, rng.gen_range(w_lo..=w_hi)));
        present.insert((i, j));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if !present.contains(&(i, j)) && rng.gen::<f64>() < extra_p {
                edges.push((i, j, rng.gen_range(w_lo..=w_hi)));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// A random small instance as used by the oracle-equivalence checks:
/// 2–6 nodes, weights in `[0.5, 2]`, one seed, `α ∈ {0.01, 0.1, 1}`, `λ ∈ {0.05, 0.5}`.
pub struct TinyInstance {
    pub graph: Graph,
    pub seed_node: usize,
    pub alpha: f64,
    pub lambda: f64,
}

impl TinyInstance {
    pub fn sample(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_ba5e);
        let n = rng.gen_range(2..=6);
        let graph = random_connected_graph(n, 0.4, 0.5, 2.0, rng.gen());
        TinyInstance {
            seed_node: rng.gen_range(1..=n),
            alpha: [0.01, 0.1, 1.0][rng.gen_range(0..3)],
            lambda: [0.05, 0.5][rng.gen_range(0..2)],
            graph,
        }
    }

    pub fn problem(&self) -> NLassoProblem<'_> {
        let n = self.graph.node_count();
        NLassoProblem::new(&self.graph, NodeSet::new([self.seed_node], n).unwrap(), self.alpha, self.lambda).unwrap()
    }
}

pub fn max_abs_diff(a: &NodeSignal, b: &NodeSignal) -> f64 {
    a.0.iter().zip(&b.0).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
