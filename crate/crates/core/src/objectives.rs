//! Scalar functionals of the nLasso problem and its flow dual.
//!
//! The primal is `f(x) + g(Bx)` with
//! `f(x) = Σ_{i∈S} (x_i − 1)²/2 + Σ_{i∉S} α x_i²/2` and `g(u) = λ Σ_e W_e |u_e|`.
//! Its dual (max form) is `−g*(y) − f*(−Bᵀy)`, where `g*` is the indicator of
//! the capacity box `|y_e| ≤ λ W_e`.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::signal::{EdgeFlow, NodeSignal};

/// One nLasso instance: a graph, a batch of seed nodes, and the two weights.
#[derive(Debug, Clone)]
pub struct NLassoProblem<'g> {
    graph: &'g Graph,
    seeds: NodeSet,
    seed_mask: Vec<bool>,
    alpha: f64,
    lambda: f64,
}

impl<'g> NLassoProblem<'g> {
    pub fn new(graph: &'g Graph, seeds: NodeSet, alpha: f64, lambda: f64) -> Result<Self> {
        if seeds.is_empty() {
            return Err(Error::InvalidParameter("seed set is empty".into()));
        }
        seeds.check_range(graph.node_count())?;
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        let seed_mask = seeds.mask(graph.node_count());
        Ok(NLassoProblem {
            graph,
            seeds,
            seed_mask,
            alpha,
            lambda,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn seeds(&self) -> &NodeSet {
        &self.seeds
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Seed membership, indexed by `id - 1`.
    pub fn seed_mask(&self) -> &[bool] {
        &self.seed_mask
    }

    pub fn is_seed(&self, i: usize) -> bool {
        self.seed_mask[i - 1]
    }

    /// Capacity `λ W_e` of base edge `e`.
    pub fn capacity(&self, e: usize) -> f64 {
        self.lambda * self.graph.weight(e)
    }
}

pub fn total_variation(g: &Graph, x: &NodeSignal) -> Result<f64> {
    g.check_signal(x)?;
    Ok(g.edges()
        .iter()
        .zip(g.weights())
        .map(|(&(i, j), w)| w * (x.0[i - 1] - x.0[j - 1]).abs())
        .sum())
}

pub fn laplacian_quadratic(g: &Graph, x: &NodeSignal) -> Result<f64> {
    g.check_signal(x)?;
    Ok(g.edges()
        .iter()
        .zip(g.weights())
        .map(|(&(i, j), w)| {
            let d = x.0[i - 1] - x.0[j - 1];
            w * d * d
        })
        .sum())
}

/// The smooth part `f(x)`.
pub fn fidelity(p: &NLassoProblem<'_>, x: &NodeSignal) -> Result<f64> {
    p.graph.check_signal(x)?;
    Ok(x.0
        .iter()
        .zip(&p.seed_mask)
        .map(|(&v, &seed)| {
            if seed {
                0.5 * (v - 1.0) * (v - 1.0)
            } else {
                0.5 * p.alpha * v * v
            }
        })
        .sum())
}

pub fn primal_objective(p: &NLassoProblem<'_>, x: &NodeSignal) -> Result<f64> {
    Ok(fidelity(p, x)? + p.lambda * total_variation(p.graph, x)?)
}

/// Minimum-cost-flow objective over the star edges of an augmented flow:
/// `Σ_{i∈S} (y_(i,⋆) − 1)² + (1/α) Σ_{i∉S} y_(i,⋆)²`.
///
/// At optimality this equals `|S| − 2·P*`, where `P*` is the optimal primal value.
pub fn dual_objective(p: &NLassoProblem<'_>, y: &EdgeFlow) -> Result<f64> {
    let star = star_part(p, y)?;
    Ok(star
        .iter()
        .zip(&p.seed_mask)
        .map(|(&v, &seed)| {
            if seed {
                (v - 1.0) * (v - 1.0)
            } else {
                v * v / p.alpha
            }
        })
        .sum())
}

fn star_part<'a>(p: &NLassoProblem<'_>, y: &'a EdgeFlow) -> Result<&'a [f64]> {
    if !y.augmented {
        return Err(Error::NotAugmented);
    }
    let m = p.graph.edge_count();
    let n = p.graph.node_count();
    if y.len() != m + n {
        return Err(Error::DimensionMismatch {
            expected: m + n,
            got: y.len(),
        });
    }
    Ok(&y.values[m..])
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualFeasibility {
    /// Net outflow at nodes `1..=n` and then at the star node.
    pub conservation_residual: Vec<f64>,
    /// `max(0, |y_e| − λW_e)` per base edge.
    pub capacity_violation: Vec<f64>,
    pub feasible: bool,
}

pub fn dual_feasibility(p: &NLassoProblem<'_>, y: &EdgeFlow, tol: f64) -> Result<DualFeasibility> {
    star_part(p, y)?;
    let conservation_residual = p.graph.augment().conservation_residual(y)?;
    let capacity_violation: Vec<f64> = (0..p.graph.edge_count())
        .map(|e| (y.values[e].abs() - p.capacity(e)).max(0.0))
        .collect();
    let feasible = conservation_residual.iter().all(|r| r.abs() <= tol)
        && capacity_violation.iter().all(|&v| v <= tol);
    Ok(DualFeasibility {
        conservation_residual,
        capacity_violation,
        feasible,
    })
}

/// `f*(z) = Σ_{i∈S} (z_i²/2 + z_i) + Σ_{i∉S} z_i²/(2α)`.
pub fn conjugate_f(p: &NLassoProblem<'_>, z: &NodeSignal) -> Result<f64> {
    p.graph.check_signal(z)?;
    Ok(z.0
        .iter()
        .zip(&p.seed_mask)
        .map(|(&v, &seed)| {
            if seed {
                0.5 * v * v + v
            } else {
                v * v / (2.0 * p.alpha)
            }
        })
        .sum())
}

/// Whether `g*(y)` is finite, i.e. `|y_e| ≤ λ W_e` on every base edge.
pub fn conjugate_g_feasible(p: &NLassoProblem<'_>, y: &EdgeFlow) -> Result<bool> {
    p.graph.check_base_flow(y)?;
    Ok(y.values
        .iter()
        .enumerate()
        .all(|(e, v)| v.abs() <= p.capacity(e)))
}

/// Dual value `−f*(−Bᵀy)` of a capacity-feasible base flow.
pub fn dual_value(p: &NLassoProblem<'_>, y: &EdgeFlow) -> Result<f64> {
    if !conjugate_g_feasible(p, y)? {
        return Err(Error::DualInfeasible);
    }
    let neg_div = p.graph.divergence(y)?.scaled(-1.0);
    Ok(-conjugate_f(p, &neg_div)?)
}

/// `P(x) − D(y)`; non-negative by weak duality, zero at an optimal pair.
pub fn duality_gap(p: &NLassoProblem<'_>, x: &NodeSignal, y: &EdgeFlow) -> Result<f64> {
    let dual = dual_value(p, y)?;
    Ok(primal_objective(p, x)? - dual)
}
