//! Cluster extraction and optimality certificates.
//!
//! A pair `(x, y)` is optimal for the nLasso problem and its flow dual iff
//!
//! * `−div(y)_i = x_i − 1` at seeds and `−div(y)_i = α x_i` elsewhere,
//! * `|y_e| ≤ λ W_e` on every edge,
//! * `x_i = x_j` across every edge whose flow is strictly below capacity.
//!
//! [`kkt_residuals`] measures how far an iterate is from satisfying these.
//! [`prop1_check`] and [`u_bound_check`] evaluate the necessary conditions
//! that any delivered cluster must meet.

use crate::error::{Error, Result};
use crate::graph::NodeSet;
use crate::objectives::NLassoProblem;
use crate::signal::{EdgeFlow, NodeSignal};

pub const DEFAULT_THRESHOLD: f64 = 0.5;
pub const DEFAULT_EPS_SAT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    pub cluster: NodeSet,
    pub threshold: f64,
    pub contains_seeds: bool,
}

/// `{i : x_i > threshold}`. The inequality is strict.
pub fn threshold_set(x: &NodeSignal, threshold: f64) -> NodeSet {
    let ids: Vec<usize> = x
        .0
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > threshold)
        .map(|(k, _)| k + 1)
        .collect();
    NodeSet::new(ids, x.len()).expect("ids come from the signal's own range")
}

pub fn extract_cluster(x: &NodeSignal, threshold: f64, seeds: &NodeSet) -> ClusterResult {
    let cluster = threshold_set(x, threshold);
    let contains_seeds = seeds.is_subset(&cluster);
    ClusterResult {
        cluster,
        threshold,
        contains_seeds,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KKTReport {
    pub seed_demand_residual: f64,
    pub nonseed_demand_residual: f64,
    pub capacity_ok: bool,
    pub nonsaturated_jump: f64,
    pub eps_sat: f64,
}

impl KKTReport {
    /// Largest of the two demand residuals and the non-saturated jump.
    pub fn max_residual(&self) -> f64 {
        self.seed_demand_residual
            .max(self.nonseed_demand_residual)
            .max(self.nonsaturated_jump)
    }

    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("kkt.seed_demand_residual", self.seed_demand_residual.to_string()),
            ("kkt.nonseed_demand_residual", self.nonseed_demand_residual.to_string()),
            ("kkt.capacity_ok", self.capacity_ok.to_string()),
            ("kkt.nonsaturated_jump", self.nonsaturated_jump.to_string()),
            ("kkt.eps_sat", self.eps_sat.to_string()),
        ]
    }
}

/// Residuals of the optimality conditions at `(x, y)`.
///
/// An edge counts as non-saturated when `|y_e| < λ W_e (1 − eps_sat)`.
pub fn kkt_residuals(p: &NLassoProblem<'_>, x: &NodeSignal, y: &EdgeFlow, eps_sat: f64) -> Result<KKTReport> {
    let g = p.graph();
    g.check_signal(x)?;
    let div = g.divergence(y)?;
    let mut seed_res = 0.0f64;
    let mut nonseed_res = 0.0f64;
    for k in 0..g.node_count() {
        let lhs = -div.0[k];
        if p.seed_mask()[k] {
            seed_res = seed_res.max((lhs - (x.0[k] - 1.0)).abs());
        } else {
            nonseed_res = nonseed_res.max((lhs - p.alpha() * x.0[k]).abs());
        }
    }
    let mut capacity_ok = true;
    let mut jump = 0.0f64;
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        let cap = p.capacity(e);
        let flow = y.values[e].abs();
        if flow > cap {
            capacity_ok = false;
        }
        if flow < cap * (1.0 - eps_sat) {
            jump = jump.max((x.0[i - 1] - x.0[j - 1]).abs());
        }
    }
    Ok(KKTReport {
        seed_demand_residual: seed_res,
        nonseed_demand_residual: nonseed_res,
        capacity_ok,
        nonsaturated_jump: jump,
        eps_sat,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop1Report {
    pub boundary_weight: f64,
    pub lhs: f64,
    pub rhs_injecting: f64,
    pub rhs_absorbing: f64,
    pub holds_20: bool,
    pub holds_21: bool,
}

impl Prop1Report {
    /// `rhs_injecting − lhs`; non-negative iff the injecting condition holds.
    pub fn slack_injecting(&self) -> f64 {
        self.rhs_injecting - self.lhs
    }

    /// `rhs_absorbing − lhs`; non-negative iff the absorbing condition holds.
    pub fn slack_absorbing(&self) -> f64 {
        self.rhs_absorbing - self.lhs
    }

    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("prop1.boundary_weight", self.boundary_weight.to_string()),
            ("prop1.lhs", self.lhs.to_string()),
            ("prop1.rhs_injecting", self.rhs_injecting.to_string()),
            ("prop1.rhs_absorbing", self.rhs_absorbing.to_string()),
            ("prop1.holds_20", self.holds_20.to_string()),
            ("prop1.holds_21", self.holds_21.to_string()),
        ]
    }
}

/// Boundary conditions on a cluster that contains all seeds:
///
/// ```text
/// λ Σ_{e∈∂C} W_e ≤ 1 − (α/2) Σ_{i∈C∖S} x_i     (injecting)
/// λ Σ_{e∈∂C} W_e ≤ α Σ_{i∉C} x_i                 (absorbing)
/// ```
///
/// Sums are taken over the supplied signal, normally the one the cluster was
/// extracted from.
pub fn prop1_check(p: &NLassoProblem<'_>, c: &ClusterResult, x: &NodeSignal) -> Result<Prop1Report> {
    let g = p.graph();
    g.check_signal(x)?;
    if let Some(&s) = p.seeds().ids().iter().find(|&&s| !c.cluster.contains(s)) {
        return Err(Error::SeedsOutsideCluster(s));
    }
    let boundary_weight = g.boundary_weight(&c.cluster)?;
    let lhs = p.lambda() * boundary_weight;
    let in_mask = c.cluster.mask(g.node_count());
    let mut inside_nonseed = 0.0;
    let mut outside = 0.0;
    for k in 0..g.node_count() {
        if in_mask[k] {
            if !p.seed_mask()[k] {
                inside_nonseed += x.0[k];
            }
        } else {
            outside += x.0[k];
        }
    }
    let rhs_injecting = 1.0 - 0.5 * p.alpha() * inside_nonseed;
    let rhs_absorbing = p.alpha() * outside;
    Ok(Prop1Report {
        boundary_weight,
        lhs,
        rhs_injecting,
        rhs_absorbing,
        holds_20: lhs <= rhs_injecting,
        holds_21: lhs <= rhs_absorbing,
    })
}

/// `λ Σ_{e∈∂C} W_e ≤ U α / 2`, where `U` bounds the number of nodes outside
/// the cluster reached by the iteration.
pub fn u_bound_check(p: &NLassoProblem<'_>, c: &ClusterResult, u: usize) -> bool {
    let g = p.graph();
    let mask = c.cluster.mask(g.node_count());
    let boundary_weight: f64 = g
        .edges()
        .iter()
        .zip(g.weights())
        .filter(|(&(i, j), _)| mask[i - 1] != mask[j - 1])
        .map(|(_, w)| w)
        .sum();
    p.lambda() * boundary_weight <= u as f64 * p.alpha() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn paper_chain() -> Graph {
        let edges: Vec<_> = (1..100)
            .map(|i| (i, i + 1, if i == 4 { 1.0 } else { 5.0 / 4.0 }))
            .collect();
        Graph::new(100, &edges).unwrap()
    }

    #[test]
    fn extraction_is_strict() {
        let s = NodeSet::new([1], 3).unwrap();
        let c = extract_cluster(&NodeSignal::zeros(3), 0.5, &s);
        assert!(c.cluster.is_empty());
        assert!(!c.contains_seeds);
        let c = extract_cluster(&NodeSignal(vec![0.9, 0.5, 0.51]), 0.5, &s);
        assert_eq!(c.cluster.ids(), &[1, 3]);
        assert!(c.contains_seeds);
    }

    #[test]
    fn kkt_at_zero() {
        let g = Graph::new(3, &[(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 3).unwrap(), 0.1, 0.5).unwrap();
        let r = kkt_residuals(&p, &NodeSignal::zeros(3), &EdgeFlow::zeros(2), DEFAULT_EPS_SAT).unwrap();
        assert_eq!(r.seed_demand_residual, 1.0);
        assert_eq!(r.nonseed_demand_residual, 0.0);
        assert!(r.capacity_ok);
        assert_eq!(r.nonsaturated_jump, 0.0);
        let r = kkt_residuals(&p, &NodeSignal::zeros(3), &EdgeFlow::base(vec![0.0, 0.6]), 1e-6).unwrap();
        assert!(!r.capacity_ok);
    }

    #[test]
    fn kkt_jump_ignores_saturated_edges() {
        let g = Graph::new(2, &[(1, 2, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 2).unwrap(), 0.1, 0.2).unwrap();
        // Saturated optimum: x1 = 1 − λW, x2 = λW/α.
        let x = NodeSignal(vec![0.8, 2.0]);
        let r = kkt_residuals(&p, &x, &EdgeFlow::base(vec![0.2]), 1e-6).unwrap();
        assert_eq!(r.nonsaturated_jump, 0.0);
        let r = kkt_residuals(&p, &x, &EdgeFlow::base(vec![0.1]), 1e-6).unwrap();
        assert!((r.nonsaturated_jump - 1.2).abs() < 1e-15);
    }

    #[test]
    fn prop1_on_indicator() {
        let g = paper_chain();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 100).unwrap(), 1.0 / 200.0, 0.2).unwrap();
        let mut x = NodeSignal::zeros(100);
        for i in 1..=4 {
            x.0[i - 1] = 1.0;
        }
        let c = extract_cluster(&x, 0.5, p.seeds());
        let r = prop1_check(&p, &c, &x).unwrap();
        assert_eq!(r.boundary_weight, 1.0);
        assert_eq!(r.lhs, 0.2);
        assert!((r.rhs_injecting - (1.0 - 0.0025 * 3.0)).abs() < 1e-15);
        assert!(r.holds_20);
        // Σ_{i∉C} x_i = 0 with a nonempty boundary
        assert_eq!(r.rhs_absorbing, 0.0);
        assert!(!r.holds_21);
    }

    #[test]
    fn prop1_requires_seeds_inside() {
        let g = paper_chain();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 100).unwrap(), 0.005, 0.2).unwrap();
        let x = NodeSignal::zeros(100);
        let c = extract_cluster(&x, 0.5, p.seeds());
        assert_eq!(prop1_check(&p, &c, &x), Err(Error::SeedsOutsideCluster(1)));
    }

    #[test]
    fn prop1_empty_boundary() {
        let g = Graph::new(3, &[(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 3).unwrap(), 0.1, 5.0).unwrap();
        let x = NodeSignal(vec![0.9, 0.9, 0.9]);
        let c = extract_cluster(&x, 0.5, p.seeds());
        let r = prop1_check(&p, &c, &x).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.holds_20 && r.holds_21);
        assert!(u_bound_check(&p, &c, 1));
    }

    #[test]
    fn u_bound_on_chain() {
        let g = paper_chain();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 100).unwrap(), 1.0 / 200.0, 2.0 / 10.0).unwrap();
        let c = ClusterResult {
            cluster: NodeSet::range(1, 4),
            threshold: 0.5,
            contains_seeds: true,
        };
        // 0.2 ≤ 80 · 0.005 / 2 = 0.2 holds with equality; 79 gives 0.1975.
        assert!(u_bound_check(&p, &c, 80));
        assert!(!u_bound_check(&p, &c, 79));
    }
}
