//! Primal-dual message passing for the nLasso problem.
//!
//! One iteration, with `γ_i = 1 / d_i`:
//!
//! ```text
//! x̃_i  = 2 x_i − x_i^prev
//! y_e  ← y_e + (x̃_i − x̃_j) / 2                 e = (i, j)
//! y_e  ← y_e / max(1, |y_e| / (λ W_e))
//! x_i  ← x_i − γ_i (Σ_{j∈N+} y_(i,j) − Σ_{j∈N−} y_(j,i))
//! x_i  ← (γ_i + x_i) / (γ_i + 1)                 i ∈ S
//! x_i  ← x_i / (α γ_i + 1)                       i ∉ S
//! ```
//!
//! The first three lines are one pass over the edges, the rest one pass over
//! the nodes. Within a pass every element is independent, and per-node sums
//! run in a fixed neighbour order, so results are bitwise identical for any
//! number of worker threads.

use crate::certificates::kkt_residuals;
use crate::error::{Error, Result};
use crate::objectives::{duality_gap, primal_objective, NLassoProblem};
use crate::signal::{EdgeFlow, NodeSignal};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Saturation margin used for the KKT residual recorded in the history.
pub const HISTORY_EPS_SAT: f64 = 1e-6;

#[cfg(feature = "parallel")]
const PAR_MIN_LEN: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    max_iters: usize,
    gap_check_interval: usize,
    gap_tolerance: f64,
    record_interval: usize,
}

impl SolverConfig {
    /// Fixed iteration count, no early stop, no history.
    pub fn new(max_iters: usize) -> Result<Self> {
        if max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        Ok(SolverConfig {
            max_iters,
            gap_check_interval: 0,
            gap_tolerance: 0.0,
            record_interval: 0,
        })
    }

    /// Stop once the duality gap, checked every `interval` iterations, is at most `tol`.
    pub fn with_gap_stop(mut self, interval: usize, tol: f64) -> Result<Self> {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("gap tolerance {tol}")));
        }
        self.gap_check_interval = interval;
        self.gap_tolerance = tol;
        Ok(self)
    }

    /// Record a history entry every `interval` iterations (0 disables).
    pub fn with_history(mut self, interval: usize) -> Self {
        self.record_interval = interval;
        self
    }

    pub fn max_iters(&self) -> usize {
        self.max_iters
    }

    pub fn gap_check_interval(&self) -> usize {
        self.gap_check_interval
    }

    pub fn gap_tolerance(&self) -> f64 {
        self.gap_tolerance
    }

    pub fn record_interval(&self) -> usize {
        self.record_interval
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub x_curr: NodeSignal,
    pub x_prev: NodeSignal,
    pub y: EdgeFlow,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistoryRecord {
    pub r: usize,
    pub primal: f64,
    pub gap: f64,
    pub kkt_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub x: NodeSignal,
    pub y: EdgeFlow,
    pub iters_run: usize,
    pub history: Vec<HistoryRecord>,
}

/// Zero primal and dual iterates. Fails if some node has no neighbours,
/// since its step size `1 / d_i` is undefined.
pub fn init_state(p: &NLassoProblem<'_>) -> Result<SolverState> {
    let g = p.graph();
    if let Some(i) = g.first_isolated() {
        return Err(Error::IsolatedNode(i));
    }
    Ok(SolverState {
        x_curr: NodeSignal::zeros(g.node_count()),
        x_prev: NodeSignal::zeros(g.node_count()),
        y: EdgeFlow::zeros(g.edge_count()),
        r: 0,
    })
}

/// Precomputed per-problem constants for the update passes.
struct Stepper<'a, 'g> {
    p: &'a NLassoProblem<'g>,
    gamma: Vec<f64>,
    capacity: Vec<f64>,
}

impl<'a, 'g> Stepper<'a, 'g> {
    fn new(p: &'a NLassoProblem<'g>) -> Result<Self> {
        let g = p.graph();
        if let Some(i) = g.first_isolated() {
            return Err(Error::IsolatedNode(i));
        }
        let gamma = (1..=g.node_count()).map(|i| 1.0 / g.degree(i) as f64).collect();
        let capacity = (0..g.edge_count()).map(|e| p.capacity(e)).collect();
        Ok(Stepper { p, gamma, capacity })
    }

    fn check(&self, s: &SolverState) -> Result<()> {
        let g = self.p.graph();
        for (got, expected) in [
            (s.x_curr.len(), g.node_count()),
            (s.x_prev.len(), g.node_count()),
            (s.y.len(), g.edge_count()),
        ] {
            if got != expected {
                return Err(Error::DimensionMismatch { expected, got });
            }
        }
        Ok(())
    }

    /// Advances `s` by one iteration in place.
    fn advance(&self, s: &mut SolverState) {
        let g = self.p.graph();
        let edges = g.edges();
        let x = &s.x_curr.0;
        let xp = &s.x_prev.0;
        let cap = &self.capacity;

        let edge_update = |(e, ye): (usize, &mut f64)| {
            let (i, j) = edges[e];
            let xt_i = 2.0 * x[i - 1] - xp[i - 1];
            let xt_j = 2.0 * x[j - 1] - xp[j - 1];
            let v = *ye + 0.5 * (xt_i - xt_j);
            // v / max(1, |v| / cap), written so the result never exceeds cap by rounding
            *ye = if v.abs() > cap[e] { cap[e].copysign(v) } else { v };
        };
        #[cfg(feature = "parallel")]
        {
            s.y.values
                .par_iter_mut()
                .with_min_len(PAR_MIN_LEN)
                .enumerate()
                .for_each(edge_update);
        }
        #[cfg(not(feature = "parallel"))]
        {
            s.y.values.iter_mut().enumerate().for_each(edge_update);
        }

        // The previous iterate is no longer needed; its buffer receives the new one.
        let y = &s.y.values;
        let seed = self.p.seed_mask();
        let gamma = &self.gamma;
        let alpha = self.p.alpha();
        let node_update = |(k, out): (usize, &mut f64)| {
            let gm = gamma[k];
            let v = x[k] - gm * g.divergence_at(k + 1, y);
            *out = if seed[k] {
                (gm + v) / (gm + 1.0)
            } else {
                v / (alpha * gm + 1.0)
            };
        };
        #[cfg(feature = "parallel")]
        {
            s.x_prev
                .0
                .par_iter_mut()
                .with_min_len(PAR_MIN_LEN)
                .enumerate()
                .for_each(node_update);
        }
        #[cfg(not(feature = "parallel"))]
        {
            s.x_prev.0.iter_mut().enumerate().for_each(node_update);
        }

        std::mem::swap(&mut s.x_curr, &mut s.x_prev);
        s.r += 1;
    }
}

/// One primal-dual iteration.
pub fn step(p: &NLassoProblem<'_>, s: &SolverState) -> Result<SolverState> {
    let stepper = Stepper::new(p)?;
    stepper.check(s)?;
    let mut next = s.clone();
    stepper.advance(&mut next);
    Ok(next)
}

fn record(p: &NLassoProblem<'_>, s: &SolverState) -> Result<HistoryRecord> {
    let kkt = kkt_residuals(p, &s.x_curr, &s.y, HISTORY_EPS_SAT)?;
    Ok(HistoryRecord {
        r: s.r,
        primal: primal_objective(p, &s.x_curr)?,
        gap: duality_gap(p, &s.x_curr, &s.y)?,
        kkt_max: kkt.max_residual(),
    })
}

/// Runs the iteration from the zero state.
pub fn run(p: &NLassoProblem<'_>, cfg: &SolverConfig) -> Result<SolverResult> {
    let state = init_state(p)?;
    run_from(p, cfg, state)
}

/// Runs `cfg.max_iters()` further iterations (or fewer on an early gap stop)
/// starting from `state`.
pub fn run_from(p: &NLassoProblem<'_>, cfg: &SolverConfig, mut state: SolverState) -> Result<SolverResult> {
    let stepper = Stepper::new(p)?;
    stepper.check(&state)?;
    let mut history = Vec::new();
    let mut iters_run = 0;
    for k in 1..=cfg.max_iters {
        stepper.advance(&mut state);
        iters_run = k;
        if cfg.record_interval > 0 && k % cfg.record_interval == 0 {
            history.push(record(p, &state)?);
        }
        if cfg.gap_tolerance > 0.0
            && cfg.gap_check_interval > 0
            && k % cfg.gap_check_interval == 0
            && duality_gap(p, &state.x_curr, &state.y)? <= cfg.gap_tolerance
        {
            break;
        }
    }
    Ok(SolverResult {
        x: state.x_curr,
        y: state.y,
        iters_run,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, NodeSet};
    use crate::objectives::conjugate_g_feasible;

    #[test]
    fn config_rejects_zero_iterations() {
        assert!(SolverConfig::new(0).is_err());
        assert!(SolverConfig::new(1).is_ok());
        assert!(SolverConfig::new(5).unwrap().with_gap_stop(10, -1.0).is_err());
    }

    #[test]
    fn init_is_zero_and_feasible() {
        let edges: Vec<_> = (1..100).map(|i| (i, i + 1, 1.25)).collect();
        let g = Graph::new(100, &edges).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 100).unwrap(), 0.005, 0.2).unwrap();
        let s = init_state(&p).unwrap();
        assert_eq!(s.x_curr.len(), 100);
        assert_eq!(s.y.len(), 99);
        assert!(s.x_curr.0.iter().chain(&s.y.values).all(|&v| v == 0.0));
        assert!(conjugate_g_feasible(&p, &s.y).unwrap());
        let lifted = g.augment().lift(&s.y).unwrap();
        assert!(crate::objectives::dual_feasibility(&p, &lifted, 0.0).unwrap().feasible);
    }

    #[test]
    fn isolated_node_rejected() {
        let g = Graph::new(3, &[(1, 2, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 3).unwrap(), 0.1, 0.1).unwrap();
        assert_eq!(init_state(&p), Err(Error::IsolatedNode(3)));
        assert_eq!(run(&p, &SolverConfig::new(3).unwrap()), Err(Error::IsolatedNode(3)));
    }

    #[test]
    fn first_step_on_two_nodes() {
        // γ_1 = 1, x̃ = 0, y stays 0, seed prox gives (1 + 0)/(1 + 1).
        let g = Graph::new(2, &[(1, 2, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 2).unwrap(), 0.1, 0.3).unwrap();
        let s = step(&p, &init_state(&p).unwrap()).unwrap();
        assert_eq!(s.x_curr.0, vec![0.5, 0.0]);
        assert_eq!(s.x_prev.0, vec![0.0, 0.0]);
        assert_eq!(s.y.values, vec![0.0]);
        assert_eq!(s.r, 1);
    }

    #[test]
    fn step_checks_dimensions() {
        let g = Graph::new(2, &[(1, 2, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 2).unwrap(), 0.1, 0.3).unwrap();
        let mut s = init_state(&p).unwrap();
        s.y = EdgeFlow::zeros(2);
        assert!(matches!(step(&p, &s), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gap_stop_terminates_early() {
        let g = Graph::new(3, &[(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 3).unwrap(), 0.5, 0.2).unwrap();
        let cfg = SolverConfig::new(100_000).unwrap().with_gap_stop(10, 1e-6).unwrap();
        let res = run(&p, &cfg).unwrap();
        assert!(res.iters_run < 100_000);
        assert_eq!(res.iters_run % 10, 0);
        assert!(duality_gap(&p, &res.x, &res.y).unwrap() <= 1e-6);
    }

    #[test]
    fn history_is_increasing() {
        let g = Graph::new(3, &[(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let p = NLassoProblem::new(&g, NodeSet::new([1], 3).unwrap(), 0.5, 0.2).unwrap();
        let res = run(&p, &SolverConfig::new(50).unwrap().with_history(7)).unwrap();
        let rs: Vec<_> = res.history.iter().map(|h| h.r).collect();
        assert_eq!(rs, vec![7, 14, 21, 28, 35, 42, 49]);
    }
}
