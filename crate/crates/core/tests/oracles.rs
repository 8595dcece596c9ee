//! Checks against reference solvers that share no code with the library's
//! primal-dual iteration or eigen-iteration.

use nlasso::baselines::{fiedler_vector, LaplacianMode};
use nlasso::certificates::{kkt_residuals, DEFAULT_EPS_SAT};
use nlasso::objectives::{dual_feasibility, dual_objective, duality_gap, primal_objective};
use nlasso::solver::{init_state, step};
use nlasso::*;
use nlasso_testkit::*;

fn path3() -> Graph {
    Graph::new(3, &[(1, 2, 1.0), (2, 3, 0.7)]).unwrap()
}

#[test]
fn oracle_pair_has_zero_gap_on_path3() {
    let g = path3();
    for (alpha, lambda) in [(0.1, 0.05), (0.5, 0.5), (0.01, 0.2)] {
        let p = NLassoProblem::new(&g, NodeSet::new([1], 3).unwrap(), alpha, lambda).unwrap();
        let (x, y) = dual_coordinate_descent(&p, 1_000_000);
        let gap = duality_gap(&p, &x, &y).unwrap();
        assert!(gap.abs() <= 1e-8, "gap {gap} at alpha={alpha} lambda={lambda}");
        let k = kkt_residuals(&p, &x, &y, DEFAULT_EPS_SAT).unwrap();
        assert!(k.capacity_ok);
        assert!(k.max_residual() <= 1e-8, "{k:?}");
    }
}

#[test]
fn oracle_pairs_satisfy_kkt_on_random_instances() {
    for s in 0..40 {
        let inst = TinyInstance::sample(1000 + s);
        let p = inst.problem();
        let (x, y) = dual_coordinate_descent(&p, 1_000_000);
        let k = kkt_residuals(&p, &x, &y, DEFAULT_EPS_SAT).unwrap();
        assert!(k.capacity_ok);
        assert!(k.max_residual() <= 1e-8, "instance {s}: {k:?}");
    }
}

#[test]
fn min_cost_flow_value_matches_primal_optimum() {
    // The flow dual in minimisation form attains |S| − 2·P* at the lifted
    // optimal flow; the lift takes the negated solver-convention flow.
    for s in 0..15 {
        let inst = TinyInstance::sample(2000 + s);
        let p = inst.problem();
        let (x, y) = dual_coordinate_descent(&p, 1_000_000);
        let lifted = inst.graph.augment().lift(&y.negated()).unwrap();
        let feas = dual_feasibility(&p, &lifted, 1e-12).unwrap();
        assert!(feas.feasible);
        let dual = dual_objective(&p, &lifted).unwrap();
        let primal = primal_objective(&p, &x).unwrap();
        assert!((dual - (1.0 - 2.0 * primal)).abs() < 1e-9, "{dual} vs {primal}");
    }
}

#[test]
fn two_node_dual_matches_closed_form() {
    // S = {1}; unsaturated optimum x1 = x2 = 1/(1+α), y = α/(1+α).
    let g = Graph::new(2, &[(1, 2, 1.0)]).unwrap();
    let p = NLassoProblem::new(&g, NodeSet::new([1], 2).unwrap(), 0.25, 1.0).unwrap();
    let (x, y) = dual_coordinate_descent(&p, 100_000);
    assert!((x.get(1) - 0.8).abs() < 1e-12 && (x.get(2) - 0.8).abs() < 1e-12);
    assert!((y[0] - 0.2).abs() < 1e-12);
    let lifted = g.augment().lift(&y.negated()).unwrap();
    // star flows (0.2, −0.2): (0.2 − 1)² + 0.2²/0.25
    assert!((dual_objective(&p, &lifted).unwrap() - (0.64 + 0.16)).abs() < 1e-12);
}

fn two_node_optimum(alpha: f64, lambda: f64, w: f64) -> (NodeSignal, EdgeFlow) {
    let fused = 1.0 / (1.0 + alpha);
    if alpha * fused <= lambda * w {
        (NodeSignal(vec![fused, fused]), EdgeFlow::base(vec![alpha * fused]))
    } else {
        let c = lambda * w;
        (NodeSignal(vec![1.0 - c, c / alpha]), EdgeFlow::base(vec![c]))
    }
}

#[test]
fn optimal_state_is_a_fixed_point() {
    let g = Graph::new(2, &[(1, 2, 1.0)]).unwrap();
    // one unsaturated, one saturated optimum
    for (alpha, lambda) in [(0.25, 1.0), (1.0, 0.1)] {
        let p = NLassoProblem::new(&g, NodeSet::new([1], 2).unwrap(), alpha, lambda).unwrap();
        let (x_star, y_star) = two_node_optimum(alpha, lambda, 1.0);
        let (xo, yo) = dual_coordinate_descent(&p, 100_000);
        assert!(max_abs_diff(&x_star, &xo) < 1e-12);
        assert!((y_star[0] - yo[0]).abs() < 1e-12);

        let state = SolverState {
            x_curr: x_star.clone(),
            x_prev: x_star.clone(),
            y: y_star.clone(),
            r: 0,
        };
        let next = step(&p, &state).unwrap();
        assert!(max_abs_diff(&next.x_curr, &x_star) <= 1e-12);
        assert!((next.y[0] - y_star[0]).abs() <= 1e-12);
    }
}

#[test]
fn two_node_run_reaches_oracle() {
    let g = Graph::new(2, &[(1, 2, 1.3)]).unwrap();
    for (alpha, lambda) in [(0.1, 0.05), (0.01, 0.5), (1.0, 0.5)] {
        let p = NLassoProblem::new(&g, NodeSet::new([2], 2).unwrap(), alpha, lambda).unwrap();
        let (x_star, _) = dual_coordinate_descent(&p, 100_000);
        let res = run(&p, &SolverConfig::new(100_000).unwrap()).unwrap();
        assert!(max_abs_diff(&res.x, &x_star) <= 1e-6);
    }
}

#[test]
fn solver_matches_both_oracles_on_tiny_graphs() {
    for s in 0..6 {
        let inst = TinyInstance::sample(3000 + s);
        let p = inst.problem();
        let (xd, _) = dual_coordinate_descent(&p, 1_000_000);
        let xs = subgradient_descent(&p, 2_000_000);
        let res = run(&p, &SolverConfig::new(100_000).unwrap()).unwrap();
        assert!(max_abs_diff(&res.x, &xd) <= 1e-8);
        assert!(max_abs_diff(&xs, &xd) <= 1e-3);
    }
}

#[test]
fn zero_state_step_by_hand() {
    let g = Graph::new(3, &[(1, 2, 1.0), (2, 3, 1.0)]).unwrap();
    let p = NLassoProblem::new(&g, NodeSet::new([2], 3).unwrap(), 0.5, 0.1).unwrap();
    let s1 = step(&p, &init_state(&p).unwrap()).unwrap();
    // γ_2 = 1/2: (1/2 + 0) / (1/2 + 1) = 1/3
    assert_eq!(s1.x_curr.0, vec![0.0, 1.0 / 3.0, 0.0]);
    let s2 = step(&p, &s1).unwrap();
    // x̃ = (0, 2/3, 0); y = (−1/3, 1/3) clipped to ±0.1
    assert_eq!(s2.y.values, vec![-0.1, 0.1]);
    // node 1: 0 − 1·(−0.1) = 0.1, prox 0.1/(0.5 + 1)
    // node 2: 1/3 − 0.5·(0.1 − (−0.1)) = 7/30, prox (0.5 + 7/30)/1.5
    // node 3: 0 − 1·(0 − 0.1) = 0.1, prox 0.1/1.5
    let expected = [0.1 / 1.5, (0.5 + (1.0 / 3.0 - 0.1)) / 1.5, 0.1 / 1.5];
    for (a, b) in s2.x_curr.0.iter().zip(expected) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn fiedler_matches_dense_solver() {
    for n in [2usize, 3, 5, 8, 10] {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1, 1.0)).collect();
        let g = Graph::new(n, &edges).unwrap();
        let (vals, _) = dense_laplacian_spectrum(&g, false);
        let closed = 2.0 - 2.0 * (std::f64::consts::PI / n as f64).cos();
        assert!((vals[1] - closed).abs() <= 1e-10 * closed.max(1.0));
        let f = fiedler_vector(&g, LaplacianMode::Unnormalized, 1e-12, 1_000_000).unwrap();
        assert!((f.eigenvalue - vals[1]).abs() <= 1e-8 * vals[1], "{} vs {}", f.eigenvalue, vals[1]);
    }
    for seed in 0..5 {
        let g = random_connected_graph(9, 0.3, 0.5, 2.0, seed);
        for normalized in [false, true] {
            let (vals, vecs) = dense_laplacian_spectrum(&g, normalized);
            let mode = if normalized {
                LaplacianMode::SymmetricNormalized
            } else {
                LaplacianMode::Unnormalized
            };
            let f = fiedler_vector(&g, mode, 1e-12, 1_000_000).unwrap();
            assert!((f.eigenvalue - vals[1]).abs() <= 1e-8 * vals[1], "{} vs {}", f.eigenvalue, vals[1]);
            // same direction as the dense eigenvector when the eigenvalue is simple
            if vals[2] - vals[1] > 1e-6 {
                let v: Vec<f64> = (0..9).map(|r| vecs[(r, 1)]).collect();
                let norm_f = f.vector.0.iter().map(|a| a * a).sum::<f64>().sqrt();
                let cos: f64 = f.vector.0.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / norm_f;
                assert!((cos.abs() - 1.0).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn complete_graph_spectrum() {
    let g = Graph::new(3, &[(1, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0)]).unwrap();
    let (vals, _) = dense_laplacian_spectrum(&g, false);
    assert!((vals[1] - 3.0).abs() < 1e-12 && (vals[2] - 3.0).abs() < 1e-12);
    let f = fiedler_vector(&g, LaplacianMode::Unnormalized, 1e-12, 1000).unwrap();
    assert!((f.eigenvalue - 3.0).abs() < 1e-12);
}
