//! Node signals and edge flows.
//!
//! Both are thin wrappers over `Vec<f64>`. Node ids are 1-based in the public
//! API, so `NodeSignal::get(i)` reads slot `i - 1`. Edge flows are indexed by
//! edge id, which is the position of the edge in [`Graph::edges`](crate::Graph::edges).

use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct NodeSignal(pub Vec<f64>);

impl NodeSignal {
    pub fn zeros(n: usize) -> Self {
        NodeSignal(vec![0.0; n])
    }

    pub fn constant(n: usize, c: f64) -> Self {
        NodeSignal(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value at the 1-based node id `i`.
    pub fn get(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn scaled(&self, a: f64) -> Self {
        NodeSignal(self.0.iter().map(|v| a * v).collect())
    }

    pub fn dot(&self, other: &NodeSignal) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl From<Vec<f64>> for NodeSignal {
    fn from(v: Vec<f64>) -> Self {
        NodeSignal(v)
    }
}

impl Index<usize> for NodeSignal {
    type Output = f64;
    fn index(&self, idx: usize) -> &f64 {
        &self.0[idx]
    }
}

impl IndexMut<usize> for NodeSignal {
    fn index_mut(&mut self, idx: usize) -> &mut f64 {
        &mut self.0[idx]
    }
}

/// A real value per directed edge.
///
/// Base flows hold one value per edge of the graph. Augmented flows append
/// one value per star edge `(i, ⋆)`, in node order, after the base edges.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFlow {
    pub values: Vec<f64>,
    pub augmented: bool,
}

impl EdgeFlow {
    pub fn base(values: Vec<f64>) -> Self {
        EdgeFlow { values, augmented: false }
    }

    pub fn augmented(values: Vec<f64>) -> Self {
        EdgeFlow { values, augmented: true }
    }

    pub fn zeros(m: usize) -> Self {
        EdgeFlow::base(vec![0.0; m])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn dot(&self, other: &EdgeFlow) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    pub fn negated(&self) -> Self {
        EdgeFlow {
            values: self.values.iter().map(|v| -v).collect(),
            augmented: self.augmented,
        }
    }
}

impl Index<usize> for EdgeFlow {
    type Output = f64;
    fn index(&self, idx: usize) -> &f64 {
        &self.values[idx]
    }
}
