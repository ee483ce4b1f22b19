use crate::euler::SparseMapping;

use super::graph::PrunedGraph;

/// Outcome of idealised peeling in which every single-ton decode succeeds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralTrace {
    /// Check-node degree histogram of the pruned graph.
    pub histogram_before: Vec<usize>,
    /// Histogram of the residual graph once peeling stalls.
    pub histogram_after: Vec<usize>,
    pub initial_single_tons: usize,
    /// Columns removed in each peeling iteration.
    pub peeled_per_iteration: Vec<Vec<usize>>,
    pub active: usize,
}

impl StructuralTrace {
    pub fn peeled(&self) -> usize {
        self.peeled_per_iteration.iter().map(Vec::len).sum()
    }

    pub fn peeled_fraction(&self) -> f64 {
        if self.active == 0 {
            0.0
        } else {
            self.peeled() as f64 / self.active as f64
        }
    }

    pub fn iterations(&self) -> usize {
        self.peeled_per_iteration.len()
    }
}

pub fn peel_structural(f: &SparseMapping, active: &[usize]) -> StructuralTrace {
    let mut g = PrunedGraph::new(f.matrix(), active);
    let histogram_before = g.degree_histogram();
    let initial_single_tons = histogram_before.get(1).copied().unwrap_or(0);
    let n_active = g.active().len();
    let mut peeled_per_iteration = Vec::new();
    loop {
        let now = g.single_ton_users();
        if now.is_empty() {
            break;
        }
        now.iter().for_each(|&c| g.remove(c));
        peeled_per_iteration.push(now);
    }
    StructuralTrace {
        histogram_before,
        histogram_after: g.degree_histogram(),
        initial_single_tons,
        peeled_per_iteration,
        active: n_active,
    }
}
