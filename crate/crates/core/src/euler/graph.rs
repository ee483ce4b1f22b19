//! Cycle and neighbourhood statistics of the bipartite graph of a binary
//! matrix. Rows are check nodes, columns are variable nodes.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{invalid, Error, Result};
use crate::sparse::BinaryMatrix;

/// Default step budget for [`count_cycles`].
pub const DEFAULT_CYCLE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub girth: Option<usize>,
    pub cycle_counts: BTreeMap<usize, u64>,
    pub connectivity: usize,
}

// node ids: checks 0..m, variables m..m+n
struct Bipartite<'a> {
    m: &'a BinaryMatrix,
}

impl<'a> Bipartite<'a> {
    fn len(&self) -> usize {
        self.m.nrows() + self.m.ncols()
    }

    fn for_each_neighbour(&self, node: usize, mut f: impl FnMut(usize)) {
        let rows = self.m.nrows();
        if node < rows {
            for &c in self.m.row(node) {
                f(rows + c);
            }
        } else {
            for &r in self.m.col(node - rows) {
                f(r);
            }
        }
    }
}

/// Length of the shortest cycle, `None` for a forest.
pub fn girth(m: &BinaryMatrix) -> Option<usize> {
    let g = Bipartite { m };
    let n = g.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    // every cycle passes through a check node
    for root in 0..m.nrows() {
        for &t in &touched {
            dist[t] = usize::MAX;
            parent[t] = usize::MAX;
        }
        touched.clear();
        dist[root] = 0;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            g.for_each_neighbour(u, |w| {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            });
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Number of distinct simple cycles of the given length.
///
/// Exhaustive depth-first search rooted at the smallest node of each
/// cycle; fails with [`Error::BudgetExceeded`] once `budget` search steps
/// have been spent.
pub fn count_cycles(m: &BinaryMatrix, length: usize, budget: u64) -> Result<u64> {
    if length < 3 {
        return Err(invalid(format!("cycle length {length} is below 3")));
    }
    if length % 2 == 1 {
        return Ok(0);
    }
    let g = Bipartite { m };
    let mut on_path = vec![false; g.len()];
    let mut steps = 0u64;
    let mut closed = 0u64;

    struct Search<'g, 'a> {
        g: &'g Bipartite<'a>,
        on_path: Vec<bool>,
        root: usize,
        length: usize,
        steps: u64,
        budget: u64,
        closed: u64,
    }

    impl Search<'_, '_> {
        fn extend(&mut self, node: usize, depth: usize) -> Result<()> {
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let mut next = Vec::new();
            self.g.for_each_neighbour(node, |w| next.push(w));
            for w in next {
                if depth + 1 == self.length {
                    if w == self.root {
                        self.closed += 1;
                    }
                } else if w > self.root && !self.on_path[w] {
                    self.on_path[w] = true;
                    self.extend(w, depth + 1)?;
                    self.on_path[w] = false;
                }
            }
            Ok(())
        }
    }

    for root in 0..m.nrows() {
        on_path[root] = true;
        let mut s = Search {
            g: &g,
            on_path: std::mem::take(&mut on_path),
            root,
            length,
            steps,
            budget,
            closed: 0,
        };
        s.extend(root, 0)?;
        steps = s.steps;
        closed += s.closed;
        on_path = s.on_path;
        on_path[root] = false;
    }
    // each cycle is traced once per direction
    Ok(closed / 2)
}

/// Number of distinct variable nodes reachable from variable node `var`
/// by a path of length two.
pub fn connectivity_from(m: &BinaryMatrix, var: usize) -> usize {
    let mut seen = vec![false; m.ncols()];
    let mut count = 0;
    for &r in m.col(var) {
        for &c in m.row(r) {
            if c != var && !std::mem::replace(&mut seen[c], true) {
                count += 1;
            }
        }
    }
    count
}

/// [`connectivity_from`] variable node 0; zero for an empty matrix.
pub fn connectivity(m: &BinaryMatrix) -> usize {
    if m.ncols() == 0 {
        0
    } else {
        connectivity_from(m, 0)
    }
}

/// True when the bipartite graph has no cycles.
pub fn is_forest(m: &BinaryMatrix) -> bool {
    let n = m.nrows() + m.ncols();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (r, c) in m.entries() {
        let a = find(&mut parent, r);
        let b = find(&mut parent, m.nrows() + c);
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Girth, connectivity and the counts of cycles of the given lengths.
pub fn graph_stats(m: &BinaryMatrix, lengths: &[usize], budget: u64) -> Result<GraphStats> {
    let mut cycle_counts = BTreeMap::new();
    for &l in lengths {
        cycle_counts.insert(l, count_cycles(m, l, budget)?);
    }
    Ok(GraphStats {
        girth: girth(m),
        cycle_counts,
        connectivity: connectivity(m),
    })
}
