use crate::euler::SparseMapping;
use crate::sparse::BinaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckClass {
    ZeroTon,
    SingleTon,
    MultiTon,
}

impl CheckClass {
    pub fn of_degree(d: usize) -> Self {
        match d {
            0 => Self::ZeroTon,
            1 => Self::SingleTon,
            _ => Self::MultiTon,
        }
    }
}

/// Factor graph restricted to the active (or still undecoded) columns.
#[derive(Clone, Debug)]
pub struct PrunedGraph<'a> {
    f: &'a BinaryMatrix,
    active: Vec<usize>,
    is_active: Vec<bool>,
    degree: Vec<usize>,
}

pub fn prune_and_classify<'a>(f: &'a SparseMapping, active: &[usize]) -> PrunedGraph<'a> {
    PrunedGraph::new(f.matrix(), active)
}

impl<'a> PrunedGraph<'a> {
    /// Duplicate and out-of-range columns are ignored.
    pub fn new(f: &'a BinaryMatrix, active: &[usize]) -> Self {
        let mut is_active = vec![false; f.ncols()];
        let mut degree = vec![0; f.nrows()];
        let mut cols = Vec::with_capacity(active.len());
        for &c in active {
            if c < f.ncols() && !is_active[c] {
                is_active[c] = true;
                cols.push(c);
                f.col(c).iter().for_each(|&r| degree[r] += 1);
            }
        }
        cols.sort_unstable();
        Self {
            f,
            active: cols,
            is_active,
            degree,
        }
    }

    pub fn mapping(&self) -> &BinaryMatrix {
        self.f
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    pub fn is_active(&self, col: usize) -> bool {
        self.is_active[col]
    }

    pub fn n_checks(&self) -> usize {
        self.degree.len()
    }

    pub fn degree(&self, check: usize) -> usize {
        self.degree[check]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn class(&self, check: usize) -> CheckClass {
        CheckClass::of_degree(self.degree[check])
    }

    pub fn classes(&self) -> Vec<CheckClass> {
        self.degree
            .iter()
            .map(|&d| CheckClass::of_degree(d))
            .collect()
    }

    pub fn checks_of(&self, col: usize) -> &[usize] {
        self.f.col(col)
    }

    /// Active columns attached to a check.
    pub fn users_at(&self, check: usize) -> Vec<usize> {
        self.f
            .row(check)
            .iter()
            .copied()
            .filter(|&c| self.is_active[c])
            .collect()
    }

    pub fn single_ton_checks(&self, col: usize) -> Vec<usize> {
        self.f
            .col(col)
            .iter()
            .copied()
            .filter(|&r| self.degree[r] == 1)
            .collect()
    }

    /// Active columns touching at least one single-ton.
    pub fn single_ton_users(&self) -> Vec<usize> {
        self.active
            .iter()
            .copied()
            .filter(|&c| self.f.col(c).iter().any(|&r| self.degree[r] == 1))
            .collect()
    }

    pub fn remove(&mut self, col: usize) {
        if std::mem::replace(&mut self.is_active[col], false) {
            self.f.col(col).iter().for_each(|&r| self.degree[r] -= 1);
            let pos = self
                .active
                .binary_search(&col)
                .expect("active column listed");
            self.active.remove(pos);
        }
    }

    /// Number of checks per degree, indexed by degree.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let max = self.degree.iter().copied().max().unwrap_or(0);
        let mut h = vec![0; max + 1];
        self.degree.iter().for_each(|&d| h[d] += 1);
        h
    }

    /// Incidence matrix restricted to the active columns, in ascending order.
    pub fn matrix(&self) -> BinaryMatrix {
        self.f.select_columns(&self.active)
    }
}
