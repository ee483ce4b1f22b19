//! Sparse binary matrices with row and column adjacency.

use crate::error::{invalid, Result};

/// Binary matrix stored as sorted row and column supports.
///
/// Doubles as the incidence matrix of a bipartite graph: rows are check
/// nodes, columns are variable nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    row_support: Vec<Vec<usize>>,
    col_support: Vec<Vec<usize>>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_support: vec![Vec::new(); rows],
            col_support: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from `(row, col)` positions; duplicates are merged.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            if r >= rows || c >= cols {
                return Err(invalid(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            m.row_support[r].push(c);
            m.col_support[c].push(r);
        }
        for s in m.row_support.iter_mut().chain(m.col_support.iter_mut()) {
            s.sort_unstable();
            s.dedup();
        }
        Ok(m)
    }

    /// Builds a matrix from dense 0/1 rows.
    pub fn from_dense<R: AsRef<[u8]>>(dense: &[R]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::new();
        for (i, row) in dense.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(invalid(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => entries.push((i, j)),
                    _ => return Err(invalid(format!("entry ({i}, {j}) is {v}, not binary"))),
                }
            }
        }
        Self::from_entries(rows, cols, entries)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.row_support.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row_support[r].binary_search(&c).is_ok()
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let row = &mut self.row_support[r];
        let col = &mut self.col_support[c];
        match (row.binary_search(&c), value) {
            (Err(pos), true) => {
                row.insert(pos, c);
                let cpos = col.binary_search(&r).unwrap_err();
                col.insert(cpos, r);
            }
            (Ok(pos), false) => {
                row.remove(pos);
                let cpos = col.binary_search(&r).unwrap();
                col.remove(cpos);
            }
            _ => {}
        }
    }

    /// Column indices of the ones in row `r`.
    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_support[r]
    }

    /// Row indices of the ones in column `c`.
    pub fn col(&self, c: usize) -> &[usize] {
        &self.col_support[c]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_support[r].len()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        self.col_support[c].len()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            row_support: self.col_support.clone(),
            col_support: self.row_support.clone(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.cols]; self.rows];
        for (r, row) in self.row_support.iter().enumerate() {
            for &c in row {
                d[r][c] = 1;
            }
        }
        d
    }

    /// Iterates over `(row, col)` positions in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row_support
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&c| (r, c)))
    }

    /// Restriction to the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let entries = cols
            .iter()
            .enumerate()
            .flat_map(|(new_c, &c)| self.col_support[c].iter().map(move |&r| (r, new_c)));
        Self::from_entries(self.rows, cols.len(), entries).expect("indices in range")
    }
}
