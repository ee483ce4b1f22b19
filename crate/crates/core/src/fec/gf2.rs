//! Dense GF(2) linear algebra on packed bit rows.

use crate::sparse::BinaryMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND with `other`.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// Reduced row echelon form of a binary matrix.
pub(crate) struct Echelon {
    /// Pivot column of each nonzero reduced row.
    pub pivots: Vec<usize>,
    pub rows: Vec<BitRow>,
}

pub(crate) fn reduce(m: &BinaryMatrix) -> Echelon {
    let n = m.ncols();
    let mut rows: Vec<BitRow> = (0..m.nrows())
        .map(|r| {
            let mut b = BitRow::zeros(n);
            m.row(r).iter().for_each(|&c| b.set(c));
            b
        })
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(top, p);
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Echelon { pivots, rows }
}

pub fn rank(m: &BinaryMatrix) -> usize {
    reduce(m).pivots.len()
}
