use crate::error::{invalid, Result};
use crate::sparse::BinaryMatrix;

use super::square::EulerSquare;

/// Binary user-to-resource mapping `F` of shape `(γρ) × γ²`.
///
/// Row `r·γ + s` is resource sub-block "layer `r`, symbol `s`"; column `j`
/// is the `j`-th cell of the Euler square in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMapping {
    gamma: usize,
    rho: usize,
    matrix: BinaryMatrix,
}

impl SparseMapping {
    /// Wraps an arbitrary binary matrix tagged with `(gamma, rho)`.
    ///
    /// Only the shape is checked so that malformed matrices can still be fed
    /// to [`verify_properties`].
    pub fn from_matrix(gamma: usize, rho: usize, matrix: BinaryMatrix) -> Result<Self> {
        if matrix.nrows() != gamma * rho || matrix.ncols() != gamma * gamma {
            return Err(invalid(format!(
                "expected a {}x{} matrix for gamma={gamma}, rho={rho}, got {}x{}",
                gamma * rho,
                gamma * gamma,
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { gamma, rho, matrix })
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// Signature length, i.e. number of check nodes.
    pub fn n_s(&self) -> usize {
        self.gamma * self.rho
    }

    /// Number of signatures (users).
    pub fn num_users(&self) -> usize {
        self.gamma * self.gamma
    }

    /// System load `K / n_s = γ / ρ`.
    pub fn load(&self) -> f64 {
        self.gamma as f64 / self.rho as f64
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BinaryMatrix {
        self.matrix
    }
}

pub fn build_mapping_matrix(es: &EulerSquare) -> SparseMapping {
    let g = es.order();
    let d = es.degree();
    let entries = (0..g * g).flat_map(|j| {
        es.tuple_at(j)
            .iter()
            .enumerate()
            .map(move |(layer, &sym)| (layer * g + sym, j))
    });
    let matrix = BinaryMatrix::from_entries(g * d, g * g, entries).expect("symbols below order");
    SparseMapping {
        gamma: g,
        rho: d,
        matrix,
    }
}

/// Outcome of the three structural checks on a mapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub biregular: bool,
    pub rc_constrained: bool,
    pub cpm_array: bool,
}

impl PropertyReport {
    pub fn all(&self) -> bool {
        self.biregular && self.rc_constrained && self.cpm_array
    }
}

pub fn verify_properties(f: &SparseMapping) -> PropertyReport {
    PropertyReport {
        biregular: is_biregular(&f.matrix, f.rho, f.gamma),
        rc_constrained: is_rc_constrained(&f.matrix),
        cpm_array: is_cpm_array(f),
    }
}

/// Every column has `col_weight` ones and every row `row_weight` ones.
pub fn is_biregular(m: &BinaryMatrix, col_weight: usize, row_weight: usize) -> bool {
    (0..m.ncols()).all(|c| m.col_weight(c) == col_weight)
        && (0..m.nrows()).all(|r| m.row_weight(r) == row_weight)
}

/// Any two rows, and any two columns, share at most one position.
pub fn is_rc_constrained(m: &BinaryMatrix) -> bool {
    columns_overlap_at_most_once(m) && columns_overlap_at_most_once(&m.transpose())
}

fn columns_overlap_at_most_once(m: &BinaryMatrix) -> bool {
    let mut stamp = vec![usize::MAX; m.ncols()];
    for c in 0..m.ncols() {
        for &r in m.col(c) {
            for &other in m.row(r) {
                if other == c {
                    continue;
                }
                if stamp[other] == c {
                    return false;
                }
                stamp[other] = c;
            }
        }
    }
    true
}

/// Circulant offset of block `(bi, bj)` of `Fᵀ`, if the block is a CPM.
pub(crate) fn cpm_offset(f: &SparseMapping, bi: usize, bj: usize) -> Option<usize> {
    let g = f.gamma;
    let lo = bj * g;
    let mut offset = None;
    for a in 0..g {
        // row a of the block is column bi*g + a of F, restricted to rows lo..lo+g
        let hits: Vec<usize> = f
            .matrix
            .col(bi * g + a)
            .iter()
            .filter(|&&r| r >= lo && r < lo + g)
            .map(|&r| r - lo)
            .collect();
        if hits.len() != 1 {
            return None;
        }
        let k = (hits[0] + g - a) % g;
        match offset {
            None => offset = Some(k),
            Some(prev) if prev != k => return None,
            _ => {}
        }
    }
    offset
}

/// `Fᵀ` is a `γ × ρ` array of `γ × γ` circulant permutation matrices.
pub fn is_cpm_array(f: &SparseMapping) -> bool {
    if f.gamma == 0 || f.rho == 0 {
        return false;
    }
    (0..f.gamma).all(|bi| (0..f.rho).all(|bj| cpm_offset(f, bi, bj).is_some()))
}
