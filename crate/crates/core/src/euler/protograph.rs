use crate::error::{Error, Result};
use crate::sparse::BinaryMatrix;

use super::mapping::{cpm_offset, SparseMapping};

/// Base graph of the quasi-cyclic mapping: `γ` super variable nodes, `ρ`
/// super check nodes, and one circulant offset per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Protograph {
    gamma: usize,
    rho: usize,
    // row-major gamma x rho
    generators: Vec<usize>,
}

impl Protograph {
    pub fn new(gamma: usize, rho: usize, generators: Vec<usize>) -> Result<Self> {
        if generators.len() != gamma * rho || generators.iter().any(|&k| k >= gamma) {
            return Err(Error::InvalidParameter(format!(
                "need {} generators in 0..{gamma}",
                gamma * rho
            )));
        }
        Ok(Self {
            gamma,
            rho,
            generators,
        })
    }

    pub fn super_vn_count(&self) -> usize {
        self.gamma
    }

    pub fn super_cn_count(&self) -> usize {
        self.rho
    }

    /// Offset `k_{i,j}` of block `(i, j)`.
    pub fn generator(&self, i: usize, j: usize) -> usize {
        self.generators[i * self.rho + j]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Lifts the protograph back to `Fᵀ`.
    pub fn expand(&self) -> BinaryMatrix {
        let g = self.gamma;
        let entries = (0..g).flat_map(move |i| {
            (0..self.rho).flat_map(move |j| {
                let k = self.generator(i, j);
                (0..g).map(move |a| (i * g + a, j * g + (a + k) % g))
            })
        });
        BinaryMatrix::from_entries(g * g, g * self.rho, entries).expect("offsets in range")
    }

    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.gamma, self.rho);
        for i in 0..self.gamma {
            let row: Vec<String> = (0..self.rho)
                .map(|j| self.generator(i, j).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Reads the generator of every circulant block of `Fᵀ`.
pub fn extract_protograph(f: &SparseMapping) -> Result<Protograph> {
    let mut generators = Vec::with_capacity(f.gamma() * f.rho());
    for i in 0..f.gamma() {
        for j in 0..f.rho() {
            generators.push(cpm_offset(f, i, j).ok_or(Error::NotCpm { row: i, col: j })?);
        }
    }
    Ok(Protograph {
        gamma: f.gamma(),
        rho: f.rho(),
        generators,
    })
}
