use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::rng::{stream, tag};

/// Seeded bit permutation: `out[i] = in[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interleaver {
    perm: Vec<usize>,
    inverse: Vec<usize>,
}

impl Interleaver {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    /// Uniform random permutation drawn from `(master_seed, index)`.
    pub fn random(n: usize, master_seed: u64, index: u64) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut stream(master_seed, tag::INTERLEAVER, index));
        Self::from_permutation(perm).expect("shuffle is a permutation")
    }

    pub fn from_permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut inverse = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            inverse[p] = i;
        }
        Ok(Self { perm, inverse })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn interleave<X: Copy>(&self, x: &[X]) -> Vec<X> {
        assert_eq!(x.len(), self.perm.len(), "interleaver length");
        self.perm.iter().map(|&p| x[p]).collect()
    }

    pub fn deinterleave<X: Copy>(&self, y: &[X]) -> Vec<X> {
        assert_eq!(y.len(), self.perm.len(), "interleaver length");
        self.inverse.iter().map(|&i| y[i]).collect()
    }
}
