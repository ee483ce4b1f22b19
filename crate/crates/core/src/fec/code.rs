use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::rng::{stream, tag};
use crate::sparse::BinaryMatrix;

use super::gf2::{reduce, BitRow};

const MAX_ATTEMPTS: usize = 200;
const DUPLICATE_COST: i64 = 1_000;

/// Binary LDPC code with a systematic encoder.
///
/// The encoder comes from the reduced row echelon form of `H`: pivot columns
/// carry parity, the remaining `k` columns carry the message in increasing
/// order.
#[derive(Clone, Debug)]
pub struct LdpcCode {
    n: usize,
    k: usize,
    w_c: usize,
    w_r: usize,
    seed: u64,
    h: BinaryMatrix,
    info_positions: Vec<usize>,
    parity_positions: Vec<usize>,
    // parity bit i is the parity of (message & parity_rows[i])
    parity_rows: Vec<BitRow>,
    four_cycles: u64,
}

impl LdpcCode {
    /// Code defined by an arbitrary full-row-rank parity-check matrix.
    pub fn from_parity_matrix(h: BinaryMatrix) -> Result<Self> {
        let n = h.ncols();
        let m = h.nrows();
        let ech = reduce(&h);
        if ech.pivots.len() != m {
            return Err(invalid(format!(
                "parity-check matrix has rank {} < {m}",
                ech.pivots.len()
            )));
        }
        if m >= n {
            return Err(invalid("parity-check matrix leaves no information bits"));
        }
        let mut is_pivot = vec![false; n];
        ech.pivots.iter().for_each(|&p| is_pivot[p] = true);
        let info_positions: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let k = info_positions.len();
        let parity_rows = ech
            .rows
            .iter()
            .map(|row| {
                let mut b = BitRow::zeros(k);
                for (t, &c) in info_positions.iter().enumerate() {
                    if row.get(c) {
                        b.set(t);
                    }
                }
                b
            })
            .collect();
        let w_c = (0..n).map(|c| h.col_weight(c)).max().unwrap_or(0);
        let w_r = (0..m).map(|r| h.row_weight(r)).max().unwrap_or(0);
        let four_cycles = count_four_cycles(&h);
        Ok(Self {
            n,
            k,
            w_c,
            w_r,
            seed: 0,
            h,
            info_positions,
            parity_positions: ech.pivots,
            parity_rows,
            four_cycles,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn column_weight(&self) -> usize {
        self.w_c
    }

    pub fn row_weight(&self) -> usize {
        self.w_r
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn parity_matrix(&self) -> &BinaryMatrix {
        &self.h
    }

    /// Codeword positions holding the message bits.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// Number of 4-cycles left in the Tanner graph.
    pub fn four_cycles(&self) -> u64 {
        self.four_cycles
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "message of {} bits, code has k = {}",
                message.len(),
                self.k
            )));
        }
        let mut packed = BitRow::zeros(self.k);
        let mut cw = vec![0u8; self.n];
        for (t, (&bit, &pos)) in message.iter().zip(&self.info_positions).enumerate() {
            if bit > 1 {
                return Err(invalid(format!("message bit {t} is {bit}")));
            }
            if bit == 1 {
                packed.set(t);
            }
            cw[pos] = bit;
        }
        for (row, &pos) in self.parity_rows.iter().zip(&self.parity_positions) {
            cw[pos] = u8::from(row.dot(&packed));
        }
        Ok(cw)
    }

    /// Message bits of a codeword.
    pub fn extract_message(&self, codeword: &[u8]) -> Vec<u8> {
        self.info_positions.iter().map(|&p| codeword[p]).collect()
    }

    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        bits.len() == self.n
            && (0..self.h.nrows())
                .all(|r| self.h.row(r).iter().filter(|&&c| bits[c] == 1).count() % 2 == 0)
    }

    /// Systematic generator, `k × n`, one row per message bit.
    pub fn generator(&self) -> BinaryMatrix {
        let mut entries = Vec::new();
        for t in 0..self.k {
            entries.push((t, self.info_positions[t]));
            for (row, &pos) in self.parity_rows.iter().zip(&self.parity_positions) {
                if row.get(t) {
                    entries.push((t, pos));
                }
            }
        }
        BinaryMatrix::from_entries(self.k, self.n, entries).expect("positions in range")
    }
}

fn count_four_cycles(h: &BinaryMatrix) -> u64 {
    let mut pairs: HashMap<(usize, usize), u64> = HashMap::new();
    for r in 0..h.nrows() {
        let row = h.row(r);
        for (i, &a) in row.iter().enumerate() {
            for &b in &row[i + 1..] {
                *pairs.entry((a, b)).or_default() += 1;
            }
        }
    }
    pairs.values().map(|&c| c * c.saturating_sub(1) / 2).sum()
}

/// Regular `(w_c, w_r)` LDPC code of length `n` with full-rank parity checks.
///
/// Every column holds `w_c` edge sockets. A seeded shuffle of all sockets is
/// cut into rows of `w_r`, then degree-preserving swaps remove repeated
/// entries within a row and, as far as possible, 4-cycles. Rank-deficient
/// draws are discarded and redrawn from the next derived seed.
pub fn gallager_construct(n: usize, w_c: usize, w_r: usize, seed: u64) -> Result<LdpcCode> {
    if w_c == 0 || w_r < 2 || n < w_r {
        return Err(invalid(format!(
            "need w_c >= 1 and 2 <= w_r <= n, got n={n}, w_c={w_c}, w_r={w_r}"
        )));
    }
    if !(n * w_c).is_multiple_of(w_r) {
        return Err(invalid(format!(
            "n*w_c = {} is not divisible by w_r = {w_r}",
            n * w_c
        )));
    }
    let m = n * w_c / w_r;
    if m >= n {
        return Err(invalid(format!(
            "{m} checks on {n} bits leave no information bits"
        )));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = stream(seed, tag::LDPC, attempt as u64);
        let Some(rows) = draw_rows(n, w_c, w_r, &mut rng) else {
            continue;
        };
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&c| (r, c)));
        let h = BinaryMatrix::from_entries(m, n, entries)?;
        if let Ok(mut code) = LdpcCode::from_parity_matrix(h) {
            code.w_c = w_c;
            code.w_r = w_r;
            code.seed = seed;
            return Ok(code);
        }
    }
    Err(Error::ConstructionFailure {
        attempts: MAX_ATTEMPTS,
        reason: format!("no full-rank regular ({w_c}, {w_r}) matrix of length {n}"),
    })
}

struct PairCounts(HashMap<(usize, usize), i64>);

impl PairCounts {
    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    // Returns the cost change of adding (`up`) or removing one co-occurrence.
    fn bump(&mut self, a: usize, b: usize, up: bool) -> i64 {
        let c = self.0.entry(Self::key(a, b)).or_default();
        let before = *c;
        *c += if up { 1 } else { -1 };
        if a == b {
            if up {
                DUPLICATE_COST
            } else {
                -DUPLICATE_COST
            }
        } else if up {
            before
        } else {
            -(before - 1)
        }
    }

    fn get(&self, a: usize, b: usize) -> i64 {
        self.0.get(&Self::key(a, b)).copied().unwrap_or(0)
    }
}

fn place(rows: &mut [Vec<usize>], pc: &mut PairCounts, r: usize, s: usize, col: usize) -> i64 {
    let mut delta = 0;
    for (t, &b) in rows[r].iter().enumerate() {
        if t != s {
            delta += pc.bump(rows[r][s], b, false);
        }
    }
    rows[r][s] = col;
    for (t, &b) in rows[r].iter().enumerate() {
        if t != s {
            delta += pc.bump(col, b, true);
        }
    }
    delta
}

fn swap_sockets(
    rows: &mut [Vec<usize>],
    pc: &mut PairCounts,
    a: (usize, usize),
    b: (usize, usize),
) -> i64 {
    let ca = rows[a.0][a.1];
    let cb = rows[b.0][b.1];
    place(rows, pc, a.0, a.1, cb) + place(rows, pc, b.0, b.1, ca)
}

fn bad_rows(rows: &[Vec<usize>], pc: &PairCounts) -> (Vec<usize>, bool) {
    let mut has_duplicates = false;
    let bad = (0..rows.len())
        .filter(|&r| {
            let row = &rows[r];
            let mut bad = false;
            for i in 0..row.len() {
                for j in i + 1..row.len() {
                    if row[i] == row[j] {
                        has_duplicates = true;
                        bad = true;
                    } else if pc.get(row[i], row[j]) > 1 {
                        bad = true;
                    }
                }
            }
            bad
        })
        .collect();
    (bad, has_duplicates)
}

fn draw_rows(n: usize, w_c: usize, w_r: usize, rng: &mut impl Rng) -> Option<Vec<Vec<usize>>> {
    let mut sockets: Vec<usize> = (0..n).flat_map(|c| std::iter::repeat_n(c, w_c)).collect();
    sockets.shuffle(rng);
    let mut rows: Vec<Vec<usize>> = sockets.chunks(w_r).map(<[usize]>::to_vec).collect();
    let mut pc = PairCounts(HashMap::new());
    for row in &rows {
        for i in 0..row.len() {
            for j in i + 1..row.len() {
                pc.bump(row[i], row[j], true);
            }
        }
    }
    let m = rows.len();
    let rounds = 40 * n;
    for _ in 0..rounds {
        let (bad, _) = bad_rows(&rows, &pc);
        if bad.is_empty() {
            return Some(rows);
        }
        for &r in &bad {
            for _ in 0..4 {
                let s = rng.random_range(0..w_r);
                let r2 = (r + rng.random_range(1..m)) % m;
                let s2 = rng.random_range(0..w_r);
                let delta = swap_sockets(&mut rows, &mut pc, (r, s), (r2, s2));
                if delta > 0 {
                    swap_sockets(&mut rows, &mut pc, (r, s), (r2, s2));
                }
            }
        }
    }
    // 4-cycles may survive on short codes; repeated entries may not
    let (_, dup) = bad_rows(&rows, &pc);
    (!dup).then_some(rows)
}

type CacheKey = (usize, usize, usize, u64);

/// Process-wide cache of constructed codes keyed by `(n, w_c, w_r, seed)`.
pub fn cached_code(n: usize, w_c: usize, w_r: usize, seed: u64) -> Result<Arc<LdpcCode>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<LdpcCode>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("cache lock").get(&(n, w_c, w_r, seed)) {
        return Ok(Arc::clone(c));
    }
    let code = Arc::new(gallager_construct(n, w_c, w_r, seed)?);
    cache
        .lock()
        .expect("cache lock")
        .insert((n, w_c, w_r, seed), Arc::clone(&code));
    Ok(code)
}
