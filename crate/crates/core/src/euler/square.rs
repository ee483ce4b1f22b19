use std::collections::HashSet;

use crate::error::{invalid, Error, Result};

/// An Euler square `E(order, degree)`: a square array of `order²` cells,
/// each holding a `degree`-tuple of symbols in `0..order`.
///
/// Layer `r` (the `r`-th entry of every tuple) is a Latin square and any two
/// layers are orthogonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerSquare {
    order: usize,
    degree: usize,
    // cell (i, j), layer r lives at ((i * order + j) * degree + r)
    symbols: Vec<usize>,
}

/// Construction recipe for [`construct_euler_square`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConstructionMethod {
    /// `L_r(i, j) = (r i + j) mod γ` for prime `γ`.
    #[default]
    PrimeModular,
    /// Same recipe over `GF(p^m)`.
    FiniteField,
    /// Kronecker product of prime-power squares.
    MacNeish,
}

impl std::str::FromStr for ConstructionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" | "prime-modular" => Ok(Self::PrimeModular),
            "field" | "finite-field" => Ok(Self::FiniteField),
            "macneish" | "product" => Ok(Self::MacNeish),
            _ => Err(invalid(format!("unknown construction method '{s}'"))),
        }
    }
}

impl ConstructionMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PrimeModular => "prime",
            Self::FiniteField => "field",
            Self::MacNeish => "macneish",
        }
    }
}

impl EulerSquare {
    /// Validates and wraps a tuple array given as `cells[i][j] = tuple`.
    pub fn from_cells(cells: &[Vec<Vec<usize>>]) -> Result<Self> {
        let order = cells.len();
        let degree = cells.first().and_then(|r| r.first()).map_or(0, Vec::len);
        let mut symbols = Vec::with_capacity(order * order * degree);
        for (i, row) in cells.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidSquare(format!(
                    "row {i} has {} cells",
                    row.len()
                )));
            }
            for (j, tuple) in row.iter().enumerate() {
                if tuple.len() != degree {
                    return Err(Error::InvalidSquare(format!(
                        "cell ({i}, {j}) has {} entries, expected {degree}",
                        tuple.len()
                    )));
                }
                symbols.extend_from_slice(tuple);
            }
        }
        let sq = Self {
            order,
            degree,
            symbols,
        };
        sq.validate()?;
        Ok(sq)
    }

    /// Same as [`from_cells`](Self::from_cells) with 1-based symbols.
    pub fn from_cells_one_based(cells: &[Vec<Vec<usize>>]) -> Result<Self> {
        let shifted: Result<Vec<Vec<Vec<usize>>>> = cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| {
                        t.iter()
                            .map(|&s| {
                                s.checked_sub(1).ok_or_else(|| {
                                    Error::InvalidSquare("symbol 0 in 1-based input".into())
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::from_cells(&shifted?)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Tuple of cell `(i, j)`.
    pub fn tuple(&self, i: usize, j: usize) -> &[usize] {
        let start = (i * self.order + j) * self.degree;
        &self.symbols[start..start + self.degree]
    }

    /// Tuple of the `index`-th cell in row-major order.
    pub fn tuple_at(&self, index: usize) -> &[usize] {
        &self.symbols[index * self.degree..(index + 1) * self.degree]
    }

    pub fn symbol(&self, i: usize, j: usize, layer: usize) -> usize {
        self.tuple(i, j)[layer]
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.order;
        let d = self.degree;
        if g < 2 || d < 1 {
            return Err(Error::InvalidSquare(format!("order {g}, degree {d}")));
        }
        if d >= g {
            return Err(Error::InvalidSquare(format!(
                "degree {d} must be below order {g}"
            )));
        }
        if let Some(&s) = self.symbols.iter().find(|&&s| s >= g) {
            return Err(Error::InvalidSquare(format!("symbol {s} outside 0..{g}")));
        }
        for r in 0..d {
            for a in 0..g {
                let mut in_row = vec![false; g];
                let mut in_col = vec![false; g];
                for b in 0..g {
                    let sr = self.symbol(a, b, r);
                    let sc = self.symbol(b, a, r);
                    if std::mem::replace(&mut in_row[sr], true) {
                        return Err(Error::InvalidSquare(format!(
                            "layer {r}: symbol {sr} repeats in row {a}"
                        )));
                    }
                    if std::mem::replace(&mut in_col[sc], true) {
                        return Err(Error::InvalidSquare(format!(
                            "layer {r}: symbol {sc} repeats in column {a}"
                        )));
                    }
                }
            }
        }
        for r in 0..d {
            for s in r + 1..d {
                let mut seen = vec![false; g * g];
                for cell in 0..g * g {
                    let t = self.tuple_at(cell);
                    if std::mem::replace(&mut seen[t[r] * g + t[s]], true) {
                        return Err(Error::InvalidSquare(format!(
                            "layers {r} and {s} are not orthogonal"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Human readable rendering, one row of tuples per line.
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.order, self.degree);
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| {
                    let t: Vec<String> = self.tuple(i, j).iter().map(usize::to_string).collect();
                    format!("({})", t.join(","))
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// True when all `order²` tuples are pairwise distinct.
    pub fn tuples_distinct(&self) -> bool {
        let mut set = HashSet::with_capacity(self.order * self.order);
        (0..self.order * self.order).all(|c| set.insert(self.tuple_at(c).to_vec()))
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(p, e)` pairs in increasing `p`.
fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest degree reachable for `order` by the prime, prime-power and
/// MacNeish product recipes.
pub fn max_constructible_degree(order: usize) -> usize {
    factorize(order)
        .iter()
        .map(|&(p, e)| p.pow(e))
        .min()
        .map_or(0, |q| q - 1)
}

/// Whether `E(gamma, rho)` is covered by the known explicit constructions
/// (including downward closure in `rho`).
///
/// `false` means "not covered", not a proof of nonexistence.
pub fn euler_square_exists(gamma: usize, rho: usize) -> Result<bool> {
    if gamma < 3 {
        return Err(invalid(format!("gamma must be at least 3, got {gamma}")));
    }
    if rho < 2 {
        return Err(invalid(format!("rho must be at least 2, got {rho}")));
    }
    Ok(rho < gamma && rho <= max_constructible_degree(gamma))
}

pub fn construct_euler_square(
    gamma: usize,
    rho: usize,
    method: ConstructionMethod,
) -> Result<EulerSquare> {
    if !euler_square_exists(gamma, rho)? {
        return Err(Error::Unsupported(format!(
            "no known construction for E({gamma}, {rho})"
        )));
    }
    let sq = match method {
        ConstructionMethod::PrimeModular => {
            if !is_prime(gamma) {
                return Err(Error::Unsupported(format!(
                    "order {gamma} is not prime; select the finite-field or MacNeish method"
                )));
            }
            prime_modular(gamma, rho)
        }
        ConstructionMethod::FiniteField => {
            let f = factorize(gamma);
            if f.len() != 1 {
                return Err(Error::Unsupported(format!(
                    "order {gamma} is not a prime power"
                )));
            }
            field_square(&GaloisField::new(f[0].0, f[0].1), rho)
        }
        ConstructionMethod::MacNeish => {
            let mut acc: Option<EulerSquare> = None;
            for (p, e) in factorize(gamma) {
                let part = field_square(&GaloisField::new(p, e), rho);
                acc = Some(match acc {
                    None => part,
                    Some(a) => kronecker(&a, &part),
                });
            }
            acc.expect("gamma >= 3 has a factor")
        }
    };
    debug_assert!(sq.is_valid());
    Ok(sq)
}

fn prime_modular(p: usize, rho: usize) -> EulerSquare {
    let mut symbols = Vec::with_capacity(p * p * rho);
    for i in 0..p {
        for j in 0..p {
            for r in 1..=rho {
                symbols.push((r * i + j) % p);
            }
        }
    }
    EulerSquare {
        order: p,
        degree: rho,
        symbols,
    }
}

fn field_square(f: &GaloisField, rho: usize) -> EulerSquare {
    let q = f.order();
    let mut symbols = Vec::with_capacity(q * q * rho);
    for i in 0..q {
        for j in 0..q {
            for r in 1..=rho {
                symbols.push(f.add(f.mul(r, i), j));
            }
        }
    }
    EulerSquare {
        order: q,
        degree: rho,
        symbols,
    }
}

fn kronecker(a: &EulerSquare, b: &EulerSquare) -> EulerSquare {
    let (ga, gb) = (a.order, b.order);
    let g = ga * gb;
    let d = a.degree.min(b.degree);
    let mut symbols = Vec::with_capacity(g * g * d);
    for i in 0..g {
        for j in 0..g {
            let ta = a.tuple(i / gb, j / gb);
            let tb = b.tuple(i % gb, j % gb);
            for r in 0..d {
                symbols.push(ta[r] * gb + tb[r]);
            }
        }
    }
    EulerSquare {
        order: g,
        degree: d,
        symbols,
    }
}

/// `GF(p^m)` with elements encoded as base-`p` digit vectors in an integer.
struct GaloisField {
    p: usize,
    m: u32,
    // monic irreducible modulus, low coefficient first, length m + 1
    modulus: Vec<usize>,
}

impl GaloisField {
    fn new(p: usize, m: u32) -> Self {
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, m as usize)
        };
        Self { p, m, modulus }
    }

    fn order(&self) -> usize {
        self.p.pow(self.m)
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn compose(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.compose(&s)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.m as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0usize; 2 * m];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        reduce(&mut prod, &self.modulus, self.p);
        self.compose(&prod[..m])
    }
}

// reduces `poly` in place modulo a monic `modulus`
fn reduce(poly: &mut [usize], modulus: &[usize], p: usize) {
    let m = modulus.len() - 1;
    for deg in (m..poly.len()).rev() {
        let c = poly[deg];
        if c == 0 {
            continue;
        }
        for (k, &mk) in modulus.iter().enumerate() {
            let idx = deg - m + k;
            poly[idx] = (poly[idx] + p * p - (c * mk) % p) % p;
        }
    }
}

fn find_irreducible(p: usize, m: usize) -> Vec<usize> {
    // brute force over monic polynomials; orders used here are tiny
    let count = p.pow(m as u32);
    'cand: for low in 0..count {
        let mut poly: Vec<usize> = (0..m).map(|k| (low / p.pow(k as u32)) % p).collect();
        poly.push(1);
        if poly[0] == 0 {
            continue;
        }
        for dd in 1..=m / 2 {
            for dlow in 0..p.pow(dd as u32) {
                let mut div: Vec<usize> = (0..dd).map(|k| (dlow / p.pow(k as u32)) % p).collect();
                div.push(1);
                let mut rem = poly.clone();
                reduce(&mut rem, &div, p);
                if rem[..dd].iter().all(|&c| c == 0) {
                    continue 'cand;
                }
            }
        }
        return poly;
    }
    unreachable!("irreducible polynomials exist for every degree")
}
