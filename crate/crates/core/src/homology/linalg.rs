//! Exact linear algebra: rank mod p with early exit, integer column lattices
//! with Smith normal form, and rational nullspaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A sparse exact column: `(row, value)` pairs sorted by row.
pub type SparseColumn = Vec<(u32, i64)>;

/// Three 30-bit primes used for the modular shadows.
pub const DEFAULT_PRIMES: [u64; 3] = [1_073_741_789, 1_073_741_783, 1_073_741_741];

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Incremental row-echelon basis over F_p of a column space of dimension
/// `dim`. Each stored vector has a leading 1 at its pivot.
#[derive(Clone, Debug)]
pub struct EchelonModP {
    p: u64,
    dim: usize,
    pivots: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl EchelonModP {
    pub fn new(dim: usize, p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(EchelonModP { p, dim, pivots: vec![None; dim], rank: 0 })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.dim
    }

    /// Inserts a column; returns true if it was independent.
    pub fn insert(&mut self, col: &[(u32, i64)]) -> bool {
        if self.is_full() {
            return false;
        }
        let p = self.p;
        let mut v = vec![0u64; self.dim];
        let mut start = self.dim;
        for &(r, x) in col {
            let x = reduce_i64(x, p);
            if x != 0 {
                v[r as usize] = (v[r as usize] + x) % p;
                start = start.min(r as usize);
            }
        }
        for i in start..self.dim {
            if v[i] == 0 {
                continue;
            }
            match &self.pivots[i] {
                Some(b) => {
                    let f = p - v[i];
                    for j in i..self.dim {
                        if b[j] != 0 {
                            v[j] = (v[j] + f * b[j]) % p;
                        }
                    }
                }
                None => {
                    let inv = inv_mod(v[i], p);
                    for x in v.iter_mut().skip(i) {
                        *x = *x * inv % p;
                    }
                    self.pivots[i] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Rank of a column set over F_p, stopping early once rank reaches `dim`.
/// Returns `(rank, early_exit)`.
pub fn rank_mod_p_cols<'a, I>(dim: usize, cols: I, p: u64) -> Result<(usize, bool)>
where
    I: IntoIterator<Item = &'a SparseColumn>,
{
    let mut e = EchelonModP::new(dim, p)?;
    let mut it = cols.into_iter();
    for c in it.by_ref() {
        e.insert(c);
        if e.is_full() {
            return Ok((e.rank(), it.next().is_some()));
        }
    }
    Ok((e.rank(), false))
}

/// Echelon basis of the Z-lattice spanned by inserted integer columns, kept
/// by extended-gcd row operations (a Hermite-style insertion).
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    dim: usize,
    pivots: Vec<Option<Vec<BigInt>>>,
    rank: usize,
}

impl IntegerLattice {
    pub fn new(dim: usize) -> Self {
        IntegerLattice { dim, pivots: vec![None; dim], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rows carrying a pivot of the echelon basis.
    pub fn pivot_positions(&self) -> Vec<usize> {
        self.pivots.iter().enumerate().filter(|(_, b)| b.is_some()).map(|(i, _)| i).collect()
    }

    /// True once the lattice is all of `Z^dim`.
    pub fn is_unimodular(&self) -> bool {
        self.rank == self.dim && self.pivots.iter().enumerate().all(|(i, b)| b.as_ref().is_some_and(|b| b[i].is_one()))
    }

    pub fn insert_sparse(&mut self, col: &[(u32, i64)]) {
        let mut v = vec![BigInt::zero(); self.dim];
        for &(r, x) in col {
            v[r as usize] += x;
        }
        self.insert(v);
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        let mut i = 0;
        while i < self.dim {
            if v[i].is_zero() {
                i += 1;
                continue;
            }
            match self.pivots[i].take() {
                None => {
                    if v[i].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    self.pivots[i] = Some(v);
                    self.rank += 1;
                    return;
                }
                Some(b) => {
                    let e = b[i].extended_gcd(&v[i]);
                    let (g, s, t) = (e.gcd, e.x, e.y);
                    let bi = &b[i] / &g;
                    let vi = &v[i] / &g;
                    let mut nb = Vec::with_capacity(self.dim);
                    let mut nv = Vec::with_capacity(self.dim);
                    for j in 0..self.dim {
                        if j < i {
                            nb.push(BigInt::zero());
                            nv.push(BigInt::zero());
                            continue;
                        }
                        nb.push(&s * &b[j] + &t * &v[j]);
                        nv.push(&bi * &v[j] - &vi * &b[j]);
                    }
                    self.pivots[i] = Some(nb);
                    v = nv;
                    i += 1;
                }
            }
        }
    }

    /// Lattice basis vectors as a dense `dim × rank` list of columns.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    /// Smith normal form of the lattice basis matrix.
    pub fn snf(&self) -> SnfResult {
        let cols = self.basis();
        let divisors = dense_snf(self.dim, &cols);
        SnfResult::from_divisors(self.dim, divisors)
    }
}

/// Smith normal form summary of an integer matrix with `rows` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub rows: usize,
    /// Nonzero elementary divisors `d₁ | d₂ | …`.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Normalizes any list of nonzero diagonal entries to a divisibility chain.
    pub fn from_divisors(rows: usize, diag: Vec<BigInt>) -> Self {
        let divisors = normalize_chain(diag);
        SnfResult { rows, rank: divisors.len(), divisors }
    }

    /// Direct sum of block results.
    pub fn direct_sum(parts: &[SnfResult]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let diag = parts.iter().flat_map(|p| p.divisors.iter().cloned()).collect();
        Self::from_divisors(rows, diag)
    }

    pub fn free_rank(&self) -> usize {
        self.rows - self.rank
    }

    /// Torsion of the cokernel: the divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn cokernel_string(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank() > 0 {
            parts.push(if self.free_rank() == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank()) });
        }
        for t in self.torsion() {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Rewrites nonzero diagonal entries into the invariant-factor chain using
/// repeated gcd/lcm exchanges.
fn normalize_chain(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).filter(|x| !x.is_zero()).collect();
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Nonzero diagonal of the Smith form of a dense matrix given by columns.
pub fn dense_snf(rows: usize, cols: &[Vec<BigInt>]) -> Vec<BigInt> {
    // work on a row-major copy
    let ncols = cols.len();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..ncols).map(|j| cols[j][i].clone()).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(ncols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..ncols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..ncols {
                    let x = &q * &a[t][j];
                    a[i][j] -= x;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let x = &q * &a[i][t];
                    a[i][j] -= x;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the trailing block
                let mut bad = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..ncols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..ncols {
                            let x = a[i][j].clone();
                            a[t][j] += x;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Exact rank over Q of a dense integer matrix given by columns
/// (fraction-free Bareiss elimination).
pub fn bareiss_rank(rows: usize, cols: &[Vec<BigInt>]) -> usize {
    let ncols = cols.len();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..ncols).map(|j| cols[j][i].clone()).collect()).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..ncols {
                let x = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = x / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Primitive integer basis of `{x : M x = 0}` for `M` given by sparse
/// columns; each vector is a sparse list `(column, value)`.
pub fn integer_nullspace(rows: usize, cols: &[Vec<(usize, BigInt)>]) -> Vec<Vec<(usize, BigInt)>> {
    let n = cols.len();
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; rows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            a[*i][j] += BigRational::from_integer(x.clone());
        }
    }
    // reduced row echelon form
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let y = &f * &a[r][j];
                    a[i][j] -= y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut v: Vec<(usize, BigRational)> = vec![(f, BigRational::one())];
        for (i, &pc) in pivot_cols.iter().enumerate() {
            if !a[i][f].is_zero() {
                v.push((pc, -a[i][f].clone()));
            }
        }
        let den = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let mut iv: Vec<(usize, BigInt)> = v.into_iter().map(|(j, x)| (j, (x * &den).to_integer())).collect();
        let g = iv.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            iv.iter_mut().for_each(|(_, x)| *x = &*x / &g);
        }
        iv.sort_by_key(|(j, _)| *j);
        out.push(iv);
    }
    out
}

/// Exact rank over Q of sparse integer columns.
pub fn rational_rank(rows: usize, cols: &[SparseColumn]) -> usize {
    let mut l = IntegerLattice::new(rows);
    for c in cols {
        l.insert_sparse(c);
        if l.rank() == rows {
            break;
        }
    }
    l.rank()
}
