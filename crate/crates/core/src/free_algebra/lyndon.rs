use super::{Letter, Word};
use crate::{Error, Result};

/// A Lyndon word together with its standard factorization `(u, v)`, where `v`
/// is the longest proper Lyndon suffix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LyndonWord {
    word: Word,
    split: usize,
}

impl LyndonWord {
    pub fn new(word: Word) -> Result<Self> {
        if !is_lyndon(word.letters()) {
            return Err(Error::InvalidParameter(format!("{word} is not a Lyndon word")));
        }
        let split = standard_split(word.letters());
        Ok(LyndonWord { word, split })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The standard factorization; `None` for a single letter.
    pub fn factorization(&self) -> Option<(Word, Word)> {
        if self.word.len() < 2 {
            return None;
        }
        let l = self.word.letters();
        Some((Word::new(&l[..self.split]), Word::new(&l[self.split..])))
    }
}

/// True iff `w` is nonempty and strictly smaller than each proper rotation.
pub fn is_lyndon(w: &[Letter]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|i| {
        let rot = w[i..].iter().chain(&w[..i]);
        w.iter().cmp(rot) == std::cmp::Ordering::Less
    })
}

/// Position where the longest proper Lyndon suffix starts (1 for length-1
/// words by convention).
pub(crate) fn standard_split(w: &[Letter]) -> usize {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap_or(1)
}

/// All Lyndon words of length `1..=k` over `1..=n`, in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words_up_to(n: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let top = n as Letter;
    let mut w: Vec<Letter> = vec![1];
    while !w.is_empty() {
        out.push(Word::new(&w));
        let m = w.len();
        while w.len() < k {
            let x = w[w.len() - m];
            w.push(x);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        if let Some(x) = w.last_mut() {
            *x += 1;
        }
    }
    out
}

/// The Lyndon words of length exactly `k` over `1..=n`, sorted.
pub fn lyndon_basis(n: usize, k: usize) -> Result<Vec<LyndonWord>> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("lyndon_basis needs n >= 2, k >= 1 (got n={n}, k={k})")));
    }
    if n > Letter::MAX as usize {
        return Err(Error::InvalidParameter(format!("rank {n} too large")));
    }
    Ok(lyndon_words_up_to(n, k)
        .into_iter()
        .filter(|w| w.len() == k)
        .map(|w| {
            let split = standard_split(w.letters());
            LyndonWord { word: w, split }
        })
        .collect())
}

fn mobius(mut d: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if d > 1 {
        result = -result;
    }
    result
}

/// Witt's dimension formula `(1/k) Σ_{d|k} μ(d) n^{k/d}`.
pub fn witt(n: u64, k: u64) -> u64 {
    if k == 0 {
        return 0;
    }
    let s: i128 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (n as i128).pow((k / d) as u32))
        .sum();
    (s / k as i128) as u64
}
