use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::Word;
use crate::ring::{accumulate, Coeff};

/// A finite linear combination of words, stored as a sorted association list
/// with no zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorElement<R = BigInt> {
    terms: Vec<(Word, R)>,
}

impl<R: Coeff> Default for TensorElement<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> TensorElement<R> {
    pub fn zero() -> Self {
        TensorElement { terms: Vec::new() }
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, R::one())
    }

    pub fn monomial(w: Word, c: R) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            TensorElement { terms: vec![(w, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, R)>>(it: I) -> Self {
        let mut m = BTreeMap::new();
        for (w, c) in it {
            accumulate(&mut m, w, c);
        }
        Self::from_map(m)
    }

    pub(crate) fn from_map(m: BTreeMap<Word, R>) -> Self {
        TensorElement { terms: m.into_iter().collect() }
    }

    pub fn terms(&self) -> &[(Word, R)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Word, R)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> R {
        match self.terms.binary_search_by(|(x, _)| x.cmp(w)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(),
        }
    }

    /// The common word length, if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let d = self.terms.first()?.0.len();
        self.terms.iter().all(|(w, _)| w.len() == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.clone() + b[j].1.clone();
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        TensorElement { terms: out }
    }

    pub fn neg(&self) -> Self {
        TensorElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &R) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone() * s.clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// The tensor product, i.e. concatenation of words.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|(u, a)| {
            other.terms.iter().map(move |(v, b)| (u.concat(v), a.clone() * b.clone()))
        }))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> TensorElement<S> {
        TensorElement::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}
