use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::free_algebra::{all_words, Letter, TensorElement, Word};
use crate::ring::{accumulate, Coeff};
use crate::{Error, Result};

/// An element of Hom(H_n, H_n^{⊗(k+1)}), written as a combination of
/// `x_i^* ⊗ w` with `|w| = k + 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct AssocDerivation<R = BigInt> {
    rank: usize,
    degree: usize,
    terms: Vec<((Letter, Word), R)>,
}

impl<R: Coeff> AssocDerivation<R> {
    pub fn zero(rank: usize, degree: usize) -> Self {
        AssocDerivation { rank, degree, terms: Vec::new() }
    }

    pub fn new<I>(rank: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((Letter, Word), R)>,
    {
        let mut m = BTreeMap::new();
        for ((i, w), c) in terms {
            if i == 0 || i as usize > rank {
                return Err(Error::LetterOutOfRange { letter: i as usize, rank });
            }
            w.check_rank(rank)?;
            if w.len() != degree + 1 {
                return Err(Error::DegreeMismatch { expected: degree + 1, found: w.len() });
            }
            accumulate(&mut m, (i, w), c);
        }
        Ok(AssocDerivation { rank, degree, terms: m.into_iter().collect() })
    }

    /// The basis element `x_dual^* ⊗ w`.
    pub fn basis(rank: usize, dual: Letter, w: Word) -> Result<Self> {
        let d = w.len().checked_sub(1).ok_or_else(|| Error::InvalidParameter("empty word".into()))?;
        Self::new(rank, d, [((dual, w), R::one())])
    }

    /// Builds the derivation with `x_i ↦ images[i-1]`.
    pub fn from_images(rank: usize, degree: usize, images: &[TensorElement<R>]) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::RankMismatch { left: rank, right: images.len() });
        }
        Self::new(
            rank,
            degree,
            images
                .iter()
                .enumerate()
                .flat_map(|(i, t)| t.terms().iter().map(move |(w, c)| (((i + 1) as Letter, w.clone()), c.clone()))),
        )
    }

    pub(crate) fn from_map_unchecked(rank: usize, degree: usize, m: BTreeMap<(Letter, Word), R>) -> Self {
        AssocDerivation { rank, degree, terms: m.into_iter().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[((Letter, Word), R)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dual: Letter, w: &Word) -> R {
        self.terms
            .iter()
            .find(|((i, x), _)| *i == dual && x == w)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(R::zero)
    }

    /// `D(x_i)`.
    pub fn image(&self, i: Letter) -> TensorElement<R> {
        TensorElement::from_terms(
            self.terms.iter().filter(|((d, _), _)| *d == i).map(|((_, w), c)| (w.clone(), c.clone())),
        )
    }

    pub fn images(&self) -> Vec<TensorElement<R>> {
        let mut v: Vec<Vec<(Word, R)>> = vec![Vec::new(); self.rank];
        for ((i, w), c) in &self.terms {
            v[*i as usize - 1].push((w.clone(), c.clone()));
        }
        v.into_iter().map(TensorElement::from_terms).collect()
    }

    fn combine(&self, other: &Self, sign: R) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut m: BTreeMap<_, _> = self.terms.iter().cloned().collect();
        for (k, c) in &other.terms {
            accumulate(&mut m, k.clone(), c.clone() * sign.clone());
        }
        Ok(Self::from_map_unchecked(self.rank, degree, m))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, R::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -R::one())
    }

    pub fn scale(&self, s: &R) -> Self {
        let m = self.terms.iter().map(|(k, c)| (k.clone(), c.clone() * s.clone())).filter(|(_, c)| !c.is_zero());
        AssocDerivation { rank: self.rank, degree: self.degree, terms: m.collect() }
    }
}

/// Basis of Der(T(H_n))(k): pairs `(i, w)` ordered by `i`, then `w`.
pub fn assoc_basis(n: usize, k: usize) -> Vec<(Letter, Word)> {
    let words = all_words(n, k + 1);
    (1..=n as Letter).flat_map(|i| words.iter().map(move |w| (i, w.clone()))).collect()
}

/// Leibniz extension: `D(X ⊗ Y) = D(X) ⊗ Y + X ⊗ D(Y)`.
pub fn apply_assoc<R: Coeff>(d: &AssocDerivation<R>, t: &TensorElement<R>) -> Result<TensorElement<R>> {
    for (w, _) in t.terms() {
        w.check_rank(d.rank)?;
    }
    let images = d.images();
    let mut m = BTreeMap::new();
    for (w, c) in t.terms() {
        let l = w.letters();
        for s in 0..l.len() {
            for (v, e) in images[l[s] as usize - 1].terms() {
                let mut x = Word::new(&l[..s]);
                x.0.extend_from_slice(v.letters());
                x.0.extend_from_slice(&l[s + 1..]);
                accumulate(&mut m, x, c.clone() * e.clone());
            }
        }
    }
    Ok(TensorElement::from_map(m))
}

fn splice(a: &[Letter], s: usize, b: &[Letter]) -> Word {
    let mut x = Word::new(&a[..s]);
    x.0.extend_from_slice(b);
    x.0.extend_from_slice(&a[s + 1..]);
    x
}

/// The insertion formula for `[F, G]`: each term of `G` has one letter
/// replaced by the value of `F` on it, minus the same with roles swapped.
pub fn bracket_assoc<R: Coeff>(f: &AssocDerivation<R>, g: &AssocDerivation<R>) -> Result<AssocDerivation<R>> {
    if f.rank != g.rank {
        return Err(Error::RankMismatch { left: f.rank, right: g.rank });
    }
    let mut m = BTreeMap::new();
    for ((fi, u), a) in &f.terms {
        for ((gi, v), b) in &g.terms {
            let ab = a.clone() * b.clone();
            for (s, &x) in v.letters().iter().enumerate() {
                if x == *fi {
                    accumulate(&mut m, (*gi, splice(v.letters(), s, u.letters())), ab.clone());
                }
            }
            for (t, &x) in u.letters().iter().enumerate() {
                if x == *gi {
                    accumulate(&mut m, (*fi, splice(u.letters(), t, v.letters())), -ab.clone());
                }
            }
        }
    }
    Ok(AssocDerivation::from_map_unchecked(f.rank, f.degree + g.degree, m))
}

/// `[F, G]` computed as `F∘G − G∘F` on the generators, with `F` and `G` acting
/// through their Leibniz extensions.
pub fn bracket_by_composition<R: Coeff>(
    f: &AssocDerivation<R>,
    g: &AssocDerivation<R>,
) -> Result<AssocDerivation<R>> {
    if f.rank != g.rank {
        return Err(Error::RankMismatch { left: f.rank, right: g.rank });
    }
    let gi = g.images();
    let fi = f.images();
    let mut images = Vec::with_capacity(f.rank);
    for i in 0..f.rank {
        images.push(apply_assoc(f, &gi[i])?.sub(&apply_assoc(g, &fi[i])?));
    }
    AssocDerivation::from_images(f.rank, f.degree + g.degree, &images)
}

/// `C₁₃(f ⊗ u₁ ⊗ u₂ ⊗ u₃) = f(u₂) u₁ ⊗ u₃`.
pub fn contraction_c13<R: Coeff>(f: &AssocDerivation<R>) -> Result<TensorElement<R>> {
    if f.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree });
    }
    Ok(TensorElement::from_terms(f.terms.iter().filter_map(|((i, w), c)| {
        let l = w.letters();
        (l[1] == *i).then(|| (Word::new(&[l[0], l[2]]), c.clone()))
    })))
}

/// The section `x_i ⊗ x_j ↦ x₁^* ⊗ x_i ⊗ x₁ ⊗ x_j` of `C₁₃`.
pub fn section_s<R: Coeff>(t: &TensorElement<R>, rank: usize) -> Result<AssocDerivation<R>> {
    let mut terms = Vec::new();
    for (w, c) in t.terms() {
        if w.len() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: w.len() });
        }
        let l = w.letters();
        terms.push(((1, Word::new(&[l[0], 1, l[1]])), c.clone()));
    }
    AssocDerivation::new(rank, 2, terms)
}

/// The degree-0 derivation `x_i ↦ x_i`.
pub fn identity_derivation<R: Coeff>(n: usize) -> Result<AssocDerivation<R>> {
    if n < 1 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    AssocDerivation::new(n, 0, (1..=n as Letter).map(|i| ((i, Word::letter(i)), R::one())))
}
