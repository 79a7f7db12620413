use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::AssocDerivation;
use crate::free_algebra::{is_lyndon, lie_bracket, lie_to_tensor, lyndon_basis, Letter, LieElement, Word};
use crate::ring::{accumulate, Coeff};
use crate::{Error, Result};

/// An element of Hom(H_n, L_n(k+1)) in the basis `x_i^* ⊗ P(w)`, `w` Lyndon.
#[derive(Clone, PartialEq, Debug)]
pub struct LieDerivation<R = BigInt> {
    rank: usize,
    degree: usize,
    terms: Vec<((Letter, Word), R)>,
}

impl<R: Coeff> LieDerivation<R> {
    pub fn zero(rank: usize, degree: usize) -> Self {
        LieDerivation { rank, degree, terms: Vec::new() }
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
            if !is_lyndon(w.letters()) {
                return Err(Error::InvalidParameter(format!("{w} is not a Lyndon word")));
            }
            accumulate(&mut m, (i, w), c);
        }
        Ok(LieDerivation { rank, degree, terms: m.into_iter().collect() })
    }

    pub fn basis(rank: usize, dual: Letter, w: Word) -> Result<Self> {
        let d = w.len().checked_sub(1).ok_or_else(|| Error::InvalidParameter("empty word".into()))?;
        Self::new(rank, d, [((dual, w), R::one())])
    }

    /// Builds the derivation with `x_i ↦ images[i-1]`.
    pub fn from_images(rank: usize, degree: usize, images: &[LieElement<R>]) -> Result<Self> {
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

    pub fn images(&self) -> Vec<LieElement<R>> {
        let mut v: Vec<BTreeMap<Word, R>> = vec![BTreeMap::new(); self.rank];
        for ((i, w), c) in &self.terms {
            v[*i as usize - 1].insert(w.clone(), c.clone());
        }
        v.into_iter().map(LieElement::from_map).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut m: BTreeMap<_, _> = self.terms.iter().cloned().collect();
        for (k, c) in &other.terms {
            accumulate(&mut m, k.clone(), c.clone());
        }
        Ok(LieDerivation { rank: self.rank, degree, terms: m.into_iter().collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-R::one()))
    }

    pub fn scale(&self, s: &R) -> Self {
        let m = self.terms.iter().map(|(k, c)| (k.clone(), c.clone() * s.clone())).filter(|(_, c)| !c.is_zero());
        LieDerivation { rank: self.rank, degree: self.degree, terms: m.collect() }
    }

    /// The associative derivation obtained through the embedding L_n → T(H_n).
    pub fn to_assoc(&self) -> AssocDerivation<R> {
        let images: Vec<_> = self.images().iter().map(lie_to_tensor).collect();
        AssocDerivation::from_images(self.rank, self.degree, &images).expect("images have consistent shape")
    }
}

/// Basis of Der(L_n)(k): pairs `(i, w)` with `w` Lyndon of length `k+1`.
pub fn lie_der_basis(n: usize, k: usize) -> Result<Vec<(Letter, Word)>> {
    let words = lyndon_basis(n, k + 1)?;
    Ok((1..=n as Letter).flat_map(|i| words.iter().map(move |w| (i, w.word().clone()))).collect())
}

/// Leibniz extension `D([X, Y]) = [D X, Y] + [X, D Y]` along standard
/// factorizations.
pub fn apply_lie<R: Coeff>(d: &LieDerivation<R>, x: &LieElement<R>) -> Result<LieElement<R>> {
    let images = d.images();
    let mut memo: HashMap<Word, LieElement<R>> = HashMap::new();
    let mut out = LieElement::zero();
    for (w, c) in x.terms() {
        w.check_rank(d.rank)?;
        out = out.add(&apply_basis(&images, w, &mut memo).scale(c));
    }
    Ok(out)
}

fn apply_basis<R: Coeff>(
    images: &[LieElement<R>],
    w: &Word,
    memo: &mut HashMap<Word, LieElement<R>>,
) -> LieElement<R> {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let r = if w.len() == 1 {
        images[w.letters()[0] as usize - 1].clone()
    } else {
        let l = w.letters();
        let split = crate::free_algebra::LyndonWord::new(w.clone())
            .ok()
            .and_then(|lw| lw.factorization())
            .map(|(u, _)| u.len())
            .unwrap_or(1);
        let u = Word::new(&l[..split]);
        let v = Word::new(&l[split..]);
        let pu = LieElement::basis(u.clone()).expect("left factor is Lyndon");
        let pv = LieElement::basis(v.clone()).expect("right factor is Lyndon");
        let du = apply_basis(images, &u, memo);
        let dv = apply_basis(images, &v, memo);
        lie_bracket(&du, &pv).add(&lie_bracket(&pu, &dv))
    };
    memo.insert(w.clone(), r.clone());
    r
}

/// `[F, G] = F∘G − G∘F` evaluated on generators.
pub fn bracket_lie_der<R: Coeff>(f: &LieDerivation<R>, g: &LieDerivation<R>) -> Result<LieDerivation<R>> {
    if f.rank != g.rank {
        return Err(Error::RankMismatch { left: f.rank, right: g.rank });
    }
    let fi = f.images();
    let gi = g.images();
    let mut images = Vec::with_capacity(f.rank);
    for i in 0..f.rank {
        images.push(apply_lie(f, &gi[i])?.sub(&apply_lie(g, &fi[i])?));
    }
    LieDerivation::from_images(f.rank, f.degree + g.degree, &images)
}
