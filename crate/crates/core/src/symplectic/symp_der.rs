use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::spider::{a_basis, spider_to_tensor, Spider, SpiderComb};
use super::{partner_letter, SymplecticForm};
use crate::derivations::{bracket_assoc, AssocDerivation};
use crate::free_algebra::{TensorElement, Word};
use crate::ring::Coeff;
use crate::{Error, Result};

/// An element of a_g(k), held as the cyclically invariant tensor `D*` of
/// degree `k+2` over the signed alphabet.
#[derive(Clone, PartialEq, Debug)]
pub struct SympDerivation<R = BigInt> {
    genus: usize,
    degree: usize,
    tensor: TensorElement<R>,
}

fn rotate(w: &Word) -> Word {
    let l = w.letters();
    let mut v = Word::new(&l[1..]);
    v.0.push(l[0]);
    v
}

impl<R: Coeff> SympDerivation<R> {
    /// Wraps a tensor after checking shape and cyclic invariance.
    pub fn new(genus: usize, degree: usize, tensor: TensorElement<R>) -> Result<Self> {
        SymplecticForm::new(genus)?;
        for (w, _) in tensor.terms() {
            if w.len() != degree + 2 {
                return Err(Error::DegreeMismatch { expected: degree + 2, found: w.len() });
            }
            w.check_rank(2 * genus)?;
        }
        let d = SympDerivation { genus, degree, tensor };
        if !d.is_invariant() {
            return Err(Error::InvalidParameter("tensor is not cyclically invariant".into()));
        }
        Ok(d)
    }

    pub fn from_spider(s: &Spider, genus: usize) -> Result<Self> {
        s.check_genus(genus)?;
        Ok(SympDerivation { genus, degree: s.degree(), tensor: spider_to_tensor(s) })
    }

    pub fn from_comb(comb: &SpiderComb, genus: usize, degree: usize) -> Result<Self> {
        let mut t = TensorElement::zero();
        for (s, c) in comb {
            s.check_genus(genus)?;
            if s.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: s.degree() });
            }
            t = t.add(&spider_to_tensor::<R>(s).scale(&R::from_i64(*c)));
        }
        Ok(SympDerivation { genus, degree, tensor: t })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tensor(&self) -> &TensorElement<R> {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    /// `D* = σ(D*)` for the cyclic shift σ.
    pub fn is_invariant(&self) -> bool {
        let rotated = TensorElement::from_terms(self.tensor.terms().iter().map(|(w, c)| (rotate(w), c.clone())));
        rotated == self.tensor
    }

    /// Coordinates in the primitive orbit-sum basis, keyed by canonical spider.
    pub fn coordinates(&self) -> BTreeMap<Spider, R> {
        self.tensor
            .terms()
            .iter()
            .filter_map(|(w, c)| {
                let s = Spider::from_codes(w.letters());
                (s.codes() == w.letters()).then(|| (s, c.clone()))
            })
            .collect()
    }

    /// The derivation `x ↦ Σ μ(u₁, x)·u₂⋯u_m` over terms `u₁⋯u_m` of `D*`.
    pub fn to_assoc(&self) -> AssocDerivation<R> {
        let mut terms = Vec::with_capacity(self.tensor.len());
        for (w, c) in self.tensor.terms() {
            let l = w.letters();
            let first = l[0];
            let sign = if first % 2 == 1 { R::one() } else { -R::one() };
            terms.push(((partner_letter(first), Word::new(&l[1..])), sign * c.clone()));
        }
        AssocDerivation::new(2 * self.genus, self.degree, terms).expect("shape checked on construction")
    }

    /// `D* = Σ_i (a_i ⊗ D(b_i) − b_i ⊗ D(a_i))` for any derivation of rank 2g.
    pub fn dual_tensor(d: &AssocDerivation<R>) -> Result<TensorElement<R>> {
        if !d.rank().is_multiple_of(2) || d.rank() == 0 {
            return Err(Error::InvalidParameter(format!("rank {} is not 2g", d.rank())));
        }
        Ok(TensorElement::from_terms(d.terms().iter().map(|((dual, w), c)| {
            // dual b_i: +a_i ⊗ w; dual a_i: −b_i ⊗ w
            let sign = if *dual % 2 == 0 { R::one() } else { -R::one() };
            let mut x = Word::letter(partner_letter(*dual));
            x.0.extend_from_slice(w.letters());
            (x, sign * c.clone())
        })))
    }

    /// Inverse of [`SympDerivation::to_assoc`]; fails unless `D*` is
    /// cyclically invariant, i.e. `D` is symplectic.
    pub fn from_assoc(d: &AssocDerivation<R>) -> Result<Self> {
        let t = Self::dual_tensor(d)?;
        Self::new(d.rank() / 2, d.degree(), t)
    }

    pub fn add(&self, other: &Self) -> Self {
        SympDerivation { genus: self.genus, degree: self.degree, tensor: self.tensor.add(&other.tensor) }
    }

    pub fn scale(&self, s: &R) -> Self {
        SympDerivation { genus: self.genus, degree: self.degree, tensor: self.tensor.scale(s) }
    }

    /// Bracket in a_g, via the derivation bracket.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::InvalidParameter(format!("genus mismatch: {} vs {}", self.genus, other.genus)));
        }
        Self::from_assoc(&bracket_assoc(&self.to_assoc(), &other.to_assoc())?)
    }
}

/// Infinitesimal Sp action: the bracket with a degree-0 element.
pub fn sp_action<R: Coeff>(x: &SympDerivation<R>, d: &SympDerivation<R>) -> Result<SympDerivation<R>> {
    if x.degree != 0 {
        return Err(Error::DegreeMismatch { expected: 0, found: x.degree });
    }
    x.bracket(d)
}

/// Spider basis of a_g(0) ≅ sp(2g).
pub fn sp_basis<R: Coeff>(g: usize) -> Result<Vec<SympDerivation<R>>> {
    a_basis(g, 0)?.iter().map(|s| SympDerivation::from_spider(s, g)).collect()
}
