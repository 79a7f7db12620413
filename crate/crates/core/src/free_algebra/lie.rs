use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;

use super::lyndon::{is_lyndon, standard_split};
use super::{Letter, TensorElement, Word};
use crate::ring::{accumulate, Coeff};
use crate::{Error, Result};

type Basic = Rc<Vec<(Word, i64)>>;

thread_local! {
    static BRACKETS: RefCell<HashMap<(Word, Word), Basic>> = RefCell::new(HashMap::new());
    static POLYS: RefCell<HashMap<Word, Basic>> = RefCell::new(HashMap::new());
}

/// An element of the free Lie algebra, as a combination of Lyndon basis
/// elements (keys are Lyndon words).
#[derive(Clone, PartialEq, Debug)]
pub struct LieElement<R = BigInt> {
    terms: Vec<(Word, R)>,
}

impl<R: Coeff> Default for LieElement<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coeff> LieElement<R> {
    pub fn zero() -> Self {
        LieElement { terms: Vec::new() }
    }

    pub fn generator(x: Letter) -> Self {
        LieElement { terms: vec![(Word::letter(x), R::one())] }
    }

    pub fn basis(w: Word) -> Result<Self> {
        if !is_lyndon(w.letters()) {
            return Err(Error::InvalidParameter(format!("{w} is not a Lyndon word")));
        }
        Ok(LieElement { terms: vec![(w, R::one())] })
    }

    /// Builds an element from Lyndon-keyed terms; rejects non-Lyndon keys.
    pub fn from_terms<I: IntoIterator<Item = (Word, R)>>(it: I) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (w, c) in it {
            if !is_lyndon(w.letters()) {
                return Err(Error::InvalidParameter(format!("{w} is not a Lyndon word")));
            }
            accumulate(&mut m, w, c);
        }
        Ok(LieElement { terms: m.into_iter().collect() })
    }

    pub(crate) fn from_map(m: BTreeMap<Word, R>) -> Self {
        LieElement { terms: m.into_iter().collect() }
    }

    pub fn terms(&self) -> &[(Word, R)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> R {
        match self.terms.binary_search_by(|(x, _)| x.cmp(w)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        let d = self.terms.first()?.0.len();
        self.terms.iter().all(|(w, _)| w.len() == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m: BTreeMap<Word, R> = self.terms.iter().cloned().collect();
        for (w, c) in &other.terms {
            accumulate(&mut m, w.clone(), c.clone());
        }
        Self::from_map(m)
    }

    pub fn neg(&self) -> Self {
        LieElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &R) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LieElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone() * s.clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

fn negate(v: &[(Word, i64)]) -> Vec<(Word, i64)> {
    v.iter().map(|(w, c)| (w.clone(), -c)).collect()
}

/// Bracket of two Lyndon basis elements, rewritten in the Lyndon basis by
/// standard-factorization rewriting. Memoized per thread.
pub(crate) fn bracket_basis(u: &Word, v: &Word) -> Basic {
    let key = (u.clone(), v.clone());
    if let Some(r) = BRACKETS.with(|c| c.borrow().get(&key).cloned()) {
        return r;
    }
    let r: Vec<(Word, i64)> = if u == v {
        Vec::new()
    } else if u > v {
        negate(&bracket_basis(v, u))
    } else {
        let ul = u.letters();
        let split = standard_split(ul);
        if ul.len() == 1 || Word::new(&ul[split..]) >= *v {
            vec![(u.concat(v), 1)]
        } else {
            // [[u1,u2],v] = [u1,[u2,v]] + [[u1,v],u2]
            let u1 = Word::new(&ul[..split]);
            let u2 = Word::new(&ul[split..]);
            let mut m = BTreeMap::new();
            for (w, c) in bracket_basis(&u2, v).iter() {
                for (x, d) in bracket_basis(&u1, w).iter() {
                    accumulate(&mut m, x.clone(), c * d);
                }
            }
            for (w, c) in bracket_basis(&u1, v).iter() {
                for (x, d) in bracket_basis(w, &u2).iter() {
                    accumulate(&mut m, x.clone(), c * d);
                }
            }
            m.into_iter().collect()
        }
    };
    let r = Rc::new(r);
    BRACKETS.with(|c| c.borrow_mut().insert(key, r.clone()));
    r
}

/// The tensor expansion of the Lyndon basis element `P(w)`.
pub(crate) fn basis_polynomial(w: &Word) -> Basic {
    if let Some(r) = POLYS.with(|c| c.borrow().get(w).cloned()) {
        return r;
    }
    let r = if w.len() == 1 {
        vec![(w.clone(), 1)]
    } else {
        let l = w.letters();
        let split = standard_split(l);
        let p = TensorElement::from_terms(basis_polynomial(&Word::new(&l[..split])).iter().cloned());
        let q = TensorElement::from_terms(basis_polynomial(&Word::new(&l[split..])).iter().cloned());
        p.commutator(&q).into_terms()
    };
    let r = Rc::new(r);
    POLYS.with(|c| c.borrow_mut().insert(w.clone(), r.clone()));
    r
}

/// Bilinear extension of the basis bracket.
pub fn lie_bracket<R: Coeff>(a: &LieElement<R>, b: &LieElement<R>) -> LieElement<R> {
    let mut m = BTreeMap::new();
    for (u, c) in &a.terms {
        for (v, d) in &b.terms {
            let cd = c.clone() * d.clone();
            for (w, e) in bracket_basis(u, v).iter() {
                accumulate(&mut m, w.clone(), cd.clone() * R::from_i64(*e));
            }
        }
    }
    LieElement::from_map(m)
}

/// The embedding L_n → T(H_n) sending `[X, Y]` to `X⊗Y − Y⊗X`.
pub fn lie_to_tensor<R: Coeff>(a: &LieElement<R>) -> TensorElement<R> {
    let mut m = BTreeMap::new();
    for (w, c) in &a.terms {
        for (x, e) in basis_polynomial(w).iter() {
            accumulate(&mut m, x.clone(), c.clone() * R::from_i64(*e));
        }
    }
    TensorElement::from_map(m)
}

/// Inverse of [`lie_to_tensor`] on its image, by triangular elimination: the
/// smallest word of `P(w)` is `w` with coefficient 1. Returns `None` when `t`
/// is not a Lie element.
pub fn tensor_to_lie<R: Coeff>(t: &TensorElement<R>) -> Option<LieElement<R>> {
    let mut rest: BTreeMap<Word, R> = t.terms().iter().cloned().collect();
    let mut out = BTreeMap::new();
    while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        if !is_lyndon(w.letters()) {
            return None;
        }
        for (x, e) in basis_polynomial(&w).iter() {
            accumulate(&mut rest, x.clone(), -(c.clone() * R::from_i64(*e)));
        }
        out.insert(w, c);
    }
    Some(LieElement::from_map(out))
}
