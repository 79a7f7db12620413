use std::collections::BTreeMap;

use super::LieDerivation;
use crate::free_algebra::{lie_bracket, lie_to_tensor, Letter, LieElement};
use crate::ring::{accumulate, Coeff};
use crate::{Error, Result};

/// A monomial of the symmetric power S^k H_n, stored as a sorted multiset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SymmetricMonomial(Vec<Letter>);

impl SymmetricMonomial {
    pub fn new(letters: &[Letter]) -> Self {
        let mut v = letters.to_vec();
        v.sort_unstable();
        SymmetricMonomial(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

/// All degree-`k` monomials in `1..=n`, sorted.
pub fn monomials(n: usize, k: usize) -> Vec<SymmetricMonomial> {
    fn rec(n: Letter, k: usize, start: Letter, cur: &mut Vec<Letter>, out: &mut Vec<SymmetricMonomial>) {
        if cur.len() == k {
            out.push(SymmetricMonomial(cur.clone()));
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(n, k, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as Letter, k, 1, &mut Vec::new(), &mut out);
    out
}

/// `tr_k`: embed into tensors, contract the dual against the first letter,
/// then symmetrize what remains.
pub fn trace_tr_k<R: Coeff>(f: &LieDerivation<R>) -> BTreeMap<SymmetricMonomial, R> {
    let mut m = BTreeMap::new();
    for ((l, w), c) in f.terms() {
        let t = lie_to_tensor(&LieElement::<R>::basis(w.clone()).expect("keys are Lyndon"));
        for (x, e) in t.terms() {
            let xl = x.letters();
            if xl[0] == *l {
                accumulate(&mut m, SymmetricMonomial::new(&xl[1..]), c.clone() * e.clone());
            }
        }
    }
    m
}

/// `Φ_k(x_{i₂}⋯x_{i_{k+1}}) = x_l^* ⊗ [x_l, x_{i₂}, …, x_{i_{k+1}}]` with the
/// left-normed bracket and `l` the smallest index absent from the monomial.
pub fn phi_k<R: Coeff>(m: &SymmetricMonomial, n: usize) -> Result<LieDerivation<R>> {
    if m.degree() == 0 {
        return Err(Error::InvalidParameter("monomial must have positive degree".into()));
    }
    let l = phi_k_index(m, n, 0)?;
    phi_k_with(m, n, l)
}

/// The `skip`-th admissible index for [`phi_k`], counting from the smallest.
pub fn phi_k_index(m: &SymmetricMonomial, n: usize, skip: usize) -> Result<Letter> {
    if let Some(&x) = m.letters().iter().find(|&&x| x == 0 || x as usize > n) {
        return Err(Error::LetterOutOfRange { letter: x as usize, rank: n });
    }
    (1..=n as Letter)
        .filter(|x| !m.letters().contains(x))
        .nth(skip)
        .ok_or(Error::NoAdmissibleIndex { rank: n })
}

/// `Φ_k` with an explicit admissible index `l`.
pub fn phi_k_with<R: Coeff>(m: &SymmetricMonomial, n: usize, l: Letter) -> Result<LieDerivation<R>> {
    if m.letters().contains(&l) || l == 0 || l as usize > n {
        return Err(Error::NoAdmissibleIndex { rank: n });
    }
    let mut x = LieElement::<R>::generator(l);
    for &i in m.letters() {
        x = lie_bracket(&x, &LieElement::generator(i));
    }
    let mut images = vec![LieElement::zero(); n];
    images[l as usize - 1] = x;
    LieDerivation::from_images(n, m.degree(), &images)
}
