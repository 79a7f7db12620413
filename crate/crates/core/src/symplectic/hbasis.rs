use num_bigint::BigInt;

use super::letter_of;
use crate::derivations::{apply_lie, lie_der_basis, LieDerivation};
use crate::free_algebra::{lyndon_basis, LieElement, Word};
use crate::homology::linalg::integer_nullspace;
use crate::{Error, Result};

/// `ω₀ = Σ [a_i, b_i]` as an element of L(2).
pub fn omega0_lie(g: usize) -> LieElement<BigInt> {
    LieElement::from_terms((1..=g as i64).map(|i| (Word::new(&[letter_of(i), letter_of(-i)]), BigInt::from(1))))
        .expect("a_i b_i is Lyndon")
}

/// A basis of h_{g,1}(k) = ker(D ↦ D(ω₀)) on Der(L_{2g})(k), as primitive
/// integer vectors of an exact nullspace.
pub fn h_basis(g: usize, k: usize) -> Result<Vec<LieDerivation<BigInt>>> {
    if g < 1 {
        return Err(Error::InvalidParameter(format!("h_basis needs g >= 1 (got g={g})")));
    }
    let n = 2 * g;
    let basis = lie_der_basis(n, k)?;
    let rows = lyndon_basis(n, k + 2)?;
    let index: std::collections::HashMap<Word, usize> =
        rows.iter().enumerate().map(|(i, w)| (w.word().clone(), i)).collect();
    let omega = omega0_lie(g);
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let d = LieDerivation::<BigInt>::new(n, k, [(b.clone(), BigInt::from(1))])?;
        let v = apply_lie(&d, &omega)?;
        let col: Vec<(usize, BigInt)> = v.terms().iter().map(|(w, c)| (index[w], c.clone())).collect();
        cols.push(col);
    }
    let null = integer_nullspace(rows.len(), &cols);
    null.into_iter()
        .map(|v| LieDerivation::new(n, k, v.into_iter().map(|(j, c)| (basis[j].clone(), c))))
        .collect()
}
