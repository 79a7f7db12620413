use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::linalg::{IntegerLattice, SparseColumn};
use super::span::{bracket_span, Algebra};
use crate::free_algebra::Letter;
use crate::symplectic::{a_basis, color_of, pairing};
use crate::Result;

/// The map a_g(2) → ∧²H/⟨ω₀⟩ sending a tensor `u₁u₂u₃u₄` to
/// `μ(u₁,u₃)·u₂∧u₄`, evaluated on the orbit-sum basis. Columns are indexed by
/// the spider basis; rows by pairs `x < y` of letters with the pair
/// `(a_g, b_g)` eliminated through ω₀.
pub fn c13_projection(g: usize) -> Result<Vec<SparseColumn>> {
    let basis = a_basis(g, 2)?;
    let n = 2 * g as Letter;
    let mut pairs = Vec::new();
    for x in 1..=n {
        for y in x + 1..=n {
            pairs.push((x, y));
        }
    }
    let omega: Vec<usize> = (1..=g as Letter).map(|i| pairs.iter().position(|&p| p == (2 * i - 1, 2 * i)).expect("pair")).collect();
    let last = *omega.last().expect("g >= 1");
    let row_of: HashMap<(Letter, Letter), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut cols = Vec::with_capacity(basis.len());
    for s in &basis {
        let c = s.codes();
        let mut v = vec![0i64; pairs.len()];
        for r in 0..s.period() {
            let w: Vec<Letter> = (0..4).map(|j| c[(r + j) % 4]).collect();
            let m = pairing(color_of(w[0]), color_of(w[2]));
            if m == 0 || w[1] == w[3] {
                continue;
            }
            let (x, y, sign) = if w[1] < w[3] { (w[1], w[3], 1) } else { (w[3], w[1], -1) };
            v[row_of[&(x, y)]] += m * sign;
        }
        // a_g∧b_g ≡ −Σ_{i<g} a_i∧b_i
        let t = v[last];
        for &o in &omega {
            v[o] -= t;
        }
        let col: SparseColumn = v
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != last && x != 0)
            .map(|(i, &x)| ((if i > last { i - 1 } else { i }) as u32, x))
            .collect();
        cols.push(col);
    }
    Ok(cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTwoCheck {
    pub genus: usize,
    pub h1_dimension: usize,
    pub expected: usize,
    pub projection_rank: usize,
    pub vanishes_on_brackets: bool,
}

/// Compares H₁(a_g⁺)₂ with ∧²H/⟨ω₀⟩ through the contraction map.
pub fn weight_two_check(g: usize) -> Result<WeightTwoCheck> {
    let span = bracket_span(Algebra::Symp, g, 2, &[(1, 1)])?;
    let h1_dimension = span.target_dim - super::h1::rational_span_rank(&span);
    let proj = c13_projection(g)?;
    let target = 2 * g * g - g - 1;
    let mut l = IntegerLattice::new(target);
    for c in &proj {
        l.insert_sparse(c);
    }
    let vanishes_on_brackets = span.cols.iter().all(|col| {
        let mut img = vec![0i64; target];
        for &(r, c) in col {
            for &(t, x) in &proj[r as usize] {
                img[t as usize] += c * x;
            }
        }
        img.iter().all(|&x| x == 0)
    });
    Ok(WeightTwoCheck { genus: g, h1_dimension, expected: target, projection_rank: l.rank(), vanishes_on_brackets })
}
