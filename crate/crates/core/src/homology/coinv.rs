use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::linalg::{IntegerLattice, SparseColumn};
use super::span::{all_partitions, bracket_span, check_range, Algebra, GradedBasis};
use crate::derivations::{assoc_basis, bracket_by_composition, AssocDerivation};
use crate::free_algebra::{Letter, Word};
use crate::symplectic::{a_basis, sp_action, sp_basis, SympDerivation};
use crate::{Error, Result};

/// A finite-rank module given by a basis, a submodule to quotient by, and
/// the matrices of a generating set of the acting Lie algebra.
#[derive(Clone, Debug, Default)]
pub struct ModuleSpec {
    pub dim: usize,
    pub labels: Vec<String>,
    /// Vectors spanning the submodule to divide out.
    pub relations: Vec<SparseColumn>,
    /// `action[g][v]` is the image of basis vector `v` under generator `g`.
    pub action: Vec<Vec<SparseColumn>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coinvariants {
    pub dimension: usize,
    /// Basis vectors whose classes form a basis of the coinvariants.
    pub basis: Vec<String>,
}

/// Guard on the dimension of a module handled by [`coinvariants`].
pub const MODULE_GUARD: usize = 20_000;

/// `M / (relations + Σ_g g·M)` over Q.
pub fn coinvariants(m: &ModuleSpec) -> Result<Coinvariants> {
    if m.dim > MODULE_GUARD {
        return Err(Error::RangeGuard(format!("module of dimension {} exceeds {MODULE_GUARD}", m.dim)));
    }
    let mut l = IntegerLattice::new(m.dim);
    for c in m.relations.iter().chain(m.action.iter().flatten()) {
        if l.rank() == m.dim {
            break;
        }
        l.insert_sparse(c);
    }
    let pivots = l.pivot_positions();
    let basis: Vec<String> = (0..m.dim)
        .filter(|i| !pivots.contains(i))
        .map(|i| m.labels.get(i).cloned().unwrap_or_else(|| format!("e{i}")))
        .collect();
    Ok(Coinvariants { dimension: m.dim - l.rank(), basis })
}

/// The one-dimensional module with zero action.
pub fn trivial_module() -> ModuleSpec {
    ModuleSpec { dim: 1, labels: vec!["1".into()], relations: Vec::new(), action: vec![vec![Vec::new()]] }
}

/// Matrices of the degree-0 symplectic derivations on H = Q^{2g}.
fn sp_on_h(g: usize) -> Result<Vec<Vec<Vec<(Letter, i64)>>>> {
    let gens: Vec<SympDerivation<i64>> = sp_basis(g)?;
    Ok(gens
        .iter()
        .map(|x| {
            let d = x.to_assoc();
            (1..=2 * g as Letter).map(|y| d.image(y).terms().iter().map(|(w, c)| (w.letters()[0], *c)).collect()).collect()
        })
        .collect())
}

fn letter_name(x: Letter) -> String {
    let i = x.div_ceil(2);
    if x % 2 == 1 {
        format!("a{i}")
    } else {
        format!("b{i}")
    }
}

fn multisets(n: usize, k: usize, alternating: bool) -> Vec<Vec<Letter>> {
    fn go(n: usize, k: usize, strict: bool, from: Letter, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in from..=n as Letter {
            cur.push(x);
            go(n, k, strict, if strict { x + 1 } else { x }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, alternating, 1, &mut Vec::new(), &mut out);
    out
}

/// Sorts `v`, returning the permutation sign, or `None` on a repeat.
fn sort_signed(v: &mut [Letter]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (!v.windows(2).any(|p| p[0] == p[1])).then_some(sign)
}

/// `S^k H` (`alternating = false`) or `∧^k H` with the sp(2g) action.
pub fn power_module(g: usize, k: usize, alternating: bool) -> Result<ModuleSpec> {
    if g < 1 || k < 1 {
        return Err(Error::InvalidParameter("power modules need g, k >= 1".into()));
    }
    let basis = multisets(2 * g, k, alternating);
    let index: HashMap<&[Letter], u32> = basis.iter().enumerate().map(|(i, b)| (b.as_slice(), i as u32)).collect();
    let mut action = Vec::new();
    for x in sp_on_h(g)? {
        let mut mat = Vec::with_capacity(basis.len());
        for b in &basis {
            let mut col: BTreeMap<u32, i64> = BTreeMap::new();
            for pos in 0..k {
                for &(y, c) in &x[b[pos] as usize - 1] {
                    let mut v = b.clone();
                    v[pos] = y;
                    let s = if alternating {
                        match sort_signed(&mut v) {
                            Some(s) => s,
                            None => continue,
                        }
                    } else {
                        v.sort();
                        1
                    };
                    *col.entry(index[v.as_slice()]).or_insert(0) += s * c;
                }
            }
            mat.push(col.into_iter().filter(|(_, c)| *c != 0).collect());
        }
        action.push(mat);
    }
    let sep = if alternating { "∧" } else { "·" };
    let labels = basis.iter().map(|b| b.iter().map(|&x| letter_name(x)).collect::<Vec<_>>().join(sep)).collect();
    Ok(ModuleSpec { dim: basis.len(), labels, relations: Vec::new(), action })
}

/// `∧²H / ⟨ω₀⟩`.
pub fn wedge2_mod_omega(g: usize) -> Result<ModuleSpec> {
    let mut m = power_module(g, 2, true)?;
    let basis = multisets(2 * g, 2, true);
    let omega: SparseColumn = (1..=g as Letter)
        .map(|i| (basis.iter().position(|b| b[..] == [2 * i - 1, 2 * i]).expect("pair") as u32, 1))
        .collect();
    m.relations.push(omega);
    Ok(m)
}

/// Direct sum of modules over the same acting algebra.
pub fn direct_sum(parts: &[ModuleSpec]) -> Result<ModuleSpec> {
    let gens = parts.first().map_or(0, |p| p.action.len());
    if parts.iter().any(|p| p.action.len() != gens) {
        return Err(Error::InvalidParameter("summands carry different generator counts".into()));
    }
    let mut out = ModuleSpec { action: vec![Vec::new(); gens], ..Default::default() };
    for p in parts {
        let off = out.dim as u32;
        let shift = |c: &SparseColumn| c.iter().map(|&(r, x)| (r + off, x)).collect::<SparseColumn>();
        out.labels.extend(p.labels.iter().cloned());
        out.relations.extend(p.relations.iter().map(shift));
        for (g, mat) in p.action.iter().enumerate() {
            out.action[g].extend(mat.iter().map(shift));
        }
        out.dim += p.dim;
    }
    Ok(out)
}

/// H₁(g⁺)_k as a g(0)-module: g(k) modulo the positive bracket span, with
/// g(0) acting through derivation composition (not the span code).
pub fn abelianization_module(algebra: Algebra, size: usize, k: usize) -> Result<ModuleSpec> {
    check_range(algebra, size, k)?;
    if k == 0 {
        return Err(Error::InvalidParameter("weight 0 has no positive part".into()));
    }
    let span = bracket_span(algebra, size, k, &all_partitions(k, false))?;
    let target = GradedBasis::new(algebra, size, k)?;
    let labels = (0..target.ambient_dim()).map(|r| target.label(r)).collect();
    let action = match algebra {
        Algebra::Assoc => {
            let n = size;
            let basis = assoc_basis(n, k);
            let index: HashMap<(Letter, Word), u32> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i as u32)).collect();
            assoc_basis(n, 0)
                .into_iter()
                .map(|e| {
                    let e = AssocDerivation::<i64>::new(n, 0, [(e, 1)])?;
                    basis
                        .iter()
                        .map(|b| {
                            let d = AssocDerivation::<i64>::new(n, k, [(b.clone(), 1)])?;
                            let r = bracket_by_composition(&e, &d)?;
                            let mut col: SparseColumn = r.terms().iter().map(|(key, c)| (index[key], *c)).collect();
                            col.sort();
                            Ok(col)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        }
        Algebra::Symp => {
            let basis = a_basis(size, k)?;
            let index: HashMap<_, u32> = basis.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
            let ders: Vec<SympDerivation<i64>> =
                basis.iter().map(|s| SympDerivation::from_spider(s, size)).collect::<Result<_>>()?;
            sp_basis::<i64>(size)?
                .iter()
                .map(|x| {
                    ders.iter()
                        .map(|d| {
                            let r = sp_action(x, d)?;
                            let mut col: SparseColumn = r.coordinates().into_iter().map(|(s, c)| (index[&s], c)).collect();
                            col.sort();
                            Ok(col)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        }
        _ => return Err(Error::RangeGuard(format!("no explicit g(0) action implemented for {algebra}"))),
    };
    Ok(ModuleSpec { dim: target.len(), labels, relations: span.cols, action })
}
