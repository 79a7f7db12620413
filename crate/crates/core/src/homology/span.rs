use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::linalg::SparseColumn;
use crate::derivations::{assoc_basis, bracket_assoc, bracket_lie_der, lie_der_basis, AssocDerivation, LieDerivation};
use crate::free_algebra::{Letter, Word};
use crate::symplectic::{a_basis, bracket_spider, h_basis, spider_coordinates, Spider};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algebra {
    /// Der(T(H_n)).
    Assoc,
    /// Der(L_n).
    Lie,
    /// a_g, the symplectic derivations of T(H).
    Symp,
    /// h_{g,1}, the symplectic derivations of L(H).
    LieSymp,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Assoc => "assoc",
            Algebra::Lie => "lie",
            Algebra::Symp => "symp",
            Algebra::LieSymp => "lie-symp",
        })
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assoc" => Ok(Algebra::Assoc),
            "lie" => Ok(Algebra::Lie),
            "symp" => Ok(Algebra::Symp),
            "lie-symp" => Ok(Algebra::LieSymp),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}"))),
        }
    }
}

impl Algebra {
    /// Rank of the underlying free module: `n`, or `2g` for the symplectic cases.
    pub fn rank(&self, size: usize) -> usize {
        match self {
            Algebra::Assoc | Algebra::Lie => size,
            Algebra::Symp | Algebra::LieSymp => 2 * size,
        }
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(self, Algebra::Symp | Algebra::LieSymp)
    }
}

/// A pair of degrees `(i, j)`; `[g(i), g(j)] = [g(j), g(i)]`, so pairs are
/// stored with `i ≤ j`.
pub type Partition = (usize, usize);

pub fn normalize_partitions(k: usize, parts: &[Partition]) -> Result<Vec<Partition>> {
    let mut out: Vec<Partition> = Vec::new();
    for &(i, j) in parts {
        if i + j != k {
            return Err(Error::InvalidParameter(format!("partition ({i},{j}) does not sum to {k}")));
        }
        let p = (i.min(j), i.max(j));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// All `(i, j)` with `i + j = k`, `1 ≤ i ≤ j`; with `full`, also `(0, k)`.
pub fn all_partitions(k: usize, full: bool) -> Vec<Partition> {
    let lo = if full { 0 } else { 1 };
    (lo..=k / 2).filter(|&i| full || k - i >= 1).map(|i| (i, k - i)).collect()
}

pub type Weight = Vec<i32>;

#[derive(Clone, Debug)]
enum Elements {
    Der(Vec<(Letter, Word)>),
    Spiders(Vec<Spider>),
    Lie(Vec<LieDerivation<i64>>),
}

/// A fixed basis of the degree-`k` piece with weights and a coordinate map.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    algebra: Algebra,
    size: usize,
    degree: usize,
    elements: Elements,
    weights: Vec<Weight>,
    index: HashMap<Word, u32>,
    ambient: usize,
}

fn word_key(dual: Letter, w: &Word) -> Word {
    let mut k = Word::new(&[dual]);
    k.0.extend_from_slice(w.letters());
    k
}

fn der_weight(n: usize, dual: Letter, w: &Word) -> Weight {
    let mut v = vec![0; n];
    for &x in w.letters() {
        v[x as usize - 1] += 1;
    }
    v[dual as usize - 1] -= 1;
    v
}

impl GradedBasis {
    pub fn new(algebra: Algebra, size: usize, degree: usize) -> Result<Self> {
        if size < 1 || (!algebra.is_symplectic() && size < 2) {
            return Err(Error::InvalidParameter(format!("{algebra} needs a larger size than {size}")));
        }
        let n = algebra.rank(size);
        let (elements, weights, index, ambient) = match algebra {
            Algebra::Assoc | Algebra::Lie => {
                let b = if algebra == Algebra::Assoc { assoc_basis(n, degree) } else { lie_der_basis(n, degree)? };
                let weights = b.iter().map(|(l, w)| der_weight(n, *l, w)).collect();
                let index = b.iter().enumerate().map(|(i, (l, w))| (word_key(*l, w), i as u32)).collect();
                let len = b.len();
                (Elements::Der(b), weights, index, len)
            }
            Algebra::Symp => {
                let b = a_basis(size, degree)?;
                let weights = b.iter().map(|s| s.weight(size)).collect();
                let index = b.iter().enumerate().map(|(i, s)| (Word::new(s.codes()), i as u32)).collect();
                let len = b.len();
                (Elements::Spiders(b), weights, index, len)
            }
            Algebra::LieSymp => {
                let hb = h_basis(size, degree)?;
                let amb = lie_der_basis(n, degree)?;
                let index = amb.iter().enumerate().map(|(i, (l, w))| (word_key(*l, w), i as u32)).collect();
                let mut els = Vec::with_capacity(hb.len());
                for d in hb {
                    let terms = d
                        .terms()
                        .iter()
                        .map(|((l, w), c)| {
                            let c = i64::try_from(c).map_err(|_| Error::RangeGuard("h basis coefficient overflow".into()))?;
                            Ok(((*l, w.clone()), c))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    els.push(LieDerivation::new(n, degree, terms)?);
                }
                let weights = vec![Vec::new(); els.len()];
                (Elements::Lie(els), weights, index, amb.len())
            }
        };
        Ok(GradedBasis { algebra, size, degree, elements, weights, index, ambient })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Length of coordinate vectors (equals `len()` except for h_{g,1},
    /// whose elements are written in Der(L_{2g}) coordinates).
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    /// Row label of ambient coordinate `r`.
    pub fn label(&self, r: usize) -> String {
        match &self.elements {
            Elements::Der(b) => format!("x{}*⊗{}", b[r].0, b[r].1),
            Elements::Spiders(b) => format!("{:?}", b[r]),
            Elements::Lie(_) => {
                let amb = lie_der_basis(self.algebra.rank(self.size), self.degree).expect("built before");
                format!("x{}*⊗[{}]", amb[r].0, amb[r].1)
            }
        }
    }

    /// Coordinates of basis element `i` in ambient coordinates.
    pub fn coordinates_of(&self, i: usize) -> SparseColumn {
        match &self.elements {
            Elements::Lie(b) => self.lie_coords(&b[i]),
            _ => vec![(i as u32, 1)],
        }
    }

    fn lie_coords(&self, d: &LieDerivation<i64>) -> SparseColumn {
        let mut col: SparseColumn = d.terms().iter().map(|((l, w), c)| (self.index[&word_key(*l, w)], *c)).collect();
        col.sort();
        col
    }

    fn assoc_der(&self, i: usize) -> Result<AssocDerivation<i64>> {
        let Elements::Der(b) = &self.elements else { unreachable!() };
        AssocDerivation::new(self.algebra.rank(self.size), self.degree, [(b[i].clone(), 1)])
    }

    fn lie_der(&self, i: usize) -> Result<LieDerivation<i64>> {
        match &self.elements {
            Elements::Der(b) => LieDerivation::new(self.algebra.rank(self.size), self.degree, [(b[i].clone(), 1)]),
            Elements::Lie(b) => Ok(b[i].clone()),
            Elements::Spiders(_) => unreachable!(),
        }
    }

    fn spider(&self, i: usize) -> &Spider {
        let Elements::Spiders(b) = &self.elements else { unreachable!() };
        &b[i]
    }

    /// Coordinates (in `target`) of the bracket of element `a` of `self`
    /// with element `b` of `other`.
    pub fn bracket_column(&self, a: usize, other: &GradedBasis, b: usize, target: &GradedBasis) -> Result<SparseColumn> {
        let mut col: SparseColumn = match self.algebra {
            Algebra::Assoc => {
                let d = bracket_assoc(&self.assoc_der(a)?, &other.assoc_der(b)?)?;
                d.terms().iter().map(|((l, w), c)| (target.index[&word_key(*l, w)], *c)).collect()
            }
            Algebra::Lie | Algebra::LieSymp => {
                let d = bracket_lie_der(&self.lie_der(a)?, &other.lie_der(b)?)?;
                target.lie_coords(&d)
            }
            Algebra::Symp => {
                let comb = bracket_spider(self.spider(a), other.spider(b));
                spider_coordinates(&comb)
                    .into_iter()
                    .map(|(s, c)| (target.index[&Word::new(s.codes())], c))
                    .collect()
            }
        };
        col.sort();
        Ok(col)
    }
}

/// Where a span column came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnTag {
    pub partition: Partition,
    pub left: u32,
    pub right: u32,
}

/// Bracket values of basis pairs as sparse integer columns over the fixed
/// basis of the target degree.
#[derive(Clone, Debug)]
pub struct SpanMatrix {
    pub algebra: Algebra,
    pub size: usize,
    pub degree: usize,
    /// Length of the coordinate vectors.
    pub rows: usize,
    /// Dimension of the target piece g(k) (differs from `rows` for h_{g,1}).
    pub target_dim: usize,
    pub cols: Vec<SparseColumn>,
    pub tags: Vec<ColumnTag>,
}

/// Checks the implemented range before any large allocation.
pub fn check_range(algebra: Algebra, size: usize, k: usize) -> Result<()> {
    let n = algebra.rank(size) as f64;
    let ok = match algebra {
        Algebra::Assoc => n.powi(k as i32 + 2) <= 2.0e5 && k <= 8,
        Algebra::Lie => n.powi(k as i32 + 2) <= 2.0e6 && k <= 8,
        Algebra::Symp => n.powi(k as i32 + 2) / (k as f64 + 2.0) <= 3.0e5 && k <= 6,
        Algebra::LieSymp => size <= 3 && k <= 3,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::RangeGuard(format!("{algebra} with size {size} at degree {k} is outside the implemented range")))
    }
}

/// The pairs `(a, b)` of a partition whose brackets land in weight `w`.
pub(crate) struct PairIndex {
    groups: HashMap<Weight, Vec<u32>>,
}

impl PairIndex {
    pub fn new(b: &GradedBasis) -> Self {
        let mut groups: HashMap<Weight, Vec<u32>> = HashMap::new();
        for i in 0..b.len() {
            groups.entry(b.weight(i).clone()).or_default().push(i as u32);
        }
        PairIndex { groups }
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, &Vec<u32>)> {
        self.groups.iter()
    }

    pub fn get(&self, w: &Weight) -> Option<&Vec<u32>> {
        self.groups.get(w)
    }
}

pub(crate) fn sub_weight(a: &Weight, b: &Weight) -> Weight {
    if a.is_empty() {
        return Vec::new();
    }
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Materializes the span of the requested partitions.
pub fn bracket_span(algebra: Algebra, size: usize, k: usize, partitions: &[Partition]) -> Result<SpanMatrix> {
    check_range(algebra, size, k)?;
    let parts = normalize_partitions(k, partitions)?;
    let target = GradedBasis::new(algebra, size, k)?;
    let mut cols = Vec::new();
    let mut tags = Vec::new();
    let mut cache: HashMap<usize, GradedBasis> = HashMap::new();
    for &(i, j) in &parts {
        for d in [i, j] {
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(d) {
                e.insert(GradedBasis::new(algebra, size, d)?);
            }
        }
        let (bi, bj) = (&cache[&i], &cache[&j]);
        for a in 0..bi.len() {
            let start = if i == j { a + 1 } else { 0 };
            for b in start..bj.len() {
                let col = bi.bracket_column(a, bj, b, &target)?;
                if !col.is_empty() {
                    cols.push(col);
                    tags.push(ColumnTag { partition: (i, j), left: a as u32, right: b as u32 });
                }
            }
        }
    }
    Ok(SpanMatrix { algebra, size, degree: k, rows: target.ambient_dim(), target_dim: target.len(), cols, tags })
}
