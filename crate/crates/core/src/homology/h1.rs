use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::linalg::{EchelonModP, IntegerLattice, SnfResult, SparseColumn, DEFAULT_PRIMES};
use super::span::{
    all_partitions, check_range, normalize_partitions, sub_weight, Algebra, GradedBasis, PairIndex, Partition, SpanMatrix,
    Weight,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Brackets of positive degrees only: H₁(g⁺).
    Plus,
    /// Also brackets with g(0): H₁(g).
    Full,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(Mode::Plus),
            "full" => Ok(Mode::Full),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plus => "plus",
            Mode::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Z,
    Q,
    ModP(Vec<u64>),
}

impl Ring {
    pub fn modp_default() -> Self {
        Ring::ModP(DEFAULT_PRIMES.to_vec())
    }
}

impl FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" | "Z" => Ok(Ring::Z),
            "q" | "Q" => Ok(Ring::Q),
            "modp" => Ok(Ring::modp_default()),
            _ => {
                let list = s.strip_prefix("modp:").ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))?;
                let primes = list
                    .split(',')
                    .map(|p| p.trim().parse::<u64>().map_err(|e| Error::Parse(format!("prime {p:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Ring::ModP(primes))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => f.write_str("z"),
            Ring::Q => f.write_str("q"),
            Ring::ModP(ps) => {
                let s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "modp:{}", s.join(","))
            }
        }
    }
}

/// Default cap on the rows of one weight block handled by exact integer
/// elimination.
pub const DEFAULT_BLOCK_GUARD: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Config {
    pub algebra: Algebra,
    pub size: usize,
    pub k: usize,
    pub mode: Mode,
    pub ring: Ring,
    /// `None` means all partitions allowed by the mode.
    pub partitions: Option<Vec<Partition>>,
    pub block_guard: usize,
}

impl H1Config {
    pub fn new(algebra: Algebra, size: usize, k: usize, mode: Mode, ring: Ring) -> Self {
        H1Config { algebra, size, k, mode, ring, partitions: None, block_guard: DEFAULT_BLOCK_GUARD }
    }

    pub fn with_partitions(mut self, p: Vec<Partition>) -> Self {
        self.partitions = Some(p);
        self
    }

    pub fn resolved_partitions(&self) -> Result<Vec<Partition>> {
        let parts = match &self.partitions {
            Some(p) => normalize_partitions(self.k, p)?,
            None => all_partitions(self.k, self.mode == Mode::Full),
        };
        if self.mode == Mode::Plus && parts.iter().any(|p| p.0 == 0) {
            return Err(Error::InvalidParameter("degree-0 partitions need mode full".into()));
        }
        Ok(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Report {
    pub algebra: Algebra,
    pub size: usize,
    pub k: usize,
    pub mode: Mode,
    pub ring: String,
    pub partitions: Vec<Partition>,
    /// dim g(k).
    pub target_dim: usize,
    /// Rank of the bracket span (over Q, or over F_p for all primes).
    pub span_rank: usize,
    /// Free rank of the integral cokernel (ring z).
    pub free_rank: Option<usize>,
    /// Torsion summands Z/d of the integral cokernel (ring z).
    pub torsion: Vec<String>,
    /// Dimension of the cokernel over Q when it is determined.
    pub q_dimension: Option<usize>,
    /// Dimension over F_p (ring modp), the same at every prime.
    pub fp_dimension: Option<usize>,
    pub description: String,
    pub blocks: usize,
    pub largest_block: usize,
    pub early_exit_blocks: usize,
    pub columns_used: usize,
    pub column_digest: String,
    pub evidence: String,
    #[serde(default)]
    pub wall_time_ms: u128,
    #[serde(default)]
    pub cache_hit: bool,
}

impl H1Report {
    /// The part of the report that must be reproducible (no timing).
    pub fn results_value(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Some(m) = v.as_object_mut() {
            m.remove("wall_time_ms");
            m.remove("cache_hit");
        }
        v
    }
}

enum Engine {
    Lattice { l: IntegerLattice, integral: bool },
    ModP(Vec<EchelonModP>),
}

impl Engine {
    fn insert(&mut self, col: &SparseColumn) {
        match self {
            Engine::Lattice { l, .. } => l.insert_sparse(col),
            Engine::ModP(es) => {
                for e in es {
                    e.insert(col);
                }
            }
        }
    }

    /// Nothing further can change the result.
    fn saturated(&self, target: usize) -> bool {
        match self {
            Engine::Lattice { l, integral } => l.rank() == target && (!*integral || l.is_unimodular()),
            Engine::ModP(es) => es.iter().all(|e| e.rank() == target),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct BlockOutcome {
    pub rows: usize,
    pub used: usize,
    pub early_exit: bool,
    pub ranks: Vec<usize>,
    pub snf: Option<SnfResult>,
    pub digest: [u8; 32],
}

pub(crate) struct Plan {
    pub target: GradedBasis,
    pub sources: HashMap<usize, (GradedBasis, PairIndex)>,
    pub parts: Vec<Partition>,
    /// Target weights in a fixed order with their rows.
    pub blocks: Vec<(Weight, Vec<u32>)>,
}

impl Plan {
    pub fn new(algebra: Algebra, size: usize, k: usize, parts: &[Partition]) -> Result<Self> {
        check_range(algebra, size, k)?;
        let target = GradedBasis::new(algebra, size, k)?;
        let mut sources = HashMap::new();
        for &(i, j) in parts {
            for d in [i, j] {
                if let std::collections::hash_map::Entry::Vacant(e) = sources.entry(d) {
                    let b = GradedBasis::new(algebra, size, d)?;
                    let idx = PairIndex::new(&b);
                    e.insert((b, idx));
                }
            }
        }
        let mut blocks: Vec<(Weight, Vec<u32>)> = if algebra == Algebra::LieSymp {
            vec![(Vec::new(), (0..target.ambient_dim() as u32).collect())]
        } else {
            let mut m: HashMap<Weight, Vec<u32>> = HashMap::new();
            for r in 0..target.len() {
                m.entry(target.weight(r).clone()).or_default().push(r as u32);
            }
            m.into_iter().collect()
        };
        blocks.sort();
        Ok(Plan { target, sources, parts: parts.to_vec(), blocks })
    }

    /// Dimension of g(k) inside a block (differs from the coordinate count
    /// only for h_{g,1}).
    fn block_target(&self, rows: usize) -> usize {
        if self.target.algebra() == Algebra::LieSymp {
            self.target.len()
        } else {
            rows
        }
    }

    /// Calls `f` on every column of the block in a fixed order, with rows
    /// renumbered locally; stops when `f` returns false.
    pub fn for_each_column<F>(&self, block: usize, mut f: F) -> Result<()>
    where
        F: FnMut(SparseColumn) -> bool,
    {
        let (w, rows) = &self.blocks[block];
        let local: HashMap<u32, u32> = rows.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
        for &(i, j) in &self.parts {
            let (bi, ii) = &self.sources[&i];
            let (bj, ij) = &self.sources[&j];
            let mut alphas: Vec<(&Weight, &Vec<u32>)> = ii.weights().collect();
            alphas.sort();
            for (alpha, lefts) in alphas {
                let Some(rights) = ij.get(&sub_weight(w, alpha)) else { continue };
                for &a in lefts {
                    for &b in rights {
                        if i == j && b <= a {
                            continue;
                        }
                        let col = bi.bracket_column(a as usize, bj, b as usize, &self.target)?;
                        if col.is_empty() {
                            continue;
                        }
                        let col: SparseColumn = col.into_iter().map(|(r, c)| (local[&r], c)).collect();
                        if !f(col) {
                            return Ok(());
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn block_hasher(&self, block: usize) -> Sha256 {
        let mut h = Sha256::new();
        h.update(format!("{:?}", self.blocks[block].0));
        h
    }

    /// Digest of the first `limit` columns of a block.
    pub fn block_digest(&self, block: usize, limit: usize) -> Result<[u8; 32]> {
        let mut h = self.block_hasher(block);
        let mut n = 0;
        if limit > 0 {
            self.for_each_column(block, |col| {
                hash_column(&mut h, &col);
                n += 1;
                n < limit
            })?;
        }
        Ok(h.finalize().into())
    }

    pub fn run_block(&self, block: usize, ring: &Ring, guard: usize) -> Result<BlockOutcome> {
        let rows = self.blocks[block].1.len();
        let target = self.block_target(rows);
        let mut engine = match ring {
            Ring::Z | Ring::Q => {
                if rows > guard {
                    return Err(Error::RangeGuard(format!("weight block with {rows} rows exceeds the exact-elimination guard {guard}")));
                }
                Engine::Lattice { l: IntegerLattice::new(rows), integral: *ring == Ring::Z }
            }
            Ring::ModP(ps) => Engine::ModP(ps.iter().map(|&p| EchelonModP::new(rows, p)).collect::<Result<_>>()?),
        };
        let mut hasher = self.block_hasher(block);
        let mut used = 0;
        let mut early_exit = engine.saturated(target);
        if !early_exit {
            self.for_each_column(block, |col| {
                hash_column(&mut hasher, &col);
                used += 1;
                engine.insert(&col);
                if engine.saturated(target) {
                    early_exit = true;
                    return false;
                }
                true
            })?;
        }
        let (ranks, snf) = match &engine {
            Engine::Lattice { l, integral } => {
                let snf = integral.then(|| {
                    let s = l.snf();
                    SnfResult { rows: target, ..s }
                });
                (vec![l.rank()], snf)
            }
            Engine::ModP(es) => (es.iter().map(|e| e.rank()).collect(), None),
        };
        Ok(BlockOutcome { rows, used, early_exit, ranks, snf, digest: hasher.finalize().into() })
    }
}

fn hash_column(h: &mut Sha256, col: &SparseColumn) {
    for (r, c) in col {
        h.update(r.to_le_bytes());
        h.update(c.to_le_bytes());
    }
    h.update([0xff]);
}

/// Combined digest of the block column streams, in block order.
pub(crate) fn combine_digests(outs: &[BlockOutcome]) -> String {
    combine_digests_raw(&outs.iter().map(|o| o.digest).collect::<Vec<_>>())
}

pub(crate) fn combine_digests_raw(ds: &[[u8; 32]]) -> String {
    let mut h = Sha256::new();
    for d in ds {
        h.update(d);
    }
    hex::encode(h.finalize())
}

/// Computes the weight-k part of the abelianization.
pub fn h1_weight(cfg: &H1Config) -> Result<H1Report> {
    h1_weight_detailed(cfg).map(|(r, _)| r)
}

/// As [`h1_weight`], also returning the columns consumed per block.
pub(crate) fn h1_weight_detailed(cfg: &H1Config) -> Result<(H1Report, Vec<usize>)> {
    let start = Instant::now();
    let parts = cfg.resolved_partitions()?;
    if let Ring::ModP(ps) = &cfg.ring {
        if ps.is_empty() {
            return Err(Error::InvalidParameter("no primes given".into()));
        }
        if let Some(&p) = ps.iter().find(|&&p| !super::linalg::is_prime(p) || p >= 1 << 31) {
            return Err(Error::NotPrime(p));
        }
    }
    let plan = Plan::new(cfg.algebra, cfg.size, cfg.k, &parts)?;
    let outs: Vec<BlockOutcome> =
        (0..plan.blocks.len()).into_par_iter().map(|b| plan.run_block(b, &cfg.ring, cfg.block_guard)).collect::<Result<_>>()?;
    let target_dim = plan.target.len();
    for (o, (w, _)) in outs.iter().zip(&plan.blocks) {
        if o.ranks.windows(2).any(|p| p[0] != p[1]) {
            return Err(Error::Disagreement(format!("ranks {:?} differ across primes in weight block {w:?}", o.ranks)));
        }
    }
    let span_rank: usize = outs.iter().map(|o| o.ranks[0]).sum();
    let corank = target_dim - span_rank;
    let (mut free_rank, mut torsion, mut q_dimension, mut fp_dimension) = (None, Vec::new(), None, None);
    let description = match &cfg.ring {
        Ring::Z => {
            let parts: Vec<SnfResult> = outs.iter().filter_map(|o| o.snf.clone()).collect();
            let snf = SnfResult::direct_sum(&parts);
            free_rank = Some(snf.free_rank());
            torsion = snf.torsion().iter().map(|t| format!("Z/{t}")).collect();
            q_dimension = Some(snf.free_rank());
            snf.cokernel_string()
        }
        Ring::Q => {
            q_dimension = Some(corank);
            if corank == 0 { "0".into() } else { format!("Q^{corank}") }
        }
        Ring::ModP(_) => {
            fp_dimension = Some(corank);
            if corank == 0 {
                // full rank mod p forces full rank over Q
                q_dimension = Some(0);
                "0".into()
            } else {
                format!("F_p^{corank}")
            }
        }
    };
    let used = outs.iter().map(|o| o.used).collect();
    let report = H1Report {
        algebra: cfg.algebra,
        size: cfg.size,
        k: cfg.k,
        mode: cfg.mode,
        ring: cfg.ring.to_string(),
        partitions: parts,
        target_dim,
        span_rank,
        free_rank,
        torsion,
        q_dimension,
        fp_dimension,
        description,
        blocks: outs.len(),
        largest_block: outs.iter().map(|o| o.rows).max().unwrap_or(0),
        early_exit_blocks: outs.iter().filter(|o| o.early_exit).count(),
        columns_used: outs.iter().map(|o| o.used).sum(),
        column_digest: combine_digests(&outs),
        evidence: "finite-instance evidence at the stated size and weight".into(),
        wall_time_ms: start.elapsed().as_millis(),
        cache_hit: false,
    };
    Ok((report, used))
}

fn components(m: &SpanMatrix) -> Vec<(Vec<u32>, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..m.rows).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in &m.cols {
        if let Some(&(r0, _)) = c.first() {
            for &(r, _) in &c[1..] {
                let (a, b) = (find(&mut parent, r0 as usize), find(&mut parent, r as usize));
                parent[a] = b;
            }
        }
    }
    let mut rows: HashMap<usize, Vec<u32>> = HashMap::new();
    for r in 0..m.rows {
        let root = find(&mut parent, r);
        rows.entry(root).or_default().push(r as u32);
    }
    let mut cols: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, c) in m.cols.iter().enumerate() {
        if let Some(&(r0, _)) = c.first() {
            let root = find(&mut parent, r0 as usize);
            cols.entry(root).or_default().push(j);
        }
    }
    let mut out: Vec<(Vec<u32>, Vec<usize>)> =
        rows.into_iter().map(|(root, rs)| (rs, cols.remove(&root).unwrap_or_default())).collect();
    out.sort();
    out
}

/// Smith normal form of a span, computed per connected component of its
/// row/column incidence. `guard` caps the rows of one component.
pub fn smith_normal_form(m: &SpanMatrix, guard: usize) -> Result<SnfResult> {
    let comps = components(m);
    if let Some((rs, _)) = comps.iter().find(|(rs, _)| rs.len() > guard) {
        return Err(Error::RangeGuard(format!("component with {} rows exceeds the SNF guard {guard}", rs.len())));
    }
    let parts: Vec<SnfResult> = comps
        .par_iter()
        .map(|(rs, cs)| {
            let local: HashMap<u32, u32> = rs.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
            let mut l = IntegerLattice::new(rs.len());
            for &j in cs {
                let col: SparseColumn = m.cols[j].iter().map(|&(r, c)| (local[&r], c)).collect();
                l.insert_sparse(&col);
                if l.is_unimodular() {
                    break;
                }
            }
            l.snf()
        })
        .collect();
    let snf = SnfResult::direct_sum(&parts);
    Ok(SnfResult { rows: m.target_dim, ..snf })
}

/// Rank of the span over F_p; stops early once the span fills g(k).
pub fn rank_mod_p(m: &SpanMatrix, p: u64) -> Result<(usize, bool)> {
    let mut e = EchelonModP::new(m.rows, p)?;
    for (j, c) in m.cols.iter().enumerate() {
        e.insert(c);
        if e.rank() == m.target_dim {
            return Ok((e.rank(), j + 1 < m.cols.len()));
        }
    }
    Ok((e.rank(), false))
}

/// Exact rank over Q of a span.
pub fn rational_span_rank(m: &SpanMatrix) -> usize {
    components(m)
        .par_iter()
        .map(|(rs, cs)| {
            let local: HashMap<u32, u32> = rs.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
            let mut l = IntegerLattice::new(rs.len());
            for &j in cs {
                l.insert_sparse(&m.cols[j].iter().map(|&(r, c)| (local[&r], c)).collect::<Vec<_>>());
                if l.rank() == rs.len() {
                    break;
                }
            }
            l.rank()
        })
        .sum()
}
