use serde::{Deserialize, Serialize};

use super::h1::{h1_weight, H1Config, Mode, Ring};
use super::span::{all_partitions, Algebra, Partition};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub k: usize,
    pub target_dim: usize,
    /// Span rank using `(k−1, 1)` only.
    pub rank_k1: usize,
    /// Span rank using `(k−1, 1)` and `(k−2, 2)`.
    pub rank_k1_k2: usize,
    /// Span rank using every positive partition.
    pub rank_all: usize,
    pub k1_spans_image: bool,
    pub k1_k2_spans_image: bool,
}

fn rank(algebra: Algebra, size: usize, k: usize, parts: Vec<Partition>, ring: &Ring) -> Result<(usize, usize)> {
    let r = h1_weight(&H1Config::new(algebra, size, k, Mode::Plus, ring.clone()).with_partitions(parts))?;
    Ok((r.span_rank, r.target_dim))
}

/// For each weight `2 ≤ k ≤ max_degree`, which partition subsets already
/// span the positive bracket image.
pub fn generation_profile(algebra: Algebra, size: usize, max_degree: usize, ring: &Ring) -> Result<Vec<ProfileRow>> {
    let mut rows = Vec::new();
    for k in 2..=max_degree {
        let (r1, dim) = rank(algebra, size, k, vec![(k - 1, 1)], ring)?;
        let mut p12 = vec![(k - 1, 1)];
        if k >= 3 {
            p12.push((k - 2, 2));
        }
        let (r12, _) = rank(algebra, size, k, p12, ring)?;
        let (ra, _) = rank(algebra, size, k, all_partitions(k, false), ring)?;
        if !(r1 <= r12 && r12 <= ra) {
            return Err(Error::Disagreement(format!("span ranks not monotone at k={k}: {r1}, {r12}, {ra}")));
        }
        rows.push(ProfileRow {
            k,
            target_dim: dim,
            rank_k1: r1,
            rank_k1_k2: r12,
            rank_all: ra,
            k1_spans_image: r1 == ra,
            k1_k2_spans_image: r12 == ra,
        });
    }
    Ok(rows)
}
