use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::cut::CutPieces;
use crate::free_algebra::Letter;
use crate::symplectic::{bracket_spider, SignedColor, Spider};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketTerm {
    pub left: Spider,
    pub right: Spider,
    pub coeff: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStats {
    pub steps: usize,
    pub input_multiplicity: usize,
    pub max_multiplicity: usize,
    pub max_iiic: usize,
    pub fallback_cuts: usize,
}

/// `input = Σ coeff·[left, right] + Σ coeff·remainder`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub input: Spider,
    pub brackets: Vec<BracketTerm>,
    pub remainder: Vec<(Spider, i64)>,
    pub fresh_colors: Vec<SignedColor>,
    pub stats: TraceStats,
}

type Tensor = HashMap<SmallVec<[Letter; 16]>, i64>;

fn add_rotations(t: &mut Tensor, s: &Spider, c: i64) {
    let codes = s.codes();
    let n = codes.len();
    for j in 0..n {
        let mut w: SmallVec<[Letter; 16]> = SmallVec::new();
        w.extend_from_slice(&codes[j..]);
        w.extend_from_slice(&codes[..j]);
        *t.entry(w).or_insert(0) += c;
    }
}

impl ReductionCertificate {
    pub fn empty(input: Spider) -> Self {
        ReductionCertificate { input, brackets: Vec::new(), remainder: Vec::new(), fresh_colors: Vec::new(), stats: TraceStats::default() }
    }

    pub(crate) fn push_bracket(&mut self, left: Spider, right: Spider, coeff: i64) {
        if coeff != 0 {
            self.brackets.push(BracketTerm { left, right, coeff });
        }
    }

    pub(crate) fn push_cut(&mut self, p: &CutPieces, scale: i64) -> Result<()> {
        self.push_bracket(Spider::new(&p.left)?, Spider::new(&p.right)?, scale * p.coeff);
        Ok(())
    }

    pub(crate) fn push_remainder(&mut self, s: Spider, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if let Some(e) = self.remainder.iter_mut().find(|(t, _)| *t == s) {
            e.1 += coeff;
        } else {
            self.remainder.push((s, coeff));
        }
        self.remainder.retain(|(_, c)| *c != 0);
    }

    pub(crate) fn log_fresh(&mut self, n: SignedColor) {
        if !self.fresh_colors.contains(&n) {
            self.fresh_colors.push(n);
        }
    }

    /// `input − Σ brackets − Σ remainder`, expanded in the tensor algebra;
    /// the certificate is sound iff this is empty.
    pub fn residual(&self) -> Vec<(Vec<SignedColor>, i64)> {
        let mut t = Tensor::new();
        add_rotations(&mut t, &self.input, 1);
        for b in &self.brackets {
            for (s, c) in bracket_spider(&b.left, &b.right) {
                add_rotations(&mut t, &s, -b.coeff * c);
            }
        }
        for (s, c) in &self.remainder {
            add_rotations(&mut t, s, -c);
        }
        let mut out: Vec<_> = t
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(w, c)| (w.iter().map(|&x| crate::symplectic::color_of(x)).collect(), c))
            .collect();
        out.sort();
        out
    }

    pub fn audit(&self) -> Result<()> {
        let r = self.residual();
        if r.is_empty() {
            Ok(())
        } else {
            Err(Error::Disagreement(format!("certificate residual has {} nonzero tensor terms", r.len())))
        }
    }

    /// Replaces the remainder term `target` by the contents of `other`, a
    /// certificate for that spider.
    pub fn substitute(&mut self, other: &ReductionCertificate) -> Result<()> {
        let pos = self
            .remainder
            .iter()
            .position(|(s, _)| *s == other.input)
            .ok_or_else(|| Error::InvalidParameter("spider is not in the remainder".into()))?;
        let (_, c) = self.remainder.remove(pos);
        for b in &other.brackets {
            self.push_bracket(b.left.clone(), b.right.clone(), c * b.coeff);
        }
        for (s, d) in &other.remainder {
            self.push_remainder(s.clone(), c * d);
        }
        for &n in &other.fresh_colors {
            self.log_fresh(n);
        }
        self.stats.steps += other.stats.steps;
        Ok(())
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(self)?)
    }
}
