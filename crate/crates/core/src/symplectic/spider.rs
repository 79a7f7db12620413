use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::{color_of, letter_of, SignedColor};
use crate::free_algebra::{Letter, TensorElement, Word};
use crate::ring::Coeff;
use crate::{Error, Result};

/// A cyclic word of signed colors, stored as its lexicographically minimal
/// rotation in the letter order `1 < −1 < 2 < −2 < …`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spider {
    codes: SmallVec<[Letter; 16]>,
}

/// A finite combination of spiders `S(w)` (each a full rotation sum).
pub type SpiderComb = BTreeMap<Spider, i64>;

fn min_rotation(v: &[Letter]) -> SmallVec<[Letter; 16]> {
    let n = v.len();
    let mut best = 0;
    for i in 1..n {
        for j in 0..n {
            let a = v[(i + j) % n];
            let b = v[(best + j) % n];
            if a != b {
                if a < b {
                    best = i;
                }
                break;
            }
        }
    }
    let mut out = SmallVec::with_capacity(n);
    out.extend_from_slice(&v[best..]);
    out.extend_from_slice(&v[..best]);
    out
}

impl Spider {
    /// Builds the spider from a cyclic color sequence (any rotation).
    pub fn new(colors: &[SignedColor]) -> Result<Self> {
        if colors.len() < 2 {
            return Err(Error::InvalidParameter("a spider needs at least two legs".into()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c.abs() > 127) {
            return Err(Error::ColorOutOfRange { color: c, genus: 127 });
        }
        let codes: Vec<Letter> = colors.iter().map(|&c| letter_of(c)).collect();
        Ok(Self::from_codes(&codes))
    }

    /// As [`Spider::new`], also checking the colors against genus `g`.
    pub fn with_genus(colors: &[SignedColor], g: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c.unsigned_abs() as usize > g) {
            return Err(Error::ColorOutOfRange { color: c, genus: g });
        }
        Self::new(colors)
    }

    pub(crate) fn from_codes(codes: &[Letter]) -> Self {
        Spider { codes: min_rotation(codes) }
    }

    pub fn codes(&self) -> &[Letter] {
        &self.codes
    }

    pub fn colors(&self) -> Vec<SignedColor> {
        self.codes.iter().map(|&x| color_of(x)).collect()
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Degree `k` of the spider's class in a_g(k): number of legs minus two.
    pub fn degree(&self) -> usize {
        self.codes.len() - 2
    }

    /// Smallest `p > 0` with the word invariant under rotation by `p`.
    pub fn period(&self) -> usize {
        let n = self.codes.len();
        (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| self.codes[i] == self.codes[(i + p) % n]))
            .unwrap_or(n)
    }

    /// Largest `|color|` occurring.
    pub fn max_index(&self) -> usize {
        self.colors().iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn check_genus(&self, g: usize) -> Result<()> {
        match self.colors().into_iter().find(|c| c.unsigned_abs() as usize > g) {
            Some(c) => Err(Error::ColorOutOfRange { color: c, genus: g }),
            None => Ok(()),
        }
    }

    /// Parses comma-separated signed integers, e.g. `1,4,-2,-1`.
    pub fn parse(s: &str) -> Result<Self> {
        let colors = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&colors)
    }

    /// Weight `#i − #(−i)` per color index.
    pub fn weight(&self, g: usize) -> Vec<i32> {
        super::word_weight(&self.codes, g)
    }
}

impl std::fmt::Debug for Spider {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S(")?;
        for (i, c) in self.colors().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl std::fmt::Display for Spider {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.colors().iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Adds `c·s` into a combination, dropping cancelled entries.
pub fn add_spider(comb: &mut SpiderComb, s: Spider, c: i64) {
    use std::collections::btree_map::Entry;
    if c == 0 {
        return;
    }
    match comb.entry(s) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_codes(comb: &mut SpiderComb, codes: &[Letter], c: i64) {
    add_spider(comb, Spider::from_codes(codes), c)
}
/// Bracket of spiders: contract every leg pair `(p, q)` with opposite colors,
/// with sign `μ(u_p, v_q)`, splicing the remaining legs cyclically.
pub fn bracket_spider(u: &Spider, v: &Spider) -> SpiderComb {
    let mut out = SpiderComb::new();
    bracket_codes_into(&u.codes, &v.codes, 1, &mut out);
    out
}

pub(crate) fn bracket_codes_into(u: &[Letter], v: &[Letter], scale: i64, out: &mut SpiderComb) {
    let mut buf: SmallVec<[Letter; 16]> = SmallVec::new();
    for (p, &x) in u.iter().enumerate() {
        let px = super::partner_letter(x);
        let sign = if x % 2 == 1 { 1 } else { -1 };
        for (q, &y) in v.iter().enumerate() {
            if y != px {
                continue;
            }
            buf.clear();
            buf.extend_from_slice(&u[p + 1..]);
            buf.extend_from_slice(&u[..p]);
            buf.extend_from_slice(&v[q + 1..]);
            buf.extend_from_slice(&v[..q]);
            add_codes(out, &buf, sign * scale);
        }
    }
}

/// `S(i₁, …, i_m) = Σ_j σ^j(a_{i₁} ⊗ ⋯ ⊗ a_{i_m})`.
pub fn spider_to_tensor<R: Coeff>(s: &Spider) -> TensorElement<R> {
    let c = &s.codes;
    let n = c.len();
    TensorElement::from_terms((0..n).map(|j| {
        let mut w = Word::default();
        w.0.extend_from_slice(&c[j..]);
        w.0.extend_from_slice(&c[..j]);
        (w, R::one())
    }))
}

/// Coordinates of a spider combination in the primitive-orbit basis:
/// `S(w) = (len / period)·N(w)`.
pub fn spider_coordinates(comb: &SpiderComb) -> BTreeMap<Spider, i64> {
    comb.iter()
        .map(|(s, c)| (s.clone(), c * (s.len() / s.period()) as i64))
        .filter(|(_, c)| *c != 0)
        .collect()
}

/// One canonical spider per necklace of length `k+2` over the `2g` signed
/// colors (Fredricksen–Kessler–Maiorana generation), in lexicographic order.
pub fn a_basis(g: usize, k: usize) -> Result<Vec<Spider>> {
    if g < 1 {
        return Err(Error::InvalidParameter("genus must be at least 1".into()));
    }
    if 2 * g > Letter::MAX as usize {
        return Err(Error::InvalidParameter(format!("genus {g} too large")));
    }
    let n = k + 2;
    let q = (2 * g) as Letter;
    let mut out = Vec::new();
    let mut a = vec![0 as Letter; n + 1];
    // 1-based FKM over letters 1..=q stored in a[1..=n]; a[0] is a sentinel.
    fn gen(t: usize, p: usize, n: usize, q: Letter, a: &mut Vec<Letter>, out: &mut Vec<Spider>) {
        if t > n {
            if n.is_multiple_of(p) {
                out.push(Spider { codes: SmallVec::from_slice(&a[1..=n]) });
            }
            return;
        }
        a[t] = a[t - p];
        gen(t + 1, p, n, q, a, out);
        let lo = a[t - p] + 1;
        for j in lo..=q {
            a[t] = j;
            gen(t + 1, t, n, q, a, out);
        }
    }
    // a[t - p] with p = 1 at t = 1 reads the sentinel; letters start at 1.
    a[0] = 0;
    for first in 1..=q {
        a[1] = first;
        gen(2, 1, n, q, &mut a, &mut out);
    }
    Ok(out)
}

/// Burnside count of necklaces of length `len` over `q` letters.
pub fn burnside_count(q: u64, len: u64) -> u64 {
    fn phi(mut n: u64) -> u64 {
        let mut r = n;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                while n.is_multiple_of(p) {
                    n /= p;
                }
                r -= r / p;
            }
            p += 1;
        }
        if n > 1 {
            r -= r / n;
        }
        r
    }
    let s: u128 = (1..=len).filter(|d| len.is_multiple_of(*d)).map(|d| phi(d) as u128 * (q as u128).pow((len / d) as u32)).sum();
    (s / len as u128) as u64
}

impl serde::Serialize for Spider {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.colors())
    }
}

impl<'de> serde::Deserialize<'de> for Spider {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let colors = Vec::<SignedColor>::deserialize(d)?;
        Spider::new(&colors).map_err(serde::de::Error::custom)
    }
}
