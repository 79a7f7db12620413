use std::collections::HashSet;

use crate::symplectic::{SignedColor, Spider};
use crate::{Error, Result};

/// The vertex sequence of a spider (canonical rotation) with its chords:
/// every pair of vertices whose colors differ by sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    colors: Vec<SignedColor>,
    chords: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Unpaired,
    SinglePaired,
    MultiplePaired,
}

/// An arc between two gaps of the outer circle. Gap `i` sits just before
/// vertex `i`; the arc cuts off the vertices `start, start+1, …, end−1`
/// (cyclically).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

/// A match of one of the four standard patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    /// Pattern id 1..=4 in the order: two, first, second or no white vertices.
    pub pattern: u8,
    /// Number of chain chords `m`.
    pub chords: usize,
    /// The rotation of the canonical word at which the pattern starts.
    pub rotation: usize,
    /// Chain colors `c₁, …, c_m` as they appear.
    pub chain: Vec<SignedColor>,
    /// Colors of the white (unpaired) vertices.
    pub white: Vec<SignedColor>,
}

/// The data of a diagram having the configuration F_l:
/// `S(c₁, c₂, −c₁, …, c_l, −c_{l−1}, X, −c_l, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationState {
    pub chain: Vec<SignedColor>,
    pub x: Vec<SignedColor>,
    pub y: Vec<SignedColor>,
    pub multiplicity_budget: usize,
}

impl ConfigurationState {
    /// Reads the F_l configuration off a rotated color word; `None` if the
    /// word does not have it.
    pub fn parse(w: &[SignedColor], l: usize, budget: usize) -> Option<Self> {
        if l == 0 || w.len() < 2 * l {
            return None;
        }
        let mut chain = vec![w[0]];
        for i in 2..=l {
            if w[2 * i - 2] != -chain[i - 2] {
                return None;
            }
            chain.push(w[2 * i - 3]);
        }
        let abs: HashSet<u64> = chain.iter().map(|c| c.unsigned_abs()).collect();
        if abs.len() != l {
            return None;
        }
        let rest = &w[2 * l - 1..];
        let cl = chain[l - 1];
        if rest.iter().filter(|&&x| x == -cl).count() != 1 {
            return None;
        }
        let j = rest.iter().position(|&x| x == -cl)?;
        let (x, y) = (rest[..j].to_vec(), rest[j + 1..].to_vec());
        if x.iter().chain(&y).any(|c| abs.contains(&c.unsigned_abs())) {
            return None;
        }
        Some(ConfigurationState { chain, x, y, multiplicity_budget: budget })
    }
}

pub(crate) fn count(w: &[SignedColor], c: SignedColor) -> usize {
    w.iter().filter(|&&x| x == c).count()
}

pub(crate) fn vertex_classes(w: &[SignedColor]) -> Vec<VertexClass> {
    w.iter()
        .map(|&x| match (count(w, -x), count(w, x)) {
            (0, _) => VertexClass::Unpaired,
            (1, 1) => VertexClass::SinglePaired,
            _ => VertexClass::MultiplePaired,
        })
        .collect()
}

pub(crate) fn mult_of(w: &[SignedColor]) -> usize {
    let mut seen = HashSet::new();
    let (mut chords, mut vertices) = (0, 0);
    for &x in w {
        let a = x.unsigned_abs();
        if !seen.insert(a) {
            continue;
        }
        let (p, q) = (count(w, a as i64), count(w, -(a as i64)));
        chords += p * q;
        if p > 0 && q > 0 {
            vertices += p + q;
        }
    }
    2 * chords - vertices
}

/// First admissible `(start, len)` region: `2 ≤ len ≤ L−2`, closed under the
/// chord relation.
pub(crate) fn separable_region(w: &[SignedColor]) -> Option<(usize, usize)> {
    let n = w.len();
    if n < 4 {
        return None;
    }
    for len in 2..=n - 2 {
        for start in 0..n {
            let inside = |i: usize| (i + n - start) % n < len;
            let ok = (0..len).all(|d| {
                let i = (start + d) % n;
                (0..n).all(|j| w[j] != -w[i] || inside(j))
            });
            if ok {
                return Some((start, len));
            }
        }
    }
    None
}

pub(crate) fn rotate(w: &[SignedColor], r: usize) -> Vec<SignedColor> {
    w[r..].iter().chain(&w[..r]).copied().collect()
}

pub(crate) fn standard_of(w: &[SignedColor]) -> Option<StandardForm> {
    let n = w.len();
    for r in 0..n {
        let v = rotate(w, r);
        for m in 1..=n / 2 {
            let pre = 2 * m - 1;
            if pre > n {
                break;
            }
            let mut chain = vec![v[0]];
            let mut ok = true;
            for i in 2..=m {
                if v[2 * i - 2] != -chain[i - 2] {
                    ok = false;
                    break;
                }
                chain.push(v[2 * i - 3]);
            }
            if !ok {
                continue;
            }
            let tail = &v[pre..];
            let cm = chain[m - 1];
            let cand: Option<(u8, Vec<SignedColor>)> = match tail.len() {
                3 if tail[1] == -cm => Some((1, vec![tail[0], tail[2]])),
                2 if tail[1] == -cm => Some((2, vec![tail[0]])),
                2 if tail[0] == -cm => Some((3, vec![tail[1]])),
                1 if tail[0] == -cm => Some((4, vec![])),
                _ => None,
            };
            if let Some((pattern, white)) = cand {
                let abs: Vec<u64> = chain.iter().chain(&white).map(|c| c.unsigned_abs()).collect();
                let distinct: HashSet<_> = abs.iter().collect();
                if distinct.len() == abs.len() {
                    return Some(StandardForm { pattern, chords: m, rotation: r, chain, white });
                }
            }
        }
    }
    None
}

impl ChordDiagram {
    pub fn colors(&self) -> &[SignedColor] {
        &self.colors
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of vertices touched by at least one chord.
    pub fn chorded_vertices(&self) -> usize {
        let s: HashSet<usize> = self.chords.iter().flat_map(|&(a, b)| [a, b]).collect();
        s.len()
    }

    pub fn to_spider(&self) -> Spider {
        Spider::new(&self.colors).expect("diagram built from a spider")
    }
}

pub fn chord_diagram_of(s: &Spider) -> ChordDiagram {
    let colors = s.colors();
    let n = colors.len();
    let mut chords = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if colors[i] == -colors[j] {
                chords.push((i, j));
            }
        }
    }
    ChordDiagram { colors, chords }
}

/// `m(C) = 2·#chords − #chorded vertices`.
pub fn multiplicity(c: &ChordDiagram) -> usize {
    2 * c.chords.len() - c.chorded_vertices()
}

pub fn classify_vertices(c: &ChordDiagram) -> Vec<VertexClass> {
    vertex_classes(&c.colors)
}

pub fn is_separable(c: &ChordDiagram) -> Option<Arc> {
    let n = c.len();
    separable_region(&c.colors).map(|(start, len)| Arc { start, end: (start + len) % n })
}

/// Cuts along an admissible arc, closing both pieces with a new chord of
/// color `fresh`. Returns `(S(A, n), S(−n, B))` where `B` is the region cut
/// off by the arc; their bracket is the input spider.
pub fn split_separable(c: &ChordDiagram, arc: Arc, fresh: SignedColor, genus: usize) -> Result<(Spider, Spider)> {
    let n = c.len();
    if fresh <= 0 {
        return Err(Error::InvalidParameter("fresh color must be positive".into()));
    }
    if fresh as usize > genus {
        return Err(Error::NoFreshColor { genus });
    }
    if c.colors.iter().any(|x| x.unsigned_abs() == fresh as u64) {
        return Err(Error::InvalidParameter(format!("color {fresh} is not fresh")));
    }
    if arc.start >= n || arc.end >= n {
        return Err(Error::BadArc("gap index out of range".into()));
    }
    let len = (arc.end + n - arc.start) % n;
    if len < 2 || n - len < 2 {
        return Err(Error::BadArc("each side needs at least two vertices".into()));
    }
    let v = rotate(&c.colors, arc.start);
    let (b, a) = v.split_at(len);
    if b.iter().any(|x| a.contains(&-x)) {
        return Err(Error::BadArc("a chord crosses the arc".into()));
    }
    let mut left = a.to_vec();
    left.push(fresh);
    let mut right = vec![-fresh];
    right.extend_from_slice(b);
    Ok((Spider::new(&left)?, Spider::new(&right)?))
}

pub fn is_standard_form(c: &ChordDiagram) -> Option<StandardForm> {
    standard_of(&c.colors)
}

/// The spider with its legs in reverse order.
pub fn mirror(s: &Spider) -> Spider {
    let mut c = s.colors();
    c.reverse();
    Spider::new(&c).expect("reversal keeps a valid spider")
}

/// Number of inner boundary components of the fattened standard-form
/// diagram, found by walking the boundary (chord crossings ignored; white
/// vertices do not break arcs).
pub fn inner_boundary_components(c: &ChordDiagram) -> Result<usize> {
    let sf = is_standard_form(c).ok_or(Error::NotStandardForm)?;
    if sf.chords < 2 {
        return Err(Error::InvalidParameter("need at least two chords".into()));
    }
    // keep only chorded vertices, in circle order
    let verts: Vec<usize> = (0..c.len()).filter(|&i| c.chords.iter().any(|&(a, b)| a == i || b == i)).collect();
    let n = verts.len();
    let pos = |v: usize| verts.iter().position(|&x| x == v).expect("chorded vertex");
    let mut partner = vec![0; n];
    for &(a, b) in &c.chords {
        partner[pos(a)] = pos(b);
        partner[pos(b)] = pos(a);
    }
    // arc i runs from vertex i to vertex i+1 on the inner side; at the end of
    // an arc the boundary follows the chord and continues from the partner
    let mut seen = vec![false; n];
    let mut components = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        let mut a = s;
        while !seen[a] {
            seen[a] = true;
            a = partner[(a + 1) % n];
        }
    }
    Ok(components)
}
