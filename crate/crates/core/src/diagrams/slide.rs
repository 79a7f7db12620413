use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::certificate::ReductionCertificate;
use super::chord::{rotate, separable_region, standard_of, vertex_classes, VertexClass};
use super::cut::cut_raw;
use super::reduce::fresh_for;
use crate::symplectic::{SignedColor, Spider};
use crate::{Error, Result};

/// Slides the chord ends at vertices `site` and `site+1` (canonical order)
/// past each other, introducing the chord of color `fresh`. The certificate
/// holds the bracket term and the correction spiders.
pub fn chord_slide(s: &Spider, site: usize, fresh: SignedColor, genus: usize) -> Result<ReductionCertificate> {
    let w = s.colors();
    let len = w.len();
    if site >= len {
        return Err(Error::SiteShape(format!("site {site} on a spider of length {len}")));
    }
    if fresh == 0 || fresh.unsigned_abs() as usize > genus {
        return Err(Error::NoFreshColor { genus });
    }
    if w.iter().any(|c| c.unsigned_abs() == fresh.unsigned_abs()) {
        return Err(Error::InvalidParameter(format!("color {fresh} is not fresh")));
    }
    let cls = vertex_classes(&w);
    let (a, b) = (cls[site], cls[(site + 1) % len]);
    use VertexClass::*;
    let ok = matches!((a, b), (SinglePaired, SinglePaired) | (SinglePaired, Unpaired) | (Unpaired, SinglePaired))
        && w[site] != -w[(site + 1) % len];
    if !ok {
        return Err(Error::SiteShape(format!("vertices {site}, {} are {a:?}/{b:?}", (site + 1) % len)));
    }
    let p = cut_raw(&w, site, 2, fresh);
    let mut cert = ReductionCertificate::empty(s.clone());
    cert.push_cut(&p, 1)?;
    for (t, c) in &p.corrections {
        cert.push_remainder(Spider::new(t)?, *c);
    }
    cert.log_fresh(fresh);
    cert.stats.steps = 1;
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleOutcome {
    /// Every diagram reached is separable: the input lies in the bracket image.
    InImage,
    /// The marked chord ended beside the last chain chord in this standard form.
    Standard(Spider),
    /// No slide makes progress from this diagram.
    Stuck(Spider),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordCycle {
    pub certificate: ReductionCertificate,
    pub outcome: CycleOutcome,
    /// The regions cut at each slide.
    pub sites: Vec<Vec<SignedColor>>,
}

type Graph = BTreeMap<u64, BTreeSet<u64>>;

fn crossing_graph(w: &[SignedColor]) -> Graph {
    let mut ends: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] == -w[j] {
                ends.insert(w[i].unsigned_abs(), (i, j));
            }
        }
    }
    ends.iter()
        .map(|(&c, &(a, b))| {
            let set = ends
                .iter()
                .filter(|&(&d, &(x, y))| d != c && ((a < x && x < b) != (a < y && y < b)))
                .map(|(&d, _)| d)
                .collect();
            (c, set)
        })
        .collect()
}

fn distance(g: &Graph, from: u64, to: u64, skip: u64) -> Option<usize> {
    let mut seen = BTreeSet::from([from]);
    let mut q = VecDeque::from([(from, 0)]);
    while let Some((u, d)) = q.pop_front() {
        if u == to {
            return Some(d);
        }
        for &v in g.get(&u).into_iter().flatten() {
            if v != skip && seen.insert(v) {
                q.push_back((v, d + 1));
            }
        }
    }
    None
}

/// The chain of a standard form, white vertices dropped.
fn chain_of(w: &[SignedColor]) -> Option<Vec<SignedColor>> {
    let cls = vertex_classes(w);
    let bare: Vec<SignedColor> = w.iter().zip(&cls).filter(|(_, &c)| c != VertexClass::Unpaired).map(|(&x, _)| x).collect();
    if bare.len() < 2 {
        return None;
    }
    standard_of(&bare).map(|sf| sf.chain)
}

fn only_crossing(g: &Graph, c: u64) -> Option<u64> {
    let s = g.get(&c)?;
    (s.len() == 1).then(|| *s.iter().next().expect("one element"))
}

/// Repeatedly slides the first chain chord along the chain of a standard
/// form (white vertices ignored), keeping the certificate.
pub fn chord_cycle(s: &Spider, genus: usize) -> Result<ChordCycle> {
    let w0 = s.colors();
    let chain = chain_of(&w0).ok_or(Error::NotStandardForm)?;
    s.check_genus(genus)?;
    let marked = chain[0].unsigned_abs();
    let target = chain[chain.len() - 1].unsigned_abs();
    let mut cert = ReductionCertificate::empty(s.clone());
    let mut sites = Vec::new();
    let w_in = w0.clone();
    let (mut cur, mut coeff) = (w0, 1i64);
    let limit = 4 * cur.len();
    if chain.len() < 3 {
        cert.push_remainder(s.clone(), 1);
        return Ok(ChordCycle { certificate: cert, outcome: CycleOutcome::Stuck(s.clone()), sites });
    }
    for _ in 0..limit {
        let g = crossing_graph(&cur);
        let cross = only_crossing(&g, marked)
            .ok_or_else(|| Error::SiteShape("the marked chord must cross exactly one chord".into()))?;
        let dist_now = distance(&g, cross, target, marked);
        // new colors avoid the input's colors as well as the current ones
        let used: Vec<SignedColor> = cur.iter().chain(&w_in).copied().collect();
        let n = fresh_for(&used, genus)?;
        let cls = vertex_classes(&cur);
        let paired: Vec<usize> = (0..cur.len()).filter(|&i| cls[i] == VertexClass::SinglePaired).collect();
        let mut chosen = None;
        for (idx, &p) in paired.iter().enumerate() {
            let q = paired[(idx + 1) % paired.len()];
            if cur[p].unsigned_abs() != marked && cur[q].unsigned_abs() != marked {
                continue;
            }
            let len = (q + cur.len() - p) % cur.len() + 1;
            let pieces = cut_raw(&cur, p, len, n);
            let nonsep: Vec<&(Vec<SignedColor>, i64)> =
                pieces.corrections.iter().filter(|(t, _)| separable_region(t).is_none()).collect();
            let accept = match nonsep.as_slice() {
                [] => Some(None),
                [(t, _)] => {
                    let g2 = crossing_graph(t);
                    match only_crossing(&g2, marked) {
                        Some(x) if x == target && standard_of(t).is_some() => Some(Some(true)),
                        Some(x) if g2.contains_key(&target) => {
                            match (distance(&g2, x, target, marked), dist_now) {
                                (Some(d2), Some(d)) if d2 < d => Some(Some(false)),
                                _ => None,
                            }
                        }
                        _ => None,
                    }
                }
                _ => None,
            };
            if let Some(a) = accept {
                chosen = Some((rotate(&cur, p)[..len].to_vec(), pieces, a));
                break;
            }
        }
        let Some((site, pieces, kind)) = chosen else {
            cert.push_remainder(Spider::new(&cur)?, coeff);
            return Ok(ChordCycle { certificate: cert, outcome: CycleOutcome::Stuck(Spider::new(&cur)?), sites });
        };
        sites.push(site);
        cert.stats.steps += 1;
        cert.push_cut(&pieces, coeff)?;
        cert.log_fresh(n);
        let mut next = None;
        for (t, c) in pieces.corrections {
            if let Some((start, len)) = separable_region(&t) {
                let m = fresh_for(&t, genus)?;
                let p = cut_raw(&t, start, len, m);
                cert.push_cut(&p, coeff * c)?;
                cert.log_fresh(m);
            } else {
                next = Some((t, coeff * c));
            }
        }
        match (kind, next) {
            (None, _) => return Ok(ChordCycle { certificate: cert, outcome: CycleOutcome::InImage, sites }),
            (Some(true), Some((t, c))) => {
                let t = Spider::new(&t)?;
                cert.push_remainder(t.clone(), c);
                return Ok(ChordCycle { certificate: cert, outcome: CycleOutcome::Standard(t), sites });
            }
            (Some(false), Some((t, c))) => {
                cur = t;
                coeff = c;
            }
            _ => unreachable!("accepted slides keep exactly one diagram"),
        }
    }
    Err(Error::Budget(format!("chord cycling exceeded {limit} slides")))
}
