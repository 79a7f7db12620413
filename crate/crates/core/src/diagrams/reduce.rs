use super::certificate::ReductionCertificate;
use super::chord::{mult_of, rotate, separable_region, standard_of, vertex_classes, ConfigurationState, VertexClass};
use super::cut::{cut_raw, CutPieces};
use crate::symplectic::{SignedColor, Spider};
use crate::{Error, Result};

const FALLBACK_DEPTH: usize = 4;
const BUDGET_PER_VERTEX: usize = 5000;

/// Smallest positive index not used by `w`.
pub(crate) fn fresh_for(w: &[SignedColor], genus: usize) -> Result<SignedColor> {
    let n = (1..).find(|&n: &i64| !w.iter().any(|c| c.unsigned_abs() == n as u64)).expect("unbounded");
    if n as usize > genus {
        return Err(Error::NoFreshColor { genus });
    }
    Ok(n)
}

#[derive(Clone, Copy, Debug)]
enum Mode {
    /// Following the configuration F_l (`l = 0`: no chain chosen yet).
    Chain(usize),
    /// Replaying a bounded cut search that is known to terminate in
    /// standard or separable diagrams within this many further cuts.
    Fallback(usize),
}

struct Item {
    word: Vec<SignedColor>,
    mode: Mode,
    coeff: i64,
    iiic: usize,
}

struct Reducer {
    genus: usize,
    cert: ReductionCertificate,
    work: Vec<Item>,
}

fn done(w: &[SignedColor]) -> bool {
    standard_of(w).is_some() || separable_region(w).is_some()
}

/// Does some cut tree of adjacent-pair cuts of depth ≤ `depth` end in
/// standard or separable diagrams without raising the multiplicity?
fn search(w: &[SignedColor], depth: usize) -> bool {
    done(w) || (depth > 0 && fallback_site(w, depth).is_some())
}

fn fallback_site(w: &[SignedColor], depth: usize) -> Option<usize> {
    let m = mult_of(w);
    let n = fresh_for(w, usize::MAX).ok()?;
    (0..w.len()).find(|&p| {
        cut_raw(w, p, 2, n).corrections.iter().all(|(t, _)| mult_of(t) <= m && search(t, depth - 1))
    })
}

fn rotate_to(t: &[SignedColor], start: SignedColor) -> Vec<SignedColor> {
    let i = t.iter().position(|&x| x == start).expect("chain color survives the cut");
    rotate(t, i)
}

impl Reducer {
    fn emit(&mut self, pieces: &CutPieces, coeff: i64, fresh: SignedColor) -> Result<()> {
        self.cert.push_cut(pieces, coeff)?;
        self.cert.log_fresh(fresh);
        Ok(())
    }

    fn push(&mut self, word: Vec<SignedColor>, mode: Mode, coeff: i64, iiic: usize) {
        if coeff != 0 {
            self.work.push(Item { word, mode, coeff, iiic });
        }
    }

    fn expect_config(&self, t: &[SignedColor], l: usize, m0: usize) -> Result<()> {
        ConfigurationState::parse(t, l, m0)
            .map(|_| ())
            .ok_or_else(|| Error::Disagreement(format!("{t:?} does not have configuration F_{l}")))
    }

    fn step(&mut self, it: Item, m0: usize) -> Result<()> {
        let Item { word: w, mode, coeff: c, iiic } = it;
        if standard_of(&w).is_some() {
            self.cert.push_remainder(Spider::new(&w)?, c);
            return Ok(());
        }
        if let Some((start, len)) = separable_region(&w) {
            let n = fresh_for(&w, self.genus)?;
            let p = cut_raw(&w, start, len, n);
            debug_assert!(p.corrections.is_empty());
            return self.emit(&p, c, n);
        }
        let n = fresh_for(&w, self.genus)?;
        let classes = vertex_classes(&w);
        let l = match mode {
            Mode::Fallback(d) => return self.fallback(&w, d, c, iiic, n),
            Mode::Chain(l) => l,
        };
        if l == 0 {
            if let Some(i) = classes.iter().position(|&v| v == VertexClass::SinglePaired) {
                self.push(rotate(&w, i), Mode::Chain(1), c, iiic);
                return Ok(());
            }
            // no single-paired chord: cut off the first two vertices
            let p = cut_raw(&w, 0, 2, n);
            self.emit(&p, c, n)?;
            for (t, cc) in p.corrections {
                self.push(t, Mode::Chain(0), c * cc, iiic);
            }
            return Ok(());
        }
        let pre = 2 * l - 1;
        let cl = if l == 1 { w[0] } else { w[2 * l - 3] };
        let j = w[pre..].iter().position(|&x| x == -cl).expect("configuration F_l") + pre;
        let xlen = j - pre;
        if xlen >= 2 {
            let p = cut_raw(&w, pre, xlen, n);
            self.emit(&p, c, n)?;
            for (t, cc) in p.corrections {
                let t = rotate_to(&t, w[0]);
                self.expect_config(&t, l + 1, m0)?;
                self.push(t, Mode::Chain(l + 1), c * cc, iiic);
            }
            return Ok(());
        }
        if xlen == 1 {
            match classes[pre] {
                VertexClass::SinglePaired => {
                    self.push(w, Mode::Chain(l + 1), c, iiic);
                    return Ok(());
                }
                VertexClass::MultiplePaired => {
                    let p = cut_raw(&w, pre + 2, w.len() - pre - 2, n);
                    self.emit(&p, c, n)?;
                    let (start, nl) = if l > 1 { (w[0], l - 1) } else { (-w[0], 2) };
                    for (t, cc) in p.corrections {
                        let t = rotate_to(&t, start);
                        self.expect_config(&t, nl, m0)?;
                        self.push(t, Mode::Chain(nl), c * cc, iiic + 1);
                    }
                    return Ok(());
                }
                VertexClass::Unpaired => {}
            }
        }
        // an unpaired X beside a duplicated color: the chain argument does
        // not apply, so search a short cut tree instead
        let d = (1..=FALLBACK_DEPTH)
            .find(|&d| search(&w, d))
            .ok_or_else(|| Error::Budget(format!("no cut tree of depth ≤ {FALLBACK_DEPTH} for {w:?}")))?;
        self.fallback(&w, d, c, iiic, n)
    }

    fn fallback(&mut self, w: &[SignedColor], depth: usize, c: i64, iiic: usize, n: SignedColor) -> Result<()> {
        if depth == 0 {
            return Err(Error::Budget(format!("cut search exhausted at {w:?}")));
        }
        let p = fallback_site(w, depth).ok_or_else(|| Error::Budget(format!("cut search failed for {w:?}")))?;
        let pieces = cut_raw(w, p, 2, n);
        self.emit(&pieces, c, n)?;
        self.cert.stats.fallback_cuts += 1;
        for (t, cc) in pieces.corrections {
            self.push(t, Mode::Fallback(depth - 1), c * cc, iiic);
        }
        Ok(())
    }
}

/// Rewrites `s` as a sum of brackets plus spiders of standard form,
/// following the chain construction through configurations F_l.
pub fn reduce_to_standard(s: &Spider, genus: usize) -> Result<ReductionCertificate> {
    // at least one fresh color; g >= deg+3 is the range where fresh colors
    // are guaranteed, below it the run may end in NoFreshColor
    let used: std::collections::BTreeSet<u64> = s.colors().iter().map(|c| c.unsigned_abs()).collect();
    let required = used.len() + 1;
    if (1..=genus as u64).all(|c| used.contains(&c)) {
        return Err(Error::GenusTooSmall { genus, required });
    }
    s.check_genus(genus)?;
    let w = s.colors();
    let m0 = mult_of(&w);
    let budget = (w.len() + m0) * BUDGET_PER_VERTEX;
    let mut r = Reducer { genus, cert: ReductionCertificate::empty(s.clone()), work: Vec::new() };
    r.cert.stats.input_multiplicity = m0;
    r.push(w, Mode::Chain(0), 1, 0);
    while let Some(it) = r.work.pop() {
        let stats = &mut r.cert.stats;
        stats.steps += 1;
        if stats.steps > budget {
            return Err(Error::Budget(format!("reduction exceeded {budget} steps")));
        }
        let m = mult_of(&it.word);
        if m > m0 {
            return Err(Error::Disagreement(format!("multiplicity rose from {m0} to {m}")));
        }
        if it.iiic > m0 {
            return Err(Error::Disagreement(format!("case III-c applied {} times with m = {m0}", it.iiic)));
        }
        stats.max_multiplicity = stats.max_multiplicity.max(m);
        stats.max_iiic = stats.max_iiic.max(it.iiic);
        r.step(it, m0)?;
    }
    Ok(r.cert)
}
