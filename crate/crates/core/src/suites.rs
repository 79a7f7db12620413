//! Seeded property suites behind `derilab verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::derivations::{
    apply_assoc, assoc_basis, bracket_assoc, bracket_by_composition, bracket_lie_der, contraction_c13, identity_derivation,
    lie_der_basis, monomials, phi_k, trace_tr_k, AssocDerivation, LieDerivation,
};
use crate::diagrams::{chord_slide, mirror, BracketTerm, ReductionCertificate};
use crate::free_algebra::{TensorElement, Word};
use crate::symplectic::{add_spider, bracket_spider, SignedColor, Spider, SpiderComb, SympDerivation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Traces,
    Spiders,
    Slides,
    Mirror,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Identities, Suite::Traces, Suite::Spiders, Suite::Slides, Suite::Mirror];
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "traces" => Ok(Suite::Traces),
            "spiders" => Ok(Suite::Spiders),
            "slides" => Ok(Suite::Slides),
            "mirror" => Ok(Suite::Mirror),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyTally {
    pub property: String,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub properties: Vec<PropertyTally>,
    /// Serialized failing cases (at most a few per property).
    pub failing_cases: Vec<String>,
}

impl SuiteReport {
    pub fn checks(&self) -> usize {
        self.properties.iter().map(|p| p.checks).sum()
    }

    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

struct Recorder {
    report: SuiteReport,
}

impl Recorder {
    fn check(&mut self, property: &str, ok: bool, case: impl FnOnce() -> String) {
        let tallies = &mut self.report.properties;
        let idx = match tallies.iter().position(|t| t.property == property) {
            Some(i) => i,
            None => {
                tallies.push(PropertyTally { property: property.into(), checks: 0, failures: 0 });
                tallies.len() - 1
            }
        };
        tallies[idx].checks += 1;
        if !ok {
            tallies[idx].failures += 1;
            if tallies[idx].failures <= 3 {
                self.report.failing_cases.push(format!("{property}: {}", case()));
            }
        }
    }

    fn check_result(&mut self, property: &str, r: Result<bool>, case: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(property, ok, case),
            Err(e) => self.check(property, false, || format!("{} (error: {e})", case())),
        }
    }
}

fn random_assoc(rng: &mut ChaCha8Rng, n: usize, k: usize) -> AssocDerivation<i64> {
    let basis = assoc_basis(n, k);
    let terms: Vec<_> =
        (0..rng.gen_range(1..4)).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), rng.gen_range(-3..=3))).collect();
    AssocDerivation::new(n, k, terms).expect("basis terms")
}

fn random_lie(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LieDerivation<i64> {
    let basis = lie_der_basis(n, k).expect("n >= 2");
    let terms: Vec<_> =
        (0..rng.gen_range(1..4)).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), rng.gen_range(-3..=3))).collect();
    LieDerivation::new(n, k, terms).expect("basis terms")
}

fn random_tensor(rng: &mut ChaCha8Rng, n: usize) -> TensorElement<i64> {
    let terms: Vec<_> = (0..rng.gen_range(1..4))
        .map(|_| {
            let len = rng.gen_range(1..4);
            let l: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=n as u8)).collect();
            (Word::from(l), rng.gen_range(-3..=3))
        })
        .collect();
    TensorElement::from_terms(terms)
}

fn random_spider(rng: &mut ChaCha8Rng, len: usize, g: i64) -> Spider {
    let w: Vec<SignedColor> =
        (0..len).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=g) } else { -rng.gen_range(1..=g) }).collect();
    Spider::new(&w).expect("valid colors")
}

const TRIALS: usize = 200;

fn identities(r: &mut Recorder, rng: &mut ChaCha8Rng) {
    for _ in 0..TRIALS {
        let n = rng.gen_range(2..4);
        let (p, q, s) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..2));
        let (f, g, h) = (random_assoc(rng, n, p), random_assoc(rng, n, q), random_assoc(rng, n, s));
        let (a, b) = (random_tensor(rng, n), random_tensor(rng, n));
        r.check_result(
            "leibniz",
            (|| {
                let lhs = apply_assoc(&f, &a.mul(&b))?;
                Ok(lhs == apply_assoc(&f, &a)?.mul(&b).add(&a.mul(&apply_assoc(&f, &b)?)))
            })(),
            || format!("{f:?} on {a:?}·{b:?}"),
        );
        r.check_result(
            "bracket-vs-composition",
            (|| Ok(bracket_assoc(&f, &g)? == bracket_by_composition(&f, &g)?))(),
            || format!("{f:?}, {g:?}"),
        );
        r.check_result("antisymmetry", (|| Ok(bracket_assoc(&f, &g)?.add(&bracket_assoc(&g, &f)?)?.is_zero()))(), || {
            format!("{f:?}, {g:?}")
        });
        r.check_result(
            "jacobi",
            (|| {
                let j = bracket_assoc(&bracket_assoc(&f, &g)?, &h)?
                    .add(&bracket_assoc(&bracket_assoc(&g, &h)?, &f)?)?
                    .add(&bracket_assoc(&bracket_assoc(&h, &f)?, &g)?)?;
                Ok(j.is_zero())
            })(),
            || format!("{f:?}, {g:?}, {h:?}"),
        );
        let (u, v) = (random_assoc(rng, n, 1), random_assoc(rng, n, 1));
        r.check_result("c13-on-brackets", (|| Ok(contraction_c13(&bracket_assoc(&u, &v)?)?.is_zero()))(), || {
            format!("{u:?}, {v:?}")
        });
        r.check_result(
            "identity-derivation",
            (|| Ok(bracket_assoc(&identity_derivation(n)?, &f)? == f.scale(&(p as i64))))(),
            || format!("{f:?}"),
        );
        let (dx, dy) = (rng.gen_range(0..3), rng.gen_range(1..3));
        let (x, y) = (random_lie(rng, n, dx), random_lie(rng, n, dy));
        r.check_result(
            "lie-bracket-vs-composition",
            (|| Ok(bracket_lie_der(&x, &y)?.to_assoc() == bracket_by_composition(&x.to_assoc(), &y.to_assoc())?))(),
            || format!("{x:?}, {y:?}"),
        );
    }
}

fn traces(r: &mut Recorder, rng: &mut ChaCha8Rng) {
    for _ in 0..TRIALS {
        let n = rng.gen_range(2..6);
        let k = rng.gen_range(2..4);
        let p = rng.gen_range(1..k);
        let (f, g) = (random_lie(rng, n, p), random_lie(rng, n, k - p));
        r.check_result("trace-on-brackets", (|| Ok(trace_tr_k(&bracket_lie_der(&f, &g)?).is_empty()))(), || {
            format!("{f:?}, {g:?}")
        });
    }
    for n in 4..=5 {
        for k in 2..=3 {
            if n < k + 1 {
                continue;
            }
            for m in monomials(n, k) {
                r.check_result(
                    "trace-of-phi",
                    (|| {
                        let t = trace_tr_k(&phi_k::<i64>(&m, n)?);
                        Ok(t.len() == 1 && t.get(&m) == Some(&1))
                    })(),
                    || format!("{m:?} at n={n}"),
                );
            }
        }
    }
}

fn spiders(r: &mut Recorder, rng: &mut ChaCha8Rng) {
    for _ in 0..TRIALS {
        let g = rng.gen_range(2..4);
        let (a, b) = (rng.gen_range(2..6), rng.gen_range(2..6));
        let (u, v) = (random_spider(rng, a, g as i64), random_spider(rng, b, g as i64));
        r.check_result(
            "spider-bracket-vs-tensor",
            (|| {
                let lhs = SympDerivation::<i64>::from_comb(&bracket_spider(&u, &v), g, a + b - 4)?;
                let rhs = SympDerivation::<i64>::from_spider(&u, g)?.bracket(&SympDerivation::from_spider(&v, g)?)?;
                Ok(lhs == rhs)
            })(),
            || format!("{u:?}, {v:?}"),
        );
    }
}

/// A random instance of each of the three basic slide shapes; returns the spider, the
/// literal bracket term and correction terms.
fn slide_instances(rng: &mut ChaCha8Rng, g: usize) -> Vec<(Spider, BracketTerm, Vec<(Vec<SignedColor>, i64)>)> {
    let sign = |x: i64| x.signum();
    // i, j > 0, a signed n and up to three signed white colors, all distinct
    let mut pool: Vec<i64> = (1..=g as i64).collect();
    for i in (1..pool.len()).rev() {
        let j = rng.gen_range(0..=i);
        pool.swap(i, j);
    }
    let flip = |rng: &mut ChaCha8Rng, c: i64| if rng.gen_bool(0.5) { c } else { -c };
    let (i, j) = (pool[0], pool[1]);
    let n = flip(rng, pool[2]);
    let whites: Vec<i64> = pool[3..g.min(6)].iter().map(|&c| flip(rng, c)).collect();
    let mut segs: Vec<Vec<i64>> = vec![Vec::new(); 3];
    for &c in &whites {
        segs[rng.gen_range(0..3)].push(c);
    }
    let (x, y, z) = (&segs[0], &segs[1], &segs[2]);
    let cat = |parts: &[&[i64]]| parts.concat();
    let br = |l: Vec<i64>| BracketTerm { left: Spider::new(&l).unwrap(), right: Spider::new(&[i, j, -n]).unwrap(), coeff: sign(n) };
    let mut out = vec![
        (
            cat(&[x, &[i, j], y, &[-j], z, &[-i]]),
            br(cat(&[x, &[n], y, &[-j], z, &[-i]])),
            vec![(cat(&[x, &[n], y, &[-j], z, &[j, -n]]), sign(n * i)), (cat(&[x, &[n], y, &[-n, i], z, &[-i]]), sign(n * j))],
        ),
        (
            cat(&[x, &[i, j], y, &[-i], z, &[-j]]),
            br(cat(&[x, &[n], y, &[-i], z, &[-j]])),
            vec![(cat(&[x, &[n], y, &[-i], z, &[-n, i]]), sign(n * i)), (cat(&[x, &[n], y, &[j, -n], z, &[-j]]), sign(n * j))],
        ),
    ];
    let mut xy = x.clone();
    xy.extend(z.iter());
    out.push((cat(&[&xy, &[i, j], y, &[-i]]), br(cat(&[&xy, &[n], y, &[-i]])), vec![(cat(&[&xy, &[n], y, &[j, -n]]), sign(n * i))]));
    out.into_iter().map(|(w, b, c)| (Spider::new(&w).unwrap(), b, c)).collect()
}

fn slides(r: &mut Recorder, rng: &mut ChaCha8Rng, g: usize) -> Result<()> {
    if g < 4 {
        return Err(Error::GenusTooSmall { genus: g, required: 4 });
    }
    for _ in 0..TRIALS / 2 {
        for (s, bracket, rest) in slide_instances(rng, g) {
            let mut lit = ReductionCertificate::empty(s.clone());
            lit.brackets.push(bracket.clone());
            for (w, c) in &rest {
                lit.remainder.push((Spider::new(w)?, *c));
            }
            r.check("slide-identity-balances", lit.audit().is_ok(), || format!("{s:?}"));
            let i = bracket.right.colors();
            let w = s.colors();
            let sites: Vec<usize> =
                (0..w.len()).filter(|&p| i.contains(&w[p]) && i.contains(&w[(p + 1) % w.len()]) && w[p] != -w[(p + 1) % w.len()]).collect();
            let n = -bracket.right.colors().into_iter().find(|c| !w.contains(c)).expect("new color");
            let ok = sites.iter().any(|&p| {
                chord_slide(&s, p, n, g).is_ok_and(|c| {
                    c.audit().is_ok()
                        && c.brackets.len() == 1
                        && c.brackets[0].coeff * bracket_sign(&c.brackets[0], &bracket) == bracket.coeff
                })
            });
            r.check("slide-reproduces-identity-terms", ok, || format!("{s:?} with new color {n}"));
        }
    }
    Ok(())
}

/// +1 if two bracket terms have the same spiders, −1 if swapped, 0 otherwise.
fn bracket_sign(a: &BracketTerm, b: &BracketTerm) -> i64 {
    if a.left == b.left && a.right == b.right {
        1
    } else if a.left == b.right && a.right == b.left {
        -1
    } else {
        0
    }
}

fn mirrors(r: &mut Recorder, rng: &mut ChaCha8Rng) {
    for _ in 0..TRIALS {
        let (a, b) = (rng.gen_range(2..6), rng.gen_range(2..6));
        let (u, v) = (random_spider(rng, a, 3), random_spider(rng, b, 3));
        r.check("mirror-involution", mirror(&mirror(&u)) == u, || format!("{u:?}"));
        let lhs = bracket_spider(&mirror(&u), &mirror(&v));
        let mut rhs = SpiderComb::new();
        for (s, c) in bracket_spider(&u, &v) {
            add_spider(&mut rhs, mirror(&s), c);
        }
        r.check("mirror-bracket-law", lhs == rhs, || format!("{u:?}, {v:?}"));
    }
}

/// Runs one suite; `genus` is used by the slide suite (default 6).
pub fn run_suite(suite: Suite, seed: u64, genus: Option<usize>) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Recorder { report: SuiteReport { suite, seed, properties: Vec::new(), failing_cases: Vec::new() } };
    match suite {
        Suite::Identities => identities(&mut r, &mut rng),
        Suite::Traces => traces(&mut r, &mut rng),
        Suite::Spiders => spiders(&mut r, &mut rng),
        Suite::Slides => slides(&mut r, &mut rng, genus.unwrap_or(6))?,
        Suite::Mirror => mirrors(&mut r, &mut rng),
    }
    Ok(r.report)
}
