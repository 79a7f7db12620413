use std::collections::BTreeMap;

use derilab::diagrams::*;
use derilab::symplectic::{bracket_spider, spider_coordinates, SignedColor, Spider, SpiderComb};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sp(c: &[SignedColor]) -> Spider {
    Spider::new(c).unwrap()
}

fn coords(terms: &[(Spider, i64)]) -> BTreeMap<Spider, i64> {
    let mut comb = SpiderComb::new();
    for (s, c) in terms {
        derilab::symplectic::add_spider(&mut comb, s.clone(), *c);
    }
    spider_coordinates(&comb)
}

fn bracket_coords(u: &Spider, v: &Spider, c: i64) -> Vec<(Spider, i64)> {
    bracket_spider(u, v).into_iter().map(|(s, d)| (s, c * d)).collect()
}

fn random_spider(rng: &mut ChaCha8Rng, len: usize, g: i64) -> Spider {
    let w: Vec<SignedColor> = (0..len)
        .map(|_| {
            let c = rng.gen_range(1..=g);
            if rng.gen_bool(0.5) {
                c
            } else {
                -c
            }
        })
        .collect();
    sp(&w)
}

fn chain_pattern(m: usize, pattern: u8) -> Vec<SignedColor> {
    let mut w = vec![1];
    for i in 2..=m as i64 {
        w.push(i);
        w.push(-(i - 1));
    }
    let (cm, d1, d2) = (m as i64, m as i64 + 1, m as i64 + 2);
    match pattern {
        1 => w.extend([d1, -cm, d2]),
        2 => w.extend([d1, -cm]),
        3 => w.extend([-cm, d2]),
        _ => w.push(-cm),
    }
    w
}

#[test]
fn eight_leg_diagram() {
    let s = sp(&[1, 4, -2, -1, 3, -1, 2, 1]);
    let c = chord_diagram_of(&s);
    assert_eq!(c.chords().len(), 5);
    assert_eq!(c.chorded_vertices(), 6);
    assert_eq!(multiplicity(&c), 4);
    for (x, v) in c.colors().iter().zip(classify_vertices(&c)) {
        let want = match x.abs() {
            1 => VertexClass::MultiplePaired,
            2 => VertexClass::SinglePaired,
            _ => VertexClass::Unpaired,
        };
        assert_eq!(v, want, "color {x}");
    }
}

#[test]
fn small_diagrams() {
    assert_eq!(chord_diagram_of(&sp(&[1, 2, 3])).chords().len(), 0);
    assert_eq!(chord_diagram_of(&sp(&[1, -1])).chords().len(), 1);
    let c = chord_diagram_of(&sp(&[1, 1, -1]));
    assert_eq!((c.chords().len(), c.chorded_vertices(), multiplicity(&c)), (2, 3, 1));
    assert!(classify_vertices(&c).iter().all(|&v| v == VertexClass::MultiplePaired));
    let c = chord_diagram_of(&sp(&[1, -1, 2]));
    for (x, v) in c.colors().iter().zip(classify_vertices(&c)) {
        let want = if *x == 2 { VertexClass::Unpaired } else { VertexClass::SinglePaired };
        assert_eq!(v, want);
    }
    // no multiple-paired vertices: multiplicity zero
    for w in [vec![1, 2, -1, -2], vec![1, 2, 3, -3], vec![1, -2, 3, 2, -1, -3]] {
        assert_eq!(multiplicity(&chord_diagram_of(&sp(&w))), 0);
    }
}

#[test]
fn separability_examples() {
    assert!(is_separable(&chord_diagram_of(&sp(&[1, 2, -1, -2]))).is_none());
    assert!(is_separable(&chord_diagram_of(&sp(&[1, 2, 3, 4]))).is_some());
    let nested = sp(&[1, 2, -2, 3, -3, -1]);
    let c = chord_diagram_of(&nested);
    let arc = is_separable(&c).unwrap();
    let (l, r) = split_separable(&c, arc, 4, 6).unwrap();
    assert_eq!(coords(&bracket_coords(&l, &r, 1)), coords(&[(nested, 1)]));
}

#[test]
fn split_of_unpaired_square() {
    let s = sp(&[1, 2, 3, 4]);
    let c = chord_diagram_of(&s);
    let (left, right) = split_separable(&c, Arc { start: 2, end: 0 }, 5, 6).unwrap();
    assert_eq!(left, sp(&[5, 1, 2]));
    assert_eq!(right, sp(&[3, 4, -5]));
    assert_eq!(bracket_spider(&left, &right), SpiderComb::from([(s.clone(), 1)]));
    assert_eq!(bracket_spider(&right, &left), SpiderComb::from([(s, -1)]));
    assert!(split_separable(&c, Arc { start: 2, end: 0 }, 7, 6).is_err());
    assert!(split_separable(&c, Arc { start: 2, end: 0 }, 3, 6).is_err());
    assert!(split_separable(&c, Arc { start: 1, end: 2 }, 5, 6).is_err());
}

#[test]
fn split_random_separable() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = 0;
    for _ in 0..400 {
        let len = rng.gen_range(4..=8);
        let s = random_spider(&mut rng, len, 3);
        let c = chord_diagram_of(&s);
        if let Some(arc) = is_separable(&c) {
            let (l, r) = split_separable(&c, arc, 4, 8).unwrap();
            assert_eq!(coords(&bracket_coords(&l, &r, 1)), coords(&[(s, 1)]));
            seen += 1;
        }
    }
    assert!(seen > 50);
}

#[test]
fn standard_form_examples() {
    let f = is_standard_form(&chord_diagram_of(&sp(&[1, 2, -1, -2]))).unwrap();
    assert_eq!((f.pattern, f.chords), (4, 2));
    assert!(is_standard_form(&chord_diagram_of(&sp(&[1, -1, 2, -2]))).is_none());
    let f = is_standard_form(&chord_diagram_of(&sp(&[1, 2, -1, 3, -2, 4, -3, -4]))).unwrap();
    assert_eq!((f.pattern, f.chords), (4, 4));
    for m in 1..6 {
        for p in 1..=4u8 {
            let f = is_standard_form(&chord_diagram_of(&sp(&chain_pattern(m, p)))).unwrap();
            assert_eq!((f.pattern, f.chords), (p, m));
        }
    }
    // a repeated color is never standard
    assert!(is_standard_form(&chord_diagram_of(&sp(&[1, 2, -1, 3, -2, 3]))).is_none());
}

#[test]
fn inner_boundary_parity() {
    for l in 2..=8 {
        for p in 1..=4u8 {
            let c = chord_diagram_of(&sp(&chain_pattern(l, p)));
            let want = if l % 2 == 0 { 1 } else { 2 };
            assert_eq!(inner_boundary_components(&c).unwrap(), want, "l={l} pattern {p}");
        }
    }
    assert!(inner_boundary_components(&chord_diagram_of(&sp(&[1, 1, -1]))).is_err());
}

#[test]
fn mirror_examples() {
    assert_eq!(mirror(&sp(&[1, 2, -1])), sp(&[-1, 2, 1]));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let (a, b) = (rng.gen_range(2..6), rng.gen_range(2..6));
        let u = random_spider(&mut rng, a, 3);
        let v = random_spider(&mut rng, b, 3);
        assert_eq!(mirror(&mirror(&u)), u);
        let lhs: SpiderComb = bracket_spider(&mirror(&u), &mirror(&v));
        let mut rhs = SpiderComb::new();
        for (s, c) in bracket_spider(&u, &v) {
            derilab::symplectic::add_spider(&mut rhs, mirror(&s), c);
        }
        assert_eq!(lhs, rhs);
    }
}

/// The three basic slide identities, written out literally.
fn basic_slides(n: SignedColor) -> Vec<(Vec<SignedColor>, BracketTerm, Vec<(Vec<SignedColor>, i64)>)> {
    let (i, j) = (1i64, 2i64);
    let (x, y, z) = (3i64, 4i64, 5i64);
    let sg = |a: i64| a.signum();
    let br = |l: Vec<i64>, r: Vec<i64>| BracketTerm { left: sp(&l), right: sp(&r), coeff: sg(n) };
    vec![
        (
            vec![x, i, j, y, -j, z, -i],
            br(vec![x, n, y, -j, z, -i], vec![i, j, -n]),
            vec![(vec![x, n, y, -j, z, j, -n], sg(n * i)), (vec![x, n, y, -n, i, z, -i], sg(n * j))],
        ),
        (
            vec![x, i, j, y, -i, z, -j],
            br(vec![x, n, y, -i, z, -j], vec![i, j, -n]),
            vec![(vec![x, n, y, -i, z, -n, i], sg(n * i)), (vec![x, n, y, j, -n, z, -j], sg(n * j))],
        ),
        (vec![x, i, j, y, -i], br(vec![x, n, y, -i], vec![i, j, -n]), vec![(vec![x, n, y, j, -n], sg(n * i))]),
    ]
}

#[test]
fn chord_slide_equalities() {
    for n in [6, -6] {
        for (lhs, bracket, rest) in basic_slides(n) {
            let s = sp(&lhs);
            let mut expected = ReductionCertificate::empty(s.clone());
            expected.brackets.push(bracket.clone());
            expected.remainder = rest.iter().map(|(w, c)| (sp(w), *c)).collect();
            expected.audit().unwrap();
            // the slide at the vertices i, j reproduces the literal terms
            let colors = s.colors();
            let site = (0..colors.len()).find(|&p| colors[p] == 1 && colors[(p + 1) % colors.len()] == 2).unwrap();
            let cert = chord_slide(&s, site, n, 6).unwrap();
            cert.audit().unwrap();
            let got: BTreeMap<_, _> = cert.brackets.iter().map(|b| ((b.left.clone(), b.right.clone()), b.coeff)).collect();
            assert_eq!(got, BTreeMap::from([((bracket.left, bracket.right), bracket.coeff)]));
            assert_eq!(coords(&cert.remainder), coords(&expected.remainder));
            // the chord ±i no longer appears in the corrections of the last case
            if rest.len() == 1 {
                assert!(cert.remainder[0].0.colors().iter().all(|c| c.abs() != 1));
            }
        }
    }
}

#[test]
fn slide_rejections() {
    let s = sp(&[1, 1, -1, 2, 3]);
    assert!(chord_slide(&s, 0, 6, 6).is_err());
    let t = sp(&[3, 1, 2, 4, -1]);
    let site = t.colors().iter().position(|&c| c == 1).unwrap();
    assert!(chord_slide(&t, site, 7, 6).is_err());
    assert!(chord_slide(&t, site, 3, 6).is_err());
}

#[test]
fn slide_there_and_back() {
    let s = sp(&[3, 1, 2, 4, -1]);
    let w = s.colors();
    let site = (0..w.len()).find(|&p| w[p] == 1).unwrap();
    let mut cert = chord_slide(&s, site, 5, 6).unwrap();
    assert_eq!(cert.remainder.len(), 1);
    let t = cert.remainder[0].0.clone();
    // slide the unpaired 2 back over the new chord, using −1 as new color
    let tw = t.colors();
    let back_site = (0..tw.len()).find(|&p| tw[p] == 2).unwrap();
    let back = chord_slide(&t, back_site, -1, 6).unwrap();
    cert.substitute(&back).unwrap();
    cert.audit().unwrap();
    assert_eq!(cert.remainder, vec![(s, 1)]);
}

#[test]
fn cut_fragments_balance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let len = rng.gen_range(3..9);
        let s = random_spider(&mut rng, len, 4);
        let start = rng.gen_range(0..len);
        let l = rng.gen_range(1..len);
        let cert = cut(&s, start, l, if rng.gen_bool(0.5) { 5 } else { -5 }).unwrap();
        cert.audit().unwrap();
    }
}

#[test]
fn cycling_odd_chains_reach_the_image() {
    for m in [3, 5, 7] {
        for p in [4u8, 3] {
            let s = sp(&chain_pattern(m, p));
            let g = (s.max_index() + m).max(6);
            let r = chord_cycle(&s, g).unwrap();
            r.certificate.audit().unwrap();
            assert_eq!(r.outcome, CycleOutcome::InImage, "m={m} pattern {p}");
            assert!(r.certificate.remainder.is_empty());
            assert_eq!(r.sites.len(), (m - 1) / 2);
        }
    }
    let r = chord_cycle(&sp(&chain_pattern(3, 4)), 6).unwrap();
    assert_eq!(r.outcome, CycleOutcome::InImage);
    // with a single white vertex ignored
    let s = sp(&chain_pattern(5, 2));
    let r = chord_cycle(&s, 10).unwrap();
    r.certificate.audit().unwrap();
    assert_eq!(r.outcome, CycleOutcome::InImage);
}

#[test]
fn cycling_even_chains_end_in_standard_form() {
    for m in [4, 6, 8] {
        let s = sp(&chain_pattern(m, 4));
        let r = chord_cycle(&s, 2 * m + 1).unwrap();
        r.certificate.audit().unwrap();
        let CycleOutcome::Standard(t) = &r.outcome else { panic!("m={m}: {:?}", r.outcome) };
        let f = is_standard_form(&chord_diagram_of(t)).unwrap();
        assert_eq!((f.pattern, f.chords), (4, m));
        let chain: Vec<i64> = f.chain.iter().map(|c| c.abs()).collect();
        // the cycled sequence reads c2, n3, c4, …, c_m, c1 starting somewhere
        let start = chain.iter().position(|&c| c == 2).unwrap();
        let seq: Vec<i64> = chain[start..].iter().chain(&chain[..start]).copied().collect();
        assert_eq!(*seq.last().unwrap(), 1);
        for (idx, &c) in seq[..m - 1].iter().enumerate() {
            if idx % 2 == 0 {
                assert_eq!(c, idx as i64 + 2);
            } else {
                assert!(c > m as i64, "fresh color expected, got {c}");
            }
        }
        // recoloring the chain to 1..m gives back a standard form of the same shape
        let relabel: BTreeMap<i64, i64> = seq.iter().enumerate().map(|(i, &c)| (c, i as i64 + 1)).collect();
        let tw: Vec<i64> = t.colors().iter().map(|c| c.signum() * relabel[&c.abs()]).collect();
        let f2 = is_standard_form(&chord_diagram_of(&sp(&tw))).unwrap();
        assert_eq!(f2.chords, m);
    }
}

#[test]
fn cycling_needs_colors() {
    let s = sp(&chain_pattern(3, 4));
    assert!(chord_cycle(&s, 3).is_err());
    assert!(chord_cycle(&sp(&[1, 1, -1, 2]), 6).is_err());
}

#[test]
fn reduce_trivial_cases() {
    let s = sp(&[1, 2, -1, 3, -2, -3, 4]);
    let c = reduce_to_standard(&s, 8).unwrap();
    assert!(c.brackets.is_empty());
    assert_eq!(c.remainder, vec![(s, 1)]);
    let s = sp(&[1, 2, 3, 4, 5]);
    let c = reduce_to_standard(&s, 6).unwrap();
    assert_eq!(c.brackets.len(), 1);
    assert!(c.remainder.is_empty());
    c.audit().unwrap();
    assert!(matches!(reduce_to_standard(&s, 5), Err(derilab::Error::GenusTooSmall { .. })));
}

fn check_reduction(s: &Spider, g: usize) {
    let cert = reduce_to_standard(s, g).unwrap_or_else(|e| panic!("{s:?}: {e}"));
    cert.audit().unwrap_or_else(|e| panic!("{s:?}: {e}"));
    for (t, _) in &cert.remainder {
        assert!(is_standard_form(&chord_diagram_of(t)).is_some(), "{t:?}");
    }
    let m = multiplicity(&chord_diagram_of(s));
    assert!(cert.stats.max_multiplicity <= m);
    assert!(cert.stats.max_iiic <= m);
    assert!(cert.fresh_colors.iter().all(|&n| n > 0 && n as usize <= g));
}

#[test]
fn reduce_random_degree_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let s = random_spider(&mut rng, 5, 6);
        check_reduction(&s, 6);
    }
}

#[test]
fn reduce_longer_spiders() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for len in 6..=9 {
        for _ in 0..60 {
            let s = random_spider(&mut rng, len, 4);
            check_reduction(&s, len + 1);
        }
    }
    check_reduction(&sp(&[1, 4, -2, -1, 3, -1, 2, 1]), 9);
    check_reduction(&sp(&[1, 4, -2, -1, 3, -1, 2, 1]), 6);
    assert!(matches!(reduce_to_standard(&sp(&[1, 4, -2, -1, 3, -1, 2, 1]), 4), Err(derilab::Error::GenusTooSmall { required: 5, .. })));
}

#[test]
fn certificate_json_roundtrip() {
    let s = sp(&[1, 1, -1, 2, -2]);
    let c = reduce_to_standard(&s, 6).unwrap();
    let v = c.to_json().unwrap();
    let back: ReductionCertificate = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
}

fn brute_separable(w: &[SignedColor]) -> bool {
    let n = w.len();
    // every pair of gaps (i, j), i < j, splits the circle into [i, j) and the rest
    for i in 0..n {
        for j in i + 1..n {
            let inner = j - i;
            if inner < 2 || n - inner < 2 {
                continue;
            }
            let crosses = w.iter().enumerate().any(|(p, &x)| {
                (i..j).contains(&p) && w.iter().enumerate().any(|(q, &y)| y == -x && !(i..j).contains(&q))
            });
            if !crosses {
                return true;
            }
        }
    }
    false
}

fn spider_strategy(max_len: usize, g: i64) -> impl Strategy<Value = Vec<SignedColor>> {
    prop::collection::vec((1..=g, any::<bool>()).prop_map(|(c, s)| if s { c } else { -c }), 2..=max_len)
}

proptest! {
    #[test]
    fn separability_matches_brute_force(w in spider_strategy(10, 4)) {
        let s = sp(&w);
        let c = chord_diagram_of(&s);
        prop_assert_eq!(is_separable(&c).is_some(), brute_separable(c.colors()));
    }

    #[test]
    fn multiplicity_is_recoloring_invariant(w in spider_strategy(9, 4), perm in Just([3i64, 1, 4, 2]).prop_shuffle(), flips in prop::collection::vec(any::<bool>(), 4)) {
        let m = multiplicity(&chord_diagram_of(&sp(&w)));
        let re: Vec<i64> = w.iter().map(|&c| {
            let i = (c.abs() - 1) as usize;
            let f = if flips[i] { -1 } else { 1 };
            c.signum() * f * perm[i]
        }).collect();
        prop_assert_eq!(multiplicity(&chord_diagram_of(&sp(&re))), m);
        prop_assert_eq!(multiplicity(&chord_diagram_of(&mirror(&sp(&w)))), m);
    }

    #[test]
    fn mirror_is_involution(w in spider_strategy(9, 3)) {
        let s = sp(&w);
        prop_assert_eq!(mirror(&mirror(&s)), s);
    }
}
