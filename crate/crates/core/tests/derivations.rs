use derilab::derivations::*;
use derilab::free_algebra::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn w(l: &[u8]) -> Word {
    Word::new(l)
}

fn random_assoc(rng: &mut ChaCha8Rng, n: usize, k: usize) -> AssocDerivation<i64> {
    let basis = assoc_basis(n, k);
    let terms = (0..rng.gen_range(1..4)).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), rng.gen_range(-3..=3)));
    AssocDerivation::new(n, k, terms).unwrap()
}

fn random_lie_der(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LieDerivation<i64> {
    let basis = lie_der_basis(n, k).unwrap();
    let terms = (0..rng.gen_range(1..4)).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), rng.gen_range(-3..=3)));
    LieDerivation::new(n, k, terms).unwrap()
}

fn random_tensor(rng: &mut ChaCha8Rng, n: usize) -> TensorElement<i64> {
    TensorElement::from_terms((0..rng.gen_range(1..4)).map(|_| {
        let len = rng.gen_range(1..4);
        let l: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=n as u8)).collect();
        (Word::from(l), rng.gen_range(-3..=3))
    }))
}

#[test]
fn apply_examples() {
    let d = AssocDerivation::<i64>::basis(2, 1, w(&[1, 1])).unwrap();
    assert_eq!(apply_assoc(&d, &TensorElement::word(w(&[1]))).unwrap(), TensorElement::word(w(&[1, 1])));
    assert_eq!(apply_assoc(&d, &TensorElement::word(w(&[1, 2]))).unwrap(), TensorElement::word(w(&[1, 1, 2])));
    assert!(apply_assoc(&d, &TensorElement::word(w(&[3]))).is_err());
}

#[test]
fn leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let n = rng.gen_range(2..4);
        let k = rng.gen_range(0..3);
        let d = random_assoc(&mut rng, n, k);
        let (a, b) = (random_tensor(&mut rng, n), random_tensor(&mut rng, n));
        let lhs = apply_assoc(&d, &a.mul(&b)).unwrap();
        let rhs = apply_assoc(&d, &a).unwrap().mul(&b).add(&a.mul(&apply_assoc(&d, &b).unwrap()));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn bracket_assoc_example() {
    let f = AssocDerivation::<i64>::basis(3, 3, w(&[1, 2])).unwrap();
    let g = AssocDerivation::<i64>::basis(3, 3, w(&[3, 1])).unwrap();
    let b = bracket_assoc(&f, &g).unwrap();
    assert_eq!(b, AssocDerivation::basis(3, 3, w(&[1, 2, 1])).unwrap());
    assert!(bracket_assoc(&f, &f).unwrap().is_zero());
    let h = AssocDerivation::<i64>::basis(2, 1, w(&[1, 2])).unwrap();
    assert!(bracket_assoc(&f, &h).is_err());
}

#[test]
fn bracket_matches_composition_on_basis_pairs() {
    let n = 2;
    for p in 0..=4 {
        for q in 0..=(4 - p) {
            for a in assoc_basis(n, p) {
                for b in assoc_basis(n, q) {
                    let f = AssocDerivation::<i64>::new(n, p, [(a.clone(), 1)]).unwrap();
                    let g = AssocDerivation::<i64>::new(n, q, [(b.clone(), 1)]).unwrap();
                    assert_eq!(bracket_assoc(&f, &g).unwrap(), bracket_by_composition(&f, &g).unwrap());
                }
            }
        }
    }
}

#[test]
fn assoc_antisymmetry_and_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let n = rng.gen_range(2..4);
        let degs: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
        let f = random_assoc(&mut rng, n, degs[0]);
        let g = random_assoc(&mut rng, n, degs[1]);
        let h = random_assoc(&mut rng, n, degs[2]);
        let fg = bracket_assoc(&f, &g).unwrap();
        assert!(fg.add(&bracket_assoc(&g, &f).unwrap()).unwrap().is_zero());
        let j1 = bracket_assoc(&fg, &h).unwrap();
        let j2 = bracket_assoc(&bracket_assoc(&g, &h).unwrap(), &f).unwrap();
        let j3 = bracket_assoc(&bracket_assoc(&h, &f).unwrap(), &g).unwrap();
        assert!(j1.add(&j2).unwrap().add(&j3).unwrap().is_zero());
    }
}

#[test]
fn c13_examples_and_vanishing() {
    let f = AssocDerivation::<i64>::basis(3, 1, w(&[2, 1, 3])).unwrap();
    assert_eq!(contraction_c13(&f).unwrap(), TensorElement::word(w(&[2, 3])));
    let f = AssocDerivation::<i64>::basis(3, 1, w(&[2, 3, 2])).unwrap();
    assert!(contraction_c13(&f).unwrap().is_zero());
    assert!(contraction_c13(&AssocDerivation::<i64>::basis(3, 1, w(&[2, 3])).unwrap()).is_err());
    for n in 2..=3 {
        let basis = assoc_basis(n, 1);
        for a in &basis {
            for b in &basis {
                let f = AssocDerivation::<i64>::new(n, 1, [(a.clone(), 1)]).unwrap();
                let g = AssocDerivation::<i64>::new(n, 1, [(b.clone(), 1)]).unwrap();
                assert!(contraction_c13(&bracket_assoc(&f, &g).unwrap()).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn section_is_right_inverse() {
    let s = section_s(&TensorElement::<i64>::word(w(&[2, 3])), 3).unwrap();
    assert_eq!(s, AssocDerivation::basis(3, 1, w(&[2, 1, 3])).unwrap());
    for t in all_words(2, 2) {
        let t = TensorElement::<i64>::word(t);
        assert_eq!(contraction_c13(&section_s(&t, 2).unwrap()).unwrap(), t);
    }
    assert!(section_s(&TensorElement::<i64>::word(w(&[1])), 2).is_err());
}

#[test]
fn identity_derivation_scales_by_degree() {
    let i = identity_derivation::<i64>(2).unwrap();
    assert!(bracket_assoc(&i, &i).unwrap().is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..=4 {
        for _ in 0..20 {
            let n = rng.gen_range(2..4);
            let i = identity_derivation::<i64>(n).unwrap();
            let d = random_assoc(&mut rng, n, k);
            assert_eq!(bracket_assoc(&i, &d).unwrap(), d.scale(&(k as i64)));
        }
    }
}

#[test]
fn lie_der_bracket_example() {
    let f = LieDerivation::<i64>::basis(3, 3, w(&[1, 2])).unwrap();
    let g = LieDerivation::<i64>::new(3, 1, [((3, w(&[1, 3])), -1)]).unwrap();
    let b = bracket_lie_der(&f, &g).unwrap();
    // oracle: endomorphism commutator of the embedded derivations
    let oracle = bracket_by_composition(&f.to_assoc(), &g.to_assoc()).unwrap();
    assert_eq!(b.to_assoc(), oracle);
    let x = lie_bracket(&lie_bracket(&LieElement::<i64>::generator(1), &LieElement::generator(2)), &LieElement::generator(1));
    assert_eq!(b.images()[2], x);
    assert!(bracket_lie_der(&f, &f).unwrap().is_zero());
}

#[test]
fn lie_der_jacobi_and_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..500 {
        let n = rng.gen_range(2..4);
        let (f, g, h) = (random_lie_der(&mut rng, n, 1), random_lie_der(&mut rng, n, 1), random_lie_der(&mut rng, n, 2));
        let fg = bracket_lie_der(&f, &g).unwrap();
        assert!(fg.add(&bracket_lie_der(&g, &f).unwrap()).unwrap().is_zero());
        assert_eq!(fg.to_assoc(), bracket_assoc(&f.to_assoc(), &g.to_assoc()).unwrap());
        let j = bracket_lie_der(&fg, &h)
            .unwrap()
            .add(&bracket_lie_der(&bracket_lie_der(&g, &h).unwrap(), &f).unwrap())
            .unwrap()
            .add(&bracket_lie_der(&bracket_lie_der(&h, &f).unwrap(), &g).unwrap())
            .unwrap();
        assert!(j.is_zero());
    }
}

#[test]
fn trace_examples() {
    let x = |i| LieElement::<i64>::generator(i);
    let e = lie_bracket(&lie_bracket(&x(3), &x(1)), &x(2));
    let mut images = vec![LieElement::zero(); 3];
    images[2] = e;
    let f = LieDerivation::from_images(3, 2, &images).unwrap();
    let tr = trace_tr_k(&f);
    assert_eq!(tr.len(), 1);
    assert_eq!(tr[&SymmetricMonomial::new(&[1, 2])], 1);
    let e = lie_bracket(&lie_bracket(&x(2), &x(3)), &x(2));
    let mut images = vec![LieElement::zero(); 3];
    images[0] = e;
    assert!(trace_tr_k(&LieDerivation::from_images(3, 2, &images).unwrap()).is_empty());
}

#[test]
fn trace_vanishes_on_brackets() {
    let n = 3;
    for (p, q) in [(1, 1), (1, 2)] {
        let bp = lie_der_basis(n, p).unwrap();
        let bq = lie_der_basis(n, q).unwrap();
        for a in &bp {
            for b in &bq {
                let f = LieDerivation::<i64>::new(n, p, [(a.clone(), 1)]).unwrap();
                let g = LieDerivation::<i64>::new(n, q, [(b.clone(), 1)]).unwrap();
                assert!(trace_tr_k(&bracket_lie_der(&f, &g).unwrap()).is_empty());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let n = rng.gen_range(4..6);
        let p = rng.gen_range(1..3);
        let f = random_lie_der(&mut rng, n, p);
        let g = random_lie_der(&mut rng, n, 3 - p);
        assert!(trace_tr_k(&bracket_lie_der(&f, &g).unwrap()).is_empty());
    }
}

#[test]
fn phi_is_a_section_of_trace() {
    let m = SymmetricMonomial::new(&[1, 2]);
    let f = phi_k::<i64>(&m, 4).unwrap();
    let expect = {
        let x = |i| LieElement::<i64>::generator(i);
        let mut images = vec![LieElement::zero(); 4];
        images[2] = lie_bracket(&lie_bracket(&x(3), &x(1)), &x(2));
        LieDerivation::from_images(4, 2, &images).unwrap()
    };
    assert_eq!(f, expect);
    for m in monomials(4, 2) {
        let tr = trace_tr_k(&phi_k::<i64>(&m, 4).unwrap());
        assert_eq!(tr.len(), 1);
        assert_eq!(tr[&m], 1);
    }
    assert!(phi_k::<i64>(&SymmetricMonomial::new(&[1, 2]), 2).is_err());
}

#[test]
fn basis_dimensions() {
    for n in 2..=4 {
        for k in 0..=3 {
            assert_eq!(assoc_basis(n, k).len(), n.pow(k as u32 + 2));
            assert_eq!(lie_der_basis(n, k).unwrap().len() as u64, n as u64 * witt(n as u64, k as u64 + 1));
        }
    }
}
