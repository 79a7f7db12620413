use derilab::free_algebra::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_witt(n: usize, k: usize) -> usize {
    all_words(n, k).iter().filter(|w| is_lyndon(w.letters())).count()
}

#[test]
fn lyndon_small_cases() {
    let b = lyndon_basis(2, 1).unwrap();
    assert_eq!(b.iter().map(|w| w.word().clone()).collect::<Vec<_>>(), vec![Word::new(&[1]), Word::new(&[2])]);
    let b = lyndon_basis(2, 2).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].word(), &Word::new(&[1, 2]));
    assert_eq!(lyndon_basis(4, 3).unwrap().len(), 20);
    assert!(lyndon_basis(1, 3).is_err());
    assert!(lyndon_basis(3, 0).is_err());
}

#[test]
fn witt_matches_brute_force() {
    for n in 2..=6 {
        for k in 1..=6 {
            let b = lyndon_basis(n, k).unwrap();
            assert_eq!(b.len(), brute_witt(n, k), "n={n} k={k}");
            assert_eq!(b.len() as u64, witt(n as u64, k as u64), "n={n} k={k}");
            assert!(b.windows(2).all(|p| p[0] < p[1]));
        }
    }
}

#[test]
fn standard_factorization_is_longest_lyndon_suffix() {
    let w = LyndonWord::new(Word::new(&[1, 1, 2, 1, 2])).unwrap();
    assert_eq!(w.factorization(), Some((Word::new(&[1, 1, 2]), Word::new(&[1, 2]))));
    let w = LyndonWord::new(Word::new(&[1, 2, 1, 2, 2])).unwrap();
    assert_eq!(w.factorization(), Some((Word::new(&[1, 2]), Word::new(&[1, 2, 2]))));
    assert!(LyndonWord::new(Word::new(&[2, 1])).is_err());
}

#[test]
fn basic_brackets() {
    let x1 = LieElement::<BigInt>::generator(1);
    let x2 = LieElement::<BigInt>::generator(2);
    let b = lie_bracket(&x1, &x2);
    assert_eq!(b.terms(), &[(Word::new(&[1, 2]), BigInt::from(1))]);
    assert_eq!(lie_bracket(&x2, &x1), b.neg());
    assert!(lie_bracket(&b, &b).is_zero());
    let t = lie_to_tensor(&b);
    let expect = TensorElement::from_terms([(Word::new(&[1, 2]), BigInt::from(1)), (Word::new(&[2, 1]), BigInt::from(-1))]);
    assert_eq!(t, expect);
    assert_eq!(lie_to_tensor(&x1), TensorElement::word(Word::new(&[1])));
}

fn random_lie(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LieElement<i64> {
    let basis = lyndon_basis(n, k).unwrap();
    let terms = (0..rng.gen_range(1..4)).map(|_| {
        let w = basis[rng.gen_range(0..basis.len())].word().clone();
        (w, rng.gen_range(-3..=3i64))
    });
    LieElement::from_terms(terms).unwrap()
}

#[test]
fn jacobi_antisymmetry_and_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..1000 {
        let n = 2 + trial % 3;
        let (p, q, r) = (rng.gen_range(1..3), rng.gen_range(1..3), rng.gen_range(1..3));
        let (a, b, c) = (random_lie(&mut rng, n, p), random_lie(&mut rng, n, q), random_lie(&mut rng, n, r));
        let ab = lie_bracket(&a, &b);
        assert!(ab.add(&lie_bracket(&b, &a)).is_zero());
        assert!(lie_bracket(&a, &a).is_zero());
        let jac = lie_bracket(&ab, &c).add(&lie_bracket(&lie_bracket(&b, &c), &a)).add(&lie_bracket(&lie_bracket(&c, &a), &b));
        assert!(jac.is_zero(), "Jacobi failed on trial {trial}");
        // tensor-side oracle
        let ta = lie_to_tensor(&a);
        let tb = lie_to_tensor(&b);
        assert_eq!(lie_to_tensor(&ab), ta.commutator(&tb));
        let tjac = ta.commutator(&tb).commutator(&lie_to_tensor(&c));
        assert_eq!(tensor_to_lie(&tjac).unwrap(), lie_bracket(&ab, &c));
    }
}

#[test]
fn triangular_inverse_detects_non_lie() {
    let t = TensorElement::<i64>::word(Word::new(&[1, 2]));
    assert!(tensor_to_lie(&t).is_none());
    for w in lyndon_basis(3, 4).unwrap() {
        let e = LieElement::<i64>::basis(w.word().clone()).unwrap();
        let t = lie_to_tensor(&e);
        assert_eq!(t.terms()[0], (w.word().clone(), 1));
        assert_eq!(tensor_to_lie(&t).unwrap(), e);
    }
}

fn tensor_strategy() -> impl Strategy<Value = TensorElement<i64>> {
    prop::collection::vec((prop::collection::vec(1u8..=3, 1..4), -4i64..=4), 0..8)
        .prop_map(|v| TensorElement::from_terms(v.into_iter().map(|(w, c)| (Word::from(w), c))))
}

proptest! {
    #[test]
    fn addition_is_canonical_and_associative(a in tensor_strategy(), b in tensor_strategy(), c in tensor_strategy()) {
        let s = a.add(&b);
        prop_assert!(s.terms().iter().all(|(_, x)| *x != 0));
        prop_assert!(s.terms().windows(2).all(|p| p[0].0 < p[1].0));
        prop_assert_eq!(s.add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in tensor_strategy(), b in tensor_strategy(), c in tensor_strategy()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
