//! Independent oracles for field and algebra arithmetic.

use proptest::prelude::*;
use qci::ffield::{default_field, Embedding, Fe, Field};
use qci::qalgebra::{AlgElement, AlgebraSpec};

fn configs() -> Vec<AlgebraSpec> {
    let spec = |p: u32, a: usize, c: usize, q: i64| {
        let f = Field::prime(p).unwrap();
        let q = f.from_int(q);
        AlgebraSpec::new(f, a, c, q).unwrap()
    };
    vec![spec(2, 2, 2, 1), spec(5, 2, 2, 4), spec(7, 3, 2, 2), spec(5, 2, 3, 4), spec(7, 3, 3, 4)]
}

/// Normal form of a word in the generators by adjacent transpositions,
/// using x_j x_i = q^{-1} x_i x_j for i < j.
fn bubble_normal_form(alg: &AlgebraSpec, word: &[usize], coeff: Fe) -> AlgElement {
    let f = alg.field();
    let qinv = f.inv(alg.q());
    let mut w = word.to_vec();
    let mut coeff = coeff;
    let mut swapped = true;
    while swapped {
        swapped = false;
        for k in 0..w.len().saturating_sub(1) {
            if w[k] > w[k + 1] {
                w.swap(k, k + 1);
                coeff = f.mul(coeff, qinv);
                swapped = true;
            }
        }
    }
    let mut exps = vec![0; alg.c()];
    for &v in &w {
        exps[v] += 1;
    }
    if exps.iter().any(|&e| e >= alg.a()) {
        return alg.zero();
    }
    alg.monomial(alg.index_of(&exps), coeff)
}

fn word_of(alg: &AlgebraSpec, m: usize) -> Vec<usize> {
    alg.exponents(m)
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(i).take(e))
        .collect()
}

#[test]
fn monomial_products_match_bubble_sort() {
    for alg in configs() {
        for m in 0..alg.dim() {
            for n in 0..alg.dim() {
                let mut w = word_of(&alg, m);
                w.extend(word_of(&alg, n));
                let expected = bubble_normal_form(&alg, &w, Fe::ONE);
                let got = alg.mul(&alg.monomial(m, Fe::ONE), &alg.monomial(n, Fe::ONE));
                assert_eq!(got, expected, "monomials {} * {}", m, n);
            }
        }
    }
}

#[test]
fn random_words_match_bubble_sort() {
    let mut state = 12345u64;
    for alg in configs() {
        for _ in 0..200 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let len = (state >> 60) as usize;
            let word: Vec<usize> = (0..len)
                .map(|k| ((state >> (4 * k + 1)) % alg.c() as u64) as usize)
                .collect();
            let expected = bubble_normal_form(&alg, &word, Fe::ONE);
            let got = word
                .iter()
                .fold(alg.one(), |acc, &i| alg.mul(&acc, &alg.x(i)));
            assert_eq!(got, expected, "word {:?}", word);
        }
    }
}

#[test]
fn defining_relations() {
    for alg in configs() {
        for i in 0..alg.c() {
            assert!(alg.pow(&alg.x(i), alg.a()).is_zero());
            assert!(!alg.pow(&alg.x(i), alg.a() - 1).is_zero());
            for j in i + 1..alg.c() {
                let lhs = alg.mul(&alg.x(i), &alg.x(j));
                let rhs = alg.scale(alg.q(), &alg.mul(&alg.x(j), &alg.x(i)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

fn element(alg: &AlgebraSpec, raw: &[u32]) -> AlgElement {
    let f = alg.field();
    alg.element(raw.iter().map(|&r| f.element(r % f.order()).unwrap()).collect())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(which in 0usize..5, u in prop::collection::vec(any::<u32>(), 27),
                     v in prop::collection::vec(any::<u32>(), 27), w in prop::collection::vec(any::<u32>(), 27)) {
        let alg = &configs()[which];
        let d = alg.dim();
        let (u, v, w) = (element(alg, &u[..d]), element(alg, &v[..d]), element(alg, &w[..d]));
        prop_assert_eq!(alg.mul(&alg.mul(&u, &v), &w), alg.mul(&u, &alg.mul(&v, &w)));
    }

    #[test]
    fn distributivity(which in 0usize..5, u in prop::collection::vec(any::<u32>(), 27),
                      v in prop::collection::vec(any::<u32>(), 27), w in prop::collection::vec(any::<u32>(), 27)) {
        let alg = &configs()[which];
        let d = alg.dim();
        let (u, v, w) = (element(alg, &u[..d]), element(alg, &v[..d]), element(alg, &w[..d]));
        prop_assert_eq!(alg.mul(&u, &alg.add(&v, &w)), alg.add(&alg.mul(&u, &v), &alg.mul(&u, &w)));
    }

    #[test]
    fn augmentation_is_multiplicative(which in 0usize..5, u in prop::collection::vec(any::<u32>(), 27),
                                      v in prop::collection::vec(any::<u32>(), 27)) {
        let alg = &configs()[which];
        let d = alg.dim();
        let (u, v) = (element(alg, &u[..d]), element(alg, &v[..d]));
        let f = alg.field();
        prop_assert_eq!(alg.augmentation(&alg.mul(&u, &v)), f.mul(alg.augmentation(&u), alg.augmentation(&v)));
    }

    #[test]
    fn u_lambda_is_nilpotent_of_order_a(which in 0usize..5, raw in prop::collection::vec(any::<u32>(), 3)) {
        let alg = &configs()[which];
        let f = alg.field();
        let lambda: Vec<Fe> = raw[..alg.c()].iter().map(|&r| f.element(r % f.order()).unwrap()).collect();
        let u = alg.u_lambda(&lambda).unwrap();
        prop_assert!(alg.pow(&u, alg.a()).is_zero());
        if lambda.iter().any(|x| !x.is_zero()) {
            prop_assert!(!alg.pow(&u, alg.a() - 1).is_zero());
        }
    }

    #[test]
    fn multiplication_matrices_represent_products(which in 0usize..5, u in prop::collection::vec(any::<u32>(), 27),
                                                  v in prop::collection::vec(any::<u32>(), 27)) {
        let alg = &configs()[which];
        let d = alg.dim();
        let f = alg.field();
        let (u, v) = (element(alg, &u[..d]), element(alg, &v[..d]));
        let uv = alg.mul(&u, &v);
        prop_assert_eq!(alg.left_mul_matrix(&u).mul_vec(f, v.coeffs()), uv.coeffs().to_vec());
        prop_assert_eq!(alg.right_mul_matrix(&v).mul_vec(f, u.coeffs()), uv.coeffs().to_vec());
    }

    #[test]
    fn field_axioms(which in 0usize..4, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let (p, e) = [(2, 3), (3, 2), (5, 2), (7, 3)][which];
        let f = default_field(p, e).unwrap();
        let el = |r: u32| f.element(r % f.order()).unwrap();
        let (x, y, z) = (el(x), el(y), el(z));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), Fe::ZERO);
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x)), Fe::ONE);
            prop_assert_eq!(f.pow(x, f.order() as u64 - 1), Fe::ONE);
        }
        prop_assert_eq!(f.pow(x, f.order() as u64), x);
    }

    #[test]
    fn embeddings_preserve_operations(x in any::<u32>(), y in any::<u32>()) {
        let small = default_field(5, 2).unwrap();
        let big = default_field(5, 4).unwrap();
        let emb = Embedding::find(&small, &big).unwrap();
        let (x, y) = (small.element(x % 25).unwrap(), small.element(y % 25).unwrap());
        prop_assert_eq!(emb.apply(small.mul(x, y)), big.mul(emb.apply(x), emb.apply(y)));
        prop_assert_eq!(emb.apply(small.add(x, y)), big.add(emb.apply(x), emb.apply(y)));
    }
}
