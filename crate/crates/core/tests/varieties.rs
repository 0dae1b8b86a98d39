//! Properties of rank and support varieties.

use proptest::prelude::*;
use qci::ffield::{Fe, Field};
use qci::modrep::ModuleRep;
use qci::qalgebra::AlgebraSpec;
use qci::rankvar::{
    apply_f, is_non_projective_point, projective_points, rank_form_non_projective, rank_variety,
    stable_map_check,
};
use qci::suppvar::{k_zeta_tensor_simple, support_variety_ideal, support_variety_points};
use qci::verify::{analyze, inclusion_holds, random_module};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(p: u32, a: usize, c: usize, q: i64) -> AlgebraSpec {
    let f = Field::prime(p).unwrap();
    let q = f.from_int(q);
    AlgebraSpec::new(f, a, c, q).unwrap()
}

fn configs() -> Vec<AlgebraSpec> {
    vec![spec(2, 2, 2, 1), spec(5, 2, 2, 4), spec(7, 3, 2, 2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rank_test_is_scale_invariant(seed in any::<u64>(), which in 0usize..3, s in 1u32..7, raw in any::<[u32; 2]>()) {
        let alg = &configs()[which];
        let f = alg.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(alg, &mut rng);
        let lambda: Vec<Fe> = raw.iter().map(|&r| f.element(r % f.order()).unwrap()).collect();
        prop_assume!(lambda.iter().any(|x| !x.is_zero()));
        let s = f.element(s % f.order()).unwrap();
        prop_assume!(!s.is_zero());
        let scaled: Vec<Fe> = lambda.iter().map(|&x| f.mul(s, x)).collect();
        prop_assert_eq!(is_non_projective_point(&m, &lambda).unwrap(), is_non_projective_point(&m, &scaled).unwrap());
        prop_assert_eq!(is_non_projective_point(&m, &lambda).unwrap(), rank_form_non_projective(&m, &lambda).unwrap());
    }

    #[test]
    fn rank_variety_of_sum_is_union(seed in any::<u64>(), which in 0usize..3) {
        let alg = &configs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(alg, &mut rng);
        let n = random_module(alg, &mut rng);
        let vm = rank_variety(&m, 1).unwrap();
        let vn = rank_variety(&n, 1).unwrap();
        let vs = rank_variety(&m.direct_sum(&n).unwrap(), 1).unwrap();
        let mut union: Vec<_> = vm.points.iter().chain(&vn.points).cloned().collect();
        union.sort();
        union.dedup();
        let mut got = vs.points.clone();
        got.sort();
        prop_assert_eq!(got, union);
    }

    #[test]
    fn stable_map_predicates_agree(seed in any::<u64>(), which in 0usize..3) {
        let alg = &configs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(alg, &mut rng);
        for p in projective_points(alg.field(), alg.c()) {
            prop_assert!(stable_map_check(&m, &p).unwrap().agree());
        }
    }

    #[test]
    fn rational_image_is_inside_support(seed in any::<u64>(), which in 0usize..3) {
        let alg = &configs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(alg, &mut rng);
        let an = analyze(&m, &[1, 2], 12, 8).unwrap();
        prop_assert!(inclusion_holds(&an));
    }
}

#[test]
fn projective_modules_have_empty_varieties() {
    for alg in configs() {
        let free = ModuleRep::regular(&alg).direct_sum(&ModuleRep::regular(&alg)).unwrap();
        assert!(rank_variety(&free, 2).unwrap().is_empty());
        let ideal = support_variety_ideal(&free, 12, 8).unwrap();
        assert!(support_variety_points(&ideal, 2).unwrap().is_empty());
    }
}

#[test]
fn simple_module_variety_is_everything() {
    for alg in configs() {
        let k = ModuleRep::simple(&alg);
        for ext in [1, 2] {
            let v = rank_variety(&k, ext).unwrap();
            assert_eq!(v.len() as u64, v.enumerated);
        }
    }
}

#[test]
fn k_zeta_support_is_perpendicular_hyperplane() {
    for alg in [spec(5, 2, 2, 4), spec(7, 3, 2, 2), spec(5, 2, 3, 4)] {
        let f = alg.field();
        for mu in projective_points(f, alg.c()).into_iter().take(4) {
            let kz = k_zeta_tensor_simple(&alg, &mu).unwrap();
            assert_eq!(kz.module.dim(), alg.dim());
            let ideal = support_variety_ideal(&kz.module, 12, 8).unwrap();
            let pts = support_variety_points(&ideal, 1).unwrap();
            let expected: Vec<Vec<Fe>> = projective_points(f, alg.c())
                .into_iter()
                .filter(|a| {
                    a.iter().zip(&mu).fold(Fe::ZERO, |s, (&x, &y)| f.add(s, f.mul(x, y))).is_zero()
                })
                .collect();
            let mut got = pts.points.clone();
            got.sort();
            let mut expected = expected;
            expected.sort();
            assert_eq!(got, expected, "mu {:?}", mu);
        }
    }
}

#[test]
fn ideal_support_is_image_of_lambda() {
    for alg in configs() {
        let f = alg.field();
        for lambda in projective_points(f, alg.c()) {
            let (m, _) = ModuleRep::left_ideal(&alg, &alg.u_lambda(&lambda).unwrap()).unwrap();
            let ideal = support_variety_ideal(&m, 12, 8).unwrap();
            let pts = support_variety_points(&ideal, 1).unwrap();
            assert_eq!(pts.points, vec![apply_f(f, alg.a(), &lambda)]);
        }
    }
}
