use proptest::prelude::*;
use qcoh_core::charts::{ChartKind, TrivializationChart};
use qcoh_core::coherent::{expected_alpha, reproducing_apply, scalar_operator_general};
use qcoh_core::comod::{orthonormal_gram, solve_coinvariant_gram, VnComodule};
use qcoh_core::haar::{haar, haar_slot, random_element};
use qcoh_core::hopf::HopfData;
use qcoh_core::ncalg::{random_word_deg, standard, AlgebraMap, NCPoly};
use qcoh_core::{QRational, QScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_scalar(rng: &mut ChaCha8Rng) -> QScalar {
    QScalar::from_int(rng.gen_range(-3..=3)) * QScalar::q_pow(rng.gen_range(-1..=1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coproduct_is_multiplicative(seed in any::<u64>()) {
        let h = HopfData::sl2().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(2, &mut rng);
        let g = random_element(2, &mut rng);
        let lhs = h.coproduct(&f.mul(&g).unwrap()).unwrap();
        let rhs = h.coproduct(&f).unwrap().mul(&h.coproduct(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_reverses_products(seed in any::<u64>()) {
        let h = HopfData::sl2().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(2, &mut rng);
        let g = random_element(2, &mut rng);
        let lhs = h.antipode(&f.mul(&g).unwrap()).unwrap();
        let rhs = h.antipode(&g).unwrap().mul(&h.antipode(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_an_antilinear_anti_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(3, &mut rng);
        let g = random_element(2, &mut rng);
        prop_assert_eq!(f.star().unwrap().star().unwrap(), f.clone());
        let lhs = f.mul(&g).unwrap().star().unwrap();
        let rhs = g.star().unwrap().mul(&f.star().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn haar_is_invariant_on_random_elements(seed in any::<u64>()) {
        let h = HopfData::sl2().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(4, &mut rng);
        let d = h.coproduct(&f).unwrap();
        let expect = NCPoly::scalar(&standard::g(), haar(&f).unwrap());
        prop_assert_eq!(haar_slot(&d, 1).unwrap(), expect.clone());
        prop_assert_eq!(haar_slot(&d, 0).unwrap(), expect);
    }

    #[test]
    fn haar_is_positive(seed in any::<u64>(), k in 0usize..3) {
        let q0 = [QRational::new(1.into(), 2.into()), QRational::new(2.into(), 3.into()), QRational::new(1.into(), 5.into())][k].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(3, &mut rng);
        let v = haar(&f.mul(&f.star().unwrap()).unwrap()).unwrap().specialize(&q0).unwrap();
        prop_assert!(v > QRational::from_integer(0.into()));
    }

    #[test]
    fn gamma_d_is_a_comodule_map(seed in any::<u64>()) {
        let chart = TrivializationChart::new(ChartKind::D).unwrap();
        let b = HopfData::borel().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word_deg(b.algebra(), 4, &mut rng);
        let x = NCPoly::from_word(b.algebra(), QScalar::one(), &w).unwrap();
        let gx = chart.gamma().apply(&x).unwrap();
        let lhs = chart.coaction().apply(&gx).unwrap();
        let gid = AlgebraMap::tensor(&[chart.gamma(), &AlgebraMap::identity(b.algebra())]);
        let rhs = gid.apply(&b.coproduct(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs.to_string(), rhs.to_string());
    }

    // the scalar is α Σ_j q^{-2j} g_j w_j², with no cross terms
    #[test]
    fn general_w_operator_is_a_weighted_norm(seed in any::<u64>(), n in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w: Vec<QScalar> = (0..=n).map(|_| small_scalar(&mut rng)).collect();
        prop_assume!(w.iter().any(|c| !c.is_zero()));
        let s = scalar_operator_general(n, &w).unwrap();
        let v = VnComodule::new(n).unwrap();
        let (gram, _) = solve_coinvariant_gram(&v).unwrap();
        prop_assert_eq!(&gram.diag, &orthonormal_gram(n));
        let weighted: Vec<QScalar> = (0..=n).map(|j| QScalar::q_pow(-2 * j as i64)).collect();
        let norm: QScalar = w.iter().zip(&weighted).zip(&gram.diag).map(|((c, t), g)| &(&(c * c) * t) * g).sum();
        prop_assert_eq!(s, &norm * &expected_alpha(n));
    }

    #[test]
    fn reproducing_formula(seed in any::<u64>(), n in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = n + 1;
        let h: Vec<Vec<QScalar>> = (0..dim).map(|_| (0..dim).map(|_| small_scalar(&mut rng)).collect()).collect();
        let v: Vec<QScalar> = (0..dim).map(|_| small_scalar(&mut rng)).collect();
        let expect: Vec<QScalar> = h
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
            .collect();
        prop_assert_eq!(reproducing_apply(n, &h, &v).unwrap(), expect);
    }
}
