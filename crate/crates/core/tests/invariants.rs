use std::sync::Arc;

use extconv::algebra::Algebra;
use extconv::invariants::{class_of, pic_classify, pic_representative};
use extconv::linalg::{Field, Scalar};
use extconv::quiver::{quiver_tensor, unit_rep, QuiverRep, WeightQuiver};
use extconv::sheaves::{cech_cohomology, ec_product, projective_quiver, LineBundleComplex, SheafExpr, Space};
use extconv::toric::{cox_grading, line_bundle_cohomology, Fan};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q() -> Field {
    Field::Rational
}

fn binom(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1)) as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn toric_cohomology_of_projective_space(n in 1usize..=3, a in -6i64..=6) {
        let mut divisor = vec![0; n + 1];
        divisor[0] = a;
        let h = line_bundle_cohomology(&Fan::projective_space(n), &divisor).unwrap();
        let mut expected = vec![0; n + 1];
        expected[0] = if a >= 0 { binom(a + n as i64, n as i64) } else { 0 };
        expected[n] += if a < -(n as i64) { binom(-a - 1, n as i64) } else { 0 };
        prop_assert_eq!(h, expected);
    }

    #[test]
    fn cech_matches_toric(a in -5i64..=5) {
        let c = LineBundleComplex::line_bundle(q(), vec![2], vec![0]);
        let cech = cech_cohomology(&c, &[a]).unwrap();
        let toric = line_bundle_cohomology(&Fan::projective_space(2), &[0, 0, a]).unwrap();
        for (p, &d) in toric.iter().enumerate() {
            prop_assert_eq!(cech.get(&(p as i64)).copied().unwrap_or(0), d);
        }
    }

    #[test]
    fn tensor_is_commutative_up_to_dimensions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let quiver = projective_quiver(1, &[0, 1], q()).unwrap();
        let v = QuiverRep::random(quiver.clone(), &mut rng, 2).unwrap();
        let w = QuiverRep::random(quiver.clone(), &mut rng, 2).unwrap();
        let vw = quiver_tensor(&v, &w).unwrap();
        let wv = quiver_tensor(&w, &v).unwrap();
        prop_assert_eq!(vw.cohomology_dims(), wv.cohomology_dims());
        prop_assert_eq!(quiver_tensor(&unit_rep(quiver), &v).unwrap(), v);
    }

    #[test]
    fn k0_class_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let quiver = Arc::new(WeightQuiver::algebra(&Algebra::product_algebra(q(), 3), 3).unwrap());
        let v = QuiverRep::random(quiver.clone(), &mut rng, 2).unwrap();
        let w = QuiverRep::random(quiver, &mut rng, 2).unwrap();
        let product: Vec<i64> =
            class_of(&v).coordinates.iter().zip(&class_of(&w).coordinates).map(|(a, b)| a * b).collect();
        prop_assert_eq!(class_of(&quiver_tensor(&v, &w).unwrap()).coordinates, product);
    }

    #[test]
    fn skyscrapers_on_k3_multiply_coordinatewise(x in prop::collection::vec(1i64..=4, 3), y in prop::collection::vec(1i64..=4, 3)) {
        let a = Algebra::product_algebra(q(), 3);
        let pt = |v: &[i64]| v.iter().map(|&c| Scalar::from_i64(q(), c)).collect::<Vec<_>>();
        let got = ec_product(&Space::Algebra(a), &SheafExpr::Skyscraper(pt(&x)), &SheafExpr::Skyscraper(pt(&y)))
            .unwrap()
            .to_string();
        let z: Vec<Scalar> = pt(&x).iter().zip(pt(&y)).map(|(a, b)| a * &b).collect();
        let lead = z[0].inv().unwrap();
        let coords: Vec<String> = z.iter().map(|c| (c * &lead).to_string()).collect();
        prop_assert_eq!(got, format!("sky[{}]", coords.join(",")));
    }

    #[test]
    fn picard_shifts_add(s in -3i64..=3, t in -3i64..=3) {
        let a = Algebra::truncated_poly(q(), 2);
        let one = vec![Scalar::one(q()), Scalar::zero(q())];
        let v = pic_representative(&a, &one, s).unwrap();
        let w = pic_representative(&a, &one, t).unwrap();
        let p = pic_classify(&a, &quiver_tensor(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(p.shift, s + t);
    }
}

#[test]
fn class_group_rank_of_presets() {
    for name in Fan::PRESETS {
        let fan = Fan::preset(name).unwrap();
        let g = cox_grading(&fan).unwrap();
        assert_eq!(g.weight_rank(), fan.n_rays() - fan.lattice_rank, "{name}");
        let m = g.kernel_basis();
        for k in 0..m.first().map_or(0, Vec::len) {
            let column: Vec<i64> = m.iter().map(|row| row[k]).collect();
            assert!(g.degree(&column).iter().all(|&x| x == 0), "{name}: kernel column {k} has nonzero degree");
        }
    }
}
