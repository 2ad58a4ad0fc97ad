//! Property-based invariants over the public API.

use gdstar::geninv;
use gdstar::matcore::{self, approx_eq, mat_pow, CMat, Rng, Tolerance, C64};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn small_entry() -> impl Strategy<Value = (f64, f64)> {
    (
        prop_oneof![(-100i32..=100).prop_map(|x| f64::from(x) / 10.0)],
        prop_oneof![(-100i32..=100).prop_map(|x| f64::from(x) / 10.0)],
    )
}

fn small_matrix(n: usize) -> impl Strategy<Value = CMat> {
    proptest::collection::vec(small_entry(), n * n).prop_map(move |entries| {
        CMat::from_row_major(
            n,
            n,
            entries.into_iter().map(|(re, im)| C64::new(re, im)).collect(),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn approx_eq_reflexive_symmetric(a in small_matrix(3), b in small_matrix(3)) {
        let t = tol();
        let (ok, res) = approx_eq(&a, &a, &t).unwrap();
        prop_assert!(ok);
        prop_assert_eq!(res, 0.0);
        let (_, dab) = approx_eq(&a, &b, &t).unwrap();
        let (_, dba) = approx_eq(&b, &a, &t).unwrap();
        prop_assert!((dab - dba).abs() <= 1e-12 * (1.0 + dab));
    }

    #[test]
    fn residual_triangle_inequality(a in small_matrix(3), b in small_matrix(3), c in small_matrix(3)) {
        let t = tol();
        let (_, dab) = approx_eq(&a, &b, &t).unwrap();
        let (_, dac) = approx_eq(&a, &c, &t).unwrap();
        let (_, dcb) = approx_eq(&c, &b, &t).unwrap();
        prop_assert!(dab <= dac + dcb + 1e-10);
    }

    #[test]
    fn mat_pow_additive(a in small_matrix(3), p in 0usize..4, q in 0usize..4) {
        let lhs = mat_pow(&a, p + q);
        let rhs = &mat_pow(&a, p) * &mat_pow(&a, q);
        let rel = (&lhs - &rhs).fro_norm() / (1.0 + lhs.fro_norm());
        prop_assert!(rel <= 1e-10, "rel {rel}");
    }

    #[test]
    fn pseudoinverse_penrose_equations(a in small_matrix(4)) {
        let t = tol();
        let x = geninv::moore_penrose(&a, &t);
        prop_assert!(geninv::penrose_report(&a, &x, &t).overall());
    }

    #[test]
    fn matrix_file_roundtrip(a in small_matrix(3)) {
        let file = gdstar::io::MatrixFile::from_cmat(&a);
        let json = serde_json::to_string(&file).unwrap();
        let back: gdstar::io::MatrixFile = serde_json::from_str(&json).unwrap();
        let b = back.to_cmat().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(a.get(i, j), b.get(i, j));
            }
        }
    }

    #[test]
    fn index_oracles_agree(seed in 0u64..500) {
        let t = tol();
        let mut rng = Rng::seeded(seed);
        let m = rng.usize_in(2, 6);
        let r = rng.usize_in(0, m);
        let k = if r == m { 0 } else { rng.usize_in(1, m - r) };
        let a = matcore::gen_structured(m, r, k, matcore::GenClass::Generic, &mut rng).unwrap();
        prop_assert_eq!(matcore::index(&a, &t), matcore::index_rank_oracle(&a, &t));
        prop_assert_eq!(matcore::index(&a, &t), k);
    }

    #[test]
    fn one_inverse_property(seed in 0u64..200) {
        let t = tol();
        let mut rng = Rng::seeded(seed);
        let n = rng.usize_in(1, 4);
        // nilpotent upper-triangular block like the decomposition produces
        let mut nil = CMat::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            if rng.uniform() < 0.7 {
                nil.set(i, i + 1, rng.complex_gaussian());
            }
        }
        let w = rng.gaussian_matrix(n, n);
        let v = rng.gaussian_matrix(n, n);
        let g = geninv::one_inverse_sample(&nil, &w, &v, &t);
        let residual = (&(&(&nil * &g) * &nil) - &nil).fro_norm();
        prop_assert!(residual <= 1e-10 * (1.0 + nil.fro_norm()));
    }
}
