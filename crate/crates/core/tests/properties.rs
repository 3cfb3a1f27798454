use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use thue_core::invariants::discriminant;
use thue_core::solver::enumerate_box;
use thue_core::{BinaryForm, IntMatrix2};

fn form_strategy(max_r: u32, bound: i64) -> impl Strategy<Value = BinaryForm> {
    (3..=max_r)
        .prop_flat_map(move |r| proptest::collection::vec(-bound..=bound, (r + 1) as usize))
        .prop_filter_map("nonzero form", |c| {
            let dense: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
            BinaryForm::from_dense(&dense).ok().filter(|f| f.degree() >= 3)
        })
}

fn thue_form_strategy(max_r: u32, bound: i64) -> impl Strategy<Value = BinaryForm> {
    form_strategy(max_r, bound).prop_filter("a_0 a_r != 0", |f| f.boundary_nonzero())
}

fn matrix_strategy() -> impl Strategy<Value = IntMatrix2> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
        .prop_map(|(a, b, c, d)| IntMatrix2::from_i64(a, b, c, d))
        .prop_filter("nonsingular", |m| !m.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discriminant_covariance(f in thue_form_strategy(9, 30), m in matrix_strategy()) {
        let r = f.degree();
        let g = f.transform(&m).unwrap();
        prop_assume!(g.boundary_nonzero());
        prop_assert_eq!(discriminant(&g).unwrap(), m.det().pow(r * (r - 1)) * discriminant(&f).unwrap());
    }

    #[test]
    fn transform_composes(f in form_strategy(8, 20), a in matrix_strategy(), b in matrix_strategy()) {
        let lhs = f.transform(&a).unwrap().transform(&b).unwrap();
        prop_assert_eq!(lhs, f.transform(&a.mul(&b)).unwrap());
    }

    #[test]
    fn transform_is_substitution(f in form_strategy(8, 20), m in matrix_strategy(), x in -50i64..=50, y in -50i64..=50) {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let (u, v) = m.apply(&x, &y);
        prop_assert_eq!(f.transform(&m).unwrap().eval(&x, &y), f.eval(&u, &v));
    }

    #[test]
    fn normalize_at_moves_value_to_leading(f in thue_form_strategy(8, 20), x in -40i64..=40, y in -40i64..=40) {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        prop_assume!(x.gcd(&y).is_one());
        let (g, m) = f.normalize_at(&x, &y).unwrap();
        prop_assert!(m.is_unimodular());
        prop_assert_eq!(g.coeff(0), f.eval(&x, &y));
        if g.boundary_nonzero() {
            prop_assert_eq!(discriminant(&g).unwrap(), discriminant(&f).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumeration_matches_naive(f in form_strategy(6, 12), h in 0i64..=2000, b in 1u64..=40) {
        let res = enumerate_box(&f, &BigInt::from(h), b).unwrap();
        let got: Vec<(i64, i64)> = res.solutions.iter().map(|s| (s.x.to_i64().unwrap(), s.y.to_i64().unwrap())).collect();
        let bi = b as i64;
        let mut want = Vec::new();
        for y in -bi..=bi {
            for x in -bi..=bi {
                if (x, y) != (0, 0) && f.eval(&BigInt::from(x), &BigInt::from(y)) <= BigInt::from(h)
                    && f.eval(&BigInt::from(x), &BigInt::from(y)) >= BigInt::from(-h) {
                    want.push((x, y));
                }
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn unimodular_equivariance(f in form_strategy(5, 8), h in 1i64..=200, k in -3i64..=3) {
        // solutions of F_A in the box B map into the box B * |A|_1 for F
        let a = IntMatrix2::from_i64(1, k, 0, 1);
        let g = f.transform(&a).unwrap();
        let b = 15u64;
        let big = b * (1 + k.unsigned_abs());
        let hb = BigInt::from(h);
        let sol_f: std::collections::BTreeSet<(BigInt, BigInt)> = enumerate_box(&f, &hb, big)
            .unwrap()
            .solutions
            .into_iter()
            .map(|s| (s.x, s.y))
            .collect();
        for s in enumerate_box(&g, &hb, b).unwrap().solutions {
            let img = a.apply(&s.x, &s.y);
            prop_assert!(sol_f.contains(&img));
        }
    }
}

#[test]
fn identity_transform_is_trivial() {
    let f = BinaryForm::from_i64(4, &[(0, 3), (1, -1), (4, 7)]).unwrap();
    assert_eq!(f.transform(&IntMatrix2::identity()).unwrap(), f);
}
