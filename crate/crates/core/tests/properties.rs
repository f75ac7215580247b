use lens_homology::chain::{homology, triple_exactness_check, Coefficients, HomologyTable};
use lens_homology::contact_geo::{conformal_defect, BasePoint, RadialContactMap, SmoothstepProfile};
use lens_homology::exact::{smith_normal_form, IntMatrix, Matrix, Prime};
use lens_homology::group_ring::GroupRingElement;
use lens_homology::morse_bott::{
    build_equivariant_complex, build_nonequivariant_complex, build_nonequivariant_complex_integral, LensData, Profile,
};
use lens_homology::oracles::{balls_homology, balls_homology_eq, prequantize, OracleQuery};
use lens_homology::rational::{integer, ratio, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn prime(k: u64) -> Prime {
    Prime::new(k).unwrap()
}

#[derive(Debug, Clone)]
struct ProfileSeed {
    capacity: (i64, i64),
    shrink: Vec<i64>,
    place: Vec<i64>,
    top: i64,
}

fn profile_seed() -> impl Strategy<Value = ProfileSeed> {
    (1usize..=3).prop_flat_map(|nu| {
        ((1i64..=40, 1i64..=10), prop::collection::vec(1i64..=99, nu), prop::collection::vec(1i64..=99, nu), 1i64..=50)
            .prop_map(|(capacity, shrink, place, top)| ProfileSeed { capacity, shrink, place, top })
    })
}

fn build_profile(seed: &ProfileSeed) -> Profile {
    let capacity = ratio(seed.capacity.0, seed.capacity.1);
    let mut radii = Vec::new();
    let mut upper = integer(1);
    for s in &seed.shrink {
        upper = &upper * ratio(*s, 100);
        radii.push(upper.clone());
    }
    let mut cs: Vec<Rational> = Vec::new();
    for (j, p) in (1i64..).zip(&seed.place) {
        let lo = cs.last().cloned().unwrap_or_else(|| integer(0)).max(integer(j - 1) * &capacity);
        let hi = integer(j) * &capacity;
        cs.push(&lo + (&hi - &lo) * ratio(*p, 100));
    }
    let values = cs.iter().zip(&radii).enumerate().map(|(i, (c, r))| c - integer(i as i64 + 1) * &capacity * r).collect();
    let rho0 = cs.last().unwrap() + ratio(seed.top, 10);
    Profile::new(capacity, radii, values, rho0).unwrap()
}

fn lens() -> impl Strategy<Value = LensData> {
    (1usize..=2, prop::sample::select(vec![2u64, 3, 5])).prop_flat_map(|(n, k)| {
        let all = LensData::all_weight_vectors(n, prime(k));
        prop::sample::select(all)
    })
}

fn table() -> impl Strategy<Value = HomologyTable> {
    prop::collection::vec(0usize..4, 1..8).prop_map(|ranks| HomologyTable::from_ranks(Coefficients::Field { modulus: prime(3) }, &ranks))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundaries_square_to_zero(seed in profile_seed(), lens in lens()) {
        let p = build_profile(&seed);
        prop_assert!(build_nonequivariant_complex(&p, &lens).validate().is_ok());
        prop_assert!(build_nonequivariant_complex_integral(&p, &lens).validate().is_ok());
        let eq = build_equivariant_complex(&p, &lens, Coefficients::Integer).unwrap();
        prop_assert!(eq.complex().validate().is_ok());
    }

    #[test]
    fn full_window_is_a_sphere(seed in profile_seed(), lens in lens()) {
        let p = build_profile(&seed);
        let t = homology(&build_nonequivariant_complex(&p, &lens));
        let top = 2 * lens.n();
        for d in 0..t.len() {
            prop_assert_eq!(t.rank(d), usize::from(d == 0 || d == top), "degree {}", d);
        }
    }

    #[test]
    fn triple_sequences_are_exact(seed in profile_seed(), lens in lens(), s in 1i64..99, t in 1i64..99) {
        let p = build_profile(&seed);
        let (lo, hi) = (s.min(t), s.max(t) + 1);
        let a1 = p.rho0() * ratio(lo, 100);
        let a2 = p.rho0() * ratio(hi, 100);
        let c = build_nonequivariant_complex(&p, &lens);
        prop_assert!(triple_exactness_check(&c, &a1, &a2).is_ok());
        let eq = build_equivariant_complex(&p, &lens, Coefficients::Integer).unwrap();
        prop_assert!(triple_exactness_check(eq.complex(), &a1, &a2).is_ok());
    }

    #[test]
    fn plain_oracle_has_exactly_one_degree(n in 1usize..=3, num in 1i64..60, den in 1i64..20) {
        let capacity = ratio(num, den);
        let a = integer(1);
        prop_assume!(!(&a / &capacity).is_integer());
        let top = 2 * n * (den as usize + 2);
        let hits: Vec<usize> = (1..=top)
            .filter(|&d| balls_homology(&OracleQuery::new(n, prime(2), capacity.clone(), a.clone(), d, false).unwrap()) == 1)
            .collect();
        prop_assert_eq!(hits.len(), 1);
        prop_assert_eq!(hits[0] % (2 * n), 0);
    }

    #[test]
    fn equivariant_oracle_grows_with_capacity(n in 1usize..=3, num in 1i64..60, den in 1i64..20, d in 1usize..30) {
        let small = ratio(num, den);
        let large = &small + ratio(1, 7);
        let a = integer(1);
        let q = |c: &Rational| OracleQuery::new(n, prime(3), c.clone(), a.clone(), d, true).unwrap();
        prop_assert!(balls_homology_eq(&q(&small)) <= balls_homology_eq(&q(&large)));
    }

    #[test]
    fn prequantization_is_a_convolution(t in table()) {
        let p = prequantize(&t);
        for d in 0..=t.len() + 1 {
            let below = if d == 0 { 0 } else { t.rank(d - 1) };
            prop_assert_eq!(p.rank(d), t.rank(d) + below);
        }
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-9i64..=9, 16)) {
        let a = IntMatrix::from_i64(&Matrix::from_fn(rows, cols, |i, j| entries[i * 4 + j]));
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.matmul(&a).unwrap().matmul(&s.v).unwrap(), s.d.clone());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(f.iter().all(|x| *x > BigInt::zero()));
    }

    #[test]
    fn group_ring_multiplication_is_matrix_multiplication(
        k in prop::sample::select(vec![2u64, 3, 5, 7]),
        x in prop::collection::vec(-5i64..=5, 7),
        y in prop::collection::vec(-5i64..=5, 7),
    ) {
        let p = prime(k);
        let a = GroupRingElement::new(x[..k as usize].to_vec(), p).unwrap();
        let b = GroupRingElement::new(y[..k as usize].to_vec(), p).unwrap();
        let prod = &a * &b;
        let m = a.as_multiplication_matrix().matmul(&b.as_multiplication_matrix()).unwrap();
        prop_assert_eq!(m, prod.as_multiplication_matrix());
        prop_assert_eq!(prod.augmentation(), a.augmentation() * b.augmentation());
    }
}

#[test]
fn radial_lift_defect_shows_second_order_convergence() {
    let map = RadialContactMap::new(1.0, 2, SmoothstepProfile::new(-2.5, 0.1).unwrap()).unwrap();
    let q = BasePoint::new(vec![0.21, -0.13], vec![0.17, 0.3], 0.4);
    let steps = [1e-2, 1e-3, 1e-4];
    let defects: Vec<f64> = steps.iter().map(|&h| conformal_defect(&map, &q, h)).collect();
    for w in defects.windows(2) {
        let ratio = w[0] / w[1];
        assert!((50.0..200.0).contains(&ratio), "{defects:?}");
    }
}
