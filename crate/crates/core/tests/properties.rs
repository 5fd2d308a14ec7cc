mod common;

use common::*;
use knotsplit::cli::{format_matrix, parse_matrix};
use knotsplit::seifert::Omega;
use knotsplit::{IntMatrix, SeifertForm};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn square(n: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, n * n)
        .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn symmetric(n: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    square(n, range).prop_map(|m| &m + &m.transpose())
}

fn seifert(max_genus: usize) -> impl Strategy<Value = SeifertForm> {
    (1..=max_genus, any::<u64>()).prop_map(|(g, seed)| random_seifert(&mut ChaCha8Rng::seed_from_u64(seed), g, 3))
}

fn invariants(v: &SeifertForm) -> impl PartialEq + std::fmt::Debug {
    let tl = |w| v.tristram_levine(w).ok();
    (
        v.alexander_polynomial(),
        v.signature(),
        v.arf_invariant(),
        tl(Omega::MinusOne),
        tl(Omega::I),
        tl(Omega::MinusI),
        tl(Omega::root_of_unity(1, 3).unwrap()),
        tl(Omega::root_of_unity(2, 5).unwrap()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_product_of_random_squares(a in square(4, 5), b in square(4, 5)) {
        prop_assert_eq!((&a * &b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
        prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
    }

    #[test]
    fn sylvester_law_of_inertia(s in symmetric(5, 4), seed in any::<u64>()) {
        let p = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 5, 12);
        prop_assert_eq!(p.congruence(&s).unwrap().inertia().unwrap(), s.inertia().unwrap());
    }

    #[test]
    fn inertia_counts_rank(s in symmetric(5, 2)) {
        let t = s.inertia().unwrap();
        prop_assert_eq!(t.n_plus + t.n_minus, s.rank());
        prop_assert_eq!(t.dimension(), 5);
    }

    #[test]
    fn unimodular_inverse(n in 1usize..7, seed in any::<u64>()) {
        let p = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), n, 3 * n);
        let inv = p.inverse_unimodular().unwrap();
        prop_assert_eq!(&p * &inv, IntMatrix::identity(n));
        prop_assert!(p.smith_invariants().iter().all(One::is_one));
    }

    #[test]
    fn smith_invariants_multiply_to_det(a in square(4, 6)) {
        let d = a.det().unwrap();
        let inv = a.smith_invariants();
        if d.is_zero() {
            prop_assert!(inv.len() < 4);
        } else {
            let prod: BigInt = inv.iter().product();
            prop_assert_eq!(prod, d.abs());
            for w in inv.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn pfaffian_squares_to_det(a in square(6, 3)) {
        let skew = &a - &a.transpose();
        let pf = skew.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, skew.det().unwrap());
    }

    #[test]
    fn congruence_preserves_invariants(v in seifert(3), seed in any::<u64>()) {
        let p = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), v.dimension(), 10);
        let w = v.congruence_transform(&p).unwrap();
        prop_assert_eq!(invariants(&w), invariants(&v));
    }

    #[test]
    fn connected_sum_is_additive(a in seifert(2), b in seifert(2)) {
        let s = a.connected_sum(&b);
        prop_assert_eq!(s.signature(), a.signature() + b.signature());
        prop_assert_eq!(s.arf_invariant(), (a.arf_invariant() + b.arf_invariant()) % 2);
        prop_assert_eq!(s.alexander_polynomial(), &a.alexander_polynomial() * &b.alexander_polynomial());
        for w in [Omega::I, Omega::root_of_unity(1, 3).unwrap()] {
            if let (Ok(x), Ok(y)) = (a.tristram_levine(w), b.tristram_levine(w)) {
                prop_assert_eq!(s.tristram_levine(w).unwrap(), x + y);
            }
        }
    }

    #[test]
    fn concordance_inverse_negates(v in seifert(3)) {
        let m = v.concordance_inverse();
        prop_assert_eq!(m.signature(), -v.signature());
        prop_assert_eq!(m.arf_invariant(), v.arf_invariant());
        prop_assert_eq!(m.alexander_polynomial(), v.alexander_polynomial());
        let sum = v.connected_sum(&m);
        prop_assert_eq!(sum.signature(), 0);
    }

    #[test]
    fn alexander_is_symmetric_and_normalized(v in seifert(3)) {
        let d = v.alexander_polynomial();
        prop_assert!(d.is_symmetric());
        prop_assert_eq!(d.eval_int(1), num_rational::BigRational::one());
    }

    #[test]
    fn matrix_file_round_trip(rows in 0usize..5, cols in 0usize..5, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = (0..rows * cols)
            .map(|_| BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen::<i64>()))
            .collect();
        let m = IntMatrix::new(rows, cols, entries).unwrap();
        let text = format_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(format_matrix(&back), text);
    }
}
