//! Library results checked against independent computations: brute-force
//! enumeration, floating-point eigenvalues and closed-form counts.

mod common;

use common::*;
use knotsplit::qform::{
    find_primitive_isotropic, symplectic_completion, IsotropicSearch, QformError, QuadForm, SearchBudget,
};
use knotsplit::seifert::Omega;
use knotsplit::{torus_seifert_matrix, IntMatrix, IntVector, SeifertForm};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn torus_4_5_isotropic_vector_matches_enumeration() {
    let v = torus_seifert_matrix(4, 5).unwrap();
    let q = to_i64(&v.symmetrize());
    // all 3^12 vectors of sup-norm 1
    let sols: Vec<Vec<i64>> = box_vectors(12, 1).into_iter().filter(|z| quad(&q, z) == 0).collect();
    assert_eq!(sols.len(), 15);
    let expected = vec![1, 1, 1, 0, 1, 1, 0, -1, 1, 0, -1, 1];
    assert_eq!(sols.iter().max(), Some(&expected));

    let form = QuadForm::new(v.symmetrize()).unwrap();
    let found = find_primitive_isotropic(&form, &SearchBudget::default()).unwrap();
    let cert = found.certificate().unwrap();
    assert_eq!(cert.z, IntVector::from_i64s(&expected));
    assert_eq!(cert.search_radius_used, 1);
}

#[test]
fn search_agrees_with_brute_force_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let budget = SearchBudget::new(3, std::time::Duration::from_secs(30)).unwrap();
    let mut found = 0;
    for _ in 0..150 {
        let n = rng.gen_range(2..=4);
        let mut q = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(-6..=6);
                q[i][j] = x;
                q[j][i] = x;
            }
        }
        let form = QuadForm::new(IntMatrix::from_rows(q.clone())).unwrap();
        let expected = brute_force_isotropic(&q, 3);
        match find_primitive_isotropic(&form, &budget).unwrap() {
            IsotropicSearch::Found(c) => {
                found += 1;
                assert!(c.verify(&form));
                let z: Vec<i64> = to_i64(&c.z.as_row_matrix()).remove(0);
                assert_eq!(Some(z), expected, "form {q:?}");
            }
            IsotropicSearch::NotFound { .. } => assert_eq!(expected, None, "form {q:?}"),
        }
    }
    assert!(found > 30, "too few isotropic cases exercised: {found}");
}

#[test]
fn isotropic_search_is_deterministic_across_thread_counts() {
    let v = torus_seifert_matrix(3, 7).unwrap();
    let form = QuadForm::new(v.symmetrize()).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| find_primitive_isotropic(&form, &SearchBudget::default()).unwrap())
    };
    let one = run(1);
    assert!(one.certificate().is_some());
    for threads in [2, 4, 8] {
        assert_eq!(run(threads), one);
    }
}

#[test]
fn completion_on_random_symplectic_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = 2 * rng.gen_range(1..=3);
        let s = random_symplectic(&mut rng, n, 6);
        assert!(s.det().unwrap().is_one());
        let j = s.congruence(&IntMatrix::standard_symplectic(n)).unwrap();
        let z = loop {
            let z: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            let z = IntVector::from_i64s(&z);
            if !z.is_zero() && z.is_primitive().unwrap() {
                break z;
            }
        };
        let p = symplectic_completion(&j, &z).unwrap();
        let p = p.matrix();
        assert!(p.det().unwrap().is_one());
        assert_eq!(p.row(0), z.entries());
        assert_eq!(p.congruence(&j).unwrap(), IntMatrix::standard_symplectic(n));
    }
}

#[test]
fn completion_respects_orientation_of_general_conjugates() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut ok, mut flipped) = (0, 0);
    for _ in 0..60 {
        let n = 2 * rng.gen_range(1..=3);
        let u = random_unimodular(&mut rng, n, 10);
        let j = u.congruence(&IntMatrix::standard_symplectic(n)).unwrap();
        let mut e0 = vec![0; n];
        e0[0] = 1;
        match symplectic_completion(&j, &IntVector::from_i64s(&e0)) {
            Ok(p) => {
                assert!(u.det().unwrap().is_one());
                assert_eq!(p.matrix().congruence(&j).unwrap(), IntMatrix::standard_symplectic(n));
                ok += 1;
            }
            Err(QformError::OrientationMismatch) => {
                assert_eq!(u.det().unwrap(), BigInt::from(-1));
                flipped += 1;
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(ok > 0 && flipped > 0);
}

#[test]
fn tristram_levine_matches_float_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let omegas = [(1u64, 2u64), (1, 4), (3, 4), (1, 3), (2, 5), (1, 6), (5, 12), (3, 7)];
    let mut checked = 0;
    for _ in 0..40 {
        let g = rng.gen_range(1..=3);
        let v = random_seifert(&mut rng, g, 3);
        let vi = to_i64(v.matrix());
        for &(a, b) in &omegas {
            let omega = Omega::root_of_unity(a as i64, b).unwrap();
            let Some(expected) = float_tristram_levine(&vi, a as f64 / b as f64) else {
                continue;
            };
            match v.tristram_levine(omega) {
                Ok(sigma) => {
                    assert_eq!(sigma, expected, "V = {vi:?}, omega = {a}/{b}");
                    checked += 1;
                }
                Err(e) => panic!("V = {vi:?}, omega = {a}/{b}: {e}"),
            }
        }
    }
    assert!(checked > 200);
}

/// Signature at exp(2 pi i x) of T(p, q) by lattice points: pairs with
/// x < i/p + j/q < x + 1 count -1, the rest +1.
fn torus_levine_count(p: u64, q: u64, a: u64, b: u64) -> Option<i64> {
    let mut sigma = 0;
    for i in 1..p {
        for j in 1..q {
            // compare s = (iq + jp)/pq with a/b and a/b + 1
            let s = (i * q + j * p) * b;
            let lo = a * p * q;
            let hi = (a + b) * p * q;
            if s == lo || s == hi {
                return None;
            }
            sigma += if s > lo && s < hi { -1 } else { 1 };
        }
    }
    Some(sigma)
}

#[test]
fn torus_tristram_levine_matches_lattice_count() {
    for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7), (4, 5)] {
        let v = torus_seifert_matrix(p, q).unwrap();
        for b in 2..=9u64 {
            for a in 1..b {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let omega = Omega::root_of_unity(a as i64, b).unwrap();
                match torus_levine_count(p, q, a, b) {
                    Some(expected) => {
                        assert_eq!(v.tristram_levine(omega).unwrap(), expected, "T({p},{q}) at {a}/{b}")
                    }
                    None => assert!(v.tristram_levine(omega).is_err(), "T({p},{q}) at {a}/{b}"),
                }
            }
        }
    }
}

#[test]
fn alexander_polynomial_matches_direct_determinant() {
    // det(t V - V^T) at t = 2, 3 evaluated independently in i128
    fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
        // Bareiss in i128
        let n = a.len();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(i) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(i, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let g = rng.gen_range(1..=3);
        let v = random_seifert(&mut rng, g, 2);
        let vi = to_i64(v.matrix());
        let n = vi.len();
        let delta = v.alexander_polynomial();
        for t in [2i64, 3] {
            let m: Vec<Vec<i128>> = (0..n)
                .map(|i| (0..n).map(|j| (t * vi[i][j] - vi[j][i]) as i128).collect())
                .collect();
            let direct = det_i128(m);
            // Delta(t) = +- t^{-g} det(tV - V^T)
            let scaled = delta.eval_int(t) * num_rational::BigRational::from_integer(BigInt::from(t).pow(n as u32 / 2));
            let scaled = scaled.to_integer();
            assert!(scaled == BigInt::from(direct) || scaled == -BigInt::from(direct));
        }
        assert_eq!(delta.eval_int(1), num_rational::BigRational::one());
    }
}

#[test]
fn arf_matches_quadratic_form_count() {
    // Arf of q(x) = x V x^T mod 2 on F_2^{2g}: 1 iff q takes the value 1
    // on more than half of the vectors
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let g = rng.gen_range(1..=3);
        let v = random_seifert(&mut rng, g, 3);
        let vi = to_i64(v.matrix());
        let n = 2 * g;
        let ones = (0..1u32 << n)
            .filter(|bits| {
                let x: Vec<i64> = (0..n).map(|k| ((bits >> k) & 1) as i64).collect();
                quad(&vi, &x).rem_euclid(2) == 1
            })
            .count();
        let arf = u8::from(ones > 1 << (n - 1));
        assert_eq!(v.arf_invariant(), arf, "V = {vi:?}");
    }
}

#[test]
fn unknot_band_form_uses_trivial_scan() {
    let v = SeifertForm::new(mat(&[&[0, 1], &[0, 0]]), "band").unwrap();
    let cert = knotsplit::concordance::derive_reduced_form(&v, &SearchBudget::default()).unwrap();
    assert_eq!(cert.iso.z, IntVector::from_i64s(&[1, 0]));
}
