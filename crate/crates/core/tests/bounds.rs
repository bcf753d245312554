use genus2cm::bounds::*;
use genus2cm::ntheory::primes_up_to;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn reduce(q: &BigRational, p: i64) -> i64 {
    let m = b(p);
    let n = (q.numer() % &m + &m) % &m;
    let d = (q.denom() % &m + &m) % &m;
    let d = d.to_i64().unwrap();
    assert_ne!(d, 0);
    // Fermat inverse
    let mut inv = 1i64;
    for _ in 0..p - 2 {
        inv = inv * d % p;
    }
    n.to_i64().unwrap() * inv % p
}

fn mul(a: &[i64], c: &[i64], p: i64) -> Vec<i64> {
    let mut r = vec![0; a.len() + c.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in c.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    r
}

/// Product of factors given top-first.
fn product(fs: &[&[i64]], p: i64) -> Vec<i64> {
    fs.iter().fold(vec![1], |acc, f| mul(&acc, f, p))
}

#[test]
fn theorem_examples() {
    let bp = BoundParams { k: 1, e: 2, p: 7, d: b(17), trace_r: b(-238) };
    let v = theta_valuation_bound(&bp).unwrap();
    // 481474 = 17 * 238^2 / 2; -8 (ln 481474 / ln 7 + 1)
    let exact = -8.0 * (481474f64.ln() / 7f64.ln() + 1.0);
    assert!(v.value <= exact && exact - v.value < 1e-8);
    assert_eq!(v.regime, Regime::SmallRam);
    assert!((v.value + 61.79).abs() < 0.01);
}

#[test]
fn corollary_examples() {
    let c = class_poly_coeff_bound(1, 2, 7, &b(17), &b(-238), 2).unwrap();
    assert!((c.value + 370.8).abs() < 0.05, "{}", c.value);
    assert_eq!(class_poly_coeff_bound(1, 0, 7, &b(17), &b(-238), 2).unwrap().value, 0.0);
    let c2 = class_poly_coeff_bound(2, 3, 11, &b(11), &b(-134), 1).unwrap();
    let c3 = class_poly_coeff_bound(3, 3, 11, &b(11), &b(-134), 1).unwrap();
    assert_eq!(c2.value, c3.value);
    let ci = class_invariant_bound(2, 7, &b(17), &b(-238)).unwrap();
    assert!((ci.value - 123.6).abs() < 0.05, "{}", ci.value);
    assert_eq!(class_invariant_bound(4, 7, &b(17), &b(-238)).unwrap().value, 2.0 * ci.value);
}

#[test]
fn high_ramification_branch() {
    let lo = theta_valuation_bound(&BoundParams { k: 1, e: 2, p: 3, d: b(17), trace_r: b(-238) }).unwrap();
    let hi = theta_valuation_bound(&BoundParams { k: 1, e: 3, p: 3, d: b(17), trace_r: b(-238) }).unwrap();
    assert_eq!((lo.regime, hi.regime), (Regime::SmallRam, Regime::HighRam));
    let l = 481474f64.ln() / 3f64.ln();
    assert!((hi.value + 12.0 * (8.0 * l + 2.0)).abs() < 1e-6);
}

#[test]
fn deformation_examples() {
    let r = deformation_index_bounds(3, 1, 2).unwrap();
    assert_eq!((r.lower_exponent, r.upper_exponent), (Rational64::from_integer(2), 3));
    let r = deformation_index_bounds(7, 2, 1).unwrap();
    assert_eq!((r.lower_exponent, r.upper_exponent), (Rational64::zero(), 0));
    let r = deformation_index_bounds(5, 7, 14).unwrap();
    assert_eq!((r.lower_exponent, r.upper_exponent, r.regime), (Rational64::zero(), 39, Regime::HighRam));
    let r = deformation_index_bounds(5, 7, 30).unwrap();
    assert_eq!(r.lower_exponent, Rational64::new(3, 4));
}

#[test]
fn deformation_monotone_on_grid() {
    // 100 points: p in {3, 5, 7, 11}, e_V in 1..=5, n in 1..=5
    let mut count = 0;
    for p in [3u64, 5, 7, 11] {
        for e in 1..=5u64 {
            for n in 1..=5u64 {
                count += 1;
                let r = deformation_index_bounds(p, e, n).unwrap();
                assert!(r.lower_exponent <= Rational64::from_integer(r.upper_exponent as i64));
                let up = deformation_index_bounds(p, e, n + 1).unwrap();
                assert!(up.lower_exponent >= r.lower_exponent);
                let more_ram = deformation_index_bounds(p, e + 1, n).unwrap();
                assert!(more_ram.lower_exponent <= r.lower_exponent);
            }
        }
    }
    assert_eq!(count, 100);
}

#[test]
fn fixtures_pass_at_all_primes_up_to_200() {
    for id in FIXTURE_IDS {
        for p in primes_up_to(200).into_iter().filter(|&p| p >= 5) {
            let r = verify_fixture(id, p).unwrap();
            assert!(r.passed, "{id} p = {p}");
            let want_integral = !r.in_denominator;
            if want_integral {
                assert!(r.checks.iter().all(|c| c.valuation.is_none_or(|v| v >= 0)), "{id} p = {p}");
            }
        }
    }
}

#[test]
fn denominator_primes_and_superspecial_rows() {
    let fx = load_fixture("cyclic17").unwrap();
    assert_eq!(fx.denominator_primes().unwrap(), vec![2, 7, 43, 179]);
    for p in [7, 43, 179] {
        let r = verify_fixture("cyclic17", p).unwrap();
        assert_eq!(r.superspecial_predicted, Some(true), "p = {p}");
    }
    let r = verify_fixture("cyclic17", 7).unwrap();
    let c = r.checks.iter().find(|c| c.poly == 1 && c.index == 2).unwrap();
    assert_eq!(c.valuation, Some(-12));

    let fx = load_fixture("dihedral11").unwrap();
    assert_eq!(fx.denominator_primes().unwrap(), vec![2, 5, 11]);
    for p in [5, 11] {
        assert_eq!(verify_fixture("dihedral11", p).unwrap().superspecial_predicted, Some(true));
    }
}

#[test]
fn random_primes_away_from_denominators_are_integral() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut ps: Vec<u64> = primes_up_to(200).into_iter().filter(|&p| p >= 13 && ![43, 179].contains(&p)).collect();
    ps.shuffle(&mut rng);
    for &p in &ps[..10] {
        for id in FIXTURE_IDS {
            let r = verify_fixture(id, p).unwrap();
            assert!(!r.in_denominator);
            assert!(r.checks.iter().all(|c| c.valuation.is_none_or(|v| v >= 0)));
        }
    }
}

#[test]
fn small_primes_are_rejected() {
    assert!(verify_fixture("cyclic17", 3).is_err());
    assert!(verify_fixture("cyclic17", 9).is_err());
    assert!(verify_fixture("nope", 7).is_err());
}

#[test]
fn fixture_reductions() {
    let fx = load_fixture("cyclic17").unwrap();
    let want: [&[i64]; 3] = [&[1, 13], &[1, 12], &[1, 2]];
    for (poly, w) in fx.polys.iter().zip(want) {
        let got: Vec<i64> = poly.iter().map(|c| reduce(c, 17)).collect();
        assert_eq!(got, product(&[w, w], 17));
    }

    let fx = load_fixture("dihedral11").unwrap();
    let h1 = &fx.polys[0];
    let cases: [(i64, Vec<&[i64]>); 4] = [
        (89, vec![&[1, 17, 9], &[1, 17, 9], &[1, 18, 25], &[1, 18, 25]]),
        (313, vec![&[1, 25, 273], &[1, 137, 39], &[1, 200, 108], &[1, 312, 249]]),
        // the square factor is linear: h_1 has degree 8
        (47, vec![&[1, 18], &[1, 18], &[1, 22, 12], &[1, 33, 19], &[1, 37, 6]]),
        (13, vec![&[1, 2, 9], &[1, 6, 1], &[1, 8, 10, 0, 12]]),
    ];
    for (p, fs) in cases {
        let got: Vec<i64> = h1.iter().map(|c| reduce(c, p)).collect();
        assert_eq!(got, product(&fs, p), "p = {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn theorem_bound_monotone(k in 1u32..5, e in 1u32..10, pi in 0usize..8, d in 2i64..50, a in 1i64..500) {
        let p = [3u64, 5, 7, 11, 13, 17, 101, 1009][pi];
        let tr = b(2 * a);
        let bp = BoundParams { k, e, p, d: b(d), trace_r: tr.clone() };
        let v = theta_valuation_bound(&bp).unwrap().value;
        prop_assert!(v < 0.0);
        let vk = theta_valuation_bound(&BoundParams { k: k + 1, ..bp.clone() }).unwrap().value;
        let ve = theta_valuation_bound(&BoundParams { e: e + 1, ..bp.clone() }).unwrap().value;
        prop_assert!(vk <= v && ve <= v);
    }

    #[test]
    fn coefficient_bound_grows_with_index(i in 1u8..4, a in 0usize..10, d in 2i64..50, al in 1i64..500) {
        let x = class_poly_coeff_bound(i, a, 11, &b(d), &b(2 * al), 1).unwrap().value;
        let y = class_poly_coeff_bound(i, a + 1, 11, &b(d), &b(2 * al), 1).unwrap().value;
        prop_assert!(y < x);
    }
}
