use genus2cm::cmfield::*;
use genus2cm::factor::factor_pattern;
use genus2cm::field::{Fq, FqCtx};
use genus2cm::ntheory::primes_up_to;
use genus2cm::order::poly_discriminant;
use genus2cm::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn pattern_mod(f: &[BigInt], p: u64) -> Vec<usize> {
    let ctx = FqCtx::prime(p).unwrap();
    let z = Fq::from_i64(&ctx, 0);
    let poly = Poly::new(&z, f.iter().map(|c| Fq::from_bigint(&ctx, c)).collect());
    let mut v: Vec<usize> = factor_pattern(&poly).unwrap().iter().flat_map(|&(d, m)| std::iter::repeat_n(d, m)).collect();
    v.sort();
    v
}

/// Galois group of the quartic from Frobenius cycle types at unramified primes.
fn oracle_type(f: &[BigInt]) -> GaloisType {
    let disc = poly_discriminant(f).unwrap();
    let mut transposition = false;
    let mut four_cycle = false;
    for p in primes_up_to(3000).into_iter().skip(1) {
        if (&disc % p).is_zero() {
            continue;
        }
        match pattern_mod(f, p).as_slice() {
            [1, 1, 2] => transposition = true,
            [4] => four_cycle = true,
            _ => {}
        }
    }
    if transposition {
        GaloisType::Dihedral
    } else if four_cycle {
        GaloisType::Cyclic
    } else {
        GaloisType::Biquadratic
    }
}

fn kronecker(a: &BigInt, p: u64) -> i64 {
    let a = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    if a == 0 {
        return 0;
    }
    let r = genus2cm::ntheory::pow_mod(a, (p - 1) / 2, p);
    if r == 1 { 1 } else { -1 }
}

fn admissible() -> impl Strategy<Value = QuarticCMField> {
    (2i64..40, -80i64..0, -12i64..13).prop_filter_map("admissible", |(d, a, b)| QuarticCMField::new(d, a, b).ok())
}

#[test]
fn named_types_match_oracle() {
    for (d, a, b) in [(17, -119, 28), (11, -67, 20), (5, -3, 1)] {
        let k = QuarticCMField::new(d, a, b).unwrap();
        assert_eq!(k.galois_type(), oracle_type(&k.minpoly()));
    }
}

#[test]
fn biquadratic_constituents_are_subfields() {
    let k = QuarticCMField::new(5, -3, 1).unwrap();
    let Reflex::Biquadratic { discriminants, .. } = k.reflex_field().unwrap() else { panic!() };
    let disc = poly_discriminant(&k.minpoly()).unwrap();
    let mut seen = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        if (&disc % p).is_zero() {
            continue;
        }
        if pattern_mod(&k.minpoly(), p) == [1, 1, 1, 1] {
            seen += 1;
            for dd in &discriminants {
                assert_eq!(kronecker(dd, p), 1, "p = {p}");
            }
        }
    }
    assert!(seen > 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn galois_type_agrees_with_oracle(k in admissible()) {
        prop_assert_eq!(k.galois_type(), oracle_type(&k.minpoly()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn shapes_sum_to_degree_and_match_dedekind(k in admissible(), p in prop::sample::select(primes_up_to(200))) {
        let prof = k.shape_profile(p).unwrap();
        prop_assert_eq!(prof.k.degree(), 4);
        prop_assert_eq!(prof.k_plus.degree(), 2);
        if let Some(s) = &prof.k_star {
            prop_assert_eq!(s.degree(), 4);
        }
        let f = k.minpoly();
        if !(poly_discriminant(&f).unwrap() % p).is_zero() {
            let fs: Vec<usize> = prof.k.primes.iter().map(|&(e, f)| { assert_eq!(e, 1); f }).collect();
            let mut fs = fs;
            fs.sort();
            prop_assert_eq!(fs, pattern_mod(&f, p));
        }
    }

    #[test]
    fn reflex_of_reflex_is_k(k in admissible()) {
        prop_assume!(k.galois_type() == GaloisType::Dihedral);
        let Reflex::Quartic(ks) = k.reflex_field().unwrap() else { panic!() };
        prop_assert_eq!(ks.galois_type(), GaloisType::Dihedral);
        let Reflex::Quartic(kss) = ks.reflex_field().unwrap() else { panic!() };
        // g(2x) = 16 f(x)
        let f = k.minpoly();
        let g = kss.minpoly();
        for i in 0..5 {
            prop_assert_eq!(&g[i] * BigInt::from(1i64 << i), &f[i] * BigInt::from(16));
        }
        prop_assert_eq!(kss.discriminant().unwrap(), k.discriminant().unwrap());
        for p in primes_up_to(75).into_iter().skip(1) {
            prop_assert_eq!(kss.shape_profile(p).unwrap().k, k.shape_profile(p).unwrap().k);
        }
    }
}
