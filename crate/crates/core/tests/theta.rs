use genus2cm::cmfield::QuarticCMField;
use genus2cm::error::Error;
use genus2cm::float::{CBall, Float};
use genus2cm::invariants::AbsoluteInvariants;
use genus2cm::theta::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-30;

fn random_tau(rng: &mut ChaCha8Rng) -> PeriodMatrix {
    let y1 = rng.gen_range(0.9..1.6);
    let y2 = rng.gen_range(0.9..1.6);
    let y12 = rng.gen_range(-0.3..0.3);
    let x: [f64; 3] = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
    PeriodMatrix::from_f64([(x[0], y1), (x[1], y12), (x[2], y2)], 30).unwrap()
}

fn rel(a: &CBall, b: &CBall) -> f64 {
    a.sub(b).abs_upper() / b.abs_lower()
}

fn ball(re: f64, im: f64, prec: u32) -> CBall {
    CBall::new(Float::from_f64(re), Float::from_f64(im), 0.0, prec)
}

#[test]
fn odd_theta_constants_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let tau = random_tau(&mut rng);
        for c in ThetaChar::odd() {
            assert!(theta_constant(&tau, &c, TOL).unwrap().abs_upper() < 1e-20, "{}", c.label());
        }
    }
}

#[test]
fn squares_depend_on_characteristic_mod_2() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let tau = random_tau(&mut rng);
        let c = ThetaChar::even()[rng.gen_range(0..10)];
        let shifted = ThetaChar::new(
            [c.eps[0] + 2 * rng.gen_range(-2..3), c.eps[1] + 2 * rng.gen_range(-2..3)],
            [c.eps_p[0] + 2 * rng.gen_range(-2..3), c.eps_p[1] + 2 * rng.gen_range(-2..3)],
        );
        let a = theta_constant(&tau, &c, TOL).unwrap().sqr();
        let b = theta_constant(&tau, &shifted, TOL).unwrap().sqr();
        assert!(a.sub(&b).abs_upper() < 1e-25);
    }
}

#[test]
fn theta_null_near_the_cusp() {
    let tau = PeriodMatrix::from_f64([(0.0, 10.0), (0.0, 0.0), (0.0, 10.0)], 30).unwrap();
    let v = theta_constant(&tau, &ThetaChar::parse("0000").unwrap(), TOL).unwrap();
    // 1 + 4 e^{-10 pi} + ...
    let expect = 1.0 + 4.0 * (-10.0 * std::f64::consts::PI).exp();
    assert!((v.to_c64().0 - expect).abs() < 1e-12);
}

#[test]
fn big_theta_vanishes_exactly_on_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let t = PeriodMatrix::from_f64(
            [(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6)), (0.0, 0.0), (rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6))],
            30,
        )
        .unwrap();
        assert!(big_theta(&t, TOL).unwrap().abs_upper() < 1e-10);
        assert!(matches!(rosenhain(&t, TOL), Err(Error::DegeneratePoint(_))));
    }
    for _ in 0..10 {
        let t = random_tau(&mut rng);
        assert!(big_theta(&t, TOL).unwrap().abs_lower() > 1e-9);
    }
}

#[test]
fn big_theta_transformation_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..3 {
        let t = random_tau(&mut rng);
        let a = big_theta(&t, TOL).unwrap();
        let b = big_theta(&t.translate(1, -2, 1), TOL).unwrap();
        assert!(rel(&b, &a) < 1e-20);
        // weight 10: Theta(-1/tau) = det(tau)^10 Theta(tau)
        let det = t.t11.mul(&t.t22).sub(&t.t12.sqr());
        let c = big_theta(&t.minus_inverse().unwrap(), TOL).unwrap();
        assert!(rel(&c, &det.pow(10).mul(&a)) < 1e-20);
    }
    // i I_2 is fixed by tau -> -1/tau but is also a product point, so Theta vanishes there
    let i2 = PeriodMatrix::from_f64([(0.0, 1.0), (0.0, 0.0), (0.0, 1.0)], 30).unwrap();
    let v = big_theta(&i2, TOL).unwrap();
    assert!(v.abs_upper() < 1e-10);
}

#[test]
fn rosenhain_generic_point() {
    let t = PeriodMatrix::from_f64([(0.0, 1.1), (0.2, 0.1), (0.0, 1.3)], 30).unwrap();
    let l = rosenhain(&t, TOL).unwrap();
    let one = CBall::one(t.prec);
    for i in 0..3 {
        assert!(!l[i].contains_zero() && !l[i].sub(&one).contains_zero());
        for j in 0..i {
            assert!(!l[i].sub(&l[j]).contains_zero());
        }
    }
}

fn assert_same(a: &AbsoluteInvariants<CBall>, b: &AbsoluteInvariants<CBall>, tol: f64) {
    assert!(rel(&b.i1, &a.i1) < tol, "i1 {:?} {:?}", a.i1, b.i1);
    assert!(rel(&b.i2, &a.i2) < tol);
    assert!(rel(&b.i3, &a.i3) < tol);
}

#[test]
fn invariants_are_modular() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let t = random_tau(&mut rng);
        let a = invariants_from_tau(&t, TOL).unwrap();
        assert_same(&a, &invariants_from_tau(&t.translate(1, 0, 0), TOL).unwrap(), 1e-8);
        assert_same(&a, &invariants_from_tau(&t.translate(0, 1, -1), TOL).unwrap(), 1e-8);
        assert_same(&a, &invariants_from_tau(&t.minus_inverse().unwrap(), TOL).unwrap(), 1e-8);
    }
}

#[test]
fn invariants_ignore_the_choice_of_lambdas() {
    let t = PeriodMatrix::from_f64([(0.0, 1.1), (0.2, 0.1), (0.0, 1.3)], 30).unwrap();
    let l = rosenhain(&t, TOL).unwrap();
    let a = invariants_from_lambdas(&l).unwrap();
    let one = CBall::one(t.prec);
    let swapped = [one.sub(&l[0]), one.sub(&l[1]), one.sub(&l[2])];
    assert_same(&a, &invariants_from_lambdas(&swapped).unwrap(), 1e-20);
    let permuted = [l[2].clone(), l[0].clone(), l[1].clone()];
    assert_same(&a, &invariants_from_lambdas(&permuted).unwrap(), 1e-20);
}

#[test]
fn invariants_blow_up_near_products() {
    let t = PeriodMatrix::from_f64([(0.0, 1.1), (0.0, 1e-4), (0.0, 1.3)], 30).unwrap();
    let a = invariants_from_tau(&t, TOL).unwrap();
    assert!(a.i1.abs_lower() > 1e6);
}

#[test]
fn genus_one_product_over_delta_is_constant() {
    let prec = bits_for_digits(30);
    let pts = [(0.0, 1.0), (0.3, 0.9), (-0.2, 1.5), (0.45, 1.1), (0.1, 2.0)];
    let r8: Vec<CBall> = pts.iter().map(|&(x, y)| jacobi_ratio(&ball(x, y, prec), 8, TOL).unwrap()).collect();
    for r in &r8 {
        assert!(rel(r, &r8[0]) < 1e-8);
    }
    assert!((r8[0].to_c64().0 - 256.0).abs() < 1e-8);
    // fourth powers have weight 6, so their ratio to Delta moves
    let r4: Vec<CBall> = pts.iter().map(|&(x, y)| jacobi_ratio(&ball(x, y, prec), 4, TOL).unwrap()).collect();
    assert!(rel(&r4[1], &r4[0]) > 0.1);
}

fn values(v: &[(f64, f64)], prec: u32) -> Vec<AbsoluteInvariants<CBall>> {
    v.iter()
        .map(|&(re, im)| {
            let b = ball(re, im, prec);
            AbsoluteInvariants { i1: b.clone(), i2: b.clone(), i3: b }
        })
        .collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn reconstruction_from_synthetic_values() {
    let p = bits_for_digits(30);
    let fixed = |n: i64| DenominatorBound::Fixed(BigInt::from(n));
    let one = class_polynomial_from_values(&values(&[(2.5, 0.0)], p), &fixed(2), 1e-10).unwrap();
    assert_eq!(one.h[0].coeffs, vec![q(1, 1), q(-5, 2)]);

    // a +- b i with a = 3/7, b = 2: x^2 - 6/7 x + (9/49 + 4)
    let a = 3.0 / 7.0;
    let vals = values(&[(a, 2.0), (a, -2.0)], p);
    let h = class_polynomial_from_values(&vals, &fixed(49), 1e-6).unwrap();
    assert_eq!(h.h[0].coeffs, vec![q(1, 1), q(-6, 7), q(205, 49)]);
    // halving the tolerance does not change an accepted answer
    let h2 = class_polynomial_from_values(&vals, &fixed(49), 5e-7).unwrap();
    assert_eq!(h.h[0].coeffs, h2.h[0].coeffs);
}

#[test]
fn wrong_denominator_is_reported() {
    let p = bits_for_digits(30);
    let v = values(&[(1.0 / 7.0, 0.0)], p);
    let r = class_polynomial_from_values(&v, &DenominatorBound::Fixed(BigInt::from(1)), 1e-6);
    assert!(matches!(r, Err(Error::Reconstruction(_))));
}

#[test]
fn automatic_denominators() {
    let k = QuarticCMField::new(17, -119, 28).unwrap();
    let d = DenominatorBound::Auto { field: k, primes: vec![7] };
    assert_eq!(d.for_coefficient(1, 0).unwrap(), BigInt::from(1));
    // floor(24 (log_7 481474 + 1)) = 185
    assert_eq!(d.for_coefficient(1, 1).unwrap(), num_traits::pow(BigInt::from(7), 185));
    let bad = DenominatorBound::Auto { field: QuarticCMField::new(17, -119, 28).unwrap(), primes: vec![3] };
    assert!(bad.for_coefficient(1, 1).is_err());
}

#[test]
fn tau_files() {
    let one = r#"{"t11": {"re": "0", "im": "1.1"}, "t12": {"re": "0.2", "im": "0.1"}, "t22": {"re": "0", "im": "1.3"}}"#;
    assert_eq!(parse_tau_json(one, 30).unwrap().len(), 1);
    let many = format!("{{\"taus\": [{one}, {one}]}}");
    assert_eq!(parse_tau_json(&many, 30).unwrap().len(), 2);
    let bad = r#"{"t11": {"re": "0", "im": "-1"}, "t12": {"re": "0", "im": "0"}, "t22": {"re": "0", "im": "1"}}"#;
    assert!(parse_tau_json(bad, 30).is_err());
}
