use genus2cm::field::{Fq, FqCtx, Scalar};
use genus2cm::invariants::*;
use genus2cm::Error;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ic_q(u: &[i64]) -> IgusaClebsch<BigRational> {
    igusa_clebsch(&HyperellipticModel::new(u.iter().map(|&n| q(n)).collect()).unwrap()).unwrap()
}

#[test]
fn repeated_root_gives_zero_discriminant() {
    let u: Vec<_> = [1, -1, 0, 0, 0, 0, 0].iter().map(|&n| q(n)).collect();
    assert!(HyperellipticModel::new(u.clone()).is_err());
    let m = HyperellipticModel::new_singular(u).unwrap();
    assert_eq!(igusa_clebsch(&m).unwrap().d, q(0));
}

#[test]
fn j_and_gamma_small_vectors() {
    let j = j_from_igusa_clebsch(&IgusaClebsch { a: q(0), b: q(0), c: q(0), d: q(4096) }).unwrap();
    assert_eq!(j.to_vec(), vec![q(0), q(0), q(0), q(0), q(1)]);
    assert!(gamma_from_j(&j).unwrap().g.iter().all(|x| x.is_zero()));

    let raw = JVector { j2: q(1), j4: q(1), j6: q(1), j8: q(0), j10: q(1) };
    let g = gamma_from_j(&raw).unwrap();
    let ones = [0, 1, 2, 4, 7];
    for (k, x) in g.g.iter().enumerate() {
        assert_eq!(*x, if ones.contains(&k) { q(1) } else { q(0) }, "gamma_{}", k + 1);
    }

    let zero_j10 = JVector { j2: q(1), j4: q(1), j6: q(1), j8: q(0), j10: q(0) };
    assert!(matches!(gamma_from_j(&zero_j10), Err(Error::Degenerate)));
}

#[test]
fn table_rows_for_unit_gamma1() {
    let mut g = [q(0), q(0), q(0), q(0), q(0), q(0), q(0), q(0), q(0), q(0)];
    assert_eq!(absolute_from_gamma(&GammaVector { g: g.clone() }).unwrap().to_vec(), vec![q(0), q(0), q(0)]);
    g[0] = q(1);
    let a = absolute_from_gamma(&GammaVector { g }).unwrap();
    assert_eq!(a.to_vec(), vec![q(8), qr(1, 2), qr(1, 8)]);
    let back = gamma_from_absolute(&a).unwrap();
    assert_eq!(back.g[0], q(1));
    assert_eq!(back.g[1], q(0));
    assert_eq!(back.g[2], q(0));
}

#[test]
fn absolute_with_vanishing_a() {
    let a = absolute_from_igusa_clebsch(&IgusaClebsch { a: q(0), b: q(3), c: q(5), d: q(7) }).unwrap();
    assert_eq!(a.to_vec(), vec![q(0), q(0), q(0)]);
}

#[test]
fn isomorphism_examples() {
    let ic = ic_q(&[2, -1, 3, 0, 1, 5, -4]);
    assert!(is_isomorphic(&ic, &ic.scaled(&q(3))).unwrap());
    let quintic = ic_q(&[0, 1, 0, 0, 0, 0, 1]);
    let consecutive = ic_q(&[1, -15, 85, -225, 274, -120, 0]);
    assert!(!is_isomorphic(&quintic, &consecutive).unwrap());

    let ctx = FqCtx::prime(17).unwrap();
    let e = |n| Fq::from_i64(&ctx, n);
    let other = FqCtx::prime(19).unwrap();
    let f = |n| Fq::from_i64(&other, n);
    let a = IgusaClebsch { a: e(1), b: e(1), c: e(1), d: e(1) };
    let b = IgusaClebsch { a: f(1), b: f(1), c: f(1), d: f(1) };
    assert!(matches!(is_isomorphic(&a, &b), Err(Error::FieldMismatch)));
}

#[test]
fn good_reduction_examples() {
    let ints = GammaVector { g: std::array::from_fn(|k| q(k as i64 - 3)) };
    assert!(good_reduction_tests(&ints, 7).unwrap().potentially_good);
    let mut g = ints.g.clone();
    g[0] = qr(1, 7);
    assert!(!good_reduction_tests(&GammaVector { g }, 7).unwrap().potentially_good);
    assert!(good_reduction_tests(&ints, 2).is_err());

    let gamma = |u: &[i64]| gamma_from_j(&j_from_igusa_clebsch(&ic_q(u)).unwrap()).unwrap();
    let g1 = gamma(&[0, 1, 0, 0, 0, 0, 1]);
    let g2 = gamma(&[0, 64, 0, 0, 0, 0, 64]);
    assert!(reductions_isomorphic(&g1, &g2, 11).unwrap());
}

fn fp_sextic(p: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..p, 7)
}

fn to_fq(ctx: &std::sync::Arc<FqCtx>, v: &[u64]) -> Vec<Fq> {
    v.iter().map(|&n| Fq::from_i64(ctx, n as i64)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn homogeneity_under_gl2(u in fp_sextic(101), m in prop::collection::vec(0u64..101, 4)) {
        let ctx = FqCtx::prime(101).unwrap();
        let uu = to_fq(&ctx, &u);
        let Ok(model) = HyperellipticModel::new(uu.clone()) else { return Ok(()) };
        let mm = to_fq(&ctx, &m);
        let det = mm[0].times(&mm[3]).minus(&mm[1].times(&mm[2]));
        prop_assume!(!det.is_zero());
        let mat = [[mm[0].clone(), mm[1].clone()], [mm[2].clone(), mm[3].clone()]];
        let u2 = transform_sextic(model.coeffs(), mat);
        let ic = igusa_clebsch(&model).unwrap();
        let ic2 = igusa_clebsch(&HyperellipticModel::new(u2.to_vec()).unwrap()).unwrap();
        prop_assert_eq!(ic2.a.clone(), ic.a.times(&det.pow_u64(6)));
        prop_assert_eq!(ic2.b.clone(), ic.b.times(&det.pow_u64(12)));
        prop_assert_eq!(ic2.c.clone(), ic.c.times(&det.pow_u64(18)));
        prop_assert_eq!(ic2.d.clone(), ic.d.times(&det.pow_u64(30)));
        prop_assert!(is_isomorphic(&ic, &ic2).unwrap());
    }

    #[test]
    fn j8_identity_and_gamma_relations(u in fp_sextic(101)) {
        let ctx = FqCtx::prime(101).unwrap();
        let Ok(model) = HyperellipticModel::new(to_fq(&ctx, &u)) else { return Ok(()) };
        let ic = igusa_clebsch(&model).unwrap();
        let j = j_from_igusa_clebsch(&ic).unwrap();
        let four = Fq::from_i64(&ctx, 4);
        prop_assert_eq!(j.j8.times(&four), j.j2.times(&j.j6).minus(&j.j4.times(&j.j4)));
        let g = gamma_from_j(&j).unwrap().g;
        // gamma_1 gamma_5 and gamma_2 gamma_3 are both J2^5 J4 J6 / J10^2
        prop_assert_eq!(g[0].times(&g[4]), g[1].times(&g[2]));
        // both J2^2 J6^2 J8^3 / J10^4
        prop_assert_eq!(g[3].pow_u64(2).times(&g[6]), g[2].times(&g[8]));
        let a = absolute_from_igusa_clebsch(&ic).unwrap();
        if ic.a.is_zero() {
            prop_assert!(a.i2.is_zero() && a.i3.is_zero());
        } else {
            prop_assert_eq!(gamma_from_absolute(&a).unwrap(), gamma_from_j(&j).unwrap());
        }
    }

    #[test]
    fn quintic_matches_moved_infinity(u in fp_sextic(101)) {
        // swapping x and z moves the root at infinity to 0; det = -1 and all indices are even
        let ctx = FqCtx::prime(101).unwrap();
        let mut v = to_fq(&ctx, &u);
        v[0] = v[0].zero_like();
        let Ok(model) = HyperellipticModel::new(v) else { return Ok(()) };
        let z = Fq::from_i64(&ctx, 0);
        let o = Fq::from_i64(&ctx, 1);
        let swapped = transform_sextic(model.coeffs(), [[z.clone(), o.clone()], [o.clone(), z.clone()]]);
        prop_assume!(!swapped[0].is_zero());
        let ic = igusa_clebsch(&model).unwrap();
        let ic2 = igusa_clebsch(&HyperellipticModel::new(swapped.to_vec()).unwrap()).unwrap();
        prop_assert_eq!(ic, ic2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn rational_paths_agree(u in prop::collection::vec(-6i64..7, 7)) {
        let coeffs: Vec<_> = u.iter().map(|&n| q(n)).collect();
        let Ok(model) = HyperellipticModel::new(coeffs) else { return Ok(()) };
        let ic = igusa_clebsch(&model).unwrap();
        prop_assume!(!ic.a.is_zero());
        let j = j_from_igusa_clebsch(&ic).unwrap();
        let a = absolute_from_igusa_clebsch(&ic).unwrap();
        let g = gamma_from_j(&j).unwrap();
        prop_assert_eq!(gamma_from_absolute(&a).unwrap(), g.clone());
        prop_assert_eq!(absolute_from_gamma(&g).unwrap(), a);
        let again = igusa_clebsch(&model).unwrap();
        prop_assert_eq!(again, ic);
    }

    #[test]
    fn table_round_trip(i1 in (-50i64..50).prop_filter("nonzero", |x| *x != 0), i2 in -50i64..50, i3 in -50i64..50, d in 1i64..9) {
        let a = AbsoluteInvariants { i1: qr(i1, d), i2: qr(i2, d), i3: qr(i3, d + 1) };
        let g = gamma_from_absolute(&a).unwrap();
        prop_assert_eq!(absolute_from_gamma(&g).unwrap(), a);
    }
}
