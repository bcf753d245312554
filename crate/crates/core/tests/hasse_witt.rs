use genus2cm::field::{Fq, FqCtx, Scalar};
use genus2cm::hasse_witt::*;
use genus2cm::invariants::transform_sextic;
use genus2cm::ntheory::primes_up_to;
use genus2cm::Poly;
use num_bigint::BigInt;
use proptest::prelude::*;

const VAN_WAMELEN: [i64; 7] = [-91839, 22627, -48400, 4760, 1120, -64, -8];

#[test]
fn x5_plus_1_depends_on_p_mod_5() {
    for p in primes_up_to(100) {
        if p == 2 || p == 5 {
            continue;
        }
        let pr = profile_mod_p(&[1, 0, 0, 0, 0, 1], p).unwrap();
        let expect = match p % 5 {
            1 => (0, 2),
            2 | 3 => (1, 0),
            _ => (2, 0),
        };
        assert_eq!((pr.a_number, pr.f_number), expect, "p = {p}");
    }
}

#[test]
fn van_wamelen_curve() {
    let f: Vec<BigInt> = VAN_WAMELEN.iter().map(|&c| BigInt::from(c)).collect();
    let m = hasse_witt_integer(&f, 5);
    let want = [[2352249680i64, -3064600880], [-219520, 1419520]];
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(m[i][j], BigInt::from(want[i][j]));
        }
    }
    for p in [5u64, 13] {
        let m = hasse_witt_integer(&f, p);
        assert!(m.iter().flatten().all(|x| (x % BigInt::from(p)) == BigInt::from(0)), "p = {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn profile_laws_and_gl2_invariance(
        p in prop::sample::select(vec![7u64, 11, 13, 23, 31]),
        u in prop::collection::vec(0u64..1000, 7),
        m in prop::collection::vec(0u64..1000, 4),
    ) {
        let ctx = FqCtx::prime(p).unwrap();
        let z = Fq::from_i64(&ctx, 0);
        let uu: Vec<Fq> = u.iter().map(|&c| Fq::from_i64(&ctx, c as i64)).collect();
        let f = Poly::new(&z, uu.iter().rev().cloned().collect());
        let Ok(hw) = hasse_witt(&f) else { return Ok(()) };
        let pr = af_numbers(&hw).unwrap();
        prop_assert!(pr.a_number + pr.f_number <= 2);
        prop_assert_eq!(pr.superspecial, (pr.a_number, pr.f_number) == (2, 0));
        prop_assert_eq!(pr.ordinary, (pr.a_number, pr.f_number) == (0, 2));

        let mm: Vec<Fq> = m.iter().map(|&c| Fq::from_i64(&ctx, c as i64)).collect();
        prop_assume!(!mm[0].times(&mm[3]).minus(&mm[1].times(&mm[2])).is_zero());
        let arr: [Fq; 7] = uu.try_into().unwrap();
        let v = transform_sextic(&arr, [[mm[0].clone(), mm[1].clone()], [mm[2].clone(), mm[3].clone()]]);
        let g = Poly::new(&z, v.iter().rev().cloned().collect());
        let pr2 = af_numbers(&hasse_witt(&g).unwrap()).unwrap();
        prop_assert_eq!(pr, pr2);
    }
}
