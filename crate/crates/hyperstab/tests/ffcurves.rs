use hyperstab::ffcurves::*;
use proptest::prelude::*;

fn poly(q: u32, coeffs: Vec<u32>) -> FqPoly {
    FqPoly::new(coeffs.into_iter().map(|c| c % q).collect())
}

/// Brute-force point count straight from the definition over F_q itself.
fn naive_count(q: u32, d: &FqPoly, f: &Field) -> i64 {
    let squares: Vec<bool> = (0..q).map(|a| (0..q).any(|y| f.mul(y, y) == a)).collect();
    let mut n = 0;
    for x in 0..q {
        let v = d.eval(x, f);
        n += if v == 0 { 1 } else if squares[v as usize] { 2 } else { 0 };
    }
    n + if d.degree() % 2 == 1 { 1 } else { 2 }
}

#[test]
fn point_counts_match_naive() {
    for q in [3u64, 5, 7, 9] {
        let ctx = FqContext::new(q).unwrap();
        for d in enumerate_squarefree(&ctx, 3).unwrap().take(40) {
            assert_eq!(curve_point_counts(&ctx, &d, 1).unwrap()[0], naive_count(ctx.q(), &d, ctx.field()), "q={q} {d}");
        }
    }
}

#[test]
fn x3_plus_x_over_f5() {
    let ctx = FqContext::new(5).unwrap();
    let d = FqPoly::new(vec![0, 1, 0, 1]);
    let n1 = naive_count(5, &d, ctx.field());
    assert_eq!(curve_point_counts(&ctx, &d, 1).unwrap(), vec![n1]);
    let cd = frobenius_data(&ctx, &d).unwrap();
    assert_eq!(cd.charpoly, vec![1, -(5 + 1 - n1), 5]);
}

#[test]
fn dual_method_and_rh_small() {
    for q in [3u64, 5, 7] {
        let ctx = FqContext::new(q).unwrap();
        for n in 1..=4 {
            for d in enumerate_squarefree(&ctx, n).unwrap() {
                let cd = frobenius_data(&ctx, &d).unwrap();
                assert_eq!(lfunction_charsum(&ctx, &d).unwrap(), cd.lfunction());
                assert!(rh_deviation(&cd) < 1e-9);
                assert!(check_functional_equation(&ctx, &cd).unwrap());
            }
        }
    }
}

proptest! {
    #[test]
    fn jacobi_multiplicative(
        q in prop::sample::select(vec![3u32, 5, 7, 9]),
        a in prop::collection::vec(0u32..9, 1..6),
        b in prop::collection::vec(0u32..9, 1..6),
        m in prop::collection::vec(0u32..9, 1..5),
    ) {
        let ctx = FqContext::new(q as u64).unwrap();
        let f = ctx.field();
        let mut mc = m;
        mc.push(1);
        let m = poly(q, mc);
        let (a, b) = (poly(q, a), poly(q, b));
        let ab = a.mul(&b, f);
        prop_assert_eq!(
            jacobi_symbol(&ab, &m, f).unwrap(),
            jacobi_symbol(&a, &m, f).unwrap() * jacobi_symbol(&b, &m, f).unwrap()
        );
    }

    #[test]
    fn jacobi_multiplicative_in_modulus(
        q in prop::sample::select(vec![3u32, 5, 7]),
        d in prop::collection::vec(0u32..7, 1..6),
        m1 in prop::collection::vec(0u32..7, 1..4),
        m2 in prop::collection::vec(0u32..7, 1..4),
    ) {
        let ctx = FqContext::new(q as u64).unwrap();
        let f = ctx.field();
        let mk = |mut v: Vec<u32>| { v.push(1); poly(q, v) };
        let (m1, m2) = (mk(m1), mk(m2));
        let d = poly(q, d);
        prop_assert_eq!(
            jacobi_symbol(&d, &m1.mul(&m2, f), f).unwrap(),
            jacobi_symbol(&d, &m1, f).unwrap() * jacobi_symbol(&d, &m2, f).unwrap()
        );
    }

    #[test]
    fn squares_are_residues(q in prop::sample::select(vec![3u32, 5, 7, 9]), d in prop::collection::vec(0u32..9, 1..5), m in prop::collection::vec(0u32..9, 1..5)) {
        let ctx = FqContext::new(q as u64).unwrap();
        let f = ctx.field();
        let mut mc = m;
        mc.push(1);
        let m = poly(q, mc);
        let d = poly(q, d);
        prop_assume!(!d.is_zero() && d.gcd(&m, f).degree() == 0);
        prop_assert_eq!(jacobi_symbol(&d.mul(&d, f), &m, f).unwrap(), 1);
    }
}
