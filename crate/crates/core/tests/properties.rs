//! Property tests for the algebraic and geometric invariants.

use charvar::arith::{b1_adjoint, chain_bounds, divisors, euler_phi, moebius, B1Input};
use charvar::bending::{
    bending_constancy, centralizer_component, constconj_check, reference_suite, CentralizerKind, SplittingRep,
};
use charvar::mat2core::{classify_isometry, pair_classify, translation_length, CMat, IsomClass, Mat2};
use charvar::polyring::{complex_roots, poly_gcd, resultant, symmetrize, LaurentPoly, SparsePoly};
use charvar::tracecalc::{power_trace, trace_poly, FrickePoint};
use charvar::trianglegrp::{build_hyperbolic, euclidean_epi_search, is_hyperbolic_triple};
use charvar::twobridge::TwoBridgeKnot;
use charvar::word::Word;
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c64() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Unit-determinant matrices with moderate entries.
fn sl2() -> impl Strategy<Value = CMat> {
    (c64(), c64(), c64(), c64()).prop_filter_map("near-singular", |(a, b, c, d)| {
        let det = a * d - b * c;
        (det.norm() > 0.2).then(|| {
            let s = det.sqrt();
            Mat2::new_unchecked(a / s, b / s, c / s, d / s)
        })
    })
}

fn upper() -> impl Strategy<Value = CMat> {
    (c64(), c64()).prop_filter_map("zero diagonal", |(s, u)| {
        (s.norm() > 0.3).then(|| Mat2::new_unchecked(s, u, 0.0.into(), s.inv()))
    })
}

fn rotation(num: u32, den: u32) -> CMat {
    CMat::diag(Complex64::from_polar(1.0, std::f64::consts::PI * num as f64 / den as f64))
}

/// A matrix from one of the four isometry types.
fn any_isometry() -> impl Strategy<Value = CMat> {
    prop_oneof![
        4 => sl2(),
        1 => (1u32..12, 2u32..13, sl2()).prop_map(|(k, n, s)| rotation(k % n + 1, n + 1).conjugate_by(&s)),
        1 => (c64(), sl2()).prop_map(|(u, s)| Mat2::new_unchecked(1.0.into(), u + 1.0, 0.0.into(), 1.0.into()).conjugate_by(&s)),
        1 => sl2().prop_map(|s| CMat::identity().neg().conjugate_by(&s)),
    ]
}

fn same_class(a: IsomClass, b: IsomClass) -> bool {
    match (a, b) {
        (IsomClass::Loxodromic { length: x }, IsomClass::Loxodromic { length: y }) => {
            (x - y).abs() <= 1e-7 * x.abs().max(1.0)
        }
        _ => a == b,
    }
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    (any::<u64>(), 1..=max_len).prop_map(|(seed, len)| Word::random(&mut ChaCha8Rng::seed_from_u64(seed), 2, len))
}

fn int_poly(vars: &'static [&'static str], max_deg: u32) -> impl Strategy<Value = SparsePoly> {
    let k = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, k), -9i64..=9), 1..6)
        .prop_map(move |terms| SparsePoly::from_terms(vars, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn classification_is_conjugation_invariant(a in any_isometry(), s in sl2()) {
        let base = classify_isometry(&a).unwrap();
        prop_assert!(same_class(base, classify_isometry(&a.neg()).unwrap()));
        let c = classify_isometry(&a.conjugate_by(&s)).unwrap();
        prop_assert!(same_class(base, c), "{base:?} vs {c:?}");
    }

    #[test]
    fn trace_identity(u in sl2(), v in sl2()) {
        let lhs = u.mul(&v).trace() + u.mul(&v.inv()).trace();
        let rhs = u.trace() * v.trace();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn constconj_strata_agree(
        stratum in 0u8..5,
        a in sl2(), b in sl2(), c in sl2(),
        ua in upper(), ub in upper(), uc in upper(),
        g in sl2(), sign in any::<bool>(), seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pm = if sign { CMat::identity() } else { CMat::identity().neg() };
        let (a, b, c) = match stratum {
            0 => (a, b, c),
            1 => (ua, ub, uc),
            // a common eigenvector away from the standard frame
            2 => (ua.conjugate_by(&g), ub.conjugate_by(&g), uc.conjugate_by(&g)),
            3 => {
                let z = centralizer_component(std::slice::from_ref(&c)).unwrap();
                (z.sample(&mut rng), b, c)
            }
            _ => (if sign { pm.clone() } else { a }, b, pm),
        };
        let r = constconj_check(&a, &b, &c, &mut rng);
        prop_assert!(r.is_ok(), "{r:?}");
        if stratum == 1 || stratum == 2 || stratum == 3 {
            prop_assert!(r.unwrap().structural);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn translation_length_is_multiplicative(a in sl2(), n in 1i64..6) {
        let t = a.trace();
        prop_assume!((t * t - 4.0).norm() > 0.05 && t.im.abs() > 1e-3 || t.re.abs() > 2.05);
        let l = translation_length(&a).unwrap();
        let ln = translation_length(&a.pow(n)).unwrap();
        prop_assert!((ln - n as f64 * l).abs() <= 1e-9 * ln.max(1.0), "{ln} vs {n}·{l}");
    }

    #[test]
    fn pair_class_is_conjugation_invariant(stratum in 0u8..5, a in sl2(), b in sl2(), ua in upper(), ub in upper(),
                                           k in 1u32..6, n in 3u32..9, s in sl2()) {
        let anti = Mat2::new_unchecked(0.0.into(), 1.0.into(), (-1.0).into(), 0.0.into());
        let (a, b) = match stratum {
            0 => (a, b),
            1 => (ua, ub),
            2 => (CMat::diag(ua.a), CMat::diag(ub.a)),
            3 => (CMat::diag(ua.a), anti.mul(&CMat::diag(ub.a))),
            _ => (rotation(k % n + 1, n), anti),
        };
        let before = pair_classify(&a, &b);
        prop_assume!(before.is_ok());
        let after = pair_classify(&a.conjugate_by(&s), &b.conjugate_by(&s)).unwrap();
        prop_assert_eq!(before.unwrap(), after);
    }

    #[test]
    fn inverse_and_conjugate_words_share_trace(u in word(6), w in word(10)) {
        let tw = trace_poly(&w);
        prop_assert_eq!(&trace_poly(&w.inverse()), &tw);
        prop_assert_eq!(&trace_poly(&w.conjugate_by(&u)), &tw);
    }

    #[test]
    fn bending_is_an_action(seed in 0u64..1000, idx in 0usize..50, s_seed in any::<u64>()) {
        let rep = &reference_suite(seed)[idx].rep;
        let z = rep.centralizer().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(s_seed);
        let (s, t) = (z.sample(&mut rng), z.sample(&mut rng));
        let twice = rep.bend(&s).unwrap().bend(&t).unwrap();
        // amalgams act on the left, HNN extensions on the right; the two
        // agree when the centralizer is abelian
        let prod = match (rep.is_amalgam(), z.kind) {
            (true, CentralizerKind::FullGroup) => t.mul(&s),
            _ => s.mul(&t),
        };
        prop_assert!(twice.approx_eq(&rep.bend(&prod).unwrap(), 1e-9));
        for e in edge_words(rep) {
            let (t0, t1) = (rep.character(&e).unwrap(), twice.character(&e).unwrap());
            prop_assert!((t0 - t1).norm() <= 1e-10 * t0.norm().max(1.0));
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in int_poly(&["x", "y"], 3), g in int_poly(&["x", "y"], 3),
                                            h in int_poly(&["x", "y"], 2), shared in any::<bool>()) {
        let (f, g) = if shared { (&f * &h, &g * &h) } else { (f, g) };
        prop_assume!(f.degree_in(0).unwrap_or(0) > 0 && g.degree_in(0).unwrap_or(0) > 0);
        let r = resultant(&f, &g, 0).unwrap();
        let common = poly_gcd(&f, &g).degree_in(0).unwrap_or(0) > 0;
        prop_assert_eq!(r.is_zero(), common);
    }

    #[test]
    fn roots_match_degree_and_constant(c in prop::collection::vec(-20i64..=20, 2..10)) {
        prop_assume!(*c.last().unwrap() != 0);
        let n = c.len() - 1;
        let f = SparsePoly::from_terms(&["t"], c.iter().enumerate().map(|(i, &v)| (vec![i as u32], BigInt::from(v))));
        let roots = complex_roots(&f).unwrap();
        prop_assert_eq!(roots.len(), n);
        let prod: Complex64 = roots.iter().product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let want = sign * c[0] as f64 / c[n] as f64;
        prop_assert!((prod - want).norm() <= 1e-8 * want.abs().max(1.0), "{prod} vs {want}");
    }

    #[test]
    fn symmetrize_inverts_substitution(c in prop::collection::vec(-50i64..=50, 1..=11)) {
        let g = SparsePoly::from_terms(&["x"], c.iter().enumerate().map(|(i, &v)| (vec![i as u32], BigInt::from(v))));
        let x = LaurentPoly::from_terms([(1, BigInt::from(1)), (-1, BigInt::from(1))]);
        let mut f = LaurentPoly::zero();
        for &v in c.iter().rev() {
            f = f.mul(&x).add(&LaurentPoly::monomial(0, v));
        }
        prop_assert_eq!(symmetrize(&f, "x").unwrap(), g);
    }

    #[test]
    fn b1_adjoint_is_linear(n in 2u64..200, x in (-5i64..=5, -5i64..=5, -5i64..=5), y in (-5i64..=5, -5i64..=5, -5i64..=5)) {
        let ds = divisors(n as i64).unwrap();
        let phi = euler_phi(n as i64).unwrap() as i64;
        // three covers with integral contributions 1, 0 and 1
        let cover = |(a, b, c): (i64, i64, i64)| -> Vec<i64> {
            ds.iter().map(|&d| a * d as i64 + b + if d == n { c * phi } else { 0 } + 100 * (d as i64)).collect()
        };
        let eval = |v: &[i64]| {
            b1_adjoint(&B1Input {
                n,
                b1_gamma: 3,
                b1_gamma2: 5,
                b1_cover: ds.iter().copied().zip(v.iter().map(|&x| x as u64)).collect(),
            }).unwrap()
        };
        let (cx, cy) = (cover(x), cover(y));
        let base: Vec<i64> = ds.iter().map(|&d| 100 * d as i64).collect();
        let sum: Vec<i64> = cx.iter().zip(&cy).zip(&base).map(|((a, b), c)| a + b - c).collect();
        prop_assert_eq!(eval(&sum) - eval(&base), (eval(&cx) - eval(&base)) + (eval(&cy) - eval(&base)));
        prop_assert_eq!(eval(&cx) - eval(&base), x.0 + x.2);
    }
}

proptest! {
    // words up to length 32, whose trace polynomials are large
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_traces_compose(w in word(4), n in 1i64..=8, a in sl2(), b in sl2()) {
        let cw = w.cyclically_reduced();
        prop_assume!(!cw.is_empty());
        let pt = FrickePoint::of_pair(&a, &b);
        let tw = trace_poly(&cw);
        let twn = trace_poly(&cw.pow(n));
        let t = tw.eval_c64(&[pt.x, pt.y, pt.z]);
        let via_pn = power_trace(n).eval_c64(&[t]);
        let direct = twn.eval_c64(&[pt.x, pt.y, pt.z]);
        // monomial-basis evaluation cancels heavily, so the error scale is
        // the evaluation with all signs made positive
        let scale = abs_eval(&twn, &[pt.x, pt.y, pt.z]).max((1.0 + t.norm()).powi(n as i32));
        prop_assert!((via_pn - direct).norm() <= 1e-10 * scale, "{via_pn} vs {direct}");
        prop_assert!((via_pn * via_pn - direct * direct).norm() <= 1e-10 * scale * scale);
        prop_assert_eq!(twn.total_degree(), tw.total_degree().map(|d| d * n as u32));
    }
}

fn abs_eval(f: &SparsePoly, pt: &[Complex64]) -> f64 {
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let g = SparsePoly::from_terms(&vars, f.terms().map(|(m, c)| (m.0.clone(), c.magnitude().clone().into())));
    let apt: Vec<Complex64> = pt.iter().map(|z| Complex64::from(z.norm())).collect();
    g.eval_c64(&apt).re
}

fn edge_words(rep: &SplittingRep) -> Vec<Word> {
    match rep {
        SplittingRep::Amalgam { edge, .. } | SplittingRep::Hnn { edge, .. } => {
            edge.iter().map(|e| e.from.clone()).collect()
        }
    }
}

#[test]
fn nonconstant_bends_carry_witnesses() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for c in reference_suite(seed).iter().filter(|c| !c.expected.is_constant()) {
            let r = bending_constancy(&c.rep, &mut rng).unwrap();
            let w = r.witness.expect("witness");
            let before = c.rep.character(&w.word).unwrap();
            let after = c.rep.bend(&w.bend).unwrap().character(&w.word).unwrap();
            let gap = (before - after).norm().min((before + after).norm());
            assert!(gap > 1e-3, "{}: gap {gap}", c.label);
        }
    }
}

#[test]
fn arithmetic_sums() {
    for n in 1..=10_000i64 {
        let ds = divisors(n).unwrap();
        let phi_sum: u64 = ds.iter().map(|&d| euler_phi(d as i64).unwrap()).sum();
        assert_eq!(phi_sum, n as u64);
        let mu_sum: i64 = ds.iter().map(|&d| moebius(d as i64).unwrap()).sum();
        assert_eq!(mu_sum, (n == 1) as i64);
    }
}

#[test]
fn bounds_respect_schubert_equivalence() {
    for k in TwoBridgeKnot::enumerate(3, 61) {
        let k2 = TwoBridgeKnot::new(k.p() as i64, k.q_inverse() as i64).unwrap();
        let (a, b) = (chain_bounds(&k), chain_bounds(&k2));
        assert_eq!(a.q_representative, b.q_representative);
        assert_eq!((a.dom_bound, a.dom_bound_chain, a.deg1_bound), (b.dom_bound, b.dom_bound_chain, b.deg1_bound));
        assert_eq!(
            (a.minimality, a.prime_power, a.strict_epi_bound),
            (b.minimality, b.prime_power, b.strict_epi_bound)
        );
    }
}

#[test]
fn euclidean_search_is_stable_under_extension() {
    assert_eq!(euclidean_epi_search(-50, 50), vec![1]);
}

#[test]
fn hyperbolic_generator_traces() {
    for p in 2..=7u32 {
        for q in p..=8 {
            for r in q..=9 {
                if !is_hyperbolic_triple(p, q, r) {
                    continue;
                }
                let g = build_hyperbolic(p, q, r).unwrap();
                assert!(g.relation_residual() <= 1e-10, "({p},{q},{r})");
                let [x, y, z] = g.matrices().unwrap();
                for (m, k) in [(x, p), (y, q), (z, r)] {
                    let want = 2.0 * (std::f64::consts::PI / k as f64).cos();
                    assert!((m.trace().norm() - want).abs() <= 1e-12, "({p},{q},{r}) order {k}");
                }
            }
        }
    }
}
