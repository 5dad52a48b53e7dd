//! Cross-checks between the character curve, its lifts and other modules.

use charvar::tracecalc::FrickePoint;
use charvar::trianglegrp::{hyperbolic_scan, scenario_fricke_point, TwistKnotGroup};
use charvar::twobridge::{
    character_poly, cs_degree, dihedral_census, lift_representation, TwoBridgeKnot, RILEY_RESIDUAL_TOL,
};
use charvar::word::Word;
use num_complex::Complex64;

#[test]
fn curve_points_lift_and_lifts_lie_on_curve() {
    let xs = [Complex64::new(0.37, 0.21), Complex64::new(-1.3, 0.8), Complex64::new(2.9, -0.4)];
    for k in TwoBridgeKnot::enumerate(3, 11) {
        let c = character_poly(&k).unwrap();
        let norm = c.phi.coeff_norm();
        for &x in &xs {
            let lifts = lift_representation(&c, x).unwrap();
            // both roots m, 1/m of the meridian eigenvalue equation lift
            assert_eq!(lifts.len(), 2 * c.deg_z as usize, "{k} at {x}");
            for l in lifts {
                assert!(l.residual <= RILEY_RESIDUAL_TOL, "{k}: residual {}", l.residual);
                let pt = FrickePoint::of_pair(&l.a, &l.b);
                assert!((pt.x - x).norm() <= 1e-9 * x.norm().max(1.0));
                assert!(c.eval(pt.x, pt.z).norm() <= 1e-6 * norm, "{k}: Φ = {}", c.eval(pt.x, pt.z));
            }
        }
    }
}

/// `∏_{i<j} (z_i − z_j)²` over the parabolic slice `x = 2`.
fn parabolic_discriminant(k: &TwoBridgeKnot) -> f64 {
    let zs = character_poly(k).unwrap().z_roots(Complex64::new(2.0, 0.0)).unwrap();
    let mut d = Complex64::new(1.0, 0.0);
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            d *= (zs[i] - zs[j]) * (zs[i] - zs[j]);
        }
    }
    assert!(d.im.abs() <= 1e-6 * d.norm().max(1.0));
    d.re
}

#[test]
fn mirror_images_share_a_curve() {
    for k in TwoBridgeKnot::enumerate(3, 17) {
        let m = TwoBridgeKnot::new(k.p() as i64, (k.p() - k.q()) as i64).unwrap();
        assert_eq!(character_poly(&k).unwrap().phi, character_poly(&m).unwrap().phi, "{k} vs {m}");
    }
}

// z = tr(ab) depends on which meridian pair generates, so q and q⁻¹ give
// different charts of the same curve; compare chart-free data instead.
#[test]
fn schubert_equivalent_knots_agree_on_invariants() {
    for k in TwoBridgeKnot::enumerate(3, 17) {
        let k2 = TwoBridgeKnot::new(k.p() as i64, k.q_inverse() as i64).unwrap();
        assert!(k.schubert_equivalent(&k2));
        let (c1, c2) = (character_poly(&k).unwrap(), character_poly(&k2).unwrap());
        assert_eq!(c1.deg_z, c2.deg_z, "{k} vs {k2}");
        assert_eq!(dihedral_census(&c1).unwrap().distinct, dihedral_census(&c2).unwrap().distinct);
        let (d1, d2) = (parabolic_discriminant(&k), parabolic_discriminant(&k2));
        assert!((d1 - d2).abs() <= 1e-6 * d1.abs().max(1.0), "{k} vs {k2}: {d1} vs {d2}");
    }
}

#[test]
fn meridian_powers_scale_the_degree() {
    for k in TwoBridgeKnot::enumerate(3, 11) {
        let c = character_poly(&k).unwrap();
        let base = cs_degree(&c, &Word::gen(0)).unwrap();
        for n in [-4i64, -2, 2, 3, 4] {
            assert_eq!(cs_degree(&c, &Word::gen_pow(0, n)).unwrap(), n.unsigned_abs() as usize * base, "{k}, n = {n}");
        }
    }
}

#[test]
fn satisfied_scenarios_lie_on_the_twist_knot_curve() {
    let reports = hyperbolic_scan(-1, 1, 12).unwrap();
    assert!(reports.iter().any(|r| r.satisfied));
    for r in reports.iter().filter(|r| r.satisfied) {
        let (p, q) = TwistKnotGroup::new(r.n).unwrap().two_bridge().expect("n = ±1");
        let c = character_poly(&TwoBridgeKnot::new(p as i64, q as i64).unwrap()).unwrap();
        let pt = scenario_fricke_point(&r.params).unwrap();
        assert!((pt.x - pt.y).norm() <= 1e-9, "{:?}", r.params);
        assert!(c.eval(pt.x, pt.z).norm() <= 1e-8 * c.phi.coeff_norm(), "{:?}: Φ = {}", r.params, c.eval(pt.x, pt.z));
    }
}
