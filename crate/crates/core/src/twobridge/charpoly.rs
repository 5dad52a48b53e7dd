//! The nonabelian character curve of a two-bridge knot group.
//!
//! Riley normal form: `ρ(a) = [[m, 1], [0, m⁻¹]]`, `ρ(b) = [[m, 0], [t, m⁻¹]]`.
//! Writing `W = ρ(w)`, the relation `a w = w b` holds iff
//! `W₂₁ = t W₁₂` and `W₂₂ = (m⁻¹ − m) W₁₂`. With `x = m + m⁻¹` and
//! `z = tr ρ(ab) = x² − 2 + t` these cut out the curve `Φ(x, z) = 0`.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::TwoBridgeKnot;
use crate::mat2core::{pair_classify, CMat, Mat2};
use crate::polyring::{
    is_squarefree_in, poly_gcd, primitive_part_in, resultant, roots_of_coeffs, squarefree_part, symmetrize,
    LaurentPoly, SparsePoly,
};
use crate::word::Word;
use crate::{Error, Result};

/// Relator residual accepted for a lifted representation.
pub const RILEY_RESIDUAL_TOL: f64 = 1e-8;

const SYM_VARS: [&str; 4] = ["x", "z", "m", "t"];
const VX: usize = 0;
const VZ: usize = 1;
const VM: usize = 2;
const VT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Symbolic,
    NumericReconstructed,
    CrossChecked,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Symbolic => "symbolic",
            Provenance::NumericReconstructed => "numeric-reconstructed",
            Provenance::CrossChecked => "cross-checked",
        }
    }
}

/// `Φ(x, z)` with metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterCurve {
    pub knot: TwoBridgeKnot,
    /// Over the variables `[x, z]`; primitive with positive leading term.
    pub phi: SparsePoly,
    pub deg_z: u32,
    pub squarefree: bool,
    pub provenance: Provenance,
    /// Every factor of `Φ` has positive `z`-degree, so this bounds the number
    /// of algebraic components.
    pub component_bound: u32,
}

impl CharacterCurve {
    fn new(knot: TwoBridgeKnot, phi: SparsePoly, provenance: Provenance) -> Self {
        let deg_z = phi.degree_in(1).unwrap_or(0);
        CharacterCurve { knot, squarefree: is_squarefree_in(&phi, 1), deg_z, component_bound: deg_z, phi, provenance }
    }

    pub fn eval(&self, x: Complex64, z: Complex64) -> Complex64 {
        self.phi.eval_c64(&[x, z])
    }

    /// Roots in `z` of `Φ(x, z)` for a numeric `x`.
    pub fn z_roots(&self, x: Complex64) -> Result<Vec<Complex64>> {
        let coeffs: Vec<Complex64> =
            self.phi.coeffs_in(1).iter().map(|c| c.eval_c64(&[x, Complex64::new(0.0, 0.0)])).collect();
        roots_of_coeffs(&coeffs)
    }
}

/// 2×2 matrix of polynomials.
#[derive(Clone)]
struct PMat([SparsePoly; 4]);

impl PMat {
    fn mul(&self, o: &PMat) -> PMat {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        PMat([&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h)])
    }
}

/// The entry equations scaled to `ℤ[m, t]` (over [`SYM_VARS`]).
pub fn entry_equations(k: &TwoBridgeKnot) -> (SparsePoly, SparsePoly) {
    let v = |i| SparsePoly::var(&SYM_VARS, i);
    let c = |n: i64| SparsePoly::constant(&SYM_VARS, n);
    let (m, t) = (v(VM), v(VT));
    let m2 = &m * &m;
    let tm = &t * &m;
    // m·ρ(g)^{±1}
    let a = PMat([m2.clone(), m.clone(), c(0), c(1)]);
    let ai = PMat([c(1), -&m, c(0), m2.clone()]);
    let b = PMat([m2.clone(), c(0), tm.clone(), c(1)]);
    let bi = PMat([c(1), c(0), -&tm, m2.clone()]);
    let mut w = PMat([c(1), c(0), c(0), c(1)]);
    for l in k.presentation().w.letters() {
        let f = match (l.gen, l.inv) {
            (0, false) => &a,
            (0, true) => &ai,
            (_, false) => &b,
            (_, true) => &bi,
        };
        w = w.mul(f);
    }
    let [_, w12, w21, w22] = w.0;
    let e1 = &w21 - &(&t * &w12);
    let e2 = &(&m * &w22) - &(&(&c(1) - &m2) * &w12);
    (e1, e2)
}

fn strip_var_powers(mut f: SparsePoly, var: usize) -> SparsePoly {
    let v = SparsePoly::var(&SYM_VARS, var);
    while !f.is_zero() {
        match f.div_exact(&v) {
            Some(q) => f = q,
            None => break,
        }
    }
    f
}

/// `Φ` by exact elimination.
pub fn character_poly_symbolic(k: &TwoBridgeKnot) -> Result<CharacterCurve> {
    let (e1, e2) = entry_equations(k);
    let g = strip_var_powers(poly_gcd(&e1, &e2), VM);
    if !g.involves(VM) || !g.involves(VT) {
        return Err(Error::AlgorithmDisagreement(format!("{k}: common factor of the entry equations is {g}")));
    }
    let v = |i| SparsePoly::var(&SYM_VARS, i);
    let c = |n: i64| SparsePoly::constant(&SYM_VARS, n);
    let r = match symmetrize_in_m(&g) {
        Some(r) => r,
        None => {
            // the resultant is the norm from ℚ(m) and can carry squared factors
            let quad = &(&(&v(VM) * &v(VM)) - &(&v(VX) * &v(VM))) + &c(1);
            resultant(&g, &quad, VM)?
        }
    };
    // t = z − x² + 2
    let tsub = &(&v(VZ) - &(&v(VX) * &v(VX))) + &c(2);
    let f = r.substitute(VT, &tsub);
    let f = squarefree_part(&f, VZ);
    let mut f = primitive_part_in(&f, VZ);
    // the reducible characters lie on t = 0
    let ab = poly_gcd(&f, &tsub);
    if ab.involves(VZ) {
        confirm_abelian(k, &ab)?;
        f = f.div_exact(&ab).expect("gcd divides");
    }
    let phi = f.sign_normalized().with_vars(&["x", "z"]).expect("only x and z remain");
    let curve = CharacterCurve::new(*k, phi, Provenance::Symbolic);
    confirm_irreducible_lifts(&curve)?;
    Ok(curve)
}

/// Rewrites `g(m, t)`, when it is invariant under `m ↦ 1/m` up to a power of
/// `m`, as a polynomial in `x = m + 1/m` and `t`.
fn symmetrize_in_m(g: &SparsePoly) -> Option<SparsePoly> {
    let lo = g.terms().map(|(e, _)| e.0[VM]).min()? as i64;
    let hi = g.degree_in(VM)? as i64;
    if (lo + hi) % 2 != 0 {
        return None;
    }
    let centre = (lo + hi) / 2;
    let t = SparsePoly::var(&SYM_VARS, VT);
    let mut out = SparsePoly::zero(&SYM_VARS);
    for (j, cj) in g.coeffs_in(VT).iter().enumerate() {
        let mut l = LaurentPoly::zero();
        for (e, c) in cj.terms() {
            l.add_term(e.0[VM] as i64 - centre, c.clone());
        }
        let sx = symmetrize(&l, "x").ok()?.with_vars(&SYM_VARS)?;
        out = &out + &(&sx * &t.pow(j as u32));
    }
    Some(out)
}

/// Points of the factor `t = 0` lift only to reducible representations.
fn confirm_abelian(k: &TwoBridgeKnot, fac: &SparsePoly) -> Result<()> {
    for x in sample_points(3, 0.37) {
        let z = x * x - 2.0;
        if fac.eval_c64(&[x, z, 0.0.into(), 0.0.into()]).norm() > 1e-8 * (1.0 + fac.coeff_norm()) {
            return Err(Error::AlgorithmDisagreement(format!("{k}: unexpected factor {fac}")));
        }
        for m in m_roots(x) {
            let (a, b) = riley_pair(m, Complex64::new(0.0, 0.0));
            if !pair_classify(&a, &b)?.is_reducible() {
                return Err(Error::AlgorithmDisagreement(format!("{k}: factor {fac} has irreducible points")));
            }
        }
    }
    Ok(())
}

fn confirm_irreducible_lifts(curve: &CharacterCurve) -> Result<()> {
    for x in sample_points(3, 1.13) {
        for z in curve.z_roots(x)? {
            let lifts = lift_at(&curve.knot, x, z);
            if lifts.is_empty() {
                return Err(Error::AlgorithmDisagreement(format!(
                    "{}: point ({x}, {z}) of Φ does not lift",
                    curve.knot
                )));
            }
            for l in &lifts {
                if pair_classify(&l.a, &l.b)?.is_reducible() {
                    return Err(Error::AlgorithmDisagreement(format!(
                        "{}: point ({x}, {z}) of Φ lifts to a reducible representation",
                        curve.knot
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Deterministic generic sample points on the circle `|x| = 1.3`.
fn sample_points(n: usize, offset: f64) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::from_polar(1.3, offset + TAU * j as f64 / n as f64)).collect()
}

fn m_roots(x: Complex64) -> [Complex64; 2] {
    let s = (x * x - 4.0).sqrt();
    [(x + s) / 2.0, (x - s) / 2.0]
}

fn riley_pair(m: Complex64, t: Complex64) -> (CMat, CMat) {
    let z = Complex64::new(0.0, 0.0);
    let mi = m.inv();
    (Mat2::new_unchecked(m, 1.0.into(), z, mi), Mat2::new_unchecked(m, z, t, mi))
}

/// A representation in Riley normal form.
#[derive(Clone, Debug)]
pub struct Lift {
    pub m: Complex64,
    pub t: Complex64,
    pub z: Complex64,
    pub a: CMat,
    pub b: CMat,
    /// `‖ρ(aw) − ρ(wb)‖` relative to the entry size.
    pub residual: f64,
    /// `x = ±2`: the meridian is parabolic.
    pub parabolic: bool,
}

fn relator_residual(k: &TwoBridgeKnot, a: &CMat, b: &CMat) -> f64 {
    let w = crate::tracecalc::eval_word(&k.presentation().w, a, b);
    let lhs = a.mul(&w);
    let rhs = w.mul(b);
    let diff =
        [lhs.a - rhs.a, lhs.b - rhs.b, lhs.c - rhs.c, lhs.d - rhs.d].iter().map(|d| d.norm()).fold(0.0, f64::max);
    diff / lhs.max_abs().max(1.0)
}

fn lift_at(k: &TwoBridgeKnot, x: Complex64, z: Complex64) -> Vec<Lift> {
    let t = z - x * x + 2.0;
    let mut out: Vec<Lift> = Vec::new();
    for m in m_roots(x) {
        if out.iter().any(|l| (l.m - m).norm() < 1e-12) {
            continue;
        }
        let (a, b) = riley_pair(m, t);
        let residual = relator_residual(k, &a, &b);
        if residual <= RILEY_RESIDUAL_TOL {
            out.push(Lift { m, t, z, a, b, residual, parabolic: (x * x - 4.0).norm() < 1e-12 });
        }
    }
    out
}

/// Riley-form representations with meridian trace `x`, one family per root
/// `z` of `Φ(x, ·)`; each root `m` of `m² − x m + 1` whose matrices satisfy
/// the relator is reported.
pub fn lift_representation(curve: &CharacterCurve, x: Complex64) -> Result<Vec<Lift>> {
    let mut out = Vec::new();
    for z in curve.z_roots(x)? {
        out.extend(lift_at(&curve.knot, x, z));
    }
    Ok(out)
}

/// `Φ` reconstructed from numerically solved fibres: at `N` points `x_j` on
/// a circle the irreducible solutions of the entry equations give
/// `Φ(x_j, ·)` up to scale, and the coefficients in `x` come back by an
/// inverse DFT. Assumes `Φ` is monic in `z` up to sign, which the exact
/// rounding step verifies.
pub fn character_poly_numeric(k: &TwoBridgeKnot) -> Result<CharacterCurve> {
    let (e1, e2) = entry_equations(k);
    let bound = 2 * k.p() as usize;
    let n = 2 * bound;
    let theta0 = 0.1234;
    let radius = 1.0;
    let mut fibres: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut deg = None;
    for j in 0..n {
        let x = Complex64::from_polar(radius, theta0 + TAU * j as f64 / n as f64);
        let m = m_roots(x)[0];
        let zs = irreducible_fibre(k, &e1, &e2, x, m)?;
        match deg {
            None => deg = Some(zs.len()),
            Some(d) if d != zs.len() => {
                return Err(Error::AlgorithmDisagreement(format!(
                    "{k}: fibre sizes {d} and {} at different sample points",
                    zs.len()
                )))
            }
            _ => {}
        }
        fibres.push(monic_from_roots(&zs));
    }
    let d = deg.unwrap_or(0);
    let mut terms = vec![(vec![0, d as u32], BigInt::from(1))];
    for kz in 0..d {
        for r in 0..n {
            // a_r = (1/N) Σ_j c(x_j) x_j^{−r}
            let mut s = Complex64::new(0.0, 0.0);
            for (j, f) in fibres.iter().enumerate() {
                let x = Complex64::from_polar(radius, theta0 + TAU * j as f64 / n as f64);
                s += f[kz] * x.powi(-(r as i32));
            }
            s /= n as f64;
            let near = Complex64::new(s.re.round(), 0.0);
            if (s - near).norm() > 1e-6 * (1.0 + s.norm()) || (r >= bound && near.re != 0.0) {
                return Err(Error::AlgorithmDisagreement(format!(
                    "{k}: coefficient of x^{r} z^{kz} reconstructs to {s}"
                )));
            }
            let c = near.re.to_i64().and_then(|c| (c != 0).then_some(c));
            if let Some(c) = c {
                terms.push((vec![r as u32, kz as u32], BigInt::from(c)));
            }
        }
    }
    let phi = SparsePoly::from_terms(&["x", "z"], terms).primitive_part();
    Ok(CharacterCurve::new(*k, phi, Provenance::NumericReconstructed))
}

fn eval_in_t(f: &SparsePoly, x: Complex64, m: Complex64) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    f.coeffs_in(VT).iter().map(|c| c.eval_c64(&[x, zero, m, zero])).collect()
}

fn horner(c: &[Complex64], t: Complex64) -> (Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for a in c.iter().rev() {
        v = v * t + a;
        mag = mag * t.norm() + a.norm();
    }
    (v, mag)
}

/// `z`-values of the irreducible solutions of the entry equations at `(x, m)`.
fn irreducible_fibre(
    k: &TwoBridgeKnot,
    e1: &SparsePoly,
    e2: &SparsePoly,
    x: Complex64,
    m: Complex64,
) -> Result<Vec<Complex64>> {
    // one equation may vanish identically (it does for palindromic w)
    let (e1, e2) = if e1.is_zero() { (e2, e1) } else { (e1, e2) };
    let c1 = eval_in_t(e1, x, m);
    let c2 = eval_in_t(e2, x, m);
    let mut zs = Vec::new();
    for t in roots_of_coeffs(&c1)? {
        let (v, mag) = horner(&c2, t);
        if v.norm() > 1e-7 * mag.max(1.0) {
            continue;
        }
        let (a, b) = riley_pair(m, t);
        if pair_classify(&a, &b)?.is_reducible() || relator_residual(k, &a, &b) > RILEY_RESIDUAL_TOL {
            continue;
        }
        zs.push(x * x - 2.0 + t);
    }
    Ok(zs)
}

/// Coefficients (ascending, leading 1 omitted at the end) of `∏ (z − zᵢ)`.
fn monic_from_roots(zs: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &z in zs {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * z;
        }
        c = next;
    }
    c
}

/// `Φ` computed both ways; the results must agree term by term.
pub fn character_poly(k: &TwoBridgeKnot) -> Result<CharacterCurve> {
    let sym = character_poly_symbolic(k)?;
    let num = character_poly_numeric(k)?;
    if sym.phi != num.phi {
        return Err(Error::AlgorithmDisagreement(format!("{k}: symbolic Φ = {}\nnumeric Φ = {}", sym.phi, num.phi)));
    }
    Ok(CharacterCurve { provenance: Provenance::CrossChecked, ..sym })
}

/// Outcome of the numeric peripheral check of a longitude word.
#[derive(Clone, Debug, PartialEq)]
pub struct LongitudeCheck {
    pub samples: usize,
    /// Largest `‖ρ(λ)ρ(a) − ρ(a)ρ(λ)‖ / (‖ρ(λ)‖‖ρ(a)‖)` over the samples.
    pub max_commutator: f64,
    /// Smallest PSL₂ distance of `ρ(λ)` from `±I`.
    pub min_distance_from_identity: f64,
}

pub const LONGITUDE_TOL: f64 = 1e-7;

/// Checks that `lambda` commutes with the meridian under irreducible lifts at
/// 12 generic points of `{Φ = 0}`.
pub fn check_longitude(curve: &CharacterCurve, lambda: &Word) -> Result<LongitudeCheck> {
    let id = CMat::identity();
    let mut out = LongitudeCheck { samples: 0, max_commutator: 0.0, min_distance_from_identity: f64::INFINITY };
    for x in sample_points(12, 0.71) {
        for l in lift_representation(curve, x)? {
            let rl = crate::tracecalc::eval_word(lambda, &l.a, &l.b);
            // ‖LA − AL‖ / (‖L‖‖A‖): the deviation of [L, A] from I with the
            // rounding growth of long words divided out
            let (la, al) = (rl.mul(&l.a), l.a.mul(&rl));
            let dev = [la.a - al.a, la.b - al.b, la.c - al.c, la.d - al.d].iter().fold(0.0f64, |m, d| m.max(d.norm()))
                / (rl.max_abs() * l.a.max_abs());
            out.samples += 1;
            out.max_commutator = out.max_commutator.max(dev);
            out.min_distance_from_identity = out.min_distance_from_identity.min(rl.psl_distance(&id));
        }
    }
    if out.samples < 20 || out.max_commutator > LONGITUDE_TOL {
        return Err(Error::ConstructionBug(format!(
            "{}: longitude {lambda} fails the commutation check ({} samples, max deviation {:e})",
            curve.knot, out.samples, out.max_commutator
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: i64, q: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::new(p, q).unwrap()
    }

    #[test]
    fn trefoil_curve() {
        let c = character_poly(&k(3, 1)).unwrap();
        assert_eq!(c.phi.to_string(), "z - 1");
        assert_eq!(c.deg_z, 1);
        let lifts = lift_representation(&c, 2.0.into()).unwrap();
        assert_eq!(lifts.len(), 1);
        let l = &lifts[0];
        assert!(l.parabolic);
        assert!((l.t + 1.0).norm() < 1e-12);
        assert!(l.a.approx_eq(&CMat::from_f64(1.0, 1.0, 0.0, 1.0).unwrap()));
        assert!(l.b.approx_eq(&CMat::from_f64(1.0, 0.0, -1.0, 1.0).unwrap()));
        let d = lift_representation(&c, 0.0.into()).unwrap();
        assert!(!d.is_empty() && d.iter().all(|l| (l.z - 1.0).norm() < 1e-12));
    }

    #[test]
    fn figure_eight_and_friends() {
        for (p, q, d) in [(5, 3, 2), (7, 3, 3), (5, 1, 2), (7, 1, 3)] {
            let c = character_poly(&k(p, q)).unwrap();
            assert_eq!(c.deg_z, d, "{p}/{q}: {}", c.phi);
            assert!(c.squarefree);
        }
        let lifts = lift_representation(&character_poly(&k(5, 3)).unwrap(), 0.0.into()).unwrap();
        let zs: Vec<Complex64> = lifts.iter().map(|l| l.z).collect();
        assert_eq!(crate::polyring::distinct_count(&zs, 1e-6), 2);
    }
}
