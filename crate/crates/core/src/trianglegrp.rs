//! Triangle groups `Δ(p, q, r) = ⟨x, y, z : xᵖ = y^q = zʳ = xyz = 1⟩`, twist
//! knot groups, and searches for epimorphisms from the latter onto the former.
//!
//! The Euclidean group `Δ(2, 3, 6)` is modelled exactly by affine maps of
//! `ℂ` with coefficients in `ℚ(√−3)`; hyperbolic groups are built numerically
//! in `SL₂(ℝ)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::mat2core::{CMat, Eisenstein, Mat2, Scalar};
use crate::tracecalc::FrickePoint;
use crate::word::Word;
use crate::{Error, Result};

/// Residual bound for the relations of a numerically built triangle group.
pub const RELATION_TOL: f64 = 1e-10;
/// Residual below which a scenario relation counts as satisfied.
pub const SCENARIO_TOL: f64 = 1e-8;

/// Orientation-preserving isometry `z ↦ rot·z + shift` of the plane, with the
/// plane identified with `ℂ ⊃ ℚ(√−3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EuclIsom {
    pub rot: Eisenstein,
    pub shift: Eisenstein,
}

impl EuclIsom {
    /// Fails unless `rot` has norm 1.
    pub fn new(rot: Eisenstein, shift: Eisenstein) -> Result<Self> {
        if !num_traits::One::is_one(&rot.norm()) {
            return Err(Error::InvalidInput(format!("rotation part {rot:?} is not a unit")));
        }
        Ok(EuclIsom { rot, shift })
    }

    pub fn identity() -> Self {
        EuclIsom { rot: Eisenstein::one(), shift: Eisenstein::zero() }
    }

    /// Rotation by `rot` about `centre`.
    pub fn rotation(rot: Eisenstein, centre: &Eisenstein) -> Result<Self> {
        let shift = Eisenstein::one().sub(&rot).mul(centre);
        Self::new(rot, shift)
    }

    pub fn translation(v: Eisenstein) -> Self {
        EuclIsom { rot: Eisenstein::one(), shift: v }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        EuclIsom { rot: self.rot.mul(&o.rot), shift: self.rot.mul(&o.shift).add(&self.shift) }
    }

    pub fn inverse(&self) -> Self {
        let r = self.rot.conj();
        EuclIsom { shift: r.mul(&self.shift).neg(), rot: r }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    pub fn apply(&self, z: &Eisenstein) -> Eisenstein {
        self.rot.mul(z).add(&self.shift)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_translation(&self) -> bool {
        self.rot == Eisenstein::one()
    }

    /// Exact order; `None` for nontrivial translations. Units of `ℚ(√−3)`
    /// are sixth roots of unity, so the search is bounded.
    pub fn order(&self) -> Option<u32> {
        if self.is_translation() {
            return self.shift.is_zero().then_some(1);
        }
        (1..=6).find(|&k| self.pow(k as i64).is_identity())
    }

    /// Fixed point of a nontrivial rotation.
    pub fn fixed_point(&self) -> Option<Eisenstein> {
        let d = Eisenstein::one().sub(&self.rot).inv()?;
        Some(self.shift.mul(&d))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Euclidean,
    Hyperbolic,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Generators {
    Euclidean([EuclIsom; 3]),
    Hyperbolic([CMat; 3]),
}

/// `Δ(p, q, r)` with concrete generators `x, y, z` satisfying `xyz = 1`.
#[derive(Clone, Debug)]
pub struct TriangleGroup {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub gens: Generators,
}

impl TriangleGroup {
    pub fn geometry(&self) -> Geometry {
        match self.gens {
            Generators::Euclidean(_) => Geometry::Euclidean,
            Generators::Hyperbolic(_) => Geometry::Hyperbolic,
        }
    }

    /// The hyperbolic generators `x, y, z`.
    pub fn matrices(&self) -> Option<&[CMat; 3]> {
        match &self.gens {
            Generators::Hyperbolic(m) => Some(m),
            Generators::Euclidean(_) => None,
        }
    }

    pub fn isometries(&self) -> Option<&[EuclIsom; 3]> {
        match &self.gens {
            Generators::Euclidean(m) => Some(m),
            Generators::Hyperbolic(_) => None,
        }
    }

    /// Largest PSL₂ residual among `xᵖ, y^q, zʳ, xyz`; zero for the Euclidean
    /// group, where the relations are checked exactly.
    pub fn relation_residual(&self) -> f64 {
        match &self.gens {
            Generators::Hyperbolic([x, y, z]) => {
                let id = CMat::identity();
                [x.pow(self.p as i64), y.pow(self.q as i64), z.pow(self.r as i64), x.mul(y).mul(z)]
                    .iter()
                    .map(|m| m.psl_distance(&id))
                    .fold(0.0, f64::max)
            }
            Generators::Euclidean([x, y, z]) => {
                let ok = x.pow(self.p as i64).is_identity()
                    && y.pow(self.q as i64).is_identity()
                    && z.pow(self.r as i64).is_identity()
                    && x.compose(y).compose(z).is_identity();
                if ok {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

fn sixth_root() -> Eisenstein {
    // e^{iπ/3} = (1 + √−3)/2
    Eisenstein::from_frac(1, 1, 2)
}

/// `Δ(2, 3, 6)` acting on the plane: `x` is the half-turn about 0 and `y` the
/// rotation by 2π/3 about 1.
pub fn build_euclidean_236() -> TriangleGroup {
    let w = sixth_root();
    let x = EuclIsom::rotation(w.mul(&w).mul(&w), &Eisenstein::zero()).expect("unit");
    let y = EuclIsom::rotation(w.mul(&w), &Eisenstein::one()).expect("unit");
    let z = x.compose(&y).inverse();
    TriangleGroup { p: 2, q: 3, r: 6, gens: Generators::Euclidean([x, y, z]) }
}

pub fn is_hyperbolic_triple(p: u32, q: u32, r: u32) -> bool {
    p >= 2 && q >= 2 && r >= 2 && (q * r + p * r + p * q) < p * q * r
}

/// Rotation by `theta` about `w` in the unit disk, as an SU(1,1) matrix.
fn disk_rotation(w: Complex64, theta: f64) -> CMat {
    let s = (1.0 - w.norm_sqr()).sqrt();
    let t = Mat2::new_unchecked(Complex64::from(1.0 / s), w / s, w.conj() / s, Complex64::from(1.0 / s));
    CMat::diag(Complex64::from_polar(1.0, theta / 2.0)).conjugate_by(&t)
}

/// Euclidean radius in the disk of a point at hyperbolic distance `d` from 0.
fn disk_radius(d: f64) -> f64 {
    (d / 2.0).tanh()
}

/// `Δ(p, q, r)` in `SL₂(ℝ)`: rotations by `2π/p, 2π/q, 2π/r` about the
/// vertices of a triangle with angles `π/p, π/q, π/r`. The first vertex sits
/// at the origin of the disk, the second on the positive real axis; the
/// matrices are then moved to the upper half-plane.
pub fn build_hyperbolic(p: u32, q: u32, r: u32) -> Result<TriangleGroup> {
    if !is_hyperbolic_triple(p, q, r) {
        return Err(Error::InvalidInput(format!("({p}, {q}, {r}) is not a hyperbolic triple")));
    }
    let (al, be, ga) = (PI / p as f64, PI / q as f64, PI / r as f64);
    // side lengths opposite the third and second vertex
    let c = ((al.cos() * be.cos() + ga.cos()) / (al.sin() * be.sin())).acosh();
    let b = ((al.cos() * ga.cos() + be.cos()) / (al.sin() * ga.sin())).acosh();
    let vp = Complex64::from(0.0);
    let vq = Complex64::from(disk_radius(c));
    // counter-clockwise triangle with counter-clockwise rotations gives xyz = 1
    let vr = Complex64::from_polar(disk_radius(b), al);
    let disk = [disk_rotation(vp, 2.0 * al), disk_rotation(vq, 2.0 * be), disk_rotation(vr, 2.0 * ga)];
    // Cayley transform z ↦ i(1 + z)/(1 − z), normalized to determinant one
    let i = Complex64::i();
    let k = (2.0 * i).sqrt();
    let cay = Mat2::new_unchecked(i / k, i / k, Complex64::from(-1.0) / k, Complex64::from(1.0) / k);
    let mut mats = disk.map(|m| m.conjugate_by(&cay));
    for m in &mut mats {
        let im = [m.a.im, m.b.im, m.c.im, m.d.im].iter().fold(0.0f64, |s, v| s.max(v.abs()));
        if im > 1e-9 * m.max_abs().max(1.0) {
            return Err(Error::ConstructionBug(format!("non-real generator for ({p}, {q}, {r})")));
        }
        *m = Mat2::new_unchecked(m.a.re.into(), m.b.re.into(), m.c.re.into(), m.d.re.into());
    }
    let g = TriangleGroup { p, q, r, gens: Generators::Hyperbolic(mats) };
    let res = g.relation_residual();
    if res > RELATION_TOL {
        return Err(Error::ConstructionBug(format!("relation residual {res:e} for ({p}, {q}, {r})")));
    }
    Ok(g)
}

/// The twist knot group `⟨a, b : a wⁿ = wⁿ b⟩` with `w = a b⁻¹ a⁻¹ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistKnotGroup {
    n: i64,
}

impl TwistKnotGroup {
    /// `n = 0` gives the unknot and is rejected.
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("twist number 0 is the unknot".into()));
        }
        Ok(TwistKnotGroup { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn w() -> Word {
        Word::parse("aBAb").expect("valid word")
    }

    /// `a wⁿ b⁻¹ w⁻ⁿ`.
    pub fn relator(&self) -> Word {
        let wn = Self::w().pow(self.n);
        Word::gen(0).mul(&wn).mul(&Word::parse("B").expect("valid")).mul(&wn.inverse())
    }

    /// The two-bridge normal form `(p, q)` for the twist knots of small
    /// twist number.
    pub fn two_bridge(&self) -> Option<(u64, u64)> {
        match self.n {
            1 => Some((3, 1)),
            -1 => Some((5, 3)),
            _ => None,
        }
    }
}

fn twist_relation_holds_exact(n: i64, a: &EuclIsom, b: &EuclIsom) -> bool {
    let w = a.compose(&b.inverse()).compose(&a.inverse()).compose(b);
    let wn = w.pow(n);
    a.compose(&wn) == wn.compose(b)
}

/// Twist numbers in `n_min..=n_max` (zero skipped) for which some normal form
/// `a ↦ xy`, `b ↦ (xy)^{−j}(yx)(xy)^j`, `j ∈ {0, 1, 2}`, satisfies the twist
/// knot relation exactly in `Δ(2, 3, 6)`.
pub fn euclidean_epi_search(n_min: i64, n_max: i64) -> Vec<i64> {
    let g = build_euclidean_236();
    let [x, y, _] = g.isometries().expect("euclidean");
    let xy = x.compose(y);
    let yx = y.compose(x);
    let bs: Vec<EuclIsom> = (0..3).map(|j| xy.pow(-j).compose(&yx).compose(&xy.pow(j))).collect();
    (n_min..=n_max).filter(|&n| n != 0).filter(|&n| bs.iter().any(|b| twist_relation_holds_exact(n, &xy, b))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// `Δ(2, q, r)`, `r` odd: `a ↦ yˢ`, `b ↦ x yˢ x⁻¹`.
    A,
    /// `Δ(2, 3, r)`, `r ≥ 7` odd: `a ↦ zˢ`, `b ↦ (yxy⁻¹) zˢ (yxy⁻¹)`.
    B,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::A => "a",
            Scenario::B => "b",
        }
    }
}

/// Which product of the standard generators is trivial. The normal forms
/// are words in `x, y, z`; reading them with either composition order gives
/// a legitimate instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Xyz,
    Zyx,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Xyz => "xyz",
            Convention::Zyx => "zyx",
        }
    }
}

/// One instance of a hyperbolic normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ScenarioParams {
    pub scenario: Scenario,
    pub q: u32,
    pub r: u32,
    pub s: u32,
    pub convention: Convention,
}

impl ScenarioParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        let ScenarioParams { scenario, q, r, s, .. } = *self;
        if !is_hyperbolic_triple(2, q, r) {
            return bad(format!("(2, {q}, {r}) is not hyperbolic"));
        }
        if r % 2 == 0 {
            return bad(format!("r = {r} must be odd"));
        }
        let order = match scenario {
            Scenario::A => q,
            Scenario::B => {
                if q != 3 || r < 7 {
                    return bad(format!("scenario b needs (2, 3, r) with r >= 7, got (2, {q}, {r})"));
                }
                r
            }
        };
        if s == 0 || s.gcd(&order) != 1 {
            return bad(format!("s = {s} is not a unit modulo {order}"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub n: i64,
    #[serde(flatten)]
    pub params: ScenarioParams,
    pub residual: f64,
    pub satisfied: bool,
}

/// Images of `a, b` under a scenario.
pub fn scenario_rep(params: &ScenarioParams) -> Result<(CMat, CMat)> {
    params.validate()?;
    let g = build_hyperbolic(2, params.q, params.r)?;
    let [x, y, z] = g.matrices().expect("hyperbolic").clone();
    let [x, y, z] = match params.convention {
        Convention::Xyz => [x, y, z],
        // (xyz)⁻¹ = z⁻¹y⁻¹x⁻¹
        Convention::Zyx => [x.inv(), y.inv(), z.inv()],
    };
    let s = params.s as i64;
    Ok(match params.scenario {
        Scenario::A => {
            let a = y.pow(s);
            let b = a.conjugate_by(&x);
            (a, b)
        }
        Scenario::B => {
            let a = z.pow(s);
            let t = x.conjugate_by(&y);
            (a.clone(), t.mul(&a).mul(&t))
        }
    })
}

/// Residual of `ρ(a)ρ(w)ⁿ = ρ(w)ⁿρ(b)` in PSL₂.
pub fn knapp_scenario_check(n: i64, params: &ScenarioParams) -> Result<ScenarioReport> {
    TwistKnotGroup::new(n)?;
    let (a, b) = scenario_rep(params)?;
    let w = a.mul(&b.inv()).mul(&a.inv()).mul(&b);
    let wn = w.pow(n);
    let residual = a.mul(&wn).psl_distance(&wn.mul(&b));
    Ok(ScenarioReport { n, params: *params, residual, satisfied: residual <= SCENARIO_TOL })
}

/// Every valid scenario instance with orders at most `max_order`.
pub fn scenario_instances(max_order: u32) -> Vec<ScenarioParams> {
    let mut out = Vec::new();
    for convention in [Convention::Xyz, Convention::Zyx] {
        for q in 2..=max_order {
            for r in (3..=max_order).step_by(2) {
                for s in 1..q {
                    out.push(ScenarioParams { scenario: Scenario::A, q, r, s, convention });
                }
            }
        }
        for r in (7..=max_order).step_by(2) {
            for s in 1..r {
                out.push(ScenarioParams { scenario: Scenario::B, q: 3, r, s, convention });
            }
        }
    }
    out.retain(|p| p.validate().is_ok());
    out
}

/// Scenario checks for all `n` in range and all instances up to `max_order`.
pub fn hyperbolic_scan(n_min: i64, n_max: i64, max_order: u32) -> Result<Vec<ScenarioReport>> {
    let inst = scenario_instances(max_order);
    let mut out = Vec::new();
    for n in (n_min..=n_max).filter(|&n| n != 0) {
        for p in &inst {
            out.push(knapp_scenario_check(n, p)?);
        }
    }
    Ok(out)
}

/// Fricke coordinates of a scenario, with the lift of `b` chosen to have the
/// same trace as the lift of `a`.
pub fn scenario_fricke_point(params: &ScenarioParams) -> Result<FrickePoint> {
    let (a, mut b) = scenario_rep(params)?;
    if (b.trace() - a.trace()).norm() > (b.trace() + a.trace()).norm() {
        b = b.neg();
    }
    Ok(FrickePoint::of_pair(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_generators() {
        let g = build_euclidean_236();
        assert_eq!(g.relation_residual(), 0.0);
        let [x, y, _] = g.isometries().unwrap();
        let xy = x.compose(y);
        let yx = y.compose(x);
        assert_eq!(x.order(), Some(2));
        assert_eq!(y.order(), Some(3));
        assert_eq!(xy.order(), Some(6));
        assert_ne!(xy.fixed_point(), yx.fixed_point());
        let v = x.compose(&yx.pow(3));
        assert!(v.is_translation() && !v.is_identity());
        assert_eq!(v.order(), None);
    }

    #[test]
    fn euclidean_search_singles_out_trefoil() {
        assert_eq!(euclidean_epi_search(-10, 10), vec![1]);
    }

    #[test]
    fn hyperbolic_builders() {
        let g = build_hyperbolic(2, 3, 7).unwrap();
        let [x, y, z] = g.matrices().unwrap();
        assert!(x.trace().norm() < 1e-12);
        assert!((y.trace().norm() - 1.0).abs() < 1e-12);
        assert!((x.mul(y).trace().norm() - 2.0 * (PI / 7.0).cos()).abs() < 1e-12);
        assert!((x.mul(y).trace().norm() - 1.8019377).abs() < 1e-7);
        assert!((z.trace().norm() - 2.0 * (PI / 7.0).cos()).abs() < 1e-12);
        for (p, q, r) in [(2, 4, 5), (3, 3, 4), (2, 3, 11), (7, 7, 7)] {
            assert!(build_hyperbolic(p, q, r).unwrap().relation_residual() <= RELATION_TOL);
        }
        assert!(matches!(build_hyperbolic(2, 3, 6), Err(Error::InvalidInput(_))));
        assert!(matches!(build_hyperbolic(2, 2, 9), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn twist_group() {
        assert!(TwistKnotGroup::new(0).is_err());
        assert_eq!(TwistKnotGroup::new(1).unwrap().relator().to_string(), "aaBABabA");
    }

    #[test]
    fn scenario_validation() {
        let p = |scenario, q, r, s| ScenarioParams { scenario, q, r, s, convention: Convention::Xyz };
        assert!(p(Scenario::A, 3, 7, 2).validate().is_ok());
        assert!(p(Scenario::A, 4, 7, 2).validate().is_err());
        assert!(p(Scenario::A, 3, 8, 1).validate().is_err());
        assert!(p(Scenario::B, 3, 5, 1).validate().is_err());
        assert!(p(Scenario::B, 3, 9, 3).validate().is_err());
        assert!(p(Scenario::B, 3, 9, 4).validate().is_ok());
    }

    #[test]
    fn no_solutions_away_from_trefoil() {
        for n in [-1, 2] {
            for p in scenario_instances(9) {
                let rep = knapp_scenario_check(n, &p).unwrap();
                assert!(!rep.satisfied, "{rep:?}");
            }
        }
    }
}
