//! Unit-determinant 2×2 matrices over exact and floating scalars, the Möbius
//! action on ℂP¹, and classification of single elements and of pairs.
//!
//! A PSL₂ element is always handled through an SL₂ lift `M`; everything here
//! that answers a PSL₂ question is invariant under `M ↦ −M`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Relative tolerance for floating comparisons of matrix entries and traces.
pub const FLOAT_TOL: f64 = 1e-9;
/// Chordal-metric tolerance for identifying points of ℂP¹.
pub const POINT_TOL: f64 = 1e-8;
/// Largest PSL₂ order searched for when naming an elliptic element.
pub const ELLIPTIC_ORDER_CAP: u64 = 1_000_000;

/// Field elements a 2×2 matrix can be built from.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// Equality; floating scalars compare with relative tolerance
    /// [`FLOAT_TOL`] at magnitude `mag`.
    fn approx_eq(&self, o: &Self, mag: f64) -> bool;

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = if n < 0 { Self::one().neg() } else { Self::one() };
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one);
        }
        acc
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn approx_eq(&self, o: &Self, _: f64) -> bool {
        self == o
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// `a + b√D` with rational `a, b`; `D` is a squarefree integer other than 0
/// and 1. Negative `D` gives an imaginary quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad<const D: i64> {
    pub a: BigRational,
    pub b: BigRational,
}

/// ℚ(√−3) = ℚ(e^{iπ/3}), home of the Eisenstein integers.
pub type Eisenstein = Quad<-3>;

impl<const D: i64> Quad<D> {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Quad { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Quad { a: BigRational::from_integer(a.into()), b: BigRational::from_integer(b.into()) }
    }

    /// `(a + b√D)/den`.
    pub fn from_frac(a: i64, b: i64, den: i64) -> Self {
        let d = BigInt::from(den);
        Quad { a: BigRational::new(a.into(), d.clone()), b: BigRational::new(b.into(), d) }
    }

    pub fn conj(&self) -> Self {
        Quad { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − D b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(D.into()) * &self.b * &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: i64> Scalar for Quad<D> {
    fn zero() -> Self {
        Quad { a: Zero::zero(), b: Zero::zero() }
    }
    fn one() -> Self {
        Quad { a: One::one(), b: Zero::zero() }
    }
    fn add(&self, o: &Self) -> Self {
        Quad { a: &self.a + &o.a, b: &self.b + &o.b }
    }
    fn sub(&self, o: &Self) -> Self {
        Quad { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn mul(&self, o: &Self) -> Self {
        let d = BigRational::from_integer(D.into());
        Quad { a: &self.a * &o.a + d * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
    fn neg(&self) -> Self {
        Quad { a: -&self.a, b: -&self.b }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Quad { a: c.a / &n, b: c.b / n })
    }
    fn to_c64(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let r = (D.unsigned_abs() as f64).sqrt();
        if D < 0 {
            Complex64::new(a, b * r)
        } else {
            Complex64::new(a + b * r, 0.0)
        }
    }
    fn approx_eq(&self, o: &Self, _: f64) -> bool {
        self == o
    }
    fn from_i64(n: i64) -> Self {
        Quad::from_ints(n, 0)
    }
}

impl<const D: i64> fmt::Debug for Quad<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√{D})", self.a, self.b)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (self.norm() != 0.0).then(|| Complex64::new(1.0, 0.0) / self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn approx_eq(&self, o: &Self, mag: f64) -> bool {
        (self - o).norm() <= FLOAT_TOL * mag.max(1.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

/// `[[a, b], [c, d]]` with `ad − bc = 1`.
#[derive(Clone, PartialEq)]
pub struct Mat2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

pub type CMat = Mat2<Complex64>;

impl<S: Scalar> Mat2<S> {
    /// Checks the determinant (exactly, or within tolerance for floats).
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        let m = Mat2 { a, b, c, d };
        let ad = m.a.mul(&m.d);
        let bc = m.b.mul(&m.c);
        let mag = ad.to_c64().norm() + bc.to_c64().norm();
        if !ad.sub(&bc).approx_eq(&S::one(), mag) {
            return Err(Error::InvalidInput(format!("determinant of {m:?} is not 1")));
        }
        Ok(m)
    }

    /// No determinant check; for products of checked matrices.
    pub fn new_unchecked(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2 { a: S::one(), b: S::zero(), c: S::zero(), d: S::one() }
    }

    pub fn det(&self) -> S {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> S {
        self.a.add(&self.d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    /// Inverse of a unit-determinant matrix (the adjugate).
    pub fn inv(&self) -> Self {
        Mat2 { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        Mat2 { a: self.a.neg(), b: self.b.neg(), c: self.c.neg(), d: self.d.neg() }
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `A B A⁻¹ B⁻¹`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).mul(&self.inv()).mul(&o.inv())
    }

    /// `S A S⁻¹`.
    pub fn conjugate_by(&self, s: &Self) -> Self {
        s.mul(self).mul(&s.inv())
    }

    pub fn to_complex(&self) -> CMat {
        Mat2 { a: self.a.to_c64(), b: self.b.to_c64(), c: self.c.to_c64(), d: self.d.to_c64() }
    }

    fn mag(&self) -> f64 {
        [&self.a, &self.b, &self.c, &self.d].iter().map(|x| x.to_c64().norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        let mag = self.mag().max(o.mag());
        self.a.approx_eq(&o.a, mag)
            && self.b.approx_eq(&o.b, mag)
            && self.c.approx_eq(&o.c, mag)
            && self.d.approx_eq(&o.d, mag)
    }

    /// Equality in PSL₂.
    pub fn eq_psl(&self, o: &Self) -> bool {
        self.approx_eq(o) || self.approx_eq(&o.neg())
    }

    pub fn is_pm_identity(&self) -> bool {
        self.eq_psl(&Self::identity())
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.a, self.b, self.c, self.d)
    }
}

impl CMat {
    pub fn from_f64(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn diag(l: Complex64) -> Self {
        Mat2::new_unchecked(l, 0.0.into(), 0.0.into(), l.inv())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.mag()
    }

    /// Distance to the nearer of `±o`, relative to the entry sizes.
    pub fn psl_distance(&self, o: &CMat) -> f64 {
        let d = |s: f64| {
            [self.a - s * o.a, self.b - s * o.b, self.c - s * o.c, self.d - s * o.d]
                .iter()
                .map(|x| x.norm())
                .fold(0.0, f64::max)
        };
        d(1.0).min(d(-1.0)) / self.mag().max(o.mag()).max(1.0)
    }

    pub fn apply(&self, p: CP1) -> CP1 {
        match p {
            CP1::Infinity => {
                if self.c.norm() <= FLOAT_TOL * self.mag() {
                    CP1::Infinity
                } else {
                    CP1::Finite(self.a / self.c)
                }
            }
            CP1::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                if den.norm() <= f64::EPSILON * (num.norm() + den.norm()) {
                    CP1::Infinity
                } else {
                    CP1::Finite(num / den)
                }
            }
        }
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CP1 {
    Finite(Complex64),
    Infinity,
}

impl CP1 {
    /// Chordal distance (sphere of diameter 1 scaled so ∞ to 0 is 2).
    pub fn chordal(self, o: CP1) -> f64 {
        match (self, o) {
            (CP1::Infinity, CP1::Infinity) => 0.0,
            (CP1::Infinity, CP1::Finite(z)) | (CP1::Finite(z), CP1::Infinity) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (CP1::Finite(z), CP1::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }

    pub fn near(self, o: CP1) -> bool {
        self.chordal(o) <= POINT_TOL
    }
}

impl fmt::Display for CP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CP1::Infinity => write!(f, "∞"),
            CP1::Finite(z) => write!(f, "{z}"),
        }
    }
}

/// Conjugacy type of a single PSL₂(ℂ) element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsomClass {
    Identity,
    /// `order` is the PSL₂ order, `None` when the rotation angle is not a
    /// rational multiple of π with denominator up to [`ELLIPTIC_ORDER_CAP`].
    Elliptic {
        order: Option<u64>,
    },
    Parabolic,
    Loxodromic {
        length: f64,
    },
}

impl IsomClass {
    pub fn name(&self) -> &'static str {
        match self {
            IsomClass::Identity => "identity",
            IsomClass::Elliptic { .. } => "elliptic",
            IsomClass::Parabolic => "parabolic",
            IsomClass::Loxodromic { .. } => "loxodromic",
        }
    }
}

fn check_det(m: &CMat) -> Result<()> {
    let mag = (m.a * m.d).norm() + (m.b * m.c).norm();
    if (m.det() - 1.0).norm() > FLOAT_TOL * mag.max(1.0) {
        return Err(Error::InvalidInput(format!("determinant of {m:?} is {}", m.det())));
    }
    Ok(())
}

/// Least `m ≤ cap` with `m·r` within `tol` of an integer, found among the
/// continued-fraction convergents of `r`.
fn rational_denominator(r: f64, tol: f64, cap: u64) -> Option<u64> {
    let (mut h0, mut h1) = (0f64, 1f64);
    let (mut k0, mut k1) = (1f64, 0f64);
    let mut x = r;
    for _ in 0..64 {
        let a = x.floor();
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > cap as f64 {
            return None;
        }
        if (k2 * r - h2).abs() <= tol {
            return Some(k2 as u64);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a;
        if frac.abs() < 1e-300 {
            return None;
        }
        x = 1.0 / frac;
    }
    None
}

pub fn classify_isometry(m: &CMat) -> Result<IsomClass> {
    check_det(m)?;
    if m.is_pm_identity() {
        return Ok(IsomClass::Identity);
    }
    let t = m.trace();
    let t2 = t * t;
    let mag = 1.0 + m.max_abs().powi(2);
    if (t2 - 4.0).norm() <= FLOAT_TOL * mag {
        return Ok(IsomClass::Parabolic);
    }
    if t2.im.abs() <= FLOAT_TOL * mag && t2.re >= -FLOAT_TOL * mag && t2.re < 4.0 {
        // rotation angle 2θ with cos θ = |tr|/2; PSL₂ order m has mθ ∈ πℤ
        let theta = (t2.re.max(0.0).sqrt() / 2.0).min(1.0).acos();
        let order = rational_denominator(theta / std::f64::consts::PI, FLOAT_TOL, ELLIPTIC_ORDER_CAP);
        return Ok(IsomClass::Elliptic { order: order.filter(|&k| k >= 2) });
    }
    Ok(IsomClass::Loxodromic { length: eigen_length(t) })
}

fn big_eigenvalue(t: Complex64) -> Complex64 {
    let s = (t * t - 4.0).sqrt();
    let (l1, l2) = ((t + s) / 2.0, (t - s) / 2.0);
    if l1.norm() >= l2.norm() {
        l1
    } else {
        l2
    }
}

fn eigen_length(t: Complex64) -> f64 {
    2.0 * big_eigenvalue(t).norm().ln()
}

/// `2 log |λ|` for the eigenvalue `|λ| ≥ 1` of a loxodromic element.
pub fn translation_length(m: &CMat) -> Result<f64> {
    match classify_isometry(m)? {
        IsomClass::Loxodromic { length } => Ok(length),
        other => Err(Error::ZeroLength(other.name().into())),
    }
}

pub fn fixed_points(m: &CMat) -> Result<Vec<CP1>> {
    check_det(m)?;
    if m.is_pm_identity() {
        return Err(Error::WholeSphereFixed);
    }
    let mag = m.max_abs();
    let t = m.trace();
    let disc = t * t - 4.0;
    let parabolic = disc.norm() <= FLOAT_TOL * (1.0 + mag * mag);
    // c z² + (d − a) z − b = 0
    if m.c.norm() <= FLOAT_TOL * mag {
        let dma = m.d - m.a;
        if parabolic || dma.norm() <= FLOAT_TOL * mag {
            return Ok(vec![CP1::Infinity]);
        }
        return Ok(vec![CP1::Infinity, CP1::Finite(m.b / dma)]);
    }
    let amd = m.a - m.d;
    if parabolic {
        return Ok(vec![CP1::Finite(amd / (m.c * 2.0))]);
    }
    let s = disc.sqrt();
    // avoid cancellation: pick the larger numerator, get the other root from
    // the product of roots −b/c
    let q = if (amd + s).norm() >= (amd - s).norm() { amd + s } else { amd - s };
    let z1 = q / (m.c * 2.0);
    let z2 = -m.b / (m.c * z1);
    Ok(vec![CP1::Finite(z1), CP1::Finite(z2)])
}

/// Classification of the subgroup generated by a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// Exactly one common fixed point.
    Reducible,
    /// At least two common fixed points.
    Diagonalizable,
    /// Irreducible with an invariant 2-point set and infinite image.
    NConjugate,
    /// Irreducible, no invariant set with fewer than three points.
    StrictlyIrreducible,
    /// Irreducible with an invariant 2-point set and finite (dihedral) image.
    IrreducibleFiniteImage,
}

impl PairClass {
    pub fn is_reducible(self) -> bool {
        matches!(self, PairClass::Reducible | PairClass::Diagonalizable)
    }

    pub fn name(self) -> &'static str {
        match self {
            PairClass::Reducible => "reducible",
            PairClass::Diagonalizable => "diagonalizable",
            PairClass::NConjugate => "n-conjugate",
            PairClass::StrictlyIrreducible => "strictly-irreducible",
            PairClass::IrreducibleFiniteImage => "irreducible-finite-image",
        }
    }
}

pub(crate) fn fixes(m: &CMat, p: CP1) -> bool {
    m.is_pm_identity() || m.apply(p).near(p)
}

fn preserves_pair(m: &CMat, p: CP1, q: CP1) -> Option<bool> {
    let (mp, mq) = (m.apply(p), m.apply(q));
    if mp.near(p) && mq.near(q) {
        Some(false)
    } else if mp.near(q) && mq.near(p) {
        Some(true)
    } else {
        None
    }
}

fn has_finite_order(m: &CMat) -> Result<bool> {
    Ok(matches!(classify_isometry(m)?, IsomClass::Identity | IsomClass::Elliptic { order: Some(_) }))
}

pub fn pair_classify(a: &CMat, b: &CMat) -> Result<PairClass> {
    check_det(a)?;
    check_det(b)?;
    let (ia, ib) = (a.is_pm_identity(), b.is_pm_identity());
    if ia && ib {
        return Err(Error::DegeneratePair);
    }
    let fa = if ia { None } else { Some(fixed_points(a)?) };
    let fb = if ib { None } else { Some(fixed_points(b)?) };
    let (base, other) = match (&fa, &fb) {
        (Some(f), _) => (f, b),
        (None, Some(f)) => (f, a),
        _ => unreachable!(),
    };
    let common = base.iter().filter(|&&p| fixes(other, p)).count();
    match common {
        0 => {}
        1 => return Ok(PairClass::Reducible),
        _ => return Ok(PairClass::Diagonalizable),
    }
    let ab = a.mul(b);
    let mut candidates: Vec<Vec<CP1>> = Vec::new();
    candidates.extend(fa.clone());
    candidates.extend(fb.clone());
    if !ab.is_pm_identity() {
        candidates.push(fixed_points(&ab)?);
    }
    for cand in candidates.iter().filter(|c| c.len() == 2) {
        let (p, q) = (cand[0], cand[1]);
        let (Some(sa), Some(sb)) = (preserves_pair(a, p, q), preserves_pair(b, p, q)) else {
            continue;
        };
        // the diagonal part of the image is generated by one element
        let diag_gen = match (sa, sb) {
            (false, _) => a.clone(),
            (true, false) => b.clone(),
            (true, true) => ab.clone(),
        };
        return Ok(if has_finite_order(&diag_gen)? {
            PairClass::IrreducibleFiniteImage
        } else {
            PairClass::NConjugate
        });
    }
    Ok(PairClass::StrictlyIrreducible)
}

/// Jørgensen's inequality `|tr²A − 4| + |tr[A,B] − 2| ≥ 1`. `false` certifies
/// that ⟨A, B⟩ is elementary or not discrete; `true` is inconclusive.
pub fn jorgensen_test(a: &CMat, b: &CMat) -> bool {
    let ta = a.trace();
    let s = (ta * ta - 4.0).norm() + (a.commutator(b).trace() - 2.0).norm();
    s >= 1.0 - 1e-12
}

/// Exact rational matrix from integer entries (determinant checked).
pub fn qmat(a: i64, b: i64, c: i64, d: i64) -> Result<Mat2<BigRational>> {
    let q = |x: i64| BigRational::from_integer(x.into());
    Mat2::new(q(a), q(b), q(c), q(d))
}

/// `|x|` for an exact rational, as a float.
pub fn rational_abs_f64(x: &BigRational) -> f64 {
    x.abs().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn isometry_examples() {
        let p = CMat::from_f64(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(classify_isometry(&p).unwrap(), IsomClass::Parabolic);
        let h = CMat::diag(c(2.0));
        match classify_isometry(&h).unwrap() {
            IsomClass::Loxodromic { length } => assert!((length - 2.0 * 2f64.ln()).abs() < 1e-12),
            o => panic!("{o:?}"),
        }
        let e = CMat::diag(Complex64::from_polar(1.0, PI / 3.0));
        assert_eq!(classify_isometry(&e).unwrap(), IsomClass::Elliptic { order: Some(3) });
        assert_eq!(classify_isometry(&e.neg()).unwrap(), IsomClass::Elliptic { order: Some(3) });
        let irr = CMat::diag(Complex64::from_polar(1.0, 1.0));
        assert_eq!(classify_isometry(&irr).unwrap(), IsomClass::Elliptic { order: None });
        assert_eq!(classify_isometry(&CMat::identity().neg()).unwrap(), IsomClass::Identity);
        let bad = Mat2::new_unchecked(c(2.0), c(0.0), c(0.0), c(2.0));
        assert!(matches!(classify_isometry(&bad), Err(Error::InvalidInput(_))));
        assert!(CMat::from_f64(2.0, 0.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        let p = CMat::from_f64(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(fixed_points(&p).unwrap(), vec![CP1::Infinity]);
        let h = fixed_points(&CMat::diag(c(2.0))).unwrap();
        assert_eq!(h.len(), 2);
        assert!(h.iter().any(|q| q.near(CP1::Infinity)) && h.iter().any(|q| q.near(CP1::Finite(c(0.0)))));
        let r = fixed_points(&CMat::from_f64(0.0, 1.0, -1.0, 0.0).unwrap()).unwrap();
        let i = Complex64::i();
        assert!(r.iter().any(|q| q.near(CP1::Finite(i))) && r.iter().any(|q| q.near(CP1::Finite(-i))));
        assert_eq!(fixed_points(&CMat::identity()), Err(Error::WholeSphereFixed));
    }

    #[test]
    fn pair_examples() {
        let a = CMat::diag(c(2.0));
        let b = CMat::from_f64(3.0, 1.0, 0.0, 1.0 / 3.0).unwrap();
        assert_eq!(pair_classify(&a, &b).unwrap(), PairClass::Reducible);
        let w = CMat::from_f64(0.0, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(pair_classify(&a, &w).unwrap(), PairClass::NConjugate);
        let u = CMat::from_f64(1.0, 1.0, 0.0, 1.0).unwrap();
        let l = CMat::from_f64(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(pair_classify(&u, &l).unwrap(), PairClass::StrictlyIrreducible);
        assert_eq!(pair_classify(&a, &CMat::diag(c(5.0))).unwrap(), PairClass::Diagonalizable);
        assert_eq!(pair_classify(&a, &CMat::identity()).unwrap(), PairClass::Diagonalizable);
        assert_eq!(pair_classify(&u, &CMat::identity()).unwrap(), PairClass::Reducible);
        // dihedral of order 6
        let r3 = CMat::diag(Complex64::from_polar(1.0, PI / 3.0));
        assert_eq!(pair_classify(&r3, &w).unwrap(), PairClass::IrreducibleFiniteImage);
        assert_eq!(pair_classify(&CMat::identity(), &CMat::identity()), Err(Error::DegeneratePair));
    }

    #[test]
    fn translation_length_examples() {
        let t = translation_length(&CMat::diag(Complex64::new(1.0, 0.3).exp())).unwrap();
        assert!((t - 2.0).abs() < 1e-12);
        let m = CMat::from_f64(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!((translation_length(&m).unwrap() - 2.0 * 1.5f64.acosh()).abs() < 1e-12);
        assert!((translation_length(&m).unwrap() - 1.9248473).abs() < 1e-7);
        assert!(matches!(translation_length(&CMat::identity()), Err(Error::ZeroLength(_))));
    }

    #[test]
    fn jorgensen_examples() {
        let u = CMat::from_f64(1.0, 1.0, 0.0, 1.0).unwrap();
        let l = CMat::from_f64(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(jorgensen_test(&u, &l));
        assert!(!jorgensen_test(&CMat::identity(), &CMat::identity()));
        let u = CMat::from_f64(1.0, 0.001, 0.0, 1.0).unwrap();
        let l = CMat::from_f64(1.0, 0.0, 0.001, 1.0).unwrap();
        assert!(!jorgensen_test(&u, &l));
    }

    #[test]
    fn quadratic_scalars_are_exact() {
        let w = Eisenstein::from_frac(1, 1, 2); // e^{iπ/3}
        let mut p = Eisenstein::one();
        for _ in 0..6 {
            p = p.mul(&w);
        }
        assert_eq!(p, Eisenstein::one());
        assert!((w.to_c64() - Complex64::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
        let s3 = Quad::<3>::from_ints(2, 1);
        assert_eq!(s3.mul(&s3.inv().unwrap()), Quad::one());
        let m = qmat(2, 1, 1, 1).unwrap();
        assert_eq!(m.mul(&m.inv()), Mat2::identity());
        assert!(qmat(2, 0, 0, 2).is_err());
    }
}
