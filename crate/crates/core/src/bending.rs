//! Bending deformations of representations of amalgamated products and HNN
//! extensions along abelian edge groups, with exact criteria for when the
//! deformation leaves the character unchanged.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::mat2core::{fixed_points, fixes, CMat, Mat2};
use crate::word::Word;
use crate::{Error, Result};

/// Relative tolerance for comparing characters of words of length ≤ 12.
pub const CHAR_TOL: f64 = 1e-8;
/// Tolerance for matrix identities (edge compatibility, commutation).
pub const MAT_TOL: f64 = 1e-8;
/// Tolerance for the sampling side of the trace predicate.
pub const CONSTCONJ_TOL: f64 = 1e-9;
/// A witness of non-constancy must move a character by more than this.
pub const WITNESS_GAP: f64 = 1e-3;
pub const BEND_SAMPLES: usize = 100;
pub const TEST_WORDS: usize = 50;
pub const MAX_WORD_LEN: usize = 12;

fn near_pm_identity(m: &CMat, tol: f64) -> bool {
    m.psl_distance(&CMat::identity()) <= tol
}

/// `[A, B] = ±I`.
fn commute_psl(a: &CMat, b: &CMat) -> bool {
    near_pm_identity(&a.commutator(b), MAT_TOL)
}

/// `[A, B] = I` in SL₂.
fn commute_sl(a: &CMat, b: &CMat, tol: f64) -> bool {
    let (ab, ba) = (a.mul(b), b.mul(a));
    let d = [ab.a - ba.a, ab.b - ba.b, ab.c - ba.c, ab.d - ba.d].iter().fold(0.0f64, |m, x| m.max(x.norm()));
    d <= tol * (a.max_abs() * b.max_abs()).max(1.0)
}

fn is_parabolic(m: &CMat) -> bool {
    let t = m.trace();
    (t * t - 4.0).norm() <= 1e-9 * (1.0 + m.max_abs().powi(2))
}

/// Distance between characters in PSL₂: traces are defined up to sign.
fn psl_trace_gap(t1: Complex64, t2: Complex64) -> f64 {
    (t1 - t2).norm().min((t1 + t2).norm())
}

fn char_scale(t1: Complex64, t2: Complex64) -> f64 {
    1f64.max(t1.norm()).max(t2.norm())
}

/// Whether the listed elements form a Klein four-group in PSL₂: every
/// non-central element is an involution and two of them differ.
fn is_klein_four(es: &[CMat]) -> bool {
    let nc: Vec<&CMat> = es.iter().filter(|e| !near_pm_identity(e, MAT_TOL)).collect();
    if nc.is_empty() || nc.iter().any(|e| e.trace().norm() > 1e-9 * e.max_abs().max(1.0)) {
        return false;
    }
    nc.iter().any(|e| e.psl_distance(nc[0]) > MAT_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CentralizerKind {
    FullGroup,
    DConjugate,
    PConjugate,
}

/// Identity component `Z⁰(E)` of the centralizer of an abelian set, with a
/// conjugator `C` such that `C Z⁰ C⁻¹` is the diagonal group or the upper
/// unipotent group.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralizerDesc {
    pub kind: CentralizerKind,
    pub conjugator: CMat,
}

impl CentralizerDesc {
    /// A random element of `Z⁰`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CMat {
        let ci = self.conjugator.inv();
        let back = |m: CMat| ci.mul(&m).mul(&self.conjugator);
        match self.kind {
            CentralizerKind::FullGroup => random_sl2(rng),
            CentralizerKind::DConjugate => {
                let s = Complex64::from_polar(rng.gen_range(-1.0f64..1.0).exp(), rng.gen_range(-PI..PI));
                back(CMat::diag(s))
            }
            CentralizerKind::PConjugate => {
                let u = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                back(Mat2::new_unchecked(1.0.into(), u, 0.0.into(), 1.0.into()))
            }
        }
    }
}

fn eigvec(p: crate::mat2core::CP1) -> (Complex64, Complex64) {
    match p {
        crate::mat2core::CP1::Infinity => (1.0.into(), 0.0.into()),
        crate::mat2core::CP1::Finite(z) => (z, 1.0.into()),
    }
}

pub fn centralizer_component(es: &[CMat]) -> Result<CentralizerDesc> {
    for (i, a) in es.iter().enumerate() {
        for b in &es[i + 1..] {
            if !commute_psl(a, b) {
                return Err(Error::InvalidInput("edge elements do not commute".into()));
            }
        }
    }
    if is_klein_four(es) {
        return Err(Error::InvalidInput("edge image is Z/2 + Z/2".into()));
    }
    let nc: Vec<&CMat> = es.iter().filter(|e| !near_pm_identity(e, MAT_TOL)).collect();
    if nc.is_empty() {
        return Ok(CentralizerDesc { kind: CentralizerKind::FullGroup, conjugator: CMat::identity() });
    }
    if let Some(g) = nc.iter().find(|g| !is_parabolic(g)) {
        let fp = fixed_points(g)?;
        let (u, v) = (eigvec(fp[0]), eigvec(fp[1]));
        let det = u.0 * v.1 - v.0 * u.1;
        let k = det.sqrt();
        let p = Mat2::new_unchecked(u.0 / k, v.0 / k, u.1 / k, v.1 / k);
        return Ok(CentralizerDesc { kind: CentralizerKind::DConjugate, conjugator: p.inv() });
    }
    let conjugator = match fixed_points(nc[0])?[0] {
        crate::mat2core::CP1::Infinity => CMat::identity(),
        crate::mat2core::CP1::Finite(p) => Mat2::new_unchecked(0.0.into(), (-1.0).into(), 1.0.into(), -p),
    };
    Ok(CentralizerDesc { kind: CentralizerKind::PConjugate, conjugator })
}

/// An edge generator: its word on the first side and the word of its image
/// on the second side (amalgam), or `γ` and `φ(γ)` both over `Γ₁` (HNN).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePair {
    pub from: Word,
    pub to: Word,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SplittingRep {
    Amalgam { side1: Vec<CMat>, side2: Vec<CMat>, edge: Vec<EdgePair> },
    Hnn { side1: Vec<CMat>, stable: CMat, edge: Vec<EdgePair> },
}

fn eval_on(gens: &[CMat], w: &Word) -> CMat {
    let invs: Vec<CMat> = gens.iter().map(|g| g.inv()).collect();
    w.eval(gens, &invs, CMat::identity(), |x, y| x.mul(y))
}

fn check_word(w: &Word, n: usize, what: &str) -> Result<()> {
    match w.max_gen() {
        Some(g) if g as usize >= n => {
            Err(Error::InvalidInput(format!("{what} word {w} uses a generator beyond the {n} given")))
        }
        _ => Ok(()),
    }
}

impl SplittingRep {
    pub fn amalgam(side1: Vec<CMat>, side2: Vec<CMat>, edge: Vec<EdgePair>) -> Result<Self> {
        let r = SplittingRep::Amalgam { side1, side2, edge };
        r.validate()?;
        Ok(r)
    }

    pub fn hnn(side1: Vec<CMat>, stable: CMat, edge: Vec<EdgePair>) -> Result<Self> {
        let r = SplittingRep::Hnn { side1, stable, edge };
        r.validate()?;
        Ok(r)
    }

    pub fn is_amalgam(&self) -> bool {
        matches!(self, SplittingRep::Amalgam { .. })
    }

    fn validate(&self) -> Result<()> {
        let total = self.generator_images().len();
        if total == 0 || total > 26 {
            return Err(Error::InvalidInput(format!("{total} generators; need 1 to 26")));
        }
        for m in self.generator_images() {
            Mat2::new(m.a, m.b, m.c, m.d)?;
        }
        match self {
            SplittingRep::Amalgam { side1, side2, edge } => {
                for e in edge {
                    check_word(&e.from, side1.len(), "first-side")?;
                    check_word(&e.to, side2.len(), "second-side")?;
                    if eval_on(side1, &e.from).psl_distance(&eval_on(side2, &e.to)) > MAT_TOL {
                        return Err(Error::InvalidInput(format!(
                            "edge generator {} / {} has different images on the two sides",
                            e.from, e.to
                        )));
                    }
                }
            }
            SplittingRep::Hnn { side1, stable, edge } => {
                for e in edge {
                    check_word(&e.from, side1.len(), "edge")?;
                    check_word(&e.to, side1.len(), "edge")?;
                    let lhs = eval_on(side1, &e.from).conjugate_by(stable);
                    if lhs.psl_distance(&eval_on(side1, &e.to)) > MAT_TOL {
                        return Err(Error::InvalidInput(format!(
                            "stable letter does not conjugate {} to {}",
                            e.from, e.to
                        )));
                    }
                }
            }
        }
        centralizer_component(&self.edge_images())?;
        Ok(())
    }

    /// Images of the edge generators, on the first side.
    pub fn edge_images(&self) -> Vec<CMat> {
        match self {
            SplittingRep::Amalgam { side1, edge, .. } | SplittingRep::Hnn { side1, edge, .. } => {
                edge.iter().map(|e| eval_on(side1, &e.from)).collect()
            }
        }
    }

    /// Generator images of the whole group: the first side, then the second
    /// side or the stable letter.
    pub fn generator_images(&self) -> Vec<CMat> {
        match self {
            SplittingRep::Amalgam { side1, side2, .. } => side1.iter().chain(side2).cloned().collect(),
            SplittingRep::Hnn { side1, stable, .. } => {
                side1.iter().cloned().chain(std::iter::once(stable.clone())).collect()
            }
        }
    }

    /// Image of a word in the global alphabet of [`Self::generator_images`].
    pub fn eval(&self, w: &Word) -> Result<CMat> {
        let gens = self.generator_images();
        check_word(w, gens.len(), "test")?;
        Ok(eval_on(&gens, w))
    }

    pub fn character(&self, w: &Word) -> Result<Complex64> {
        Ok(self.eval(w)?.trace())
    }

    pub fn centralizer(&self) -> Result<CentralizerDesc> {
        centralizer_component(&self.edge_images())
    }

    /// Bends by `s ∈ Z⁰(edge)`.
    pub fn bend(&self, s: &CMat) -> Result<SplittingRep> {
        Mat2::new(s.a, s.b, s.c, s.d)?;
        if !self.edge_images().iter().all(|e| commute_psl(e, s)) {
            return Err(Error::InvalidBend);
        }
        Ok(self.bend_unchecked(s))
    }

    fn bend_unchecked(&self, s: &CMat) -> SplittingRep {
        match self {
            SplittingRep::Amalgam { side1, side2, edge } => SplittingRep::Amalgam {
                side1: side1.clone(),
                side2: side2.iter().map(|m| m.conjugate_by(s)).collect(),
                edge: edge.clone(),
            },
            SplittingRep::Hnn { side1, stable, edge } => {
                SplittingRep::Hnn { side1: side1.clone(), stable: stable.mul(s), edge: edge.clone() }
            }
        }
    }

    /// Entrywise agreement of all generator images within `tol` (relative).
    pub fn approx_eq(&self, o: &SplittingRep, tol: f64) -> bool {
        let (a, b) = (self.generator_images(), o.generator_images());
        self.is_amalgam() == o.is_amalgam()
            && a.len() == b.len()
            && a.iter().zip(&b).all(|(x, y)| {
                let d = [x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d].iter().fold(0.0f64, |m, v| m.max(v.norm()));
                d <= tol * x.max_abs().max(y.max_abs()).max(1.0)
            })
    }
}

fn all_central(ms: &[CMat]) -> bool {
    ms.iter().all(|m| near_pm_identity(m, MAT_TOL))
}

/// Common fixed point of all the elements, if any.
fn common_fixed_point(ms: &[CMat]) -> Option<crate::mat2core::CP1> {
    let Some(g) = ms.iter().find(|m| !near_pm_identity(m, MAT_TOL)) else {
        return Some(crate::mat2core::CP1::Infinity);
    };
    fixed_points(g).ok()?.into_iter().find(|&p| ms.iter().all(|m| fixes(m, p)))
}

fn is_abelian_reducible(ms: &[CMat]) -> bool {
    let abelian = ms.iter().enumerate().all(|(i, a)| ms[i + 1..].iter().all(|b| commute_psl(a, b)));
    abelian && common_fixed_point(ms).is_some()
}

/// Which structural situation makes the bending constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BendCase {
    /// Trivial edge and one side maps to `±I`.
    TrivialSide,
    /// Nontrivial edge and one side is abelian and reducible.
    AbelianReducibleSide,
    /// Nontrivial edge and the whole representation is reducible.
    Reducible,
    /// HNN, diagonalizable edge: `Γ₁ ↦ 𝒟` and the stable letter is
    /// anti-diagonal, after conjugation.
    Dihedral,
    /// HNN, parabolic edge: `Γ₁` and the stable letter upper triangular,
    /// after conjugation.
    Triangular,
    /// No constancy condition holds.
    None,
}

impl BendCase {
    pub fn is_constant(self) -> bool {
        self != BendCase::None
    }
}

/// The exact structural verdict.
pub fn structural_case(rep: &SplittingRep) -> Result<BendCase> {
    let z = rep.centralizer()?;
    Ok(match rep {
        SplittingRep::Amalgam { side1, side2, .. } => {
            if z.kind == CentralizerKind::FullGroup {
                if all_central(side1) || all_central(side2) {
                    BendCase::TrivialSide
                } else {
                    BendCase::None
                }
            } else if is_abelian_reducible(side1) || is_abelian_reducible(side2) {
                BendCase::AbelianReducibleSide
            } else if common_fixed_point(&rep.generator_images()).is_some() {
                BendCase::Reducible
            } else {
                BendCase::None
            }
        }
        SplittingRep::Hnn { side1, stable, .. } => {
            let c = &z.conjugator;
            let conj = |m: &CMat| m.conjugate_by(c);
            let small = |x: Complex64, m: &CMat| x.norm() <= 1e-9 * m.max_abs().max(1.0);
            match z.kind {
                CentralizerKind::FullGroup => BendCase::None,
                CentralizerKind::DConjugate => {
                    let diag = side1.iter().map(conj).all(|m| small(m.b, &m) && small(m.c, &m));
                    let a = conj(stable);
                    if diag && small(a.a, &a) && small(a.d, &a) {
                        BendCase::Dihedral
                    } else {
                        BendCase::None
                    }
                }
                CentralizerKind::PConjugate => {
                    let upper = side1.iter().chain(std::iter::once(stable)).map(conj).all(|m| small(m.c, &m));
                    if upper {
                        BendCase::Triangular
                    } else {
                        BendCase::None
                    }
                }
            }
        }
    })
}

/// A word and a bending element moving its character by `gap`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub word: Word,
    pub bend: CMat,
    pub before: Complex64,
    pub after: Complex64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstancyReport {
    pub constant: bool,
    pub case: BendCase,
    pub centralizer: CentralizerKind,
    pub samples: usize,
    pub words: usize,
    /// Largest relative character change seen while sampling.
    pub max_discrepancy: f64,
    pub witness: Option<Witness>,
}

/// Test words: each generator, each product of two generators, and random
/// words up to length 12.
fn test_words<R: Rng + ?Sized>(ngens: usize, rng: &mut R) -> Vec<Word> {
    let n = ngens as u8;
    let mut out: Vec<Word> = (0..n).map(Word::gen).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(Word::gen(i).mul(&Word::gen(j)));
            }
        }
    }
    for _ in 0..TEST_WORDS {
        let len = rng.gen_range(1..=MAX_WORD_LEN);
        out.push(Word::random(rng, n, len));
    }
    out
}

/// Structural verdict cross-checked against sampled bends; a disagreement
/// is a theory-check failure.
pub fn bending_constancy<R: Rng + ?Sized>(rep: &SplittingRep, rng: &mut R) -> Result<ConstancyReport> {
    bending_constancy_with(rep, rng, CHAR_TOL)
}

/// As [`bending_constancy`] with relative character tolerance `tol`.
pub fn bending_constancy_with<R: Rng + ?Sized>(rep: &SplittingRep, rng: &mut R, tol: f64) -> Result<ConstancyReport> {
    let case = structural_case(rep)?;
    let z = rep.centralizer()?;
    let words = test_words(rep.generator_images().len(), rng);
    let before: Vec<Complex64> = words.iter().map(|w| rep.character(w)).collect::<Result<_>>()?;
    let mut max_rel = 0.0f64;
    let mut witness: Option<Witness> = None;
    for _ in 0..BEND_SAMPLES {
        let s = z.sample(rng);
        let bent = rep.bend_unchecked(&s);
        for (w, &t0) in words.iter().zip(&before) {
            let t1 = bent.character(w)?;
            let gap = psl_trace_gap(t0, t1);
            max_rel = max_rel.max(gap / char_scale(t0, t1));
            if witness.as_ref().is_none_or(|x| gap > x.gap) {
                witness = Some(Witness { word: w.clone(), bend: s.clone(), before: t0, after: t1, gap });
            }
        }
    }
    let sampled_constant = max_rel <= tol;
    if sampled_constant != case.is_constant() {
        return Err(Error::TheoryCheck(format!("structural case {case:?} but sampled relative change {max_rel:e}")));
    }
    let witness = witness.filter(|w| !case.is_constant() && w.gap > WITNESS_GAP);
    if !case.is_constant() && witness.is_none() {
        return Err(Error::TheoryCheck("non-constant bending without a witness above the gap".into()));
    }
    Ok(ConstancyReport {
        constant: case.is_constant(),
        case,
        centralizer: z.kind,
        samples: BEND_SAMPLES,
        words: words.len(),
        max_discrepancy: max_rel,
        witness,
    })
}

/// Whether `tr(A S B S⁻¹) = tr(AB)` for every `S` commuting with `C` in SL₂,
/// decided structurally.
pub fn constconj_predicate(a: &CMat, b: &CMat, c: &CMat) -> bool {
    let pm = |m: &CMat| near_pm_identity(m, MAT_TOL);
    if pm(c) {
        return pm(a) || pm(b);
    }
    if commute_sl(a, c, MAT_TOL) || commute_sl(b, c, MAT_TOL) {
        return true;
    }
    fixed_points(c).is_ok_and(|fp| fp.into_iter().any(|p| fixes(a, p) && fixes(b, p)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstConjCheck {
    pub structural: bool,
    pub sampled: bool,
    pub max_deviation: f64,
}

/// [`constconj_predicate`] cross-checked against 100 sampled `S`.
pub fn constconj_check<R: Rng + ?Sized>(a: &CMat, b: &CMat, c: &CMat, rng: &mut R) -> Result<ConstConjCheck> {
    let structural = constconj_predicate(a, b, c);
    let z = centralizer_component(std::slice::from_ref(c))?;
    let t0 = a.mul(b).trace();
    let mut max_dev = 0.0f64;
    for _ in 0..BEND_SAMPLES {
        let s = z.sample(rng);
        let t1 = a.mul(&s).mul(b).mul(&s.inv()).trace();
        max_dev = max_dev.max((t1 - t0).norm() / char_scale(t0, t1));
    }
    let sampled = max_dev <= CONSTCONJ_TOL;
    if sampled != structural {
        return Err(Error::TheoryCheck(format!(
            "trace predicate says {structural} but sampling deviates by {max_dev:e}"
        )));
    }
    Ok(ConstConjCheck { structural, sampled, max_deviation: max_dev })
}

fn random_c<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))
}

/// Random element of SL₂(ℂ) with entries of moderate size.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> CMat {
    loop {
        let m = Mat2::new_unchecked(random_c(rng), random_c(rng), random_c(rng), random_c(rng));
        let d = m.det();
        if d.norm() > 0.1 {
            let k = d.sqrt();
            return Mat2::new_unchecked(m.a / k, m.b / k, m.c / k, m.d / k);
        }
    }
}

// ---------------------------------------------------------------------------
// reference suite

/// A constructed instance together with the case it was built to exhibit.
#[derive(Clone, Debug)]
pub struct SuiteCase {
    pub label: String,
    pub rep: SplittingRep,
    pub expected: BendCase,
}

fn random_log<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = rng.gen_range(0.3..1.2);
    Complex64::from_polar(r, rng.gen_range(-PI..PI))
}

fn random_diag<R: Rng + ?Sized>(rng: &mut R) -> CMat {
    CMat::diag(random_log(rng).exp())
}

fn random_upper<R: Rng + ?Sized>(rng: &mut R) -> CMat {
    let s = random_log(rng).exp();
    Mat2::new_unchecked(s, random_c(rng), 0.0.into(), s.inv())
}

fn random_unipotent<R: Rng + ?Sized>(rng: &mut R) -> CMat {
    let mut u = random_c(rng);
    if u.norm() < 0.3 {
        u += 1.0;
    }
    Mat2::new_unchecked(1.0.into(), u, 0.0.into(), 1.0.into())
}

fn random_antidiag<R: Rng + ?Sized>(rng: &mut R) -> CMat {
    let y = random_log(rng).exp();
    Mat2::new_unchecked(0.0.into(), y, -y.inv(), 0.0.into())
}

/// Conjugates every image by a random `g`, which preserves the case while
/// moving it out of the standard frame.
fn scramble<R: Rng + ?Sized>(rep: SplittingRep, rng: &mut R) -> SplittingRep {
    let g = random_sl2(rng);
    let c = |v: &[CMat]| v.iter().map(|m| m.conjugate_by(&g)).collect::<Vec<_>>();
    match rep {
        SplittingRep::Amalgam { side1, side2, edge } => {
            SplittingRep::Amalgam { side1: c(&side1), side2: c(&side2), edge }
        }
        SplittingRep::Hnn { side1, stable, edge } => {
            SplittingRep::Hnn { side1: c(&side1), stable: stable.conjugate_by(&g), edge }
        }
    }
}

fn edge(pairs: &[(&str, &str)]) -> Vec<EdgePair> {
    pairs
        .iter()
        .map(|(f, t)| EdgePair { from: Word::parse(f).expect("word"), to: Word::parse(t).expect("word") })
        .collect()
}

/// Fifty instances: every constancy case of both splittings, the special
/// non-constant configurations, and ten generic non-constant ones.
pub fn reference_suite(seed: u64) -> Vec<SuiteCase> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let id = CMat::identity();
    let mut out = Vec::new();
    let mut push = |label: &str, rep: SplittingRep, expected: BendCase, rng: &mut rand_chacha::ChaCha8Rng| {
        let rep = scramble(rep, rng);
        rep.validate().expect("suite instance is valid");
        out.push(SuiteCase { label: format!("{label}-{}", out.len()), rep, expected });
    };
    use SplittingRep::{Amalgam, Hnn};
    for i in 0..5 {
        let side2 = if i % 2 == 0 { vec![id.neg()] } else { vec![id.clone(), id.neg()] };
        let side1 = vec![random_sl2(rng), random_sl2(rng)];
        push("amalgam-trivial-side", Amalgam { side1, side2, edge: vec![] }, BendCase::TrivialSide, rng);
    }
    for _ in 0..3 {
        let side1 = vec![id.neg()];
        let side2 = vec![id.neg(), random_sl2(rng)];
        push("amalgam-trivial-side", Amalgam { side1, side2, edge: edge(&[("a", "a")]) }, BendCase::TrivialSide, rng);
    }
    for _ in 0..5 {
        let d = random_diag(rng);
        let side1 = vec![d.clone(), random_diag(rng)];
        let side2 = vec![d, random_sl2(rng), random_sl2(rng)];
        let e = edge(&[("a", "a")]);
        push("amalgam-abelian-reducible-side", Amalgam { side1, side2, edge: e }, BendCase::AbelianReducibleSide, rng);
    }
    for _ in 0..3 {
        let p = random_unipotent(rng);
        let side1 = vec![random_sl2(rng), p.clone()];
        let side2 = vec![p, random_unipotent(rng)];
        let e = edge(&[("b", "a")]);
        push("amalgam-abelian-reducible-side", Amalgam { side1, side2, edge: e }, BendCase::AbelianReducibleSide, rng);
    }
    for _ in 0..4 {
        let d = random_diag(rng);
        let side1 = vec![d.clone(), random_upper(rng)];
        let side2 = vec![random_upper(rng), d];
        push("amalgam-reducible", Amalgam { side1, side2, edge: edge(&[("a", "b")]) }, BendCase::Reducible, rng);
    }
    for _ in 0..3 {
        let p = random_unipotent(rng);
        let side1 = vec![p.clone(), random_upper(rng)];
        let side2 = vec![p, random_upper(rng), random_upper(rng)];
        push("amalgam-reducible", Amalgam { side1, side2, edge: edge(&[("a", "a")]) }, BendCase::Reducible, rng);
    }
    for i in 0..6 {
        let side1 = vec![random_diag(rng), random_diag(rng)];
        let e = if i % 2 == 0 { edge(&[("a", "A")]) } else { edge(&[("a", "A"), ("b", "B")]) };
        push("hnn-dihedral", Hnn { side1, stable: random_antidiag(rng), edge: e }, BendCase::Dihedral, rng);
    }
    for _ in 0..6 {
        let p = random_unipotent(rng);
        let a = random_upper(rng);
        let side1 = vec![p.clone(), p.conjugate_by(&a), random_upper(rng)];
        push("hnn-triangular", Hnn { side1, stable: a, edge: edge(&[("a", "b")]) }, BendCase::Triangular, rng);
    }
    // Z/3 * Z/3 with generic order-3 elliptics
    let e3 = Mat2::new_unchecked(0.0.into(), (-1.0).into(), 1.0.into(), (-1.0).into());
    for _ in 0..2 {
        let side2 = vec![e3.conjugate_by(&random_sl2(rng))];
        push("amalgam-free-elliptic", Amalgam { side1: vec![e3.clone()], side2, edge: vec![] }, BendCase::None, rng);
    }
    for _ in 0..2 {
        let side1 = vec![random_sl2(rng), random_sl2(rng)];
        push("hnn-trivial-edge", Hnn { side1, stable: random_sl2(rng), edge: vec![] }, BendCase::None, rng);
    }
    {
        // triangular images over a diagonal edge still move tr(A)
        let d = random_diag(rng);
        let side1 = vec![d, random_upper(rng)];
        push(
            "hnn-triangular-diagonal-edge",
            Hnn { side1, stable: random_diag(rng), edge: edge(&[("a", "a")]) },
            BendCase::None,
            rng,
        );
    }
    for _ in 0..5 {
        let d = random_diag(rng);
        let side1 = vec![d.clone(), random_sl2(rng)];
        let side2 = vec![d, random_sl2(rng)];
        push("amalgam-generic", Amalgam { side1, side2, edge: edge(&[("a", "a")]) }, BendCase::None, rng);
    }
    for i in 0..5 {
        let d = random_diag(rng);
        let (stable, e) = if i % 2 == 0 {
            (random_diag(rng), edge(&[("a", "a")]))
        } else {
            (random_antidiag(rng), edge(&[("a", "A")]))
        };
        let side1 = vec![d, random_sl2(rng)];
        push("hnn-generic", Hnn { side1, stable, edge: e }, BendCase::None, rng);
    }
    out
}

// ---------------------------------------------------------------------------
// rep.json

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryWire {
    Real(String),
    Complex([String; 2]),
}

type MatWire = [[EntryWire; 2]; 2];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeWire {
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase", deny_unknown_fields)]
enum RepWire {
    Amalgam { side1: Vec<MatWire>, side2: Vec<MatWire>, edge: Vec<EdgeWire> },
    Hnn { side1: Vec<MatWire>, stable: MatWire, edge: Vec<EdgeWire> },
}

/// A decimal (`-1.25`, `3e-2`) or a rational (`-7/4`).
fn parse_real(s: &str) -> Result<f64> {
    let bad = || Error::InvalidInput(format!("invalid number {s:?}"));
    let s = s.trim();
    let v = if s.contains('/') {
        let q: BigRational = s.parse().map_err(|_| bad())?;
        q.to_f64().ok_or_else(bad)?
    } else {
        if !s.bytes().all(|c| c.is_ascii_digit() || matches!(c, b'+' | b'-' | b'.' | b'e' | b'E')) {
            return Err(bad());
        }
        s.parse::<f64>().map_err(|_| bad())?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn entry_from_wire(e: &EntryWire) -> Result<Complex64> {
    match e {
        EntryWire::Real(s) => Ok(parse_real(s)?.into()),
        EntryWire::Complex([re, im]) => Ok(Complex64::new(parse_real(re)?, parse_real(im)?)),
    }
}

fn entry_to_wire(z: Complex64) -> EntryWire {
    if z.im == 0.0 {
        EntryWire::Real(format!("{}", z.re))
    } else {
        EntryWire::Complex([format!("{}", z.re), format!("{}", z.im)])
    }
}

fn mat_from_wire(m: &MatWire) -> Result<CMat> {
    let e = |i: usize, j: usize| entry_from_wire(&m[i][j]);
    Mat2::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?)
}

fn mat_to_wire(m: &CMat) -> MatWire {
    [[entry_to_wire(m.a), entry_to_wire(m.b)], [entry_to_wire(m.c), entry_to_wire(m.d)]]
}

fn edges_from_wire(es: &[EdgeWire]) -> Result<Vec<EdgePair>> {
    es.iter().map(|e| Ok(EdgePair { from: Word::parse(&e.from)?, to: Word::parse(&e.to)? })).collect()
}

fn edges_to_wire(es: &[EdgePair]) -> Vec<EdgeWire> {
    es.iter().map(|e| EdgeWire { from: e.from.to_string(), to: e.to.to_string() }).collect()
}

impl SplittingRep {
    /// Decodes and validates `rep.json`. Matrix entries are strings holding a
    /// decimal or a rational, or `[re, im]` pairs of such strings; words use
    /// the letter syntax over each side's generators (`"1"` is the identity).
    pub fn from_json(s: &str) -> Result<Self> {
        let w: RepWire = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("rep.json: {e}")))?;
        let mats = |v: &[MatWire]| v.iter().map(mat_from_wire).collect::<Result<Vec<_>>>();
        match w {
            RepWire::Amalgam { side1, side2, edge } => {
                SplittingRep::amalgam(mats(&side1)?, mats(&side2)?, edges_from_wire(&edge)?)
            }
            RepWire::Hnn { side1, stable, edge } => {
                SplittingRep::hnn(mats(&side1)?, mat_from_wire(&stable)?, edges_from_wire(&edge)?)
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mats = |v: &[CMat]| v.iter().map(mat_to_wire).collect::<Vec<_>>();
        let w = match self {
            SplittingRep::Amalgam { side1, side2, edge } => {
                RepWire::Amalgam { side1: mats(side1), side2: mats(side2), edge: edges_to_wire(edge) }
            }
            SplittingRep::Hnn { side1, stable, edge } => {
                RepWire::Hnn { side1: mats(side1), stable: mat_to_wire(stable), edge: edges_to_wire(edge) }
            }
        };
        serde_json::to_string(&w).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(a: f64, b: f64, c: f64, d: f64) -> CMat {
        CMat::from_f64(a, b, c, d).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        let z = centralizer_component(&[CMat::identity(), CMat::identity().neg()]).unwrap();
        assert_eq!(z.kind, CentralizerKind::FullGroup);
        let z = centralizer_component(&[m(2.0, 0.0, 0.0, 0.5)]).unwrap();
        assert_eq!(z.kind, CentralizerKind::DConjugate);
        assert!(z.conjugator.approx_eq(&CMat::identity()));
        let z = centralizer_component(&[m(1.0, 1.0, 0.0, 1.0)]).unwrap();
        assert_eq!(z.kind, CentralizerKind::PConjugate);
        let z = centralizer_component(&[m(1.0, 0.0, 1.0, 1.0)]).unwrap();
        let u = m(1.0, 0.0, 1.0, 1.0).conjugate_by(&z.conjugator);
        assert!(u.c.norm() < 1e-12);
        let i2 = |a: f64| Mat2::new_unchecked(Complex64::new(0.0, a), 0.0.into(), 0.0.into(), Complex64::new(0.0, -a));
        let anti = m(0.0, 1.0, -1.0, 0.0);
        assert!(centralizer_component(&[i2(1.0), anti]).is_err());
        assert!(centralizer_component(&[m(2.0, 0.0, 0.0, 0.5), m(1.0, 1.0, 0.0, 1.0)]).is_err());
    }

    #[test]
    fn constconj_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let id = CMat::identity();
        let b = m(2.0, 1.0, 1.0, 1.0);
        assert!(constconj_check(&id, &b, &id, &mut rng).unwrap().structural);
        let (a, b, c) = (m(1.0, 2.0, 0.0, 1.0), m(3.0, 1.0, 0.0, 1.0 / 3.0), m(2.0, 5.0, 0.0, 0.5));
        assert!(constconj_check(&a, &b, &c, &mut rng).unwrap().structural);
        let (a, b, c) = (m(1.0, 1.0, 1.0, 2.0), m(2.0, 1.0, 1.0, 1.0), m(2.0, 0.0, 0.0, 0.5));
        assert!(!constconj_check(&a, &b, &c, &mut rng).unwrap().structural);
    }

    #[test]
    fn bend_examples() {
        let d = m(4.0, 0.0, 0.0, 0.25);
        let g1 = m(1.0, 1.0, 1.0, 2.0);
        let g2 = m(2.0, 3.0, 1.0, 2.0);
        let rep = SplittingRep::amalgam(vec![d.clone(), g1], vec![d, g2], vec![EdgePair { from: w("a"), to: w("a") }])
            .unwrap();
        assert!(rep.bend(&CMat::identity().neg()).unwrap().approx_eq(&rep, 1e-15));
        let s = CMat::diag(Complex64::new(1.7, 0.4));
        assert!(rep.bend(&s).unwrap().bend(&s.inv()).unwrap().approx_eq(&rep, 1e-12));
        // γ₁γ₂ with one letter from each side: generators 1 and 3 globally
        let ww = w("bd");
        let t1 = rep.bend(&CMat::diag(2.0.into())).unwrap().character(&ww).unwrap();
        let t0 = rep.character(&ww).unwrap();
        assert!((t1 - t0).norm() > 1e-3);
        assert!(matches!(rep.bend(&m(1.0, 1.0, 0.0, 1.0)), Err(Error::InvalidBend)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = bending_constancy(&rep, &mut rng).unwrap();
        assert!(!r.constant && r.witness.is_some());
    }

    #[test]
    fn constancy_criteria_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // one side trivial, trivial edge
        let rep = SplittingRep::amalgam(vec![CMat::identity().neg()], vec![m(2.0, 1.0, 1.0, 1.0)], vec![]).unwrap();
        let r = bending_constancy(&rep, &mut rng).unwrap();
        assert_eq!((r.constant, r.case), (true, BendCase::TrivialSide));
        // HNN with diagonal side and anti-diagonal stable letter
        let d = m(3.0, 0.0, 0.0, 1.0 / 3.0);
        let rep =
            SplittingRep::hnn(vec![d], m(0.0, 1.0, -1.0, 0.0), vec![EdgePair { from: w("a"), to: w("A") }]).unwrap();
        let r = bending_constancy(&rep, &mut rng).unwrap();
        assert_eq!((r.constant, r.case), (true, BendCase::Dihedral));
        // free product of two order-3 elliptics
        let e1 = m(0.0, -1.0, 1.0, -1.0);
        let e2 = e1.conjugate_by(&m(1.0, 0.7, 0.3, 1.21));
        let rep = SplittingRep::amalgam(vec![e1], vec![e2], vec![]).unwrap();
        let r = bending_constancy(&rep, &mut rng).unwrap();
        assert!(!r.constant);
    }

    #[test]
    fn reference_suite_agrees() {
        let suite = reference_suite(0);
        assert_eq!(suite.len(), 50);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for c in &suite {
            let r = bending_constancy(&c.rep, &mut rng).unwrap_or_else(|e| panic!("{}: {e}", c.label));
            assert_eq!(r.case, c.expected, "{}", c.label);
        }
        assert_eq!(suite.iter().filter(|c| c.label.contains("generic")).count(), 10);
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"variant":"hnn","side1":[[["3","0"],["0","1/3"]]],"stable":[["0","1"],["-1","0"]],"edge":[{"from":"a","to":"A"}]}"#;
        let rep = SplittingRep::from_json(s).unwrap();
        let back = SplittingRep::from_json(&rep.to_json()).unwrap();
        assert_eq!(rep, back);
        let c = r#"{"variant":"amalgam","side1":[[[["0","1"],"0"],["0",["0","-1"]]]],"side2":[[["1","0"],["0","1"]]],"edge":[]}"#;
        assert!(SplittingRep::from_json(c).is_ok());
        for bad in [
            r#"{"variant":"hnn","side1":[],"stable":[["1","0"],["0","1"]],"edge":[],"x":1}"#,
            r#"{"variant":"amalgam","side1":[[["2","0"],["0","2"]]],"side2":[],"edge":[]}"#,
            r#"{"variant":"amalgam","side1":[[["inf","0"],["0","1"]]],"side2":[],"edge":[]}"#,
            r#"{"variant":"hnn","side1":[[["2","0"],["0","0.5"]]],"stable":[["1","0"],["0","1"]],"edge":[{"from":"a","to":"A"}]}"#,
            r#"{"variant":"hnn","side1":[[["2","0"],["0","0.5"]]],"stable":[["1","0"],["0","1"]],"edge":[{"from":"b","to":"b"}]}"#,
        ] {
            assert!(matches!(SplittingRep::from_json(bad), Err(Error::InvalidInput(_))), "{bad}");
        }
    }
}
