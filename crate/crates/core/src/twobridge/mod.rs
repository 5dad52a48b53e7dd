//! Two-bridge knot exteriors `M_{p/q}`: presentation, Alexander polynomial,
//! the nonabelian character curve `Φ(x, z) = 0`, dihedral characters and
//! Culler–Shalen degrees.

mod charpoly;
mod degree;

use std::fmt;

use num_integer::Integer;

use crate::polyring::LaurentPoly;
use crate::word::{Letter, Word};
use crate::{Error, Result};

pub use charpoly::{
    character_poly, character_poly_numeric, character_poly_symbolic, check_longitude, entry_equations,
    lift_representation, CharacterCurve, Lift, LongitudeCheck, Provenance, LONGITUDE_TOL, RILEY_RESIDUAL_TOL,
};
pub use degree::{cs_degree, cs_degree_seeded, dihedral_census, dihedral_census_with, DihedralCensus};

/// Normalized Schubert parameters: `p ≥ 3` odd, `0 < q < p`, `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBridgeKnot {
    p: u64,
    q: u64,
}

impl TwoBridgeKnot {
    /// Validates and reduces `q` modulo `p`. Mirror images are kept distinct.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::InvalidInput(format!("p must be odd and at least 3, got {p}")));
        }
        let qn = q.rem_euclid(p);
        if qn.gcd(&p) != 1 {
            return Err(Error::InvalidInput(format!("gcd({p}, {q}) ≠ 1")));
        }
        Ok(TwoBridgeKnot { p: p as u64, q: qn as u64 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q ≡ ±1 (mod p)`: the `(p, 2)` torus knot.
    pub fn is_torus(&self) -> bool {
        self.q == 1 || self.q == self.p - 1
    }

    /// `q⁻¹ mod p`.
    pub fn q_inverse(&self) -> u64 {
        let g = (self.q as i64).extended_gcd(&(self.p as i64));
        g.x.rem_euclid(self.p as i64) as u64
    }

    /// Same knot under `q ~ q^{±1} (mod p)`.
    pub fn schubert_equivalent(&self, o: &TwoBridgeKnot) -> bool {
        self.p == o.p && (self.q == o.q || self.q_inverse() == o.q)
    }

    /// All normalized knots with `p` in the given range, in `(p, q)` order.
    pub fn enumerate(p_min: u64, p_max: u64) -> Vec<TwoBridgeKnot> {
        let mut out = Vec::new();
        for p in p_min.max(3)..=p_max {
            if p % 2 == 0 {
                continue;
            }
            for q in 1..p {
                if q.gcd(&p) == 1 {
                    out.push(TwoBridgeKnot { p, q });
                }
            }
        }
        out
    }

    /// Smallest `q′ ≡ ±q^{±1} (mod p)`: one representative per knot type up
    /// to mirror image.
    pub fn type_representative(&self) -> TwoBridgeKnot {
        let (p, q, qi) = (self.p, self.q, self.q_inverse());
        let q = [q, p - q, qi, p - qi].into_iter().min().unwrap();
        TwoBridgeKnot { p, q }
    }

    /// One knot per type up to mirror image, in `(p, q)` order.
    pub fn enumerate_types(p_min: u64, p_max: u64) -> Vec<TwoBridgeKnot> {
        Self::enumerate(p_min, p_max).into_iter().filter(|k| k.type_representative() == *k).collect()
    }

    pub fn presentation(&self) -> Presentation2B {
        build_presentation(self)
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// `⟨a, b | a w = w b⟩` with `w = b^{ε₁} a^{ε₂} ⋯ a^{ε_{p−1}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation2B {
    pub eps: Vec<i8>,
    pub w: Word,
}

impl Presentation2B {
    /// `a w b⁻¹ w⁻¹`.
    pub fn relator(&self) -> Word {
        Word::gen(0).mul(&self.w).mul(&Word::gen_pow(1, -1)).mul(&self.w.inverse())
    }

    /// Sum of all the `εᵢ`.
    pub fn sigma(&self) -> i64 {
        self.eps.iter().map(|&e| e as i64).sum()
    }
}

pub fn build_presentation(k: &TwoBridgeKnot) -> Presentation2B {
    let p = k.p as i64;
    // the sign pattern needs an odd q; q − p names the same knot
    let q = if k.q.is_multiple_of(2) { k.q as i64 - p } else { k.q as i64 };
    let eps: Vec<i8> = (1..p).map(|i| if (i * q).div_euclid(p) % 2 == 0 { 1 } else { -1 }).collect();
    // odd positions carry b, even positions a
    let w =
        Word::from_letters(eps.iter().enumerate().map(|(i, &e)| Letter::new(if i % 2 == 0 { 1 } else { 0 }, e < 0)));
    Presentation2B { eps, w }
}

/// Fox derivative `∂r/∂a` pushed to `ℤ[t^{±1}]` with `a, b ↦ t`.
fn fox_abelian(r: &Word, gen: u8) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut s = 0i64;
    for l in r.letters() {
        if l.gen == gen {
            if l.inv {
                out.add_term(s - 1, (-1).into());
            } else {
                out.add_term(s, 1.into());
            }
        }
        s += l.exponent();
    }
    out
}

/// Alexander polynomial, centred so `Δ(t) = Δ(t⁻¹)` and `Δ(1) = 1`.
pub fn alexander(k: &TwoBridgeKnot) -> LaurentPoly {
    fox_abelian(&k.presentation().relator(), 0).balanced()
}

/// `λ = w ŵ a^{−2σ}` where `ŵ` is `w` reversed and `σ = Σ εᵢ`. Has exponent
/// sum 0; see [`longitude_word`] for the checked version.
pub fn longitude_candidate(k: &TwoBridgeKnot) -> Word {
    let pres = k.presentation();
    let rev = Word::from_letters(pres.w.letters().iter().rev().copied());
    pres.w.mul(&rev).mul(&Word::gen_pow(0, -2 * pres.sigma()))
}

/// The longitude, accepted only after it is seen to commute with the
/// meridian on sampled irreducible representations.
pub fn longitude_word(k: &TwoBridgeKnot) -> Result<(Word, LongitudeCheck)> {
    let w = longitude_candidate(k);
    let curve = character_poly(k)?;
    let check = check_longitude(&curve, &w)?;
    Ok((w, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn k(p: i64, q: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::new(p, q).unwrap()
    }

    #[test]
    fn presentations() {
        assert_eq!(k(3, 1).presentation().w.to_string(), "ba");
        assert_eq!(k(5, 3).presentation().w.to_string(), "bABa");
        assert_eq!(k(5, 3).presentation().eps, vec![1, -1, -1, 1]);
        assert_eq!(k(5, 1).presentation().w.to_string(), "baba");
        assert_eq!(k(3, 1).presentation().relator().to_string(), "abaBAB");
    }

    #[test]
    fn knot_validation() {
        assert!(TwoBridgeKnot::new(4, 1).is_err());
        assert!(TwoBridgeKnot::new(9, 3).is_err());
        assert!(TwoBridgeKnot::new(1, 0).is_err());
        assert_eq!(k(7, -1).q(), 6);
        assert!(k(7, 6).is_torus() && !k(7, 3).is_torus());
        assert_eq!(k(7, 3).q_inverse(), 5);
        assert!(k(7, 3).schubert_equivalent(&k(7, 5)));
        assert!(!k(7, 3).schubert_equivalent(&k(7, 4)));
        assert_eq!(k(7, 4).type_representative(), k(7, 2));
        let types: Vec<_> = TwoBridgeKnot::enumerate_types(3, 9).iter().map(|k| (k.p(), k.q())).collect();
        assert_eq!(types, [(3, 1), (5, 1), (5, 2), (7, 1), (7, 2), (9, 1), (9, 2)]);
        assert_eq!(TwoBridgeKnot::enumerate(3, 17).len(), 64);
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&k(3, 1)).to_string(), "t - 1 + t^-1");
        assert_eq!(alexander(&k(5, 3)).to_string(), "-t + 3 - t^-1");
        assert_eq!(alexander(&k(5, 1)).to_string(), "t^2 - t + 1 - t^-1 + t^-2");
        for kn in [k(3, 1), k(5, 3), k(5, 1), k(7, 3)] {
            let d = alexander(&kn);
            assert_eq!(d.eval_int(-1).unwrap().magnitude(), &BigInt::from(kn.p()).magnitude().clone());
            assert_eq!(d.eval_int(1).unwrap(), BigInt::from(1));
            assert!(d.is_symmetric());
        }
    }

    #[test]
    fn longitude_is_peripheral() {
        for kn in TwoBridgeKnot::enumerate(3, 11) {
            let (w, check) = longitude_word(&kn).unwrap();
            assert_eq!(w.total_exponent(), 0, "{kn}");
            assert!(check.samples >= 20);
        }
        let (_, check) = longitude_word(&k(5, 3)).unwrap();
        assert!(check.min_distance_from_identity > 1e-3);
        // a non-peripheral word is caught
        let curve = character_poly(&k(5, 3)).unwrap();
        let bad = Word::parse("ab").unwrap();
        assert!(matches!(check_longitude(&curve, &bad), Err(Error::ConstructionBug(_))));
    }
}
