use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alexander;
use super::charpoly::CharacterCurve;
use crate::polyring::{
    complex_roots, distinct_count, is_squarefree_in, resultant, squarefree_part, SparsePoly, ROOT_CLUSTER_RADIUS,
};
use crate::tracecalc::trace_poly;
use crate::word::Word;
use crate::{Error, Result};

/// Characters with meridian trace 0: the dihedral characters.
#[derive(Clone, Debug)]
pub struct DihedralCensus {
    /// Roots of `Φ(0, z)`, with multiplicity.
    pub z_values: Vec<Complex64>,
    pub distinct: usize,
    /// `Φ(0, z)` has no repeated factor (decided exactly).
    pub squarefree: bool,
    pub expected: usize,
}

pub fn dihedral_census(curve: &CharacterCurve) -> Result<DihedralCensus> {
    dihedral_census_with(curve, ROOT_CLUSTER_RADIUS)
}

/// As [`dihedral_census`], with roots closer than `cluster_radius` counted once.
pub fn dihedral_census_with(curve: &CharacterCurve, cluster_radius: f64) -> Result<DihedralCensus> {
    let k = curve.knot;
    let f0 = curve.phi.eval_var_int(0, &BigInt::from(0));
    let z_values = complex_roots(&f0)?;
    let distinct = distinct_count(&z_values, cluster_radius);
    let expected = ((k.p() - 1) / 2) as usize;
    let klassen = alexander(&k).eval_int(-1).map(|v| (v.magnitude().clone() - 1u32) / 2u32);
    if distinct != expected || klassen != Some(BigInt::from(expected).magnitude().clone()) {
        return Err(Error::CensusMismatch { expected, found: distinct });
    }
    Ok(DihedralCensus { squarefree: is_squarefree_in(&f0, 1), z_values, distinct, expected })
}

/// Write an even polynomial in `x` over `[x, z]` as a polynomial in
/// `u = x²` over `[u, z, s]`.
fn even_to_u(f: &SparsePoly) -> Result<SparsePoly> {
    let mut terms = Vec::with_capacity(f.num_terms());
    for (m, c) in f.terms() {
        if m.0[0] % 2 != 0 {
            return Err(Error::AlgorithmDisagreement(format!("{f} is not even in x")));
        }
        terms.push((vec![m.0[0] / 2, m.0[1], 0], c.clone()));
    }
    Ok(SparsePoly::from_terms(&["u", "z", "s"], terms))
}

/// Culler–Shalen degree of `f_w = τ_w² − 4` on the curve, with the
/// default seed 0.
pub fn cs_degree(curve: &CharacterCurve, w: &Word) -> Result<usize> {
    cs_degree_seeded(curve, w, 0)
}

/// Generic fibre size of `f_w` on `{Φ = 0}` modulo `x ↦ −x`: the number of
/// `(u, z)` with `Ψ(u, z) = 0` and `f_w = c` for random `c`, counted as the
/// distinct roots of a resultant after a random shear `z = s − λu` that
/// separates points with the same `z`.
pub fn cs_degree_seeded(curve: &CharacterCurve, w: &Word, seed: u64) -> Result<usize> {
    if w.max_gen().is_some_and(|g| g > 1) {
        return Err(Error::InvalidInput(format!("word {w} uses generators other than a, b")));
    }
    let psi = even_to_u(&curve.phi)?;
    // τ_w(x, x, z) over [x, z]
    let tau = trace_poly(w);
    let xz = ["x", "y", "z"];
    let tau = tau.substitute(1, &SparsePoly::var(&xz, 0));
    let f = &(&tau * &tau) - &SparsePoly::constant(&xz, 4);
    let f = even_to_u(&f.with_vars(&["x", "z"]).expect("y eliminated"))?;
    if f.is_constant() {
        return Ok(0);
    }
    let vars = ["u", "z", "s"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        let counts: Vec<Option<usize>> = (0..3)
            .map(|_| {
                let c: i64 = rng.gen_range(-1_000_000..=1_000_000);
                let lam: i64 = rng.gen_range(1..=1000);
                let zsub = &SparsePoly::var(&vars, 2) - &SparsePoly::var(&vars, 0).scale(&lam.into());
                let a = psi.substitute(1, &zsub);
                let b = (&f - &SparsePoly::constant(&vars, c)).substitute(1, &zsub);
                if !a.involves(0) || !b.involves(0) {
                    return None;
                }
                let r = resultant(&a, &b, 0).ok()?;
                if r.is_zero() {
                    return None;
                }
                Some(squarefree_part(&r, 2).degree_in(2).unwrap_or(0) as usize)
            })
            .collect();
        if let Some(Some(n)) = counts.first() {
            if counts.iter().all(|c| *c == Some(*n)) {
                return Ok(*n);
            }
        }
    }
    Err(Error::UnstableFiber(format!("no stable fibre count for {w} on Φ = {}", curve.phi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twobridge::{character_poly, TwoBridgeKnot};

    #[test]
    fn census_and_degrees() {
        let c = character_poly(&TwoBridgeKnot::new(3, 1).unwrap()).unwrap();
        let d = dihedral_census(&c).unwrap();
        assert_eq!(d.distinct, 1);
        assert!((d.z_values[0] - 1.0).norm() < 1e-12);
        assert_eq!(cs_degree(&c, &Word::parse("a").unwrap()).unwrap(), 1);
        assert_eq!(cs_degree(&c, &Word::parse("aa").unwrap()).unwrap(), 2);
        let c = character_poly(&TwoBridgeKnot::new(5, 3).unwrap()).unwrap();
        assert_eq!(dihedral_census(&c).unwrap().distinct, 2);
        assert_eq!(cs_degree(&c, &Word::parse("a").unwrap()).unwrap(), 2);
        let c = character_poly(&TwoBridgeKnot::new(7, 3).unwrap()).unwrap();
        assert_eq!(cs_degree(&c, &Word::parse("a").unwrap()).unwrap(), 3);
    }
}
