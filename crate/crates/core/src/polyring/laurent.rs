use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::sparse::{big_to_f64, SparsePoly};
use crate::{Error, Result};

/// Laurent polynomial in one variable with integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The involution `m ↦ m⁻¹`.
    pub fn invert(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert()
    }

    /// Multiply by `m^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, m: Complex64) -> Complex64 {
        self.terms.iter().map(|(k, c)| big_to_f64(c) * m.powi(*k as i32)).sum()
    }

    pub fn eval_int(&self, m: i64) -> Option<BigInt> {
        if m == 0 && self.min_degree().is_some_and(|d| d < 0) {
            return None;
        }
        let mb = BigInt::from(m);
        let mut acc = BigInt::zero();
        for (k, c) in &self.terms {
            if *k < 0 {
                // only ±1 make sense for negative powers over ℤ
                if m.abs() != 1 {
                    return None;
                }
                let s = if m == -1 && k % 2 != 0 { -BigInt::one() } else { BigInt::one() };
                acc += c * s;
            } else {
                acc += c * mb.pow(*k as u32);
            }
        }
        Some(acc)
    }

    /// Shift so the lowest exponent is 0 and return the ascending coefficient
    /// list of the resulting ordinary polynomial.
    pub fn dense(&self) -> Vec<BigInt> {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return Vec::new();
        };
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }

    /// Centre the support symmetrically about 0 (when its span is even) and
    /// fix the overall sign so the value at `m = 1` is positive; the
    /// representative of the class up to `±m^k`.
    pub fn balanced(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return self.clone();
        };
        let mut p = self.shift(-(lo + hi).div_euclid(2));
        let v = p.eval_int(1).unwrap();
        let flip = if v.is_zero() { p.terms.values().next_back().unwrap().is_negative() } else { v.is_negative() };
        if flip {
            p = p.neg();
        }
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// `p_k(t)`: the trace of `M^k` for `M ∈ SL₂` with `tr M = t`, as a polynomial
/// in `t`. Negative `k` give the same polynomial as `|k|`.
pub fn power_trace_poly(k: i64, t: &SparsePoly) -> SparsePoly {
    let k = k.unsigned_abs();
    let mut prev = t.constant_like(2);
    if k == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for _ in 1..k {
        let next = &(t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The unique `g` with `g(m + m⁻¹) = f(m)`, over the single variable `var`.
pub fn symmetrize(f: &LaurentPoly, var: &str) -> Result<SparsePoly> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let x = SparsePoly::var(&[var], 0);
    let mut out = SparsePoly::zero(&[var]);
    let mut rest = f.clone();
    while let Some(d) = rest.max_degree() {
        let c = rest.coeff(d);
        if d == 0 {
            out = &out + &SparsePoly::constant(&[var], c);
            break;
        }
        out = &out + &power_trace_poly(d, &x).scale(&c);
        rest.add_term(d, -c.clone());
        rest.add_term(-d, -c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(k, 1).add(&LaurentPoly::monomial(-k, 1))
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(symmetrize(&sym(2), "x").unwrap().to_string(), "x^2 - 2");
        assert_eq!(symmetrize(&sym(1), "x").unwrap().to_string(), "x");
        assert_eq!(symmetrize(&sym(3), "x").unwrap().to_string(), "x^3 - 3*x");
        let mixed = sym(2).add(&LaurentPoly::monomial(0, 5));
        assert_eq!(symmetrize(&mixed, "x").unwrap().to_string(), "x^2 + 3");
        assert_eq!(symmetrize(&LaurentPoly::monomial(1, 1), "x"), Err(Error::NotSymmetric));
    }

    #[test]
    fn balanced_representative() {
        // -t^3 + t^4 - t^5 ≐ t^-1 - 1 + t after recentring and sign fix
        let p = LaurentPoly::from_terms([(3, BigInt::from(-1)), (4, BigInt::from(1)), (5, BigInt::from(-1))]);
        assert_eq!(p.balanced().to_string(), "t - 1 + t^-1");
    }
}
