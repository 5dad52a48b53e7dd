use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent vector of a monomial, one entry per variable.
///
/// Ordered graded-lexicographically: total degree first, then the
/// exponent of the first variable, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept in a map keyed by [`Monomial`]; zero coefficients are never
/// stored, so two polynomials over the same variables are equal iff their
/// term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero(vars: &[&str]) -> Self {
        SparsePoly { vars: vars.iter().map(|v| v.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub(crate) fn zero_like(&self) -> Self {
        SparsePoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = SparsePoly::zero(vars);
        p.add_term(Monomial::one(vars.len()), c.into());
        p
    }

    pub(crate) fn constant_like(&self, c: impl Into<BigInt>) -> Self {
        let mut p = self.zero_like();
        p.add_term(Monomial::one(self.nvars()), c.into());
        p
    }

    /// The polynomial consisting of the single variable `vars[index]`.
    pub fn var(vars: &[&str], index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut p = SparsePoly::zero(vars);
        p.add_term(Monomial(e), BigInt::one());
        p
    }

    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = SparsePoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn vars_arc(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one(self.nvars())).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in the given variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Indices of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| self.involves(v)).collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        SparsePoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    fn mul_term(&self, m: &Monomial, c: &BigInt) -> Self {
        SparsePoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    /// Multiply by `vars[var]^k`.
    pub fn shift(&self, var: usize, k: u32) -> Self {
        let mut e = vec![0; self.nvars()];
        e[var] = k;
        self.mul_term(&Monomial(e), &BigInt::one())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.constant_like(1);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer content: gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the integer content and makes the leading coefficient
    /// positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Flip sign so the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Self {
        if self.leading_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub(crate) fn div_scalar_exact(&self, c: &BigInt) -> Self {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| {
                    debug_assert!((a % c).is_zero());
                    (m.clone(), a / c)
                })
                .collect(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        self.check_vars(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        if divisor.terms.len() == 1 {
            let mut q = self.zero_like();
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                let (qc, r) = c.div_rem(&lc);
                if !r.is_zero() {
                    return None;
                }
                q.terms.insert(m.div(&lm), qc);
            }
            return Some(q);
        }
        let mut rem = self.terms.clone();
        let mut quot = self.zero_like();
        while let Some((m, c)) = rem.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(&lm);
            for (dm, dc) in &divisor.terms {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients of `self` viewed as a polynomial in `vars[var]`; entry `k`
    /// is the coefficient of `var^k` (still over the full variable list, with
    /// `var` absent).
    pub fn coeffs_in(&self, var: usize) -> Vec<SparsePoly> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![self.zero_like(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.clone();
            e.0[var] = 0;
            out[k].terms.insert(e, c.clone());
        }
        out
    }

    /// Inverse of [`SparsePoly::coeffs_in`].
    pub fn from_coeffs_in(vars: &Arc<[String]>, var: usize, coeffs: &[SparsePoly]) -> Self {
        let mut p = SparsePoly { vars: vars.clone(), terms: BTreeMap::new() };
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.0[var], 0);
                let mut e = m.clone();
                e.0[var] = k as u32;
                p.terms.insert(e, a.clone());
            }
        }
        p
    }

    /// Coefficient of `var^k`.
    pub fn coeff_of(&self, var: usize, k: u32) -> SparsePoly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            if m.0[var] == k {
                let mut e = m.clone();
                e.0[var] = 0;
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    /// Replace `vars[var]` by `value` (a polynomial over the same variables).
    pub fn substitute(&self, var: usize, value: &SparsePoly) -> SparsePoly {
        self.check_vars(value);
        let coeffs = self.coeffs_in(var);
        let mut acc = self.zero_like();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Replace `vars[var]` by an integer.
    pub fn eval_var_int(&self, var: usize, value: &BigInt) -> SparsePoly {
        let mut out = self.zero_like();
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut e = m.clone();
            e.0[var] = 0;
            out.add_term(e, c * &powers[k]);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> SparsePoly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k > 0 {
                let mut e = m.clone();
                e.0[var] -= 1;
                out.terms.insert(e, c * BigInt::from(k));
            }
        }
        out
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars(), "evaluation point arity");
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(big_to_f64(c), 0.0);
            for (x, &k) in point.iter().zip(&m.0) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest absolute coefficient, as a float; used to scale residuals.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| big_to_f64(&c.abs())).fold(0.0, f64::max)
    }

    /// Dense coefficient list (ascending powers) of a polynomial that involves
    /// only `vars[var]`.
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<BigInt>> {
        if self.terms.keys().any(|m| m.0.iter().enumerate().any(|(i, &k)| i != var && k > 0)) {
            return None;
        }
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[var] as usize] = c.clone();
        }
        Some(out)
    }

    /// Re-express over another variable list. Every variable that occurs in
    /// `self` must be present in `vars`.
    pub fn with_vars(&self, vars: &[&str]) -> Option<SparsePoly> {
        let map: Option<Vec<usize>> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| match vars.iter().position(|w| w == v) {
                Some(j) => Some(j),
                None if !self.involves(i) => Some(usize::MAX),
                None => None,
            })
            .collect();
        let map = map?;
        let mut out = SparsePoly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[i]] = k;
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Some(out)
    }

    fn check_vars(&self, other: &SparsePoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let (mut big, small) =
            if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut acc: std::collections::HashMap<Monomial, BigInt> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        SparsePoly { vars: self.vars.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: &SparsePoly) -> SparsePoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for (v, &k) in self.vars.iter().zip(&m.0) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({})", self.vars.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xz() -> [&'static str; 2] {
        ["x", "z"]
    }

    #[test]
    fn grlex_ordering() {
        // x^2 > x z > z^2 > x > z > 1
        let mut ms = vec![
            Monomial(vec![0, 0]),
            Monomial(vec![0, 1]),
            Monomial(vec![1, 0]),
            Monomial(vec![0, 2]),
            Monomial(vec![1, 1]),
            Monomial(vec![2, 0]),
        ];
        let sorted = ms.clone();
        ms.reverse();
        ms.sort();
        assert_eq!(ms, sorted);
    }

    #[test]
    fn arithmetic_and_exact_division() {
        let v = xz();
        let x = SparsePoly::var(&v, 0);
        let z = SparsePoly::var(&v, 1);
        let one = SparsePoly::constant(&v, 1);
        let a = &(&x * &x) - &SparsePoly::constant(&v, 4);
        let b = &z - &one;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&(&z + &one)).is_none());
        assert!((&x + &one).div_exact(&SparsePoly::constant(&v, 2)).is_none());
        assert_eq!(format!("{prod}"), "x^2*z - x^2 - 4*z + 4");
    }

    #[test]
    fn substitution_and_coefficients() {
        let v = xz();
        let x = SparsePoly::var(&v, 0);
        let z = SparsePoly::var(&v, 1);
        let f = &(&z * &z) + &(&x * &z);
        let g = f.substitute(1, &(&x + &SparsePoly::constant(&v, 1)));
        // (x+1)^2 + x(x+1) = 2x^2 + 3x + 1
        let expect = SparsePoly::from_terms(
            &v,
            [(vec![2, 0], BigInt::from(2)), (vec![1, 0], BigInt::from(3)), (vec![0, 0], BigInt::from(1))],
        );
        assert_eq!(g, expect);
        let cs = f.coeffs_in(1);
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[1], x);
        assert_eq!(SparsePoly::from_coeffs_in(f.vars_arc(), 1, &cs), f);
    }

    #[test]
    fn primitive_part_sign() {
        let v = xz();
        let p = SparsePoly::from_terms(&v, [(vec![1, 0], BigInt::from(-6)), (vec![0, 0], BigInt::from(4))]);
        let pp = p.primitive_part();
        assert_eq!(pp.leading_coeff(), BigInt::from(3));
        assert_eq!(pp.constant_term(), BigInt::from(-2));
    }
}
