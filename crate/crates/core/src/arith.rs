//! Arithmetic functions and the closed-form bounds for domination chains of
//! two-bridge knot exteriors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::twobridge::TwoBridgeKnot;
use crate::{Error, Result};

fn positive(n: i64) -> Result<u64> {
    if n <= 0 {
        return Err(Error::InvalidInput(format!("expected a positive integer, got {n}")));
    }
    Ok(n as u64)
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn moebius(n: i64) -> Result<i64> {
    let f = factorize(positive(n)?);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len().is_multiple_of(2) { 1 } else { -1 })
}

pub fn euler_phi(n: i64) -> Result<u64> {
    let n = positive(n)?;
    Ok(factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

/// Divisors in ascending order.
pub fn divisors(n: i64) -> Result<Vec<u64>> {
    let n = positive(n)?;
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    Ok(ds)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Inputs of the adjoint Betti number formula for a dihedral character of
/// order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B1Input {
    pub n: u64,
    pub b1_gamma: u64,
    pub b1_gamma2: u64,
    /// `d ↦ b₁(Γ_{2d})` for each divisor `d` of `n`.
    pub b1_cover: BTreeMap<u64, u64>,
}

/// `b₁(Γ₂) − b₁(Γ) + (1/φ(n)) Σ_{d|n} μ(n/d) b₁(Γ_{2d})`, evaluated exactly.
pub fn b1_adjoint(input: &B1Input) -> Result<i64> {
    let n = input.n;
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    let ds = divisors(n as i64)?;
    let keys: Vec<u64> = input.b1_cover.keys().copied().collect();
    if keys != ds {
        return Err(Error::InvalidInput(format!("b1_cover must be given on exactly the divisors {ds:?} of {n}")));
    }
    let mut sum = BigRational::zero();
    for d in ds {
        let mu = moebius((n / d) as i64)?;
        sum += BigRational::from_integer(BigInt::from(mu) * BigInt::from(input.b1_cover[&d]));
    }
    let total = sum / BigRational::from_integer(euler_phi(n as i64)?.into())
        + BigRational::from_integer(BigInt::from(input.b1_gamma2) - BigInt::from(input.b1_gamma));
    if !total.denom().is_one() {
        return Err(Error::InconsistentInput(format!("formula evaluates to the non-integer {total}")));
    }
    i64::try_from(total.to_integer()).map_err(|_| Error::InconsistentInput("result out of range".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// `p` prime and `q ≢ ±1 (mod p)`.
    Minimal,
    /// `q ≡ ±1 (mod p)`.
    TorusKnot,
    /// None of the sufficient conditions apply.
    Indeterminate,
}

impl Minimality {
    pub fn name(self) -> &'static str {
        match self {
            Minimality::Minimal => "minimal",
            Minimality::TorusKnot => "torus-knot",
            Minimality::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBoundReport {
    pub p: u64,
    pub q: u64,
    /// Least of `q`, `q⁻¹ mod p`.
    pub q_representative: u64,
    /// A chain of strict epimorphisms has length `n < strict_epi_bound`.
    pub strict_epi_bound: u64,
    pub strict_epi_bound_is_strict: bool,
    /// `n + 1 ≤ τ(p)`, reading "multiplicative factors" as divisors.
    pub dom_bound: u64,
    /// `n + 1 ≤ Ω(p) + 1`, the longest divisor chain of `p`.
    pub dom_bound_chain: u64,
    /// `n + 1 ≤ ω(p)` for degree-one chains.
    pub deg1_bound: u64,
    pub minimality: Minimality,
    /// `p` is a prime power, so no strict degree-one domination exists.
    pub prime_power: bool,
}

pub fn chain_bounds(k: &TwoBridgeKnot) -> ChainBoundReport {
    let (p, q) = (k.p(), k.q());
    let f = factorize(p);
    let omega = f.len() as u64;
    let big_omega: u64 = f.iter().map(|&(_, e)| e as u64).sum();
    let tau: u64 = f.iter().map(|&(_, e)| e as u64 + 1).product();
    let minimality = if k.is_torus() {
        Minimality::TorusKnot
    } else if is_prime(p) {
        Minimality::Minimal
    } else {
        Minimality::Indeterminate
    };
    ChainBoundReport {
        p,
        q,
        q_representative: q.min(k.q_inverse()),
        strict_epi_bound: (p - 1) / 2,
        strict_epi_bound_is_strict: true,
        dom_bound: tau,
        dom_bound_chain: big_omega + 1,
        deg1_bound: omega,
        minimality,
        prime_power: omega == 1,
    }
}
