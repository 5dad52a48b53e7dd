//! Recursive gcd, pseudo-remainders and resultants over ℤ[x₁,…,x_k].
//!
//! A polynomial is viewed as univariate in a chosen main variable with
//! coefficients in the remaining variables; all coefficient arithmetic is
//! exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::sparse::SparsePoly;
use crate::{Error, Result};

/// Coefficient vector in the main variable, ascending powers, no trailing
/// zeros.
type Coeffs = Vec<SparsePoly>;

fn trim(c: &mut Coeffs) {
    while c.last().is_some_and(SparsePoly::is_zero) {
        c.pop();
    }
}

fn deg(c: &Coeffs) -> Option<usize> {
    c.len().checked_sub(1)
}

/// Pseudo-remainder of `a` by `b` (ascending coefficient vectors):
/// `lc(b)^(deg a − deg b + 1) · a mod b`.
fn prem(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let db = deg(b).expect("prem by zero");
    let lcb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    let Some(da) = deg(&r) else { return r };
    if da < db {
        return r;
    }
    let mut e = (da - db + 1) as u32;
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let k = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &(&lr * bc);
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Primitive gcd of a list of polynomials (0 for an all-zero list).
fn gcd_many<'a>(mut it: impl Iterator<Item = &'a SparsePoly>, like: &SparsePoly) -> SparsePoly {
    let mut g = like.zero_like();
    for c in it.by_ref() {
        g = gcd_prim(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Content of `f` with respect to `var`: the primitive gcd of its
/// coefficients in that variable.
pub fn content_in(f: &SparsePoly, var: usize) -> SparsePoly {
    let cs = f.coeffs_in(var);
    gcd_many(cs.iter(), f)
}

/// `f` divided by its content in `var` (and by its integer content).
pub fn primitive_part_in(f: &SparsePoly, var: usize) -> SparsePoly {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, var);
    f.div_exact(&c).expect("content divides").primitive_part()
}

fn coeffs_pp(c: &Coeffs, like: &SparsePoly) -> Coeffs {
    let g = gcd_many(c.iter(), like);
    if g.is_zero() {
        return c.clone();
    }
    c.iter().map(|x| x.div_exact(&g).expect("content divides")).collect()
}

/// Greatest common divisor over ℤ, normalized to be primitive with positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    gcd_prim(f, g)
}

fn gcd_prim(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    if f.is_constant() || g.is_constant() {
        return f.constant_like(1);
    }
    let sf = f.support_vars();
    let sg = g.support_vars();
    if let Some(&v) = sf.iter().find(|v| !sg.contains(v)) {
        return gcd_prim(&content_in(f, v), g);
    }
    if let Some(&v) = sg.iter().find(|v| !sf.contains(v)) {
        return gcd_prim(f, &content_in(g, v));
    }
    let v = *sf.iter().min_by_key(|&&v| f.degree_in(v).max(g.degree_in(v))).unwrap();
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_prim(&cf, &cg);
    let mut a: Coeffs = f.div_exact(&cf).unwrap().coeffs_in(v);
    let mut b: Coeffs = g.div_exact(&cg).unwrap().coeffs_in(v);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if coprime_by_specialization(&a, &b) {
        return c;
    }
    let h = loop {
        let r = prem(&a, &b);
        match deg(&r) {
            None => break b,
            Some(0) => break vec![f.constant_like(1)],
            Some(_) => {
                a = b;
                b = coeffs_pp(&r, f);
            }
        }
    };
    let h = coeffs_pp(&h, f);
    let h = SparsePoly::from_coeffs_in(f.vars_arc(), v, &h);
    (&c * &h).primitive_part()
}

const MOD_P: u64 = 0x1fff_ffff_ffff_ffff; // 2^61 − 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

fn eval_mod(f: &SparsePoly, point: &[u64]) -> u64 {
    let p = BigInt::from(MOD_P);
    f.terms().fold(0, |acc, (m, c)| {
        let c = c.mod_floor(&p).try_into().unwrap_or(0u64);
        let v = m.0.iter().zip(point).fold(c, |t, (&e, &x)| mulmod(t, powmod(x, e as u64)));
        (acc + v) % MOD_P
    })
}

/// Degree of the monic gcd over 𝔽_p of two dense polynomials (ascending).
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a ← a mod b
        let inv = powmod(*b.last().unwrap(), MOD_P - 2);
        while a.len() >= b.len() {
            let q = mulmod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + MOD_P - mulmod(q, bi)) % MOD_P;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test that two polynomials, given by coefficient lists in the
/// main variable, share no factor involving it: some integer specialization
/// of the other variables keeps both leading coefficients nonzero mod p and
/// leaves the images coprime.
fn coprime_by_specialization(a: &Coeffs, b: &Coeffs) -> bool {
    let n = a[0].nvars();
    for trial in 0..3u64 {
        let point: Vec<u64> = (0..n as u64).map(|i| 1_000_003 + 7919 * i + 104_729 * trial).collect();
        let ea: Vec<u64> = a.iter().map(|c| eval_mod(c, &point)).collect();
        let eb: Vec<u64> = b.iter().map(|c| eval_mod(c, &point)).collect();
        if ea.last() == Some(&0) || eb.last() == Some(&0) {
            continue;
        }
        return gcd_degree_mod(ea, eb) == 0;
    }
    false
}

/// Removes repeated factors involving `var`: `f / gcd(f, ∂f/∂var)`,
/// returned primitive.
pub fn squarefree_part(f: &SparsePoly, var: usize) -> SparsePoly {
    if f.is_zero() || !f.involves(var) {
        return f.primitive_part();
    }
    let g = poly_gcd(f, &f.derivative(var));
    f.div_exact(&g).expect("gcd divides").primitive_part()
}

/// Whether `f` has no repeated factor involving `var` (decided exactly).
pub fn is_squarefree_in(f: &SparsePoly, var: usize) -> bool {
    !f.is_zero() && !poly_gcd(f, &f.derivative(var)).involves(var)
}

/// Resultant of `f` and `g` with respect to `var`, computed by the
/// subresultant pseudo-remainder sequence. Agrees with the determinant of the
/// Sylvester matrix.
pub fn resultant(f: &SparsePoly, g: &SparsePoly, var: usize) -> Result<SparsePoly> {
    let df = f.degree_in(var).unwrap_or(0);
    let dg = g.degree_in(var).unwrap_or(0);
    if df == 0 || dg == 0 {
        return Err(Error::InvalidElimination(format!(
            "both polynomials need positive degree in {} (got {df} and {dg})",
            f.vars()[var]
        )));
    }
    let mut a = f.coeffs_in(var);
    let mut b = g.coeffs_in(var);
    let ca = gcd_many(a.iter(), f);
    let cb = gcd_many(b.iter(), f);
    // contents carry the integer content too, so keep their exact values
    let ca = exact_content(&a, &ca);
    let cb = exact_content(&b, &cb);
    a = a.iter().map(|c| c.div_exact(&ca).unwrap()).collect();
    b = b.iter().map(|c| c.div_exact(&cb).unwrap()).collect();
    let t = &ca.pow(dg) * &cb.pow(df);
    let mut sign = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            sign = true;
        }
    }
    let one = f.constant_like(1);
    let mut gg = one.clone();
    let mut h = one.clone();
    loop {
        let da = deg(&a).unwrap();
        let db = deg(&b).unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok(f.zero_like());
        }
        let div = &gg * &h.pow(delta);
        b = r.iter().map(|c| c.div_exact(&div).expect("subresultant division")).collect();
        gg = a.last().unwrap().clone();
        // h <- g^delta / h^(delta-1)
        h = if delta == 0 {
            // cannot occur after the first step; kept for completeness
            h
        } else {
            gg.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h")
        };
        if deg(&b).unwrap() == 0 {
            let da = deg(&a).unwrap() as u32;
            let lb = b[0].clone();
            let hh = lb.pow(da).div_exact(&h.pow(da.saturating_sub(1))).expect("final h");
            let res = &t * &hh;
            return Ok(if sign { -res } else { res });
        }
    }
}

/// Scale a primitive content so that it divides the coefficients exactly
/// including the integer content.
fn exact_content(c: &Coeffs, prim: &SparsePoly) -> SparsePoly {
    if prim.is_zero() {
        return prim.clone();
    }
    let mut ic = BigInt::zero();
    for x in c {
        let q = x.div_exact(prim).expect("content divides");
        ic = ic.gcd(&q.content());
    }
    if ic.is_zero() {
        ic = BigInt::one();
    }
    prim.scale(&ic)
}

/// Resultant as the determinant of the Sylvester matrix, evaluated by
/// fraction-free (Bareiss) elimination. Independent of [`resultant`]; slower.
pub fn resultant_sylvester(f: &SparsePoly, g: &SparsePoly, var: usize) -> Result<SparsePoly> {
    let df = f.degree_in(var).unwrap_or(0) as usize;
    let dg = g.degree_in(var).unwrap_or(0) as usize;
    if df == 0 || dg == 0 {
        return Err(Error::InvalidElimination("zero degree in elimination variable".into()));
    }
    let a = f.coeffs_in(var);
    let b = g.coeffs_in(var);
    let n = df + dg;
    let zero = f.zero_like();
    let mut m: Vec<Vec<SparsePoly>> = vec![vec![zero.clone(); n]; n];
    for i in 0..dg {
        for j in 0..=df {
            m[i][i + j] = a[df - j].clone();
        }
    }
    for i in 0..df {
        for j in 0..=dg {
            m[dg + i][i + j] = b[dg - j].clone();
        }
    }
    Ok(bareiss_det(m, f))
}

fn bareiss_det(mut m: Vec<Vec<SparsePoly>>, like: &SparsePoly) -> SparsePoly {
    let n = m.len();
    let mut prev = like.constant_like(1);
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return like.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss exact division");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
