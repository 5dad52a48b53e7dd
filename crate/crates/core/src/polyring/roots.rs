//! Univariate complex root finding.
//!
//! Integer polynomials are first split exactly into square-free factors
//! (Yun), so the floating-point stage only ever sees simple roots. Each
//! factor is solved by Aberth–Ehrlich simultaneous iteration and the result
//! is cross-checked against companion-matrix eigenvalues.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, Zero};

use super::gcd::poly_gcd;
use super::sparse::{big_to_f64, SparsePoly};
use crate::{Error, Result};

/// Radius below which two numerically computed roots count as one.
pub const ROOT_CLUSTER_RADIUS: f64 = 1e-6;

const MAX_ITER: usize = 800;

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Square-free decomposition `f = c · ∏ aᵢ^i` of a univariate polynomial in
/// `var`, returned as the nonconstant `(aᵢ, i)`.
pub fn squarefree_decomposition(f: &SparsePoly, var: usize) -> Vec<(SparsePoly, usize)> {
    let mut out = Vec::new();
    if f.is_zero() || !f.involves(var) {
        return out;
    }
    let df = f.derivative(var);
    let a0 = poly_gcd(f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative(var);
    let mut i = 1;
    while b.involves(var) {
        let a = poly_gcd(&b, &d);
        let nb = b.div_exact(&a).expect("Yun step");
        let c = d.div_exact(&a).expect("Yun step");
        d = &c - &nb.derivative(var);
        if a.involves(var) {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

fn univariate(f: &SparsePoly) -> Result<(usize, Vec<f64>)> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial has no finite root set".into()));
    }
    let sup = f.support_vars();
    match sup.as_slice() {
        [] => Err(Error::InvalidInput("constant polynomial has no roots".into())),
        [v] => {
            let c = f.univariate_coeffs(*v).unwrap();
            Ok((*v, c.iter().map(big_to_f64).collect()))
        }
        _ => Err(Error::InvalidInput(format!("expected a univariate polynomial, got {f}"))),
    }
}

/// All complex roots of a univariate integer polynomial, each listed once
/// with its multiplicity.
pub fn complex_roots_with_multiplicity(f: &SparsePoly) -> Result<Vec<Root>> {
    let (var, _) = univariate(f)?;
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(f, var) {
        let (v, c) = univariate(&factor)?;
        let exact = factor.univariate_coeffs(v).unwrap();
        let roots = simple_roots_checked(&c, &exact)?;
        out.extend(roots.into_iter().map(|value| Root { value, multiplicity: mult }));
    }
    sort_roots(&mut out, |r| r.value);
    Ok(out)
}

/// All complex roots as a multiset (repeated according to multiplicity).
pub fn complex_roots(f: &SparsePoly) -> Result<Vec<Complex64>> {
    Ok(complex_roots_with_multiplicity(f)?
        .into_iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect())
}

/// Number of clusters of radius `radius` among `roots`.
pub fn distinct_count(roots: &[Complex64], radius: f64) -> usize {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

fn sort_roots<T>(v: &mut [T], key: impl Fn(&T) -> Complex64) {
    v.sort_by(|a, b| {
        let (a, b) = (key(a), key(b));
        a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
    });
}

fn simple_roots_checked(c: &[f64], exact: &[BigInt]) -> Result<Vec<Complex64>> {
    let cc: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut roots = roots_of_coeffs(&cc)?;
    let dc: Vec<Complex64> = (1..cc.len()).map(|k| cc[k] * k as f64).collect();
    for r in roots.iter_mut() {
        polish_exact(exact, &dc, r);
    }
    // backward error of each root, with the residual computed exactly
    for r in &roots {
        let p = eval_exact(exact, *r).norm();
        let size: f64 = c.iter().enumerate().map(|(k, a)| a.abs() * r.norm().powi(k as i32)).sum();
        if p > 1e-12 * size {
            return Err(Error::Numerical(format!("root {r} has residual {p:e}")));
        }
    }
    if distinct_count(&roots, 1e-13 * (1.0 + cauchy_bound(&cc))) != roots.len() {
        return Err(Error::Numerical("root iteration converged to a repeated value".into()));
    }
    // independent cross-check; the plain and the rescaled (z/ρ) companion
    // matrices are accurate in different regimes, so accept either
    let rho = cauchy_bound(&cc);
    let scaled: Vec<f64> = c.iter().enumerate().map(|(k, a)| a * rho.powi(k as i32)).collect();
    let mut eig = companion_eigenvalues(c);
    eig.extend(companion_eigenvalues(&scaled).into_iter().map(|e| e * rho));
    for r in &roots {
        let scale = 1.0 + r.norm();
        let near = eig.iter().map(|e| (e - r).norm()).fold(f64::INFINITY, f64::min);
        if near > 1e-4 * scale {
            return Err(Error::Numerical(format!("root {r} not confirmed by companion eigenvalues (gap {near:e})")));
        }
    }
    Ok(roots)
}

/// Newton steps with the residual evaluated exactly: `z` is a dyadic
/// rational, so `p(z)` can be formed in big integers and rounded once.
fn polish_exact(c: &[BigInt], dc: &[Complex64], z: &mut Complex64) {
    for _ in 0..4 {
        let p = eval_exact(c, *z);
        if p == Complex64::new(0.0, 0.0) {
            return;
        }
        let mut dp = Complex64::new(0.0, 0.0);
        for a in dc.iter().rev() {
            dp = dp * *z + a;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            return;
        }
        *z -= step;
        if step.norm() <= 1e-17 * z.norm() {
            return;
        }
    }
}

/// `(m, e)` with `x = m · 2^e` exactly.
fn dyadic(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let (mant, exp, sign) = Float::integer_decode(x);
    (BigInt::from(mant) * sign, exp as i64)
}

/// `num · 2^-shift` rounded to f64, without intermediate overflow.
fn scaled_to_f64(num: &BigInt, shift: i64) -> f64 {
    let bits = num.bits() as i64;
    let drop = (bits - 60).max(0);
    let m = big_to_f64(&(num >> drop as usize));
    let mut e = drop - shift;
    let mut out = m;
    while e > 0 {
        let k = e.min(1000);
        out *= 2f64.powi(k as i32);
        e -= k;
    }
    while e < 0 {
        let k = (-e).min(1000);
        out /= 2f64.powi(k as i32);
        e += k;
    }
    out
}

fn eval_exact(c: &[BigInt], z: Complex64) -> Complex64 {
    let (mut re, ere) = dyadic(z.re);
    let (mut im, eim) = dyadic(z.im);
    // z = (re + i·im) / 2^s
    let s = (-ere).max(-eim).max(0);
    re <<= (ere + s) as usize;
    im <<= (eim + s) as usize;
    let n = c.len() - 1;
    let (mut ar, mut ai) = (c[n].clone(), BigInt::zero());
    for k in (0..n).rev() {
        let nr = &ar * &re - &ai * &im;
        let ni = &ar * &im + &ai * &re;
        ar = nr + (&c[k] << ((s * (n - k) as i64) as usize));
        ai = ni;
    }
    let shift = s * n as i64;
    Complex64::new(scaled_to_f64(&ar, shift), scaled_to_f64(&ai, shift))
}

/// Eigenvalues of the companion matrix of a real polynomial (ascending
/// coefficients, nonzero leading coefficient).
pub fn companion_eigenvalues(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Roots of a polynomial with complex coefficients (ascending; trailing
/// zeros are trimmed). Roots are simple-root accurate; repeated roots are
/// returned with reduced accuracy.
pub fn roots_of_coeffs(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = c.to_vec();
    while c.last().is_some_and(|x| *x == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::InvalidInput("polynomial of degree < 1".into()));
    }
    // zero roots are exact
    let zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    let c = &c[zeros..];
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if c.len() > 1 {
        out.extend(aberth(c));
    }
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("root iteration diverged".into()));
    }
    sort_roots(&mut out, |z| *z);
    Ok(out)
}

/// Positive root of `|aₙ| rⁿ = Σ_{i<n} |aᵢ| rⁱ`: every root lies within it.
fn cauchy_bound(c: &[Complex64]) -> f64 {
    let n = c.len() - 1;
    let a: Vec<f64> = c.iter().map(|x| x.norm()).collect();
    let g = |r: f64| a[n] * r.powi(n as i32) - (0..n).map(|i| a[i] * r.powi(i as i32)).sum::<f64>();
    let (mut lo, mut hi) = (0.0, 1.0);
    while g(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Newton correction `p(z)/p'(z)`, evaluated through the reversed polynomial
/// outside the unit disk to avoid overflow.
fn newton_ratio(c: &[Complex64], z: Complex64) -> Complex64 {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (c[n], Complex64::new(0.0, 0.0));
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        p / dp
    } else {
        let w = z.inv();
        let (mut q, mut dq) = (c[0], Complex64::new(0.0, 0.0));
        for &ck in &c[1..=n] {
            dq = dq * w + q;
            q = q * w + ck;
        }
        // p'/p = n/z − w² q'(w)/q(w)
        let lp = (n as f64) * w - w * w * dq / q;
        lp.inv()
    }
}

fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 1 {
        return vec![-c[0] / c[1]];
    }
    let r = cauchy_bound(c);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r * (1.0 + 0.01 * (k % 3) as f64) / 1.03, th)
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut moved = false;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let ratio = newton_ratio(c, z[k]);
            if !ratio.re.is_finite() || !ratio.im.is_finite() {
                done[k] = true;
                continue;
            }
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            if w.norm() <= 1e-15 * (1.0 + z[k].norm()) {
                done[k] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let d = newton_ratio(c, *zk);
            if d.re.is_finite() && d.im.is_finite() {
                *zk -= d;
            }
        }
    }
    z
}
