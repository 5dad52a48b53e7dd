//! Fricke trace polynomials on the free group ⟨a, b⟩.
//!
//! Every word `w` has a polynomial `τ_w ∈ ℤ[x, y, z]` with
//! `τ_w(tr A, tr B, tr AB) = tr w(A, B)` for all `A, B ∈ SL₂(ℂ)`.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::mat2core::CMat;
use crate::polyring::{power_trace_poly, SparsePoly};
pub use crate::word::{Letter, Word};

pub const TRACE_VARS: [&str; 3] = ["x", "y", "z"];

/// Traces `x = tr ρ(a)`, `y = tr ρ(b)`, `z = tr ρ(ab)` of an SL₂ lift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrickePoint {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl FrickePoint {
    pub fn new(x: impl Into<Complex64>, y: impl Into<Complex64>, z: impl Into<Complex64>) -> Self {
        FrickePoint { x: x.into(), y: y.into(), z: z.into() }
    }

    pub fn of_pair(a: &CMat, b: &CMat) -> Self {
        FrickePoint { x: a.trace(), y: b.trace(), z: a.mul(b).trace() }
    }
}

/// Memoizing evaluator of trace polynomials, keyed on conjugacy classes up to
/// inversion.
#[derive(Default)]
pub struct TraceCalc {
    memo: HashMap<Word, SparsePoly>,
}

impl TraceCalc {
    pub fn new() -> Self {
        Self::default()
    }

    fn var(g: u8) -> SparsePoly {
        SparsePoly::var(&TRACE_VARS, g as usize)
    }

    /// `τ_w`. Panics if `w` uses a generator other than `a`, `b`.
    pub fn trace_poly(&mut self, w: &Word) -> SparsePoly {
        assert!(w.max_gen().is_none_or(|g| g < 2), "trace polynomials need a two-generator word");
        let key = w.conjugacy_key();
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let p = self.compute(&key);
        self.memo.insert(key, p.clone());
        p
    }

    fn compute(&mut self, w: &Word) -> SparsePoly {
        let l = w.letters();
        if l.is_empty() {
            return SparsePoly::constant(&TRACE_VARS, 2);
        }
        let g0 = l[0].gen;
        if l.iter().all(|x| x.gen == g0) {
            return power_trace_poly(l.len() as i64, &Self::var(g0));
        }
        let n = l.len();
        // tr(g⁻¹U) = tr g · tr U − tr(gU): strictly fewer inverse letters
        if let Some(i) = l.iter().position(|x| x.inv) {
            let r = w.rotate(i);
            let g = r.letters()[0];
            let u = Word::from_letters(r.letters()[1..].iter().copied());
            let gu = Word::from_letters(std::iter::once(g.inverse()).chain(u.letters().iter().copied()));
            return &(&Self::var(g.gen) * &self.trace_poly(&u)) - &self.trace_poly(&gu);
        }
        // all positive; a cyclic square gg gives tr(g·gV) = tr g · tr gV − tr V
        if let Some(i) = (0..n).find(|&i| l[i] == l[(i + 1) % n]) {
            let r = w.rotate(i);
            let g = r.letters()[0];
            let gv = Word::from_letters(r.letters()[1..].iter().copied());
            let v = Word::from_letters(r.letters()[2..].iter().copied());
            return &(&Self::var(g.gen) * &self.trace_poly(&gv)) - &self.trace_poly(&v);
        }
        // positive and alternating: (ab)^k
        power_trace_poly((n / 2) as i64, &Self::var(2))
    }
}

/// `τ_w` with a fresh memo table.
pub fn trace_poly(w: &Word) -> SparsePoly {
    TraceCalc::new().trace_poly(w)
}

/// `p_n(t)` with `tr Aⁿ = p_n(tr A)`, over the single variable `t`.
pub fn power_trace(n: i64) -> SparsePoly {
    power_trace_poly(n, &SparsePoly::var(&["t"], 0))
}

/// `τ_w(pt)² − 4`.
pub fn f_gamma(w: &Word, pt: &FrickePoint) -> Complex64 {
    let t = trace_poly(w).eval_c64(&[pt.x, pt.y, pt.z]);
    t * t - 4.0
}

/// Evaluates a two-generator word on a pair of matrices.
pub fn eval_word(w: &Word, a: &CMat, b: &CMat) -> CMat {
    w.eval(&[a.clone(), b.clone()], &[a.inv(), b.inv()], CMat::identity(), |x, y| x.mul(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(s: &str) -> String {
        trace_poly(&Word::parse(s).unwrap()).to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(tp("a"), "x");
        assert_eq!(tp("ab"), "z");
        assert_eq!(tp(""), "2");
        assert_eq!(tp("abAB"), "-x*y*z + x^2 + y^2 + z^2 - 2");
        assert_eq!(tp("aB"), "x*y - z");
        assert_eq!(power_trace(1).to_string(), "t");
        assert_eq!(power_trace(2).to_string(), "t^2 - 2");
        assert_eq!(power_trace(3).to_string(), "t^3 - 3*t");
        assert_eq!(power_trace(-3), power_trace(3));
        assert_eq!(power_trace(0).to_string(), "2");
    }

    #[test]
    fn f_gamma_examples() {
        let a = Word::parse("a").unwrap();
        assert!(f_gamma(&a, &FrickePoint::new(2.0, 0.3, 0.7)).norm() < 1e-15);
        assert!((f_gamma(&a, &FrickePoint::new(0.0, 0.3, 0.7)) + 4.0).norm() < 1e-15);
        let ab = Word::parse("ab").unwrap();
        assert!((f_gamma(&ab, &FrickePoint::new(2.0, 2.0, 1.0)) + 3.0).norm() < 1e-15);
    }
}
