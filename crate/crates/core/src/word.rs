//! Freely reduced words in a free group on up to 26 generators.
//!
//! Text syntax: generator `k` is the `k`-th lowercase letter, its inverse the
//! uppercase one, so `"abAB"` is the commutator `a b a⁻¹ b⁻¹`.

use std::fmt;

use rand::Rng;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

impl Letter {
    pub const fn new(gen: u8, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    fn to_char(self) -> char {
        let c = (b'a' + self.gen) as char;
        if self.inv {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: u8) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    /// `g^k` for any integer `k`.
    pub fn gen_pow(g: u8, k: i64) -> Self {
        Word(vec![Letter::new(g, k < 0); k.unsigned_abs() as usize])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Parses the letter syntax, freely reducing; whitespace is ignored and
    /// `"1"` is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let mut w = Word::identity();
        if s.trim() == "1" {
            return Ok(w);
        }
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            if !ch.is_ascii_alphabetic() {
                return Err(Error::InvalidInput(format!("invalid letter {ch:?} in word {s:?}")));
            }
            let inv = ch.is_ascii_uppercase();
            let gen = ch.to_ascii_lowercase() as u8 - b'a';
            w.push(Letter::new(gen, inv));
        }
        Ok(w)
    }

    /// Like [`Word::parse`] but restricted to the first `ngens` generators.
    pub fn parse_in(s: &str, ngens: u8) -> Result<Self> {
        let w = Word::parse(s)?;
        if let Some(l) = w.0.iter().find(|l| l.gen >= ngens) {
            return Err(Error::InvalidInput(format!(
                "letter {} outside the {ngens} available generators",
                l.to_char()
            )));
        }
        Ok(w)
    }

    fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `u w u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inverse())
    }

    pub fn exponent_sum(&self, gen: u8) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exponent()).sum()
    }

    pub fn total_exponent(&self) -> i64 {
        self.0.iter().map(|l| l.exponent()).sum()
    }

    pub fn max_gen(&self) -> Option<u8> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Strips cancelling first/last letter pairs.
    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0, s.len());
        while j >= i + 2 && s[i] == s[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    /// Representative of the class of `w` under conjugation and inversion:
    /// the least rotation of the cyclic reduction of `w` or of `w⁻¹`.
    pub fn conjugacy_key(&self) -> Word {
        let c = self.cyclically_reduced();
        let ci = c.inverse();
        (0..c.len().max(1)).flat_map(|k| [c.rotate(k), ci.rotate(k)]).min().unwrap_or_default()
    }

    /// Evaluates the word in a group given generator images, their inverses,
    /// the identity and the multiplication.
    pub fn eval<T: Clone>(&self, gens: &[T], invs: &[T], id: T, mul: impl Fn(&T, &T) -> T) -> T {
        self.0.iter().fold(id, |acc, l| {
            let g = if l.inv { &invs[l.gen as usize] } else { &gens[l.gen as usize] };
            mul(&acc, g)
        })
    }

    /// Uniform random freely reduced word of length exactly `len`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, ngens: u8, len: usize) -> Word {
        let mut v: Vec<Letter> = Vec::with_capacity(len);
        while v.len() < len {
            let l = Letter::new(rng.gen_range(0..ngens), rng.gen_bool(0.5));
            if v.last() != Some(&l.inverse()) {
                v.push(l);
            }
        }
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl std::str::FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduce_display() {
        assert_eq!(Word::parse("abBA").unwrap(), Word::identity());
        assert_eq!(Word::parse("aAb b").unwrap().to_string(), "bb");
        assert_eq!(Word::identity().to_string(), "1");
        assert!(Word::parse("ab1").is_err());
        assert!(Word::parse_in("abc", 2).is_err());
        let w = Word::parse("abAB").unwrap();
        assert_eq!(w.inverse().to_string(), "baBA");
        assert_eq!(w.exponent_sum(0), 0);
    }

    #[test]
    fn cyclic_forms() {
        let w = Word::parse("bAabaB").unwrap();
        assert_eq!(w.to_string(), "bbaB");
        assert_eq!(w.cyclically_reduced().to_string(), "ba");
        assert_eq!(Word::parse("ab").unwrap().conjugacy_key(), Word::parse("BA").unwrap().conjugacy_key());
        assert_eq!(Word::parse("aab").unwrap().conjugacy_key(), Word::parse("aba").unwrap().conjugacy_key());
    }
}
