//! Words over the alphabet `1..=n` and noncommutative polynomials on them.
//!
//! [`Word`] is used both for monomials of the free associative algebra on
//! `x1..xn` and for the h-words `h_{x_i1} .. h_{x_ik}` of the enveloping
//! algebra; in both roles words are ordered by length first, then
//! lexicographically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Index of a generator, starting at 1.
pub type Letter = u16;

/// Writes letters as a digit string when `n <= 9`, comma separated otherwise.
pub(crate) fn fmt_letters(f: &mut impl fmt::Write, letters: &[Letter], n: usize) -> fmt::Result {
    if n <= 9 {
        for l in letters {
            write!(f, "{l}")?;
        }
    } else {
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{l}")?;
        }
    }
    Ok(())
}

/// Inverse of [`fmt_letters`]. A string containing a comma is always read in
/// the comma-separated form.
pub(crate) fn parse_letters(s: &str, n: usize) -> Result<Vec<Letter>> {
    let bad = |msg: String| Error::Parse { pos: 0, msg };
    let parts: Vec<&str> = if s.contains(',') || n > 9 {
        s.split(',').map(str::trim).collect()
    } else {
        s.trim().split("").filter(|p| !p.is_empty()).collect()
    };
    let mut letters = Vec::with_capacity(parts.len());
    for p in parts {
        if p.is_empty() {
            continue;
        }
        let l: usize = p
            .parse()
            .map_err(|_| bad(format!("invalid letter '{p}'")))?;
        if l == 0 || l > n {
            return Err(Error::LetterOutOfRange { letter: l, n });
        }
        letters.push(l as Letter);
    }
    Ok(letters)
}

/// A possibly empty word, ordered by (length, lexicographic).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
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

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// If `suffix` is a suffix of `self`, returns the remaining prefix.
    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.0
            .strip_suffix(suffix.0.as_slice())
            .map(|p| Word(p.to_vec()))
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    pub fn display(&self, n: usize) -> String {
        let mut s = String::new();
        fmt_letters(&mut s, &self.0, n).expect("writing to a String");
        s
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

/// Element of the free associative algebra `Q<x1..xn>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), Rational::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::monomial(Word::letter(l), Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest word with a nonzero coefficient.
    pub fn min_term(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &NcPoly, c: &Rational) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        &(self * other) - &(other * self)
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}
