//! The universal enveloping algebra `Q^e` of the free Poisson field
//! `Q = P(x1..xn)`.
//!
//! Every element has a unique canonical form `sum q_w * w` with `q_w` in `Q`
//! written on the left and `w` a word in `h_{x1}, .., h_{xn}`. Products are
//! brought back to this form with the commutation rule
//!
//! ```text
//! h_{x_i} q = q h_{x_i} + {x_i, q}
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::error::{Error, Result};
use crate::lie_basis::expansion;
use crate::poisson_field::PoissonFrac;
use crate::word::{fmt_letters, Letter, Word};
use crate::Rational;

/// An element of `Q^e` in canonical form. Words are the h-words, ordered by
/// length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvElement {
    n: usize,
    terms: BTreeMap<Word, PoissonFrac>,
}

impl EnvElement {
    pub fn zero(n: usize) -> Self {
        EnvElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(PoissonFrac::one(n))
    }

    /// The hdeg-0 element `q * 1`.
    pub fn scalar(q: PoissonFrac) -> Self {
        Self::term(q, Word::empty())
    }

    /// `q * w`
    pub fn term(q: PoissonFrac, w: Word) -> Self {
        let mut out = Self::zero(q.n());
        out.add_term(w, q);
        out
    }

    /// The bare word `w` with coefficient 1.
    pub fn word(w: Word, n: usize) -> Self {
        Self::term(PoissonFrac::one(n), w)
    }

    /// `h_{x_l}`
    pub fn generator(l: Letter, n: usize) -> Self {
        Self::word(Word::letter(l), n)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, PoissonFrac)>, n: usize) -> Self {
        let mut out = Self::zero(n);
        for (w, q) in terms {
            out.add_term(w, q);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &PoissonFrac)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> PoissonFrac {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| PoissonFrac::zero(self.n))
    }

    pub fn add_term(&mut self, w: Word, q: PoissonFrac) {
        assert_eq!(q.n(), self.n, "alphabet size mismatch");
        if q.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &q;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Word length of the leading monomial, `None` standing for the degree
    /// of zero.
    pub fn hdeg(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    /// Leading coefficient and leading monomial.
    pub fn ldt(&self) -> Result<(&PoissonFrac, &Word)> {
        self.terms
            .iter()
            .next_back()
            .map(|(w, q)| (q, w))
            .ok_or(Error::ZeroElement)
    }

    pub fn ldm(&self) -> Result<&Word> {
        self.ldt().map(|(_, w)| w)
    }

    pub fn ldc(&self) -> Result<&PoissonFrac> {
        self.ldt().map(|(q, _)| q)
    }

    /// The terms of top word length, i.e. the image in the associated
    /// graded algebra.
    pub fn leading_part(&self) -> Result<EnvElement> {
        let d = self.hdeg().ok_or(Error::ZeroElement)?;
        let terms = self.terms.iter().filter(|(w, _)| w.len() == d);
        Ok(EnvElement {
            n: self.n,
            terms: terms.map(|(w, q)| (w.clone(), q.clone())).collect(),
        })
    }

    /// Left multiplication by a field element: `q * self`.
    pub fn scale(&self, q: &PoissonFrac) -> EnvElement {
        assert_eq!(q.n(), self.n, "alphabet size mismatch");
        if q.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), q * c));
        EnvElement {
            n: self.n,
            terms: terms.collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> EnvElement {
        Self::from_terms(
            self.terms.iter().map(|(w, q)| (w.clone(), q.scale(c))),
            self.n,
        )
    }

    /// Right multiplication by a word, which never needs straightening.
    pub fn mul_word(&self, w: &Word) -> EnvElement {
        let terms = self.terms.iter().map(|(u, q)| (u.concat(w), q.clone()));
        EnvElement {
            n: self.n,
            terms: terms.collect(),
        }
    }

    pub fn checked_add(&self, other: &EnvElement) -> Result<EnvElement> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (w, q) in &other.terms {
            out.add_term(w.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &EnvElement) -> Result<EnvElement> {
        self.checked_add(&-other)
    }

    /// The associative product in canonical form.
    pub fn checked_mul(&self, other: &EnvElement) -> Result<EnvElement> {
        self.check_alphabet(other)?;
        let mut memo: HashMap<Word, EnvElement> = HashMap::new();
        let mut out = Self::zero(self.n);
        for (w, q) in &self.terms {
            let wv = word_times(w.letters(), other, &mut memo);
            for (s, c) in &wv.terms {
                out.add_term(s.clone(), q * c);
            }
        }
        Ok(out)
    }

    /// `h_{x_l} * self`
    pub fn left_generator(&self, l: Letter) -> EnvElement {
        let mut out = Self::zero(self.n);
        for (w, q) in &self.terms {
            out.add_term(Word::letter(l).concat(w), q.clone());
            out.add_term(w.clone(), q.bracket_generator(l));
        }
        out
    }

    /// The module action on `P(x1..xn, y)` with `y = x_{n+1}`: the term
    /// `q * h_{x_i1}..h_{x_ik}` sends `v` to `q {x_i1, {.., {x_ik, v}..}}`.
    pub fn act(&self, v: &PoissonFrac) -> Result<PoissonFrac> {
        if v.n() != self.n + 1 {
            return Err(Error::AlphabetMismatch {
                left: self.n + 1,
                right: v.n(),
            });
        }
        let mut memo: HashMap<Word, PoissonFrac> = HashMap::new();
        let mut out = PoissonFrac::zero(v.n());
        for (w, q) in &self.terms {
            let inner = nested_bracket(w.letters(), v, &mut memo);
            out = &out + &(&q.with_alphabet(v.n())? * &inner);
        }
        Ok(out)
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_char('0');
        }
        for (i, (w, q)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_char('(')?;
            q.fmt_with(f)?;
            f.write_str(")*h[")?;
            fmt_letters(f, w.letters(), self.n)?;
            f.write_char(']')?;
        }
        Ok(())
    }

    fn check_alphabet(&self, other: &EnvElement) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

/// `w * v` for a bare word `w`, pushing letters in from the right. Results
/// for suffixes of `w` are shared through `memo`.
fn word_times(
    letters: &[Letter],
    v: &EnvElement,
    memo: &mut HashMap<Word, EnvElement>,
) -> EnvElement {
    let Some((&first, rest)) = letters.split_first() else {
        return v.clone();
    };
    let key = Word::from(letters);
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let r = word_times(rest, v, memo).left_generator(first);
    memo.insert(key, r.clone());
    r
}

fn nested_bracket(
    letters: &[Letter],
    v: &PoissonFrac,
    memo: &mut HashMap<Word, PoissonFrac>,
) -> PoissonFrac {
    let Some((&first, rest)) = letters.split_first() else {
        return v.clone();
    };
    let key = Word::from(letters);
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let r = nested_bracket(rest, v, memo).bracket_generator(first);
    memo.insert(key, r.clone());
    r
}

/// The universal derivation: `h_q = sum_w (d q / d e_w) h_{e_w}`, where
/// `h_{e_w}` is the bracketing of `w` evaluated as iterated commutators of
/// the `h_{x_i}`.
pub fn h_of(q: &PoissonFrac) -> EnvElement {
    let n = q.n();
    let mut out = EnvElement::zero(n);
    for w in q.variables() {
        let d = q.partial(&w);
        for (s, c) in expansion(&w).terms() {
            out.add_term(s.clone(), d.scale(c));
        }
    }
    out
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl From<PoissonFrac> for EnvElement {
    fn from(q: PoissonFrac) -> Self {
        Self::scalar(q)
    }
}

impl Add for &EnvElement {
    type Output = EnvElement;
    fn add(self, rhs: &EnvElement) -> EnvElement {
        self.checked_add(rhs).expect("alphabet size mismatch")
    }
}

impl Sub for &EnvElement {
    type Output = EnvElement;
    fn sub(self, rhs: &EnvElement) -> EnvElement {
        self.checked_sub(rhs).expect("alphabet size mismatch")
    }
}

impl Mul for &EnvElement {
    type Output = EnvElement;
    fn mul(self, rhs: &EnvElement) -> EnvElement {
        self.checked_mul(rhs).expect("alphabet size mismatch")
    }
}

impl Neg for &EnvElement {
    type Output = EnvElement;
    fn neg(self) -> EnvElement {
        self.scale_rational(&-Rational::one())
    }
}
