//! The free Poisson algebra `P<x1..xn>`, realized as the commutative
//! polynomial ring on the Lyndon basis variables `e_w` with the bracket
//! `{e_u, e_v} = [e_u, e_v]` extended as a biderivation.

pub mod gcd;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie_basis::{bracket_basis, LieElement, LyndonWord};
use crate::word::Letter;
use crate::Rational;

pub use gcd::gcd;

/// A product of basis variables `e_w^k`, with factors kept in ascending
/// variable order.
///
/// Monomials are ordered by Poisson degree first, then lexicographically on
/// exponent vectors, with earlier variables (`x1` first) weighing more.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: usize,
    factors: Vec<(LyndonWord, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(w: LyndonWord) -> Self {
        Self::power(w, 1)
    }

    pub fn power(w: LyndonWord, k: u32) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            degree: w.degree() * k as usize,
            factors: vec![(w, k)],
        }
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs.
    pub fn from_factors(pairs: impl IntoIterator<Item = (LyndonWord, u32)>) -> Self {
        let mut map: BTreeMap<LyndonWord, u32> = BTreeMap::new();
        for (w, k) in pairs {
            *map.entry(w).or_default() += k;
        }
        let factors: Vec<_> = map.into_iter().filter(|(_, k)| *k > 0).collect();
        let degree = factors.iter().map(|(w, k)| w.degree() * *k as usize).sum();
        Monomial { degree, factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Poisson degree: sum of exponent times word length.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factors(&self) -> &[(LyndonWord, u32)] {
        &self.factors
    }

    pub fn exponent(&self, w: &LyndonWord) -> u32 {
        self.factors
            .binary_search_by(|(v, _)| v.cmp(w))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn multidegree(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for (w, k) in &self.factors {
            for (i, c) in w.multidegree(n).into_iter().enumerate() {
                d[i] += c * *k as usize;
            }
        }
        d
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ka) = &self.factors[i];
            let (b, kb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => {
                    factors.push((a.clone(), *ka));
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push((b.clone(), *kb));
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((a.clone(), ka + kb));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut factors = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (a, ka) in &self.factors {
            if j < other.factors.len() && &other.factors[j].0 == a {
                let kb = other.factors[j].1;
                j += 1;
                match ka.cmp(&kb) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => factors.push((a.clone(), ka - kb)),
                }
            } else if j < other.factors.len() && &other.factors[j].0 < a {
                return None;
            } else {
                factors.push((a.clone(), *ka));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            factors,
        })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(
            self.factors
                .iter()
                .map(|(w, k)| (w.clone(), (*k).min(other.exponent(w)))),
        )
    }

    /// Splits into the part in the variables `vars` and the rest.
    pub(crate) fn partition(&self, vars: &BTreeSet<LyndonWord>) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) = self
            .factors
            .iter()
            .cloned()
            .partition(|(w, _)| vars.contains(w));
        let deg = |f: &[(LyndonWord, u32)]| f.iter().map(|(w, k)| w.degree() * *k as usize).sum();
        (
            Monomial {
                degree: deg(&inside),
                factors: inside,
            },
            Monomial {
                degree: deg(&outside),
                factors: outside,
            },
        )
    }

    /// Removes the variable `w`, returning its exponent and the cofactor.
    fn split_off(&self, w: &LyndonWord) -> (u32, Monomial) {
        match self.factors.binary_search_by(|(v, _)| v.cmp(w)) {
            Err(_) => (0, self.clone()),
            Ok(i) => {
                let k = self.factors[i].1;
                let mut factors = self.factors.clone();
                factors.remove(i);
                (
                    k,
                    Monomial {
                        degree: self.degree - w.degree() * k as usize,
                        factors,
                    },
                )
            }
        }
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write, n: usize) -> fmt::Result {
        if self.is_one() {
            return f.write_char('1');
        }
        // longer words first, lexicographic within a degree
        let mut factors: Vec<_> = self.factors.iter().collect();
        factors.sort_by(|(a, _), (b, _)| {
            b.degree()
                .cmp(&a.degree())
                .then_with(|| a.letters().cmp(b.letters()))
        });
        for (i, (w, k)) in factors.into_iter().enumerate() {
            if i > 0 {
                f.write_char('*')?;
            }
            fmt_variable(f, w, n)?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn fmt_variable(f: &mut impl fmt::Write, w: &LyndonWord, n: usize) -> fmt::Result {
    if w.is_generator() {
        write!(f, "x{}", w.letters()[0])
    } else {
        write!(f, "e[{}]", w.display(n))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let mut a = self.factors.iter();
            let mut b = other.factors.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ka)), Some((vb, kb))) => {
                        if va != vb {
                            // the monomial holding the earlier variable is larger
                            return vb.cmp(va);
                        }
                        if ka != kb {
                            return ka.cmp(kb);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free Poisson algebra `P<x1..xn>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoissonPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

fn check_alphabet(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { left: a, right: b })
    }
}

impl PoissonPoly {
    pub fn zero(n: usize) -> Self {
        PoissonPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Rational::one(), n)
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        Self::term(c, Monomial::one(), n)
    }

    pub fn term(c: Rational, m: Monomial, n: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(m, c);
        p
    }

    /// The basis variable `e_w`.
    pub fn var(w: LyndonWord, n: usize) -> Self {
        debug_assert!(w.max_letter() as usize <= n);
        Self::term(Rational::one(), Monomial::var(w), n)
    }

    /// The generator `x_l`.
    pub fn generator(l: Letter, n: usize) -> Self {
        Self::var(LyndonWord::letter(l), n)
    }

    /// A linear Lie element viewed as a Poisson polynomial.
    pub fn from_lie(e: &LieElement, n: usize) -> Self {
        let mut p = Self::zero(n);
        for (w, c) in e.terms() {
            p.add_term(Monomial::var(w.clone()), c.clone());
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>, n: usize) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    /// `self += c * m * other`
    pub fn add_scaled_shifted(&mut self, other: &PoissonPoly, c: &Rational, m: &Monomial) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> PoissonPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        PoissonPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> PoissonPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn checked_add(&self, other: &PoissonPoly) -> Result<PoissonPoly> {
        check_alphabet(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PoissonPoly) -> Result<PoissonPoly> {
        check_alphabet(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &PoissonPoly) -> Result<PoissonPoly> {
        check_alphabet(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (m, c) in &other.terms {
            out.add_scaled_shifted(self, c, m);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> PoissonPoly {
        let mut out = Self::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Poisson degree; `None` stands for the degree of zero, minus infinity.
    pub fn degree(&self) -> Option<usize> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// `deg_{x_i}` for every `i`; `None` for zero.
    pub fn multidegree(&self) -> Option<Vec<usize>> {
        if self.is_zero() {
            return None;
        }
        let mut d = vec![0; self.n];
        for m in self.terms.keys() {
            for (i, c) in m.multidegree(self.n).into_iter().enumerate() {
                d[i] = d[i].max(c);
            }
        }
        Some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// The basis variables that occur.
    pub fn variables(&self) -> BTreeSet<LyndonWord> {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(w, _)| w.clone()))
            .collect()
    }

    pub fn degree_in(&self, w: &LyndonWord) -> u32 {
        self.terms.keys().map(|m| m.exponent(w)).max().unwrap_or(0)
    }

    /// Partial derivative with respect to the variable `e_w`.
    pub fn partial(&self, w: &LyndonWord) -> PoissonPoly {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let (k, rest) = m.split_off(w);
            if k == 0 {
                continue;
            }
            let m = rest.mul(&Monomial::power(w.clone(), k - 1));
            out.add_term(m, c * Rational::from_integer(k.into()));
        }
        out
    }

    /// Coefficients with respect to one variable: `self = sum c_k e_w^k`.
    pub fn coefficients_in(&self, w: &LyndonWord) -> BTreeMap<u32, PoissonPoly> {
        let mut out: BTreeMap<u32, PoissonPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (k, rest) = m.split_off(w);
            out.entry(k)
                .or_insert_with(|| Self::zero(self.n))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &PoissonPoly) -> Option<PoissonPoly> {
        let (dm, dc) = d.leading_term().expect("division by the zero polynomial");
        if d.len() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(dm)?, c / dc);
            }
            return Some(PoissonPoly { n: self.n, terms });
        }
        let mut rest = self.clone();
        let mut q = Self::zero(self.n);
        while let Some((m, c)) = rest.leading_term() {
            let qm = m.div(dm)?;
            let qc = c / dc;
            rest.add_scaled_shifted(d, &-qc.clone(), &qm);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// The Poisson bracket `{self, other}`.
    pub fn bracket(&self, other: &PoissonPoly) -> PoissonPoly {
        assert_eq!(self.n, other.n, "alphabet size mismatch");
        let mut out = Self::zero(self.n);
        if self.is_constant() || other.is_constant() {
            return out;
        }
        let right: Vec<(LyndonWord, PoissonPoly)> = other
            .variables()
            .into_iter()
            .map(|w| {
                let d = other.partial(&w);
                (w, d)
            })
            .collect();
        for v in self.variables() {
            // sum_w d(other)/d(e_w) * [e_v, e_w]
            let mut inner = Self::zero(self.n);
            for (w, dw) in &right {
                let b = bracket_basis(&v, w);
                for (u, c) in b.terms() {
                    inner.add_scaled_shifted(dw, c, &Monomial::var(u.clone()));
                }
            }
            if !inner.is_zero() {
                out = &out + &(&self.partial(&v) * &inner);
            }
        }
        out
    }

    /// `{x_l, self}`
    pub fn bracket_generator(&self, l: Letter) -> PoissonPoly {
        let x = LyndonWord::letter(l);
        let mut out = Self::zero(self.n);
        for w in self.variables() {
            let d = self.partial(&w);
            for (u, c) in bracket_basis(&x, &w).terms() {
                out.add_scaled_shifted(&d, c, &Monomial::var(u.clone()));
            }
        }
        out
    }

    /// Reinterprets the polynomial over a different alphabet size.
    pub fn with_alphabet(&self, n: usize) -> Result<PoissonPoly> {
        for w in self.variables() {
            if w.max_letter() as usize > n {
                return Err(Error::LetterOutOfRange {
                    letter: w.max_letter() as usize,
                    n,
                });
            }
        }
        Ok(PoissonPoly {
            n,
            terms: self.terms.clone(),
        })
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.is_zero() {
            return f.write_char('0');
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_char('-')?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(f, self.n)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PoissonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl Add for &PoissonPoly {
    type Output = PoissonPoly;
    fn add(self, rhs: &PoissonPoly) -> PoissonPoly {
        self.checked_add(rhs).expect("alphabet size mismatch")
    }
}

impl Sub for &PoissonPoly {
    type Output = PoissonPoly;
    fn sub(self, rhs: &PoissonPoly) -> PoissonPoly {
        self.checked_sub(rhs).expect("alphabet size mismatch")
    }
}

impl Mul for &PoissonPoly {
    type Output = PoissonPoly;
    fn mul(self, rhs: &PoissonPoly) -> PoissonPoly {
        self.checked_mul(rhs).expect("alphabet size mismatch")
    }
}

impl Neg for &PoissonPoly {
    type Output = PoissonPoly;
    fn neg(self) -> PoissonPoly {
        self.scale(&-Rational::one())
    }
}
