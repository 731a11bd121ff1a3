//! The Lyndon basis of the free Lie algebra `Lie<x1..xn>`.
//!
//! A Lyndon word `w` stands for the basis element `e_w` obtained by
//! bracketing `w` along its standard factorization, e.g.
//! `e_112 = [x1, [x1, x2]]`. Basis elements are totally ordered by
//! (degree, lexicographic); this is the global order on the variables of
//! the free Poisson algebra.
//!
//! Structure constants `[e_u, e_v]` are computed by expanding both sides in
//! the free associative algebra and converting the commutator back by
//! triangular elimination: the expansion of `e_w` is `w` plus
//! lexicographically larger words of the same length.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::{fmt_letters, parse_letters, Letter, NcPoly, Word};
use crate::Rational;

/// Tests the Lyndon property: nonempty and strictly smaller than every
/// proper suffix.
pub fn is_lyndon(letters: &[Letter]) -> bool {
    !letters.is_empty() && (1..letters.len()).all(|i| letters < &letters[i..])
}

/// Index of a Lyndon basis element `e_w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LyndonWord(Arc<[Letter]>);

impl LyndonWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::LetterOutOfRange { letter: 0, n: 0 });
        }
        if !is_lyndon(&letters) {
            let max = letters.iter().copied().max().unwrap_or(0) as usize;
            let mut s = String::new();
            fmt_letters(&mut s, &letters, max).expect("writing to a String");
            return Err(Error::NotLyndon(s));
        }
        Ok(LyndonWord(letters.into()))
    }

    /// Like [`LyndonWord::new`] but also checks that every letter is `<= n`.
    pub fn with_alphabet(letters: Vec<Letter>, n: usize) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l as usize > n) {
            return Err(Error::LetterOutOfRange {
                letter: l as usize,
                n,
            });
        }
        if !is_lyndon(&letters) {
            let mut s = String::new();
            fmt_letters(&mut s, &letters, n).expect("writing to a String");
            return Err(Error::NotLyndon(s));
        }
        Ok(LyndonWord(letters.into()))
    }

    /// Parses `"112"` (or `"1,10"` for alphabets larger than 9).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Self::with_alphabet(parse_letters(s, n)?, n)
    }

    /// The generator `x_l`.
    pub fn letter(l: Letter) -> Self {
        assert!(l >= 1, "letters start at 1");
        LyndonWord(vec![l].into())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_generator(&self) -> bool {
        self.0.len() == 1
    }

    pub fn max_letter(&self) -> Letter {
        *self.0.iter().max().expect("Lyndon words are nonempty")
    }

    /// Number of occurrences of each letter `1..=n`.
    pub fn multidegree(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for &l in self.0.iter() {
            d[l as usize - 1] += 1;
        }
        d
    }

    pub fn as_word(&self) -> Word {
        Word::from(&self.0[..])
    }

    pub fn display(&self, n: usize) -> String {
        let mut s = String::new();
        fmt_letters(&mut s, &self.0, n).expect("writing to a String");
        s
    }
}

impl Ord for LyndonWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LyndonWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{}]", self.display(self.max_letter() as usize))
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(self.max_letter() as usize))
    }
}

/// All Lyndon words of length `<= maxdeg` over `1..=n`, sorted by
/// (degree, lexicographic).
pub fn lyndon_basis(n: usize, maxdeg: usize) -> Vec<LyndonWord> {
    assert!(
        n >= 1 && maxdeg >= 1,
        "alphabet and degree bound must be positive"
    );
    let top = n as Letter;
    let mut out = Vec::new();
    // Duval's generation algorithm, producing words in lexicographic order.
    let mut w: Vec<Letter> = vec![1];
    loop {
        out.push(LyndonWord(w.clone().into()));
        let period = w.len();
        while w.len() < maxdeg {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out.sort();
    out
}

/// Splits `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &LyndonWord) -> Result<(LyndonWord, LyndonWord)> {
    let letters = w.letters();
    if letters.len() < 2 {
        return Err(Error::SingleLetter);
    }
    let split = (1..letters.len())
        .find(|&i| is_lyndon(&letters[i..]))
        .expect("the last letter is always a Lyndon suffix");
    Ok((
        LyndonWord(letters[..split].into()),
        LyndonWord(letters[split..].into()),
    ))
}

/// Element of the free Lie algebra in the Lyndon basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<LyndonWord, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn basis(w: LyndonWord) -> Self {
        let mut e = LieElement::zero();
        e.add_term(w, Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &LyndonWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: LyndonWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, c: &Rational) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Expansion in the free associative algebra.
    pub fn assoc_expand(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&expansion(w), c);
        }
        out
    }

    /// The Lie bracket, extended bilinearly from the structure constants.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        lie_bracket(self, other)
    }
}

type ExpansionCache = RwLock<HashMap<LyndonWord, Arc<NcPoly>>>;
type BracketCache = RwLock<HashMap<(LyndonWord, LyndonWord), Arc<LieElement>>>;

fn expansion_cache() -> &'static ExpansionCache {
    static CACHE: OnceLock<ExpansionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn bracket_cache() -> &'static BracketCache {
    static CACHE: OnceLock<BracketCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The iterated commutator of `e_w` in the free associative algebra.
pub fn expansion(w: &LyndonWord) -> Arc<NcPoly> {
    if let Some(p) = expansion_cache().read().expect("cache lock").get(w) {
        return p.clone();
    }
    let p = match standard_factorization(w) {
        Err(_) => NcPoly::letter(w.letters()[0]),
        Ok((u, v)) => expansion(&u).commutator(&expansion(&v)),
    };
    let p = Arc::new(p);
    expansion_cache()
        .write()
        .expect("cache lock")
        .entry(w.clone())
        .or_insert(p)
        .clone()
}

/// Converts a Lie polynomial given in the free associative algebra to the
/// Lyndon basis.
pub fn to_lyndon(p: &NcPoly) -> Result<LieElement> {
    let mut rest = p.clone();
    let mut out = LieElement::zero();
    while let Some((w, c)) = rest.min_term() {
        let lw = LyndonWord::new(w.letters().to_vec()).map_err(|_| {
            let n = w.max_letter().unwrap_or(0) as usize;
            Error::NotLie(w.display(n))
        })?;
        let c = c.clone();
        rest.add_scaled(&expansion(&lw), &-c.clone());
        out.add_term(lw, c);
    }
    Ok(out)
}

/// `[e_u, e_v]` in the Lyndon basis (cached).
pub fn bracket_basis(u: &LyndonWord, v: &LyndonWord) -> Arc<LieElement> {
    match u.cmp(v) {
        Ordering::Equal => return Arc::new(LieElement::zero()),
        Ordering::Greater => return Arc::new(bracket_basis(v, u).scale(&-Rational::one())),
        Ordering::Less => {}
    }
    let key = (u.clone(), v.clone());
    if let Some(b) = bracket_cache().read().expect("cache lock").get(&key) {
        return b.clone();
    }
    let mut joined = u.letters().to_vec();
    joined.extend_from_slice(v.letters());
    let direct = if is_lyndon(&joined) {
        let uv = LyndonWord(joined.into());
        match standard_factorization(&uv) {
            Ok((a, b)) if &a == u && &b == v => Some(LieElement::basis(uv)),
            _ => None,
        }
    } else {
        None
    };
    let b = direct.unwrap_or_else(|| {
        let c = expansion(u).commutator(&expansion(v));
        to_lyndon(&c).expect("the commutator of Lie polynomials is a Lie polynomial")
    });
    let b = Arc::new(b);
    bracket_cache()
        .write()
        .expect("cache lock")
        .entry(key)
        .or_insert(b)
        .clone()
}

pub fn lie_bracket(u: &LieElement, v: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (a, c) in u.terms() {
        for (b, d) in v.terms() {
            out.add_scaled(&bracket_basis(a, b), &(c * d));
        }
    }
    out
}
