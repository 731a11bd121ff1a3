//! The free Poisson field `P(x1..xn)`: fractions of free Poisson
//! polynomials with the bracket extended by the quotient formula
//!
//! ```text
//! {a/b, c/d} = ({a,c}bd - {a,d}bc - {b,c}ad + {b,d}ac) / (b^2 d^2)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie_basis::LyndonWord;
use crate::poisson_poly::{gcd, PoissonPoly};
use crate::word::Letter;
use crate::Rational;

/// A normalized fraction: coprime numerator and denominator, the
/// denominator monic in the monomial order, zero stored as `0/1`.
///
/// Because the representative is unique, structural equality is field
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoissonFrac {
    num: PoissonPoly,
    den: PoissonPoly,
}

impl PoissonFrac {
    /// `a / b` in normal form.
    pub fn new(a: PoissonPoly, b: PoissonPoly) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::AlphabetMismatch {
                left: a.n(),
                right: b.n(),
            });
        }
        if b.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(a, b))
    }

    fn normalize(a: PoissonPoly, b: PoissonPoly) -> Self {
        let n = a.n();
        if a.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = b.as_constant() {
            return PoissonFrac {
                num: a.scale(&c.recip()),
                den: PoissonPoly::one(n),
            };
        }
        let g = gcd(&a, &b);
        let (a, b) = if g.is_one() {
            (a, b)
        } else {
            (
                a.div_exact(&g).expect("gcd divides"),
                b.div_exact(&g).expect("gcd divides"),
            )
        };
        Self::with_monic_den(a, b)
    }

    /// Rescales a coprime pair so the denominator is monic.
    fn with_monic_den(a: PoissonPoly, b: PoissonPoly) -> Self {
        let lc = b.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            PoissonFrac { num: a, den: b }
        } else {
            let inv = lc.recip();
            PoissonFrac {
                num: a.scale(&inv),
                den: b.scale(&inv),
            }
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_poly(PoissonPoly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(PoissonPoly::one(n))
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        Self::from_poly(PoissonPoly::constant(c, n))
    }

    pub fn from_poly(p: PoissonPoly) -> Self {
        let n = p.n();
        PoissonFrac {
            num: p,
            den: PoissonPoly::one(n),
        }
    }

    pub fn generator(l: Letter, n: usize) -> Self {
        Self::from_poly(PoissonPoly::generator(l, n))
    }

    pub fn var(w: LyndonWord, n: usize) -> Self {
        Self::from_poly(PoissonPoly::var(w, n))
    }

    pub fn num(&self) -> &PoissonPoly {
        &self.num
    }

    pub fn den(&self) -> &PoissonPoly {
        &self.den
    }

    pub fn n(&self) -> usize {
        self.num.n()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Equality by cross multiplication, independent of normalization.
    pub fn cross_equal(&self, other: &PoissonFrac) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn scale(&self, c: &Rational) -> PoissonFrac {
        if c.is_zero() {
            return Self::zero(self.n());
        }
        PoissonFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_add(&self, other: &PoissonFrac) -> Result<PoissonFrac> {
        if self.n() != other.n() {
            return Err(Error::AlphabetMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return Ok(Self::normalize(&self.num + &other.num, self.den.clone()));
        }
        // with g = gcd(b, d) any common factor of the sum is a factor of g
        let g = gcd(&self.den, &other.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&other.num * &b);
        if num.is_zero() {
            return Ok(Self::zero(self.n()));
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        Ok(Self::with_monic_den(num, &(&b * &d) * &g))
    }

    pub fn checked_mul(&self, other: &PoissonFrac) -> Result<PoissonFrac> {
        if self.n() != other.n() {
            return Err(Error::AlphabetMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.n()));
        }
        // cross cancellation keeps the result coprime without a full gcd
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Ok(Self::with_monic_den(&a * &c, &b * &d))
    }

    pub fn inv(&self) -> Result<PoissonFrac> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &PoissonFrac) -> Result<PoissonFrac> {
        self.checked_mul(&other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<PoissonFrac> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("exponent {k} is too large"),
        })?;
        Ok(PoissonFrac {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// The Poisson bracket `{self, other}`.
    pub fn bracket(&self, other: &PoissonFrac) -> PoissonFrac {
        assert_eq!(self.n(), other.n(), "alphabet size mismatch");
        if self.is_constant() || other.is_constant() {
            return Self::zero(self.n());
        }
        if self.is_polynomial() && other.is_polynomial() {
            return Self::from_poly(self.num.bracket(&other.num));
        }
        if self.is_polynomial() {
            return -&other.bracket(self);
        }
        // {F, c/d} = ({F, c} - {F, d} c/d) / d, cancelling step by step
        let (c, d) = (&other.num, &other.den);
        let fc = self.derivation(self.num.bracket(c), self.den.bracket(c));
        if d.is_one() {
            return fc;
        }
        let fd = self.derivation(self.num.bracket(d), self.den.bracket(d));
        let diff = &fc - &(&fd * other);
        &diff * &Self::with_monic_den(PoissonPoly::one(self.n()), d.clone())
    }

    /// `{x_l, self}`
    pub fn bracket_generator(&self, l: Letter) -> PoissonFrac {
        if self.is_polynomial() {
            return Self::from_poly(self.num.bracket_generator(l));
        }
        self.derivation(self.num.bracket_generator(l), self.den.bracket_generator(l))
    }

    /// `D(a / b)` for a derivation `D`, given `Da` and `Db`. With
    /// `g = gcd(b, Db)` the numerator `Da (b/g) - a (Db/g)` is coprime to
    /// `b/g`, so only `g` has to be cancelled.
    fn derivation(&self, da: PoissonPoly, db: PoissonPoly) -> PoissonFrac {
        if db.is_zero() {
            return Self::normalize(da, self.den.clone());
        }
        let g = gcd(&self.den, &db);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = db.div_exact(&g).expect("gcd divides");
        let num = &(&da * &b) - &(&self.num * &d);
        if num.is_zero() {
            return Self::zero(self.n());
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        Self::with_monic_den(num, &(&b * &b) * &g)
    }

    /// Partial derivative with respect to the variable `e_w`.
    pub fn partial(&self, w: &LyndonWord) -> PoissonFrac {
        self.derivation(self.num.partial(w), self.den.partial(w))
    }

    /// Basis variables occurring in the normalized representative.
    pub fn variables(&self) -> BTreeSet<LyndonWord> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v
    }

    pub fn with_alphabet(&self, n: usize) -> Result<PoissonFrac> {
        Ok(PoissonFrac {
            num: self.num.with_alphabet(n)?,
            den: self.den.with_alphabet(n)?,
        })
    }

    pub(crate) fn fmt_with(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.den.is_one() {
            self.num.fmt_with(f)
        } else {
            f.write_char('(')?;
            self.num.fmt_with(f)?;
            f.write_str(") / (")?;
            self.den.fmt_with(f)?;
            f.write_char(')')
        }
    }
}

impl fmt::Display for PoissonFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl From<PoissonPoly> for PoissonFrac {
    fn from(p: PoissonPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &PoissonFrac {
    type Output = PoissonFrac;
    fn add(self, rhs: &PoissonFrac) -> PoissonFrac {
        self.checked_add(rhs).expect("alphabet size mismatch")
    }
}

impl Sub for &PoissonFrac {
    type Output = PoissonFrac;
    fn sub(self, rhs: &PoissonFrac) -> PoissonFrac {
        self.checked_add(&-rhs).expect("alphabet size mismatch")
    }
}

impl Mul for &PoissonFrac {
    type Output = PoissonFrac;
    fn mul(self, rhs: &PoissonFrac) -> PoissonFrac {
        self.checked_mul(rhs).expect("alphabet size mismatch")
    }
}

impl Neg for &PoissonFrac {
    type Output = PoissonFrac;
    fn neg(self) -> PoissonFrac {
        self.scale(&-Rational::one())
    }
}
