//! Seeded random generators shared by the integration tests.

#![allow(dead_code)]

use freepoisson::lie_basis::lyndon_basis;
use freepoisson::{
    EnvElement, Letter, LyndonWord, Monomial, PoissonFrac, PoissonPoly, Rational, Word,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Lyndon variables of degree at most `d`.
    pub fn vars(n: usize, d: usize) -> Vec<LyndonWord> {
        lyndon_basis(n, d)
    }

    /// The generators `x1..xn` only.
    pub fn generators(n: usize) -> Vec<LyndonWord> {
        (1..=n as Letter).map(LyndonWord::letter).collect()
    }

    /// A nonzero small rational, mostly an integer.
    pub fn coeff(&mut self) -> Rational {
        let mut k: i64 = self.rng.gen_range(1..=4);
        if self.rng.gen_bool(0.5) {
            k = -k;
        }
        let d: i64 = if self.rng.gen_bool(0.2) { 2 } else { 1 };
        Rational::new(k.into(), d.into())
    }

    /// A monomial of degree at most `maxdeg` in at most two of `vars`.
    pub fn monomial(&mut self, maxdeg: usize, vars: &[LyndonWord]) -> Monomial {
        let mut budget = self.rng.gen_range(0..=maxdeg);
        let mut factors = Vec::new();
        for _ in 0..2 {
            let fits: Vec<&LyndonWord> = vars.iter().filter(|w| w.degree() <= budget).collect();
            let Some(w) = fits.choose(&mut self.rng) else {
                break;
            };
            let e = self.rng.gen_range(1..=budget / w.degree());
            budget -= e * w.degree();
            factors.push(((*w).clone(), e as u32));
        }
        Monomial::from_factors(factors)
    }

    pub fn poly(
        &mut self,
        n: usize,
        maxdeg: usize,
        max_terms: usize,
        vars: &[LyndonWord],
    ) -> PoissonPoly {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut p = PoissonPoly::zero(n);
        for _ in 0..terms {
            let m = self.monomial(maxdeg, vars);
            let c = self.coeff();
            p.add_term(m, c);
        }
        p
    }

    pub fn nonzero_poly(
        &mut self,
        n: usize,
        maxdeg: usize,
        max_terms: usize,
        vars: &[LyndonWord],
    ) -> PoissonPoly {
        loop {
            let p = self.poly(n, maxdeg, max_terms, vars);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A fraction whose numerator and denominator have degree at most
    /// `numdeg` and `dendeg`.
    pub fn frac(
        &mut self,
        n: usize,
        numdeg: usize,
        dendeg: usize,
        vars: &[LyndonWord],
    ) -> PoissonFrac {
        let a = self.poly(n, numdeg, 3, vars);
        let b = self.nonzero_poly(n, dendeg, 2, vars);
        PoissonFrac::new(a, b).expect("nonzero denominator")
    }

    /// An element of the field: a polynomial of degree at most 3 or a
    /// fraction of degree at most 2 over 2.
    pub fn field_element(&mut self, n: usize) -> PoissonFrac {
        if self.rng.gen_bool(0.5) {
            PoissonFrac::from_poly(self.poly(n, 3, 3, &Self::vars(n, 3)))
        } else {
            self.frac(n, 2, 2, &Self::vars(n, 2))
        }
    }

    /// A coefficient for envelope elements: usually a small polynomial,
    /// sometimes a fraction of degree one over one.
    pub fn env_coeff(&mut self, n: usize) -> PoissonFrac {
        let vars = Self::vars(n, 2);
        if self.rng.gen_bool(0.75) {
            PoissonFrac::from_poly(self.nonzero_poly(n, 2, 2, &vars))
        } else {
            loop {
                let q = self.frac(n, 1, 1, &vars);
                if !q.is_zero() {
                    return q;
                }
            }
        }
    }

    pub fn word(&mut self, n: usize, len: usize) -> Word {
        Word::new(
            (0..len)
                .map(|_| self.rng.gen_range(1..=n as Letter))
                .collect(),
        )
    }

    /// A nonzero envelope element of hdeg at most `maxh` with up to
    /// `max_terms` terms.
    pub fn env(&mut self, n: usize, maxh: usize, max_terms: usize) -> EnvElement {
        loop {
            let terms = self.rng.gen_range(1..=max_terms);
            let mut u = EnvElement::zero(n);
            for _ in 0..terms {
                let len = self.rng.gen_range(0..=maxh);
                let w = self.word(n, len);
                let q = self.env_coeff(n);
                u.add_term(w, q);
            }
            if !u.is_zero() {
                return u;
            }
        }
    }
}
