//! Endomorphisms of the two-variable free Poisson field `P(x, y)`.
//!
//! A pair `(f, g)` determines at most one bracket-preserving extension `psi`
//! with `psi(x1) = f`, `psi(x2) = g`: on a Lyndon variable `e_w` with
//! standard factorization `(u, v)` it must be `{psi(e_u), psi(e_v)}`.
//! Automorphisms of `P(x, y)` correspond to birational automorphisms of the
//! plane, which are verified here against an explicit inverse.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::env_algebra::h_of;
use crate::error::{Error, Result};
use crate::lie_basis::{standard_factorization, LyndonWord};
use crate::poisson_field::PoissonFrac;
use crate::poisson_poly::PoissonPoly;

const N: usize = 2;

/// The bracket-compatible extension of `x1 -> f`, `x2 -> g`. Images of
/// Lyndon variables are computed on demand and cached.
#[derive(Debug)]
pub struct Endomorphism {
    f: PoissonFrac,
    g: PoissonFrac,
    cache: RwLock<HashMap<LyndonWord, PoissonFrac>>,
}

/// Builds the endomorphism determined by the images of the generators.
/// Rationality of the images is not required here.
pub fn extend_endo(f: &PoissonFrac, g: &PoissonFrac) -> Result<Endomorphism> {
    for a in [f, g] {
        if a.n() != N {
            return Err(Error::AlphabetMismatch {
                left: N,
                right: a.n(),
            });
        }
    }
    Ok(Endomorphism {
        f: f.clone(),
        g: g.clone(),
        cache: RwLock::new(HashMap::new()),
    })
}

impl Endomorphism {
    pub fn images(&self) -> (&PoissonFrac, &PoissonFrac) {
        (&self.f, &self.g)
    }

    /// `psi(e_w)`
    pub fn image(&self, w: &LyndonWord) -> PoissonFrac {
        match w.letters() {
            [1] => return self.f.clone(),
            [2] => return self.g.clone(),
            _ => {}
        }
        if let Some(q) = self.cache.read().expect("image cache poisoned").get(w) {
            return q.clone();
        }
        let (u, v) = standard_factorization(w).expect("word of length at least 2");
        let q = self.image(&u).bracket(&self.image(&v));
        self.cache
            .write()
            .expect("image cache poisoned")
            .insert(w.clone(), q.clone());
        q
    }

    fn apply_poly(&self, p: &PoissonPoly) -> PoissonFrac {
        let mut out = PoissonFrac::zero(N);
        for (m, c) in p.terms() {
            let mut t = PoissonFrac::constant(c.clone(), N);
            for (w, e) in m.factors() {
                t = &t * &self.image(w).pow(i64::from(*e)).expect("nonnegative power");
            }
            out = &out + &t;
        }
        out
    }
}

/// Substitutes the images of all variables of `a`. Fails with
/// [`Error::SubstitutionPole`] when the denominator of `a` is sent to zero.
pub fn apply_endo(psi: &Endomorphism, a: &PoissonFrac) -> Result<PoissonFrac> {
    if a.n() != N {
        return Err(Error::AlphabetMismatch {
            left: N,
            right: a.n(),
        });
    }
    let den = psi.apply_poly(a.den());
    if den.is_zero() {
        return Err(Error::SubstitutionPole);
    }
    psi.apply_poly(a.num()).checked_div(&den)
}

/// Whether `a` lies in `k(x1..xn)`. Both characterizations are computed:
/// every variable of `a` is a generator, and `h_a` has word length at most
/// one. They must agree.
pub fn is_rational_in_generators(a: &PoissonFrac) -> Result<bool> {
    let syntactic = a.variables().iter().all(LyndonWord::is_generator);
    let by_derivation = h_of(a).hdeg().is_none_or(|d| d <= 1);
    if syntactic != by_derivation {
        return Err(Error::Inconsistency(format!(
            "rationality tests disagree on {a}: variables say {syntactic}, hdeg(h) says {by_derivation}"
        )));
    }
    Ok(syntactic)
}

/// Outcome of [`verify_automorphism`] with the individual checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismVerdict {
    pub automorphism: bool,
    /// Rationality of `f, g, p, q` in that order.
    pub rational: [bool; 4],
    /// `(p, q)` composed after `(f, g)` is the identity, if it was checked.
    pub forward: Option<bool>,
    /// `(f, g)` composed after `(p, q)` is the identity, if it was checked.
    pub backward: Option<bool>,
    pub diagnostic: Option<String>,
}

/// Decides whether `x1 -> f, x2 -> g` is an automorphism of `P(x, y)` with
/// inverse `x1 -> p, x2 -> q`.
pub fn verify_automorphism(
    f: &PoissonFrac,
    g: &PoissonFrac,
    p: &PoissonFrac,
    q: &PoissonFrac,
) -> Result<AutomorphismVerdict> {
    let four = [f, g, p, q];
    let mut rational = [false; 4];
    for (r, a) in rational.iter_mut().zip(four) {
        *r = is_rational_in_generators(a)?;
    }
    let mut verdict = AutomorphismVerdict {
        automorphism: false,
        rational,
        forward: None,
        backward: None,
        diagnostic: None,
    };
    if let Some(i) = rational.iter().position(|r| !r) {
        verdict.diagnostic = Some(format!(
            "{} is not rational in the generators",
            ["f", "g", "p", "q"][i]
        ));
        return Ok(verdict);
    }
    let forward = composes_to_identity(f, g, p, q);
    verdict.forward = Some(forward.is_ok());
    if let Err(msg) = forward {
        verdict.diagnostic = Some(format!("(p, q) after (f, g): {msg}"));
        return Ok(verdict);
    }
    let backward = composes_to_identity(p, q, f, g);
    verdict.backward = Some(backward.is_ok());
    if let Err(msg) = backward {
        verdict.diagnostic = Some(format!("(f, g) after (p, q): {msg}"));
        return Ok(verdict);
    }
    for a in [f, g] {
        if h_of(a).hdeg() != Some(1) {
            return Err(Error::Inconsistency(format!(
                "automorphism component {a} has hdeg(h) other than 1"
            )));
        }
    }
    verdict.automorphism = true;
    Ok(verdict)
}

/// Checks `a(f, g) = x1` and `b(f, g) = x2`, describing the first failure.
fn composes_to_identity(
    f: &PoissonFrac,
    g: &PoissonFrac,
    a: &PoissonFrac,
    b: &PoissonFrac,
) -> std::result::Result<(), String> {
    let psi = extend_endo(f, g).map_err(|e| e.to_string())?;
    for (c, l) in [(a, 1), (b, 2)] {
        let image = apply_endo(&psi, c).map_err(|e| format!("substitution failed: {e}"))?;
        if image != PoissonFrac::generator(l, N) {
            return Err(format!("{c} is sent to {image}, not x{l}"));
        }
    }
    Ok(())
}
