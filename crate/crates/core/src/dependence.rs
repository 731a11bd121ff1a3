//! Poisson dependence of two elements of the free Poisson field.
//!
//! For `f, g` in `P(x1..xn)` the following are equivalent, and each method
//! below computes one of them:
//!
//! * `{f, g} = 0` ([`dep_bracket`]);
//! * the gradients of `f` and `g` over the Lyndon basis variables are
//!   proportional, i.e. `f` and `g` are algebraically dependent
//!   ([`dep_jacobian`]);
//! * `h_f` and `h_g` are left dependent in the enveloping algebra
//!   ([`dep_env`]).
//!
//! Poisson dependence itself and the existence of a common generator `a`
//! with `f, g in k(a)` are implied equivalents and are not computed.

use std::fmt;

use crate::env_algebra::{h_of, EnvElement};
use crate::error::{Error, Result};
use crate::lie_basis::LyndonWord;
use crate::poisson_field::PoissonFrac;
use crate::weak_algorithm::left_dependent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Bracket,
    Jacobian,
    Env,
    All,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bracket" => Ok(Method::Bracket),
            "jacobian" => Ok(Method::Jacobian),
            "env" => Ok(Method::Env),
            "all" => Ok(Method::All),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown method '{s}'"),
            }),
        }
    }
}

/// A nonvanishing minor `d_w f * d_v g - d_v f * d_w g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub w: LyndonWord,
    pub v: LyndonWord,
    pub value: PoissonFrac,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnvEvidence {
    /// Coefficients `(u, v)` with `u h_f + v h_g = 0`.
    Witness(Vec<EnvElement>),
    /// The interreduced pair, which is suffix free and hence independent.
    Reduced(Vec<EnvElement>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    pub bracket: Option<PoissonFrac>,
    pub minor: Option<Minor>,
    pub envelope: Option<EnvEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceVerdict {
    pub dependent: bool,
    pub bracket: Option<bool>,
    pub jacobian: Option<bool>,
    pub envelope: Option<bool>,
    pub evidence: Evidence,
}

fn check_alphabet(f: &PoissonFrac, g: &PoissonFrac) -> Result<()> {
    if f.n() == g.n() {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: f.n(),
            right: g.n(),
        })
    }
}

/// `{f, g} = 0`
pub fn dep_bracket(f: &PoissonFrac, g: &PoissonFrac) -> Result<bool> {
    Ok(bracket_evidence(f, g)?.is_zero())
}

fn bracket_evidence(f: &PoissonFrac, g: &PoissonFrac) -> Result<PoissonFrac> {
    check_alphabet(f, g)?;
    Ok(f.bracket(g))
}

/// All 2x2 minors of the gradient pair vanish.
pub fn dep_jacobian(f: &PoissonFrac, g: &PoissonFrac) -> Result<bool> {
    Ok(jacobian_evidence(f, g)?.is_none())
}

fn jacobian_evidence(f: &PoissonFrac, g: &PoissonFrac) -> Result<Option<Minor>> {
    check_alphabet(f, g)?;
    let mut vars = f.variables();
    vars.extend(g.variables());
    let vars: Vec<LyndonWord> = vars.into_iter().collect();
    let df: Vec<PoissonFrac> = vars.iter().map(|w| f.partial(w)).collect();
    let dg: Vec<PoissonFrac> = vars.iter().map(|w| g.partial(w)).collect();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let value = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !value.is_zero() {
                return Ok(Some(Minor {
                    w: vars[i].clone(),
                    v: vars[j].clone(),
                    value,
                }));
            }
        }
    }
    Ok(None)
}

/// `h_f` and `h_g` are left dependent. A constant has `h = 0` and is
/// therefore dependent with anything.
pub fn dep_env(f: &PoissonFrac, g: &PoissonFrac) -> Result<bool> {
    Ok(matches!(env_evidence(f, g)?, EnvEvidence::Witness(_)))
}

fn env_evidence(f: &PoissonFrac, g: &PoissonFrac) -> Result<EnvEvidence> {
    check_alphabet(f, g)?;
    let dep = left_dependent(&[h_of(f), h_of(g)])?;
    Ok(match dep.witness {
        Some(w) => EnvEvidence::Witness(w),
        None => EnvEvidence::Reduced(dep.reduced.current().to_vec()),
    })
}

/// Runs the selected methods. With [`Method::All`] the three tests run in
/// parallel and must agree; disagreement is reported as
/// [`Error::Inconsistency`].
pub fn poisson_dependent(
    f: &PoissonFrac,
    g: &PoissonFrac,
    method: Method,
) -> Result<DependenceVerdict> {
    check_alphabet(f, g)?;
    let mut evidence = Evidence::default();
    let (mut bracket, mut jacobian, mut envelope) = (None, None, None);
    match method {
        Method::Bracket => evidence.bracket = Some(bracket_evidence(f, g)?),
        Method::Jacobian => evidence.minor = jacobian_evidence(f, g)?,
        Method::Env => evidence.envelope = Some(env_evidence(f, g)?),
        Method::All => {
            let (b, j, e) = std::thread::scope(|s| {
                let b = s.spawn(|| bracket_evidence(f, g));
                let j = s.spawn(|| jacobian_evidence(f, g));
                let e = env_evidence(f, g);
                (
                    b.join().expect("bracket thread"),
                    j.join().expect("jacobian thread"),
                    e,
                )
            });
            evidence.bracket = Some(b?);
            evidence.minor = j?;
            evidence.envelope = Some(e?);
        }
    }
    if let Some(b) = &evidence.bracket {
        bracket = Some(b.is_zero());
    }
    if matches!(method, Method::Jacobian | Method::All) {
        jacobian = Some(evidence.minor.is_none());
    }
    if let Some(e) = &evidence.envelope {
        envelope = Some(matches!(e, EnvEvidence::Witness(_)));
    }
    let results: Vec<bool> = [bracket, jacobian, envelope]
        .into_iter()
        .flatten()
        .collect();
    let dependent = results[0];
    let verdict = DependenceVerdict {
        dependent,
        bracket,
        jacobian,
        envelope,
        evidence,
    };
    if results.iter().any(|&r| r != dependent) {
        return Err(Error::Inconsistency(format!(
            "dependence methods disagree on ({f}, {g}): {verdict}"
        )));
    }
    Ok(verdict)
}

impl fmt::Display for DependenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.dependent {
            "dependent"
        } else {
            "independent"
        })?;
        let show = |b: Option<bool>| match b {
            Some(true) => "dependent",
            Some(false) => "independent",
            None => "not run",
        };
        write!(
            f,
            " (bracket: {}, jacobian: {}, env: {})",
            show(self.bracket),
            show(self.jacobian),
            show(self.envelope)
        )
    }
}
