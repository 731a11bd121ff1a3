//! Command-line front end: expression syntax, text and JSON output, and
//! the `freepoisson` subcommands.
//!
//! Exit codes: `0` success or a true verdict, `1` a false verdict
//! (`member`, `leftdep`, `pdep`, `aut`), `2` usage, parse and domain errors,
//! `3` an internal consistency failure.

mod parse;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use parse::{parse_env, parse_field, parse_field_with_y};

use crate::automorphism::{apply_endo, extend_endo, verify_automorphism};
use crate::dependence::{poisson_dependent, EnvEvidence, Method};
use crate::env_algebra::{h_of, EnvElement};
use crate::error::{Error, Result};
use crate::poisson_field::PoissonFrac;
use crate::poisson_poly::PoissonPoly;
use crate::weak_algorithm::{left_dependent, membership, normal_form};
use crate::word::{fmt_letters, parse_letters, Word};

/// Canonical text form of a field element.
pub fn print_field(q: &PoissonFrac) -> String {
    q.to_string()
}

/// Canonical text form of an envelope element.
pub fn print_env(u: &EnvElement) -> String {
    u.to_string()
}

/// `{"num": .., "den": ..}` with both parts in canonical text form.
pub fn field_to_json(q: &PoissonFrac) -> Value {
    json!({ "num": q.num().to_string(), "den": q.den().to_string() })
}

/// `[{"coeff": {"num", "den"}, "word": "12"}, ..]` in decreasing word order.
pub fn env_to_json(u: &EnvElement) -> Value {
    let terms: Vec<Value> = u
        .terms()
        .rev()
        .map(|(w, q)| {
            let mut word = String::new();
            fmt_letters(&mut word, w.letters(), u.n()).expect("writing to a String");
            json!({ "coeff": field_to_json(q), "word": word })
        })
        .collect();
    Value::Array(terms)
}

fn json_error(msg: &str) -> Error {
    Error::Parse {
        pos: 0,
        msg: format!("malformed JSON value: {msg}"),
    }
}

pub fn field_from_json(v: &Value, n: usize) -> Result<PoissonFrac> {
    let part = |key: &str| -> Result<PoissonFrac> {
        let text = v
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| json_error(key))?;
        parse_field(text, n)
    };
    let (num, den) = (part("num")?, part("den")?);
    if !num.is_polynomial() || !den.is_polynomial() {
        return Err(json_error("numerator and denominator must be polynomials"));
    }
    PoissonFrac::new(num.num().clone(), den.num().clone())
}

pub fn env_from_json(v: &Value, n: usize) -> Result<EnvElement> {
    let terms = v
        .as_array()
        .ok_or_else(|| json_error("expected an array"))?;
    let mut out = EnvElement::zero(n);
    for t in terms {
        let q = field_from_json(t.get("coeff").ok_or_else(|| json_error("coeff"))?, n)?;
        let word = t
            .get("word")
            .and_then(Value::as_str)
            .ok_or_else(|| json_error("word"))?;
        out.add_term(Word::new(parse_letters(word, n)?), q);
    }
    Ok(out)
}

#[derive(Parser, Debug)]
#[command(name = "freepoisson", version)]
#[command(about = "Exact computations in free Poisson fields and their enveloping algebras")]
struct Cli {
    /// Number of generators x1..xn
    #[arg(short = 'n', global = true, default_value_t = 2)]
    n: usize,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical form of a field expression
    Canon {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Poisson bracket of two field expressions
    Bracket {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Degree and per-generator degrees of a polynomial
    Deg {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The universal derivation h applied to a field expression
    H {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Canonical form of an envelope expression
    Env {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Leading term and hdeg of an envelope expression
    Ldt {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Action of an envelope element on P(x1..xn, y), y = x(n+1)
    Act {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Normal form modulo the left ideal generated by --gen
    Reduce {
        #[arg(long = "gen", allow_hyphen_values = true)]
        gens: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Left-ideal membership with cofactors
    Member {
        #[arg(long = "gen", allow_hyphen_values = true)]
        gens: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Left dependence of envelope elements
    Leftdep {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Poisson dependence of two field elements
    Pdep {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "bracket", value_parser = ["bracket", "jacobian", "env", "all"])]
        method: String,
    },
    /// Verify that (f, g) is an automorphism with inverse (p, q); n = 2
    Aut {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Apply the endomorphism x1 -> f, x2 -> g; n = 2
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args`, whose first item is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((verdict, stdout)) => Outcome {
            code: if verdict { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let code = if matches!(e, Error::Inconsistency(_)) {
                3
            } else {
                2
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

/// The text form, or the JSON value when `json` is set, with a newline.
fn render(json: bool, text: String, value: Value) -> String {
    if json {
        value.to_string() + "\n"
    } else {
        text + "\n"
    }
}

fn execute(cli: &Cli) -> Result<(bool, String)> {
    let n = cli.n;
    if n == 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "-n must be at least 1".into(),
        });
    }
    let field = |s: &str| parse_field(s, n);
    let env = |s: &str| parse_env(s, n);
    let json = cli.json;
    let single_field =
        |q: PoissonFrac| render(json, print_field(&q), json!({ "value": field_to_json(&q) }));
    let single_env =
        |u: EnvElement| render(json, print_env(&u), json!({ "value": env_to_json(&u) }));

    let (verdict, out) = match &cli.command {
        Command::Canon { expr } => (true, single_field(field(expr)?)),
        Command::Bracket { a, b } => (true, single_field(field(a)?.bracket(&field(b)?))),
        Command::Deg { expr } => {
            let q = field(expr)?;
            if !q.is_polynomial() {
                return Err(Error::NotPolynomial);
            }
            (true, degree_output(q.num(), json))
        }
        Command::H { expr } => (true, single_env(h_of(&field(expr)?))),
        Command::Env { expr } => (true, single_env(env(expr)?)),
        Command::Ldt { expr } => {
            let u = env(expr)?;
            let (c, w) = u.ldt()?;
            let mut word = String::new();
            fmt_letters(&mut word, w.letters(), n).expect("writing to a String");
            let text = format!("ldc: {c}\nldm: h[{word}]\nhdeg: {}", w.len());
            (
                true,
                render(
                    json,
                    text,
                    json!({ "ldc": field_to_json(c), "ldm": word, "hdeg": w.len() }),
                ),
            )
        }
        Command::Act { element, target } => {
            let u = env(element)?;
            let v = parse_field_with_y(target, n + 1)?;
            (true, single_field(u.act(&v)?))
        }
        Command::Reduce { gens, elem } => {
            let gens = gens.iter().map(|s| env(s)).collect::<Result<Vec<_>>>()?;
            let r = normal_form(&env(elem)?, &gens)?;
            (
                true,
                reduction_output(r.is_member(), &r.cofactors, &r.remainder, json),
            )
        }
        Command::Member { gens, elem } => {
            let gens = gens.iter().map(|s| env(s)).collect::<Result<Vec<_>>>()?;
            let r = membership(&env(elem)?, &gens)?;
            (
                r.is_member(),
                reduction_output(r.is_member(), &r.cofactors, &r.remainder, json),
            )
        }
        Command::Leftdep { elements } => {
            let family = elements
                .iter()
                .map(|s| env(s))
                .collect::<Result<Vec<_>>>()?;
            let dep = left_dependent(&family)?;
            let mut text = String::from(if dep.dependent {
                "dependent"
            } else {
                "independent"
            });
            for (i, u) in dep.witness.iter().flatten().enumerate() {
                write!(text, "\nu{}: {u}", i + 1).expect("writing to a String");
            }
            let witness = dep
                .witness
                .as_ref()
                .map(|w| w.iter().map(env_to_json).collect::<Vec<_>>());
            (
                dep.dependent,
                render(
                    json,
                    text,
                    json!({ "dependent": dep.dependent, "witness": witness }),
                ),
            )
        }
        Command::Pdep { f, g, method } => {
            let method: Method = method.parse()?;
            let v = poisson_dependent(&field(f)?, &field(g)?, method)?;
            let mut text = v.to_string();
            if let Some(b) = v.evidence.bracket.as_ref().filter(|b| !b.is_zero()) {
                write!(text, "\nbracket: {b}").expect("writing to a String");
            }
            if let Some(m) = &v.evidence.minor {
                write!(
                    text,
                    "\nminor ({}, {}): {}",
                    m.w.display(n),
                    m.v.display(n),
                    m.value
                )
                .expect("writing to a String");
            }
            let minor = v.evidence.minor.as_ref().map(|m| {
                json!({ "w": m.w.display(n), "v": m.v.display(n), "value": field_to_json(&m.value) })
            });
            let (witness, reduced) = match &v.evidence.envelope {
                Some(EnvEvidence::Witness(w)) => {
                    (Some(w.iter().map(env_to_json).collect::<Vec<_>>()), None)
                }
                Some(EnvEvidence::Reduced(r)) => {
                    (None, Some(r.iter().map(env_to_json).collect::<Vec<_>>()))
                }
                None => (None, None),
            };
            let value = json!({
                "dependent": v.dependent,
                "methods": { "bracket": v.bracket, "jacobian": v.jacobian, "env": v.envelope },
                "evidence": {
                    "bracket": v.evidence.bracket.as_ref().map(field_to_json),
                    "minor": minor,
                    "env_witness": witness,
                    "env_reduced": reduced,
                },
            });
            (v.dependent, render(json, text, value))
        }
        Command::Aut { f, g, p, q } => {
            require_two(n)?;
            let v = verify_automorphism(&field(f)?, &field(g)?, &field(p)?, &field(q)?)?;
            let text = match &v.diagnostic {
                _ if v.automorphism => "automorphism".to_string(),
                Some(d) => format!("not an automorphism: {d}"),
                None => "not an automorphism".to_string(),
            };
            let value = json!({
                "automorphism": v.automorphism,
                "rational": v.rational,
                "forward": v.forward,
                "backward": v.backward,
                "diagnostic": v.diagnostic,
            });
            (v.automorphism, render(json, text, value))
        }
        Command::Apply { f, g, expr } => {
            require_two(n)?;
            let psi = extend_endo(&field(f)?, &field(g)?)?;
            (true, single_field(apply_endo(&psi, &field(expr)?)?))
        }
    };
    Ok((verdict, out))
}

fn require_two(n: usize) -> Result<()> {
    if n == 2 {
        Ok(())
    } else {
        Err(Error::Parse {
            pos: 0,
            msg: format!("this command works over two generators, got -n {n}"),
        })
    }
}

fn degree_output(p: &PoissonPoly, json: bool) -> String {
    match (p.degree(), p.multidegree()) {
        (Some(d), Some(md)) => {
            let list: Vec<String> = md.iter().map(usize::to_string).collect();
            let text = format!("degree: {d}\nmultidegree: {}", list.join(" "));
            render(json, text, json!({ "degree": d, "multidegree": md }))
        }
        _ => render(
            json,
            "degree: -inf\nmultidegree: -inf".into(),
            json!({ "degree": null, "multidegree": null }),
        ),
    }
}

fn reduction_output(
    member: bool,
    cofactors: &[EnvElement],
    remainder: &EnvElement,
    json: bool,
) -> String {
    let mut text = String::from(if member { "member" } else { "not a member" });
    for (i, v) in cofactors.iter().enumerate() {
        write!(text, "\nv{}: {v}", i + 1).expect("writing to a String");
    }
    write!(text, "\nremainder: {remainder}").expect("writing to a String");
    let value = json!({
        "member": member,
        "cofactors": cofactors.iter().map(env_to_json).collect::<Vec<_>>(),
        "remainder": env_to_json(remainder),
    });
    render(json, text, value)
}
