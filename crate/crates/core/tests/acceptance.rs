//! Acceptance suite. Each criterion runs on seeded random inputs, is timed
//! against its budget and prints one PASS/FAIL line; the process exits with
//! a failure status if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::Gen;
use freepoisson::automorphism::{
    apply_endo, extend_endo, is_rational_in_generators, verify_automorphism,
};
use freepoisson::cli::{
    env_from_json, field_from_json, parse_env, parse_field, parse_field_with_y, run,
};
use freepoisson::dependence::{dep_bracket, poisson_dependent, Method};
use freepoisson::env_algebra::{h_of, EnvElement};
use freepoisson::lie_basis::{expansion, lyndon_basis, to_lyndon, LieElement};
use freepoisson::weak_algorithm::{interreduce, left_dependent, membership};
use freepoisson::{Letter, LyndonWord, PoissonFrac};
use rand::Rng;
use serde_json::Value;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn scalar(q: &PoissonFrac) -> EnvElement {
    EnvElement::scalar(q.clone())
}

fn sum_products(coeffs: &[EnvElement], family: &[EnvElement], n: usize) -> EnvElement {
    coeffs
        .iter()
        .zip(family)
        .fold(EnvElement::zero(n), |acc, (v, s)| &acc + &(v * s))
}

/// Presentation relations of the enveloping algebra for random pairs.
fn relations() -> Check {
    let mut g = Gen::new(1);
    for i in 0..200 {
        let n = g.rng.gen_range(2..=3);
        let (a, b) = (g.field_element(n), g.field_element(n));
        let (ha, hb) = (h_of(&a), h_of(&b));
        let ab = a.bracket(&b);
        ensure!(
            h_of(&ab) == &(&ha * &hb) - &(&hb * &ha),
            "pair {i}: h of the bracket, a = {a}, b = {b}"
        );
        ensure!(
            h_of(&(&a * &b)) == &hb.scale(&a) + &ha.scale(&b),
            "pair {i}: product rule, a = {a}, b = {b}"
        );
        let commutator = &(&ha * &scalar(&b)) - &ha.scale(&b);
        ensure!(
            commutator == scalar(&ab),
            "pair {i}: commutation rule, a = {a}, b = {b}"
        );
        let mirrored = &hb.scale(&a) - &(&hb * &scalar(&a));
        ensure!(
            commutator == mirrored,
            "pair {i}: symmetric form, a = {a}, b = {b}"
        );
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero");
            ensure!(
                h_of(&inv) == ha.scale(&-&(&inv * &inv)),
                "pair {i}: inverse rule, a = {a}"
            );
        }
    }
    Ok("200 pairs, five relations each".into())
}

/// Leading terms multiply and hdeg is additive.
fn degree_function() -> Check {
    let mut g = Gen::new(2);
    for i in 0..200 {
        let n = g.rng.gen_range(2..=3);
        let (u, v) = (g.env(n, 3, 3), g.env(n, 3, 3));
        let uv = &u * &v;
        let ((cu, mu), (cv, mv)) = (u.ldt().unwrap(), v.ldt().unwrap());
        let (c, m) = uv
            .ldt()
            .map_err(|_| format!("pair {i}: product of nonzero elements vanished"))?;
        ensure!(*m == mu.concat(mv), "pair {i}: ldm {m:?} != {mu:?}{mv:?}");
        ensure!(*c == cu * cv, "pair {i}: ldc {c} != ({cu})({cv})");
        ensure!(
            uv.hdeg().unwrap() == u.hdeg().unwrap() + v.hdeg().unwrap(),
            "pair {i}: hdeg"
        );
    }
    Ok("200 products".into())
}

/// Number of Lyndon words of length `k` over `n` letters by the necklace
/// formula.
fn necklace(n: usize, k: usize) -> usize {
    fn mobius(mut m: usize) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    }
    let total: i64 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| mobius(d) * (n as i64).pow((k / d) as u32))
        .sum();
    (total / k as i64) as usize
}

/// Lie and Poisson axioms, structure constant round trips, basis counts.
fn lie_axioms() -> Check {
    let mut g = Gen::new(3);
    for i in 0..200 {
        let n = g.rng.gen_range(2..=3);
        let vars = Gen::vars(n, 4);
        let mut p = || PoissonFrac::from_poly(g.poly(n, 4, 3, &vars));
        let (a, b, c) = (p(), p(), p());
        ensure!(a.bracket(&b) == -&b.bracket(&a), "triple {i}: antisymmetry");
        let jacobi =
            &(&a.bracket(&b.bracket(&c)) + &b.bracket(&c.bracket(&a))) + &c.bracket(&a.bracket(&b));
        ensure!(
            jacobi.is_zero(),
            "triple {i}: Jacobi, a = {a}, b = {b}, c = {c}"
        );
        let leibniz = &(&a.bracket(&b) * &c) + &(&b * &a.bracket(&c));
        ensure!(a.bracket(&(&b * &c)) == leibniz, "triple {i}: Leibniz");
    }
    let mut words = 0;
    for (n, d) in [(2, 5), (3, 4)] {
        let basis = lyndon_basis(n, d);
        for k in 1..=d {
            let count = basis.iter().filter(|w| w.degree() == k).count();
            ensure!(
                count == necklace(n, k),
                "n = {n}, length {k}: {count} words, expected {}",
                necklace(n, k)
            );
        }
        for w in &basis {
            let back = to_lyndon(&expansion(w)).map_err(|e| format!("{w:?}: {e}"))?;
            ensure!(back == LieElement::basis(w.clone()), "round trip of {w:?}");
            words += 1;
        }
    }
    Ok(format!("200 triples, {words} round trips"))
}

/// Interreduction, dependence witnesses and membership certificates.
fn weak_algorithm() -> Check {
    let mut g = Gen::new(4);
    let mut dependent = 0;
    for i in 0..100 {
        let n = 2;
        let k = g.rng.gen_range(1..=4);
        let mut family: Vec<EnvElement> = (0..k).map(|_| g.env(n, 3, 2)).collect();
        let forced = k >= 2 && g.rng.gen_bool(0.3);
        if forced {
            let vs: Vec<EnvElement> = (0..k - 1).map(|_| g.env(n, 1, 1)).collect();
            family[k - 1] = sum_products(&vs, &family[..k - 1], n);
        }
        let rs = interreduce(&family).map_err(|e| e.to_string())?;
        ensure!(rs.is_suffix_free(), "family {i}: not suffix free");
        ensure!(rs.replay() == rs.current(), "family {i}: replay differs");

        let dep = left_dependent(&family).map_err(|e| format!("family {i}: {e}"))?;
        ensure!(
            !forced || dep.dependent,
            "family {i}: constructed dependence missed"
        );
        if let Some(w) = &dep.witness {
            ensure!(w.iter().any(|u| !u.is_zero()), "family {i}: zero witness");
            ensure!(
                sum_products(w, &family, n).is_zero(),
                "family {i}: witness does not vanish"
            );
            dependent += 1;
        }

        let vs: Vec<EnvElement> = (0..k).map(|_| g.env(n, 1, 2)).collect();
        let u = sum_products(&vs, &family, n);
        let r = membership(&u, &family).map_err(|e| format!("family {i}: {e}"))?;
        ensure!(
            r.is_member(),
            "family {i}: constructed member rejected, remainder {}",
            r.remainder
        );
        ensure!(
            sum_products(&r.cofactors, &family, n) == u,
            "family {i}: cofactors do not reproduce"
        );

        let other = g.env(n, 3, 2);
        let r = membership(&other, &family).map_err(|e| format!("family {i}: {e}"))?;
        ensure!(
            &sum_products(&r.cofactors, &family, n) + &r.remainder == other,
            "family {i}: remainder identity"
        );
        if !r.is_member() {
            let m = r.remainder.ldm().unwrap();
            for (_, s) in rs.elements() {
                ensure!(
                    m.strip_suffix(s.ldm().unwrap()).is_none(),
                    "family {i}: remainder still reducible"
                );
            }
        }
    }
    Ok(format!("100 families, {dependent} dependent, 100 members"))
}

/// A random polynomial in the field element `f` over the rationals.
fn poly_in(g: &mut Gen, f: &PoissonFrac, maxdeg: u32) -> PoissonFrac {
    let n = f.n();
    let mut out = PoissonFrac::zero(n);
    let mut power = PoissonFrac::one(n);
    for _ in 0..=g.rng.gen_range(1..=maxdeg) {
        if g.rng.gen_bool(0.7) {
            out = &out + &power.scale(&g.coeff());
        }
        power = &power * f;
    }
    out
}

/// Agreement of the three dependence tests.
fn dependence_agreement() -> Check {
    let mut g = Gen::new(5);
    let mut generic_dependent = 0;
    for i in 0..100 {
        let n = g.rng.gen_range(2..=3);
        let f = g.frac(n, 2, 1, &Gen::vars(n, 2));
        let (p, q) = (poly_in(&mut g, &f, 2), poly_in(&mut g, &f, 1));
        let h = if q.is_zero() {
            p
        } else {
            p.checked_div(&q).unwrap()
        };
        let v = poisson_dependent(&f, &h, Method::All)
            .map_err(|e| format!("dependent pair {i}: {e}"))?;
        ensure!(
            v.dependent,
            "dependent pair {i}: ({f}, {h}) reported independent"
        );
    }
    for i in 0..100 {
        let n = g.rng.gen_range(2..=3);
        let (f, h) = (g.field_element(n), g.field_element(n));
        let v =
            poisson_dependent(&f, &h, Method::All).map_err(|e| format!("generic pair {i}: {e}"))?;
        ensure!(
            v.dependent == dep_bracket(&f, &h).unwrap(),
            "generic pair {i}: bracket ground truth"
        );
        generic_dependent += v.dependent as usize;
    }
    Ok(format!(
        "100 constructed + 100 generic pairs ({generic_dependent} generic dependent)"
    ))
}

/// Rationality in the generators, syntactic versus hdeg of h.
fn rationality() -> Check {
    let mut g = Gen::new(6);
    let mut rational = 0;
    for i in 0..200 {
        let n = g.rng.gen_range(2..=3);
        let only_generators = g.rng.gen_bool(0.5);
        let vars = if only_generators {
            Gen::generators(n)
        } else {
            Gen::vars(n, 3)
        };
        let a = g.frac(n, 3, 2, &vars);
        let r = is_rational_in_generators(&a).map_err(|e| format!("fraction {i}: {e}"))?;
        let expected = a.variables().iter().all(LyndonWord::is_generator);
        ensure!(r == expected, "fraction {i}: {a}");
        ensure!(
            r == h_of(&a).hdeg().is_none_or(|d| d <= 1),
            "fraction {i}: hdeg test disagrees"
        );
        ensure!(
            !only_generators || r,
            "fraction {i}: built from generators but reported irrational"
        );
        rational += r as usize;
    }
    Ok(format!("200 fractions, {rational} rational"))
}

/// The three automorphisms, bracket compatibility, and the diagonal map.
fn automorphisms() -> Check {
    let n = 2;
    let x = |l: Letter| PoissonFrac::generator(l, n);
    let one = PoissonFrac::one(n);
    let div = |a: &PoissonFrac, b: &PoissonFrac| a.checked_div(b).unwrap();
    let maps = [
        ("swap", (x(2), x(1)), (x(2), x(1))),
        (
            "(1/x, y/x)",
            (div(&one, &x(1)), div(&x(2), &x(1))),
            (div(&one, &x(1)), div(&x(2), &x(1))),
        ),
        ("(x, xy)", (x(1), &x(1) * &x(2)), (x(1), div(&x(2), &x(1)))),
    ];
    let mut g = Gen::new(7);
    let vars = Gen::vars(n, 3);
    for (name, (f, gg), (p, q)) in &maps {
        let v = verify_automorphism(f, gg, p, q).map_err(|e| format!("{name}: {e}"))?;
        ensure!(v.automorphism, "{name}: not verified: {:?}", v.diagnostic);
        ensure!(
            verify_automorphism(p, q, f, gg).unwrap().automorphism,
            "{name}: inverse not verified"
        );
        ensure!(
            h_of(f).hdeg() == Some(1) && h_of(gg).hdeg() == Some(1),
            "{name}: hdeg of images"
        );
        let psi = extend_endo(f, gg).unwrap();
        for i in 0..50 {
            let a = g.frac(n, 2, 1, &vars);
            let b = g.frac(n, 2, 1, &vars);
            let (Ok(pa), Ok(pb)) = (apply_endo(&psi, &a), apply_endo(&psi, &b)) else {
                return Err(format!("{name}, pair {i}: substitution pole"));
            };
            let lhs =
                apply_endo(&psi, &a.bracket(&b)).map_err(|e| format!("{name}, pair {i}: {e}"))?;
            ensure!(
                lhs == pa.bracket(&pb),
                "{name}, pair {i}: bracket not preserved for {a}, {b}"
            );
        }
    }
    let witnesses = [
        (x(1), x(2)),
        (x(2), x(1)),
        (x(1), &x(2) - &x(1)),
        (div(&one, &x(1)), div(&x(2), &x(1))),
        (x(1), div(&x(2), &x(1))),
        (&x(1) + &x(2), &x(1) - &x(2)),
    ];
    for (p, q) in &witnesses {
        let v = verify_automorphism(&x(1), &x(1), p, q).map_err(|e| e.to_string())?;
        ensure!(!v.automorphism, "(x, x) verified with witness ({p}, {q})");
    }
    Ok(format!(
        "3 automorphisms x 50 pairs, (x, x) rejected by {} witnesses",
        witnesses.len()
    ))
}

/// Module action on P(x1, x2, y) and a faithfulness sample.
fn representation() -> Check {
    let n = 2;
    let mut g = Gen::new(8);
    let vars = Gen::vars(n + 1, 2);
    for i in 0..100 {
        let (u, v) = (g.env(n, 2, 2), g.env(n, 2, 2));
        let w = PoissonFrac::from_poly(g.poly(n + 1, 2, 3, &vars));
        let lhs = (&u * &v).act(&w).unwrap();
        let rhs = u.act(&v.act(&w).unwrap()).unwrap();
        ensure!(
            lhs == rhs,
            "triple {i}: act(uv, w) != act(u, act(v, w)) for u = {u}, v = {v}, w = {w}"
        );
    }
    let y = PoissonFrac::generator(3, n + 1);
    for i in 0..100 {
        let u = g.env(n, 3, 3);
        ensure!(
            !u.act(&y).unwrap().is_zero(),
            "element {i}: {u} annihilates y"
        );
    }
    Ok("100 triples, 100 faithfulness samples".into())
}

struct CliCase {
    args: &'static [&'static str],
    code: i32,
    stdout: Option<&'static str>,
}

const CORPUS: &[CliCase] = &[
    CliCase {
        args: &["canon", "{x1,x2}"],
        code: 0,
        stdout: Some("e[12]\n"),
    },
    CliCase {
        args: &["canon", "(x1^2 - x2^2)/(x1 - x2)"],
        code: 0,
        stdout: Some("x1 + x2\n"),
    },
    CliCase {
        args: &["canon", "e[21]"],
        code: 2,
        stdout: None,
    },
    CliCase {
        args: &["canon", "x3"],
        code: 2,
        stdout: None,
    },
    CliCase {
        args: &["canon", "-n", "3", "x3"],
        code: 0,
        stdout: Some("x3\n"),
    },
    CliCase {
        args: &["bracket", "x1", "1/x2"],
        code: 0,
        stdout: Some("(-e[12]) / (x2^2)\n"),
    },
    CliCase {
        args: &["deg", "e[112]*x2"],
        code: 0,
        stdout: Some("degree: 4\nmultidegree: 2 2\n"),
    },
    CliCase {
        args: &["deg", "1/x1"],
        code: 2,
        stdout: None,
    },
    CliCase {
        args: &["h", "x1*x2"],
        code: 0,
        stdout: Some("(x1)*h[2] + (x2)*h[1]\n"),
    },
    CliCase {
        args: &["h", "e[12]"],
        code: 0,
        stdout: Some("(-1)*h[21] + (1)*h[12]\n"),
    },
    CliCase {
        args: &["env", "h(x1)*x2"],
        code: 0,
        stdout: Some("(x2)*h[1] + (e[12])*h[]\n"),
    },
    CliCase {
        args: &["env", "h(x1)/x2"],
        code: 2,
        stdout: None,
    },
    CliCase {
        args: &["ldt", "h(x2)*x1*h(x1)"],
        code: 0,
        stdout: Some("ldc: x1\nldm: h[21]\nhdeg: 2\n"),
    },
    CliCase {
        args: &["ldt", "0"],
        code: 2,
        stdout: None,
    },
    CliCase {
        args: &["act", "h(x1)", "y"],
        code: 0,
        stdout: Some("e[13]\n"),
    },
    CliCase {
        args: &["reduce", "--gen", "h(x1)", "--elem", "h[22] + h[1] + 1"],
        code: 0,
        stdout: None,
    },
    CliCase {
        args: &[
            "member", "--gen", "h(x1)", "--gen", "h(x2)", "--elem", "h(x1*x2)",
        ],
        code: 0,
        stdout: Some("member\nv1: (x2)*h[]\nv2: (x1)*h[]\nremainder: 0\n"),
    },
    CliCase {
        args: &["member", "--gen", "h(x1)", "--elem", "1"],
        code: 1,
        stdout: None,
    },
    CliCase {
        args: &["leftdep", "h(x1)", "h(x2)*h(x1)"],
        code: 0,
        stdout: None,
    },
    CliCase {
        args: &["leftdep", "h(x1)", "h(x2)"],
        code: 1,
        stdout: Some("independent\n"),
    },
    CliCase {
        args: &["pdep", "x1", "x1^2+1"],
        code: 0,
        stdout: None,
    },
    CliCase {
        args: &["pdep", "x1", "x2", "--method", "all"],
        code: 1,
        stdout: None,
    },
    CliCase {
        args: &["pdep", "x1/x2", "x2/x1", "--method", "env"],
        code: 0,
        stdout: None,
    },
    CliCase {
        args: &["aut", "--f", "x2", "--g", "x1", "--p", "x2", "--q", "x1"],
        code: 0,
        stdout: Some("automorphism\n"),
    },
    CliCase {
        args: &[
            "aut", "--f", "x1", "--g", "x1*x2", "--p", "x1", "--q", "x2/x1",
        ],
        code: 0,
        stdout: None,
    },
    CliCase {
        args: &["aut", "--f", "e[12]", "--g", "x2", "--p", "x1", "--q", "x2"],
        code: 1,
        stdout: None,
    },
    CliCase {
        args: &["apply", "--f", "x2", "--g", "x1", "x1/x2"],
        code: 0,
        stdout: Some("(x2) / (x1)\n"),
    },
    CliCase {
        args: &["apply", "--f", "x1", "--g", "x1", "1/(x1-x2)"],
        code: 2,
        stdout: None,
    },
    CliCase {
        args: &["frobnicate"],
        code: 2,
        stdout: None,
    },
];

/// Values in JSON output that must parse back: fields and envelope lists.
fn reparse_json(v: &Value, n: usize, command: &str, checked: &mut usize) -> Result<(), String> {
    match v {
        Value::Object(map) if map.contains_key("num") && map.contains_key("den") => {
            let alphabet = if command == "act" { n + 1 } else { n };
            let q = field_from_json(v, alphabet).map_err(|e| format!("{v}: {e}"))?;
            let text = q.to_string();
            let again = if command == "act" {
                parse_field_with_y(&text, alphabet)
            } else {
                parse_field(&text, alphabet)
            };
            ensure!(again.as_ref() == Ok(&q), "{text} does not re-parse");
            *checked += 1;
        }
        Value::Array(items)
            if items.iter().all(|t| t.get("word").is_some()) && !items.is_empty() =>
        {
            let u = env_from_json(v, n).map_err(|e| format!("{v}: {e}"))?;
            ensure!(
                parse_env(&u.to_string(), n).as_ref() == Ok(&u),
                "{u} does not re-parse"
            );
            *checked += 1;
        }
        Value::Object(map) => {
            for x in map.values() {
                reparse_json(x, n, command, checked)?;
            }
        }
        Value::Array(items) => {
            for x in items {
                reparse_json(x, n, command, checked)?;
            }
        }
        _ => {}
    }
    Ok(())
}

/// Exit codes and JSON round trips on the documented command corpus.
fn cli_contract() -> Check {
    let mut values = 0;
    let mut subcommands = std::collections::BTreeSet::new();
    for case in CORPUS {
        let argv = || std::iter::once("freepoisson").chain(case.args.iter().copied());
        let out = run(argv());
        ensure!(
            out.code == case.code,
            "{:?}: exit {} (expected {}), stderr {}",
            case.args,
            out.code,
            case.code,
            out.stderr
        );
        if let Some(expected) = case.stdout {
            ensure!(
                out.stdout == expected,
                "{:?}: printed {:?}, expected {:?}",
                case.args,
                out.stdout,
                expected
            );
        }
        subcommands.insert(case.args[0]);
        let json = run(argv().chain(["--json"]));
        ensure!(
            json.code == case.code,
            "{:?} --json: exit {}",
            case.args,
            json.code
        );
        if json.code <= 1 {
            let v: Value =
                serde_json::from_str(&json.stdout).map_err(|e| format!("{:?}: {e}", case.args))?;
            let n = if case.args.contains(&"-n") { 3 } else { 2 };
            reparse_json(&v, n, case.args[0], &mut values)?;
        }
    }
    ensure!(
        subcommands.len() >= 14,
        "corpus covers only {} subcommands",
        subcommands.len()
    );
    Ok(format!(
        "{} commands, {values} JSON values re-parsed",
        CORPUS.len()
    ))
}

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 presentation relations", relations, 60),
        ("2 leading terms and hdeg", degree_function, 60),
        ("3 Lie and Poisson axioms", lie_axioms, 120),
        ("4 weak algorithm certificates", weak_algorithm, 120),
        (
            "5 dependence tri-method agreement",
            dependence_agreement,
            180,
        ),
        ("6 rationality two-sided agreement", rationality, 60),
        ("7 automorphisms", automorphisms, 60),
        ("8 representation action", representation, 120),
        ("9 command-line contract", cli_contract, 30),
    ];
    let only: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failures = 0;
    for (name, check, budget) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.contains(o.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(budget) => {
                Err(format!("exceeded the {budget} s budget"))
            }
            other => other,
        };
        match result {
            Ok(summary) => println!(
                "PASS  {name}: {summary} ({:.1} s, budget {budget} s)",
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL  {name}: {why} ({:.1} s, budget {budget} s)",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
