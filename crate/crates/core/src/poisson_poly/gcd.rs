//! Multivariate gcd over the rationals by recursive content / primitive
//! part decomposition and primitive pseudo-remainder sequences.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Monomial, PoissonPoly};
use crate::lie_basis::LyndonWord;
use crate::Rational;

/// Greatest common divisor, normalized to leading coefficient 1.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &PoissonPoly, b: &PoissonPoly) -> PoissonPoly {
    assert_eq!(a.n(), b.n(), "alphabet size mismatch");
    let n = a.n();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return PoissonPoly::one(n);
    }
    if a.len() == 1 {
        return monomial_gcd(a, b);
    }
    if b.len() == 1 {
        return monomial_gcd(b, a);
    }
    if a == b {
        return a.monic();
    }
    let va = a.variables();
    let vb = b.variables();
    if va.is_disjoint(&vb) {
        return PoissonPoly::one(n);
    }
    // a common divisor cannot involve a variable missing from the other side
    if !va.is_subset(&vb) {
        let extra: BTreeSet<LyndonWord> = va.difference(&vb).cloned().collect();
        return gcd_with_coefficients(b, a, &extra);
    }
    if !vb.is_subset(&va) {
        let extra: BTreeSet<LyndonWord> = vb.difference(&va).cloned().collect();
        return gcd_with_coefficients(a, b, &extra);
    }
    let v = va.last().expect("nonconstant polynomial has a variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let content = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_gcd_in(pa, pb, v);
    (&content * &g).monic()
}

/// gcd of `base` with every coefficient of `p` viewed as a polynomial in
/// the variables `extra`, which do not occur in `base`.
fn gcd_with_coefficients(
    base: &PoissonPoly,
    p: &PoissonPoly,
    extra: &BTreeSet<LyndonWord>,
) -> PoissonPoly {
    let mut groups: BTreeMap<Monomial, PoissonPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (outer, inner) = m.partition(extra);
        groups
            .entry(outer)
            .or_insert_with(|| PoissonPoly::zero(p.n()))
            .add_term(inner, c.clone());
    }
    let mut coeffs: Vec<PoissonPoly> = groups.into_values().collect();
    coeffs.sort_by_key(PoissonPoly::len);
    let mut acc = base.clone();
    for c in coeffs {
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// gcd of a monomial with an arbitrary polynomial.
fn monomial_gcd(m: &PoissonPoly, p: &PoissonPoly) -> PoissonPoly {
    let (mono, _) = m.leading_term().expect("nonzero");
    let g = p.terms().fold(mono.clone(), |acc, (pm, _)| acc.gcd(pm));
    PoissonPoly::term(num_traits::One::one(), g, m.n())
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &PoissonPoly, v: &LyndonWord) -> PoissonPoly {
    let mut acc = PoissonPoly::zero(p.n());
    for c in p.coefficients_in(v).into_values() {
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &PoissonPoly, v: &LyndonWord) -> PoissonPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

fn leading_in(p: &PoissonPoly, v: &LyndonWord) -> (u32, PoissonPoly) {
    let mut coeffs: BTreeMap<u32, PoissonPoly> = p.coefficients_in(v);
    coeffs.pop_last().expect("nonzero polynomial")
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `v`.
fn pseudo_rem(a: &PoissonPoly, b: &PoissonPoly, v: &LyndonWord) -> PoissonPoly {
    let (db, lb) = leading_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = leading_in(&r, v);
        if dr < db {
            break;
        }
        let shift = Monomial::power(v.clone(), dr - db);
        let mut next = &r * &lb;
        for (m, c) in lr.terms() {
            next.add_scaled_shifted(b, &-c.clone(), &m.mul(&shift));
        }
        r = next.monic();
    }
    r
}

/// gcd of two polynomials that are primitive with respect to `v` and both
/// involve `v`.
fn primitive_gcd_in(a: PoissonPoly, b: PoissonPoly, v: &LyndonWord) -> PoissonPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    match image_gcd_degree(&a, &b, v) {
        Some(0) => return PoissonPoly::one(a.n()),
        Some(d) if d == b.degree_in(v) as usize && a.div_exact(&b).is_some() => {
            return b.monic();
        }
        _ => {}
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        if r.degree_in(v).is_zero() {
            return PoissonPoly::one(a.n());
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}

/// Degree in `v` of the gcd of the univariate images of `a` and `b` under
/// an evaluation of all other variables at which neither leading
/// coefficient vanishes. It bounds the degree of the true gcd from above.
fn image_gcd_degree(a: &PoissonPoly, b: &PoissonPoly, v: &LyndonWord) -> Option<usize> {
    for seed in 0..4u64 {
        let (ua, la) = evaluate_except(a, v, seed);
        let (ub, lb) = evaluate_except(b, v, seed);
        if la.is_zero() || lb.is_zero() {
            continue;
        }
        return Some(univariate_gcd_degree(ua, ub));
    }
    None
}

fn point_value(w: &LyndonWord, seed: u64) -> Rational {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ seed.wrapping_mul(0x2545_f491_4f6c_dd1d);
    for &l in w.letters() {
        h = (h ^ u64::from(l)).wrapping_mul(0x0100_0000_01b3);
        h ^= h >> 29;
    }
    Rational::from_integer(BigInt::from(2 + (h % 97) as i64))
}

/// Dense univariate image in `v` and its leading coefficient.
fn evaluate_except(p: &PoissonPoly, v: &LyndonWord, seed: u64) -> (Vec<Rational>, Rational) {
    let deg = p.degree_in(v) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut value = c.clone();
        let mut k = 0;
        for (w, e) in m.factors() {
            if w == v {
                k = *e as usize;
            } else {
                value *= num_traits::pow(point_value(w, seed), *e as usize);
            }
        }
        coeffs[k] += value;
    }
    let lead = coeffs[deg].clone();
    (coeffs, lead)
}

fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    let trim = |p: &mut Vec<Rational>| {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- a mod b
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let q = a.last().expect("nonempty") / b.last().expect("nonempty");
            for (i, c) in b.iter().enumerate() {
                a[i + shift] -= &q * c;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}
