//! Multivariate gcd by primitive polynomial remainder sequences, recursing on
//! the variables, and squarefree parts built on top of it.

use super::Polynomial;
use crate::error::{Error, Result};

/// Greatest common divisor, normalized (coprime integer coefficients,
/// positive graded-reverse-lex leading coefficient). `gcd(p, 0)` is the
/// normalized `p`; `gcd(0, 0)` is zero.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    assert_eq!(p.nvars(), q.nvars(), "ambient variable count");
    if p.is_zero() {
        return q.normalized();
    }
    if q.is_zero() {
        return p.normalized();
    }
    gcd_nonzero(p, q).normalized()
}

/// Gcd of a list; zero entries are ignored.
pub fn gcd_all<'a, I>(nvars: usize, polys: I) -> Polynomial
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut acc = Polynomial::zero(nvars);
    for p in polys {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn gcd_nonzero(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    let var = (0..n)
        .rev()
        .find(|&v| a.contains_var(v) || b.contains_var(v))
        .expect("nonconstant input has a variable");
    if !a.contains_var(var) {
        return gcd_nonzero(a, &content_in(b, var));
    }
    if !b.contains_var(var) {
        return gcd_nonzero(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let content = gcd_nonzero(&ca, &cb);

    let mut u = a.div_exact(&ca).expect("content divides");
    let mut v = b.div_exact(&cb).expect("content divides");
    if u.degree_in(var) < v.degree_in(var) {
        std::mem::swap(&mut u, &mut v);
    }
    let g = loop {
        let r = pseudo_remainder(&u, &v, var);
        if r.is_zero() {
            break v;
        }
        if !r.contains_var(var) {
            break Polynomial::one(n);
        }
        u = v;
        v = primitive_in(&r, var);
    };
    &content * &primitive_in(&g, var)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc: Option<Polynomial> = None;
    for c in p.coefficients_in(var).into_iter().filter(|c| !c.is_zero()) {
        acc = Some(match acc {
            None => c.normalized(),
            Some(g) => gcd_nonzero(&g, &c).normalized(),
        });
        if acc.as_ref().is_some_and(|g| g.is_constant()) {
            return Polynomial::one(p.nvars());
        }
    }
    acc.unwrap_or_else(|| Polynomial::zero(p.nvars()))
}

fn primitive_in(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").integer_primitive()
}

/// Sparse pseudo-remainder of `u` by `v` with respect to `var`; an associate
/// of the classical one, which is all a gcd computation needs.
fn pseudo_remainder(u: &Polynomial, v: &Polynomial, var: usize) -> Polynomial {
    let dv = v.degree_in(var).unwrap_or(0);
    let lv = v.lead_coeff_in(var);
    let mut r = u.clone();
    while !r.is_zero() {
        let dr = r.degree_in(var).unwrap_or(0);
        if dr < dv {
            break;
        }
        let lr = r.lead_coeff_in(var);
        let shift = super::Monomial::var(r.nvars(), var);
        let mut shifted = v.clone();
        for _ in 0..(dr - dv) {
            shifted = shifted.mul_monomial(&shift, &num_traits::One::one());
        }
        r = (&lv * &r - &lr * &shifted).integer_primitive();
    }
    r
}

/// Product of the distinct irreducible factors of `p`, normalized.
///
/// In characteristic zero `gcd(p, ∂p/∂x_1, ..., ∂p/∂x_n)` is exactly the
/// product of `f^(e-1)` over the factors `f^e` of `p`.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        return Err(Error::Domain("squarefree part of the zero polynomial".into()));
    }
    let mut cur = p.normalized();
    loop {
        let mut g = cur.clone();
        for d in cur.gradient() {
            if g.is_one() {
                break;
            }
            g = gcd(&g, &d);
        }
        if g.is_constant() {
            return Ok(cur);
        }
        cur = cur.div_exact(&g).expect("gcd divides").normalized();
    }
}

pub fn is_squarefree(p: &Polynomial) -> bool {
    match squarefree_part(p) {
        Ok(s) => s == p.normalized(),
        Err(_) => false,
    }
}
