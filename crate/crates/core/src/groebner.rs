//! Buchberger's algorithm with the normal selection strategy and both
//! Buchberger criteria, plus the membership, emptiness and radical
//! membership certificates built on it.
//!
//! Reduction works on integer-coefficient polynomials and keeps every
//! intermediate primitive, so coefficients stay small on the desk-scale
//! inputs this crate deals with.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Polynomial, TermOrder};

pub use crate::poly::OrderKind;

/// Integer polynomial with terms sorted in decreasing term order.
#[derive(Clone, Debug)]
struct SortedPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl SortedPoly {
    fn from_poly(p: &Polynomial, order: &TermOrder) -> Self {
        let p = p.integer_primitive();
        let mut terms: Vec<(Monomial, BigInt)> = p.terms().map(|(m, c)| (m.clone(), c.to_integer())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut sp = SortedPoly { terms };
        sp.make_primitive();
        sp
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (m.exponents().to_vec(), BigRational::from_integer(c.clone()))),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divide out the integer content and make the leading coefficient positive.
    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }

    /// `a * self - b * shift * other`, merged in term order.
    fn combine(&self, a: &BigInt, b: &BigInt, shift: &Monomial, other: &SortedPoly, order: &TermOrder) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Monomial, BigInt)> = other.terms.iter().map(|(m, c)| (m.mul(shift), -(b * c))).collect();
        while i < self.terms.len() || j < shifted.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == shifted.len() {
                Ordering::Greater
            } else {
                order.cmp(&self.terms[i].0, &shifted[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push((self.terms[i].0.clone(), a * &self.terms[i].1));
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a * &self.terms[i].1 + &shifted[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SortedPoly { terms: out }
    }
}

/// Cofactors `(a, b)` with `a*lc_p - b*lc_g = 0` and `a > 0`.
fn cancel_factors(lc_p: &BigInt, lc_g: &BigInt) -> (BigInt, BigInt) {
    let g = lc_p.gcd(lc_g);
    let mut a = lc_g / &g;
    let mut b = lc_p / &g;
    if a.is_negative() {
        a = -a;
        b = -b;
    }
    (a, b)
}

/// Fully reduces `p` modulo `basis`; the result is the normal form up to a
/// positive rational factor, returned primitive.
fn reduce(p: &SortedPoly, basis: &[SortedPoly], order: &TermOrder) -> SortedPoly {
    reduce_tracked(p, basis, order).0
}

/// [`reduce`] together with the factor `k` such that the result is `k`
/// times the exact normal form of `p`.
fn reduce_tracked(p: &SortedPoly, basis: &[SortedPoly], order: &TermOrder) -> (SortedPoly, BigRational) {
    let mut scale = BigRational::one();
    let mut rest = p.clone();
    let mut done: Vec<(Monomial, BigInt)> = Vec::new();
    while !rest.is_zero() {
        let lm = rest.lm().clone();
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let shift = g.lm().quotient_of(&lm).expect("divides");
                let (a, b) = cancel_factors(rest.lc(), g.lc());
                rest = rest.combine(&a, &b, &shift, g, order);
                debug_assert!(rest.is_zero() || order.cmp(rest.lm(), &lm) == Ordering::Less);
                if !a.is_one() {
                    for (_, c) in &mut done {
                        *c *= &a;
                    }
                    scale *= BigRational::from_integer(a.clone());
                }
                // keep the joint content down
                let g = done.iter().chain(rest.terms.iter()).fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
                if !g.is_zero() && !g.is_one() {
                    for (_, c) in done.iter_mut().chain(rest.terms.iter_mut()) {
                        *c = &*c / &g;
                    }
                    scale /= BigRational::from_integer(g);
                }
            }
            None => {
                let t = rest.terms.remove(0);
                done.push(t);
            }
        }
    }
    let mut out = SortedPoly { terms: done };
    if let Some((_, before)) = out.terms.first().cloned() {
        out.make_primitive();
        scale *= BigRational::new(out.lc().clone(), before);
    }
    (out, scale)
}

fn s_polynomial(f: &SortedPoly, g: &SortedPoly, order: &TermOrder) -> SortedPoly {
    let l = f.lm().lcm(g.lm());
    let sf = f.lm().quotient_of(&l).expect("lcm");
    let sg = g.lm().quotient_of(&l).expect("lcm");
    let (a, b) = cancel_factors(f.lc(), g.lc());
    let fs = SortedPoly { terms: f.terms.iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect() };
    fs.combine(&a, &b, &sg, g, order)
}

/// Reduced Gröbner basis of an ideal with respect to a fixed term order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    order: TermOrder,
    sorted: Vec<SortedPoly>,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Generators: primitive integer coefficients, positive leading
    /// coefficient, sorted by decreasing leading monomial.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// True iff the ideal is the whole ring, i.e. its variety over the
    /// algebraic closure is empty.
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().any(|g| !g.is_zero() && g.is_constant())
    }

    /// Normal form of `p`: the unique `r` with `p - r` in the ideal and no
    /// term of `r` divisible by a leading monomial of the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.nvars, "ambient variable count");
        let sp = SortedPoly::from_poly(p, &self.order);
        let (r, scale) = reduce_tracked(&sp, &self.sorted, &self.order);
        if r.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        // sp = k * p with k read off any term
        let (m, c) = &sp.terms[0];
        let k = BigRational::from_integer(c.clone()) / p.coefficient(m);
        r.to_poly(self.nvars).scale(&(k * scale).recip())
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|g| g.lm().clone()).collect()
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Zero generators are discarded; an empty list yields the zero ideal
/// (empty basis). Pairs are chosen by smallest lcm of leading monomials,
/// ties broken by generator index, so the output is deterministic.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder) -> GroebnerBasis {
    let nvars = gens.first().map_or(0, Polynomial::nvars);
    assert!(gens.iter().all(|g| g.nvars() == nvars), "generators live in different rings");

    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let unit = |nvars: usize, order: &TermOrder| GroebnerBasis {
        nvars,
        order: order.clone(),
        sorted: vec![SortedPoly { terms: vec![(Monomial::one(nvars), BigInt::one())] }],
        generators: vec![Polynomial::one(nvars)],
    };

    for g in gens.iter().filter(|g| !g.is_zero()) {
        let sp = SortedPoly::from_poly(g, order);
        if sp.lm().is_one() {
            return unit(nvars, order);
        }
        let k = basis.len();
        pairs.extend((0..k).map(|i| (i, k)));
        basis.push(sp);
    }

    loop {
        let next = pairs
            .iter()
            .copied()
            .min_by(|&(i, j), &(k, l)| {
                let a = basis[i].lm().lcm(basis[j].lm());
                let b = basis[k].lm().lcm(basis[l].lm());
                order.cmp(&a, &b).then((i, j).cmp(&(k, l)))
            });
        let Some((i, j)) = next else { break };
        pairs.remove(&(i, j));

        let (lmi, lmj) = (basis[i].lm(), basis[j].lm());
        if lmi.is_coprime(lmj) {
            continue;
        }
        let l = lmi.lcm(lmj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        if r.lm().is_one() {
            return unit(nvars, order);
        }
        let k = basis.len();
        pairs.extend((0..k).map(|i| (i, k)));
        basis.push(r);
    }

    // minimize: drop generators whose leading monomial is a multiple of another's
    let mut keep: Vec<SortedPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h.lm().divides(g.lm()) && (h.lm() != g.lm() || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce
    let mut reduced: Vec<SortedPoly> = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<SortedPoly> =
            keep.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, g)| g.clone()).collect();
        reduced.push(reduce(&keep[idx], &others, order));
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    let generators = reduced.iter().map(|g| g.to_poly(nvars)).collect();
    GroebnerBasis { nvars, order: order.clone(), sorted: reduced, generators }
}

/// True iff the ideal generated by `gens` contains 1.
pub fn is_trivial_ideal(gens: &[Polynomial], order: &TermOrder) -> bool {
    buchberger(gens, order).is_trivial()
}

/// Plain ideal membership `p ∈ (gens)`.
pub fn ideal_member(p: &Polynomial, gens: &[Polynomial], order: &TermOrder) -> bool {
    if gens.iter().all(Polynomial::is_zero) {
        return p.is_zero();
    }
    buchberger(gens, order).contains(p)
}

fn extend_order(order: &TermOrder, nvars: usize) -> TermOrder {
    order.extended_by_trailing(nvars)
}

/// Radical membership by the Rabinowitsch trick: `p` vanishes on
/// `V(gens)` over the algebraic closure iff `1 ∈ (gens, 1 - t*p)` in one
/// more variable `t`.
pub fn radical_member(p: &Polynomial, gens: &[Polynomial], order: &TermOrder) -> bool {
    let n = p.nvars();
    assert!(gens.iter().all(|g| g.nvars() == n), "ambient variable count");
    if p.is_zero() {
        return true;
    }
    let t = Polynomial::var(n + 1, n);
    let mut ext: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.extend_vars(1)).collect();
    ext.push(&Polynomial::one(n + 1) - &(&t * &p.extend_vars(1)));
    is_trivial_ideal(&ext, &extend_order(order, n + 1))
}

/// `V(a) = V(b)` over the algebraic closure.
pub fn varieties_equal(a: &[Polynomial], b: &[Polynomial], order: &TermOrder) -> bool {
    a.iter().all(|p| radical_member(p, b, order)) && b.iter().all(|p| radical_member(p, a, order))
}
