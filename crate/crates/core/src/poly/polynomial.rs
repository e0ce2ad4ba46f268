use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, TermOrder};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// A point of affine rational `n`-space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (lexicographic, ascending).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.contains_var(v)).collect()
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_coefficient(&self, order: &TermOrder) -> Option<&Rational> {
        self.leading_term(order).map(|t| t.1)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c * rat(e as i64));
            }
        }
        out
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|v| self.derivative(v)).collect()
    }

    /// Exact value at `point`. Works over the integers with the point and the
    /// coefficients on common denominators and reduces once at the end.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let Some(deg) = self.total_degree() else {
            return Rational::zero();
        };
        let den = point.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let nums: Vec<BigInt> = point.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let mut powers: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]; self.nvars];
        for (v, col) in powers.iter_mut().enumerate() {
            let top = self.degree_in(v).unwrap_or(0) as usize;
            for k in 1..=top {
                let next = &col[k - 1] * &nums[v];
                col.push(next);
            }
        }
        let mut den_powers = vec![BigInt::one()];
        for k in 1..=deg as usize {
            let next = &den_powers[k - 1] * &den;
            den_powers.push(next);
        }
        let coeff_den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.numer() * (&coeff_den / c.denom());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[v][e as usize];
                }
            }
            t *= &den_powers[(deg - m.total_degree()) as usize];
            acc += t;
        }
        Rational::new(acc, coeff_den * &den_powers[deg as usize])
    }

    pub fn evaluate_at(&self, point: &RationalPoint) -> Rational {
        self.evaluate(&point.0)
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// ambient variable count, which becomes the result's.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, found: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.nvars,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::Arity { expected: target, found: bad.nvars });
        }
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Self::one(target)]; self.nvars];
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = out + t;
        }
        Ok(out)
    }

    /// Same polynomial viewed in a ring with `extra` more trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())).collect(),
        }
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.nvars);
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect(),
        }
    }

    /// Coefficients with respect to `var`: entry `k` holds the coefficient of
    /// `var^k`, as a polynomial in the same ring not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].terms.insert(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Leading coefficient with respect to `var`.
    pub fn lead_coeff_in(&self, var: usize) -> Polynomial {
        let deg = self.degree_in(var).unwrap_or(0);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponent(var) == deg {
                out.terms.insert(m.with_exponent(var, 0), c.clone());
            }
        }
        out
    }

    /// Least common multiple of the coefficient denominators and gcd of the
    /// numerators, as `(numerator gcd, denominator lcm)`.
    fn integer_content(&self) -> (BigInt, BigInt) {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        (num, den)
    }

    /// Scalar multiple with coprime integer coefficients (sign untouched).
    pub fn integer_primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let (num, den) = self.integer_content();
        self.scale(&BigRational::new(den, num))
    }

    /// Canonical associate: coprime integer coefficients and a positive
    /// leading coefficient under graded reverse lex.
    pub fn normalized(&self) -> Polynomial {
        let p = self.integer_primitive();
        match p.leading_coefficient(&TermOrder::grevlex()) {
            Some(c) if c.is_negative() => -p,
            _ => p,
        }
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, d.nvars, "ambient variable count");
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (dm, dc) = d.terms.last_key_value().expect("nonzero divisor");
        if d.terms.len() == 1 {
            let mut q = Self::zero(self.nvars);
            for (m, c) in &self.terms {
                q.terms.insert(dm.quotient_of(m)?, c / dc);
            }
            return Some(q);
        }
        let bound: Vec<u32> = (0..self.nvars)
            .map(|v| {
                let a = self.degree_in(v).unwrap_or(0);
                let b = d.degree_in(v).unwrap_or(0);
                a.checked_sub(b)
            })
            .collect::<Option<_>>()?;
        let mut q = Self::zero(self.nvars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.terms.last_key_value() {
            let t = dm.quotient_of(rm)?;
            if t.exponents().iter().zip(&bound).any(|(e, b)| e > b) {
                return None;
            }
            let c = rc / dc;
            r = r - d.mul_monomial(&t, &c);
            q.terms.insert(t, c);
        }
        Some(q)
    }

    /// `self | other`; every polynomial, zero included, divides zero.
    pub fn divides(&self, other: &Polynomial) -> bool {
        other.is_zero() || other.div_exact(self).is_some()
    }

    /// Renders the polynomial with the given variable names, terms in
    /// decreasing graded reverse lex order.
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        assert_eq!(names.len(), self.nvars, "variable name count");
        if self.is_zero() {
            return "0".to_string();
        }
        let order = TermOrder::grevlex();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[i].as_ref(), e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Default variable names: `x, y, z, w` up to four variables, `x1..xn` beyond.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs.clone()
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable count");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        for (m, c) in small.terms {
            big.add_term(m, c);
        }
        big
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() - rhs.clone()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ambient variable count");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (Polynomial, Polynomial, Polynomial) {
        (Polynomial::var(3, 0), Polynomial::var(3, 1), Polynomial::var(3, 2))
    }

    #[test]
    fn zero_is_empty_and_cancellation_is_canonical() {
        let (x, y, _) = xyz();
        let p = &x + &y;
        let back = &(&p + &x) - &x;
        assert_eq!(back, p);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).num_terms(), 0);
    }

    #[test]
    fn display_uses_grevlex_and_explicit_operators() {
        let (x, y, z) = xyz();
        let q = &(&x * &x) - &(&y * &z);
        assert_eq!(q.to_string(), "x^2 - y*z");
        let p = &(&(&x * &z).scale(&rat(-2)) + &Polynomial::constant(3, ratio(1, 2))) + &y.pow(3);
        assert_eq!(p.to_string(), "y^3 - 2*x*z + 1/2");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn derivative_and_evaluation() {
        let (x, y, z) = xyz();
        let h = &(&x * &z) + &(&y * &y);
        assert_eq!(h.derivative(1), y.scale(&rat(2)));
        let a = RationalPoint::from_integers(&[1, 1, -1]);
        assert_eq!(h.evaluate_at(&a), rat(0));
        let g: Vec<Rational> = h.gradient().iter().map(|d| d.evaluate_at(&a)).collect();
        assert_eq!(g, vec![rat(-1), rat(2), rat(1)]);
    }

    #[test]
    fn compose_projection_and_arity_error() {
        let (x, y, z) = xyz();
        let f = vec![&x + &(&y * &z), y.clone(), z.clone()];
        assert_eq!(x.compose(&f).unwrap(), f[0]);
        assert!(matches!(x.compose(&f[..2]), Err(Error::Arity { expected: 3, found: 2 })));
    }

    #[test]
    fn nagata_v1_preserves_its_quadric() {
        let (x, y, z) = xyz();
        let q = &(&x * &x) - &(&y * &z);
        let f = vec![
            &x + &(&q * &z),
            &(&y + &(&q * &x).scale(&rat(2))) + &(&q.pow(2) * &z),
            z.clone(),
        ];
        assert_eq!(q.compose(&f).unwrap(), q);
    }

    #[test]
    fn exact_division() {
        let (x, y, z) = xyz();
        let a = &x + &y;
        let b = &x - &z;
        let p = &(&a * &a) * &b;
        assert_eq!(p.div_exact(&a).unwrap(), &a * &b);
        assert!(p.div_exact(&(&y + &z)).is_none());
        assert!(x.div_exact(&y).is_none());
        assert_eq!((&x * &y).div_exact(&y.scale(&rat(2))).unwrap(), x.scale(&ratio(1, 2)));
        let zero = Polynomial::zero(3);
        assert!(zero.divides(&zero) && x.divides(&zero));
        assert!(!zero.divides(&x));
    }

    #[test]
    fn normalization_is_primitive_and_positive() {
        let (x, y, _) = xyz();
        let p = (&x.scale(&ratio(-2, 3)) + &y.scale(&ratio(4, 9))).normalized();
        assert_eq!(p.to_string(), "3*x - 2*y");
    }
}
